#![no_main]

use libfuzzer_sys::fuzz_target;
use vocic::repquiver::MatrixRep;

fuzz_target!(|data: &[u8]| {
    // Keep the rank-invariant computation cheap.
    if data.len() > 64 {
        return;
    }
    let Ok(rep) = MatrixRep::from_bytes(data) else {
        return;
    };
    assert_eq!(rep.to_bytes(), data);
    let m = rep.multisegment().expect("every representation decomposes");
    assert_eq!(&m.dim_vector(), rep.dims());
});
