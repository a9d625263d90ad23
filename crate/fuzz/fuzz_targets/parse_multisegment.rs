#![no_main]

use libfuzzer_sys::fuzz_target;
use vocic::repquiver::Multisegment;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = Multisegment::parse_any_rank(s) else {
        return;
    };
    let again = Multisegment::parse(&m.to_string(), m.rank()).expect("printed form re-parses");
    assert_eq!(again, m);
});
