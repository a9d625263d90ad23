#![no_main]

use libfuzzer_sys::fuzz_target;
use vocic::repquiver::parse_int_list;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(xs) = parse_int_list(s) {
        let printed = xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(
            parse_int_list(&printed).expect("printed list re-parses"),
            xs
        );
    }
});
