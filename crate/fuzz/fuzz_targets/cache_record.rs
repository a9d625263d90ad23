#![no_main]

use libfuzzer_sys::fuzz_target;
use vocic::hall::parse_cache_record;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rec) = parse_cache_record(line) {
        assert_eq!(
            parse_cache_record(&rec.render()).expect("rendered record re-parses"),
            rec
        );
    }
});
