#![no_main]

use carlitz_core::symident::parse_multipoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_multipoly(s) {
        let text = p.to_string();
        assert_eq!(parse_multipoly(&text).expect("display reparses"), p);
    }
});
