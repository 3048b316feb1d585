#![no_main]

use carlitz_core::text::parse_field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_field(s) {
        let again = parse_field(&f.order().to_string()).expect("order reparses");
        assert_eq!(again.order(), f.order());
    }
});
