#![no_main]

mod common;

use carlitz_core::text::parse_elem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((field, s)) = common::split(data) else { return };
    if let Ok(e) = parse_elem(&field, s) {
        let text = field.format_elem(e);
        assert_eq!(parse_elem(&field, &text).expect("formatted element reparses"), e);
    }
});
