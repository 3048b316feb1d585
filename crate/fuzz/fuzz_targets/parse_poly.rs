#![no_main]

mod common;

use carlitz_core::text::{format_poly, parse_poly};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((field, s)) = common::split(data) else { return };
    if let Ok(p) = parse_poly(&field, s) {
        let text = format_poly(&p);
        assert_eq!(parse_poly(&field, &text).expect("formatted poly reparses"), p);
    }
});
