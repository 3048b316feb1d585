#![no_main]

mod common;

use carlitz_core::text::{format_ratfun, parse_ratfun};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((field, s)) = common::split(data) else { return };
    if let Ok(f) = parse_ratfun(&field, s) {
        let text = format_ratfun(&f);
        assert_eq!(parse_ratfun(&field, &text).expect("formatted ratfun reparses"), f);
    }
});
