//! Replays the fuzz corpus seeds through the same round-trip properties the
//! fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use carlitz_core::symident::parse_multipoly;
use carlitz_core::text::{format_poly, format_ratfun, parse_elem, parse_field, parse_poly, parse_ratfun};
use carlitz_core::Field;

const ORDERS: [u64; 8] = [2, 3, 4, 7, 8, 9, 25, 27];

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn split(data: &[u8]) -> Option<(Field, &str)> {
    let (&k, rest) = data.split_first()?;
    let field = Field::from_order(ORDERS[k as usize % ORDERS.len()]).ok()?;
    Some((field, std::str::from_utf8(rest).ok()?))
}

#[test]
fn field_seeds() {
    let mut parsed = 0;
    for d in seeds("parse_field") {
        let Ok(s) = std::str::from_utf8(&d) else { continue };
        if let Ok(f) = parse_field(s) {
            parsed += 1;
            assert_eq!(parse_field(&f.order().to_string()).unwrap().order(), f.order());
        }
    }
    assert!(parsed > 0);
}

#[test]
fn elem_seeds() {
    for d in seeds("parse_elem") {
        let Some((field, s)) = split(&d) else { continue };
        if let Ok(e) = parse_elem(&field, s) {
            assert_eq!(parse_elem(&field, &field.format_elem(e)).unwrap(), e, "{s}");
        }
    }
}

#[test]
fn poly_seeds() {
    for d in seeds("parse_poly") {
        let Some((field, s)) = split(&d) else { continue };
        if let Ok(p) = parse_poly(&field, s) {
            assert_eq!(parse_poly(&field, &format_poly(&p)).unwrap(), p, "{s}");
        }
    }
}

#[test]
fn ratfun_seeds() {
    for d in seeds("parse_ratfun") {
        let Some((field, s)) = split(&d) else { continue };
        if let Ok(f) = parse_ratfun(&field, s) {
            assert_eq!(parse_ratfun(&field, &format_ratfun(&f)).unwrap(), f, "{s}");
        }
    }
}

#[test]
fn multipoly_seeds() {
    for d in seeds("parse_multipoly") {
        let Ok(s) = std::str::from_utf8(&d) else { continue };
        if let Ok(p) = parse_multipoly(s) {
            assert_eq!(parse_multipoly(&p.to_string()).unwrap(), p, "{s}");
        }
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(4000))]

    #[test]
    fn random_text_round_trips(k in 0u8..8, s in "[xu0-9+*^()/ -]{0,24}") {
        let mut data = vec![k];
        data.extend_from_slice(s.as_bytes());
        let (field, s) = split(&data).unwrap();
        if let Ok(e) = parse_elem(&field, s) {
            proptest::prop_assert_eq!(parse_elem(&field, &field.format_elem(e)).unwrap(), e);
        }
        if let Ok(f) = parse_ratfun(&field, s) {
            proptest::prop_assert_eq!(parse_ratfun(&field, &format_ratfun(&f)).unwrap(), f);
        }
    }

    #[test]
    fn random_multipoly_round_trips(s in "[ab0-9+*^() -]{0,24}") {
        if let Ok(p) = parse_multipoly(&s) {
            proptest::prop_assert_eq!(parse_multipoly(&p.to_string()).unwrap(), p);
        }
    }
}
