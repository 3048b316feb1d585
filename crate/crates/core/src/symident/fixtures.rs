use std::fmt;

use sha2::{Digest, Sha256};

use super::{parse_multipoly, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    H1,
    H2,
    H3,
    /// The degree-7 factor for `aX^2 + X + 1/(X - r1) + 1/(X - r2)` in
    /// characteristic 2; meaningful mod 2 only.
    H,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::H1, Fixture::H2, Fixture::H3, Fixture::H];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::H1 => "h1",
            Fixture::H2 => "h2",
            Fixture::H3 => "h3",
            Fixture::H => "h",
        }
    }

    fn source(self) -> &'static str {
        match self {
            Fixture::H1 => include_str!("../../data/v1/symident/h1.txt"),
            Fixture::H2 => include_str!("../../data/v1/symident/h2.txt"),
            Fixture::H3 => include_str!("../../data/v1/symident/h3.txt"),
            Fixture::H => include_str!("../../data/v1/symident/h.txt"),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// SHA-256 of the canonical serializations, one `name: poly` line each.
pub const FIXTURES_SHA256: &str = "bf07d6f7338ec944376052831ee2dd7d77c24c63ab35c66991d608e064b596be";

pub fn fixture(which: Fixture) -> MultiPoly {
    let text: String = which
        .source()
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    parse_multipoly(&text).expect("fixture parses")
}

pub fn fixtures_checksum() -> String {
    let mut h = Sha256::new();
    for f in Fixture::ALL {
        h.update(format!("{}: {}\n", f.name(), fixture(f)));
    }
    hex::encode(h.finalize())
}
