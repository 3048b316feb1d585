//! Every published computation re-run end to end: one item per acceptance
//! criterion, plus the further power-sum displays of the degree-4 proofs.

mod items;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Item {
    CarlitzIdentity,
    OracleEquivalence,
    Degree3Families,
    LemmaL32,
    NonExistence,
    Fingerprints,
    Resultants,
    Instantiation,
    Classification,
    /// Further sums from the degree-4 proofs; not one of the numbered items.
    ProofSums,
}

impl Item {
    pub const ALL: [Item; 10] = [
        Item::CarlitzIdentity,
        Item::OracleEquivalence,
        Item::Degree3Families,
        Item::LemmaL32,
        Item::NonExistence,
        Item::Fingerprints,
        Item::Resultants,
        Item::Instantiation,
        Item::Classification,
        Item::ProofSums,
    ];

    /// Criterion number, `None` for [`Item::ProofSums`].
    pub fn number(self) -> Option<u8> {
        Item::ALL[..9].iter().position(|&i| i == self).map(|k| k as u8 + 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Item::CarlitzIdentity => "carlitz-identity",
            Item::OracleEquivalence => "oracle-equivalence",
            Item::Degree3Families => "degree-3-families",
            Item::LemmaL32 => "lemma-l3.2",
            Item::NonExistence => "non-existence",
            Item::Fingerprints => "fingerprints",
            Item::Resultants => "resultants",
            Item::Instantiation => "instantiation",
            Item::Classification => "classification",
            Item::ProofSums => "proof-sums",
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Item {
    type Err = Error;

    fn from_str(s: &str) -> Result<Item> {
        let s = s.trim().to_ascii_lowercase();
        Item::ALL
            .into_iter()
            .find(|i| i.name() == s || i.number().is_some_and(|n| n.to_string() == s))
            .ok_or_else(|| Error::Hypothesis(format!("unknown item {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReproduceOptions {
    pub seed: u64,
    /// Random functions per field in the oracle comparison.
    pub random_cases: usize,
    /// Seeded instantiations of the degree-4 closed forms.
    pub instantiations: usize,
    /// Parameter-space budget for the theorem verifiers.
    pub verify_budget: u64,
    /// Parameter-space budget for full normal-form sweeps.
    pub sweep_budget: u64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions {
            seed: 0,
            random_cases: 1000,
            instantiations: 200,
            verify_budget: 1 << 26,
            sweep_budget: 1 << 28,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub item: Item,
    pub criterion: Option<u8>,
    pub passed: bool,
    pub checks: u64,
    /// Cases outside the domain of the check (closed form not applicable).
    pub skipped: u64,
    pub notes: Vec<String>,
    /// The first mismatch, if any.
    pub failure: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Counts checks and keeps the first failure.
#[derive(Default)]
pub(crate) struct Tally {
    checks: u64,
    skipped: u64,
    notes: Vec<String>,
    failure: Option<String>,
}

impl Tally {
    pub(crate) fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
        ok
    }

    pub(crate) fn skip(&mut self) {
        self.skipped += 1;
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub(crate) fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

pub fn run_item(item: Item, opts: &ReproduceOptions) -> ItemReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let res = match item {
        Item::CarlitzIdentity => items::carlitz_identity(&mut t),
        Item::OracleEquivalence => items::oracle_equivalence(opts, &mut t),
        Item::Degree3Families => items::degree3_families(opts, &mut t),
        Item::LemmaL32 => items::lemma_l32(opts, &mut t),
        Item::NonExistence => items::non_existence(opts, &mut t),
        Item::Fingerprints => items::fingerprints(&mut t),
        Item::Resultants => items::resultants(&mut t),
        Item::Instantiation => items::instantiation(opts, &mut t),
        Item::Classification => items::classification(&mut t),
        Item::ProofSums => items::proof_sums(&mut t),
    };
    if let Err(e) = res {
        t.failure.get_or_insert_with(|| format!("error: {e}"));
    }
    if t.checks == 0 {
        t.failure.get_or_insert_with(|| "nothing was checked".into());
    }
    ItemReport {
        item,
        criterion: item.number(),
        passed: t.failure.is_none(),
        checks: t.checks,
        skipped: t.skipped,
        notes: t.notes,
        failure: t.failure,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(opts: &ReproduceOptions) -> Vec<ItemReport> {
    Item::ALL.iter().map(|&i| run_item(i, opts)).collect()
}

#[cfg(test)]
mod tests;
