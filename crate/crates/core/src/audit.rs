//! Cross-checks of the main computations against the oracle module, bundled
//! for callers that want a single pass/fail report.

use std::fmt;

use crate::error::Result;
use crate::hecke::HeckeElt;
use crate::kl::KlTable;
use crate::oracle::{oracle_length, Oracle};
use crate::scalar::Coefficient;
use crate::weyl::AffinePerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub mismatches: usize,
    pub first: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, cases: 0, mismatches: 0, first: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} mismatches",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.mismatches
        )?;
        if let Some(first) = &self.first {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

/// Runs length, Bruhat, multiplication and canonical-basis comparisons on
/// every element of length at most `max_len`. Multiplication is compared on
/// all pairs, so keep `max_len` small.
pub fn oracle_suites<C: Coefficient>(d: usize, max_len: usize) -> Result<Vec<SuiteResult>> {
    let elems = AffinePerm::enumerate(d, max_len)?;
    let mut oracle = Oracle::new(d)?;

    let mut length = SuiteResult::new("length");
    for w in &elems {
        let (a, b) = (w.length(), oracle_length(w));
        length.record(a == b, || format!("{w}: {a} vs {b}"));
    }

    let mut bruhat = SuiteResult::new("bruhat");
    for w in &elems {
        let below = oracle.lower_interval(w)?;
        for y in &elems {
            let fast = y.bruhat_leq(w)?;
            bruhat.record(fast == below.contains(y), || format!("{y} <= {w}: {fast} vs {}", !fast));
        }
    }

    let mut mult = SuiteResult::new("mult");
    for x in &elems {
        for y in &elems {
            let (bx, by) = (HeckeElt::<C>::basis(x), HeckeElt::<C>::basis(y));
            let ok = bx.mult(&by)? == oracle.mult(&bx, &by)?;
            mult.record(ok, || format!("[{x}] * [{y}]"));
        }
    }

    let mut canonical = SuiteResult::new("canonical");
    let mut table = KlTable::<C>::new(d);
    let bound = oracle.max_interval_length();
    for w in elems.iter().filter(|w| w.length() <= bound) {
        let ok = table.canonical(w)? == oracle.canonical::<C>(w)?;
        canonical.record(ok, || format!("C_{w}"));
    }

    Ok(vec![length, bruhat, mult, canonical])
}
