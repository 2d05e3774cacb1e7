//! Finite model search over small chains and products of chains.
//!
//! Candidates are enumerated by carrier size from `max_size` down to 1. For
//! each size the single chain comes first, then products with fewer factors,
//! factor sizes in non-increasing order. The enumeration does not depend on
//! any seed.

use std::fmt;

use crate::algebra::{Algebra, FiniteTable};
use crate::error::{Error, Result};
use crate::grid::Budget;
use crate::sqrt::{candidate_sqrt, run_property_suite, SqrtSearch, SUITES};

/// Largest carrier the search accepts.
pub const MAX_SEARCH_SIZE: usize = 6;

/// Properties besides the suite names.
pub const SEARCH_PROPERTIES: &[&str] = &["Sq1-solvability", "AXIOMS"];

/// A table violating the searched property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violator {
    pub table: FiniteTable,
    pub description: String,
    pub reason: String,
}

impl fmt::Display for Violator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.description, self.reason)
    }
}

/// Chain sizes (each ≥ 2, non-increasing) whose product is `n`.
fn factorizations(n: usize, cap: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (2..=cap.min(n)).rev() {
        if n % k == 0 {
            for mut rest in factorizations(n / k, k) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
    }
    out
}

/// The candidate algebras in search order.
pub fn candidates(max_size: usize) -> Vec<Algebra> {
    let mut out = Vec::new();
    for n in (1..=max_size).rev() {
        let mut fs = factorizations(n, n);
        if n == 1 {
            out.push(Algebra::mv_chain(0));
            continue;
        }
        fs.sort_by_key(|f| f.len());
        for f in fs {
            let chains: Vec<Algebra> = f.iter().map(|&k| Algebra::mv_chain(k as u64 - 1)).collect();
            out.push(if chains.len() == 1 { chains.into_iter().next().unwrap() } else { Algebra::product(chains) });
        }
    }
    out
}

fn sq1_gap(m: &Algebra) -> Option<String> {
    let els = m.elements()?;
    els.iter()
        .find(|x| !els.iter().any(|y| &m.odot(y, y) == *x))
        .map(|x| format!("no y with y⊙y = x at x={}", m.show(x)))
}

fn violation(property: &str, m: &Algebra, budget: &Budget) -> Result<Option<String>> {
    match property {
        "Sq1-solvability" => Ok(sq1_gap(m)),
        "AXIOMS" => {
            let rep = m.check_axioms(budget);
            Ok((!rep.passed()).then(|| rep.to_string()))
        }
        suite => {
            let SqrtSearch::Root(w) = candidate_sqrt(m, budget)? else {
                return Ok(None);
            };
            match run_property_suite(suite, m, Some(&w), budget) {
                Ok(rep) => Ok((!rep.passed()).then(|| rep.to_string())),
                Err(Error::Precondition(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
    }
}

/// The first candidate of at most `max_size` elements that satisfies the
/// axioms and violates `property`.
pub fn counterexample_search(property: &str, max_size: usize) -> Result<Option<Violator>> {
    if !SEARCH_PROPERTIES.contains(&property) && !SUITES.contains(&property) {
        return Err(Error::UnknownSuite(property.to_string()));
    }
    if max_size > MAX_SEARCH_SIZE {
        return Err(Error::Usage(format!("--max-size {max_size} exceeds {MAX_SEARCH_SIZE}")));
    }
    let budget = Budget::default();
    for m in candidates(max_size) {
        if !m.check_axioms(&budget).passed() {
            continue;
        }
        if let Some(reason) = violation(property, &m, &budget)? {
            let (table, _) = m.compile().expect("search candidates are small");
            return Ok(Some(Violator { table, description: m.describe(), reason }));
        }
    }
    Ok(None)
}
