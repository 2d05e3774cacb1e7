//! Generic engine that runs named universally-quantified checks over a
//! domain of points, in parallel, with a deterministic first counterexample.

use rayon::prelude::*;

use crate::algebra::{Domain, Element};
use crate::grid::Budget;
use crate::report::{CheckReport, Counterexample, Status, SuiteReport};

/// `Some(trace)` on a violation.
pub(crate) type Outcome = Option<String>;

type TestFn<'a> = Box<dyn Fn(&[Element]) -> Outcome + Send + Sync + 'a>;

pub(crate) struct Check<'a> {
    pub name: String,
    pub arity: usize,
    test: TestFn<'a>,
}

impl<'a> Check<'a> {
    pub fn new(name: impl Into<String>, arity: usize, test: impl Fn(&[Element]) -> Outcome + Send + Sync + 'a) -> Self {
        assert!(arity <= 3);
        Check { name: name.into(), arity, test: Box::new(test) }
    }

    pub fn eval(&self, args: &[Element]) -> Outcome {
        (self.test)(args)
    }
}

/// Evaluates to `None` when `cond` holds, else the formatted trace.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if $cond { None } else { Some(format!($($fmt)+)) }
    };
}
pub(crate) use ensure;

/// How many leading points each arity ranges over, and whether that covers
/// the whole domain.
fn reach(arity: usize, domain: &Domain, budget: &Budget) -> (usize, bool) {
    let n = domain.points.len();
    let cap = match arity {
        0 | 1 => n,
        2 if domain.exhaustive => n,
        2 => budget.pair_points,
        _ if domain.exhaustive && n <= budget.triple_exhaustive_limit() => n,
        _ => budget.triple_points,
    };
    let k = cap.min(n);
    (k, domain.exhaustive && k == n)
}

fn run_check(check: &Check, domain: &Domain, budget: &Budget) -> CheckReport {
    let (k, full) = reach(check.arity, domain, budget);
    let pts = &domain.points[..k];
    let found: Option<(Vec<Element>, String)> = match check.arity {
        0 => check.eval(&[]).map(|t| (Vec::new(), t)),
        1 => pts.par_iter().find_map_first(|x| {
            let a = [x.clone()];
            check.eval(&a).map(|t| (a.to_vec(), t))
        }),
        2 => pts.par_iter().find_map_first(|x| {
            pts.iter().find_map(|y| {
                let a = [x.clone(), y.clone()];
                check.eval(&a).map(|t| (a.to_vec(), t))
            })
        }),
        _ => pts.par_iter().find_map_first(|x| {
            pts.iter().find_map(|y| {
                pts.iter().find_map(|z| {
                    let a = [x.clone(), y.clone(), z.clone()];
                    check.eval(&a).map(|t| (a.to_vec(), t))
                })
            })
        }),
    };
    let tuples = if check.arity == 0 { 1 } else { k.pow(check.arity as u32) };
    match found {
        Some((elements, trace)) => CheckReport {
            name: check.name.clone(),
            status: Status::Fail,
            tuples,
            counterexample: Some(Counterexample { check: check.name.clone(), elements, trace }),
        },
        None => CheckReport {
            name: check.name.clone(),
            status: if full { Status::Pass } else { Status::SampledPass },
            tuples,
            counterexample: None,
        },
    }
}

pub(crate) fn run_suite(name: &str, checks: &[Check], domain: &Domain, budget: &Budget) -> SuiteReport {
    let reports = checks.iter().map(|c| run_check(c, domain, budget)).collect();
    SuiteReport::from_checks(name, domain.points.len(), reports)
}

/// Re-evaluates a counterexample; `Some(true)` when the violation recurs.
pub(crate) fn replay(checks: &[Check], ce: &Counterexample) -> Option<bool> {
    let check = checks.iter().find(|c| c.name == ce.check)?;
    (check.arity == ce.elements.len()).then(|| check.eval(&ce.elements).is_some())
}

/// Rewrites index elements of a compiled table back to the original ones.
pub(crate) fn translate(report: &mut SuiteReport, back: &[Element]) {
    let map = |ce: &mut Counterexample| {
        for e in &mut ce.elements {
            if let Element::Index(i) = e {
                *e = back[*i].clone();
            }
        }
    };
    if let Some(ce) = &mut report.counterexample {
        map(ce);
    }
    for c in &mut report.checks {
        if let Some(ce) = &mut c.counterexample {
            map(ce);
        }
    }
}
