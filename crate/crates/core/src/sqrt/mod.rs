//! Square roots on pseudo MV-algebras: the max-formula decision procedure on
//! finite algebras, closed forms on Γ carriers, verification of (Sq1)–(Sq3),
//! classification, reconstruction and the property suites.

mod structure;
mod suites;

#[cfg(test)]
use structure::brute_force_roots;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::checks::{self, ensure, Check};
use crate::error::{Error, Result};
use crate::grid::Budget;
use crate::group::{GroupDescriptor, GroupElement, UnitalGroup};
use crate::report::{Status, SuiteReport};

pub use structure::{
    classify, hroot0_exact, hroot0_membership, induced_algebra, induced_interval_ops, is_strict, orbit_supremum,
    r_and_f, r_orbit, reconstruct_sqrt, same_on, ClassifyResult, InducedOps, Kind, Part, Rejection, MAX_ORBIT,
};
pub use suites::{replay_suite, run_property_suite, SUITES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    Unverified,
    Sampled,
    Exhaustive,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verification::Unverified => "unverified",
            Verification::Sampled => "sampled",
            Verification::Exhaustive => "exhaustive",
        })
    }
}

/// The half map `f` with `f(x) ⊕ f(x) = x` used to rebuild a root.
#[derive(Debug, Clone, PartialEq)]
pub enum HalfMap {
    Table(BTreeMap<Element, Element>),
    /// `x/2` in the group.
    Halving,
    /// `f(x) = r(x˜)⁻` for a known root `r`.
    FromRoot(Box<SqrtWitness>),
    /// The unique `y ≤ b` with `y ⊕ y = x`, by enumeration.
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SqrtForm {
    FiniteMap(BTreeMap<Element, Element>),
    /// `r(x) = (x+u)/2`.
    ClosedHalfUnit,
    /// `r((x,y)) = ((x+1)/2, y/2)` on Γ(H lex G, (1,0)).
    HPerfect,
    ProductOf(Vec<SqrtWitness>),
    Identity,
    /// `x ↦ r(x) ∧ a` on an interval `[0,a]` of the algebra carrying `r`.
    Restricted(Box<SqrtWitness>),
    /// `r(x) = b⁻ + f(x)`.
    Reconstructed { b: Element, half: HalfMap },
}

/// A square root together with how thoroughly it was verified.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtWitness {
    form: SqrtForm,
    verified: Verification,
}

fn group_of(m: &Algebra) -> Result<&UnitalGroup> {
    match m {
        Algebra::Gamma(g) => Ok(g),
        other => Err(Error::Unsupported(format!("closed forms need a Γ carrier, got {other}"))),
    }
}

fn grp(x: &Element) -> Result<&GroupElement> {
    x.group().ok_or_else(|| Error::NotInAlgebra { element: x.to_string(), reason: "expected a group element".into() })
}

impl SqrtWitness {
    /// A candidate map awaiting [`verify_sqrt`].
    pub fn unverified(form: SqrtForm) -> Self {
        SqrtWitness { form, verified: Verification::Unverified }
    }

    pub fn form(&self) -> &SqrtForm {
        &self.form
    }

    pub fn verification(&self) -> Verification {
        self.verified
    }

    pub fn name(&self) -> &'static str {
        match self.form {
            SqrtForm::FiniteMap(_) => "finite map",
            SqrtForm::ClosedHalfUnit => "(x+u)/2",
            SqrtForm::HPerfect => "((x+1)/2, y/2)",
            SqrtForm::ProductOf(_) => "product",
            SqrtForm::Identity => "identity",
            SqrtForm::Restricted(_) => "restriction",
            SqrtForm::Reconstructed { .. } => "b⁻ + f(x)",
        }
    }

    pub fn apply(&self, m: &Algebra, x: &Element) -> Result<Element> {
        m.require(x)?;
        self.apply_raw(m, x)
    }

    pub(crate) fn apply_raw(&self, m: &Algebra, x: &Element) -> Result<Element> {
        match &self.form {
            SqrtForm::Identity => Ok(x.clone()),
            SqrtForm::FiniteMap(map) => map
                .get(x)
                .cloned()
                .ok_or_else(|| Error::NotInAlgebra { element: x.to_string(), reason: "outside the finite map".into() }),
            SqrtForm::ClosedHalfUnit => {
                let g = group_of(m)?;
                let d = g.descriptor();
                d.halve_raw(&d.add_raw(grp(x)?, g.unit()))
                    .map(Element::Group)
                    .ok_or_else(|| Error::Precondition(format!("(x+u)/2 does not exist at x={x}")))
            }
            SqrtForm::HPerfect => {
                let g = group_of(m)?;
                let GroupDescriptor::LexPair { h, g: gd } = g.descriptor() else {
                    return Err(Error::Unsupported("the H-perfect form needs a lexicographic pair".into()));
                };
                let k = h.dims();
                let (xh, xg) = grp(x)?.coords().split_at(k);
                let uh = GroupElement::new(g.unit().coords()[..k].to_vec());
                let rh = h.halve_raw(&h.add_raw(&GroupElement::new(xh.to_vec()), &uh));
                let rg = gd.halve_raw(&GroupElement::new(xg.to_vec()));
                match (rh, rg) {
                    (Some(a), Some(b)) => {
                        let mut c = a.coords().to_vec();
                        c.extend_from_slice(b.coords());
                        Ok(Element::Group(GroupElement::new(c)))
                    }
                    _ => Err(Error::Precondition(format!("((x+1)/2, y/2) does not exist at {x}"))),
                }
            }
            SqrtForm::ProductOf(ws) => {
                let Algebra::Product(fs) = m else {
                    return Err(Error::DescriptorMismatch(format!("product root on {m}")));
                };
                let xs = x.tuple().ok_or_else(|| Error::DescriptorMismatch(format!("{x} is not a tuple")))?;
                if ws.len() != fs.len() || xs.len() != fs.len() {
                    return Err(Error::DescriptorMismatch(format!("{} roots for {} factors", ws.len(), fs.len())));
                }
                Ok(Element::Tuple(
                    ws.iter().zip(fs).zip(xs).map(|((w, f), xi)| w.apply_raw(f, xi)).collect::<Result<_>>()?,
                ))
            }
            SqrtForm::Restricted(inner) => {
                let Algebra::Interval { base, top } = m else {
                    return Err(Error::DescriptorMismatch(format!("restricted root on {m}")));
                };
                Ok(base.meet(&inner.apply_raw(base, x)?, top))
            }
            SqrtForm::Reconstructed { b, half } => {
                let f = half.apply(m, b, x)?;
                m.partial_add_raw(&m.minus(b), &f)
                    .ok_or_else(|| Error::Precondition(format!("b⁻ + f(x) is undefined at x={}", m.show(x))))
            }
        }
    }

    /// The root as an explicit table over a finite carrier.
    pub fn to_map(&self, m: &Algebra) -> Result<BTreeMap<Element, Element>> {
        let els = m.elements().ok_or_else(|| Error::Unsupported(format!("{m} is not finite")))?;
        els.into_iter().map(|x| Ok((x.clone(), self.apply_raw(m, &x)?))).collect()
    }
}

impl fmt::Display for SqrtWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.verified)
    }
}

impl HalfMap {
    pub fn apply(&self, m: &Algebra, b: &Element, x: &Element) -> Result<Element> {
        match self {
            HalfMap::Table(t) => t
                .get(x)
                .cloned()
                .ok_or_else(|| Error::NotInAlgebra { element: x.to_string(), reason: "outside the half table".into() }),
            HalfMap::Halving => {
                let g = group_of(m)?;
                g.descriptor()
                    .halve_raw(grp(x)?)
                    .map(Element::Group)
                    .ok_or_else(|| Error::Precondition(format!("x/2 does not exist at x={x}")))
            }
            HalfMap::FromRoot(r) => Ok(m.minus(&r.apply_raw(m, &m.sim(x))?)),
            HalfMap::Search => {
                let els = m.elements().ok_or_else(|| Error::Unsupported("half search needs a finite carrier".into()))?;
                let found: Vec<Element> =
                    els.into_iter().filter(|y| m.leq(y, b) && &m.oplus(y, y) == x).collect();
                match found.len() {
                    1 => Ok(found.into_iter().next().unwrap()),
                    0 => Err(Error::Precondition(format!("no y ≤ b with y⊕y = x at x={}", m.show(x)))),
                    k => Err(Error::Precondition(format!("{k} choices of y ≤ b with y⊕y = x at x={}", m.show(x)))),
                }
            }
        }
    }
}

/// Evaluates a fallible expression inside a check, turning errors into a
/// violation trace.
macro_rules! tryv {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Some(format!("evaluation failed: {e}")),
        }
    };
}
pub(crate) use tryv;

/// Checks (Sq1), (Sq2) and, unless `weak`, (Sq3). Exhaustive on finite
/// carriers, over the sample grid otherwise; (Sq2) ranges over pairs.
pub fn verify_sqrt(m: &Algebra, r: &SqrtWitness, budget: &Budget, weak: bool) -> Result<SuiteReport> {
    let dom = m.domain(budget).with_front(vec![m.zero(), m.one()]);
    let mut need = dom.points.clone();
    need.extend(dom.points.iter().flat_map(|x| [m.minus(x), m.sim(x)]));
    let vals: HashMap<Element, Element> = need
        .par_iter()
        .map(|x| r.apply_raw(m, x).map(|v| (x.clone(), v)))
        .collect::<Result<_>>()?;
    let squares: HashMap<&Element, Element> = dom.points.iter().map(|y| (y, m.odot(y, y))).collect();
    let rv = |x: &Element| vals.get(x).cloned().map_or_else(|| r.apply_raw(m, x), Ok);
    let r0 = rv(&m.zero())?;
    let s = |e: &Element| m.show(e);

    let mut list = vec![
        Check::new("Sq1", 1, |a: &[Element]| {
            let x = &a[0];
            let y = tryv!(rv(x));
            if !m.contains(&y) {
                return Some(format!("r(x) = {} is outside the algebra", s(&y)));
            }
            let yy = m.odot(&y, &y);
            ensure!(&yy == x, "r(x) = {}, r(x)⊙r(x) = {}", s(&y), s(&yy))
        }),
        Check::new("Sq2", 2, |a: &[Element]| {
            let (x, y) = (&a[0], &a[1]);
            let yy = &squares[y];
            if !m.leq(yy, x) {
                return None;
            }
            let rx = tryv!(rv(x));
            ensure!(m.leq(y, &rx), "y⊙y = {} ≤ x but y ≰ r(x) = {}", s(yy), s(&rx))
        }),
    ];
    if !weak {
        list.push(Check::new("Sq3", 1, |a: &[Element]| {
            let x = &a[0];
            let rx = tryv!(rv(x));
            let l1 = tryv!(rv(&m.minus(x)));
            let r1 = m.arrow(&rx, &r0);
            let l2 = tryv!(rv(&m.sim(x)));
            let r2 = m.squig(&rx, &r0);
            ensure!(
                l1 == r1 && l2 == r2,
                "r(x⁻) = {}, r(x)→r(0) = {}, r(x˜) = {}, r(x)⇝r(0) = {}",
                s(&l1),
                s(&r1),
                s(&l2),
                s(&r2)
            )
        }));
    }
    Ok(checks::run_suite(if weak { "WEAK-SQRT" } else { "SQRT" }, &list, &dom, budget))
}

/// Verifies `form` and returns it as a witness at the level reached.
pub(crate) fn certify(m: &Algebra, form: SqrtForm, budget: &Budget) -> Result<SqrtWitness> {
    let w = SqrtWitness::unverified(form);
    let rep = verify_sqrt(m, &w, budget, false)?;
    match rep.status {
        Status::Pass => Ok(SqrtWitness { verified: Verification::Exhaustive, ..w }),
        Status::SampledPass => Ok(SqrtWitness { verified: Verification::Sampled, ..w }),
        Status::Fail => Err(Error::NotASquareRoot(rep.to_string())),
    }
}

/// Proof that a finite algebra has no square root: the only possible root,
/// the max-formula map, violates an axiom (or the maximum does not exist).
#[derive(Debug, Clone, PartialEq)]
pub struct NoSquareRoot {
    pub reason: String,
    pub candidate: Option<BTreeMap<Element, Element>>,
    pub report: Option<SuiteReport>,
}

impl fmt::Display for NoSquareRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SqrtSearch {
    Root(SqrtWitness),
    NoRoot(NoSquareRoot),
}

impl SqrtSearch {
    pub fn root(&self) -> Option<&SqrtWitness> {
        match self {
            SqrtSearch::Root(w) => Some(w),
            SqrtSearch::NoRoot(_) => None,
        }
    }

    pub fn into_root(self) -> Option<SqrtWitness> {
        match self {
            SqrtSearch::Root(w) => Some(w),
            SqrtSearch::NoRoot(_) => None,
        }
    }
}

/// `max{y ∧ (y → x) | y ∈ elements}`, if the maximum exists.
fn max_formula(m: &Algebra, els: &[Element], x: &Element) -> Option<Element> {
    let vals: Vec<Element> = els.iter().map(|y| m.meet(y, &m.arrow(y, x))).collect();
    let top = vals.iter().skip(1).fold(vals[0].clone(), |acc, v| m.join(&acc, v));
    vals.contains(&top).then_some(top)
}

/// The unique possible square root of a finite algebra, `x ↦ max{y ∧ (y→x)}`,
/// returned as a witness iff it satisfies (Sq1)–(Sq3).
pub fn candidate_sqrt(m: &Algebra, budget: &Budget) -> Result<SqrtSearch> {
    let els = m
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{m} is infinite; use grid_candidate for a lower bound")))?;
    let computed: Vec<Option<Element>> = match m.compile() {
        Some((table, back)) => {
            let t = Algebra::table(table);
            let idx: Vec<Element> = (0..back.len()).map(Element::Index).collect();
            idx.par_iter()
                .map(|x| max_formula(&t, &idx, x).map(|v| back[v.index().expect("table element")].clone()))
                .collect()
        }
        None => els.par_iter().map(|x| max_formula(m, &els, x)).collect(),
    };
    let mut map = BTreeMap::new();
    for (x, v) in els.iter().zip(computed) {
        match v {
            Some(v) => {
                map.insert(x.clone(), v);
            }
            None => {
                return Ok(SqrtSearch::NoRoot(NoSquareRoot {
                    reason: format!("no square root; y∧(y→x) has no maximum at x={}", m.show(x)),
                    candidate: None,
                    report: None,
                }))
            }
        }
    }
    let form = if map.iter().all(|(k, v)| k == v) { SqrtForm::Identity } else { SqrtForm::FiniteMap(map.clone()) };
    let w = SqrtWitness::unverified(form);
    let rep = verify_sqrt(m, &w, budget, false)?;
    if rep.passed() {
        return Ok(SqrtSearch::Root(SqrtWitness { verified: Verification::Exhaustive, ..w }));
    }
    let ce = rep.counterexample.as_ref().expect("a failed report carries a counterexample");
    let x = &ce.elements[0];
    let at = match ce.elements.get(1) {
        Some(y) => format!("x={}, y={}", m.show(x), m.show(y)),
        None => format!("x={}", m.show(x)),
    };
    let reason = format!(
        "no square root; {} violated at {at} by candidate r({})={}",
        ce.check,
        m.show(x),
        m.show(&map[x])
    );
    Ok(SqrtSearch::NoRoot(NoSquareRoot { reason, candidate: Some(map), report: Some(rep) }))
}

/// Grid lower bound for the max-formula at `x` on an infinite carrier: the
/// join of `y ∧ (y→x)` over the sample.
pub fn grid_candidate(m: &Algebra, x: &Element, budget: &Budget) -> Result<Element> {
    m.require(x)?;
    let pts = m.domain(budget).points;
    Ok(pts.iter().fold(m.zero(), |acc, y| m.join(&acc, &m.meet(y, &m.arrow(y, x)))))
}

/// `r(x) = (x+u)/2` on Γ(G,u) with G two-divisible and `u/2` central.
pub fn closed_form_sqrt(m: &Algebra, budget: &Budget) -> Result<SqrtWitness> {
    let g = group_of(m)?;
    let d = g.descriptor();
    if !d.is_two_divisible() {
        return Err(Error::Precondition(format!("{d} is not two-divisible")));
    }
    let half = d.halve_raw(g.unit()).ok_or_else(|| Error::Precondition("u/2 does not exist".into()))?;
    let central = d.is_central(&half)?;
    if !central.holds {
        return Err(Error::Precondition(format!("u/2 = {half} is not central")));
    }
    certify(m, SqrtForm::ClosedHalfUnit, budget)
}

/// `r((x,y)) = ((x+1)/2, y/2)` on Γ(H lex G, (1,0)).
pub fn hperfect_sqrt(m: &Algebra, budget: &Budget) -> Result<SqrtWitness> {
    let g = group_of(m)?;
    let GroupDescriptor::LexPair { h, g: gd } = g.descriptor() else {
        return Err(Error::Precondition(format!("{} is not a lexicographic pair", g.descriptor())));
    };
    let k = h.dims();
    let u = g.unit().coords();
    if u[k..].iter().any(|c| !c.is_zero()) || u[..k].iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition(format!("unit {} is not of the form (h,0) with h > 0", g.unit())));
    }
    if !h.is_two_divisible() {
        if gd.dims() > 0 {
            return Err(Error::Precondition(format!("H = {h} is not two-divisible and G is nontrivial")));
        }
        return match candidate_sqrt(m, budget)? {
            SqrtSearch::Root(w) => Ok(w),
            SqrtSearch::NoRoot(n) => Err(Error::Precondition(n.reason)),
        };
    }
    if !gd.is_two_divisible() {
        return Err(Error::Precondition(format!("G = {gd} is not two-divisible")));
    }
    certify(m, SqrtForm::HPerfect, budget)
}

/// The componentwise root, verified at the weakest component level.
pub fn product_sqrt(witnesses: Vec<SqrtWitness>) -> SqrtWitness {
    let verified = witnesses.iter().map(|w| w.verified).min().unwrap_or(Verification::Exhaustive);
    if witnesses.iter().all(|w| w.form == SqrtForm::Identity) {
        return SqrtWitness { form: SqrtForm::Identity, verified };
    }
    SqrtWitness { form: SqrtForm::ProductOf(witnesses), verified }
}

/// Finds the square root by the best available method: the max-formula on
/// finite carriers, closed forms on Γ carriers, componentwise on products.
pub fn find_sqrt(m: &Algebra, budget: &Budget) -> Result<SqrtSearch> {
    if m.size().is_some_and(|n| n <= budget.exhaustive_limit) {
        return candidate_sqrt(m, budget);
    }
    match m {
        Algebra::Gamma(g) => {
            let w = match g.descriptor() {
                GroupDescriptor::LexPair { h, .. } if h.dims() == 1 => hperfect_sqrt(m, budget)?,
                _ => closed_form_sqrt(m, budget)?,
            };
            Ok(SqrtSearch::Root(w))
        }
        Algebra::Product(fs) => {
            let mut ws = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                match find_sqrt(f, budget)? {
                    SqrtSearch::Root(w) => ws.push(w),
                    SqrtSearch::NoRoot(n) => {
                        return Ok(SqrtSearch::NoRoot(NoSquareRoot {
                            reason: format!("no square root; factor {} has none: {}", i + 1, n.reason),
                            candidate: None,
                            report: n.report,
                        }))
                    }
                }
            }
            Ok(SqrtSearch::Root(product_sqrt(ws)))
        }
        other => Err(Error::Unsupported(format!("no square-root method for {other}"))),
    }
}

#[cfg(test)]
mod tests;
