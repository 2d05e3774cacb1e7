use std::collections::{HashMap, HashSet};
#[cfg(test)]
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{certify, group_of, grp, HalfMap, SqrtForm, SqrtWitness};
#[cfg(test)]
use super::verify_sqrt;
use crate::algebra::{Algebra, Element, FiniteTable};
use crate::error::{Error, Result};
use crate::grid::Budget;
use crate::group::GroupDescriptor;

/// Longest orbit [`r_orbit`] will compute.
pub const MAX_ORBIT: usize = 256;

/// `r(0) = r(0)⁻`.
pub fn is_strict(m: &Algebra, r: &SqrtWitness) -> Result<bool> {
    let r0 = r.apply_raw(m, &m.zero())?;
    Ok(r0 == m.minus(&r0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Degenerate,
    Boolean,
    Strict,
    Mixed,
}

/// One factor of the decomposition `M ≅ [0,v] × [0,v⁻]`.
#[derive(Debug, Clone)]
pub struct Part {
    pub algebra: Algebra,
    pub root: SqrtWitness,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct ClassifyResult {
    pub kind: Kind,
    /// `w = r(0)⁻ ⊙ r(0)⁻`, a Boolean element.
    pub w: Element,
    /// The Boolean/strict splitting element; equal to `w`.
    pub v: Element,
    pub boolean_part: Option<Part>,
    pub strict_part: Option<Part>,
}

impl ClassifyResult {
    /// One-line summary with elements rendered in `m`.
    pub fn summary(&self, m: &Algebra) -> String {
        match self.kind {
            Kind::Degenerate => "Degenerate".into(),
            Kind::Boolean => format!("Boolean; w={}", m.show(&self.w)),
            Kind::Strict => format!("Strict; w={}", m.show(&self.w)),
            Kind::Mixed => format!(
                "Mixed; v={}; Boolean part {}; strict part {}",
                m.show(&self.v),
                self.boolean_part.as_ref().map_or("?", |p| &p.description),
                self.strict_part.as_ref().map_or("?", |p| &p.description)
            ),
        }
    }
}

/// An interval `[0,a]` of a product whose top has every coordinate equal to
/// 0 or 1 is the product of the factors where it is 1.
fn simplify_interval(base: &Algebra, top: &Element) -> Option<Algebra> {
    let (Algebra::Product(fs), Some(ts)) = (base, top.tuple()) else {
        return None;
    };
    let mut keep = Vec::new();
    for (f, t) in fs.iter().zip(ts) {
        if *t == f.one() {
            keep.push(f.clone());
        } else if *t != f.zero() {
            return None;
        }
    }
    Some(if keep.len() == 1 { keep.pop().unwrap() } else { Algebra::product(keep) })
}

fn describe_part(alg: &Algebra) -> String {
    if let Some(n) = alg.size() {
        return format!("{n} elements");
    }
    match alg {
        Algebra::Interval { base, top } => match simplify_interval(base, top) {
            Some(a) => a.size().map_or_else(|| a.describe(), |n| format!("{n} elements")),
            None => alg.describe(),
        },
        _ => alg.describe(),
    }
}

/// Splits `M` along `v = r(0)⁻ ⊙ r(0)⁻` into a Boolean part `[0,v]` and a
/// strict part `[0,v⁻]`, verifying both.
pub fn classify(m: &Algebra, r: &SqrtWitness, budget: &Budget) -> Result<ClassifyResult> {
    let zero = m.zero();
    let one = m.one();
    let r0 = r.apply_raw(m, &zero)?;
    let b = m.minus(&r0);
    let w = m.odot(&b, &b);
    let v = w.clone();
    let mut out = ClassifyResult { kind: Kind::Degenerate, w, v: v.clone(), boolean_part: None, strict_part: None };
    if m.is_degenerate() {
        return Ok(out);
    }
    if v == one {
        if r0 != zero {
            return Err(Error::Inconsistent(format!("w = 1 but r(0) = {}", m.show(&r0))));
        }
        for x in m.domain(budget).points {
            if r.apply_raw(m, &x)? != x {
                return Err(Error::Inconsistent(format!("w = 1 but r moves {}", m.show(&x))));
            }
        }
        out.kind = Kind::Boolean;
        return Ok(out);
    }
    if v == zero {
        if r0 != b {
            return Err(Error::Inconsistent(format!("w = 0 but r(0) = {} ≠ r(0)⁻ = {}", m.show(&r0), m.show(&b))));
        }
        out.kind = Kind::Strict;
        return Ok(out);
    }

    let restricted = SqrtForm::Restricted(Box::new(r.clone()));
    let bool_alg = Algebra::interval(m.clone(), v.clone())?;
    let bool_root = certify(&bool_alg, restricted.clone(), budget)?;
    for x in bool_alg.domain(budget).points {
        if bool_alg.oplus(&x, &x) != x || bool_root.apply_raw(&bool_alg, &x)? != x {
            return Err(Error::Inconsistent(format!("[0,v] is not Boolean at {}", m.show(&x))));
        }
    }
    let strict_alg = Algebra::interval(m.clone(), m.minus(&v))?;
    let strict_root = certify(&strict_alg, restricted, budget)?;
    if !is_strict(&strict_alg, &strict_root)? {
        return Err(Error::Inconsistent("the root on [0,v⁻] is not strict".into()));
    }
    out.kind = Kind::Mixed;
    out.boolean_part = Some(Part { description: describe_part(&bool_alg), algebra: bool_alg, root: bool_root });
    out.strict_part = Some(Part { description: describe_part(&strict_alg), algebra: strict_alg, root: strict_root });
    Ok(out)
}

/// `R(x) = f(x) = r(x˜)⁻`, after checking `R(x) ≤ r(0)⁻`,
/// `R(x) ⊕ r(0) = r(x)` and `R(x) ⊕ R(x) = x`.
pub fn r_and_f(m: &Algebra, r: &SqrtWitness, x: &Element) -> Result<(Element, Element)> {
    m.require(x)?;
    let r0 = r.apply_raw(m, &m.zero())?;
    let rx = r.apply_raw(m, x)?;
    let big_r = m.minus(&r.apply_raw(m, &m.sim(x))?);
    let fail = |what: &str| Err(Error::Inconsistent(format!("{what} fails at x={}", m.show(x))));
    if !m.leq(&big_r, &m.minus(&r0)) {
        return fail("R(x) ≤ r(0)⁻");
    }
    if m.oplus(&big_r, &r0) != rx {
        return fail("R(x) ⊕ r(0) = r(x)");
    }
    if &m.oplus(&big_r, &big_r) != x {
        return fail("R(x) ⊕ R(x) = x");
    }
    Ok((big_r.clone(), big_r))
}

/// The operations transported to `[0, r(0)⁻]` along `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedOps {
    pub oplus_r: Element,
    pub minus_r: Element,
    pub sim_r: Element,
}

/// `x ⊕ᵣ y = f(f⁻¹(x) ⊕ f⁻¹(y))` with `f⁻¹(z) = z ⊕ z`, `x^{-r} = x⁻ ⊙ r(0)⁻`
/// and `x^{~r} = x˜ ⊙ r(0)⁻`, for `x, y ≤ r(0)⁻`.
pub fn induced_interval_ops(m: &Algebra, r: &SqrtWitness, x: &Element, y: &Element) -> Result<InducedOps> {
    m.require(x)?;
    m.require(y)?;
    let b = m.minus(&r.apply_raw(m, &m.zero())?);
    for e in [x, y] {
        if !m.leq(e, &b) {
            return Err(Error::NotInAlgebra { element: m.show(e), reason: format!("outside [0, r(0)⁻] = [0, {}]", m.show(&b)) });
        }
    }
    let f = |z: &Element| -> Result<Element> { Ok(m.minus(&r.apply_raw(m, &m.sim(z))?)) };
    let a = m.oplus(x, x);
    let c = m.oplus(y, y);
    Ok(InducedOps { oplus_r: f(&m.oplus(&a, &c))?, minus_r: m.odot(&m.minus(x), &b), sim_r: m.odot(&m.sim(x), &b) })
}

/// The algebra `([0, r(0)⁻]; ⊕ᵣ, ⁻ʳ, ˜ʳ, 0, r(0)⁻)` of a finite algebra, as a
/// table labelled by the original elements.
pub fn induced_algebra(m: &Algebra, r: &SqrtWitness) -> Result<Algebra> {
    let b = m.minus(&r.apply_raw(m, &m.zero())?);
    let els: Vec<Element> = m
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{m} is not finite")))?
        .into_iter()
        .filter(|x| m.leq(x, &b))
        .collect();
    let index: HashMap<&Element, usize> = els.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let at = |e: &Element| {
        index.get(e).copied().ok_or_else(|| Error::Inconsistent(format!("{} leaves [0, r(0)⁻]", m.show(e))))
    };
    let mut oplus = Vec::new();
    let mut minus = Vec::new();
    let mut sim = Vec::new();
    for x in &els {
        let mut row = Vec::new();
        for y in &els {
            row.push(at(&induced_interval_ops(m, r, x, y)?.oplus_r)?);
        }
        oplus.push(row);
        let ops = induced_interval_ops(m, r, x, x)?;
        minus.push(at(&ops.minus_r)?);
        sim.push(at(&ops.sim_r)?);
    }
    let labels = els.iter().map(|e| m.show(e)).collect();
    Ok(Algebra::table(FiniteTable::new(labels, oplus, minus, sim, at(&m.zero())?, at(&b)?)?))
}

/// Why a reconstruction was refused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    /// The violated hypothesis, e.g. `f(x)⊕f(x) = x`.
    pub condition: String,
    /// Elements witnessing the violation.
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rejected: {} fails", self.condition)?;
        if !self.witness.is_empty() {
            write!(f, " at {}", self.witness.join(", "))?;
        }
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn reject(condition: &str, witness: Vec<String>, detail: impl Into<String>) -> Rejection {
    Rejection { condition: condition.into(), witness, detail: detail.into() }
}

/// Builds `r(x) = b⁻ + f(x)` after checking `b⁻ ≤ b`, `b ⊙ x = x ⊙ b`,
/// `f(x) ⊕ f(x) = x` with `f(x) ∈ [0,b]`, and that `f` is an order
/// isomorphism onto `[0,b]`; the result must pass [`verify_sqrt`].
pub fn reconstruct_sqrt(m: &Algebra, b: &Element, half: HalfMap, budget: &Budget) -> Result<SqrtWitness, Rejection> {
    let s = |e: &Element| m.show(e);
    if !m.contains(b) {
        return Err(reject("b ∈ M", vec![b.to_string()], ""));
    }
    let bm = m.minus(b);
    if !m.leq(&bm, b) {
        return Err(reject("b⁻ ≤ b", vec![s(b)], format!("b⁻ = {}", s(&bm))));
    }
    let mut dom = m.domain(budget);
    dom = if dom.exhaustive { dom } else { dom.with_front(vec![m.zero(), b.clone(), m.one()]) };
    for x in &dom.points {
        if m.odot(b, x) != m.odot(x, b) {
            return Err(reject("b⊙x = x⊙b", vec![s(x)], ""));
        }
    }
    let mut fx = Vec::with_capacity(dom.points.len());
    for x in &dom.points {
        let y = half.apply(m, b, x).map_err(|e| reject("f(x)⊕f(x) = x", vec![s(x)], e.to_string()))?;
        if !m.contains(&y) || !m.leq(&y, b) {
            return Err(reject("f(x) ∈ [0,b]", vec![s(x)], format!("f(x) = {y}")));
        }
        if &m.oplus(&y, &y) != x {
            return Err(reject("f(x)⊕f(x) = x", vec![s(x)], format!("f(x) = {}", s(&y))));
        }
        fx.push(y);
    }
    let mut seen = HashSet::new();
    for (x, y) in dom.points.iter().zip(&fx) {
        if !seen.insert(y) {
            return Err(reject("f is injective", vec![s(x)], format!("f(x) = {} repeats", s(y))));
        }
    }
    let k = if dom.exhaustive { fx.len() } else { fx.len().min(budget.pair_points) };
    for i in 0..k {
        for j in 0..k {
            if m.leq(&dom.points[i], &dom.points[j]) && !m.leq(&fx[i], &fx[j]) {
                return Err(reject("f preserves order", vec![s(&dom.points[i]), s(&dom.points[j])], ""));
            }
        }
    }
    if dom.exhaustive {
        let below = dom.points.iter().filter(|y| m.leq(y, b)).count();
        if below != fx.len() {
            return Err(reject("f maps onto [0,b]", vec![s(b)], format!("|[0,b]| = {below}, |M| = {}", fx.len())));
        }
    }
    let form = SqrtForm::Reconstructed { b: b.clone(), half };
    match certify(m, form, budget) {
        Ok(w) => Ok(w),
        Err(Error::NotASquareRoot(detail)) => Err(reject("square-root axioms", Vec::new(), detail)),
        Err(e) => Err(reject("evaluation", Vec::new(), e.to_string())),
    }
}

/// `[r(0), r²(0), …, rⁿ(0)]`.
pub fn r_orbit(m: &Algebra, r: &SqrtWitness, n: usize) -> Result<Vec<Element>> {
    if n > MAX_ORBIT {
        return Err(Error::Usage(format!("orbit length {n} exceeds {MAX_ORBIT}")));
    }
    let mut z = m.zero();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        z = r.apply_raw(m, &z)?;
        out.push(z.clone());
    }
    Ok(out)
}

/// Truncated membership in `{x | x ≤ rⁿ(0)⁻ for all n}`, testing
/// `n = 1..=depth`.
pub fn hroot0_membership(m: &Algebra, r: &SqrtWitness, x: &Element, depth: usize) -> Result<bool> {
    m.require(x)?;
    for z in r_orbit(m, r, depth)? {
        if !m.leq(x, &m.minus(&z)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact membership on Γ(H lex G, (1,0)) with the H-perfect root: the
/// H-coordinate is 0.
pub fn hroot0_exact(m: &Algebra, x: &Element) -> Result<bool> {
    m.require(x)?;
    let g = group_of(m)?;
    let GroupDescriptor::LexPair { h, .. } = g.descriptor() else {
        return Err(Error::Unsupported(format!("{} is not a lexicographic pair", g.descriptor())));
    };
    Ok(grp(x)?.coords()[..h.dims()].iter().all(|c| c.is_zero()))
}

/// `⋁ₙ rⁿ(0)` when it is known: the orbit stabilises within `depth` steps,
/// or a factor is Γ(ℚ,u) with the half-unit root (supremum `u`).
pub fn orbit_supremum(m: &Algebra, r: &SqrtWitness, depth: usize) -> Result<Option<Element>> {
    match (m, r.form()) {
        (Algebra::Product(fs), SqrtForm::ProductOf(ws)) if fs.len() == ws.len() => {
            let parts: Option<Vec<Element>> =
                fs.iter().zip(ws).map(|(f, w)| orbit_supremum(f, w, depth)).collect::<Result<_>>()?;
            return Ok(parts.map(Element::Tuple));
        }
        (Algebra::Gamma(g), SqrtForm::ClosedHalfUnit)
            if matches!(g.descriptor(), GroupDescriptor::RatVector { dims: 1, .. }) =>
        {
            // rⁿ(0) = (2ⁿ−1)u/2ⁿ increases to u
            return Ok(Some(m.one()));
        }
        _ => {}
    }
    let mut prev = m.zero();
    for _ in 0..depth.max(1) {
        let next = r.apply_raw(m, &prev)?;
        if next == prev {
            return Ok(Some(next));
        }
        prev = next;
    }
    Ok(None)
}

/// The first domain point where two roots differ.
pub fn same_on(m: &Algebra, a: &SqrtWitness, b: &SqrtWitness, budget: &Budget) -> Result<Option<Element>> {
    for x in m.domain(budget).points {
        if a.apply_raw(m, &x)? != b.apply_raw(m, &x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Exhaustive list of all maps `M → M` passing verification, for tiny `M`.
#[cfg(test)]
pub(crate) fn brute_force_roots(m: &Algebra, budget: &Budget) -> Result<Vec<BTreeMap<Element, Element>>> {
    let els = m.elements().ok_or_else(|| Error::Unsupported("brute force needs a finite carrier".into()))?;
    let n = els.len();
    let total = n.checked_pow(n as u32).filter(|&t| t <= 1 << 20).ok_or(Error::BoundExceeded { size: n, bound: 8 })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let map: BTreeMap<Element, Element> = els
            .iter()
            .map(|x| {
                let v = els[c % n].clone();
                c /= n;
                (x.clone(), v)
            })
            .collect();
        // cheap filter on Sq1 before the full check
        if map.iter().any(|(x, y)| &m.odot(y, y) != x) {
            continue;
        }
        let w = SqrtWitness::unverified(SqrtForm::FiniteMap(map.clone()));
        if verify_sqrt(m, &w, budget, false)?.passed() {
            out.push(map);
        }
    }
    Ok(out)
}
