//! Ideals of finite pseudo MV-algebras, quotients by normal ideals and the
//! polar test for representability.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::algebra::{Algebra, Element, Quotient};
use crate::error::{Error, Result};

/// Default cap on the carrier size for [`enumerate_ideals`].
pub const DEFAULT_IDEAL_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    Ideal,
    Normal,
    Prime,
    Maximal,
}

/// A subset of a finite algebra, members in the carrier's enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealSet {
    members: Vec<Element>,
}

impl IdealSet {
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.members.contains(x)
    }
}

impl fmt::Display for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(Element::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn carrier(m: &Algebra) -> Result<Vec<Element>> {
    m.elements().ok_or_else(|| Error::Unsupported(format!("ideal computations need a finite carrier, got {m}")))
}

/// Members of `s` that lie in `m`, deduplicated, in carrier order.
fn normalize(m: &Algebra, els: &[Element], s: &[Element]) -> Result<HashSet<Element>> {
    for x in s {
        m.require(x)?;
    }
    let set: HashSet<Element> = s.iter().cloned().collect();
    debug_assert!(set.iter().all(|x| els.contains(x)));
    Ok(set)
}

fn ideal_on(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> bool {
    if !s.contains(&m.zero()) {
        return false;
    }
    let down = s.iter().all(|x| els.iter().all(|y| !m.leq(y, x) || s.contains(y)));
    down && s.iter().all(|x| s.iter().all(|y| s.contains(&m.oplus(x, y))))
}

fn normal_on(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> Result<bool> {
    let by_definition = els.iter().all(|x| {
        let left: HashSet<Element> = s.iter().map(|i| m.oplus(x, i)).collect();
        let right: HashSet<Element> = s.iter().map(|i| m.oplus(i, x)).collect();
        left == right
    });
    // x ⊙ y⁻ ∈ I iff y˜ ⊙ x ∈ I
    let by_criterion = els
        .iter()
        .all(|x| els.iter().all(|y| s.contains(&m.odot(x, &m.minus(y))) == s.contains(&m.odot(&m.sim(y), x))));
    if by_definition != by_criterion {
        return Err(Error::Inconsistent(format!(
            "normality by x⊕I = I⊕x is {by_definition} but by x⊙y⁻ ∈ I ⇔ y˜⊙x ∈ I is {by_criterion}"
        )));
    }
    Ok(by_definition)
}

/// (P1): `x ⊙ y⁻ ∈ I` or `y ⊙ x⁻ ∈ I` for all x, y.
fn prime_p1(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> bool {
    els.iter().all(|x| els.iter().all(|y| s.contains(&m.odot(x, &m.minus(y))) || s.contains(&m.odot(y, &m.minus(x)))))
}

/// (P2): `x ⊙ y˜ ∈ I` or `y ⊙ x˜ ∈ I` for all x, y.
fn prime_p2(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> bool {
    els.iter().all(|x| els.iter().all(|y| s.contains(&m.odot(x, &m.sim(y))) || s.contains(&m.odot(y, &m.sim(x)))))
}

/// The ideal generated by `s`.
fn generated(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> HashSet<Element> {
    let mut cur: HashSet<Element> = s.clone();
    cur.insert(m.zero());
    loop {
        let mut next = cur.clone();
        for x in &cur {
            for y in &cur {
                next.insert(m.oplus(x, y));
            }
        }
        let next: HashSet<Element> =
            els.iter().filter(|y| next.iter().any(|x| m.leq(y, x))).cloned().collect();
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

fn maximal_on(m: &Algebra, els: &[Element], s: &HashSet<Element>) -> bool {
    s.len() < els.len()
        && els.iter().filter(|a| !s.contains(*a)).all(|a| {
            let mut t = s.clone();
            t.insert(a.clone());
            generated(m, els, &t).len() == els.len()
        })
}

/// Decides one ideal predicate for `s ⊆ M` by its literal definition.
/// Prime and maximal include properness; normal is cross-validated against
/// the criterion `x ⊙ y⁻ ∈ I ⇔ y˜ ⊙ x ∈ I`.
pub fn ideal_predicate(m: &Algebra, s: &[Element], which: IdealKind) -> Result<bool> {
    let els = carrier(m)?;
    let set = normalize(m, &els, s)?;
    if !ideal_on(m, &els, &set) {
        return Ok(false);
    }
    match which {
        IdealKind::Ideal => Ok(true),
        IdealKind::Normal => normal_on(m, &els, &set),
        IdealKind::Prime => Ok(set.len() < els.len() && prime_p1(m, &els, &set)),
        IdealKind::Maximal => Ok(maximal_on(m, &els, &set)),
    }
}

pub fn is_ideal(m: &Algebra, s: &[Element]) -> Result<bool> {
    ideal_predicate(m, s, IdealKind::Ideal)
}

pub fn is_normal(m: &Algebra, s: &[Element]) -> Result<bool> {
    ideal_predicate(m, s, IdealKind::Normal)
}

pub fn is_prime(m: &Algebra, s: &[Element]) -> Result<bool> {
    ideal_predicate(m, s, IdealKind::Prime)
}

pub fn is_maximal(m: &Algebra, s: &[Element]) -> Result<bool> {
    ideal_predicate(m, s, IdealKind::Maximal)
}

/// Primeness through (P2) instead of (P1).
pub fn is_prime_p2(m: &Algebra, s: &[Element]) -> Result<bool> {
    let els = carrier(m)?;
    let set = normalize(m, &els, s)?;
    Ok(ideal_on(m, &els, &set) && set.len() < els.len() && prime_p2(m, &els, &set))
}

/// Primeness as a lattice condition: `x ∧ y ∈ I` forces `x ∈ I` or `y ∈ I`.
pub fn is_prime_lattice(m: &Algebra, s: &[Element]) -> Result<bool> {
    let els = carrier(m)?;
    let set = normalize(m, &els, s)?;
    Ok(ideal_on(m, &els, &set)
        && set.len() < els.len()
        && els.iter().all(|x| els.iter().all(|y| !set.contains(&m.meet(x, y)) || set.contains(x) || set.contains(y))))
}

/// Every ideal of a finite algebra with at most `bound` elements. Down-sets
/// are generated first along a linear extension of the order, then filtered
/// for `⊕`-closure. The order of the result is deterministic: by size, then
/// by the carrier positions of the members.
pub fn enumerate_ideals(m: &Algebra, bound: usize, filter: Option<IdealKind>) -> Result<Vec<IdealSet>> {
    let els = carrier(m)?;
    if els.len() > bound {
        return Err(Error::BoundExceeded { size: els.len(), bound });
    }
    let n = els.len();
    let below: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| j != i && m.leq(&els[j], &els[i])).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (below[i].len(), i));

    let mut downsets: Vec<Vec<bool>> = Vec::new();
    fn walk(k: usize, order: &[usize], below: &[Vec<usize>], chosen: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if k == order.len() {
            out.push(chosen.clone());
            return;
        }
        let i = order[k];
        walk(k + 1, order, below, chosen, out);
        if below[i].iter().all(|&j| chosen[j]) {
            chosen[i] = true;
            walk(k + 1, order, below, chosen, out);
            chosen[i] = false;
        }
    }
    walk(0, &order, &below, &mut vec![false; n], &mut downsets);

    let mut ideals: Vec<Vec<usize>> = Vec::new();
    for d in downsets {
        let set: HashSet<Element> = (0..n).filter(|&i| d[i]).map(|i| els[i].clone()).collect();
        if !ideal_on(m, &els, &set) {
            continue;
        }
        let keep = match filter {
            None | Some(IdealKind::Ideal) => true,
            Some(IdealKind::Normal) => normal_on(m, &els, &set)?,
            Some(IdealKind::Prime) => set.len() < n && prime_p1(m, &els, &set),
            Some(IdealKind::Maximal) => maximal_on(m, &els, &set),
        };
        if keep {
            ideals.push((0..n).filter(|&i| d[i]).collect());
        }
    }
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(ideals.into_iter().map(|ix| IdealSet { members: ix.into_iter().map(|i| els[i].clone()).collect() }).collect())
}

/// `M/I` for a normal ideal `I` of a finite algebra, under the congruence
/// `x ~ y` iff `x ⊙ y⁻ ∈ I` and `y ⊙ x⁻ ∈ I`.
pub fn quotient_algebra(m: &Algebra, ideal: &[Element]) -> Result<Algebra> {
    let els = carrier(m)?;
    let set = normalize(m, &els, ideal)?;
    if !ideal_on(m, &els, &set) {
        return Err(Error::NotAnIdeal(format!("{} elements given", set.len())));
    }
    if !normal_on(m, &els, &set)? {
        return Err(Error::NotNormal(format!("{} elements given", set.len())));
    }
    let related = |x: &Element, y: &Element| set.contains(&m.odot(x, &m.minus(y))) && set.contains(&m.odot(y, &m.minus(x)));
    let mut rep: HashMap<Element, Element> = HashMap::new();
    let mut classes: Vec<Element> = Vec::new();
    let mut sizes: HashMap<Element, usize> = HashMap::new();
    for x in &els {
        let r = classes.iter().find(|c| related(c, x)).cloned().unwrap_or_else(|| {
            classes.push(x.clone());
            x.clone()
        });
        *sizes.entry(r.clone()).or_default() += 1;
        rep.insert(x.clone(), r);
    }
    let class_of_zero = sizes[&rep[&m.zero()]];
    if class_of_zero != set.len() || classes.len() * set.len() != els.len() {
        return Err(Error::Inconsistent(format!(
            "|M| = {} but |M/I| · |I| = {} · {}",
            els.len(),
            classes.len(),
            set.len()
        )));
    }
    let mut members: Vec<Element> = els.iter().filter(|x| set.contains(*x)).cloned().collect();
    members.dedup();
    let q = Quotient { base: Box::new(m.clone()), ideal: members, rep, classes };
    let alg = Algebra::Quotient(q);
    check_projection(m, &alg, &els)?;
    Ok(alg)
}

/// The projection `M → M/I` preserves `⊕`, `⁻`, `˜`, `0` and `1`.
fn check_projection(m: &Algebra, quotient: &Algebra, els: &[Element]) -> Result<()> {
    let Algebra::Quotient(q) = quotient else { unreachable!() };
    let p = |x: &Element| q.rep[x].clone();
    let bad = |what: &str, x: &Element| Err(Error::Inconsistent(format!("projection does not preserve {what} at {x}")));
    if p(&m.zero()) != quotient.zero() || p(&m.one()) != quotient.one() {
        return bad("constants", &m.zero());
    }
    for x in els {
        if p(&m.minus(x)) != quotient.minus(&p(x)) {
            return bad("⁻", x);
        }
        if p(&m.sim(x)) != quotient.sim(&p(x)) {
            return bad("˜", x);
        }
        for y in els {
            if p(&m.oplus(x, y)) != quotient.oplus(&p(x), &p(y)) {
                return bad("⊕", x);
            }
        }
    }
    Ok(())
}

/// The polar `a⊥ = {x | x ∧ a = 0}`.
pub fn polar(m: &Algebra, a: &Element) -> Result<Vec<Element>> {
    m.require(a)?;
    let els = carrier(m)?;
    Ok(els.into_iter().filter(|x| m.meet(x, a) == m.zero()).collect())
}

/// Every polar `a⊥` is a normal ideal.
pub fn is_representable(m: &Algebra) -> Result<bool> {
    let els = carrier(m)?;
    for a in &els {
        let p = polar(m, a)?;
        if !is_normal(m, &p)? {
            return Ok(false);
        }
    }
    Ok(true)
}
