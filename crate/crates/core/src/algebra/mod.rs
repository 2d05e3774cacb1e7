//! Pseudo MV-algebras: finite tables, Γ(G,u), direct products, intervals
//! `[0,a]` and quotients by normal ideals.
//!
//! The product `⊙` follows the convention `x ⊙ y = (y⁻ ⊕ x⁻)˜`, which on
//! `Γ(G,u)` is `(x − u + y) ∨ 0`. With this convention the lattice
//! identities (A6) and (A7) hold on non-commutative carriers; the reversed
//! reading `(x⁻ ⊕ y⁻)˜` equals `y ⊙ x` here.

mod properties;
mod table;

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{self, Budget};
use crate::group::{GroupDescriptor, GroupElement, OrderKind, UnitalGroup};
use crate::rational::Rational;

pub use properties::NatMulMode;
pub use table::FiniteTable;

/// Finite algebras up to this size are compiled to lookup tables before
/// exhaustive checking.
pub(crate) const COMPILE_LIMIT: usize = 512;

/// Cap on the number of elements enumerated from a Γ box.
const ENUMERATION_CAP: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Position in a finite table.
    Index(usize),
    /// A point of `[0,u]` in a Γ algebra.
    Group(GroupElement),
    /// A point of a direct product.
    Tuple(Vec<Element>),
}

impl Element {
    pub fn group(&self) -> Option<&GroupElement> {
        match self {
            Element::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn tuple(&self) -> Option<&[Element]> {
        match self {
            Element::Tuple(t) => Some(t),
            _ => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Element::Index(i) => Some(*i),
            _ => None,
        }
    }

    fn shape(&self) -> &'static str {
        match self {
            Element::Index(_) => "table index",
            Element::Group(_) => "group element",
            Element::Tuple(_) => "tuple",
        }
    }

    fn idx(&self) -> usize {
        match self {
            Element::Index(i) => *i,
            other => panic!("expected a table index, found a {}", other.shape()),
        }
    }

    fn grp(&self) -> &GroupElement {
        match self {
            Element::Group(g) => g,
            other => panic!("expected a group element, found a {}", other.shape()),
        }
    }

    fn tup(&self) -> &[Element] {
        match self {
            Element::Tuple(t) => t,
            other => panic!("expected a tuple, found a {}", other.shape()),
        }
    }
}

impl From<GroupElement> for Element {
    fn from(g: GroupElement) -> Self {
        Element::Group(g)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "#{i}"),
            Element::Group(g) => write!(f, "{g}"),
            Element::Tuple(t) => {
                write!(f, "(")?;
                for (i, e) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Quotient `M/I` of a finite algebra by a normal ideal. Classes are named
/// by their least member in the base enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub(crate) base: Box<Algebra>,
    pub(crate) ideal: Vec<Element>,
    pub(crate) rep: HashMap<Element, Element>,
    pub(crate) classes: Vec<Element>,
}

impl Quotient {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn ideal(&self) -> &[Element] {
        &self.ideal
    }

    pub fn classes(&self) -> &[Element] {
        &self.classes
    }

    /// The class representative of a base element.
    pub fn project(&self, x: &Element) -> Option<&Element> {
        self.rep.get(x)
    }

    fn canon(&self, x: Element) -> Element {
        self.rep.get(&x).cloned().expect("quotient class map covers the finite base")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Table(FiniteTable),
    Gamma(UnitalGroup),
    Product(Vec<Algebra>),
    Interval { base: Box<Algebra>, top: Element },
    Quotient(Quotient),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicOp {
    Oplus,
    Odot,
    Minus,
    Sim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivedOp {
    Join,
    Meet,
    Arrow,
    Squig,
}

impl Algebra {
    /// Γ(G,u).
    pub fn gamma(group: UnitalGroup) -> Self {
        Algebra::Gamma(group)
    }

    pub fn gamma_from(descriptor: GroupDescriptor, unit: GroupElement) -> Result<Self> {
        Ok(Algebra::Gamma(UnitalGroup::new(descriptor, unit)?))
    }

    /// The `n+1`-element chain Γ(ℤ, n).
    pub fn mv_chain(n: u64) -> Self {
        let unit = GroupElement::scalar(Rational::from_integer(n as i64));
        Algebra::Gamma(
            UnitalGroup::new(GroupDescriptor::int(1, OrderKind::Lex), unit).expect("n ≥ 0 is a valid unit"),
        )
    }

    /// The Boolean algebra `2^dims`, as Γ(ℤ^dims, (1,…,1)).
    pub fn boolean(dims: usize) -> Self {
        let unit = GroupElement::from_ints(&vec![1; dims]);
        Algebra::Gamma(
            UnitalGroup::new(GroupDescriptor::int(dims, OrderKind::Product), unit).expect("all-ones unit is positive"),
        )
    }

    /// Γ(ℚ, 1).
    pub fn rational_chain() -> Self {
        Algebra::Gamma(
            UnitalGroup::new(GroupDescriptor::rat(1, OrderKind::Lex), GroupElement::from_ints(&[1]))
                .expect("1 is positive"),
        )
    }

    pub fn product(factors: Vec<Algebra>) -> Self {
        Algebra::Product(factors)
    }

    /// `[0,a]` with `x ⊕ₐ y = (x⊕y) ∧ a`, `x^{-a} = a ⊙ x⁻`, `x^{~a} = x˜ ⊙ a`.
    pub fn interval(base: Algebra, top: Element) -> Result<Self> {
        base.require(&top)?;
        Ok(Algebra::Interval { base: Box::new(base), top })
    }

    pub fn table(table: FiniteTable) -> Self {
        Algebra::Table(table)
    }

    pub fn zero(&self) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.zero()),
            Algebra::Gamma(g) => Element::Group(g.descriptor().zero()),
            Algebra::Product(fs) => Element::Tuple(fs.iter().map(Algebra::zero).collect()),
            Algebra::Interval { base, .. } => base.zero(),
            Algebra::Quotient(q) => q.canon(q.base.zero()),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.one()),
            Algebra::Gamma(g) => Element::Group(g.unit().clone()),
            Algebra::Product(fs) => Element::Tuple(fs.iter().map(Algebra::one).collect()),
            Algebra::Interval { top, .. } => top.clone(),
            Algebra::Quotient(q) => q.canon(q.base.one()),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.zero() == self.one()
    }

    /// Membership test; elements of the wrong shape are simply not members.
    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Algebra::Table(t), Element::Index(i)) => *i < t.len(),
            (Algebra::Gamma(g), Element::Group(e)) => {
                let d = g.descriptor();
                d.contains(e) && d.leq_raw(&d.zero(), e) && d.leq_raw(e, g.unit())
            }
            (Algebra::Product(fs), Element::Tuple(t)) => {
                fs.len() == t.len() && fs.iter().zip(t).all(|(f, e)| f.contains(e))
            }
            (Algebra::Interval { base, top }, e) => base.contains(e) && base.leq(e, top),
            (Algebra::Quotient(q), e) => q.rep.get(e) == Some(e),
            _ => false,
        }
    }

    pub(crate) fn require(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInAlgebra { element: x.to_string(), reason: format!("not a member of {self}") })
        }
    }

    // Unchecked operations. Arguments must be members of `self`; elements of
    // the wrong shape panic. `eval_basic` and `derived` are the checked entry
    // points.

    pub fn oplus(&self, x: &Element, y: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.oplus_idx(x.idx(), y.idx())),
            Algebra::Gamma(g) => {
                let d = g.descriptor();
                Element::Group(d.meet_raw(&d.add_raw(x.grp(), y.grp()), g.unit()))
            }
            Algebra::Product(fs) => Element::Tuple(
                fs.iter().zip(x.tup()).zip(y.tup()).map(|((f, a), b)| f.oplus(a, b)).collect(),
            ),
            Algebra::Interval { base, top } => base.meet(&base.oplus(x, y), top),
            Algebra::Quotient(q) => q.canon(q.base.oplus(x, y)),
        }
    }

    pub fn minus(&self, x: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.minus_idx(x.idx())),
            Algebra::Gamma(g) => {
                let d = g.descriptor();
                Element::Group(d.add_raw(g.unit(), &d.neg_raw(x.grp())))
            }
            Algebra::Product(fs) => Element::Tuple(fs.iter().zip(x.tup()).map(|(f, a)| f.minus(a)).collect()),
            Algebra::Interval { base, top } => base.odot(top, &base.minus(x)),
            Algebra::Quotient(q) => q.canon(q.base.minus(x)),
        }
    }

    pub fn sim(&self, x: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.sim_idx(x.idx())),
            Algebra::Gamma(g) => {
                let d = g.descriptor();
                Element::Group(d.add_raw(&d.neg_raw(x.grp()), g.unit()))
            }
            Algebra::Product(fs) => Element::Tuple(fs.iter().zip(x.tup()).map(|(f, a)| f.sim(a)).collect()),
            Algebra::Interval { base, top } => base.odot(&base.sim(x), top),
            Algebra::Quotient(q) => q.canon(q.base.sim(x)),
        }
    }

    pub fn odot(&self, x: &Element, y: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.odot_idx(x.idx(), y.idx())),
            Algebra::Gamma(g) => {
                let d = g.descriptor();
                let s = d.add_raw(&d.sub_raw(x.grp(), g.unit()), y.grp());
                Element::Group(d.join_raw(&s, &d.zero()))
            }
            Algebra::Product(fs) => Element::Tuple(
                fs.iter().zip(x.tup()).zip(y.tup()).map(|((f, a), b)| f.odot(a, b)).collect(),
            ),
            Algebra::Quotient(q) => q.canon(q.base.odot(x, y)),
            Algebra::Interval { .. } => self.sim(&self.oplus(&self.minus(y), &self.minus(x))),
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.join_idx(x.idx(), y.idx())),
            Algebra::Gamma(g) => Element::Group(g.descriptor().join_raw(x.grp(), y.grp())),
            Algebra::Product(fs) => Element::Tuple(
                fs.iter().zip(x.tup()).zip(y.tup()).map(|((f, a), b)| f.join(a, b)).collect(),
            ),
            Algebra::Interval { base, .. } => base.join(x, y),
            Algebra::Quotient(q) => q.canon(q.base.join(x, y)),
        }
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        match self {
            Algebra::Table(t) => Element::Index(t.meet_idx(x.idx(), y.idx())),
            Algebra::Gamma(g) => Element::Group(g.descriptor().meet_raw(x.grp(), y.grp())),
            Algebra::Product(fs) => Element::Tuple(
                fs.iter().zip(x.tup()).zip(y.tup()).map(|((f, a), b)| f.meet(a, b)).collect(),
            ),
            Algebra::Interval { base, .. } => base.meet(x, y),
            Algebra::Quotient(q) => q.canon(q.base.meet(x, y)),
        }
    }

    pub fn leq(&self, x: &Element, y: &Element) -> bool {
        match self {
            Algebra::Table(t) => t.leq_idx(x.idx(), y.idx()),
            Algebra::Gamma(g) => g.descriptor().leq_raw(x.grp(), y.grp()),
            Algebra::Product(fs) => fs.iter().zip(x.tup()).zip(y.tup()).all(|((f, a), b)| f.leq(a, b)),
            Algebra::Interval { base, .. } => base.leq(x, y),
            Algebra::Quotient(_) => self.oplus(&self.minus(x), y) == self.one(),
        }
    }

    /// `x → y = x⁻ ⊕ y`.
    pub fn arrow(&self, x: &Element, y: &Element) -> Element {
        self.oplus(&self.minus(x), y)
    }

    /// `x ⇝ y = y ⊕ x˜`.
    pub fn squig(&self, x: &Element, y: &Element) -> Element {
        self.oplus(y, &self.sim(x))
    }

    /// Checked evaluation of a basic operation. Unary operations ignore `y`.
    pub fn eval_basic(&self, op: BasicOp, x: &Element, y: Option<&Element>) -> Result<Element> {
        self.require(x)?;
        let second = || -> Result<&Element> {
            let y = y.ok_or_else(|| Error::Usage(format!("{op:?} needs two arguments")))?;
            self.require(y)?;
            Ok(y)
        };
        Ok(match op {
            BasicOp::Oplus => self.oplus(x, second()?),
            BasicOp::Odot => self.odot(x, second()?),
            BasicOp::Minus => self.minus(x),
            BasicOp::Sim => self.sim(x),
        })
    }

    /// Checked derived operations, computed from their defining identities:
    /// `x ∨ y = x ⊕ (x˜ ⊙ y)`, `x ∧ y = x ⊙ (x⁻ ⊕ y)`, `x → y = x⁻ ⊕ y`,
    /// `x ⇝ y = y ⊕ x˜`.
    pub fn derived(&self, op: DerivedOp, x: &Element, y: &Element) -> Result<Element> {
        self.require(x)?;
        self.require(y)?;
        Ok(match op {
            DerivedOp::Join => self.oplus(x, &self.odot(&self.sim(x), y)),
            DerivedOp::Meet => self.odot(x, &self.oplus(&self.minus(x), y)),
            DerivedOp::Arrow => self.arrow(x, y),
            DerivedOp::Squig => self.squig(x, y),
        })
    }

    /// Number of elements, when the carrier is finite and enumerable.
    pub fn size(&self) -> Option<usize> {
        match self {
            Algebra::Table(t) => Some(t.len()),
            Algebra::Quotient(q) => Some(q.classes.len()),
            Algebra::Product(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.size()?)),
            _ => self.elements().map(|e| e.len()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All elements in a fixed enumeration order, or `None` for carriers that
    /// are infinite (or too large to list).
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            Algebra::Table(t) => Some((0..t.len()).map(Element::Index).collect()),
            Algebra::Gamma(g) => gamma_elements(g).map(|v| v.into_iter().map(Element::Group).collect()),
            Algebra::Product(fs) => {
                let lists: Vec<Vec<Element>> = fs.iter().map(Algebra::elements).collect::<Option<_>>()?;
                let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()))?;
                if total > ENUMERATION_CAP {
                    return None;
                }
                let mut out = vec![Vec::new()];
                for l in &lists {
                    let mut next = Vec::with_capacity(out.len() * l.len());
                    for prefix in &out {
                        for e in l {
                            let mut t = prefix.clone();
                            t.push(e.clone());
                            next.push(t);
                        }
                    }
                    out = next;
                }
                Some(out.into_iter().map(Element::Tuple).collect())
            }
            Algebra::Interval { base, top } => {
                Some(base.elements()?.into_iter().filter(|e| base.leq(e, top)).collect())
            }
            Algebra::Quotient(q) => Some(q.classes.clone()),
        }
    }

    /// Deterministic sample of an infinite carrier; finite carriers return
    /// their first `count` elements. `0` and `1` always come first.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Element> {
        if let Some(all) = self.elements() {
            return all.into_iter().take(count).collect();
        }
        let mut out = match self {
            Algebra::Gamma(g) => grid::interval_grid(g.descriptor(), g.unit(), count, seed)
                .into_iter()
                .map(Element::Group)
                .collect(),
            Algebra::Product(fs) => sample_product(fs, count, seed),
            Algebra::Interval { base, top } => {
                let mut v = vec![base.zero(), top.clone()];
                v.extend(base.sample(count * 2, seed).iter().map(|x| base.meet(x, top)));
                v
            }
            Algebra::Table(_) | Algebra::Quotient(_) => unreachable!("finite forms always enumerate"),
        };
        dedup_in_order(&mut out);
        out.truncate(count);
        out
    }

    /// Points to range over: every element when finite (up to the budget's
    /// exhaustive limit), otherwise a deterministic sample.
    pub fn domain(&self, budget: &Budget) -> Domain {
        if let Some(n) = self.size() {
            if n <= budget.exhaustive_limit {
                if let Some(points) = self.elements() {
                    return Domain { points, exhaustive: true };
                }
            }
        }
        Domain { points: self.sample(budget.points, budget.seed), exhaustive: false }
    }

    /// A lookup-table copy of a finite algebra together with the element
    /// behind each index.
    pub fn compile(&self) -> Option<(FiniteTable, Vec<Element>)> {
        if let Algebra::Table(t) = self {
            return Some((t.clone(), (0..t.len()).map(Element::Index).collect()));
        }
        let els = self.elements()?;
        if els.len() > COMPILE_LIMIT {
            return None;
        }
        let index: HashMap<&Element, usize> = els.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let at = |e: &Element| index[e];
        let n = els.len();
        let oplus = (0..n)
            .map(|i| (0..n).map(|j| at(&self.oplus(&els[i], &els[j]))).collect())
            .collect();
        let minus = els.iter().map(|e| at(&self.minus(e))).collect();
        let sim = els.iter().map(|e| at(&self.sim(e))).collect();
        let labels = els.iter().map(Element::to_string).collect();
        let table = FiniteTable::new(labels, oplus, minus, sim, at(&self.zero()), at(&self.one())).ok()?;
        Some((table, els))
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        match self {
            Algebra::Table(t) => format!("table({} elements)", t.len()),
            Algebra::Gamma(g) => format!("Γ{g}"),
            Algebra::Product(fs) => fs.iter().map(Algebra::describe).collect::<Vec<_>>().join(" × "),
            Algebra::Interval { base, top } => format!("[0,{top}] in {}", base.describe()),
            Algebra::Quotient(q) => format!("{} / ideal of {} elements", q.base.describe(), q.ideal.len()),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// The points a checker ranges over.
#[derive(Debug, Clone)]
pub struct Domain {
    pub points: Vec<Element>,
    /// Whether `points` is the whole carrier.
    pub exhaustive: bool,
}

impl Domain {
    /// Adds points at the front, keeping the order and dropping duplicates.
    pub fn with_front(mut self, extra: Vec<Element>) -> Self {
        let mut v = extra;
        v.append(&mut self.points);
        dedup_in_order(&mut v);
        self.points = v;
        self
    }
}

fn dedup_in_order(v: &mut Vec<Element>) {
    let mut seen = HashSet::new();
    v.retain(|e| seen.insert(e.clone()));
}

fn sample_product(fs: &[Algebra], count: usize, seed: u64) -> Vec<Element> {
    let lists: Vec<Vec<Element>> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| f.sample(count, seed.wrapping_add(i as u64)))
        .collect();
    let mut out = vec![
        Element::Tuple(fs.iter().map(Algebra::zero).collect()),
        Element::Tuple(fs.iter().map(Algebra::one).collect()),
    ];
    // walk each factor's sample once so every sampled coordinate occurs
    let longest = lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for k in 0..longest.min(count) {
        out.push(Element::Tuple(
            lists.iter().map(|l| l[(k + rng.gen_range(0..l.len())) % l.len()].clone()).collect(),
        ));
    }
    let mut attempts = 0;
    while out.len() < count * 2 && attempts < count * 8 {
        attempts += 1;
        out.push(Element::Tuple(lists.iter().map(|l| l[rng.gen_range(0..l.len())].clone()).collect()));
    }
    out
}

fn gamma_elements(g: &UnitalGroup) -> Option<Vec<GroupElement>> {
    let d = g.descriptor();
    let u = g.unit();
    if u.is_zero() {
        return Some(vec![d.zero()]);
    }
    match d {
        GroupDescriptor::IntVector { dims, order } if *order == OrderKind::Product || *dims <= 1 => {
            let bounds: Vec<i64> = u.coords().iter().map(|c| c.numer().try_into().ok()).collect::<Option<_>>()?;
            let total = bounds.iter().try_fold(1usize, |acc, &b| acc.checked_mul(usize::try_from(b).ok()? + 1))?;
            if total > ENUMERATION_CAP {
                return None;
            }
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0i64; bounds.len()];
            for _ in 0..total {
                out.push(GroupElement::from_ints(&idx));
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] <= bounds[k] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
            Some(out)
        }
        GroupDescriptor::LexPair { h, g: inner } if inner.dims() == 0 => {
            let uh = GroupElement::new(u.coords()[..h.dims()].to_vec());
            let sub = UnitalGroup::new((**h).clone(), uh).ok()?;
            Some(gamma_elements(&sub)?.into_iter().map(|e| GroupElement::new(e.coords().to_vec())).collect())
        }
        _ => None,
    }
}
