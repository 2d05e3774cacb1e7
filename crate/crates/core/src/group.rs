//! Unital lattice-ordered group carriers with exact coordinates.
//!
//! Four carrier families are supported: integer and rational vectors under
//! the product or lexicographic order, the non-abelian cocycle group on ℚ⁴
//! with `(a,b,c,d)+(x,y,z,w) = (a+x, b+y, c+z, d+w+bz)`, and lexicographic
//! pairs `H ×lex G` over a linearly ordered `H`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Product,
    Lex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    IntVector { dims: usize, order: OrderKind },
    RatVector { dims: usize, order: OrderKind },
    CocycleQ4,
    LexPair { h: Box<GroupDescriptor>, g: Box<GroupDescriptor> },
}

/// Coordinates of a group element. Lexicographic pairs store the `H`
/// coordinates followed by the `G` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<Rational>);

impl GroupElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        GroupElement(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GroupElement(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn scalar(r: Rational) -> Self {
        GroupElement(vec![r])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    fn split(&self, at: usize) -> (GroupElement, GroupElement) {
        (GroupElement(self.0[..at].to_vec()), GroupElement(self.0[at..].to_vec()))
    }

    fn join_parts(h: GroupElement, g: GroupElement) -> GroupElement {
        let mut v = h.0;
        v.extend(g.0);
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn cmp_lex(a: &[Rational], b: &[Rational]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_product(a: &[Rational], b: &[Rational]) -> Option<Ordering> {
    let (mut le, mut ge) = (true, true);
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

impl GroupDescriptor {
    pub fn int(dims: usize, order: OrderKind) -> Self {
        GroupDescriptor::IntVector { dims, order }
    }

    pub fn rat(dims: usize, order: OrderKind) -> Self {
        GroupDescriptor::RatVector { dims, order }
    }

    /// `h ×lex g`; `h` must be linearly ordered.
    pub fn lex_pair(h: GroupDescriptor, g: GroupDescriptor) -> Result<Self> {
        if !h.is_linear() {
            return Err(Error::InvalidDescriptor(format!(
                "lexicographic pair needs a linearly ordered first factor, got {h}"
            )));
        }
        Ok(GroupDescriptor::LexPair { h: Box::new(h), g: Box::new(g) })
    }

    pub fn dims(&self) -> usize {
        match self {
            GroupDescriptor::IntVector { dims, .. } | GroupDescriptor::RatVector { dims, .. } => *dims,
            GroupDescriptor::CocycleQ4 => 4,
            GroupDescriptor::LexPair { h, g } => h.dims() + g.dims(),
        }
    }

    /// Whether the order is total.
    pub fn is_linear(&self) -> bool {
        match self {
            GroupDescriptor::IntVector { dims, order } | GroupDescriptor::RatVector { dims, order } => {
                *dims <= 1 || *order == OrderKind::Lex
            }
            GroupDescriptor::CocycleQ4 => true,
            GroupDescriptor::LexPair { h, g } => h.is_linear() && g.is_linear(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDescriptor::CocycleQ4 => false,
            GroupDescriptor::LexPair { h, g } => h.is_abelian() && g.is_abelian(),
            _ => true,
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if x.dims() != self.dims() {
            return false;
        }
        match self {
            GroupDescriptor::IntVector { .. } => x.0.iter().all(Rational::is_integer),
            GroupDescriptor::LexPair { h, g } => {
                let (xh, xg) = x.split(h.dims());
                h.contains(&xh) && g.contains(&xg)
            }
            _ => true,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{x} is not an element of {self}")))
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![Rational::zero(); self.dims()])
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_raw(x, y))
    }

    pub(crate) fn add_raw(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match self {
            GroupDescriptor::CocycleQ4 => {
                let (a, b, c, d) = (&x.0[0], &x.0[1], &x.0[2], &x.0[3]);
                let (p, q, s, t) = (&y.0[0], &y.0[1], &y.0[2], &y.0[3]);
                GroupElement(vec![a + p, b + q, c + s, &(d + t) + &(b * s)])
            }
            GroupDescriptor::LexPair { h, g } => {
                let k = h.dims();
                let (xh, xg) = x.split(k);
                let (yh, yg) = y.split(k);
                GroupElement::join_parts(h.add_raw(&xh, &yh), g.add_raw(&xg, &yg))
            }
            _ => GroupElement(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect()),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.neg_raw(x))
    }

    pub(crate) fn neg_raw(&self, x: &GroupElement) -> GroupElement {
        match self {
            GroupDescriptor::CocycleQ4 => {
                let (a, b, c, d) = (&x.0[0], &x.0[1], &x.0[2], &x.0[3]);
                GroupElement(vec![-a, -b, -c, &(-d) + &(b * c)])
            }
            GroupDescriptor::LexPair { h, g } => {
                let (xh, xg) = x.split(h.dims());
                GroupElement::join_parts(h.neg_raw(&xh), g.neg_raw(&xg))
            }
            _ => GroupElement(x.0.iter().map(|a| -a).collect()),
        }
    }

    /// `x - y`, i.e. `x + (-y)`.
    pub(crate) fn sub_raw(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add_raw(x, &self.neg_raw(y))
    }

    /// Order comparison; `None` means incomparable.
    pub fn compare(&self, x: &GroupElement, y: &GroupElement) -> Result<Option<Ordering>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.compare_raw(x, y))
    }

    pub(crate) fn compare_raw(&self, x: &GroupElement, y: &GroupElement) -> Option<Ordering> {
        match self {
            GroupDescriptor::IntVector { order: OrderKind::Product, .. }
            | GroupDescriptor::RatVector { order: OrderKind::Product, .. } => cmp_product(&x.0, &y.0),
            GroupDescriptor::IntVector { .. } | GroupDescriptor::RatVector { .. } | GroupDescriptor::CocycleQ4 => {
                Some(cmp_lex(&x.0, &y.0))
            }
            GroupDescriptor::LexPair { h, g } => {
                let k = h.dims();
                match cmp_lex_prefix(h, &x.0[..k], &y.0[..k]) {
                    Ordering::Equal => {
                        g.compare_raw(&GroupElement(x.0[k..].to_vec()), &GroupElement(y.0[k..].to_vec()))
                    }
                    o => Some(o),
                }
            }
        }
    }

    pub(crate) fn leq_raw(&self, x: &GroupElement, y: &GroupElement) -> bool {
        matches!(self.compare_raw(x, y), Some(Ordering::Less | Ordering::Equal))
    }

    pub fn meet_join(&self, x: &GroupElement, y: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        self.check(x)?;
        self.check(y)?;
        Ok((self.meet_raw(x, y), self.join_raw(x, y)))
    }

    pub(crate) fn meet_raw(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.lattice_raw(x, y, true)
    }

    pub(crate) fn join_raw(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.lattice_raw(x, y, false)
    }

    fn lattice_raw(&self, x: &GroupElement, y: &GroupElement, meet: bool) -> GroupElement {
        let pick = |o: Ordering| -> GroupElement {
            let x_first = (o != Ordering::Greater) == meet;
            if x_first {
                x.clone()
            } else {
                y.clone()
            }
        };
        match self {
            GroupDescriptor::IntVector { order: OrderKind::Product, .. }
            | GroupDescriptor::RatVector { order: OrderKind::Product, .. } => GroupElement(
                x.0.iter()
                    .zip(&y.0)
                    .map(|(a, b)| if (a <= b) == meet { a.clone() } else { b.clone() })
                    .collect(),
            ),
            GroupDescriptor::IntVector { .. } | GroupDescriptor::RatVector { .. } | GroupDescriptor::CocycleQ4 => {
                pick(cmp_lex(&x.0, &y.0))
            }
            GroupDescriptor::LexPair { h, g } => {
                let k = h.dims();
                match cmp_lex_prefix(h, &x.0[..k], &y.0[..k]) {
                    Ordering::Equal => {
                        let (xh, xg) = x.split(k);
                        let (_, yg) = y.split(k);
                        GroupElement::join_parts(xh, g.lattice_raw(&xg, &yg, meet))
                    }
                    o => pick(o),
                }
            }
        }
    }

    /// `n·x`, by iterated addition.
    pub fn nmul(&self, n: u64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.nmul_raw(n, x))
    }

    pub(crate) fn nmul_raw(&self, n: u64, x: &GroupElement) -> GroupElement {
        let mut acc = self.zero();
        for _ in 0..n {
            acc = self.add_raw(&acc, x);
        }
        acc
    }

    /// The element `h` with `h + h = x`, if the carrier has one.
    pub fn halve(&self, x: &GroupElement) -> Result<Option<GroupElement>> {
        self.check(x)?;
        Ok(self.divide_raw(x, 2))
    }

    pub(crate) fn halve_raw(&self, x: &GroupElement) -> Option<GroupElement> {
        self.divide_raw(x, 2)
    }

    /// The element `y` with `n·y = x`, if it exists. Every supported carrier
    /// has unique extraction of roots, so the answer is unique.
    pub fn divide(&self, x: &GroupElement, n: u64) -> Result<Option<GroupElement>> {
        self.check(x)?;
        if n == 0 {
            return Err(Error::DescriptorMismatch("division by zero".into()));
        }
        Ok(self.divide_raw(x, n))
    }

    pub(crate) fn divide_raw(&self, x: &GroupElement, n: u64) -> Option<GroupElement> {
        let nq = Rational::from_integer(n as i64);
        match self {
            GroupDescriptor::IntVector { .. } => {
                let mut out = Vec::with_capacity(x.dims());
                for c in &x.0 {
                    let d = c / &nq;
                    if !d.is_integer() {
                        return None;
                    }
                    out.push(d);
                }
                Some(GroupElement(out))
            }
            GroupDescriptor::RatVector { .. } => Some(GroupElement(x.0.iter().map(|c| c / &nq).collect())),
            GroupDescriptor::CocycleQ4 => {
                let (a, b, c, d) = (&x.0[0], &x.0[1], &x.0[2], &x.0[3]);
                // n·(p,q,s,t) = (np, nq, ns, nt + qs·n(n-1)/2)
                let n2 = &nq * &nq;
                let two = Rational::from_integer(2);
                let correction = &(&(b * c) * &(&nq - &Rational::one())) / &(&two * &n2);
                Some(GroupElement(vec![a / &nq, b / &nq, c / &nq, &(d / &nq) - &correction]))
            }
            GroupDescriptor::LexPair { h, g } => {
                let (xh, xg) = x.split(h.dims());
                Some(GroupElement::join_parts(h.divide_raw(&xh, n)?, g.divide_raw(&xg, n)?))
            }
        }
    }

    pub fn is_two_divisible(&self) -> bool {
        match self {
            GroupDescriptor::IntVector { dims, .. } => *dims == 0,
            GroupDescriptor::RatVector { .. } | GroupDescriptor::CocycleQ4 => true,
            GroupDescriptor::LexPair { h, g } => h.is_two_divisible() && g.is_two_divisible(),
        }
    }

    /// Membership in the commutative center, decided in closed form.
    pub fn is_central(&self, x: &GroupElement) -> Result<Verdict> {
        self.check(x)?;
        Ok(Verdict::proved(self.is_central_raw(x)))
    }

    fn is_central_raw(&self, x: &GroupElement) -> bool {
        match self {
            // b·z = y·c for all y, z forces b = c = 0
            GroupDescriptor::CocycleQ4 => x.0[1].is_zero() && x.0[2].is_zero(),
            GroupDescriptor::LexPair { h, g } => {
                let (xh, xg) = x.split(h.dims());
                h.is_central_raw(&xh) && g.is_central_raw(&xg)
            }
            _ => true,
        }
    }

    /// Commutator test of `x` against every element of `sample`.
    pub fn commutes_with_all(&self, x: &GroupElement, sample: &[GroupElement]) -> Result<Verdict> {
        self.check(x)?;
        for h in sample {
            self.check(h)?;
            if self.add_raw(x, h) != self.add_raw(h, x) {
                return Ok(Verdict::sampled(false));
            }
        }
        Ok(Verdict::sampled(true))
    }

    /// `(g ∨ 0, (-g) ∨ 0)`.
    pub fn pos_neg_parts(&self, x: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        self.check(x)?;
        let zero = self.zero();
        Ok((self.join_raw(x, &zero), self.join_raw(&self.neg_raw(x), &zero)))
    }

    /// Whether `u` is a strong unit, decided from the descriptor.
    pub fn is_strong_unit(&self, u: &GroupElement) -> Result<bool> {
        self.check(u)?;
        Ok(self.is_strong_unit_raw(u))
    }

    fn is_strong_unit_raw(&self, u: &GroupElement) -> bool {
        match self {
            _ if self.dims() == 0 => true,
            GroupDescriptor::IntVector { order: OrderKind::Product, dims }
            | GroupDescriptor::RatVector { order: OrderKind::Product, dims }
                if *dims > 1 =>
            {
                u.0.iter().all(Rational::is_positive)
            }
            GroupDescriptor::LexPair { h, .. } => {
                let (uh, _) = u.split(h.dims());
                h.dims() > 0 && h.is_strong_unit_raw(&uh)
            }
            // linearly ordered by coordinates: the leading coordinate decides
            _ => u.0[0].is_positive(),
        }
    }
}

fn cmp_lex_prefix(h: &GroupDescriptor, a: &[Rational], b: &[Rational]) -> Ordering {
    h.compare_raw(&GroupElement(a.to_vec()), &GroupElement(b.to_vec()))
        .expect("first factor of a lexicographic pair is linearly ordered")
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = |o: &OrderKind| match o {
            OrderKind::Product => "",
            OrderKind::Lex => " lex",
        };
        match self {
            GroupDescriptor::IntVector { dims: 1, .. } => write!(f, "ℤ"),
            GroupDescriptor::RatVector { dims: 1, .. } => write!(f, "ℚ"),
            GroupDescriptor::IntVector { dims, order } => write!(f, "ℤ^{dims}{}", ord(order)),
            GroupDescriptor::RatVector { dims, order } => write!(f, "ℚ^{dims}{}", ord(order)),
            GroupDescriptor::CocycleQ4 => write!(f, "ℚ⁴ cocycle"),
            GroupDescriptor::LexPair { h, g } => write!(f, "({h} lex {g})"),
        }
    }
}

/// A group with a designated strong unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitalGroup {
    descriptor: GroupDescriptor,
    unit: GroupElement,
}

impl UnitalGroup {
    /// Requires `unit ≥ 0`. A zero unit is accepted and yields the
    /// degenerate algebra; strength of the unit is reported separately by
    /// [`UnitalGroup::is_strong_unit`].
    pub fn new(descriptor: GroupDescriptor, unit: GroupElement) -> Result<Self> {
        descriptor
            .check(&unit)
            .map_err(|e| Error::InvalidUnit(e.to_string()))?;
        if !descriptor.leq_raw(&descriptor.zero(), &unit) {
            return Err(Error::InvalidUnit(format!("unit {unit} is not ≥ 0 in {descriptor}")));
        }
        Ok(UnitalGroup { descriptor, unit })
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn is_strong_unit(&self) -> bool {
        self.descriptor.is_strong_unit_raw(&self.unit)
    }

    /// Sampled strong-unit check: every sampled `g` is below some `2^k·u`.
    pub fn check_strong_unit_on(&self, sample: &[GroupElement]) -> Result<Verdict> {
        let d = &self.descriptor;
        for g in sample {
            d.check(g)?;
            let mut bound = self.unit.clone();
            let mut ok = false;
            for _ in 0..64 {
                if d.leq_raw(g, &bound) {
                    ok = true;
                    break;
                }
                bound = d.add_raw(&bound, &bound);
            }
            if !ok {
                return Ok(Verdict::sampled(false));
            }
        }
        Ok(Verdict::sampled(true))
    }
}

impl fmt::Display for UnitalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.descriptor, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn g4(a: Rational, b: Rational, c: Rational, d: Rational) -> GroupElement {
        GroupElement::new(vec![a, b, c, d])
    }

    fn i4(a: i64, b: i64, c: i64, d: i64) -> GroupElement {
        GroupElement::from_ints(&[a, b, c, d])
    }

    const COC: GroupDescriptor = GroupDescriptor::CocycleQ4;

    #[test]
    fn cocycle_addition_is_not_commutative() {
        assert_eq!(COC.add(&i4(0, 1, 0, 0), &i4(0, 0, 1, 0)).unwrap(), i4(0, 1, 1, 1));
        assert_eq!(COC.add(&i4(0, 0, 1, 0), &i4(0, 1, 0, 0)).unwrap(), i4(0, 1, 1, 0));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(COC.neg(&i4(0, 1, 1, 1)).unwrap(), i4(0, -1, -1, 0));
        assert_eq!(COC.neg(&i4(0, 0, 0, 0)).unwrap(), i4(0, 0, 0, 0));
        let z2 = GroupDescriptor::int(2, OrderKind::Product);
        assert_eq!(z2.neg(&GroupElement::from_ints(&[3, -2])).unwrap(), GroupElement::from_ints(&[-3, 2]));
    }

    #[test]
    fn rational_addition() {
        let qd = GroupDescriptor::rat(1, OrderKind::Lex);
        let s = qd.add(&GroupElement::scalar(q(1, 2)), &GroupElement::scalar(q(1, 3))).unwrap();
        assert_eq!(s, GroupElement::scalar(q(5, 6)));
    }

    #[test]
    fn comparisons() {
        let half = g4(q(1, 2), q(1, 1), q(0, 1), q(0, 1));
        assert_eq!(COC.compare(&half, &i4(1, 0, 0, 0)).unwrap(), Some(Ordering::Less));
        let z2 = GroupDescriptor::int(2, OrderKind::Product);
        let (a, b) = (GroupElement::from_ints(&[1, 0]), GroupElement::from_ints(&[0, 1]));
        assert_eq!(z2.compare(&a, &b).unwrap(), None);
        let qq = GroupDescriptor::lex_pair(GroupDescriptor::rat(1, OrderKind::Lex), GroupDescriptor::rat(1, OrderKind::Lex))
            .unwrap();
        assert_eq!(
            qq.compare(&GroupElement::from_ints(&[0, 5]), &GroupElement::from_ints(&[0, 0])).unwrap(),
            Some(Ordering::Greater)
        );
    }

    #[test]
    fn meets_and_joins() {
        let q2 = GroupDescriptor::rat(2, OrderKind::Product);
        let (m, _) = q2.meet_join(&GroupElement::from_ints(&[1, 0]), &GroupElement::from_ints(&[0, 1])).unwrap();
        assert_eq!(m, GroupElement::from_ints(&[0, 0]));
        let x = g4(q(1, 2), q(9, 1), q(9, 1), q(9, 1));
        let (_, j) = COC.meet_join(&x, &i4(1, 0, 0, 0)).unwrap();
        assert_eq!(j, i4(1, 0, 0, 0));
        let z = GroupDescriptor::int(1, OrderKind::Lex);
        let (m, _) = z.meet_join(&GroupElement::from_ints(&[3]), &GroupElement::from_ints(&[5])).unwrap();
        assert_eq!(m, GroupElement::from_ints(&[3]));
    }

    #[test]
    fn multiples() {
        let x = g4(q(0, 1), q(1, 2), q(1, 2), q(3, 8));
        assert_eq!(COC.nmul(2, &x).unwrap(), i4(0, 1, 1, 1));
        let z = GroupDescriptor::int(1, OrderKind::Lex);
        assert_eq!(z.nmul(3, &GroupElement::from_ints(&[2])).unwrap(), GroupElement::from_ints(&[6]));
        assert_eq!(COC.nmul(0, &x).unwrap(), COC.zero());
    }

    #[test]
    fn halving() {
        assert_eq!(COC.halve(&i4(1, 0, 0, 0)).unwrap(), Some(g4(q(1, 2), q(0, 1), q(0, 1), q(0, 1))));
        assert_eq!(COC.halve(&i4(0, 1, 1, 1)).unwrap(), Some(g4(q(0, 1), q(1, 2), q(1, 2), q(3, 8))));
        let z = GroupDescriptor::int(1, OrderKind::Lex);
        assert_eq!(z.halve(&GroupElement::from_ints(&[1])).unwrap(), None);
        assert_eq!(z.halve(&GroupElement::from_ints(&[4])).unwrap(), Some(GroupElement::from_ints(&[2])));
    }

    #[test]
    fn cocycle_division_by_three() {
        let x = g4(q(1, 1), q(2, 1), q(-1, 3), q(5, 7));
        let y = COC.divide(&x, 3).unwrap().unwrap();
        assert_eq!(COC.nmul(3, &y).unwrap(), x);
    }

    #[test]
    fn two_divisibility() {
        assert!(GroupDescriptor::rat(1, OrderKind::Lex).is_two_divisible());
        assert!(!GroupDescriptor::int(1, OrderKind::Lex).is_two_divisible());
        assert!(COC.is_two_divisible());
    }

    #[test]
    fn centrality() {
        let half_u = g4(q(1, 2), q(0, 1), q(0, 1), q(0, 1));
        assert_eq!(COC.is_central(&half_u).unwrap(), Verdict::proved(true));
        assert_eq!(COC.is_central(&i4(0, 1, 0, 0)).unwrap(), Verdict::proved(false));
        let q3 = GroupDescriptor::rat(3, OrderKind::Product);
        assert!(q3.is_central(&GroupElement::from_ints(&[1, -4, 2])).unwrap().holds);
        let sample = [i4(0, 0, 1, 0)];
        assert_eq!(COC.commutes_with_all(&i4(0, 1, 0, 0), &sample).unwrap(), Verdict::sampled(false));
    }

    #[test]
    fn positive_and_negative_parts() {
        let z = GroupDescriptor::int(1, OrderKind::Lex);
        let (p, n) = z.pos_neg_parts(&GroupElement::from_ints(&[-3])).unwrap();
        assert_eq!((p, n), (GroupElement::from_ints(&[0]), GroupElement::from_ints(&[3])));
        let q2 = GroupDescriptor::rat(2, OrderKind::Product);
        let (p, n) = q2.pos_neg_parts(&GroupElement::from_ints(&[1, -1])).unwrap();
        assert_eq!((p, n), (GroupElement::from_ints(&[1, 0]), GroupElement::from_ints(&[0, 1])));
        let g = g4(q(-1, 2), q(7, 1), q(0, 1), q(0, 1));
        let (p, n) = COC.pos_neg_parts(&g).unwrap();
        assert_eq!(p, COC.zero());
        assert_eq!(n, g4(q(1, 2), q(-7, 1), q(0, 1), q(0, 1)));
    }

    #[test]
    fn descriptor_mismatch_is_an_error() {
        let z2 = GroupDescriptor::int(2, OrderKind::Product);
        assert!(z2.add(&GroupElement::from_ints(&[1]), &GroupElement::from_ints(&[1, 2])).is_err());
        assert!(z2.neg(&GroupElement::new(vec![q(1, 2), q(0, 1)])).is_err());
    }

    #[test]
    fn lex_pair_requires_linear_first_factor() {
        assert!(GroupDescriptor::lex_pair(GroupDescriptor::rat(2, OrderKind::Product), GroupDescriptor::rat(1, OrderKind::Lex))
            .is_err());
    }

    #[test]
    fn units() {
        assert!(UnitalGroup::new(COC, i4(-1, 0, 0, 0)).is_err());
        let g = UnitalGroup::new(COC, i4(1, 0, 0, 0)).unwrap();
        assert!(g.is_strong_unit());
        let sample = [i4(5, 100, -3, 2), i4(-7, 0, 0, 1)];
        assert!(g.check_strong_unit_on(&sample).unwrap().holds);
        let z = UnitalGroup::new(GroupDescriptor::int(1, OrderKind::Lex), GroupElement::from_ints(&[0])).unwrap();
        assert!(!z.is_strong_unit());
    }
}
