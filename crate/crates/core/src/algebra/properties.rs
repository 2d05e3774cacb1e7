use super::{Algebra, Element};
use crate::checks::{self, ensure, Check};
use crate::error::{Error, Result};
use crate::grid::Budget;
use crate::group::{GroupDescriptor, OrderKind};
use crate::report::{Counterexample, SuiteReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatMulMode {
    /// `n.x = (n−1).x ⊕ x`, always defined.
    Circled,
    /// `nx = (n−1)x + x` with the partial sum.
    Partial,
}

fn axiom_checks(m: &Algebra) -> Vec<Check<'_>> {
    let s = move |e: &Element| m.show(e);
    let zero = m.zero();
    let one = m.one();
    vec![
        Check::new("A1", 3, move |a| {
            let (x, y, z) = (&a[0], &a[1], &a[2]);
            let l = m.oplus(x, &m.oplus(y, z));
            let r = m.oplus(&m.oplus(x, y), z);
            ensure!(l == r, "x⊕(y⊕z) = {} but (x⊕y)⊕z = {}", s(&l), s(&r))
        }),
        Check::new("A2", 1, {
            let zero = zero.clone();
            move |a| {
                let x = &a[0];
                let (l, r) = (m.oplus(x, &zero), m.oplus(&zero, x));
                ensure!(&l == x && &r == x, "x⊕0 = {}, 0⊕x = {}", s(&l), s(&r))
            }
        }),
        Check::new("A3", 1, {
            let one = one.clone();
            move |a| {
                let x = &a[0];
                let (l, r) = (m.oplus(x, &one), m.oplus(&one, x));
                ensure!(l == one && r == one, "x⊕1 = {}, 1⊕x = {}", s(&l), s(&r))
            }
        }),
        Check::new("A4", 0, {
            let (zero, one) = (zero.clone(), one.clone());
            move |_| {
                let (l, r) = (m.minus(&one), m.sim(&one));
                ensure!(l == zero && r == zero, "1⁻ = {}, 1˜ = {}", s(&l), s(&r))
            }
        }),
        Check::new("A5", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let l = m.sim(&m.oplus(&m.minus(x), &m.minus(y)));
            let r = m.minus(&m.oplus(&m.sim(x), &m.sim(y)));
            ensure!(l == r, "(x⁻⊕y⁻)˜ = {} but (x˜⊕y˜)⁻ = {}", s(&l), s(&r))
        }),
        Check::new("A6", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let e1 = m.oplus(x, &m.odot(&m.sim(x), y));
            let e2 = m.oplus(y, &m.odot(&m.sim(y), x));
            let e3 = m.oplus(&m.odot(x, &m.minus(y)), y);
            let e4 = m.oplus(&m.odot(y, &m.minus(x)), x);
            ensure!(
                e1 == e2 && e2 == e3 && e3 == e4,
                "x⊕(x˜⊙y) = {}, y⊕(y˜⊙x) = {}, (x⊙y⁻)⊕y = {}, (y⊙x⁻)⊕x = {}",
                s(&e1),
                s(&e2),
                s(&e3),
                s(&e4)
            )
        }),
        Check::new("A7", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let l = m.odot(x, &m.oplus(&m.minus(x), y));
            let r = m.odot(&m.oplus(x, &m.sim(y)), y);
            ensure!(l == r, "x⊙(x⁻⊕y) = {} but (x⊕y˜)⊙y = {}", s(&l), s(&r))
        }),
        Check::new("A8", 1, move |a| {
            let x = &a[0];
            let l = m.sim(&m.minus(x));
            ensure!(&l == x, "(x⁻)˜ = {}", s(&l))
        }),
    ]
}

impl Algebra {
    /// Element text using table labels where available.
    pub fn show(&self, e: &Element) -> String {
        match (self, e) {
            (Algebra::Table(t), Element::Index(i)) => t.label(*i).map(str::to_string).unwrap_or_else(|| e.to_string()),
            (Algebra::Product(fs), Element::Tuple(xs)) if fs.len() == xs.len() => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.show(x)).collect();
                format!("({})", parts.join(","))
            }
            (Algebra::Interval { base, .. }, e) => base.show(e),
            (Algebra::Quotient(q), e) => q.base.show(e),
            _ => e.to_string(),
        }
    }

    /// (A1)–(A8), exhaustive on finite carriers and over the sample grid
    /// otherwise.
    pub fn check_axioms(&self, budget: &Budget) -> SuiteReport {
        if let Some(n) = self.size() {
            if n <= budget.exhaustive_limit {
                if let Some((table, back)) = self.compile() {
                    let alg = Algebra::Table(table);
                    let dom = alg.domain(budget);
                    let mut rep = checks::run_suite("AXIOMS", &axiom_checks(&alg), &dom, budget);
                    checks::translate(&mut rep, &back);
                    return rep;
                }
            }
        }
        checks::run_suite("AXIOMS", &axiom_checks(self), &self.domain(budget), budget)
    }

    /// Re-evaluates an axiom counterexample; `Some(true)` if it still fails.
    pub fn replay_axiom(&self, ce: &Counterexample) -> Option<bool> {
        checks::replay(&axiom_checks(self), ce)
    }

    /// `x + y`, defined iff `y ⊙ x = 0`.
    pub fn partial_add(&self, x: &Element, y: &Element) -> Result<Option<Element>> {
        self.require(x)?;
        self.require(y)?;
        Ok(self.partial_add_raw(x, y))
    }

    pub(crate) fn partial_add_raw(&self, x: &Element, y: &Element) -> Option<Element> {
        (self.odot(y, x) == self.zero()).then(|| self.oplus(x, y))
    }

    pub fn nat_mul(&self, n: u64, x: &Element, mode: NatMulMode) -> Result<Option<Element>> {
        self.require(x)?;
        let mut acc = self.zero();
        for _ in 0..n {
            acc = match mode {
                NatMulMode::Circled => self.oplus(&acc, x),
                NatMulMode::Partial => match self.partial_add_raw(&acc, x) {
                    Some(v) => v,
                    None => return Ok(None),
                },
            };
        }
        Ok(Some(acc))
    }

    pub fn is_boolean(&self, x: &Element) -> Result<bool> {
        self.require(x)?;
        Ok(&self.oplus(x, x) == x)
    }

    /// All Boolean elements, by enumeration or, on Γ carriers, in closed
    /// form.
    pub fn boolean_skeleton(&self) -> Result<Vec<Element>> {
        if let Some(els) = self.elements() {
            return Ok(els.into_iter().filter(|x| &self.oplus(x, x) == x).collect());
        }
        match self {
            Algebra::Gamma(g) => {
                let d = g.descriptor();
                let u = g.unit();
                let zero = d.zero();
                match d {
                    GroupDescriptor::IntVector { dims, order: OrderKind::Product }
                    | GroupDescriptor::RatVector { dims, order: OrderKind::Product }
                        if *dims > 1 =>
                    {
                        if *dims > 16 {
                            return Err(Error::Unsupported(format!("skeleton of {dims} coordinates")));
                        }
                        let mut out = Vec::new();
                        for mask in 0u32..(1 << dims) {
                            let coords = (0..*dims)
                                .map(|i| if mask >> i & 1 == 1 { u.coords()[i].clone() } else { zero.coords()[i].clone() })
                                .collect();
                            out.push(Element::Group(crate::group::GroupElement::new(coords)));
                        }
                        out.sort();
                        out.dedup();
                        Ok(out)
                    }
                    GroupDescriptor::LexPair { h, .. } if u.coords()[..h.dims()].iter().any(|c| !c.is_zero()) => {
                        Ok(vec![Element::Group(zero), Element::Group(u.clone())])
                    }
                    _ if d.is_linear() => {
                        let mut v = vec![Element::Group(zero), Element::Group(u.clone())];
                        v.dedup();
                        Ok(v)
                    }
                    _ => Err(Error::Unsupported(format!("no closed-form Boolean skeleton for {d}"))),
                }
            }
            Algebra::Product(fs) => {
                let parts = fs.iter().map(Algebra::boolean_skeleton).collect::<Result<Vec<_>>>()?;
                let mut out = vec![Vec::new()];
                for p in &parts {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<Element>| {
                            p.iter().map(move |e| {
                                let mut t = prefix.clone();
                                t.push(e.clone());
                                t
                            })
                        })
                        .collect();
                }
                Ok(out.into_iter().map(Element::Tuple).collect())
            }
            _ => Err(Error::Unsupported(format!("Boolean skeleton of {self}"))),
        }
    }

    /// `x⁻ = x˜` for every element.
    pub fn is_symmetric(&self, budget: &Budget) -> Verdict {
        if let Algebra::Gamma(g) = self {
            // x⁻ = x˜ on Γ(G,u) iff u is central
            if let Ok(v) = g.descriptor().is_central(g.unit()) {
                return v;
            }
        }
        let dom = self.domain(budget);
        let holds = dom.points.iter().all(|x| self.minus(x) == self.sim(x));
        if dom.exhaustive {
            Verdict::exhaustive(holds)
        } else {
            Verdict::sampled(holds)
        }
    }

    /// A witness `y` with `n.y = x` and `(n−1).y ⊙ y⁻ = 0`, when one exists.
    pub fn nth_part(&self, x: &Element, n: u64) -> Result<Option<Element>> {
        self.require(x)?;
        if n < 2 {
            return Err(Error::Usage("n must be ≥ 2".into()));
        }
        Ok(self.nth_part_raw(x, n))
    }

    fn is_nth_part(&self, y: &Element, x: &Element, n: u64) -> bool {
        let mut acc = self.zero();
        for _ in 0..n - 1 {
            acc = self.oplus(&acc, y);
        }
        &self.oplus(&acc, y) == x && self.odot(&acc, &self.minus(y)) == self.zero()
    }

    fn nth_part_raw(&self, x: &Element, n: u64) -> Option<Element> {
        if let Some(els) = self.elements() {
            return els.into_iter().find(|y| self.is_nth_part(y, x, n));
        }
        match self {
            Algebra::Gamma(g) => {
                let y = Element::Group(g.descriptor().divide_raw(x.grp(), n)?);
                self.is_nth_part(&y, x, n).then_some(y)
            }
            Algebra::Product(fs) => Some(Element::Tuple(
                fs.iter().zip(x.tup()).map(|(f, xi)| f.nth_part_raw(xi, n)).collect::<Option<_>>()?,
            )),
            _ => self.elements()?.into_iter().find(|y| self.is_nth_part(y, x, n)),
        }
    }

    /// Every element has an `n`-th part.
    pub fn is_n_divisible(&self, n: u64, budget: &Budget) -> Result<Verdict> {
        if n < 2 {
            return Err(Error::Usage("n must be ≥ 2".into()));
        }
        let dom = self.domain(budget);
        let holds = dom.points.iter().all(|x| self.nth_part_raw(x, n).is_some());
        Ok(if dom.exhaustive {
            Verdict::exhaustive(holds)
        } else if holds && self.divisible_carrier() {
            // the witness x/n is exact on every point of a divisible carrier
            Verdict::proved(true)
        } else {
            Verdict::sampled(holds)
        })
    }

    fn divisible_carrier(&self) -> bool {
        match self {
            Algebra::Gamma(g) => g.descriptor().is_two_divisible() && !has_int_coords(g.descriptor()),
            _ => false,
        }
    }
}

fn has_int_coords(d: &GroupDescriptor) -> bool {
    match d {
        GroupDescriptor::IntVector { dims, .. } => *dims > 0,
        GroupDescriptor::RatVector { .. } | GroupDescriptor::CocycleQ4 => false,
        GroupDescriptor::LexPair { h, g } => has_int_coords(h) || has_int_coords(g),
    }
}
