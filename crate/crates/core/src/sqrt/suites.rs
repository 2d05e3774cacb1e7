//! Named property suites over an algebra with a square root.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{find_sqrt, is_strict, orbit_supremum, tryv, SqrtSearch, SqrtWitness};
use crate::algebra::{Algebra, Element};
use crate::checks::{self, ensure, Check};
use crate::error::{Error, Result};
use crate::grid::{group_grid, Budget};
use crate::group::GroupElement;
use crate::report::SuiteReport;

/// Every suite name accepted by [`run_property_suite`].
pub const SUITES: &[&str] = &[
    "P32", "P32-1", "P32-2", "P32-3", "P32-4", "P32-5", "P32-6", "P32-7", "P32-8", "P32-9", "P32-10", "P32-11",
    "P71-viii", "NS1", "POW", "L861", "EQ85", "P84", "P83", "P862", "DENSE",
];

struct Ctx<'a> {
    m: &'a Algebra,
    r: &'a SqrtWitness,
    r0: Element,
    b: Element,
    cache: HashMap<Element, Element>,
}

impl<'a> Ctx<'a> {
    fn new(m: &'a Algebra, r: &'a SqrtWitness, points: &[Element]) -> Result<Self> {
        let r0 = r.apply_raw(m, &m.zero())?;
        let cache = points.par_iter().map(|x| Ok((x.clone(), r.apply_raw(m, x)?))).collect::<Result<_>>()?;
        Ok(Ctx { m, r, b: m.minus(&r0), r0, cache })
    }

    fn r(&self, x: &Element) -> Result<Element> {
        match self.cache.get(x) {
            Some(v) => Ok(v.clone()),
            None => self.r.apply_raw(self.m, x),
        }
    }

    fn s(&self, e: &Element) -> String {
        self.m.show(e)
    }

    fn pow(&self, x: &Element, n: usize) -> Element {
        (1..n).fold(x.clone(), |acc, _| self.m.odot(&acc, x))
    }
}

fn vacuous<'a>(reason: &str) -> Check<'a> {
    Check::new(format!("premise: {reason} (vacuous)"), 0, |_| None)
}

fn p32<'a>(c: &'a Ctx<'a>, item: usize) -> Vec<Check<'a>> {
    let m = c.m;
    match item {
        1 => vec![
            Check::new("P32-1a", 1, move |a| {
                let x = &a[0];
                let rx = tryv!(c.r(x));
                let mid = m.join(x, &c.r0);
                ensure!(m.leq(x, &mid) && m.leq(&mid, &rx), "x∨r(0) = {}, r(x) = {}", c.s(&mid), c.s(&rx))
            }),
            Check::new("P32-1b", 0, move |_| {
                let r1 = tryv!(c.r(&m.one()));
                ensure!(r1 == m.one(), "r(1) = {}", c.s(&r1))
            }),
            Check::new("P32-1c", 1, move |a| {
                let x = &a[0];
                let rx = tryv!(c.r(x));
                let l = m.join(&m.odot(&rx, &c.r0), &m.odot(&c.r0, &rx));
                ensure!(m.leq(&l, x), "(r(x)⊙r(0))∨(r(0)⊙r(x)) = {}", c.s(&l))
            }),
            Check::new("P32-1d", 1, move |a| {
                let x = &a[0];
                let rx = tryv!(c.r(x));
                let (l, r) = (m.odot(&rx, x), m.odot(x, &rx));
                ensure!(l == r, "r(x)⊙x = {}, x⊙r(x) = {}", c.s(&l), c.s(&r))
            }),
        ],
        2 => vec![Check::new("P32-2", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            if !m.leq(x, y) {
                return None;
            }
            let (rx, ry) = (tryv!(c.r(x)), tryv!(c.r(y)));
            ensure!(m.leq(&rx, &ry), "x ≤ y but r(x) = {} ≰ r(y) = {}", c.s(&rx), c.s(&ry))
        })],
        3 => vec![
            Check::new("P32-3a", 2, move |a| {
                let (x, y) = (&a[0], &a[1]);
                let (rx, ry) = (tryv!(c.r(x)), tryv!(c.r(y)));
                let lo = m.meet(x, y);
                let (p, q) = (m.odot(&rx, &ry), m.odot(&ry, &rx));
                ensure!(m.leq(&lo, &p) && m.leq(&lo, &q), "x∧y = {}, r(x)⊙r(y) = {}, r(y)⊙r(x) = {}", c.s(&lo), c.s(&p), c.s(&q))
            }),
            Check::new("P32-3b", 1, move |a| {
                let x = &a[0];
                ensure!(
                    !(m.oplus(x, x) == *x && m.leq(x, &c.r0)) || *x == m.zero(),
                    "Boolean {} lies below r(0) = {}",
                    c.s(x),
                    c.s(&c.r0)
                )
            }),
        ],
        4 => vec![Check::new("P32-4", 1, move |a| {
            let x = &a[0];
            let xx = m.odot(x, x);
            let rxx = tryv!(c.r(&xx));
            let rx = tryv!(c.r(x));
            let sq = m.odot(&rxx, &rxx);
            let four = c.pow(&rx, 4);
            ensure!(
                m.leq(x, &rxx) && sq == xx && four == xx,
                "r(x⊙x) = {}, r(x⊙x)² = {}, r(x)⁴ = {}, x⊙x = {}",
                c.s(&rxx),
                c.s(&sq),
                c.s(&four),
                c.s(&xx)
            )
        })],
        5 => vec![Check::new("P32-5", 1, move |a| {
            let x = &a[0];
            let l = m.join(&m.meet(x, &m.minus(x)), &m.meet(x, &m.sim(x)));
            ensure!(m.leq(&l, &c.r0), "(x∧x⁻)∨(x∧x˜) = {} ≰ r(0) = {}", c.s(&l), c.s(&c.r0))
        })],
        6 => vec![Check::new("P32-6", 1, move |a| {
            let x = &a[0];
            let rx = tryv!(c.r(x));
            let boolean = m.oplus(&rx, &rx) == rx;
            ensure!(boolean == (rx == *x), "r(x) = {}, Boolean: {boolean}", c.s(&rx))
        })],
        7 => vec![Check::new("P32-7", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let l = m.meet(&tryv!(c.r(x)), &tryv!(c.r(y)));
            let r = tryv!(c.r(&m.meet(x, y)));
            ensure!(l == r, "r(x)∧r(y) = {}, r(x∧y) = {}", c.s(&l), c.s(&r))
        })],
        8 => vec![Check::new("P32-8", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let (rx, ry) = (tryv!(c.r(x)), tryv!(c.r(y)));
            let (l1, r1) = (m.arrow(&rx, &ry), tryv!(c.r(&m.arrow(x, y))));
            let (l2, r2) = (m.squig(&rx, &ry), tryv!(c.r(&m.squig(x, y))));
            ensure!(
                m.leq(&l1, &r1) && m.leq(&l2, &r2),
                "r(x)→r(y) = {}, r(x→y) = {}, r(x)⇝r(y) = {}, r(x⇝y) = {}",
                c.s(&l1),
                c.s(&r1),
                c.s(&l2),
                c.s(&r2)
            )
        })],
        9 => vec![Check::new("P32-9", 2, move |a| {
            let (x, y) = (&a[0], &a[1]);
            let l = tryv!(c.r(&m.join(x, y)));
            let r = m.join(&tryv!(c.r(x)), &tryv!(c.r(y)));
            ensure!(l == r, "r(x∨y) = {}, r(x)∨r(y) = {}", c.s(&l), c.s(&r))
        })],
        10 => vec![
            Check::new("P32-10a", 2, move |a| {
                let (x, y) = (&a[0], &a[1]);
                let l = tryv!(c.r(&m.odot(x, y)));
                let r = m.join(&m.odot(&tryv!(c.r(x)), &tryv!(c.r(y))), &c.r0);
                ensure!(m.leq(&l, &r), "r(x⊙y) = {} ≰ (r(x)⊙r(y))∨r(0) = {}", c.s(&l), c.s(&r))
            }),
            Check::new("P32-10b", 1, move |a| {
                let x = &a[0];
                let rx = tryv!(c.r(x));
                let l = tryv!(c.r(&m.odot(x, x)));
                let r = m.join(&m.odot(&rx, &rx), &c.r0);
                let fixed = !m.leq(&c.r0, x) || l == *x;
                ensure!(l == r && fixed, "r(x⊙x) = {}, (r(x)⊙r(x))∨r(0) = {}", c.s(&l), c.s(&r))
            }),
        ],
        _ => vec![
            Check::new("P32-11a", 1, move |a| {
                let x = &a[0];
                let rx = tryv!(c.r(x));
                let boolean = m.oplus(x, x) == *x;
                let (p, q) = (m.oplus(x, &c.r0), m.oplus(&c.r0, x));
                ensure!(
                    boolean == (rx == p) && boolean == (rx == q),
                    "Boolean: {boolean}, r(x) = {}, x⊕r(0) = {}, r(0)⊕x = {}",
                    c.s(&rx),
                    c.s(&p),
                    c.s(&q)
                )
            }),
            Check::new("P32-11b", 0, move |_| {
                let (p, q) = (m.arrow(&c.r0, &m.zero()), m.squig(&c.r0, &m.zero()));
                let (pp, qq) = (m.odot(&p, &p), m.odot(&q, &q));
                ensure!(pp == qq && m.oplus(&pp, &pp) == pp, "(r(0)→0)² = {}, (r(0)⇝0)² = {}", c.s(&pp), c.s(&qq))
            }),
            Check::new("P32-11c", 3, move |a| {
                let (lo, hi) = (m.meet(&a[0], &a[1]), m.join(&a[0], &a[1]));
                let (rlo, rhi) = (tryv!(c.r(&lo)), tryv!(c.r(&hi)));
                let y = m.meet(&m.join(&a[2], &rlo), &rhi);
                let z = m.odot(&y, &y);
                let rz = tryv!(c.r(&z));
                ensure!(
                    m.leq(&lo, &z) && m.leq(&z, &hi) && rz == y,
                    "y = {} in [r(a), r(b)] = [{}, {}], y⊙y = {}, r(y⊙y) = {}",
                    c.s(&y),
                    c.s(&rlo),
                    c.s(&rhi),
                    c.s(&z),
                    c.s(&rz)
                )
            }),
            Check::new("P32-11d", 1, move |a| {
                let y = m.join(&a[0], &c.r0);
                let ry = tryv!(c.r(&m.odot(&y, &y)));
                let rx = tryv!(c.r(&a[0]));
                ensure!(ry == y && m.leq(&c.r0, &rx), "y = {}, r(y⊙y) = {}", c.s(&y), c.s(&ry))
            }),
        ],
    }
}

/// The group behind a Γ carrier or a product of them, as a list of
/// `(factor, unit, coordinate)` triples.
fn gamma_parts<'a>(m: &'a Algebra, x: &'a Element) -> Option<Vec<(&'a crate::group::UnitalGroup, &'a GroupElement)>> {
    match (m, x) {
        (Algebra::Gamma(g), Element::Group(e)) => Some(vec![(g, e)]),
        (Algebra::Product(fs), Element::Tuple(xs)) if fs.len() == xs.len() => {
            let mut out = Vec::new();
            for (f, xi) in fs.iter().zip(xs) {
                out.extend(gamma_parts(f, xi)?);
            }
            Some(out)
        }
        _ => None,
    }
}

fn two_divisible(m: &Algebra) -> bool {
    match m {
        Algebra::Gamma(g) => g.descriptor().is_two_divisible(),
        Algebra::Product(fs) => fs.iter().all(two_divisible),
        _ => false,
    }
}

fn p84<'a>(c: &'a Ctx<'a>, budget: &'a Budget) -> Vec<Check<'a>> {
    let m = c.m;
    let w = m.odot(&c.b, &c.b);
    vec![Check::new("P84", 0, move |_| {
        let Some(parts) = gamma_parts(m, &c.r0) else {
            return Some(format!("{m} has no Γ presentation"));
        };
        let Some(wparts) = gamma_parts(m, &w) else {
            return Some(format!("w = {} has no Γ presentation", c.s(&w)));
        };
        for ((g, r0), (_, wi)) in parts.iter().zip(&wparts) {
            let d = g.descriptor();
            let u = g.unit();
            let left = d.sub_raw(u, wi);
            let right = d.add_raw(&d.neg_raw(wi), u);
            let twice = d.add_raw(r0, r0);
            if twice != left || twice != right {
                return Some(format!("u−w = {left}, −w+u = {right}, 2·r(0) = {twice}"));
            }
            if !tryv!(d.is_central(r0)).holds {
                return Some(format!("r(0) = {r0} is not central"));
            }
            let grid = group_grid(d, budget.points, budget.seed);
            if !tryv!(d.commutes_with_all(r0, &grid)).holds {
                return Some(format!("r(0) = {r0} fails to commute on the grid"));
            }
        }
        None
    })]
}

fn dense<'a>(c: &'a Ctx<'a>, budget: &'a Budget) -> Vec<Check<'a>> {
    let Algebra::Gamma(g) = c.m else {
        return vec![vacuous("not a Γ carrier")];
    };
    let d = g.descriptor();
    let u = g.unit();
    if !d.is_two_divisible() {
        return vec![vacuous("not two-divisible")];
    }
    match d.halve_raw(u).map(|h| d.is_central(&h)) {
        Some(Ok(v)) if v.holds => {}
        _ => return vec![vacuous("u/2 is not central")],
    }
    let m = c.m;
    vec![
        Check::new("DENSE-strict", 0, move |_| {
            ensure!(c.r0 == c.b, "r(0) = {}, r(0)⁻ = {}", c.s(&c.r0), c.s(&c.b))
        }),
        Check::new("DENSE-witness", 0, move |_| {
            for h in group_grid(d, budget.points, budget.seed) {
                let gpos = tryv!(d.pos_neg_parts(&h)).0;
                let mut x = gpos.clone();
                let mut n = 1u64;
                while !d.leq_raw(&x, u) {
                    if n >= 1 << 62 {
                        return Some(format!("no x ∈ M with g = nx for g = {gpos}"));
                    }
                    let Some(h) = d.halve_raw(&x) else {
                        return Some(format!("{x} has no half"));
                    };
                    x = h;
                    n *= 2;
                }
                if !m.contains(&Element::Group(x.clone())) || d.nmul_raw(n, &x) != gpos {
                    return Some(format!("g = {gpos}, x = {x}, n = {n}"));
                }
            }
            None
        }),
    ]
}

fn p862<'a>(c: &'a Ctx<'a>, a: Element) -> Vec<Check<'a>> {
    let m = c.m;
    let a2 = a.clone();
    vec![
        Check::new("P862-idempotent", 1, move |p| {
            let y = m.join(&p[0], &a);
            let yy = m.oplus(&y, &y);
            ensure!(yy == y, "y = {} ∈ [a,1], y⊕y = {}", c.s(&y), c.s(&yy))
        }),
        Check::new("P862-complement", 1, move |p| {
            let y = m.join(&p[0], &a2);
            let (ym, ys) = (m.join(&m.minus(&y), &a2), m.join(&m.sim(&y), &a2));
            let (meet, join) = (m.meet(&y, &ym), m.join(&y, &ym));
            ensure!(
                meet == a2 && join == m.one() && ym == ys,
                "y = {}, y^-a = {}, y^~a = {}, meet {}, join {}",
                c.s(&y),
                c.s(&ym),
                c.s(&ys),
                c.s(&meet),
                c.s(&join)
            )
        }),
    ]
}

fn suite_checks<'a>(name: &str, c: &'a Ctx<'a>, budget: &'a Budget) -> Result<Vec<Check<'a>>> {
    let m = c.m;
    if let Some(item) = name.strip_prefix("P32-").and_then(|s| s.parse::<usize>().ok()) {
        if (1..=11).contains(&item) {
            return Ok(p32(c, item));
        }
    }
    Ok(match name {
        "P32" => (1..=11).flat_map(|i| p32(c, i)).collect(),
        "P71-viii" => vec![Check::new("P71-viii", 1, move |a| {
            let x = &a[0];
            let (l, r) = (m.odot(x, &c.r0), m.odot(x, x));
            ensure!(m.leq(&l, &r), "x⊙r(0) = {} ≰ x⊙x = {}", c.s(&l), c.s(&r))
        })],
        "NS1" => vec![Check::new("NS1", 1, move |a| {
            let x = &a[0];
            let (l, r) = (m.odot(&c.r0, x), m.odot(x, &c.r0));
            ensure!(l == r, "r(0)⊙x = {}, x⊙r(0) = {}", c.s(&l), c.s(&r))
        })],
        "POW" => (1..=5)
            .map(|n| {
                Check::new(format!("POW-{n}"), 1, move |a: &[Element]| {
                    let x = &a[0];
                    let l = tryv!(c.r(&c.pow(x, n)));
                    let r = m.join(&c.pow(&tryv!(c.r(x)), n), &c.r0);
                    ensure!(l == r, "r(x^{n}) = {}, r(x)^{n}∨r(0) = {}", c.s(&l), c.s(&r))
                })
            })
            .collect(),
        "L861" => vec![
            Check::new("L861-meet", 3, move |a| {
                let l = tryv!(c.r(&m.meet(&a[0], &m.meet(&a[1], &a[2]))));
                let mut r = tryv!(c.r(&a[0]));
                for x in &a[1..] {
                    r = m.meet(&r, &tryv!(c.r(x)));
                }
                ensure!(l == r, "r(⋀S) = {}, ⋀r(S) = {}", c.s(&l), c.s(&r))
            }),
            Check::new("L861-join", 3, move |a| {
                let l = tryv!(c.r(&m.join(&a[0], &m.join(&a[1], &a[2]))));
                let mut r = tryv!(c.r(&a[0]));
                for x in &a[1..] {
                    r = m.join(&r, &tryv!(c.r(x)));
                }
                ensure!(l == r, "r(⋁S) = {}, ⋁r(S) = {}", c.s(&l), c.s(&r))
            }),
        ],
        "EQ85" => vec![
            Check::new("EQ85", 2, move |a| {
                let (x, y) = (&a[0], &a[1]);
                let l = m.odot(&tryv!(c.r(x)), &tryv!(c.r(y)));
                let r = tryv!(c.r(&m.odot(x, y)));
                ensure!(m.leq(&l, &r), "r(x)⊙r(y) = {} ≰ r(x⊙y) = {}", c.s(&l), c.s(&r))
            }),
            Check::new("EQ85-identity", 2, move |a| {
                let (x, y) = (&a[0], &a[1]);
                let l = m.join(&m.odot(&tryv!(c.r(x)), &tryv!(c.r(y))), &c.r0);
                let r = tryv!(c.r(&m.odot(x, y)));
                ensure!(l == r, "(r(x)⊙r(y))∨r(0) = {}, r(x⊙y) = {}", c.s(&l), c.s(&r))
            }),
        ],
        "P84" => p84(c, budget),
        "P83" => {
            if !two_divisible(m) {
                vec![vacuous("not two-divisible")]
            } else {
                vec![Check::new("P83", 0, move |_| {
                    let strict = tryv!(is_strict(m, c.r));
                    ensure!(strict, "r(0) = {} but r(0)⁻ = {}", c.s(&c.r0), c.s(&c.b))
                })]
            }
        }
        "P862" => {
            let a = orbit_supremum(m, c.r, budget.depth)?.ok_or_else(|| {
                Error::Precondition(format!("the orbit of r(0) does not stabilise within {} steps", budget.depth))
            })?;
            p862(c, a)
        }
        "DENSE" => dense(c, budget),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Runs a named suite. Without a witness the root is found with
/// [`find_sqrt`]; an algebra without one is a precondition error.
pub fn run_property_suite(name: &str, m: &Algebra, r: Option<&SqrtWitness>, budget: &Budget) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let found;
    let r = match r {
        Some(r) => r,
        None => match find_sqrt(m, budget)? {
            SqrtSearch::Root(w) => {
                found = w;
                &found
            }
            SqrtSearch::NoRoot(n) => return Err(Error::Precondition(n.reason)),
        },
    };
    let r0 = r.apply_raw(m, &m.zero())?;
    let dom = m.domain(budget).with_front(vec![m.zero(), m.one(), r0.clone(), m.minus(&r0)]);
    let ctx = Ctx::new(m, r, &dom.points)?;
    let list = suite_checks(name, &ctx, budget)?;
    Ok(checks::run_suite(name, &list, &dom, budget))
}

/// Re-evaluates a suite counterexample; `Some(true)` if it still fails.
pub fn replay_suite(
    name: &str,
    m: &Algebra,
    r: &SqrtWitness,
    budget: &Budget,
    ce: &crate::report::Counterexample,
) -> Result<Option<bool>> {
    let ctx = Ctx::new(m, r, &ce.elements)?;
    let list = suite_checks(name, &ctx, budget)?;
    Ok(checks::replay(&list, ce))
}
