//! Deterministic sample grids for infinite carriers.
//!
//! A grid starts with every coordinate tuple over the base values
//! `{0, ±1, ±1/2, ±1/4, ±3/4, ±2}` (integers only on integer carriers), in a
//! seeded shuffle, followed by seeded pseudorandom coordinates with
//! denominator at most 16. When a bounded interval has fewer such points than
//! requested (a one-dimensional `[0,1]` only has 81 of them), the grid is
//! topped up with midpoints of neighbouring grid points.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{GroupDescriptor, GroupElement};
use crate::rational::Rational;

pub const DEFAULT_POINTS: usize = 512;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_DEPTH: usize = 8;

/// Sampling and enumeration knobs shared by every checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Number of carrier points for unary checks.
    pub points: usize,
    /// Pairs range over the leading `pair_points` grid points.
    pub pair_points: usize,
    /// Triples range over the leading `triple_points` grid points.
    pub triple_points: usize,
    pub seed: u64,
    /// Iteration depth for orbits and truncated intersections.
    pub depth: usize,
    /// Finite carriers up to this size are handled exhaustively.
    pub exhaustive_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            points: DEFAULT_POINTS,
            pair_points: DEFAULT_POINTS,
            triple_points: 64,
            seed: DEFAULT_SEED,
            depth: DEFAULT_DEPTH,
            exhaustive_limit: 4096,
        }
    }
}

impl Budget {
    pub fn with_points(points: usize) -> Self {
        Budget { points, pair_points: points, ..Budget::default() }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    /// Triples are exhaustive on finite carriers of at most this size.
    pub(crate) fn triple_exhaustive_limit(&self) -> usize {
        128
    }
}

fn base_values(integral: bool) -> Vec<Rational> {
    let mut v = vec![Rational::zero(), Rational::one(), -Rational::one()];
    if !integral {
        for (n, d) in [(1, 2), (1, 4), (3, 4)] {
            v.push(Rational::new(n, d));
            v.push(Rational::new(-n, d));
        }
    }
    v.push(Rational::from_integer(2));
    v.push(Rational::from_integer(-2));
    v
}

/// Which coordinates of a descriptor are integral.
fn integral_mask(d: &GroupDescriptor) -> Vec<bool> {
    match d {
        GroupDescriptor::IntVector { dims, .. } => vec![true; *dims],
        GroupDescriptor::RatVector { dims, .. } => vec![false; *dims],
        GroupDescriptor::CocycleQ4 => vec![false; 4],
        GroupDescriptor::LexPair { h, g } => {
            let mut m = integral_mask(h);
            m.extend(integral_mask(g));
            m
        }
    }
}

fn random_coord(rng: &mut ChaCha8Rng, integral: bool) -> Rational {
    if integral {
        Rational::from_integer(rng.gen_range(-4..=4))
    } else {
        let den: i64 = rng.gen_range(1..=16);
        let num: i64 = rng.gen_range(-2 * den..=2 * den);
        Rational::new(num, den)
    }
}

/// All base-value tuples, capped at `cap` tuples, in a seeded order.
fn base_tuples(mask: &[bool], rng: &mut ChaCha8Rng, cap: usize) -> Vec<GroupElement> {
    let values: Vec<Vec<Rational>> = mask.iter().map(|&i| base_values(i)).collect();
    let total: usize = values.iter().map(Vec::len).product();
    let mut out = Vec::new();
    if total <= cap {
        let mut idx = vec![0usize; mask.len()];
        for _ in 0..total {
            out.push(GroupElement::new(idx.iter().zip(&values).map(|(&i, v)| v[i].clone()).collect()));
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < values[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
        out.shuffle(rng);
    } else {
        for _ in 0..cap {
            out.push(GroupElement::new(values.iter().map(|v| v[rng.gen_range(0..v.len())].clone()).collect()));
        }
    }
    out
}

/// `count` distinct group elements.
pub fn group_grid(d: &GroupDescriptor, count: usize, seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = integral_mask(d);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |x: GroupElement, out: &mut Vec<GroupElement>| {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    };
    push(d.zero(), &mut out);
    for x in base_tuples(&mask, &mut rng, 1 << 16) {
        if out.len() >= count {
            return out;
        }
        push(x, &mut out);
    }
    let mut attempts = 0;
    while out.len() < count && attempts < count * 64 {
        attempts += 1;
        let x = GroupElement::new(mask.iter().map(|&i| random_coord(&mut rng, i)).collect());
        push(x, &mut out);
    }
    out
}

/// `count` distinct members of the interval `[0, unit]` (fewer only when the
/// interval itself is smaller than requested). `0` and `unit` come first.
pub fn interval_grid(d: &GroupDescriptor, unit: &GroupElement, count: usize, seed: u64) -> Vec<GroupElement> {
    let zero = d.zero();
    let member = |x: &GroupElement| d.leq_raw(&zero, x) && d.leq_raw(x, unit);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = integral_mask(d);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |x: GroupElement, out: &mut Vec<GroupElement>| {
        if seen.insert(x.clone()) {
            out.push(x);
        }
    };
    push(zero.clone(), &mut out);
    push(unit.clone(), &mut out);
    if let Some(h) = d.halve_raw(unit) {
        push(h, &mut out);
    }
    for x in base_tuples(&mask, &mut rng, 1 << 16) {
        if out.len() >= count {
            break;
        }
        if member(&x) {
            push(x, &mut out);
        }
    }
    let mut attempts = 0;
    while out.len() < count && attempts < count * 256 {
        attempts += 1;
        let x = GroupElement::new(mask.iter().map(|&i| random_coord(&mut rng, i)).collect());
        if member(&x) {
            push(x, &mut out);
        }
    }
    // midpoint refinement
    let mut round = 0;
    while out.len() < count && round < 16 {
        round += 1;
        let before = out.len();
        let snapshot = out.clone();
        for w in snapshot.windows(2) {
            if out.len() >= count {
                break;
            }
            if let Some(m) = d.halve_raw(&d.add_raw(&w[0], &w[1])) {
                if member(&m) {
                    push(m, &mut out);
                }
            }
        }
        if out.len() == before {
            break;
        }
    }
    out.truncate(count.max(2).min(out.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::OrderKind;

    #[test]
    fn grids_are_deterministic_and_distinct() {
        let d = GroupDescriptor::CocycleQ4;
        let a = group_grid(&d, 300, 7);
        let b = group_grid(&d, 300, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 300);
        let set: HashSet<_> = a.iter().collect();
        assert_eq!(set.len(), 300);
        assert_ne!(group_grid(&d, 300, 8), a);
    }

    #[test]
    fn unit_interval_reaches_512_points() {
        let d = GroupDescriptor::rat(1, OrderKind::Lex);
        let u = GroupElement::from_ints(&[1]);
        let g = interval_grid(&d, &u, 512, 0);
        assert_eq!(g.len(), 512);
        assert!(g.iter().all(|x| d.leq_raw(&d.zero(), x) && d.leq_raw(x, &u)));
        assert_eq!(g[0], d.zero());
        assert_eq!(g[1], u);
    }

    #[test]
    fn cocycle_interval_members() {
        let d = GroupDescriptor::CocycleQ4;
        let u = GroupElement::from_ints(&[1, 0, 0, 0]);
        let g = interval_grid(&d, &u, 512, 0);
        assert_eq!(g.len(), 512);
        assert!(g.iter().all(|x| d.leq_raw(&d.zero(), x) && d.leq_raw(x, &u)));
    }

    #[test]
    fn integer_grids_stay_integral() {
        let d = GroupDescriptor::int(2, OrderKind::Lex);
        let g = group_grid(&d, 40, 0);
        assert!(g.iter().all(|x| d.contains(x)));
    }
}
