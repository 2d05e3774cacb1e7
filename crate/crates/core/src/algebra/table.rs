use crate::error::{Error, Result};

/// A finite algebra given by its `⊕`, `⁻` and `˜` tables over indices
/// `0..n`. The product, lattice operations and order are derived once at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    labels: Vec<String>,
    n: usize,
    oplus: Vec<usize>,
    minus: Vec<usize>,
    sim: Vec<usize>,
    zero: usize,
    one: usize,
    odot: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    leq: Vec<bool>,
}

impl FiniteTable {
    /// Validates shapes and ranges only; the algebra axioms are checked by
    /// `Algebra::check_axioms`.
    pub fn new(
        labels: Vec<String>,
        oplus: Vec<Vec<usize>>,
        minus: Vec<usize>,
        sim: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if oplus.len() != n || oplus.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("oplus table must be {n}×{n}")));
        }
        if minus.len() != n || sim.len() != n {
            return Err(Error::InvalidTable(format!("unary tables must have {n} entries")));
        }
        let out_of_range = oplus.iter().flatten().chain(&minus).chain(&sim).chain([&zero, &one]).any(|&v| v >= n);
        if out_of_range {
            return Err(Error::InvalidTable(format!("entry outside 0..{n}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidTable(format!("duplicate label `{dup}`")));
        }
        let oplus: Vec<usize> = oplus.into_iter().flatten().collect();
        let mut t = FiniteTable {
            labels,
            n,
            oplus,
            minus,
            sim,
            zero,
            one,
            odot: vec![0; n * n],
            join: vec![0; n * n],
            meet: vec![0; n * n],
            leq: vec![false; n * n],
        };
        for x in 0..n {
            for y in 0..n {
                // x ⊙ y = (y⁻ ⊕ x⁻)˜
                t.odot[x * n + y] = t.sim[t.oplus_idx(t.minus[y], t.minus[x])];
                t.leq[x * n + y] = t.oplus_idx(t.minus[x], y) == t.one;
            }
        }
        for x in 0..n {
            for y in 0..n {
                t.join[x * n + y] = t.oplus_idx(x, t.odot_idx(t.sim[x], y));
                t.meet[x * n + y] = t.odot_idx(x, t.oplus_idx(t.minus[x], y));
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.get(i).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// The `⊕` table as rows.
    pub fn oplus_rows(&self) -> Vec<Vec<usize>> {
        self.oplus.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn minus_table(&self) -> &[usize] {
        &self.minus
    }

    pub fn sim_table(&self) -> &[usize] {
        &self.sim
    }

    pub(crate) fn oplus_idx(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.n + y]
    }

    pub(crate) fn odot_idx(&self, x: usize, y: usize) -> usize {
        self.odot[x * self.n + y]
    }

    pub(crate) fn join_idx(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    pub(crate) fn meet_idx(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }

    pub(crate) fn leq_idx(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub(crate) fn minus_idx(&self, x: usize) -> usize {
        self.minus[x]
    }

    pub(crate) fn sim_idx(&self, x: usize) -> usize {
        self.sim[x]
    }
}
