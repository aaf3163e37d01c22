//! Finite posets, monotone maps and Hasse covers.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, CapExceeded, DEFAULT_CAP};
use crate::set::{ElemSet, MAX_ELEMS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("empty carrier")]
    Empty,
    #[error("carrier of {0} elements exceeds the supported maximum of {MAX_ELEMS}")]
    TooLarge(usize),
    #[error("relation is not square")]
    NotSquare,
    #[error("label count {labels} does not match element count {n}")]
    LabelCount { n: usize, labels: usize },
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
}

/// Square boolean matrix over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, OrderError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(OrderError::NotSquare);
        }
        Ok(Relation {
            n,
            bits: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                r.set(i, j, f(i, j));
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    /// All pairs `(i, j)` in the relation, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..self.n {
            r.set(i, i, true);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if !r.get(i, k) {
                    continue;
                }
                for j in 0..self.n {
                    if r.get(k, j) {
                        r.set(i, j, true);
                    }
                }
            }
        }
        r
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        self.bits.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }
}

/// A finite partial order on `0..n`. Labels are display-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    leq: Relation,
    labels: Vec<String>,
    // up[i] = {j : i <= j}, down[i] = {j : j <= i}
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// Checks the three partial-order axioms and returns the poset.
///
/// Witnesses are the first violation found scanning indices in ascending
/// order.
pub fn validate_poset(leq: Relation, labels: Option<Vec<String>>) -> Result<Poset, OrderError> {
    let n = leq.size();
    if n == 0 {
        return Err(OrderError::Empty);
    }
    if n > MAX_ELEMS {
        return Err(OrderError::TooLarge(n));
    }
    let labels = match labels {
        Some(l) if l.len() != n => {
            return Err(OrderError::LabelCount { n, labels: l.len() })
        }
        Some(l) => l,
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    for i in 0..n {
        if !leq.get(i, i) {
            return Err(OrderError::NotReflexive(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq.get(i, j) && leq.get(j, i) {
                return Err(OrderError::NotAntisymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !leq.get(i, j) {
                continue;
            }
            for k in 0..n {
                if leq.get(j, k) && !leq.get(i, k) {
                    return Err(OrderError::NotTransitive(i, j, k));
                }
            }
        }
    }
    let up = (0..n)
        .map(|i| (0..n).filter(|&j| leq.get(i, j)).collect())
        .collect();
    let down = (0..n)
        .map(|i| (0..n).filter(|&j| leq.get(j, i)).collect())
        .collect();
    Ok(Poset {
        leq,
        labels,
        up,
        down,
    })
}

impl Poset {
    /// Builds a poset from generating pairs `a <= b`, closing them first.
    pub fn from_generators(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, OrderError> {
        let mut r = Relation::empty(labels.len());
        for &(a, b) in pairs {
            r.set(a, b, true);
        }
        validate_poset(r.reflexive_transitive_closure(), Some(labels))
    }

    pub fn chain(n: usize) -> Poset {
        validate_poset(Relation::from_fn(n, |i, j| i <= j), None).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        validate_poset(Relation::identity(n), None).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.leq.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Poset, OrderError> {
        validate_poset(self.leq.clone(), Some(labels))
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// `↑i`
    pub fn up(&self, i: usize) -> ElemSet {
        self.up[i]
    }

    /// `↓i`
    pub fn down(&self, i: usize) -> ElemSet {
        self.down[i]
    }

    pub fn is_up_closed(&self, s: ElemSet) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    pub fn is_down_closed(&self, s: ElemSet) -> bool {
        s.iter().all(|i| self.down[i].is_subset(s))
    }

    pub fn upper_bounds(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(self.all(), |acc, i| acc.intersection(self.up[i]))
    }

    pub fn lower_bounds(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(self.all(), |acc, i| acc.intersection(self.down[i]))
    }

    /// The least element of `s`, if it has one.
    pub fn least_in(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&i| s.is_subset(self.up[i]))
    }

    pub fn greatest_in(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&i| s.is_subset(self.down[i]))
    }

    pub fn lub(&self, s: ElemSet) -> Option<usize> {
        self.least_in(self.upper_bounds(s))
    }

    pub fn glb(&self, s: ElemSet) -> Option<usize> {
        self.greatest_in(self.lower_bounds(s))
    }

    pub fn minimal_elements(&self) -> ElemSet {
        (0..self.len())
            .filter(|&i| self.down[i].len() == 1)
            .collect()
    }

    /// The induced subposet on `elems`, in ascending index order.
    pub fn subposet(&self, elems: ElemSet) -> Poset {
        let idx = elems.to_vec();
        let rel = Relation::from_fn(idx.len(), |a, b| self.leq(idx[a], idx[b]));
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        validate_poset(rel, Some(labels)).expect("subposet of a poset")
    }

    /// Elements ordered so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }
}

/// Covering relation: `cover(i, j)` iff `i < j` with nothing strictly between.
pub fn hasse_cover(p: &Poset) -> Relation {
    let n = p.len();
    Relation::from_fn(n, |i, j| {
        p.lt(i, j) && !(0..n).any(|k| p.lt(i, k) && p.lt(k, j))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonotoneMap {
    table: Vec<usize>,
}

impl MonotoneMap {
    /// Validates `table` as a monotone map `dom -> cod`.
    pub fn new(dom: &Poset, cod: &Poset, table: Vec<usize>) -> Option<MonotoneMap> {
        if table.len() != dom.len() || table.iter().any(|&t| t >= cod.len()) {
            return None;
        }
        let m = MonotoneMap { table };
        m.is_monotone(dom, cod).then_some(m)
    }

    pub fn from_table_unchecked(table: Vec<usize>) -> MonotoneMap {
        MonotoneMap { table }
    }

    pub fn identity(n: usize) -> MonotoneMap {
        MonotoneMap {
            table: (0..n).collect(),
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }

    pub fn is_monotone(&self, dom: &Poset, cod: &Poset) -> bool {
        (0..dom.len()).all(|i| {
            (0..dom.len()).all(|j| !dom.leq(i, j) || cod.leq(self.table[i], self.table[j]))
        })
    }
}

/// Every monotone map `p -> q`, lexicographic in the table.
pub fn enumerate_monotone_maps(
    p: &Poset,
    q: &Poset,
    cap: u64,
) -> Result<Vec<MonotoneMap>, CapExceeded> {
    cap::check(cap::power(q.len(), p.len()), cap)?;
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(p.len());
    extend_monotone(p, q, &mut table, &mut out);
    Ok(out)
}

fn extend_monotone(p: &Poset, q: &Poset, table: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
    let i = table.len();
    if i == p.len() {
        out.push(MonotoneMap {
            table: table.clone(),
        });
        return;
    }
    for v in 0..q.len() {
        let ok = (0..i).all(|k| {
            (!p.leq(k, i) || q.leq(table[k], v)) && (!p.leq(i, k) || q.leq(v, table[k]))
        });
        if ok {
            table.push(v);
            extend_monotone(p, q, table, out);
            table.pop();
        }
    }
}

/// [`enumerate_monotone_maps`] with the default cap.
pub fn monotone_maps(p: &Poset, q: &Poset) -> Result<Vec<MonotoneMap>, CapExceeded> {
    enumerate_monotone_maps(p, q, DEFAULT_CAP)
}
