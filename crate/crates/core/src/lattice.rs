//! Finite distributive lattices, lattice homomorphisms, isomorphism search and
//! the downset/join-irreducible representation used as an independent oracle.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, Budget, CapExceeded};
use crate::order::{hasse_cover, Poset, Relation};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("no meet for ({0}, {1})")]
    NoMeet(usize, usize),
    #[error("no join for ({0}, {1})")]
    NoJoin(usize, usize),
    #[error("no top element")]
    NoTop,
    #[error("no bottom element")]
    NoBot,
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// A finite distributive lattice with explicit operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    top: usize,
    bot: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

/// Derives meet/join tables from the order and checks distributivity.
pub fn build_lattice(poset: Poset) -> Result<Lattice, LatticeError> {
    let n = poset.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let pair = ElemSet::singleton(i).with(j);
            meet[i * n + j] = poset.glb(pair).ok_or(LatticeError::NoMeet(i, j))?;
            join[i * n + j] = poset.lub(pair).ok_or(LatticeError::NoJoin(i, j))?;
        }
    }
    let top = poset.greatest_in(poset.all()).ok_or(LatticeError::NoTop)?;
    let bot = poset.least_in(poset.all()).ok_or(LatticeError::NoBot)?;
    let l = Lattice {
        poset,
        top,
        bot,
        meet,
        join,
    };
    if let Some((x, y, z)) = l.distributivity_failure() {
        return Err(LatticeError::NotDistributive(x, y, z));
    }
    Ok(l)
}

impl Lattice {
    /// Assembles a lattice from raw tables without checking anything; use
    /// [`validate_lattice`] to audit the result.
    pub fn from_tables(
        poset: Poset,
        top: usize,
        bot: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
    ) -> Lattice {
        Lattice {
            poset,
            top,
            bot,
            meet,
            join,
        }
    }

    pub fn chain(n: usize) -> Lattice {
        build_lattice(Poset::chain(n)).expect("chains are distributive")
    }

    /// The powerset of a `k`-element set.
    pub fn boolean(k: usize) -> Lattice {
        downset_lattice(&Poset::antichain(k), u64::MAX).expect("small boolean lattice")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn all(&self) -> ElemSet {
        self.poset.all()
    }

    pub fn join_all(&self, s: impl IntoIterator<Item = usize>) -> usize {
        s.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, s: impl IntoIterator<Item = usize>) -> usize {
        s.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Same lattice with fresh display labels.
    pub fn relabel(&self, labels: Vec<String>) -> Lattice {
        Lattice {
            poset: self.poset.with_labels(labels).expect("same order"),
            ..self.clone()
        }
    }

    fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    TableShape,
    MeetAssociative,
    JoinAssociative,
    MeetCommutative,
    JoinCommutative,
    MeetIdempotent,
    JoinIdempotent,
    TopUnit,
    BotUnit,
    MeetAbsorption,
    JoinAbsorption,
    Distributive,
    DualDistributive,
    OrderAgreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// Checks every lattice law against the stored tables, returning one record
/// per failing law (with its first witness). An empty vector means valid.
pub fn validate_lattice(l: &Lattice) -> Vec<Violation> {
    let n = l.len();
    if l.meet.len() != n * n
        || l.join.len() != n * n
        || l.top >= n
        || l.bot >= n
        || l.meet.iter().chain(&l.join).any(|&v| v >= n)
    {
        return vec![Violation {
            axiom: Axiom::TableShape,
            witness: vec![],
        }];
    }
    let mut out = Vec::new();
    let mut check = |axiom: Axiom, arity: usize, law: &dyn Fn(&[usize]) -> bool| {
        let mut w = vec![0; arity];
        loop {
            if !law(&w) {
                out.push(Violation {
                    axiom,
                    witness: w.clone(),
                });
                return;
            }
            // odometer
            let mut k = 0;
            loop {
                if k == arity {
                    return;
                }
                w[k] += 1;
                if w[k] < n {
                    break;
                }
                w[k] = 0;
                k += 1;
            }
        }
    };
    let (m, j) = (|a, b| l.meet(a, b), |a, b| l.join(a, b));
    check(Axiom::MeetAssociative, 3, &|w| {
        m(m(w[0], w[1]), w[2]) == m(w[0], m(w[1], w[2]))
    });
    check(Axiom::JoinAssociative, 3, &|w| {
        j(j(w[0], w[1]), w[2]) == j(w[0], j(w[1], w[2]))
    });
    check(Axiom::MeetCommutative, 2, &|w| m(w[0], w[1]) == m(w[1], w[0]));
    check(Axiom::JoinCommutative, 2, &|w| j(w[0], w[1]) == j(w[1], w[0]));
    check(Axiom::MeetIdempotent, 1, &|w| m(w[0], w[0]) == w[0]);
    check(Axiom::JoinIdempotent, 1, &|w| j(w[0], w[0]) == w[0]);
    check(Axiom::TopUnit, 1, &|w| m(w[0], l.top) == w[0]);
    check(Axiom::BotUnit, 1, &|w| j(w[0], l.bot) == w[0]);
    check(Axiom::MeetAbsorption, 2, &|w| m(w[0], j(w[0], w[1])) == w[0]);
    check(Axiom::JoinAbsorption, 2, &|w| j(w[0], m(w[0], w[1])) == w[0]);
    check(Axiom::Distributive, 3, &|w| {
        m(w[0], j(w[1], w[2])) == j(m(w[0], w[1]), m(w[0], w[2]))
    });
    check(Axiom::DualDistributive, 3, &|w| {
        j(w[0], m(w[1], w[2])) == m(j(w[0], w[1]), j(w[0], w[2]))
    });
    check(Axiom::OrderAgreement, 2, &|w| {
        let le = l.leq(w[0], w[1]);
        le == (m(w[0], w[1]) == w[0]) && le == (j(w[0], w[1]) == w[1])
    });
    out
}

/// A table preserving top, bottom, binary meets and binary joins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeHom {
    table: Vec<usize>,
}

impl LatticeHom {
    pub fn new(dom: &Lattice, cod: &Lattice, table: Vec<usize>) -> Option<LatticeHom> {
        let h = LatticeHom { table };
        h.is_hom(dom, cod).then_some(h)
    }

    pub fn identity(n: usize) -> LatticeHom {
        LatticeHom {
            table: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_hom(&self, dom: &Lattice, cod: &Lattice) -> bool {
        let t = &self.table;
        t.len() == dom.len()
            && t.iter().all(|&v| v < cod.len())
            && t[dom.top()] == cod.top()
            && t[dom.bot()] == cod.bot()
            && dom.elements().all(|x| {
                dom.elements().all(|y| {
                    t[dom.meet(x, y)] == cod.meet(t[x], t[y])
                        && t[dom.join(x, y)] == cod.join(t[x], t[y])
                })
            })
    }

    pub fn is_monotone(&self, dom: &Lattice, cod: &Lattice) -> bool {
        dom.elements()
            .all(|x| dom.elements().all(|y| !dom.leq(x, y) || cod.leq(self.apply(x), self.apply(y))))
    }
}

/// Order-isomorphism test: bijective, and monotone in both directions.
pub fn is_iso(table: &[usize], dom: &Lattice, cod: &Lattice) -> bool {
    if table.len() != dom.len() || dom.len() != cod.len() {
        return false;
    }
    let image: ElemSet = table.iter().copied().collect();
    if table.iter().any(|&v| v >= cod.len()) || image.len() != cod.len() {
        return false;
    }
    dom.elements()
        .all(|x| dom.elements().all(|y| dom.leq(x, y) == cod.leq(table[x], table[y])))
}

/// All order isomorphisms `k -> l` (as lattice homs), in lexicographic order.
pub fn find_isos(k: &Lattice, l: &Lattice, cap: u64) -> Result<Vec<LatticeHom>, CapExceeded> {
    find_poset_isos(k.poset(), l.poset(), cap).map(|v| {
        v.into_iter()
            .map(|table| LatticeHom { table })
            .collect()
    })
}

/// All order isomorphisms between two posets, as tables. The search is
/// pruned by up/down-set sizes; `cap` bounds the nodes it visits.
pub fn find_poset_isos(p: &Poset, q: &Poset, cap: u64) -> Result<Vec<Vec<usize>>, CapExceeded> {
    if p.len() != q.len() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(p.len());
    extend_iso(p, q, &mut table, ElemSet::EMPTY, &mut out, &mut Budget::new(cap))?;
    Ok(out)
}

fn extend_iso(
    p: &Poset,
    q: &Poset,
    table: &mut Vec<usize>,
    used: ElemSet,
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<(), CapExceeded> {
    budget.tick()?;
    let i = table.len();
    if i == p.len() {
        out.push(table.clone());
        return Ok(());
    }
    for v in 0..q.len() {
        if used.contains(v) || p.up(i).len() != q.up(v).len() || p.down(i).len() != q.down(v).len() {
            continue;
        }
        let ok = (0..i).all(|k| p.leq(k, i) == q.leq(table[k], v) && p.leq(i, k) == q.leq(v, table[k]));
        if ok {
            table.push(v);
            extend_iso(p, q, table, used.with(v), out, budget)?;
            table.pop();
        }
    }
    Ok(())
}

pub fn isomorphic(k: &Lattice, l: &Lattice, cap: u64) -> Result<bool, CapExceeded> {
    Ok(!find_isos(k, l, cap)?.is_empty())
}

/// All downward-closed subsets of `p`, sorted by (cardinality, bits).
pub fn downsets(p: &Poset, cap: u64) -> Result<Vec<ElemSet>, CapExceeded> {
    cap::check_subsets(p.len(), cap)?;
    let mut out: Vec<ElemSet> = ElemSet::all_subsets(p.len())
        .filter(|&s| p.is_down_closed(s))
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    Ok(out)
}

/// Builds a lattice whose elements are the given subsets, ordered by
/// inclusion, with intersection and union as operations. The family must be
/// closed under both.
pub(crate) fn set_lattice(sets: &[ElemSet], labels: Vec<String>) -> Lattice {
    let n = sets.len();
    let index = |s: ElemSet| sets.iter().position(|&t| t == s).expect("closed family");
    let rel = Relation::from_fn(n, |a, b| sets[a].is_subset(sets[b]));
    let poset = crate::order::validate_poset(rel, Some(labels)).expect("inclusion order");
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index(sets[a].intersection(sets[b]));
            join[a * n + b] = index(sets[a].union(sets[b]));
        }
    }
    let bot = (0..n).min_by_key(|&a| sets[a].len()).expect("nonempty");
    let top = (0..n).max_by_key(|&a| sets[a].len()).expect("nonempty");
    Lattice::from_tables(poset, top, bot, meet, join)
}

pub(crate) fn set_label(p: &Poset, s: ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| p.label(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// The lattice of downsets of `p` under intersection and union.
pub fn downset_lattice(p: &Poset, cap: u64) -> Result<Lattice, CapExceeded> {
    let sets = downsets(p, cap)?;
    let labels = sets.iter().map(|&s| set_label(p, s)).collect();
    Ok(set_lattice(&sets, labels))
}

/// Elements other than bottom with exactly one lower cover.
pub fn join_irreducible_elements(l: &Lattice) -> ElemSet {
    let cover = hasse_cover(l.poset());
    l.elements()
        .filter(|&x| x != l.bot() && l.elements().filter(|&y| cover.get(y, x)).count() == 1)
        .collect()
}

/// The subposet of join-irreducible elements.
pub fn join_irreducibles(l: &Lattice) -> Poset {
    l.poset().subposet(join_irreducible_elements(l))
}
