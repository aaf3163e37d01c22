//! Finite frames.
//!
//! Every finite distributive lattice is a frame, so [`Frame`] is a thin
//! wrapper over [`Lattice`] adding subset joins and the locale-theoretic
//! predicates. All predicates are decided directly from the tables; the
//! ones that quantify over directed families enumerate subsets literally.

use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, CapExceeded};
use crate::lattice::{validate_lattice, Lattice, Violation};
use crate::order::MonotoneMap;
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("map does not preserve the join of {0:?}")]
    NotJoinPreserving(Vec<usize>),
    #[error("not a frame homomorphism: {0}")]
    NotFrameHom(String),
    #[error("not a point: {0}")]
    NotPoint(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    lattice: Lattice,
}

impl Deref for Frame {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

impl From<Lattice> for Frame {
    fn from(lattice: Lattice) -> Frame {
        Frame { lattice }
    }
}

impl Frame {
    pub fn new(lattice: Lattice) -> Frame {
        Frame { lattice }
    }

    /// The 2-chain; stands in for the frame of truth values.
    pub fn two() -> Frame {
        Frame::new(Lattice::chain(2))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `⋁S`; the empty join is bottom.
    pub fn join_subset(&self, s: ElemSet) -> usize {
        self.join_all(s)
    }

    /// `U ⇒ V = ⋁{W : W ∧ U ≤ V}`.
    pub fn heyting(&self, u: usize, v: usize) -> usize {
        self.join_all(self.elements().filter(|&w| self.leq(self.meet(w, u), v)))
    }

    /// The unique `W` with `U ∧ W = ⊥` and `U ∨ W = ⊤`.
    pub fn complement(&self, u: usize) -> Option<usize> {
        self.elements()
            .find(|&w| self.meet(u, w) == self.bot() && self.join(u, w) == self.top())
    }

    pub fn is_clopen(&self, u: usize) -> bool {
        self.complement(u).is_some()
    }

    /// A `W` with `U ∧ W = ⊥` and `V ∨ W = ⊤`, witnessing `U ⋘ V`.
    pub fn well_inside_witness(&self, u: usize, v: usize) -> Option<usize> {
        self.elements()
            .find(|&w| self.meet(u, w) == self.bot() && self.join(v, w) == self.top())
    }

    pub fn well_inside(&self, u: usize, v: usize) -> bool {
        self.well_inside_witness(u, v).is_some()
    }

    /// Inhabited, and every pair has an upper bound inside the family.
    pub fn is_directed(&self, s: ElemSet) -> bool {
        let p = self.poset();
        !s.is_empty()
            && s.iter().all(|a| {
                s.iter()
                    .all(|b| !p.up(a).intersection(p.up(b)).intersection(s).is_empty())
            })
    }

    /// Every directed subset together with its join.
    pub fn directed_subsets(&self, cap: u64) -> Result<Vec<(ElemSet, usize)>, CapExceeded> {
        cap::check_subsets(self.len(), cap)?;
        Ok(ElemSet::all_subsets(self.len())
            .filter(|&s| self.is_directed(s))
            .map(|s| (s, self.join_subset(s)))
            .collect())
    }

    /// A directed family whose join is above `V` but none of whose members is
    /// above `U`; `None` means `U ≪ V`.
    pub fn way_below_counterexample(
        &self,
        u: usize,
        v: usize,
        cap: u64,
    ) -> Result<Option<ElemSet>, CapExceeded> {
        Ok(self
            .directed_subsets(cap)?
            .into_iter()
            .find(|&(s, j)| self.leq(v, j) && !s.iter().any(|x| self.leq(u, x)))
            .map(|(s, _)| s))
    }

    pub fn way_below(&self, u: usize, v: usize, cap: u64) -> Result<bool, CapExceeded> {
        Ok(self.way_below_counterexample(u, v, cap)?.is_none())
    }

    pub fn is_compact(&self, u: usize, cap: u64) -> Result<bool, CapExceeded> {
        self.way_below(u, u, cap)
    }

    /// Way-below as a full relation, sharing one directed-subset enumeration.
    pub fn way_below_relation(&self, cap: u64) -> Result<Vec<Vec<bool>>, CapExceeded> {
        let dirs = self.directed_subsets(cap)?;
        Ok(self
            .elements()
            .map(|u| {
                self.elements()
                    .map(|v| {
                        !dirs
                            .iter()
                            .any(|&(s, j)| self.leq(v, j) && !s.iter().any(|x| self.leq(u, x)))
                    })
                    .collect()
            })
            .collect())
    }

    pub fn compact_opens(&self, cap: u64) -> Result<ElemSet, CapExceeded> {
        let wb = self.way_below_relation(cap)?;
        Ok(self.elements().filter(|&u| wb[u][u]).collect())
    }

    pub fn clopens(&self) -> ElemSet {
        self.elements().filter(|&u| self.is_clopen(u)).collect()
    }

    /// `x ∧ ⋁S = ⋁{x ∧ s}` over every subset `S`; returns the first failure.
    pub fn subset_distributivity_failure(
        &self,
        cap: u64,
    ) -> Result<Option<(usize, ElemSet)>, CapExceeded> {
        cap::check_subsets(self.len(), cap)?;
        for s in ElemSet::all_subsets(self.len()) {
            let js = self.join_subset(s);
            for x in self.elements() {
                let rhs = self.join_all(s.iter().map(|y| self.meet(x, y)));
                if self.meet(x, js) != rhs {
                    return Ok(Some((x, s)));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub lattice_violations: Vec<Violation>,
    pub distributivity_failure: Option<(usize, Vec<usize>)>,
}

impl FrameReport {
    pub fn ok(&self) -> bool {
        self.lattice_violations.is_empty() && self.distributivity_failure.is_none()
    }
}

/// Lattice laws plus distributivity of meets over every subset join.
pub fn check_frame(f: &Frame, cap: u64) -> Result<FrameReport, CapExceeded> {
    let lattice_violations = validate_lattice(f);
    let distributivity_failure = if lattice_violations.is_empty() {
        f.subset_distributivity_failure(cap)?.map(|(x, s)| (x, s.to_vec()))
    } else {
        None
    };
    Ok(FrameReport {
        lattice_violations,
        distributivity_failure,
    })
}

/// `h(⊥) = ⊥` and `h(a ∨ b) = h(a) ∨ h(b)`; on a finite frame this is
/// preservation of every subset join.
pub fn join_preservation_failure(dom: &Frame, cod: &Frame, h: &[usize]) -> Option<Vec<usize>> {
    if h[dom.bot()] != cod.bot() {
        return Some(vec![]);
    }
    for a in dom.elements() {
        for b in a + 1..dom.len() {
            if h[dom.join(a, b)] != cod.join(h[a], h[b]) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

/// Right adjoint of a join-preserving map, `g(b) = ⋁{x : h(x) ≤ b}`.
pub fn right_adjoint(dom: &Frame, cod: &Frame, h: &MonotoneMap) -> Result<MonotoneMap, FrameError> {
    if let Some(w) = join_preservation_failure(dom, cod, h.table()) {
        return Err(FrameError::NotJoinPreserving(w));
    }
    let table = cod
        .elements()
        .map(|b| dom.join_all(dom.elements().filter(|&x| cod.leq(h.apply(x), b))))
        .collect();
    Ok(MonotoneMap::from_table_unchecked(table))
}

/// A family of frame elements indexed by `0..members.len()`; repetitions are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseFamily {
    pub members: Vec<usize>,
}

impl BaseFamily {
    pub fn new(members: Vec<usize>) -> BaseFamily {
        BaseFamily { members }
    }

    pub fn full(f: &Frame) -> BaseFamily {
        BaseFamily::new(f.elements().collect())
    }

    pub fn image(&self) -> ElemSet {
        self.members.iter().copied().collect()
    }

    /// Indices of members below `x`.
    pub fn covering_family(&self, f: &Frame, x: usize) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| f.leq(self.members[i], x))
            .collect()
    }

    /// The first element not equal to the join of the members below it.
    pub fn uncovered(&self, f: &Frame) -> Option<usize> {
        f.elements().find(|&x| {
            f.join_all(self.covering_family(f, x).into_iter().map(|i| self.members[i])) != x
        })
    }

    pub fn is_base(&self, f: &Frame) -> bool {
        self.uncovered(f).is_none()
    }
}

/// Closes a family under finite joins (including the empty join),
/// deduplicated and sorted by element index.
pub fn directify_base(f: &Frame, b: &BaseFamily, cap: u64) -> Result<BaseFamily, CapExceeded> {
    cap::check_subsets(b.members.len(), cap)?;
    let idx = ElemSet::full(b.members.len());
    let joins: ElemSet = idx
        .subsets()
        .map(|s| f.join_all(s.iter().map(|i| b.members[i])))
        .collect();
    Ok(BaseFamily::new(joins.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Certifying base.
    Base { members: Vec<usize> },
    /// Offending element.
    Element { element: usize, reason: String },
    /// Offending pair.
    Pair { left: usize, right: usize, reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub predicate: String,
    pub value: bool,
    pub witness: Witness,
}

impl ClassReport {
    fn yes(predicate: &str, members: ElemSet) -> ClassReport {
        ClassReport {
            predicate: predicate.to_string(),
            value: true,
            witness: Witness::Base {
                members: members.to_vec(),
            },
        }
    }

    fn no(predicate: &str, witness: Witness) -> ClassReport {
        ClassReport {
            predicate: predicate.to_string(),
            value: false,
            witness,
        }
    }
}

/// Compact top, compact opens closed under binary meets and forming a base.
/// The smallness condition holds trivially on a finite carrier.
pub fn is_spectral(f: &Frame, cap: u64) -> Result<ClassReport, CapExceeded> {
    let k = f.compact_opens(cap)?;
    let name = "spectral";
    if !k.contains(f.top()) {
        return Ok(ClassReport::no(
            name,
            Witness::Element {
                element: f.top(),
                reason: "top is not compact".into(),
            },
        ));
    }
    for a in k {
        for b in k {
            if !k.contains(f.meet(a, b)) {
                return Ok(ClassReport::no(
                    name,
                    Witness::Pair {
                        left: a,
                        right: b,
                        reason: "meet of compact opens is not compact".into(),
                    },
                ));
            }
        }
    }
    if let Some(x) = BaseFamily::new(k.to_vec()).uncovered(f) {
        return Ok(ClassReport::no(
            name,
            Witness::Element {
                element: x,
                reason: "not a join of compact opens".into(),
            },
        ));
    }
    Ok(ClassReport::yes(name, k))
}

/// Clopens form a base.
pub fn is_zero_dimensional(f: &Frame) -> ClassReport {
    let c = f.clopens();
    match BaseFamily::new(c.to_vec()).uncovered(f) {
        Some(x) => ClassReport::no(
            "zero_dimensional",
            Witness::Element {
                element: x,
                reason: "not a join of clopens".into(),
            },
        ),
        None => ClassReport::yes("zero_dimensional", c),
    }
}

/// Every element is the join of the elements well inside it.
pub fn is_regular(f: &Frame) -> ClassReport {
    let bad = f.elements().find(|&u| {
        f.join_all(f.elements().filter(|&w| f.well_inside(w, u))) != u
    });
    match bad {
        Some(x) => ClassReport::no(
            "regular",
            Witness::Element {
                element: x,
                reason: "not the join of the opens well inside it".into(),
            },
        ),
        None => ClassReport::yes("regular", f.all()),
    }
}

/// Compact and zero-dimensional.
pub fn is_stone(f: &Frame, cap: u64) -> Result<ClassReport, CapExceeded> {
    if !f.is_compact(f.top(), cap)? {
        return Ok(ClassReport::no(
            "stone",
            Witness::Element {
                element: f.top(),
                reason: "top is not compact".into(),
            },
        ));
    }
    let mut zd = is_zero_dimensional(f);
    zd.predicate = "stone".into();
    Ok(zd)
}

/// A table preserving top, bottom, binary meets and binary joins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrameHom {
    table: Vec<usize>,
}

impl FrameHom {
    pub fn new(dom: &Frame, cod: &Frame, table: Vec<usize>) -> Result<FrameHom, FrameError> {
        if table.len() != dom.len() || table.iter().any(|&v| v >= cod.len()) {
            return Err(FrameError::NotFrameHom("table shape".into()));
        }
        if table[dom.top()] != cod.top() {
            return Err(FrameError::NotFrameHom("top not preserved".into()));
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if table[dom.meet(a, b)] != cod.meet(table[a], table[b]) {
                    return Err(FrameError::NotFrameHom(format!("meet of ({a}, {b})")));
                }
            }
        }
        if let Some(w) = join_preservation_failure(dom, cod, &table) {
            return Err(FrameError::NotFrameHom(format!("join of {w:?}")));
        }
        Ok(FrameHom { table })
    }

    pub fn identity(n: usize) -> FrameHom {
        FrameHom {
            table: (0..n).collect(),
        }
    }

    pub(crate) fn from_table_unchecked(table: Vec<usize>) -> FrameHom {
        FrameHom { table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &FrameHom) -> FrameHom {
        FrameHom {
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    /// Exhaustive check that every subset join is preserved.
    pub fn preserves_subset_joins(
        &self,
        dom: &Frame,
        cod: &Frame,
        cap: u64,
    ) -> Result<bool, CapExceeded> {
        cap::check_subsets(dom.len(), cap)?;
        Ok(ElemSet::all_subsets(dom.len()).all(|s| {
            self.table[dom.join_subset(s)] == cod.join_all(s.iter().map(|x| self.table[x]))
        }))
    }
}

/// Every frame homomorphism `f -> g`, lexicographic in the table.
pub fn frame_homs(f: &Frame, g: &Frame, cap: u64) -> Result<Vec<FrameHom>, CapExceeded> {
    cap::check(cap::power(g.len(), f.len()), cap)?;
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(f.len());
    extend_hom(f, g, &mut table, &mut out);
    Ok(out)
}

fn extend_hom(f: &Frame, g: &Frame, table: &mut Vec<usize>, out: &mut Vec<FrameHom>) {
    let i = table.len();
    if i == f.len() {
        // pairs whose meet or join sits later in index order than both
        // arguments are only checkable here
        let full = f.elements().all(|a| {
            f.elements().all(|b| {
                table[f.meet(a, b)] == g.meet(table[a], table[b])
                    && table[f.join(a, b)] == g.join(table[a], table[b])
            })
        });
        if full {
            out.push(FrameHom {
                table: table.clone(),
            });
        }
        return;
    }
    let assigned = |t: &[usize], x: usize| (x <= i).then(|| t[x]);
    for v in 0..g.len() {
        if (i == f.top() && v != g.top()) || (i == f.bot() && v != g.bot()) {
            continue;
        }
        table.push(v);
        let ok = (0..=i).all(|a| {
            let consistent = |x: usize, expected: usize| {
                assigned(table, x).is_none_or(|got| got == expected)
            };
            consistent(f.meet(a, i), g.meet(table[a], v)) && consistent(f.join(a, i), g.join(table[a], v))
        });
        if ok {
            extend_hom(f, g, table, out);
        }
        table.pop();
    }
}

/// A completely prime filter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub filter: ElemSet,
}

impl Point {
    /// Checks every filter axiom, including complete primality over all
    /// subsets.
    pub fn new(f: &Frame, filter: ElemSet, cap: u64) -> Result<Point, FrameError> {
        let bad = |m: &str| Err(FrameError::NotPoint(m.into()));
        if !filter.contains(f.top()) {
            return bad("missing top");
        }
        if filter.contains(f.bot()) {
            return bad("contains bottom");
        }
        if !f.poset().is_up_closed(filter) {
            return bad("not upward closed");
        }
        if filter.iter().any(|a| filter.iter().any(|b| !filter.contains(f.meet(a, b)))) {
            return bad("not closed under meets");
        }
        cap::check_subsets(f.len(), cap)?;
        for s in ElemSet::all_subsets(f.len()) {
            if filter.contains(f.join_subset(s)) && s.intersection(filter).is_empty() {
                return Err(FrameError::NotPoint(format!(
                    "join of {:?} is in the filter but no member is",
                    s.to_vec()
                )));
            }
        }
        Ok(Point { filter })
    }

    /// The filter `h⁻¹(⊤)` of a homomorphism into the 2-chain.
    pub fn from_hom(h: &FrameHom) -> Point {
        Point {
            filter: (0..h.table().len()).filter(|&x| h.apply(x) == 1).collect(),
        }
    }

    /// The homomorphism into the 2-chain classifying the filter.
    pub fn to_hom(&self, f: &Frame) -> FrameHom {
        FrameHom::from_table_unchecked(
            f.elements().map(|x| self.filter.contains(x) as usize).collect(),
        )
    }
}

/// Points as frame homomorphisms into the 2-chain.
pub fn points(f: &Frame, cap: u64) -> Result<Vec<Point>, CapExceeded> {
    let mut pts: Vec<Point> = frame_homs(f, &Frame::two(), cap)?
        .iter()
        .map(Point::from_hom)
        .collect();
    pts.sort_by_key(|p| (p.filter.len(), p.filter.bits()));
    Ok(pts)
}
