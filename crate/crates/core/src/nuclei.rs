//! Nuclei on finite frames.
//!
//! A nucleus is stored as its table; equality is table equality. Joins of
//! families are computed as least fixed points: the value of the join at `U`
//! is the least element above `U` that every member fixes, reached by
//! iterating `V ↦ ⋁ᵢ kᵢ(V)` from `U`. Each iterate is dominated by some finite
//! composition of the members, so the result agrees with the join over all
//! finite compositions.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{Budget, CapExceeded};
use crate::frame::Frame;
use crate::lattice::Lattice;
use crate::order::{validate_poset, Relation};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NucleusError {
    #[error("table has {got} entries, frame has {want} elements")]
    Shape { got: usize, want: usize },
    #[error("not inflationary at {0}")]
    NotInflationary(usize),
    #[error("does not preserve the meet of ({0}, {1})")]
    NotMeetPreserving(usize, usize),
    #[error("not idempotent at {0}")]
    NotIdempotent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Nucleus {
    table: Vec<usize>,
}

/// Inflationary and meet-preserving, not necessarily idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Prenucleus {
    table: Vec<usize>,
}

impl Prenucleus {
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_monotone(&self, f: &Frame) -> bool {
        f.elements()
            .all(|x| f.elements().all(|y| !f.leq(x, y) || f.leq(self.table[x], self.table[y])))
    }
}

fn check_prenucleus(f: &Frame, table: &[usize]) -> Result<(), NucleusError> {
    if table.len() != f.len() || table.iter().any(|&v| v >= f.len()) {
        return Err(NucleusError::Shape {
            got: table.len(),
            want: f.len(),
        });
    }
    if let Some(u) = f.elements().find(|&u| !f.leq(u, table[u])) {
        return Err(NucleusError::NotInflationary(u));
    }
    for u in f.elements() {
        for v in u + 1..f.len() {
            if table[f.meet(u, v)] != f.meet(table[u], table[v]) {
                return Err(NucleusError::NotMeetPreserving(u, v));
            }
        }
    }
    Ok(())
}

pub fn validate_prenucleus(f: &Frame, table: Vec<usize>) -> Result<Prenucleus, NucleusError> {
    check_prenucleus(f, &table)?;
    Ok(Prenucleus { table })
}

pub fn validate_nucleus(f: &Frame, table: Vec<usize>) -> Result<Nucleus, NucleusError> {
    check_prenucleus(f, &table)?;
    if let Some(u) = f.elements().find(|&u| table[table[u]] != table[u]) {
        return Err(NucleusError::NotIdempotent(u));
    }
    Ok(Nucleus { table })
}

impl Nucleus {
    pub fn identity(f: &Frame) -> Nucleus {
        Nucleus {
            table: f.elements().collect(),
        }
    }

    /// The constant map at top.
    pub fn top(f: &Frame) -> Nucleus {
        Nucleus {
            table: vec![f.top(); f.len()],
        }
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn fixed_points(&self) -> ElemSet {
        (0..self.table.len()).filter(|&x| self.table[x] == x).collect()
    }

    /// Pointwise order.
    pub fn leq(&self, f: &Frame, other: &Nucleus) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| f.leq(a, b))
    }

    /// Preservation of joins of directed subsets, checked exhaustively.
    pub fn preserves_directed_joins(&self, f: &Frame, cap: u64) -> Result<bool, CapExceeded> {
        Ok(f.directed_subsets(cap)?
            .into_iter()
            .all(|(s, j)| self.table[j] == f.join_all(s.iter().map(|x| self.table[x]))))
    }
}

/// `V ↦ U ∨ V`
pub fn closed_nucleus(f: &Frame, u: usize) -> Nucleus {
    Nucleus {
        table: f.elements().map(|v| f.join(u, v)).collect(),
    }
}

/// `V ↦ U ⇒ V`
pub fn open_nucleus(f: &Frame, u: usize) -> Nucleus {
    Nucleus {
        table: f.elements().map(|v| f.heyting(u, v)).collect(),
    }
}

/// Pointwise meet.
pub fn nucleus_meet(f: &Frame, j: &Nucleus, k: &Nucleus) -> Nucleus {
    Nucleus {
        table: f.elements().map(|u| f.meet(j.table[u], k.table[u])).collect(),
    }
}

/// Least upper bound of a family of nuclei; the empty join is the identity.
pub fn nucleus_join(f: &Frame, family: &[Nucleus]) -> Nucleus {
    let table = f
        .elements()
        .map(|u| {
            let mut v = u;
            loop {
                let next = family.iter().fold(v, |acc, k| f.join(acc, k.table[v]));
                if next == v {
                    return v;
                }
                v = next;
            }
        })
        .collect();
    Nucleus { table }
}

/// Pointwise join; equals [`nucleus_join`] for directed families.
pub fn pointwise_join(f: &Frame, family: &[Nucleus]) -> Vec<usize> {
    f.elements()
        .map(|u| f.join_all(family.iter().map(|k| k.table[u])))
        .collect()
}

/// `k[s_{n-1}] ∘ ... ∘ k[s_0]`
pub fn finite_composition(f: &Frame, family: &[Nucleus], s: &[usize]) -> Prenucleus {
    let table = f
        .elements()
        .map(|u| s.iter().fold(u, |v, &i| family[i].table[v]))
        .collect();
    Prenucleus { table }
}

/// The fixed points of a nucleus as a frame, with its inclusion into the
/// ambient frame.
#[derive(Debug, Clone)]
pub struct Sublocale {
    pub frame: Frame,
    /// `inclusion[i]` is the ambient element for sublocale element `i`.
    pub inclusion: Vec<usize>,
}

impl Sublocale {
    /// The surjection `U ↦ j(U)`, as sublocale indices.
    pub fn reflection(&self, j: &Nucleus) -> Vec<usize> {
        j.table
            .iter()
            .map(|v| self.inclusion.iter().position(|w| w == v).expect("fixed"))
            .collect()
    }
}

pub fn sublocale_frame(f: &Frame, j: &Nucleus) -> Sublocale {
    let inclusion = j.fixed_points().to_vec();
    let n = inclusion.len();
    let index = |v: usize| inclusion.iter().position(|&w| w == v).expect("fixed point");
    let rel = Relation::from_fn(n, |a, b| f.leq(inclusion[a], inclusion[b]));
    let labels = inclusion.iter().map(|&v| f.label(v).to_string()).collect();
    let poset = validate_poset(rel, Some(labels)).expect("suborder");
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index(f.meet(inclusion[a], inclusion[b]));
            join[a * n + b] = index(j.table[f.join(inclusion[a], inclusion[b])]);
        }
    }
    let lattice = Lattice::from_tables(poset, index(f.top()), index(j.table[f.bot()]), meet, join);
    Sublocale {
        frame: Frame::new(lattice),
        inclusion,
    }
}

/// Every nucleus on `f`, sorted by table.
///
/// Backtracking over a linear extension, keeping only inflationary monotone
/// partial tables that preserve meets among assigned elements; `cap` bounds
/// the number of search nodes.
pub fn enumerate_nuclei(f: &Frame, cap: u64) -> Result<Vec<Nucleus>, CapExceeded> {
    let order = f.poset().linear_extension();
    let mut table = vec![usize::MAX; f.len()];
    let mut out = Vec::new();
    let mut budget = Budget::new(cap);
    search_nuclei(f, &order, 0, &mut table, &mut out, &mut budget)?;
    out.sort();
    Ok(out)
}

fn search_nuclei(
    f: &Frame,
    order: &[usize],
    depth: usize,
    table: &mut Vec<usize>,
    out: &mut Vec<Nucleus>,
    budget: &mut Budget,
) -> Result<(), CapExceeded> {
    budget.tick()?;
    if depth == order.len() {
        if f.elements().all(|u| table[table[u]] == table[u]) {
            out.push(Nucleus {
                table: table.clone(),
            });
        }
        return Ok(());
    }
    let x = order[depth];
    let assigned = &order[..depth];
    for v in f.poset().up(x) {
        // an assigned element mapped onto x must be fixed by x's image
        if assigned.iter().any(|&z| table[z] == x) && v != x {
            continue;
        }
        // x's image, if already assigned, must be fixed
        if v != x && table[v] != usize::MAX && table[v] != v {
            continue;
        }
        let ok = assigned.iter().all(|&y| {
            let m = f.meet(x, y);
            let jm = if m == x { v } else { table[m] };
            jm == f.meet(v, table[y]) && (!f.leq(y, x) || f.leq(table[y], v))
        });
        if ok {
            table[x] = v;
            search_nuclei(f, order, depth + 1, table, out, budget)?;
            table[x] = usize::MAX;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct JohnstoneTerm {
    pub compact: usize,
    pub nucleus: Nucleus,
}

/// `closed(j(K)) ∧ open(K)` for every compact `K`; their join is `j`.
pub fn johnstone_decompose(f: &Frame, j: &Nucleus, cap: u64) -> Result<Vec<JohnstoneTerm>, CapExceeded> {
    Ok(f.compact_opens(cap)?
        .iter()
        .map(|k| JohnstoneTerm {
            compact: k,
            nucleus: nucleus_meet(f, &closed_nucleus(f, j.apply(k)), &open_nucleus(f, k)),
        })
        .collect())
}

/// Parses `j: 0->a a->a 1->1` against the frame's labels.
pub fn parse_table(f: &Frame, text: &str) -> Result<Vec<usize>, String> {
    let body = text.trim();
    let body = body.strip_prefix("j:").unwrap_or(body);
    let mut table = vec![None; f.len()];
    for tok in body.split_whitespace() {
        let (a, b) = tok
            .split_once("->")
            .ok_or_else(|| format!("expected `x->y`, got `{tok}`"))?;
        let idx = |s: &str| {
            f.poset()
                .index_of(s)
                .ok_or_else(|| format!("unknown element `{s}`"))
        };
        let (a, b) = (idx(a)?, idx(b)?);
        if table[a].replace(b).is_some() {
            return Err(format!("element `{}` mapped twice", f.label(a)));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("element `{}` not mapped", f.label(i))))
        .collect()
}

pub fn format_table(f: &Frame, j: &[usize]) -> String {
    let parts: Vec<String> = j
        .iter()
        .enumerate()
        .map(|(u, &v)| format!("{}->{}", f.label(u), f.label(v)))
        .collect();
    format!("j: {}", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Frame {
        Frame::new(Lattice::chain(3))
    }

    #[test]
    fn validation() {
        let f = c3();
        assert!(validate_nucleus(&f, vec![0, 1, 2]).is_ok());
        assert!(validate_nucleus(&f, vec![2, 2, 2]).is_ok());
        assert_eq!(
            validate_nucleus(&f, vec![1, 2, 2]),
            Err(NucleusError::NotIdempotent(0))
        );
        assert_eq!(
            validate_nucleus(&f, vec![0, 0, 2]),
            Err(NucleusError::NotInflationary(1))
        );
        assert!(validate_prenucleus(&f, vec![1, 2, 2]).is_ok());
    }

    #[test]
    fn closed_and_open() {
        let f = c3();
        assert_eq!(closed_nucleus(&f, 0), Nucleus::identity(&f));
        assert_eq!(open_nucleus(&f, 2), Nucleus::identity(&f));
        assert_eq!(closed_nucleus(&f, 1).table(), &[1, 1, 2]);
        assert_eq!(open_nucleus(&f, 1).table(), &[0, 2, 2]);
        for u in f.elements() {
            validate_nucleus(&f, closed_nucleus(&f, u).table).unwrap();
            validate_nucleus(&f, open_nucleus(&f, u).table).unwrap();
        }
    }

    #[test]
    fn meets_and_joins() {
        let f = c3();
        let (c, o) = (closed_nucleus(&f, 1), open_nucleus(&f, 1));
        assert_eq!(nucleus_meet(&f, &c, &o), Nucleus::identity(&f));
        assert_eq!(nucleus_meet(&f, &c, &Nucleus::top(&f)), c);
        assert_eq!(nucleus_meet(&f, &c, &c), c);
        assert_eq!(nucleus_join(&f, &[c.clone(), o.clone()]), Nucleus::top(&f));
        assert_eq!(nucleus_join(&f, &[]), Nucleus::identity(&f));
        assert_eq!(nucleus_join(&f, std::slice::from_ref(&c)), c);
    }

    #[test]
    fn sublocales() {
        let f = c3();
        let s = sublocale_frame(&f, &closed_nucleus(&f, 1));
        assert_eq!(s.inclusion, vec![1, 2]);
        assert_eq!(s.frame.len(), 2);
        assert_eq!(sublocale_frame(&f, &Nucleus::top(&f)).frame.len(), 1);
        assert_eq!(sublocale_frame(&f, &Nucleus::identity(&f)).frame, f);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nuclei(&Frame::two(), 1000).unwrap().len(), 2);
        let f = c3();
        let mut want = vec![
            Nucleus::identity(&f),
            closed_nucleus(&f, 1),
            open_nucleus(&f, 1),
            Nucleus::top(&f),
        ];
        want.sort();
        assert_eq!(enumerate_nuclei(&f, 1000).unwrap(), want);
        assert_eq!(enumerate_nuclei(&Frame::new(Lattice::boolean(2)), 1000).unwrap().len(), 4);
        assert!(enumerate_nuclei(&Frame::new(Lattice::boolean(3)), 3).is_err());
    }

    #[test]
    fn johnstone_small() {
        let f = c3();
        for j in enumerate_nuclei(&f, 1000).unwrap() {
            let terms = johnstone_decompose(&f, &j, 1 << 20).unwrap();
            let fam: Vec<_> = terms.into_iter().map(|t| t.nucleus).collect();
            assert_eq!(nucleus_join(&f, &fam), j);
        }
    }

    #[test]
    fn table_syntax() {
        let f = Frame::new(Lattice::chain(3).relabel(vec!["0".into(), "a".into(), "1".into()]));
        let t = parse_table(&f, "j: 0->a a->a 1->1").unwrap();
        assert_eq!(t, vec![1, 1, 2]);
        assert_eq!(format_table(&f, &t), "j: 0->a a->a 1->1");
        assert!(parse_table(&f, "j: 0->a").is_err());
    }
}
