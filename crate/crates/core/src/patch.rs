//! The patch of a finite frame: the frame of all its nuclei under the
//! pointwise order, with its base of `closed(K₁) ∧ open(K₂)` nuclei, the
//! embedding `U ↦ closed(U)` and the universal lift of maps into Stone frames.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, CapExceeded};
use crate::frame::{frame_homs, is_stone, BaseFamily, Frame, FrameError, FrameHom};
use crate::lattice::{validate_lattice, Lattice, Violation};
use crate::nuclei::{
    closed_nucleus, enumerate_nuclei, nucleus_join, nucleus_meet, open_nucleus, Nucleus,
};
use crate::order::{validate_poset, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchError {
    #[error("nuclei do not form a frame: {0:?}")]
    NotAFrame(Vec<Violation>),
    #[error("nucleus {0} does not preserve directed joins")]
    NotScottContinuous(usize),
    #[error("target frame is not Stone")]
    NotStone,
    #[error("patch is not Stone")]
    PatchNotStone,
    #[error(transparent)]
    NotFrameHom(#[from] FrameError),
    #[error("{0} has no complement")]
    NoComplement(usize),
    #[error("universal property fails for f = {f:?}: {reason}")]
    UpFailure { f: Vec<usize>, reason: String },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Debug, Clone)]
pub struct PatchFrame {
    pub base: Frame,
    /// `nuclei[i]` is the nucleus behind patch element `i`.
    pub nuclei: Vec<Nucleus>,
    pub frame: Frame,
}

impl PatchFrame {
    pub fn index_of(&self, j: &Nucleus) -> Option<usize> {
        self.nuclei.iter().position(|k| k == j)
    }

    fn index(&self, j: &Nucleus) -> usize {
        self.index_of(j).expect("every nucleus is a patch element")
    }
}

/// Display name: `c_U` or `o_U` where one applies (with `U ≠ ⊤`, so the
/// identity reads `c_⊥` and the top nucleus `o_⊥`), then `c_K∧o_L`, then the
/// raw table.
pub fn nucleus_label(x: &Frame, j: &Nucleus) -> String {
    let non_top = || x.elements().filter(|&u| u != x.top());
    if let Some(u) = non_top().find(|&u| closed_nucleus(x, u) == *j) {
        return format!("c_{}", x.label(u));
    }
    if let Some(u) = non_top().find(|&u| open_nucleus(x, u) == *j) {
        return format!("o_{}", x.label(u));
    }
    for k1 in x.elements() {
        for k2 in x.elements() {
            if nucleus_meet(x, &closed_nucleus(x, k1), &open_nucleus(x, k2)) == *j {
                return format!("c_{}∧o_{}", x.label(k1), x.label(k2));
            }
        }
    }
    let t: Vec<&str> = j.table().iter().map(|&v| x.label(v)).collect();
    format!("j[{}]", t.join(","))
}

pub fn patch(x: &Frame, cap: u64) -> Result<PatchFrame, PatchError> {
    let nuclei = enumerate_nuclei(x, cap)?;
    // every nucleus on a finite frame is Scott-continuous
    let directed = x.directed_subsets(cap)?;
    for (i, j) in nuclei.iter().enumerate() {
        let ok = directed
            .iter()
            .all(|&(s, top)| j.apply(top) == x.join_all(s.iter().map(|u| j.apply(u))));
        if !ok {
            return Err(PatchError::NotScottContinuous(i));
        }
    }
    let n = nuclei.len();
    let rel = Relation::from_fn(n, |a, b| nuclei[a].leq(x, &nuclei[b]));
    let labels = nuclei.iter().map(|j| nucleus_label(x, j)).collect();
    let poset = validate_poset(rel, Some(labels)).expect("pointwise order");
    let index = |j: &Nucleus| nuclei.iter().position(|k| k == j).expect("closed");
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let m = index(&nucleus_meet(x, &nuclei[a], &nuclei[b]));
            let j = index(&nucleus_join(x, &[nuclei[a].clone(), nuclei[b].clone()]));
            meet[a * n + b] = m;
            meet[b * n + a] = m;
            join[a * n + b] = j;
            join[b * n + a] = j;
        }
    }
    let top = index(&Nucleus::top(x));
    let bot = index(&Nucleus::identity(x));
    let lattice = Lattice::from_tables(poset, top, bot, meet, join);
    let violations = validate_lattice(&lattice);
    if !violations.is_empty() {
        return Err(PatchError::NotAFrame(violations));
    }
    let frame = Frame::new(lattice);
    if !is_stone(&frame, cap)?.value {
        return Err(PatchError::PatchNotStone);
    }
    Ok(PatchFrame {
        base: x.clone(),
        nuclei,
        frame,
    })
}

/// `γ(K₁, K₂) = closed(K₁) ∧ open(K₂)` over pairs of compact opens.
#[derive(Debug, Clone, Serialize)]
pub struct PatchBase {
    pub family: BaseFamily,
    pub pairs: Vec<(usize, usize)>,
}

pub fn patch_base(p: &PatchFrame, cap: u64) -> Result<PatchBase, CapExceeded> {
    let x = &p.base;
    let k = x.compact_opens(cap)?;
    let mut pairs = Vec::new();
    let mut members = Vec::new();
    for k1 in k {
        for k2 in k {
            let g = nucleus_meet(x, &closed_nucleus(x, k1), &open_nucleus(x, k2));
            pairs.push((k1, k2));
            members.push(p.index(&g));
        }
    }
    Ok(PatchBase {
        family: BaseFamily::new(members),
        pairs,
    })
}

/// `ε*: U ↦ closed(U)` and its right adjoint `ε_*: j ↦ j(⊥)`.
#[derive(Debug, Clone, Serialize)]
pub struct Epsilon {
    pub upper: FrameHom,
    pub lower: Vec<usize>,
}

pub fn epsilon(p: &PatchFrame) -> Result<Epsilon, PatchError> {
    let x = &p.base;
    let upper = x
        .elements()
        .map(|u| p.index(&closed_nucleus(x, u)))
        .collect();
    let upper = FrameHom::new(x, &p.frame, upper)?;
    let lower = p.nuclei.iter().map(|j| j.apply(x.bot())).collect();
    Ok(Epsilon { upper, lower })
}

impl Epsilon {
    /// `ε*(U) ≤ j ⟺ U ≤ ε_*(j)` for every pair.
    pub fn adjunction_holds(&self, p: &PatchFrame) -> bool {
        p.base.elements().all(|u| {
            p.frame.elements().all(|j| {
                p.frame.leq(self.upper.apply(u), j) == p.base.leq(u, self.lower[j])
            })
        })
    }

    pub fn lower_preserves_directed_joins(&self, p: &PatchFrame, cap: u64) -> Result<bool, CapExceeded> {
        Ok(p.frame.directed_subsets(cap)?.into_iter().all(|(s, j)| {
            self.lower[j] == p.base.join_all(s.iter().map(|i| self.lower[i]))
        }))
    }
}

/// `f̄*(j) = ⋁_K f*(j(K)) ∧ ¬f*(K)` over compact `K`, for `f*: A → X` with
/// `X` Stone.
pub fn universal_map(
    a: &Frame,
    pa: &PatchFrame,
    x: &Frame,
    f: &FrameHom,
    cap: u64,
) -> Result<FrameHom, PatchError> {
    if !is_stone(x, cap)?.value {
        return Err(PatchError::NotStone);
    }
    let f = FrameHom::new(a, x, f.table().to_vec())?;
    let compacts = a.compact_opens(cap)?;
    let table = pa
        .nuclei
        .iter()
        .map(|j| {
            let mut acc = x.bot();
            for k in compacts {
                let neg = x.complement(f.apply(k)).ok_or(PatchError::NoComplement(f.apply(k)))?;
                acc = x.join(acc, x.meet(f.apply(j.apply(k)), neg));
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>, PatchError>>()?;
    Ok(FrameHom::new(&pa.frame, x, table)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct UpEntry {
    pub f: Vec<usize>,
    pub lift: Vec<usize>,
    pub commutes: bool,
    /// Number of homs `Patch A → X` commuting with `ε*`; `None` when
    /// uniqueness was skipped.
    pub commuting_lifts: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PatchUpCertificate {
    pub entries: Vec<UpEntry>,
    pub uniqueness_checked: bool,
}

/// For every frame hom `f: A → X`, the lift commutes with `ε*`, and (when the
/// hom space fits the cap) it is the only hom that does.
pub fn verify_patch_up(a: &Frame, x: &Frame, cap: u64) -> Result<PatchUpCertificate, PatchError> {
    if !is_stone(x, cap)?.value {
        return Err(PatchError::NotStone);
    }
    let pa = patch(a, cap)?;
    let eps = epsilon(&pa)?;
    let lifts_space = cap::check(cap::power(x.len(), pa.frame.len()), cap);
    let all_lifts = match lifts_space {
        Ok(()) => Some(frame_homs(&pa.frame, x, cap)?),
        Err(_) => None,
    };
    let mut entries = Vec::new();
    for f in frame_homs(a, x, cap)? {
        let lift = universal_map(a, &pa, x, &f, cap)?;
        let commutes = lift.after(&eps.upper) == f;
        if !commutes {
            return Err(PatchError::UpFailure {
                f: f.table().to_vec(),
                reason: "lift does not commute with ε*".into(),
            });
        }
        let commuting_lifts = all_lifts.as_ref().map(|gs| {
            gs.iter().filter(|g| g.after(&eps.upper) == f).collect::<Vec<_>>()
        });
        if let Some(gs) = &commuting_lifts {
            if gs.len() != 1 || *gs[0] != lift {
                return Err(PatchError::UpFailure {
                    f: f.table().to_vec(),
                    reason: format!("{} commuting homs found", gs.len()),
                });
            }
        }
        entries.push(UpEntry {
            f: f.table().to_vec(),
            lift: lift.table().to_vec(),
            commutes,
            commuting_lifts: commuting_lifts.map(|g| g.len()),
        });
    }
    Ok(PatchUpCertificate {
        entries,
        uniqueness_checked: all_lifts.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::isomorphic;

    const CAP: u64 = 1 << 20;

    fn sierpinski() -> Frame {
        Frame::new(Lattice::chain(3).relabel(vec!["⊥".into(), "true".into(), "⊤".into()]))
    }

    #[test]
    fn small_patches() {
        let p2 = patch(&Frame::two(), CAP).unwrap();
        assert!(isomorphic(&p2.frame, &Lattice::chain(2), 100).unwrap());
        let ps = patch(&sierpinski(), CAP).unwrap();
        assert!(isomorphic(&ps.frame, &Lattice::boolean(2), 100).unwrap());
        let b4 = Frame::new(Lattice::boolean(2));
        assert!(isomorphic(&patch(&b4, CAP).unwrap().frame, &b4, 100).unwrap());
    }

    #[test]
    fn sierpinski_labels() {
        let ps = patch(&sierpinski(), CAP).unwrap();
        let label = |j: &Nucleus| ps.frame.label(ps.index(j)).to_string();
        let s = &ps.base;
        assert_eq!(label(&Nucleus::identity(s)), "c_⊥");
        assert_eq!(label(&closed_nucleus(s, 1)), "c_true");
        assert_eq!(label(&open_nucleus(s, 1)), "o_true");
        assert_eq!(label(&Nucleus::top(s)), "o_⊥");
    }

    #[test]
    fn base_members() {
        let ps = patch(&sierpinski(), CAP).unwrap();
        let base = patch_base(&ps, CAP).unwrap();
        assert!(base.family.is_base(&ps.frame));
        let at = |k1, k2| {
            let i = base.pairs.iter().position(|&p| p == (k1, k2)).unwrap();
            ps.nuclei[base.family.members[i]].clone()
        };
        assert_eq!(at(0, 2), Nucleus::identity(&ps.base));
        // the top nucleus closed(⊤) = open(⊥) is the unit for ∧
        assert_eq!(at(1, 0), closed_nucleus(&ps.base, 1));
        assert_eq!(at(2, 1), open_nucleus(&ps.base, 1));
        assert_eq!(at(1, 2), Nucleus::identity(&ps.base));
        for &m in &base.family.members {
            assert!(ps.frame.is_clopen(m));
        }
    }

    #[test]
    fn epsilon_adjunction() {
        let ps = patch(&sierpinski(), CAP).unwrap();
        let e = epsilon(&ps).unwrap();
        assert_eq!(e.upper.apply(0), ps.index(&Nucleus::identity(&ps.base)));
        assert_eq!(e.lower[ps.index(&Nucleus::top(&ps.base))], 2);
        assert_eq!(e.lower[ps.index(&open_nucleus(&ps.base, 1))], 0);
        assert!(e.adjunction_holds(&ps));
        assert!(e.lower_preserves_directed_joins(&ps, CAP).unwrap());
    }

    #[test]
    fn universal_lifts() {
        let s = sierpinski();
        let ps = patch(&s, CAP).unwrap();
        let b4 = Frame::new(Lattice::boolean(2));
        // ⊥ ↦ ∅, true ↦ {0}, ⊤ ↦ {0,1}
        let f = FrameHom::new(&s, &b4, vec![0, 1, 3]).unwrap();
        let lift = universal_map(&s, &ps, &b4, &f, CAP).unwrap();
        assert!(crate::lattice::is_iso(lift.table(), &ps.frame, &b4));
        let two = Frame::two();
        let g = FrameHom::new(&s, &two, vec![0, 1, 1]).unwrap();
        let lift = universal_map(&s, &ps, &two, &g, CAP).unwrap();
        assert_eq!(lift.apply(ps.index(&closed_nucleus(&s, 1))), 1);
        assert_eq!(
            universal_map(&two, &patch(&two, CAP).unwrap(), &s, &FrameHom::identity(2), CAP).unwrap_err(),
            PatchError::NotStone
        );
    }

    #[test]
    fn up_certificates() {
        let s = sierpinski();
        let two = Frame::two();
        let cert = verify_patch_up(&s, &two, CAP).unwrap();
        assert_eq!(cert.entries.len(), 2);
        assert!(cert.uniqueness_checked);
        let cert = verify_patch_up(&two, &two, CAP).unwrap();
        assert_eq!(cert.entries[0].lift, vec![0, 1]);
    }
}
