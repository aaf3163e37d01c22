//! Finite Scott domains and their Scott locales.
//!
//! Every element of a finite domain is compact, so the Scott opens are just
//! the up-sets, every ideal of compact elements is principal, and every
//! element is sharp. Reports state this collapse rather than hide it; the
//! checks below still run each construction through its general definition.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, CapExceeded};
use crate::frame::{is_spectral, points, BaseFamily, ClassReport, Frame, FrameHom, Point};
use crate::lattice::{set_label, set_lattice, Lattice};
use crate::order::Poset;
use crate::patch::{epsilon, patch, universal_map, PatchError};
use crate::set::ElemSet;

pub const FINITE_COLLAPSE_NOTE: &str = "finite domain: every element is compact and sharp, \
every ideal of compact elements is principal";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScottError {
    #[error("bottom {0} is not below every element")]
    NotPointed(usize),
    #[error("bounded subset {0:?} has no least upper bound")]
    NotBoundedComplete(Vec<usize>),
    #[error("bijection check failed: {0}")]
    BijectionFailure(String),
    #[error("no unique homomorphism sending truth to {open}: found {found}")]
    UpFailure { open: usize, found: usize },
    #[error(transparent)]
    Patch(#[from] PatchError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottDomain {
    poset: Poset,
    bot: usize,
}

pub fn validate_scott_domain(poset: Poset, bot: usize, cap: u64) -> Result<ScottDomain, ScottError> {
    if let Some(x) = (0..poset.len()).find(|&x| !poset.leq(bot, x)) {
        return Err(ScottError::NotPointed(x));
    }
    cap::check_subsets(poset.len(), cap)?;
    for s in ElemSet::all_subsets(poset.len()) {
        if !poset.upper_bounds(s).is_empty() && poset.lub(s).is_none() {
            return Err(ScottError::NotBoundedComplete(s.to_vec()));
        }
    }
    Ok(ScottDomain { poset, bot })
}

impl ScottDomain {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// A chain of `n` elements.
    pub fn chain(n: usize) -> ScottDomain {
        ScottDomain {
            poset: Poset::chain(n),
            bot: 0,
        }
    }

    /// `⊥` below `k` pairwise incomparable elements.
    pub fn flat(k: usize) -> ScottDomain {
        let mut labels = vec!["⊥".to_string()];
        labels.extend((0..k).map(|i| format!("x{i}")));
        let pairs: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        ScottDomain {
            poset: Poset::from_generators(labels, &pairs).expect("flat order"),
            bot: 0,
        }
    }

    /// `∃u. x ≤ u ∧ y ≤ u`
    pub fn bounded_above(&self, x: usize, y: usize) -> bool {
        !self.poset.up(x).intersection(self.poset.up(y)).is_empty()
    }
}

/// `↑c`
pub fn upset(d: &ScottDomain, c: usize) -> ElemSet {
    d.poset.up(c)
}

/// SO1: upward closed.
pub fn is_upward_closed(d: &ScottDomain, u: ElemSet) -> bool {
    d.poset.is_up_closed(u)
}

/// SO2: a directed subset whose join lies in `u` meets `u`.
pub fn is_inaccessible_by_directed_joins(d: &ScottDomain, u: ElemSet, cap: u64) -> Result<bool, CapExceeded> {
    cap::check_subsets(d.len(), cap)?;
    let p = &d.poset;
    let directed = |s: ElemSet| {
        !s.is_empty()
            && s.iter()
                .all(|a| s.iter().all(|b| !p.up(a).intersection(p.up(b)).intersection(s).is_empty()))
    };
    Ok(ElemSet::all_subsets(d.len())
        .filter(|&s| directed(s))
        .all(|s| match p.lub(s) {
            Some(j) if u.contains(j) => !s.intersection(u).is_empty(),
            _ => true,
        }))
}

/// The frame of Scott opens, with `opens[i]` the up-set behind element `i`.
#[derive(Debug, Clone)]
pub struct ScottLocale {
    pub frame: Frame,
    pub opens: Vec<ElemSet>,
}

impl ScottLocale {
    pub fn index_of(&self, u: ElemSet) -> Option<usize> {
        self.opens.iter().position(|&v| v == u)
    }
}

pub fn scott_frame(d: &ScottDomain, cap: u64) -> Result<ScottLocale, CapExceeded> {
    cap::check_subsets(d.len(), cap)?;
    let mut opens: Vec<ElemSet> = ElemSet::all_subsets(d.len())
        .filter(|&s| is_upward_closed(d, s))
        .collect();
    opens.sort_by_key(|s| (s.len(), s.bits()));
    let labels = opens.iter().map(|&s| set_label(&d.poset, s)).collect();
    let frame = Frame::new(set_lattice(&opens, labels));
    Ok(ScottLocale { frame, opens })
}

/// Finite unions of principal up-sets, deduplicated, as frame indices.
pub fn scott_base(d: &ScottDomain, loc: &ScottLocale, cap: u64) -> Result<BaseFamily, CapExceeded> {
    cap::check_subsets(d.len(), cap)?;
    let members: ElemSet = ElemSet::all_subsets(d.len())
        .map(|cs| cs.iter().fold(ElemSet::EMPTY, |acc, c| acc.union(upset(d, c))))
        .map(|u| loc.index_of(u).expect("unions of up-sets are open"))
        .collect();
    Ok(BaseFamily::new(members.to_vec()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ScottSpectralCertificate {
    pub note: &'static str,
    pub spectral: ClassReport,
    pub base: Vec<usize>,
    pub base_is_base: bool,
    pub base_compact: bool,
    /// `↑x ∩ ↑y` is `↑(x ∨ y)` for bounded pairs and empty otherwise.
    pub principal_meets_split: bool,
    pub base_meet_closed: bool,
}

impl ScottSpectralCertificate {
    pub fn ok(&self) -> bool {
        self.spectral.value
            && self.base_is_base
            && self.base_compact
            && self.principal_meets_split
            && self.base_meet_closed
    }
}

pub fn is_spectral_scott(d: &ScottDomain, cap: u64) -> Result<ScottSpectralCertificate, CapExceeded> {
    let loc = scott_frame(d, cap)?;
    let base = scott_base(d, &loc, cap)?;
    let f = &loc.frame;
    let compacts = f.compact_opens(cap)?;
    let p = &d.poset;
    let principal_meets_split = (0..d.len()).all(|x| {
        (0..d.len()).all(|y| {
            let meet = upset(d, x).intersection(upset(d, y));
            if d.bounded_above(x, y) {
                p.lub(ElemSet::singleton(x).with(y))
                    .is_some_and(|j| meet == upset(d, j))
            } else {
                meet.is_empty()
            }
        })
    });
    let image = base.image();
    let base_meet_closed = image
        .iter()
        .all(|a| image.iter().all(|b| image.contains(f.meet(a, b))));
    Ok(ScottSpectralCertificate {
        note: FINITE_COLLAPSE_NOTE,
        spectral: is_spectral(f, cap)?,
        base_is_base: base.is_base(f),
        base_compact: image.is_subset(compacts),
        base: base.members,
        principal_meets_split,
        base_meet_closed,
    })
}

/// The Sierpiński frame `⊥ < true < ⊤` and its distinguished open.
pub fn sierpinski() -> (Frame, usize) {
    let l = Lattice::chain(3).relabel(vec!["⊥".into(), "true".into(), "⊤".into()]);
    (Frame::new(l), 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct SierpinskiEntry {
    pub open: usize,
    pub hom: Vec<usize>,
}

/// For every open `U` of `x`, exactly one frame hom from Sierpiński sends
/// `true` to `U`.
pub fn verify_sierpinski_up(x: &Frame, cap: u64) -> Result<Vec<SierpinskiEntry>, ScottError> {
    let (s, truth) = sierpinski();
    let homs = crate::frame::frame_homs(&s, x, cap)?;
    x.elements()
        .map(|u| {
            let found: Vec<&FrameHom> = homs.iter().filter(|h| h.apply(truth) == u).collect();
            match found.as_slice() {
                [h] => Ok(SierpinskiEntry {
                    open: u,
                    hom: h.table().to_vec(),
                }),
                _ => Err(ScottError::UpFailure {
                    open: u,
                    found: found.len(),
                }),
            }
        })
        .collect()
}

/// Elements whose membership in every compact open is decided. On a finite
/// domain the order table is total, so this is every element. Each element is
/// still rechecked against each compact open `K`: membership read off `K`
/// must agree with `∃c ∈ min K. c ≤ x`, decided from the order table alone.
pub fn sharp_elements(d: &ScottDomain, cap: u64) -> Result<ElemSet, CapExceeded> {
    let loc = scott_frame(d, cap)?;
    let compacts = loc.frame.compact_opens(cap)?;
    let p = &d.poset;
    Ok((0..d.len())
        .filter(|&x| {
            compacts.iter().all(|k| {
                let u = loc.opens[k];
                let mut min = u.iter().filter(|&c| u.iter().all(|b| !p.lt(b, c)));
                let by_order = min.any(|c| p.leq(c, x));
                u.contains(x) == by_order
            })
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct PointsCertificate {
    pub note: &'static str,
    pub domain_size: usize,
    pub scott_points: usize,
    pub patch_points: usize,
    pub sharp: Vec<usize>,
    /// `nu[x]`: index in the sorted point list of `{U : x ∈ U}`.
    pub nu: Vec<usize>,
    /// `pt[i]`: the element `⋁{c : ↑c ∈ Fᵢ}`.
    pub pt: Vec<usize>,
    pub all_points_spectral: bool,
    /// `lift[k]`: patch point obtained by lifting the point of `sharp[k]`.
    pub lift: Vec<usize>,
}

/// Certifies `D ≅ pt(ΣD)`, that every point is spectral, and
/// `Sharp(D) ≅ pt(Patch ΣD)` via the universal lift into the 2-chain.
pub fn points_equivalences(d: &ScottDomain, cap: u64) -> Result<PointsCertificate, ScottError> {
    let fail = |m: String| ScottError::BijectionFailure(m);
    let loc = scott_frame(d, cap)?;
    let f = &loc.frame;
    let pts = points(f, cap)?;
    let point_index = |filter: ElemSet| pts.iter().position(|p| p.filter == filter);

    let nu = (0..d.len())
        .map(|x| {
            let filter: ElemSet = f.elements().filter(|&u| loc.opens[u].contains(x)).collect();
            point_index(filter).ok_or_else(|| fail(format!("ν({x}) is not a point")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pt = pts
        .iter()
        .map(|p| {
            let gens: ElemSet = (0..d.len())
                .filter(|&c| loc.index_of(upset(d, c)).is_some_and(|i| p.filter.contains(i)))
                .collect();
            d.poset.lub(gens).ok_or_else(|| fail(format!("{:?} has no join", gens.to_vec())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (x, &i) in nu.iter().enumerate() {
        if pt[i] != x {
            return Err(fail(format!("pt(ν({x})) = {}", pt[i])));
        }
    }
    for (i, &x) in pt.iter().enumerate() {
        if nu[x] != i {
            return Err(fail(format!("ν(pt({i})) = {}", nu[x])));
        }
    }

    let two = Frame::two();
    let compacts = f.compact_opens(cap)?;
    let two_compacts = two.compact_opens(cap)?;
    let all_points_spectral = pts
        .iter()
        .all(|p| compacts.iter().all(|k| two_compacts.contains(p.to_hom(f).apply(k))));

    let sharp = sharp_elements(d, cap)?;
    let pf = patch(f, cap)?;
    let eps = epsilon(&pf)?;
    let patch_pts = points(&pf.frame, cap)?;
    let mut lift = Vec::new();
    for x in sharp {
        let px = pts[nu[x]].to_hom(f);
        let q = Point::from_hom(&universal_map(f, &pf, &two, &px, cap)?);
        let qi = patch_pts
            .iter()
            .position(|r| *r == q)
            .ok_or_else(|| fail(format!("lift of {x} is not a patch point")))?;
        // restricting along ε* recovers the original point
        if Point::from_hom(&q.to_hom(&pf.frame).after(&eps.upper)) != pts[nu[x]] {
            return Err(fail(format!("lift of {x} does not restrict back")));
        }
        lift.push(qi);
    }
    let hit: ElemSet = lift.iter().copied().collect();
    if hit.len() != lift.len() || hit.len() != patch_pts.len() {
        return Err(fail(format!(
            "{} sharp elements lift onto {} of {} patch points",
            lift.len(),
            hit.len(),
            patch_pts.len()
        )));
    }
    Ok(PointsCertificate {
        note: FINITE_COLLAPSE_NOTE,
        domain_size: d.len(),
        scott_points: pts.len(),
        patch_points: patch_pts.len(),
        sharp: sharp.to_vec(),
        nu,
        pt,
        all_points_spectral,
        lift,
    })
}
