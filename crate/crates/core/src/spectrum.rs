//! Ideals of finite distributive lattices, the spectrum, compact opens, and
//! both directions of Stone duality with round-trip certificates.

use serde::Serialize;
use thiserror::Error;

use crate::cap::{self, CapExceeded};
use crate::frame::{Frame, FrameHom};
use crate::lattice::{is_iso, set_label, Lattice, LatticeHom};
use crate::order::{validate_poset, Relation};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),
    #[error("image of compact open {0} is not compact")]
    NotSpectral(usize),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum IdealViolation {
    /// I1
    NotInhabited,
    /// I2: `lower ≤ upper`, `upper` in the set, `lower` not.
    NotDownClosed { upper: usize, lower: usize },
    /// I3: both in the set, their join not.
    NotJoinClosed { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Ideal {
    pub members: ElemSet,
}

pub fn is_ideal(l: &Lattice, s: ElemSet) -> Result<(), IdealViolation> {
    if s.is_empty() {
        return Err(IdealViolation::NotInhabited);
    }
    for upper in s {
        if let Some(lower) = l.poset().down(upper).difference(s).iter().next() {
            return Err(IdealViolation::NotDownClosed { upper, lower });
        }
    }
    for left in s {
        for right in s {
            if !s.contains(l.join(left, right)) {
                return Err(IdealViolation::NotJoinClosed { left, right });
            }
        }
    }
    Ok(())
}

impl Ideal {
    pub fn new(l: &Lattice, members: ElemSet) -> Result<Ideal, IdealViolation> {
        is_ideal(l, members).map(|_| Ideal { members })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// The maximum element, if the ideal is principal.
    pub fn generator(&self, l: &Lattice) -> Option<usize> {
        l.poset().greatest_in(self.members)
    }
}

/// `↓x`
pub fn principal_ideal(l: &Lattice, x: usize) -> Ideal {
    Ideal {
        members: l.poset().down(x),
    }
}

/// Every ideal, sorted by cardinality then member list.
pub fn all_ideals(l: &Lattice, cap: u64) -> Result<Vec<Ideal>, CapExceeded> {
    cap::check_subsets(l.len(), cap)?;
    let mut out: Vec<Ideal> = ElemSet::all_subsets(l.len())
        .filter(|&s| is_ideal(l, s).is_ok())
        .map(|members| Ideal { members })
        .collect();
    out.sort_by_key(|i| (i.members.len(), i.members.to_vec()));
    Ok(out)
}

/// Each listed element together with the index of an ideal containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub entries: Vec<(usize, usize)>,
}

/// Witness that every element of `s` lies in some member of `family`,
/// built by recursion on the list.
pub fn covers(s: &[usize], family: &[Ideal]) -> Option<CoverWitness> {
    match s.split_first() {
        None => Some(CoverWitness { entries: vec![] }),
        Some((&x, rest)) => {
            let i = family.iter().position(|id| id.contains(x))?;
            let mut tail = covers(rest, family)?;
            tail.entries.insert(0, (x, i));
            Some(tail)
        }
    }
}

/// Least ideal containing every member of `family`: close the union (plus
/// bottom) under binary joins and down-closure.
pub fn ideal_join(l: &Lattice, family: &[Ideal]) -> Ideal {
    let mut s = family
        .iter()
        .fold(ElemSet::singleton(l.bot()), |acc, i| acc.union(i.members));
    loop {
        let mut next = s;
        for a in s {
            next = next.union(l.poset().down(a));
            for b in s {
                next.insert(l.join(a, b));
            }
        }
        if next == s {
            return Ideal { members: s };
        }
        s = next;
    }
}

/// The frame of ideals, with `ideals[i]` the ideal behind element `i`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub frame: Frame,
    pub ideals: Vec<Ideal>,
}

impl Spectrum {
    pub fn index_of(&self, members: ElemSet) -> Option<usize> {
        self.ideals.iter().position(|i| i.members == members)
    }

    /// Index of `↓x`.
    pub fn principal(&self, l: &Lattice, x: usize) -> usize {
        self.index_of(l.poset().down(x)).expect("principal ideals are ideals")
    }
}

pub fn spectrum(l: &Lattice, cap: u64) -> Result<Spectrum, CapExceeded> {
    let ideals = all_ideals(l, cap)?;
    let n = ideals.len();
    let index = |s: ElemSet| ideals.iter().position(|i| i.members == s).expect("closed");
    let rel = Relation::from_fn(n, |a, b| ideals[a].members.is_subset(ideals[b].members));
    let labels = ideals
        .iter()
        .map(|i| set_label(l.poset(), i.members))
        .collect();
    let poset = validate_poset(rel, Some(labels)).expect("inclusion order");
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index(ideals[a].members.intersection(ideals[b].members));
            join[a * n + b] = index(ideal_join(l, &[ideals[a], ideals[b]]).members);
        }
    }
    let top = index(l.all());
    let bot = index(ElemSet::singleton(l.bot()));
    let frame = Frame::new(Lattice::from_tables(poset, top, bot, meet, join));
    Ok(Spectrum { frame, ideals })
}

/// Compact opens with the inherited operations, and their embedding.
#[derive(Debug, Clone)]
pub struct CompactOpens {
    pub lattice: Lattice,
    pub embedding: Vec<usize>,
}

impl CompactOpens {
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == x)
    }
}

pub fn compact_opens_lattice(x: &Frame, cap: u64) -> Result<CompactOpens, CapExceeded> {
    let k = x.compact_opens(cap)?;
    let embedding = k.to_vec();
    let n = embedding.len();
    let idx = |v: usize| embedding.iter().position(|&e| e == v).expect("closed");
    let poset = x.poset().subposet(k);
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = idx(x.meet(embedding[a], embedding[b]));
            join[a * n + b] = idx(x.join(embedding[a], embedding[b]));
        }
    }
    let lattice = Lattice::from_tables(poset, idx(x.top()), idx(x.bot()), meet, join);
    Ok(CompactOpens { lattice, embedding })
}

/// `x ↦ ↓x` as a map `L → K(Spec L)`, verified to be a lattice isomorphism.
#[derive(Debug, Clone, Serialize)]
pub struct ObjectCertificate {
    pub down: Vec<usize>,
}

pub fn duality_roundtrip_object(l: &Lattice, cap: u64) -> Result<ObjectCertificate, SpectrumError> {
    let spec = spectrum(l, cap)?;
    let k = compact_opens_lattice(&spec.frame, cap)?;
    let down = principal_to_compacts(l, &spec, &k)?;
    if !is_iso(&down, l, &k.lattice) {
        return Err(SpectrumError::IsoFailure("↓ is not an order isomorphism".into()));
    }
    if LatticeHom::new(l, &k.lattice, down.clone()).is_none() {
        return Err(SpectrumError::IsoFailure("↓ is not a lattice homomorphism".into()));
    }
    Ok(ObjectCertificate { down })
}

fn principal_to_compacts(l: &Lattice, spec: &Spectrum, k: &CompactOpens) -> Result<Vec<usize>, SpectrumError> {
    l.elements()
        .map(|x| {
            k.index_of(spec.principal(l, x))
                .ok_or_else(|| SpectrumError::IsoFailure(format!("↓{x} is not compact")))
        })
        .collect()
}

/// `φ(U) = {K compact : K ≤ U}` and `ϑ(I) = ⋁I`, mutually inverse frame
/// isomorphisms between `X` and `Idl(K(X))`.
#[derive(Debug, Clone, Serialize)]
pub struct FrameCertificate {
    pub phi: Vec<usize>,
    pub theta: Vec<usize>,
}

pub fn duality_roundtrip_frame(x: &Frame, cap: u64) -> Result<FrameCertificate, SpectrumError> {
    let k = compact_opens_lattice(x, cap)?;
    let spec = spectrum(&k.lattice, cap)?;
    let (phi, theta) = phi_theta(x, &k, &spec)?;
    FrameHom::new(x, &spec.frame, phi.clone())
        .map_err(|e| SpectrumError::IsoFailure(format!("φ: {e}")))?;
    FrameHom::new(&spec.frame, x, theta.clone())
        .map_err(|e| SpectrumError::IsoFailure(format!("ϑ: {e}")))?;
    for u in x.elements() {
        if theta[phi[u]] != u {
            return Err(SpectrumError::IsoFailure(format!("ϑ(φ({u})) ≠ {u}")));
        }
    }
    for i in spec.frame.elements() {
        if phi[theta[i]] != i {
            return Err(SpectrumError::IsoFailure(format!("φ(ϑ({i})) ≠ {i}")));
        }
    }
    Ok(FrameCertificate { phi, theta })
}

fn phi_theta(x: &Frame, k: &CompactOpens, spec: &Spectrum) -> Result<(Vec<usize>, Vec<usize>), SpectrumError> {
    let phi = x
        .elements()
        .map(|u| {
            let below: ElemSet = (0..k.embedding.len())
                .filter(|&c| x.leq(k.embedding[c], u))
                .collect();
            spec.index_of(below)
                .ok_or_else(|| SpectrumError::IsoFailure(format!("φ({u}) is not an ideal")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let theta = spec
        .ideals
        .iter()
        .map(|i| x.join_all(i.members.iter().map(|c| k.embedding[c])))
        .collect();
    Ok((phi, theta))
}

/// Restriction of a frame homomorphism to compact opens.
pub fn k_on_hom(x: &Frame, y: &Frame, f: &FrameHom, cap: u64) -> Result<LatticeHom, SpectrumError> {
    let kx = compact_opens_lattice(x, cap)?;
    let ky = compact_opens_lattice(y, cap)?;
    k_on_hom_with(&kx, &ky, f)
}

fn k_on_hom_with(kx: &CompactOpens, ky: &CompactOpens, f: &FrameHom) -> Result<LatticeHom, SpectrumError> {
    let table = kx
        .embedding
        .iter()
        .map(|&c| ky.index_of(f.apply(c)).ok_or(SpectrumError::NotSpectral(c)))
        .collect::<Result<Vec<_>, _>>()?;
    LatticeHom::new(&kx.lattice, &ky.lattice, table)
        .ok_or_else(|| SpectrumError::IsoFailure("restriction is not a lattice homomorphism".into()))
}

/// `V ↦ ⋁{↓h(K) : ↓K ≤ V}` as a frame homomorphism `Spec L → Spec M`.
pub fn spec_on_hom(l: &Lattice, m: &Lattice, h: &LatticeHom, cap: u64) -> Result<FrameHom, SpectrumError> {
    let sl = spectrum(l, cap)?;
    let sm = spectrum(m, cap)?;
    spec_on_hom_with(l, m, &sl, &sm, h)
}

fn spec_on_hom_with(
    l: &Lattice,
    m: &Lattice,
    sl: &Spectrum,
    sm: &Spectrum,
    h: &LatticeHom,
) -> Result<FrameHom, SpectrumError> {
    let table = sl
        .ideals
        .iter()
        .map(|v| {
            let fam: Vec<Ideal> = l
                .elements()
                .filter(|&k| l.poset().down(k).is_subset(v.members))
                .map(|k| principal_ideal(m, h.apply(k)))
                .collect();
            sm.index_of(ideal_join(m, &fam).members).expect("ideal")
        })
        .collect();
    FrameHom::new(&sl.frame, &sm.frame, table)
        .map_err(|e| SpectrumError::IsoFailure(format!("Spec of hom: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctorCertificate {
    pub original: Vec<usize>,
    pub round_trip: Vec<usize>,
}

/// `K(Spec h)`, transported back along `↓` on both sides, equals `h`.
pub fn lattice_hom_round_trip(
    l: &Lattice,
    m: &Lattice,
    h: &LatticeHom,
    cap: u64,
) -> Result<FunctorCertificate, SpectrumError> {
    let (sl, sm) = (spectrum(l, cap)?, spectrum(m, cap)?);
    let spec_h = spec_on_hom_with(l, m, &sl, &sm, h)?;
    let (kl, km) = (compact_opens_lattice(&sl.frame, cap)?, compact_opens_lattice(&sm.frame, cap)?);
    let k_spec_h = k_on_hom_with(&kl, &km, &spec_h)?;
    let down_l = principal_to_compacts(l, &sl, &kl)?;
    let down_m = principal_to_compacts(m, &sm, &km)?;
    let round_trip: Vec<usize> = l
        .elements()
        .map(|x| {
            let y = k_spec_h.apply(down_l[x]);
            down_m.iter().position(|&d| d == y).expect("↓ is onto")
        })
        .collect();
    if round_trip != h.table() {
        return Err(SpectrumError::IsoFailure(format!(
            "K(Spec h) = {round_trip:?} but h = {:?}",
            h.table()
        )));
    }
    Ok(FunctorCertificate {
        original: h.table().to_vec(),
        round_trip,
    })
}

/// `Spec(K f)`, transported along `φ` and `ϑ`, equals `f`.
pub fn frame_hom_round_trip(
    x: &Frame,
    y: &Frame,
    f: &FrameHom,
    cap: u64,
) -> Result<FunctorCertificate, SpectrumError> {
    let (kx, ky) = (compact_opens_lattice(x, cap)?, compact_opens_lattice(y, cap)?);
    let kf = k_on_hom_with(&kx, &ky, f)?;
    let (sx, sy) = (spectrum(&kx.lattice, cap)?, spectrum(&ky.lattice, cap)?);
    let spec_kf = spec_on_hom_with(&kx.lattice, &ky.lattice, &sx, &sy, &kf)?;
    let (phi_x, _) = phi_theta(x, &kx, &sx)?;
    let (_, theta_y) = phi_theta(y, &ky, &sy)?;
    let round_trip: Vec<usize> = x
        .elements()
        .map(|u| theta_y[spec_kf.apply(phi_x[u])])
        .collect();
    if round_trip != f.table() {
        return Err(SpectrumError::IsoFailure(format!(
            "Spec(K f) = {round_trip:?} but f = {:?}",
            f.table()
        )));
    }
    Ok(FunctorCertificate {
        original: f.table().to_vec(),
        round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::frame_homs;
    use crate::lattice::{find_isos, isomorphic};

    const CAP: u64 = 1 << 20;

    fn m2() -> Lattice {
        Lattice::boolean(2)
    }

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn ideal_checks() {
        let l = m2();
        // boolean(2) elements: {} {0} {1} {0,1}
        assert!(is_ideal(&l, set(&[0])).is_ok());
        assert_eq!(
            is_ideal(&l, set(&[0, 1, 2])),
            Err(IdealViolation::NotJoinClosed { left: 1, right: 2 })
        );
        assert_eq!(is_ideal(&l, ElemSet::EMPTY), Err(IdealViolation::NotInhabited));
        assert_eq!(
            is_ideal(&l, set(&[1])),
            Err(IdealViolation::NotDownClosed { upper: 1, lower: 0 })
        );
    }

    #[test]
    fn principal_ideals() {
        let l = m2();
        assert_eq!(principal_ideal(&l, 3).members, l.all());
        for x in l.elements() {
            for y in l.elements() {
                let lhs = principal_ideal(&l, x).members.intersection(principal_ideal(&l, y).members);
                assert_eq!(lhs, principal_ideal(&l, l.meet(x, y)).members);
            }
        }
        let c3 = Lattice::chain(3);
        let ids = all_ideals(&c3, CAP).unwrap();
        assert_eq!(ids.len(), 3);
        assert!(ids.iter().all(|i| i.generator(&c3).is_some()));
    }

    #[test]
    fn cover_witnesses() {
        let l = m2();
        let fam = [principal_ideal(&l, 1), principal_ideal(&l, 2)];
        assert_eq!(covers(&[], &fam), Some(CoverWitness { entries: vec![] }));
        assert_eq!(covers(&[1, 2], &fam).unwrap().entries, vec![(1, 0), (2, 1)]);
        assert_eq!(covers(&[3], &fam), None);
    }

    #[test]
    fn ideal_joins() {
        let l = m2();
        let fam = [principal_ideal(&l, 1), principal_ideal(&l, 2)];
        assert_eq!(ideal_join(&l, &fam).members, l.all());
        assert_eq!(ideal_join(&l, &fam[..1]), fam[0]);
        assert_eq!(ideal_join(&l, &[]).members, set(&[0]));
    }

    #[test]
    fn spectra_of_small_lattices() {
        for l in [Lattice::chain(2), Lattice::chain(3), m2()] {
            let s = spectrum(&l, CAP).unwrap();
            assert!(isomorphic(&s.frame, &l, 1000).unwrap());
        }
        let k = compact_opens_lattice(&Frame::new(Lattice::chain(3)), CAP).unwrap();
        assert_eq!(k.embedding, vec![0, 1, 2]);
    }

    #[test]
    fn object_round_trips() {
        assert_eq!(duality_roundtrip_object(&Lattice::chain(2), CAP).unwrap().down, vec![0, 1]);
        let cert = duality_roundtrip_object(&m2(), CAP).unwrap();
        assert_eq!(cert.down.len(), all_ideals(&m2(), CAP).unwrap().len());
        duality_roundtrip_frame(&Frame::new(Lattice::chain(3)), CAP).unwrap();
    }

    #[test]
    fn functor_round_trips() {
        let c3 = Frame::new(Lattice::chain(3));
        let two = Frame::two();
        let homs = frame_homs(&c3, &two, CAP).unwrap();
        assert_eq!(homs.len(), 2);
        for f in &homs {
            frame_hom_round_trip(&c3, &two, f, CAP).unwrap();
        }
        let swap = find_isos(&m2(), &m2(), 100).unwrap().pop().unwrap();
        lattice_hom_round_trip(&m2(), &m2(), &swap, CAP).unwrap();
        let id = FrameHom::identity(3);
        let kid = k_on_hom(&c3, &c3, &id, CAP).unwrap();
        assert_eq!(kid.table(), &[0, 1, 2]);
        let sid = spec_on_hom(&Lattice::chain(3), &Lattice::chain(3), &LatticeHom::identity(3), CAP).unwrap();
        assert_eq!(sid.table(), &[0, 1, 2]);
    }
}
