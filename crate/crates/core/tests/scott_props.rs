mod common;

use finlocale::order::Poset;
use finlocale::scott::{
    is_inaccessible_by_directed_joins, is_spectral_scott, is_upward_closed, points_equivalences, scott_frame,
    sierpinski, upset, validate_scott_domain, verify_sierpinski_up, ScottDomain,
};
use finlocale::set::ElemSet;
use proptest::prelude::*;

const CAP: u64 = 1 << 22;

/// A random poset under a new bottom, kept when bounded complete.
fn domain(max: usize) -> impl Strategy<Value = ScottDomain> {
    common::poset(max).prop_filter_map("not bounded complete", |p| {
        let n = p.len() + 1;
        let mut labels = vec!["b".to_string()];
        labels.extend(p.labels().iter().cloned());
        let mut gens: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
        gens.extend(p.relation().pairs().into_iter().map(|(a, b)| (a + 1, b + 1)));
        let q = Poset::from_generators(labels, &gens).ok()?;
        validate_scott_domain(q, 0, CAP).ok()
    })
}

proptest! {
    #[test]
    fn upward_closed_sets_are_scott_open(d in domain(4)) {
        for s in ElemSet::all_subsets(d.len()) {
            let so1 = is_upward_closed(&d, s);
            prop_assert_eq!(so1, so1 && is_inaccessible_by_directed_joins(&d, s, CAP).unwrap());
        }
    }

    #[test]
    fn principal_upsets(d in domain(4)) {
        let p = d.poset();
        for x in 0..d.len() {
            prop_assert!(upset(&d, x).contains(x));
            for y in 0..d.len() {
                prop_assert_eq!(p.leq(x, y), upset(&d, y).is_subset(upset(&d, x)));
                let meet = upset(&d, x).intersection(upset(&d, y));
                match p.lub(ElemSet::singleton(x).with(y)) {
                    Some(j) if d.bounded_above(x, y) => prop_assert_eq!(meet, upset(&d, j)),
                    _ => prop_assert!(meet.is_empty()),
                }
            }
        }
    }

    #[test]
    fn scott_locales_are_spectral(d in domain(4)) {
        prop_assert!(is_spectral_scott(&d, CAP).unwrap().ok());
    }

    #[test]
    fn points_are_elements(d in domain(3)) {
        let c = points_equivalences(&d, CAP).unwrap();
        prop_assert_eq!(c.scott_points, d.len());
        prop_assert_eq!(c.patch_points, d.len());
        for x in 0..d.len() {
            prop_assert_eq!(c.pt[c.nu[x]], x);
        }
    }

    #[test]
    fn sierpinski_trichotomy(d in domain(4)) {
        let loc = scott_frame(&d, CAP).unwrap();
        let (s, truth) = sierpinski();
        for e in verify_sierpinski_up(&loc.frame, CAP).unwrap() {
            prop_assert_eq!(e.hom[s.bot()], loc.frame.bot());
            prop_assert_eq!(e.hom[truth], e.open);
            prop_assert_eq!(e.hom[s.top()], loc.frame.top());
        }
    }
}
