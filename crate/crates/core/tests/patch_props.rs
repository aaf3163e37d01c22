mod common;

use finlocale::frame::{is_stone, Frame};
use finlocale::lattice::{downset_lattice, isomorphic, Lattice};
use finlocale::nuclei::johnstone_decompose;
use finlocale::order::Poset;
use finlocale::patch::{epsilon, patch, patch_base, verify_patch_up};
use proptest::prelude::*;

const CAP: u64 = 1 << 22;

proptest! {
    #[test]
    fn patch_is_stone(x in common::frame(3)) {
        let p = patch(&x, CAP).unwrap();
        prop_assert!(is_stone(&p.frame, CAP).unwrap().value);
    }

    #[test]
    fn patch_size_is_two_to_the_points(q in common::poset(3)) {
        let x = Frame::new(downset_lattice(&q, CAP).unwrap());
        let p = patch(&x, CAP).unwrap();
        prop_assert_eq!(p.frame.len(), 1 << q.len());
        let boolean = downset_lattice(&Poset::antichain(q.len()), CAP).unwrap();
        prop_assert!(isomorphic(&p.frame, &boolean, CAP).unwrap());
    }

    #[test]
    fn epsilon_is_perfect(x in common::frame(3)) {
        let p = patch(&x, CAP).unwrap();
        let e = epsilon(&p).unwrap();
        prop_assert!(e.adjunction_holds(&p));
        prop_assert!(e.lower_preserves_directed_joins(&p, CAP).unwrap());
        for u in x.elements() {
            for v in x.elements() {
                if x.way_below(u, v, CAP).unwrap() {
                    prop_assert!(p.frame.way_below(e.upper.apply(u), e.upper.apply(v), CAP).unwrap());
                }
            }
        }
    }

    #[test]
    fn every_nucleus_is_a_join_of_base_terms(x in common::frame(3)) {
        let p = patch(&x, CAP).unwrap();
        let base = patch_base(&p, CAP).unwrap();
        prop_assert!(base.family.is_base(&p.frame));
        for (i, j) in p.nuclei.iter().enumerate() {
            let terms = johnstone_decompose(&x, j, CAP).unwrap();
            let idx = terms.iter().map(|t| p.index_of(&t.nucleus).unwrap());
            prop_assert_eq!(p.frame.join_all(idx), i);
        }
    }

    #[test]
    fn patch_is_idempotent(x in common::frame(3)) {
        let p = patch(&x, CAP).unwrap();
        let pp = patch(&p.frame, CAP).unwrap();
        prop_assert!(isomorphic(&pp.frame, &p.frame, CAP).unwrap());
    }

    #[test]
    fn points_lift_uniquely(x in common::frame(2)) {
        let cert = verify_patch_up(&x, &Frame::two(), CAP).unwrap();
        prop_assert!(cert.uniqueness_checked);
        prop_assert!(cert.entries.iter().all(|e| e.commutes && e.commuting_lifts == Some(1)));
    }
}

#[test]
fn non_stone_target_is_rejected() {
    let c3 = Frame::new(Lattice::chain(3));
    assert!(verify_patch_up(&Frame::two(), &c3, CAP).is_err());
}
