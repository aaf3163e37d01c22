mod common;

use finlocale::frame::Frame;
use finlocale::nuclei::{
    closed_nucleus, enumerate_nuclei, finite_composition, johnstone_decompose, nucleus_join, nucleus_meet,
    open_nucleus, pointwise_join, validate_nucleus, validate_prenucleus, Nucleus,
};
use finlocale::suite::brute_force_lub;
use proptest::prelude::*;
use proptest::sample::subsequence;

const CAP: u64 = 1 << 22;

fn nuclei(f: &Frame) -> Vec<Nucleus> {
    enumerate_nuclei(f, CAP).unwrap()
}

proptest! {
    #[test]
    fn prenuclei_are_monotone(f in common::frame(2)) {
        for t in common::all_maps(f.len(), f.len()) {
            if let Ok(p) = validate_prenucleus(&f, t) {
                prop_assert!(p.is_monotone(&f));
            }
        }
    }

    #[test]
    fn compositions_are_prenuclei(f in common::frame(3), word in proptest::collection::vec(0usize..64, 0..5)) {
        let all = nuclei(&f);
        let s: Vec<usize> = word.iter().map(|w| w % all.len()).collect();
        let p = finite_composition(&f, &all, &s);
        prop_assert!(validate_prenucleus(&f, p.table().to_vec()).is_ok());
    }

    /// The join is the pointwise join of the directed family of finite
    /// compositions, which stabilises after `|F|` rounds of the whole family.
    #[test]
    fn join_is_join_of_compositions(f in common::frame(3), pick in any::<u64>()) {
        let all = nuclei(&f);
        let family: Vec<Nucleus> = all.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, j)| j.clone()).collect();
        let round: Vec<usize> = (0..family.len()).collect();
        let word: Vec<usize> = (0..f.len()).flat_map(|_| round.clone()).collect();
        let comp = finite_composition(&f, &family, &word);
        let join = nucleus_join(&f, &family);
        prop_assert_eq!(comp.table(), join.table());
    }

    #[test]
    fn join_is_least_upper_bound(f in common::frame(3), pick in any::<u64>()) {
        let all = nuclei(&f);
        let chosen: Vec<&Nucleus> = all.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, j)| j).collect();
        let owned: Vec<Nucleus> = chosen.iter().map(|&j| j.clone()).collect();
        let lub = brute_force_lub(&f, &all, &chosen).unwrap();
        prop_assert_eq!(&nucleus_join(&f, &owned), &all[lub]);
        prop_assert!(validate_nucleus(&f, all[lub].table().to_vec()).is_ok());
    }

    #[test]
    fn meet_distributes_over_join(f in common::frame(3), pick in any::<u64>(), k in 0usize..64) {
        let all = nuclei(&f);
        let j = &all[k % all.len()];
        let family: Vec<Nucleus> = all.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, n)| n.clone()).collect();
        let lhs = nucleus_meet(&f, j, &nucleus_join(&f, &family));
        let meets: Vec<Nucleus> = family.iter().map(|n| nucleus_meet(&f, j, n)).collect();
        prop_assert_eq!(lhs, nucleus_join(&f, &meets));
    }

    #[test]
    fn directed_joins_are_pointwise(f in common::frame(3), seed in subsequence((0..64usize).collect::<Vec<_>>(), 0..4)) {
        let all = nuclei(&f);
        // a chain j ≤ j ∨ k ≤ ... is directed
        let mut acc = vec![Nucleus::identity(&f)];
        for s in seed {
            let next = nucleus_join(&f, &[acc.last().unwrap().clone(), all[s % all.len()].clone()]);
            acc.push(next);
        }
        prop_assert_eq!(pointwise_join(&f, &acc), nucleus_join(&f, &acc).table().to_vec());
    }

    #[test]
    fn closed_and_open_are_complements(f in common::frame(4)) {
        let top = Nucleus::top(&f);
        let id = Nucleus::identity(&f);
        for u in f.elements() {
            let (c, o) = (closed_nucleus(&f, u), open_nucleus(&f, u));
            prop_assert_eq!(nucleus_meet(&f, &c, &o), id.clone());
            prop_assert_eq!(nucleus_join(&f, &[c, o]), top.clone());
        }
    }

    #[test]
    fn johnstone_terms_rejoin(f in common::frame(3), k in 0usize..64) {
        let all = nuclei(&f);
        let j = &all[k % all.len()];
        let terms: Vec<Nucleus> = johnstone_decompose(&f, j, CAP).unwrap().into_iter().map(|t| t.nucleus).collect();
        prop_assert_eq!(&nucleus_join(&f, &terms), j);
    }

    #[test]
    fn enumeration_matches_search(f in common::frame(2)) {
        let got: Vec<Vec<usize>> = nuclei(&f).iter().map(|j| j.table().to_vec()).collect();
        let mut want = common::nuclei(&f);
        want.sort();
        prop_assert_eq!(got, want);
    }
}
