mod common;

use finlocale::corpus;
use finlocale::lattice::{
    downset_lattice, find_poset_isos, isomorphic, join_irreducibles, validate_lattice, Lattice,
};
use finlocale::suite::all_posets;
use proptest::prelude::*;

const CAP: u64 = 1 << 22;

proptest! {
    #[test]
    fn downset_lattices_satisfy_every_axiom(l in common::lattice(4)) {
        prop_assert!(validate_lattice(&l).is_empty());
    }

    #[test]
    fn order_agrees_with_operations(l in common::lattice(4)) {
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
                prop_assert_eq!(l.leq(x, y), l.join(x, y) == y);
            }
        }
    }

    #[test]
    fn birkhoff_round_trip(p in common::poset(4)) {
        let l = downset_lattice(&p, CAP).unwrap();
        prop_assume!(l.len() <= 12);
        let j = join_irreducibles(&l);
        prop_assert!(!find_poset_isos(&j, &p, CAP).unwrap().is_empty());
        let again = downset_lattice(&j, CAP).unwrap();
        prop_assert!(isomorphic(&again, &l, CAP).unwrap());
    }
}

/// Every distributive lattice with at most five elements is the downsets of
/// a poset with at most four, so sweeping those finds every class.
#[test]
fn corpus_is_complete_up_to_five() {
    let mut classes: Vec<Lattice> = Vec::new();
    for n in 0..=4 {
        let posets = if n == 0 { vec![] } else { all_posets(n) };
        for p in posets {
            let l = downset_lattice(&p, CAP).unwrap();
            if l.len() <= 5 && !classes.iter().any(|c| isomorphic(c, &l, CAP).unwrap()) {
                classes.push(l);
            }
        }
    }
    // the empty poset gives the one-element lattice
    classes.push(Lattice::chain(1));
    let shipped = corpus::lattices_up_to(5);
    assert_eq!(classes.len(), shipped.len());
    for c in &classes {
        assert_eq!(shipped.iter().filter(|(_, s)| isomorphic(c, s, CAP).unwrap()).count(), 1);
    }
}
