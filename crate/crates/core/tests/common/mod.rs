//! Brute-force oracles that read only the order and operation tables.
#![allow(dead_code)]

use finlocale::lattice::Lattice;

/// Every map `0..n → 0..m`, as tables.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let mut i = 0;
        while i < n && t[i] + 1 == m {
            t[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        t[i] += 1;
    }
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn fold_join(l: &Lattice, xs: &[usize]) -> usize {
    xs.iter().fold(l.bot(), |a, &b| l.join(a, b))
}

pub fn ideals(l: &Lattice) -> Vec<u64> {
    let n = l.len();
    (1u64..1 << n)
        .filter(|&s| {
            let m = members(s, n);
            m.iter().all(|&x| (0..n).all(|y| !l.leq(y, x) || s >> y & 1 == 1))
                && m.iter().all(|&x| m.iter().all(|&y| s >> l.join(x, y) & 1 == 1))
        })
        .collect()
}

pub fn nuclei(l: &Lattice) -> Vec<Vec<usize>> {
    let n = l.len();
    all_maps(n, n)
        .into_iter()
        .filter(|j| {
            (0..n).all(|x| l.leq(x, j[x]) && j[j[x]] == j[x])
                && (0..n).all(|x| (0..n).all(|y| j[l.meet(x, y)] == l.meet(j[x], j[y])))
        })
        .collect()
}

pub fn frame_homs(f: &Lattice, g: &Lattice) -> Vec<Vec<usize>> {
    let n = f.len();
    all_maps(n, g.len())
        .into_iter()
        .filter(|h| {
            h[f.top()] == g.top()
                && h[f.bot()] == g.bot()
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        h[f.meet(x, y)] == g.meet(h[x], h[y]) && h[f.join(x, y)] == g.join(h[x], h[y])
                    })
                })
        })
        .collect()
}

/// Completely prime filters, straight from the definition.
pub fn points(f: &Lattice) -> Vec<u64> {
    let n = f.len();
    (0u64..1 << n)
        .filter(|&p| {
            let m = members(p, n);
            p >> f.top() & 1 == 1
                && m.iter().all(|&x| (0..n).all(|y| !f.leq(x, y) || p >> y & 1 == 1))
                && m.iter().all(|&x| m.iter().all(|&y| p >> f.meet(x, y) & 1 == 1))
                && (0u64..1 << n).all(|s| {
                    p >> fold_join(f, &members(s, n)) & 1 == 0 || s & p != 0
                })
        })
        .collect()
}

pub fn is_directed(l: &Lattice, s: u64) -> bool {
    let m = members(s, l.len());
    !m.is_empty()
        && m.iter().all(|&a| m.iter().all(|&b| m.iter().any(|&c| l.leq(a, c) && l.leq(b, c))))
}

pub fn way_below(l: &Lattice, u: usize, v: usize) -> bool {
    let n = l.len();
    (0u64..1 << n).all(|s| {
        let m = members(s, n);
        !is_directed(l, s) || !l.leq(v, fold_join(l, &m)) || m.iter().any(|&x| l.leq(u, x))
    })
}

/// Greatest `w` with `w ∧ u ≤ v`, by search.
pub fn heyting(l: &Lattice, u: usize, v: usize) -> usize {
    let n = l.len();
    let ok: Vec<usize> = (0..n).filter(|&w| l.leq(l.meet(w, u), v)).collect();
    *ok.iter().find(|&&w| ok.iter().all(|&x| l.leq(x, w))).expect("a greatest element")
}

use finlocale::frame::Frame;
use finlocale::lattice::downset_lattice;
use finlocale::order::Poset;
use proptest::prelude::*;

/// Posets on `1..=max` elements, generated by pairs `i < j` and closed.
pub fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::bits::u64::between(0, pairs.max(1)))
    })
    .prop_map(|(n, bits)| {
        let mut gens = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> k & 1 == 1 {
                    gens.push((i, j));
                }
                k += 1;
            }
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Poset::from_generators(labels, &gens).expect("generated pairs are acyclic")
    })
}

/// Finite distributive lattices, as downsets of a random poset.
pub fn lattice(max_poset: usize) -> impl Strategy<Value = Lattice> {
    poset(max_poset).prop_map(|p| downset_lattice(&p, 1 << 20).expect("small"))
}

pub fn frame(max_poset: usize) -> impl Strategy<Value = Frame> {
    lattice(max_poset).prop_map(Frame::new)
}
