//! Runs every acceptance criterion at the default cap, pins its time budget,
//! and cross-checks the library against brute-force oracles.
//!
//! Prints one line per criterion and exits nonzero if any line fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use finlocale::corpus;
use finlocale::frame::{frame_homs, points, Frame};
use finlocale::lattice::{downset_lattice, isomorphic, Lattice};
use finlocale::nuclei::enumerate_nuclei;
use finlocale::patch::patch;
use finlocale::scott::{scott_frame, sierpinski};
use finlocale::spectrum::{all_ideals, spectrum};
use finlocale::suite::{self, all_posets, Status};
use finlocale::DEFAULT_CAP;

type Oracle = fn() -> Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn frames(n: usize) -> Vec<(&'static str, Frame)> {
    corpus::frames_up_to(n)
}

/// Spectrum sizes are ideal counts; the three examples are 2, 3 and 4.
fn oracle_spectrum() -> Result<String, String> {
    let cases = [(Lattice::chain(2), 2), (Lattice::chain(3), 3), (Lattice::boolean(2), 4)];
    for (l, want) in cases {
        let bf = common::ideals(&l).len();
        let s = spectrum(&l, DEFAULT_CAP).map_err(|e| e.to_string())?;
        check(bf == want && s.frame.len() == want, || format!("ideals {bf}, spectrum {}", s.frame.len()))?;
    }
    Ok("ideal counts 2, 3, 4".into())
}

/// On the ≤ 5 corpus every ideal is principal, so `|Idl L| = |L|`.
fn oracle_duality() -> Result<String, String> {
    for (name, l) in corpus::lattices_up_to(5) {
        let bf = common::ideals(&l);
        let lib: Vec<u64> = all_ideals(&l, DEFAULT_CAP)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|i| i.members.bits())
            .collect();
        let mut sorted = bf.clone();
        sorted.sort_by_key(|s| (s.count_ones(), *s));
        let mut lib_sorted = lib.clone();
        lib_sorted.sort_by_key(|s| (s.count_ones(), *s));
        check(sorted == lib_sorted && bf.len() == l.len(), || format!("{name}: ideals differ"))?;
    }
    Ok("ideal sets match".into())
}

/// Frame homs agree with a search over all maps.
fn oracle_homs() -> Result<String, String> {
    let mut total = 0;
    for (xn, x) in frames(4) {
        for (yn, y) in frames(4) {
            let bf = common::frame_homs(&x, &y);
            let lib: Vec<Vec<usize>> = frame_homs(&x, &y, DEFAULT_CAP)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|h| h.table().to_vec())
                .collect();
            let mut bf_sorted = bf.clone();
            bf_sorted.sort();
            let mut lib_sorted = lib.clone();
            lib_sorted.sort();
            check(bf_sorted == lib_sorted, || format!("{xn} -> {yn}: {} vs {}", bf.len(), lib.len()))?;
            total += bf.len();
        }
    }
    Ok(format!("{total} homs"))
}

/// Enumerated nuclei agree with a search over all endomaps.
fn oracle_nuclei() -> Result<String, String> {
    let mut counts = Vec::new();
    for (name, f) in frames(5) {
        let mut bf = common::nuclei(&f);
        bf.sort();
        let lib: Vec<Vec<usize>> = enumerate_nuclei(&f, DEFAULT_CAP)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|j| j.table().to_vec())
            .collect();
        check(bf == lib, || format!("{name}: {} vs {}", bf.len(), lib.len()))?;
        counts.push(bf.len());
    }
    Ok(format!("nucleus counts {counts:?}"))
}

fn oracle_sierpinski_patch() -> Result<String, String> {
    let (s, _) = sierpinski();
    let p = patch(&s, DEFAULT_CAP).map_err(|e| e.to_string())?;
    check(isomorphic(&p.frame, &Lattice::boolean(2), 100).unwrap(), || "not boolean".into())?;
    check(common::nuclei(&s).len() == 4, || "four nuclei".into())?;
    Ok("4 nuclei, Boolean".into())
}

/// `|patch| = |nuclei|` by search, and `2^|P|` for downset lattices.
fn oracle_patch_sizes() -> Result<String, String> {
    for (name, f) in frames(5) {
        let p = patch(&f, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let bf = common::nuclei(&f).len();
        check(p.frame.len() == bf, || format!("{name}: {} vs {bf}", p.frame.len()))?;
    }
    let mut n_posets = 0;
    for n in 1..=3 {
        for q in all_posets(n) {
            let l = downset_lattice(&q, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let bf = common::nuclei(&l).len();
            check(bf == 1 << n, || format!("poset of {n}: {bf} nuclei"))?;
            n_posets += 1;
        }
    }
    Ok(format!("{n_posets} posets"))
}

/// The lifts through the patch are counted among all maps by search.
fn oracle_patch_up() -> Result<String, String> {
    let b4 = Frame::new(Lattice::boolean(2));
    for a in [Frame::two(), Frame::new(Lattice::chain(3)), b4.clone()] {
        for x in [Frame::two(), b4.clone()] {
            let p = patch(&a, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let homs_a = common::frame_homs(&a, &x).len();
            let homs_p = common::frame_homs(&p.frame, &x).len();
            // each hom out of A has exactly one lift, so the counts agree
            check(homs_a == homs_p, || format!("{homs_a} homs from A, {homs_p} from the patch"))?;
        }
    }
    Ok("hom counts agree".into())
}

fn oracle_heyting() -> Result<String, String> {
    for (name, f) in corpus::frames() {
        for u in f.elements() {
            for v in f.elements() {
                check(f.heyting(u, v) == common::heyting(&f, u, v), || format!("{name}: {u} ⇒ {v}"))?;
            }
        }
    }
    Ok("implication tables match".into())
}

fn oracle_scott() -> Result<String, String> {
    for (name, d) in corpus::domains() {
        let loc = scott_frame(&d, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let p = d.poset();
        let upsets = (0u64..1 << d.len())
            .filter(|&s| {
                (0..d.len()).all(|x| s >> x & 1 == 0 || (0..d.len()).all(|y| !p.leq(x, y) || s >> y & 1 == 1))
            })
            .count();
        check(loc.frame.len() == upsets, || format!("{name}: {} opens, {upsets} up-sets", loc.frame.len()))?;
    }
    Ok("open counts match".into())
}

fn oracle_points() -> Result<String, String> {
    let mut sizes = Vec::new();
    for (name, d) in corpus::domains() {
        let loc = scott_frame(&d, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let bf = common::points(&loc.frame).len();
        let p = patch(&loc.frame, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let bf_patch = common::points(&p.frame).len();
        check(bf == d.len() && bf_patch == d.len(), || {
            format!("{name}: {bf} points, {bf_patch} patch points, {} elements", d.len())
        })?;
        sizes.push(d.len());
    }
    Ok(format!("points = elements for sizes {sizes:?}"))
}

fn oracle_sierpinski_up() -> Result<String, String> {
    let (s, truth) = sierpinski();
    for (name, x) in frames(4) {
        let homs = common::frame_homs(&s, &x);
        for u in x.elements() {
            let n = homs.iter().filter(|h| h[truth] == u).count();
            check(n == 1, || format!("{name}: {n} homs send truth to {u}"))?;
        }
    }
    Ok("one hom per open".into())
}

fn oracle_collapse() -> Result<String, String> {
    for (name, f) in corpus::frames() {
        for u in f.elements() {
            for v in f.elements() {
                check(common::way_below(&f, u, v) == f.leq(u, v), || format!("{name}: ≪ at ({u}, {v})"))?;
            }
        }
        let pts = points(&f, DEFAULT_CAP).map_err(|e| e.to_string())?;
        check(pts.len() == common::points(&f).len(), || format!("{name}: point counts"))?;
    }
    Ok("≪ = ≤ by definition".into())
}

const ORACLES: [Oracle; 12] = [
    oracle_spectrum,
    oracle_duality,
    oracle_homs,
    oracle_nuclei,
    oracle_sierpinski_patch,
    oracle_patch_sizes,
    oracle_patch_up,
    oracle_heyting,
    oracle_scott,
    oracle_points,
    oracle_sierpinski_up,
    oracle_collapse,
];

fn main() -> ExitCode {
    let mut failed = 0;
    let total = Instant::now();
    for (c, oracle) in suite::CRITERIA.iter().zip(ORACLES) {
        let r = suite::run_criterion(c, DEFAULT_CAP);
        let o = oracle();
        let pass = r.status == Status::Pass && r.within_budget && o.is_ok();
        if !pass {
            failed += 1;
        }
        let detail = match (&r.witness, &o) {
            (Some(w), _) => w.clone(),
            (None, Err(e)) => format!("oracle: {e}"),
            (None, Ok(s)) if r.status == Status::Skipped => format!("skipped at cap; oracle: {s}"),
            (None, Ok(s)) => format!("oracle: {s}"),
        };
        println!(
            "{} criterion {:>2} {:<30} {:>8.1} ms / {:>6} ms  {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            r.elapsed_ms,
            c.budget_ms,
            detail
        );
    }
    let secs = total.elapsed().as_secs_f64();
    // the whole suite has a two-minute budget
    let total_ok = secs < 120.0;
    println!("{} total {secs:.2} s / 120 s", if total_ok { "PASS" } else { "FAIL" });
    if failed == 0 && total_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
