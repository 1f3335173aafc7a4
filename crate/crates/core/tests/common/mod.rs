//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use metrize::builtin::{make_chain, make_two_element, ExtendedRational};
use metrize::continuity::{preorder_space, rational_space, ContinuitySpace};
use metrize::lattice::FiniteLattice;
use metrize::omega::enumerate_omega_width;
use metrize::topology::{enumerate_preorders, FiniteTopology, Relation};
use metrize::ExtRationalLine;

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(names(&["0", "a", "b", "c", "inf"]), &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .unwrap()
}

pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(names(&["0", "a", "b", "c", "inf"]), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
}

/// Every lattice of at most 12 elements the well-above tests run on.
pub fn small_lattices() -> Vec<(String, FiniteLattice)> {
    let mut out = Vec::new();
    for len in 1..=12 {
        out.push((format!("chain {len}"), FiniteLattice::chain(len).unwrap()));
    }
    out.push(("B2".into(), FiniteLattice::powerset(2).unwrap()));
    out.push(("B3".into(), FiniteLattice::powerset(3).unwrap()));
    out.push(("M3".into(), m3()));
    out.push(("N5".into(), n5()));
    out.push(("two-element".into(), make_two_element().lattice().clone()));
    for n in 2..=5 {
        out.push((format!("truncated chain {n}"), make_chain(n).unwrap().lattice().clone()));
    }
    for width in 1..=2 {
        out.push((format!("Ω, |τ| = {width}"), enumerate_omega_width(width).unwrap().quantale.lattice().clone()));
    }
    out
}

/// `x ≺ y` straight from the definition: every subset `S` with `⋀S ≤ x`
/// has a member `≤ y`. Meets are folded with pairwise `leq` scans only.
pub fn oracle_well_above(l: &FiniteLattice, y: usize, x: usize) -> bool {
    let n = l.size();
    assert!(n <= 16);
    let glb = |set: &[usize]| -> usize {
        let lower: Vec<usize> = (0..n).filter(|&z| set.iter().all(|&s| l.leq(z, s))).collect();
        *lower.iter().find(|&&z| lower.iter().all(|&w| l.leq(w, z))).unwrap()
    };
    (0u32..1 << n).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        !l.leq(glb(&set), x) || set.iter().any(|&s| l.leq(s, y))
    })
}

/// Counts topologies on `n` points by testing every family of subsets
/// that contains `∅` and the whole set.
pub fn brute_force_topology_count(n: usize) -> usize {
    let whole: u32 = (1 << n) - 1;
    let middle: Vec<u32> = (1..whole).collect();
    let mut count = 0;
    for pick in 0u64..1 << middle.len() {
        let mut fam = vec![0, whole];
        fam.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &u)| u));
        let closed = fam.iter().all(|&a| fam.iter().all(|&b| fam.contains(&(a | b)) && fam.contains(&(a & b))));
        count += closed as usize;
    }
    if n == 0 {
        1
    } else {
        count
    }
}

/// For a finite `[0, ∞]`-space, radii below the least positive distance
/// give `B(x) = {y : d(x, y) = 0}`, so the opens are the sets closed under
/// zero-distance successors.
pub fn rational_topology(dist: &[Vec<ExtendedRational>]) -> FiniteTopology {
    let n = dist.len();
    let opens: Vec<u32> = (0..1u32 << n)
        .filter(|&u| {
            (0..n).filter(|x| u >> x & 1 == 1).all(|x| (0..n).all(|y| !dist[x][y].is_zero() || u >> y & 1 == 1))
        })
        .collect();
    FiniteTopology::validate(n, &opens).unwrap()
}

fn q(s: &str) -> ExtendedRational {
    s.parse().unwrap()
}

fn matrix(rows: &[&[&str]]) -> Vec<Vec<ExtendedRational>> {
    rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()
}

/// Hand-picked `[0, ∞]`-spaces on one to three points.
pub fn rational_corpus() -> Vec<(String, Vec<Vec<ExtendedRational>>)> {
    vec![
        ("point".into(), matrix(&[&["0"]])),
        ("two at 1/2".into(), matrix(&[&["0", "1/2"], &["1/2", "0"]])),
        ("glued pair".into(), matrix(&[&["0", "0"], &["0", "0"]])),
        ("one-way zero".into(), matrix(&[&["0", "0"], &["3", "0"]])),
        ("infinite gap".into(), matrix(&[&["0", "inf"], &["inf", "0"]])),
        ("triangle".into(), matrix(&[&["0", "1", "2"], &["1", "0", "1"], &["2", "1", "0"]])),
        ("pseudo".into(), matrix(&[&["0", "0", "5/3"], &["0", "0", "5/3"], &["5/3", "5/3", "0"]])),
        ("quasi".into(), matrix(&[&["0", "0", "0"], &["1/7", "0", "0"], &["2/7", "1/7", "0"]])),
        ("mixed".into(), matrix(&[&["0", "inf", "1"], &["0", "0", "1"], &["inf", "inf", "0"]])),
    ]
}

pub fn rational_spaces() -> Vec<(String, ContinuitySpace<ExtRationalLine>, FiniteTopology)> {
    rational_corpus()
        .into_iter()
        .map(|(name, d)| {
            let t = rational_topology(&d);
            (name, rational_space(d).unwrap(), t)
        })
        .collect()
}

pub fn preorder_spaces(max_points: usize) -> Vec<(Relation, ContinuitySpace<metrize::FiniteQuantale>)> {
    (1..=max_points)
        .flat_map(|n| enumerate_preorders(n).unwrap())
        .map(|r| {
            let s = preorder_space(&r).unwrap();
            (r, s)
        })
        .collect()
}
