//! Instances shared by the property and acceptance suites.
#![allow(dead_code)]

use std::sync::Arc;

use latcoh::cohomology::{cohomology, shapiro_forward, shapiro_inverse, Complex, DEFAULT_BUDGET};
use latcoh::glattice::Induction;
use latcoh::groups::{cyclic_group, parse_generator_list, symmetric_group, weyl_group, Perm, PermGroup, Subgroup};
use latcoh::twisted::Coeff;

/// `(G, H)` pairs whose permutation lattices `Z[G/H]` form the catalog.
pub fn catalog() -> Vec<Subgroup> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let g = symmetric_group(n).unwrap();
        let gens: Vec<Perm> = match n {
            2 => vec![],
            3 => vec![Perm::transposition(3, 0, 1)],
            _ => vec![Perm::transposition(4, 0, 1), Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap()],
        };
        out.push(if gens.is_empty() {
            Subgroup::trivial(&g, "1")
        } else {
            Subgroup::new(&g, gens, "S_{n-1}").unwrap()
        });
    }
    for m in 2..=3 {
        let w = weyl_group(m).unwrap();
        out.push(w.h.clone());
        out.push(w.h1.clone());
        out.push(w.h2().unwrap().clone());
    }
    out
}


pub fn small_groups() -> Vec<Arc<PermGroup>> {
    let mut out: Vec<Arc<PermGroup>> = (1..=8).map(|n| cyclic_group(n).unwrap()).collect();
    for body in [
        "<(1 2), (3 4)>",
        "<(1 2), (3 4), (5 6)>",
        "<(1 2 3 4), (5 6)>",
        "<(1 2 3 4), (1 3)>",
        "<(1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)>",
        "<(1 2 3 4 5), (2 5)(3 4)>",
        "<(1 2 3), (1 2)(3 4)>",
        "<(1 2 3 4), (5 6 7 8)>",
        "<(1 2 3 4 5 6 7 8), (2 8)(3 7)(4 6)>",
    ] {
        out.push(parse_generator_list(body, body).unwrap());
    }
    out.push(symmetric_group(3).unwrap());
    out
}


pub fn check_round_trip(ind: &Induction, n: usize, direct: bool) {
    let small = cohomology(ind.small(), n, DEFAULT_BUDGET).unwrap();
    let big_cx = Complex::new(ind.big());
    for e in small.generators() {
        let f = shapiro_inverse(ind, n, e).unwrap();
        assert!(big_cx.is_cocycle(n, &f).unwrap());
        let back = shapiro_forward(ind, n, &f).unwrap();
        let diff: Vec<i64> = back.iter().zip(e).map(|(a, b)| a - b).collect();
        assert!(small.is_zero(&diff).unwrap());
    }
    if direct {
        let big = cohomology(ind.big(), n, DEFAULT_BUDGET).unwrap();
        assert_eq!(big.invariants(), small.invariants());
        for c in big.generators() {
            let e = shapiro_forward(ind, n, c).unwrap();
            let f = shapiro_inverse(ind, n, &e).unwrap();
            let diff: Vec<i64> = f.iter().zip(c).map(|(a, b)| a - b).collect();
            assert!(big.is_zero(&diff).unwrap());
        }
    }
}


/// Every cochain `c(g1, g2)` with `g2 ≠ 1` (the entries the action reads)
/// over `G` of order `n`, values in `values`.
pub fn all_read_cochains(n: usize, values: &[i64]) -> Vec<Vec<Coeff>> {
    let slots: Vec<usize> = (0..n * n).filter(|s| s % n != 0).collect();
    let total = values.len().pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut c = vec![vec![0]; n * n];
            for &s in &slots {
                c[s] = vec![values[code % values.len()]];
                code /= values.len();
            }
            c
        })
        .collect()
}


/// Exhaustive comparison over groups of order at most 4: `(cases, disagreements)`.
pub fn sb_exhaustive() -> (usize, usize) {
    use latcoh::twisted::{sb_action, CoefficientGroup};
    let groups = [
        cyclic_group(1).unwrap(),
        cyclic_group(2).unwrap(),
        cyclic_group(3).unwrap(),
        cyclic_group(4).unwrap(),
        parse_generator_list("<(1 2), (3 4)>", "V4").unwrap(),
    ];
    let mut cases = 0;
    let mut bad = 0;
    for g in groups {
        let one = Subgroup::trivial(&g, "1");
        let mut coeffs = vec![(CoefficientGroup::trivial(&g, 0, vec![2]).unwrap(), vec![0, 1])];
        if g.order() <= 3 {
            coeffs.push((CoefficientGroup::trivial(&g, 0, vec![3]).unwrap(), vec![0, 1, 2]));
        }
        for (a, values) in coeffs {
            for c in all_read_cochains(g.order(), &values) {
                cases += 1;
                bad += !sb_action(&one, &a, c).unwrap().validity().agrees() as usize;
            }
        }
    }
    (cases, bad)
}
