use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

mod common;

use common::{catalog, check_round_trip, sb_exhaustive, small_groups};
use latcoh::cohomology::{cohomology, DEFAULT_BUDGET};
use latcoh::glattice::{weyl_lattices, perm_lattice, trivial_lattice, Induction};
use latcoh::groups::{cyclic_group, symmetric_group, PermGroup, Subgroup};
use latcoh::twisted::{coboundary_2, sb_action, Coeff, CoefficientGroup};
use latcoh::zmat::{hnf, is_unimodular, snf, IntMatrix};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows_i64(&rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5000))]

    #[test]
    fn snf_identity(a in matrix()) {
        let s = snf(&a);
        prop_assert!(is_unimodular(&s.u));
        prop_assert!(is_unimodular(&s.v));
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.s.clone());
        for i in 0..s.s.rows() {
            for j in 0..s.s.cols() {
                if i != j {
                    prop_assert!(s.s.get(i, j).is_zero());
                }
            }
        }
        for (k, d) in s.diag.iter().enumerate() {
            prop_assert!(d.is_positive());
            prop_assert_eq!(&s.s.get(k, k), d);
            if let Some(next) = s.diag.get(k + 1) {
                prop_assert!((next % d).is_zero());
            }
        }
    }

    #[test]
    fn hnf_identity(a in matrix()) {
        let h = hnf(&a);
        prop_assert!(is_unimodular(&h.u));
        prop_assert_eq!(h.u.mul(&a), h.h.clone());
        prop_assert_eq!(h.rank, h.pivots.len());
        for (r, &p) in h.pivots.iter().enumerate() {
            let pivot = h.h.get(r, p);
            prop_assert!(pivot.is_positive());
            for c in 0..p {
                prop_assert!(h.h.get(r, c).is_zero());
            }
            for above in 0..r {
                let x = h.h.get(above, p);
                prop_assert!(!x.is_negative() && x < pivot);
            }
        }
        for r in h.rank..h.h.rows() {
            prop_assert!((0..h.h.cols()).all(|c| h.h.get(r, c).is_zero()));
        }
    }
}

#[test]
fn permutation_lattices_have_no_h1() {
    for h in catalog() {
        let p = Arc::new(perm_lattice(&h).unwrap());
        let h1 = cohomology(&p, 1, DEFAULT_BUDGET).unwrap();
        assert!(h1.is_trivial(), "H^1({}, {}) = {}", h.parent().label(), p.name(), h1.invariants());
    }
}

#[test]
fn group_ring_is_acyclic() {
    for g in small_groups() {
        assert!(g.order() <= 16);
        let zg = Arc::new(perm_lattice(&Subgroup::trivial(&g, "1")).unwrap());
        for n in 1..=3 {
            let h = cohomology(&zg, n, DEFAULT_BUDGET).unwrap();
            assert!(h.is_trivial(), "H^{n}({}, Z[G]) = {}", g.label(), h.invariants());
        }
    }
}

#[test]
fn shapiro_round_trip_on_the_catalog() {
    for h in catalog() {
        let z = Arc::new(trivial_lattice(h.group(), 1));
        let ind = Induction::induced(&h, &z, "Z[G/H]").unwrap();
        for n in 1..=2 {
            check_round_trip(&ind, n, true);
        }
    }
    for m in 2..=3 {
        let p = weyl_lattices(m).unwrap();
        check_round_trip(&p.yd_induction, 1, true);
        check_round_trip(&p.yd_induction, 2, m == 2);
    }
}

#[test]
fn sb_validity_matches_cocycle_identity_exhaustively_up_to_order_4() {
    let (cases, bad) = sb_exhaustive();
    assert!(cases > 4000);
    assert_eq!(bad, 0);
}

fn order_5_and_6() -> Vec<Arc<PermGroup>> {
    vec![cyclic_group(5).unwrap(), cyclic_group(6).unwrap(), symmetric_group(3).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Coboundaries, optionally perturbed in one read entry, over groups of
    /// order 5 and 6 where full enumeration is out of reach.
    #[test]
    fn sb_validity_matches_cocycle_identity_sampled(
        gi in 0usize..3,
        ai in 0usize..3,
        f in proptest::collection::vec(-5i64..=5, 6),
        perturb in proptest::option::of((1usize..6, 1usize..6, 1i64..=2)),
    ) {
        let g = order_5_and_6().swap_remove(gi);
        let n = g.order();
        let a = match ai {
            0 => CoefficientGroup::trivial(&g, 0, vec![2]).unwrap(),
            1 => CoefficientGroup::trivial(&g, 0, vec![3]).unwrap(),
            _ => CoefficientGroup::trivial(&g, 1, vec![]).unwrap(),
        };
        let mut f1: Vec<Coeff> = f.iter().take(n).map(|&x| vec![x]).collect();
        f1[0] = vec![0];
        let mut c = coboundary_2(&g, &a, &f1);
        if let Some((x, y, d)) = perturb {
            let s = (x % n) * n + (y % n).max(1);
            c[s] = a.reduce(vec![c[s][0] + d]);
        }
        let one = Subgroup::trivial(&g, "1");
        let r = sb_action(&one, &a, c).unwrap().validity();
        prop_assert!(r.agrees(), "{}: {:?}", g.label(), r);
        if perturb.is_none() {
            prop_assert!(r.is_action());
        }
    }
}

#[test]
fn determinant_of_snf_matches() {
    // |det A| is the product of the Smith invariants for square full-rank A
    let a = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let prod = snf(&a).diag.iter().fold(BigInt::one(), |p, d| p * d);
    assert_eq!(prod, latcoh::zmat::det(&a).abs());
}
