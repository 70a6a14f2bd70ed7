use super::*;
use crate::glattice::{perm_lattice, trivial_lattice, Induction};
use crate::groups::{cyclic_group, symmetric_group, Perm, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s3_s2() -> (Arc<PermGroup>, Subgroup) {
    let s3 = symmetric_group(3).unwrap();
    let s2 = Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "S2").unwrap();
    (s3, s2)
}

fn random_cochain(cx: &Complex, n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    (0..cx.dim(n)).map(|_| rng.gen_range(-3..=3)).collect()
}

fn torsion(h: &CohomologyGroup) -> Vec<u64> {
    h.orders().to_vec()
}

#[test]
fn d_squared_is_zero() {
    let (_, s2) = s3_s2();
    let m = Arc::new(perm_lattice(&s2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cx in [Complex::new(&m), Complex::unnormalized(&m)] {
        for n in 0..3 {
            let c = random_cochain(&cx, n, &mut rng);
            let dc = cx.d(n, &c).unwrap();
            assert!(cx.is_cocycle(n + 1, &dc).unwrap());
        }
    }
}

#[test]
fn cyclic_group_integers() {
    let c4 = cyclic_group(4).unwrap();
    let z = Arc::new(trivial_lattice(&c4, 1));
    let h: Vec<_> = (0..4).map(|n| cohomology(&z, n, DEFAULT_BUDGET).unwrap()).collect();
    assert_eq!(h[0].invariants().free_rank, 1);
    assert!(h[1].is_trivial());
    assert_eq!(torsion(&h[2]), vec![4]);
    assert!(h[3].is_trivial());
}

#[test]
fn symmetric_group_integers() {
    let s3 = symmetric_group(3).unwrap();
    let z = Arc::new(trivial_lattice(&s3, 1));
    assert_eq!(torsion(&cohomology(&z, 2, DEFAULT_BUDGET).unwrap()), vec![2]);
    assert!(cohomology(&z, 3, DEFAULT_BUDGET).unwrap().is_trivial());
}

#[test]
fn augmentation_ideal_of_s3() {
    let (_, s2) = s3_s2();
    let cc = canonical_class(&s2, DEFAULT_BUDGET).unwrap();
    assert_eq!(torsion(&cc.group), vec![3]);
    assert_eq!(cc.class.order(), 3);
}

#[test]
fn normalized_agrees_with_unnormalized() {
    let (s3, s2) = s3_s2();
    let p = Arc::new(perm_lattice(&s2).unwrap());
    let z2 = Arc::new(trivial_lattice(&s3, 2));
    let (i, _, _) = crate::glattice::augmentation_sublattice(&s2).unwrap();
    for m in [p, z2, i] {
        for n in 1..3 {
            let a = CohomologyGroup::compute(&Complex::new(&m), n, DEFAULT_BUDGET).unwrap();
            let b = CohomologyGroup::compute(&Complex::unnormalized(&m), n, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.invariants(), b.invariants(), "{} degree {n}", m.name());
        }
    }
}

#[test]
fn generators_have_unit_coordinates() {
    let c6 = cyclic_group(6).unwrap();
    let z = Arc::new(trivial_lattice(&c6, 2));
    let h = cohomology(&z, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(torsion(&h), vec![6, 6]);
    for (k, g) in h.generators().iter().enumerate() {
        assert!(h.complex().is_cocycle(2, g).unwrap());
        let c = h.coordinates(g).unwrap();
        let mut e = vec![0; 2];
        e[k] = 1;
        assert_eq!(c, e);
    }
}

#[test]
fn coboundaries_vanish() {
    let (_, s2) = s3_s2();
    let (i, _, _) = crate::glattice::augmentation_sublattice(&s2).unwrap();
    let h = cohomology(&i, 2, DEFAULT_BUDGET).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = random_cochain(h.complex(), 1, &mut rng);
    let db = h.complex().d(1, &b).unwrap();
    assert!(h.is_zero(&db).unwrap());
    let z = h.cocycle(&[1]);
    let shifted: Vec<i64> = z.iter().zip(&db).map(|(a, b)| a + b).collect();
    assert_eq!(h.coordinates(&shifted).unwrap(), h.coordinates(&z).unwrap());
}

#[test]
fn shapiro_round_trip() {
    let (s3, s2) = s3_s2();
    let z = Arc::new(trivial_lattice(s2.group(), 1));
    let ind = Induction::induced(&s2, &z, "Z[S3/S2]").unwrap();
    let big = cohomology(ind.big(), 2, DEFAULT_BUDGET).unwrap();
    let small = cohomology(ind.small(), 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(torsion(&big), vec![2]);
    assert_eq!(torsion(&small), vec![2]);
    let e = small.generators()[0].clone();
    let f = shapiro_inverse(&ind, 2, &e).unwrap();
    assert!(big.complex().is_cocycle(2, &f).unwrap());
    assert_eq!(big.coordinates(&f).unwrap(), vec![1]);
    let back = shapiro_forward(&ind, 2, &f).unwrap();
    assert_eq!(small.coordinates(&back).unwrap(), vec![1]);
    let _ = s3;
}

#[test]
fn extension_classes_round_trip() {
    let (_, s2) = s3_s2();
    let cc = canonical_class(&s2, DEFAULT_BUDGET).unwrap();
    let (hom, phi) = extension_class(&cc.ses).unwrap();
    let cx = Complex::new(&hom);
    assert!(cx.is_cocycle(1, &phi).unwrap());
    let ses = extension_from_cocycle(cc.ses.sub(), cc.ses.quotient(), &phi, "E").unwrap();
    let (_, phi2) = extension_class(&ses).unwrap();
    let ext = cohomology(&hom, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(ext.coordinates(&phi).unwrap(), ext.coordinates(&phi2).unwrap());
    assert_eq!(ext.class_order(&ext.coordinates(&phi).unwrap()), 3);
}

#[test]
fn over_budget_is_reported() {
    let s4 = symmetric_group(4).unwrap();
    let z = Arc::new(trivial_lattice(&s4, 1));
    match cohomology(&z, 3, 1000) {
        Err(Error::Budget { needed, budget, hint }) => {
            assert_eq!(needed, 24u128.pow(4));
            assert_eq!(budget, 1000);
            assert!(hint.contains("--via-shapiro"));
        }
        other => panic!("expected a budget error, got {other:?}"),
    }
}

#[test]
fn class_arithmetic() {
    let c6 = cyclic_group(6).unwrap();
    let z = Arc::new(trivial_lattice(&c6, 1));
    let h = cohomology(&z, 2, DEFAULT_BUDGET).unwrap();
    let c = h.class_from_coords(&[1]);
    assert_eq!(c.order(), 6);
    assert_eq!(c.scale(2).order(), 3);
    assert_eq!(c.scale(3).order(), 2);
    assert!(c.add(&c.neg()).is_zero());
}

fn sign_s3() -> Arc<GLattice> {
    let s3 = symmetric_group(3).unwrap();
    let z2 = crate::groups::z2();
    let swap = Perm::transposition(2, 0, 1);
    let chi = crate::groups::GroupHom::from_generator_images(&s3, &z2, &[swap, Perm::identity(2)]).unwrap();
    Arc::new(crate::glattice::sign_lattice(&chi, "Z-").unwrap())
}

#[test]
fn lemma04_small_triples() {
    let (s3, s2) = s3_s2();
    let z = Arc::new(trivial_lattice(&s3, 1));
    let r = lemma04_d(&s2, &z, DEFAULT_BUDGET).unwrap();
    assert!(r.exact(), "{r:?}");
    assert!(r.route_sign.is_some());
    // H^1(S3, Z-) → H^1(S2, Z-) is onto, so the first map cannot be injective
    let r = lemma04_d(&s2, &sign_s3(), DEFAULT_BUDGET).unwrap();
    assert_eq!(r.h1_h, vec![2]);
    assert!(!r.res1_zero && !r.a_injective);
    assert!(r.im_a_is_ker_d && r.im_d_is_ker_res);
    assert!(r.route_sign.is_some(), "{r:?}");
}

#[test]
fn lemma04_with_nonzero_h1() {
    let (s3, s2) = s3_s2();
    let a3 = Subgroup::new(&s3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()], "A3").unwrap();
    let (i, _, _) = crate::glattice::augmentation_sublattice(&s2).unwrap();
    let z = trivial_lattice(&s3, 1);
    let m = Arc::new(crate::glattice::hom_lattice(&i, &z).unwrap());
    let r = lemma04_d(&a3, &m, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.h1_h, vec![3]);
    assert!(r.res1_zero);
    assert!(r.exact(), "{r:?}");
    assert!(r.route_sign.is_some(), "{r:?}");
}

#[test]
fn lemma04_weyl_yd() {
    let p = crate::glattice::weyl_lattices(2).unwrap();
    let r = lemma04_d(&p.weyl.h, &p.yd, DEFAULT_BUDGET).unwrap();
    assert!(r.exact(), "{r:?}");
    assert!(r.route_sign.is_some(), "{r:?}");
}

#[test]
fn lemma08_routes_agree() {
    for m in [2, 3] {
        let p = crate::glattice::weyl_lattices(m).unwrap();
        let w = &p.weyl;
        let g = w.g().unwrap().clone();
        let h2 = w.h2().unwrap().clone();
        let setup = DoubleCosetSetup::new(&w.h, &h2, &g, &p.yd).unwrap();
        let r = lemma08_h(&setup, DEFAULT_BUDGET).unwrap();
        assert!(r.agree, "m = {m}: {r:?}");
        let ghg = crate::groups::conjugate_subgroup(&w.h, &g).unwrap();
        let both = crate::groups::intersection(&w.h, &ghg, "H ∩ gHg⁻¹").unwrap();
        let setup = DoubleCosetSetup::new(&w.h, &both, &g, &p.yd).unwrap();
        let r = lemma08_h(&setup, DEFAULT_BUDGET).unwrap();
        assert!(r.agree, "m = {m}, H ∩ gHg⁻¹: {r:?}");
        assert!(!r.h2_h1.is_empty());
    }
}

#[test]
fn order_six_splits_into_three_and_four() {
    let c6 = cyclic_group(6).unwrap();
    let z = Arc::new(trivial_lattice(&c6, 1));
    let h = cohomology(&z, 2, DEFAULT_BUDGET).unwrap();
    let c = h.class_from_coords(&[1]);
    let (a, b) = class_order_decomposition(&c);
    assert_eq!(a.coords, vec![3]);
    assert_eq!(b.coords, vec![4]);
    assert_eq!((a.order(), b.order()), (2, 3));
    assert!(a.add(&b).same_class(&c));
    let zero = h.zero_class();
    let (a, b) = class_order_decomposition(&zero);
    assert!(a.is_zero() && b.is_zero());
}
