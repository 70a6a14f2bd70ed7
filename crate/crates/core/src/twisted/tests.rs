use super::*;
use crate::cohomology::{cohomology, DEFAULT_BUDGET};
use crate::glattice::{augmentation_sublattice, hom_lattice, trivial_lattice};
use crate::groups::{cyclic_group, symmetric_group, Perm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn swap_lattice(g: &Arc<PermGroup>) -> Arc<GLattice> {
    // every generator swaps the two basis vectors
    let sw = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
    let gens = vec![sw; g.generators().len()];
    Arc::new(GLattice::new(g, &gens, None, "Z²swap").unwrap())
}

fn klein() -> Arc<PermGroup> {
    let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    Arc::new(PermGroup::new(4, vec![a, b], "V4").unwrap())
}

/// All maps `Hom(M, Z/2)` for a lattice of the given rank.
fn homs_z2(rank: usize) -> Vec<HomToCoeff> {
    (0..1usize << rank)
        .map(|bits| (0..rank).map(|b| vec![((bits >> b) & 1) as i64]).collect())
        .collect()
}

fn is_cocycle_map(m: &GLattice, a: &CoefficientGroup, phi: &[HomToCoeff]) -> bool {
    let g = m.group();
    let rank = m.rank();
    for x in 0..g.order() {
        for y in 0..g.order() {
            for b in 0..rank {
                let ym = m.act(y, &unit(rank, b)).unwrap();
                let rhs = a.add(&a.act(x, &phi[y][b]), &hom_apply(a, &phi[x], &ym));
                if a.reduce(phi[g.mul(x, y)][b].clone()) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn zero_twist_is_valid_and_untwists_to_zero() {
    let s3 = symmetric_group(3).unwrap();
    let m = Arc::new(trivial_lattice(&s3, 2));
    let a = CoefficientGroup::trivial(&s3, 0, vec![4]).unwrap();
    let zero = vec![vec![a.zero(); 2]; 2];
    let t = make_twisted(&m, &a, &zero).unwrap();
    let psi = t.untwist().unwrap().unwrap();
    assert!(psi.iter().all(|c| a.is_zero(c)));
}

#[test]
fn coboundary_twists_are_accepted_and_untwisted() {
    let s3 = symmetric_group(3).unwrap();
    let s2 = crate::groups::Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "S2").unwrap();
    let m = Arc::new(crate::glattice::perm_lattice(&s2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for torsion in [vec![4], vec![], vec![3]] {
        let free = usize::from(torsion.is_empty());
        let a = CoefficientGroup::trivial(&s3, free, torsion).unwrap();
        for _ in 0..10 {
            let psi: HomToCoeff = (0..3).map(|_| a.reduce(vec![rng.gen_range(-5..=5)])).collect();
            let tw = coboundary_twist(&m, &a, &psi).unwrap();
            let t = make_twisted(&m, &a, &tw).unwrap();
            let back = t.untwist().unwrap().expect("coboundary untwists");
            assert_eq!(coboundary_twist(&m, &a, &back).unwrap(), tw);
        }
    }
}

#[test]
fn random_non_cocycle_is_rejected() {
    let c2 = cyclic_group(2).unwrap();
    let m = swap_lattice(&c2);
    let a = CoefficientGroup::trivial(&c2, 0, vec![4]).unwrap();
    // φ_s(e1) = 1, φ_s(e2) = 0: then φ_{s²}(e1) = φ_s(e1) + φ_s(e2) = 1 ≠ 0
    let tw = vec![vec![vec![1], vec![0]]];
    match make_twisted(&m, &a, &tw) {
        Err(Error::CocycleCondition(pair)) => assert!(pair.contains("generator 1")),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn acceptance_matches_brute_force_enumeration() {
    for g in [cyclic_group(2).unwrap(), cyclic_group(3).unwrap(), cyclic_group(4).unwrap(), klein()] {
        let a = CoefficientGroup::trivial(&g, 0, vec![2]).unwrap();
        let mut lattices = vec![Arc::new(trivial_lattice(&g, 1)), Arc::new(trivial_lattice(&g, 2))];
        if g.order() % 2 == 0 {
            lattices.push(swap_lattice(&g));
        }
        for m in lattices {
            let homs = homs_z2(m.rank());
            let n = g.order();
            let mut brute = std::collections::BTreeSet::new();
            let mut idx = vec![0usize; n];
            loop {
                let phi: Vec<HomToCoeff> = idx.iter().map(|&i| homs[i].clone()).collect();
                if is_cocycle_map(&m, &a, &phi) {
                    let on_gens: Vec<HomToCoeff> = g.generator_indices().iter().map(|&s| phi[s].clone()).collect();
                    brute.insert(on_gens);
                }
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < homs.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
            let ngen = g.generators().len();
            let mut accepted = std::collections::BTreeSet::new();
            for code in 0..homs.len().pow(ngen as u32) {
                let tw: Vec<HomToCoeff> = (0..ngen).map(|s| homs[(code / homs.len().pow(s as u32)) % homs.len()].clone()).collect();
                if make_twisted(&m, &a, &tw).is_ok() {
                    accepted.insert(tw);
                }
            }
            assert_eq!(brute, accepted, "{} on {}", g.label(), m.name());
        }
    }
}

/// `φ_g = f_g ∘ g` for a 1-cocycle of the normalized complex on `Hom(M, Z)`.
fn twist_from_hom_cocycle(m: &GLattice, hom: &Arc<GLattice>, z: &[i64]) -> Vec<HomToCoeff> {
    let cx = crate::cohomology::Complex::new(hom);
    let rank = m.rank();
    m.group()
        .generator_indices()
        .iter()
        .map(|&g| {
            let f = cx.value(z, &[g]);
            (0..rank)
                .map(|b| {
                    let gx = m.act(g, &unit(rank, b)).unwrap();
                    vec![gx.iter().enumerate().map(|(bp, &x)| x * f[bp]).sum()]
                })
                .collect()
        })
        .collect()
}

#[test]
fn untwist_matches_vanishing_of_the_class() {
    let s3 = symmetric_group(3).unwrap();
    let s2 = crate::groups::Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "S2").unwrap();
    let a3 = crate::groups::Subgroup::new(&s3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()], "A3").unwrap();
    let (i, _, _) = augmentation_sublattice(&s2).unwrap();
    let i = Arc::new(i.restrict(a3.group()).unwrap());
    let z = trivial_lattice(a3.group(), 1);
    let hom = Arc::new(hom_lattice(&i, &z).unwrap());
    let h1 = cohomology(&hom, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(h1.orders(), &[3]);
    let a = CoefficientGroup::trivial(a3.group(), 1, vec![]).unwrap();
    for k in 0..4i64 {
        let zk = h1.cocycle(&[k]);
        let tw = twist_from_hom_cocycle(&i, &hom, &zk);
        let t = make_twisted(&i, &a, &tw).unwrap();
        let back: Vec<i64> = {
            let fs = t.as_hom_cochain().unwrap();
            let cx = crate::cohomology::Complex::new(&hom);
            cx.from_fn(1, |tuple, out| {
                for (b, c) in fs[tuple[0]].iter().enumerate() {
                    out[b] = c[0];
                }
                Ok(())
            })
            .unwrap()
        };
        assert_eq!(back, zk);
        let vanishes = h1.is_zero(&zk).unwrap();
        assert_eq!(t.untwist().unwrap().is_some(), vanishes, "k = {k}");
        assert_eq!(vanishes, k % 3 == 0);
    }
}

#[test]
fn twisted_action_composes() {
    let c4 = cyclic_group(4).unwrap();
    let m = swap_lattice(&c4);
    let a = CoefficientGroup::trivial(&c4, 0, vec![2]).unwrap();
    let tw = vec![vec![vec![1], vec![1]]];
    let t = make_twisted(&m, &a, &tw).unwrap();
    for g in 0..4 {
        for h in 0..4 {
            for exps in [vec![1, 0], vec![0, 1], vec![2, -1]] {
                let (c1, e1) = t.apply(h, &[1], &exps).unwrap();
                let (c2, e2) = t.apply(g, &c1, &e1).unwrap();
                assert_eq!((c2, e2), t.apply(c4.mul(g, h), &[1], &exps).unwrap());
            }
        }
    }
}

fn all_maps(n: usize, values: &[i64]) -> impl Iterator<Item = Vec<Coeff>> + '_ {
    let total = values.len().pow((n * n) as u32);
    (0..total).map(move |mut code| {
        (0..n * n)
            .map(|_| {
                let v = values[code % values.len()];
                code /= values.len();
                vec![v]
            })
            .collect()
    })
}

#[test]
fn nontrivial_class_on_z2_gives_an_action() {
    let c2 = cyclic_group(2).unwrap();
    let one = crate::groups::Subgroup::trivial(&c2, "1");
    let a = CoefficientGroup::trivial(&c2, 0, vec![2]).unwrap();
    let c = vec![vec![0], vec![0], vec![0], vec![1]];
    let r = sb_action(&one, &a, c.clone()).unwrap().validity();
    assert!(r.is_action() && r.cocycle_identity);
    let mut bad = c;
    bad[1] = vec![1];
    let r = sb_action(&one, &a, bad).unwrap().validity();
    assert!(!r.is_action() && !r.cocycle_identity);
}

#[test]
fn sb_validity_is_the_cocycle_identity_exhaustively() {
    for g in [cyclic_group(2).unwrap(), cyclic_group(3).unwrap()] {
        let one = crate::groups::Subgroup::trivial(&g, "1");
        for (a, values) in [
            (CoefficientGroup::trivial(&g, 0, vec![2]).unwrap(), vec![0, 1]),
            (CoefficientGroup::trivial(&g, 0, vec![3]).unwrap(), vec![0, 1, 2]),
            (CoefficientGroup::trivial(&g, 1, vec![]).unwrap(), vec![-1, 0, 1]),
        ] {
            if g.order() == 3 && a.free_rank() == 1 {
                continue;
            }
            let mut valid = 0;
            for c in all_maps(g.order(), &values) {
                let r = sb_action(&one, &a, c).unwrap().validity();
                assert!(r.agrees(), "{r:?}");
                valid += r.is_action() as usize;
            }
            assert!(valid > 1);
        }
    }
}
