//! Equivariant homomorphisms, isomorphism search and equivariant sections.

use std::ops::ControlFlow;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::groups::same_group;
use crate::zmat::{det, solve, IntMatrix};

use super::{hom_lattice, small_vec, GLattice, GMap};

pub const DEFAULT_ISO_BOUND: i64 = 3;
/// Candidates tried by the bounded search before giving up.
const CANDIDATE_CAP: usize = 400_000;
/// Largest `p^k` for the exhaustive determinant obstruction.
const OBSTRUCTION_LIMIT: usize = 50_000;
const FILTER_PRIMES: [i64; 4] = [2, 3, 5, 7];

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Found(GMap),
    /// No unimodular equivariant map exists; the reason says why.
    NotIsomorphic(String),
    /// The bounded search ended without a witness.
    NotFound { tried: usize },
}

impl IsoOutcome {
    pub fn found(&self) -> Option<&GMap> {
        match self {
            IsoOutcome::Found(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::Found(_) => "found",
            IsoOutcome::NotIsomorphic(_) => "not isomorphic",
            IsoOutcome::NotFound { .. } => "not found within bound",
        }
    }
}

/// A Z-basis of `Hom_G(M, N)`, each element a `rank N × rank M` matrix.
pub fn equivariant_hom_basis(m: &GLattice, n: &GLattice) -> Result<Vec<IntMatrix>> {
    let h = hom_lattice(m, n)?;
    let fixed = h.fixed_basis();
    let (rn, rm) = (n.rank(), m.rank());
    Ok(fixed
        .columns()
        .into_iter()
        .map(|c| {
            let v = small_vec(&c);
            IntMatrix::from_fn(rn, rm, |a, b| v[a * rm + b])
        })
        .collect())
}

fn det_mod_p(mat: &[i64], r: usize, p: i64) -> i64 {
    let mut a: Vec<i64> = mat.iter().map(|x| x.rem_euclid(p)).collect();
    let mut d = 1i64;
    for c in 0..r {
        let Some(piv) = (c..r).find(|&i| a[i * r + c] != 0) else {
            return 0;
        };
        if piv != c {
            for j in 0..r {
                a.swap(piv * r + j, c * r + j);
            }
            d = (p - d) % p;
        }
        let pv = a[c * r + c];
        d = d * pv % p;
        let inv = modinv(pv, p);
        for i in c + 1..r {
            let f = a[i * r + c] * inv % p;
            if f != 0 {
                for j in c..r {
                    a[i * r + j] = (a[i * r + j] - f * a[c * r + j]).rem_euclid(p);
                }
            }
        }
    }
    d
}

fn modinv(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn combine(basis: &[Vec<i64>], c: &[i64], out: &mut [i64]) {
    out.iter_mut().for_each(|x| *x = 0);
    for (b, &ci) in basis.iter().zip(c) {
        if ci != 0 {
            for (o, &v) in out.iter_mut().zip(b) {
                *o += ci * v;
            }
        }
    }
}

/// Every combination mod `p` is singular.
fn obstructed_mod(basis: &[Vec<i64>], r: usize, p: i64) -> Option<bool> {
    let k = basis.len();
    let total = (p as usize).checked_pow(k as u32)?;
    if total > OBSTRUCTION_LIMIT {
        return None;
    }
    let mut c = vec![0i64; k];
    let mut mat = vec![0i64; r * r];
    for code in 0..total {
        let mut x = code;
        for ci in c.iter_mut() {
            *ci = (x % p as usize) as i64;
            x /= p as usize;
        }
        combine(basis, &c, &mut mat);
        if det_mod_p(&mat, r, p) != 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// Calls `f` on every vector with `Σ|c_i| = s` and `|c_i| ≤ bound`, first
/// nonzero entry positive.
fn for_each_norm(k: usize, s: i64, bound: i64, f: &mut dyn FnMut(&[i64]) -> ControlFlow<()>) -> ControlFlow<()> {
    fn rec(
        c: &mut Vec<i64>,
        i: usize,
        left: i64,
        bound: i64,
        seen_nonzero: bool,
        f: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = c.len();
        if i == k {
            return if left == 0 { f(c) } else { ControlFlow::Continue(()) };
        }
        if left > bound * (k - i) as i64 {
            return ControlFlow::Continue(());
        }
        for a in 0..=left.min(bound) {
            let signs: &[i64] = if a == 0 || !seen_nonzero { &[1] } else { &[1, -1] };
            for &sg in signs {
                c[i] = sg * a;
                rec(c, i + 1, left - a, bound, seen_nonzero || a != 0, f)?;
            }
        }
        c[i] = 0;
        ControlFlow::Continue(())
    }
    let mut c = vec![0i64; k];
    rec(&mut c, 0, s, bound, false, f)
}

/// Searches for an equivariant isomorphism `M → N`.
pub fn find_equivariant_iso(m: &Arc<GLattice>, n: &Arc<GLattice>, bound: i64) -> Result<IsoOutcome> {
    if !same_group(m.group(), n.group()) {
        return Err(Error::GroupMismatch("iso search over different groups".into()));
    }
    if m.rank() != n.rank() {
        return Ok(IsoOutcome::NotIsomorphic(format!("ranks {} and {}", m.rank(), n.rank())));
    }
    let r = m.rank();
    if r == 0 {
        return Ok(IsoOutcome::Found(GMap::new(m, n, IntMatrix::zeros(0, 0))?));
    }
    let basis_m = equivariant_hom_basis(m, n)?;
    if basis_m.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero equivariant map".into()));
    }
    let basis: Vec<Vec<i64>> = basis_m
        .iter()
        .map(|b| (0..r * r).map(|i| b.get_i64(i / r, i % r)).collect())
        .collect();
    for p in [2i64, 3] {
        if obstructed_mod(&basis, r, p) == Some(true) {
            return Ok(IsoOutcome::NotIsomorphic(format!(
                "every equivariant map has determinant divisible by {p}"
            )));
        }
    }
    let k = basis.len();
    let mut tried = 0usize;
    let mut mat = vec![0i64; r * r];
    let mut hit: Option<Vec<i64>> = None;
    'outer: for s in 1..=(k as i64 * bound) {
        let flow = for_each_norm(k, s, bound, &mut |c| {
            tried += 1;
            if tried > CANDIDATE_CAP {
                return ControlFlow::Break(());
            }
            combine(&basis, c, &mut mat);
            if FILTER_PRIMES.iter().any(|&p| det_mod_p(&mat, r, p) == 0) {
                return ControlFlow::Continue(());
            }
            let d = det(&IntMatrix::from_dense(r, r, mat.iter().map(|&x| BigInt::from(x)).collect()));
            if d.abs().is_one() {
                hit = Some(mat.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            break 'outer;
        }
    }
    match hit {
        Some(mat) => {
            let f = IntMatrix::from_dense(r, r, mat.into_iter().map(BigInt::from).collect());
            Ok(IsoOutcome::Found(GMap::new(m, n, f)?))
        }
        None => Ok(IsoOutcome::NotFound {
            tried: tried.min(CANDIDATE_CAP),
        }),
    }
}

/// An equivariant map `s: C → B` with `f ∘ s = 1`, if one exists.
pub fn equivariant_section(f: &GMap) -> Result<Option<GMap>> {
    let (b, c) = (f.source(), f.target());
    let basis = equivariant_hom_basis(c, b)?;
    let rc = c.rank();
    if rc == 0 {
        return Ok(Some(GMap::new(c, b, IntMatrix::zeros(b.rank(), 0))?));
    }
    // Σ x_i (f X_i) = 1, one column per basis element
    let cols: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|x| {
            let p = f.matrix().mul(x);
            (0..rc * rc).map(|i| p.get(i / rc, i % rc)).collect()
        })
        .collect();
    let a = IntMatrix::from_columns(&cols, rc * rc);
    let target: Vec<BigInt> = (0..rc * rc)
        .map(|i| if i / rc == i % rc { BigInt::one() } else { BigInt::from(0) })
        .collect();
    let Some(x) = solve(&a, &target) else {
        return Ok(None);
    };
    let mut s = IntMatrix::zeros(b.rank(), rc);
    for (xi, bi) in x.iter().zip(&basis) {
        s = s.add(&bi.scale(xi));
    }
    Ok(Some(GMap::new(c, b, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glattice::{direct_sum, perm_lattice, sign_lattice, trivial_lattice};
    use crate::groups::{symmetric_group, z2, GroupHom, Perm, Subgroup};

    #[test]
    fn identity_is_found() {
        let s3 = symmetric_group(3).unwrap();
        let s2 = Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "S2").unwrap();
        let p = Arc::new(perm_lattice(&s2).unwrap());
        assert!(find_equivariant_iso(&p, &p, 3).unwrap().is_found());
    }

    #[test]
    fn regular_s2_is_not_sign_plus_trivial() {
        let s2 = symmetric_group(2).unwrap();
        let reg = Arc::new(perm_lattice(&Subgroup::trivial(&s2, "1")).unwrap());
        let chi = GroupHom::from_generator_images(&s2, &z2(), &[Perm::transposition(2, 0, 1)]).unwrap();
        let sgn = sign_lattice(&chi, "Z-").unwrap();
        let triv = trivial_lattice(&s2, 1);
        let sum = Arc::new(direct_sum(&[&sgn, &triv], "Z- + Z").unwrap());
        match find_equivariant_iso(&reg, &sum, 3).unwrap() {
            IsoOutcome::NotIsomorphic(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brute_force_agrees_on_determinants() {
        // every equivariant Z[S2] → Z- ⊕ Z with entries in [-3,3] has even determinant
        let s2 = symmetric_group(2).unwrap();
        let reg = perm_lattice(&Subgroup::trivial(&s2, "1")).unwrap();
        let chi = GroupHom::from_generator_images(&s2, &z2(), &[Perm::transposition(2, 0, 1)]).unwrap();
        let sgn = sign_lattice(&chi, "Z-").unwrap();
        let sum = direct_sum(&[&sgn, &trivial_lattice(&s2, 1)], "Z- + Z").unwrap();
        let a_reg = reg.action_matrix(1);
        let a_sum = sum.action_matrix(1);
        let mut count = 0;
        for code in 0..7i64.pow(4) {
            let v: Vec<i64> = (0..4).map(|i| (code / 7i64.pow(i)) % 7 - 3).collect();
            let f = IntMatrix::from_rows_i64(&[vec![v[0], v[1]], vec![v[2], v[3]]]);
            if a_sum.mul(&f) == f.mul(&a_reg) {
                count += 1;
                assert!(det(&f) % BigInt::from(2) == BigInt::from(0));
            }
        }
        assert!(count > 1);
    }

    #[test]
    fn section_of_split_and_nonsplit() {
        let s2 = symmetric_group(2).unwrap();
        let one = Subgroup::trivial(&s2, "1");
        let (_, _, aug) = crate::glattice::augmentation_sublattice(&one).unwrap();
        // fixed vectors of Z[S2] have even augmentation
        assert!(equivariant_section(&aug).unwrap().is_none());
        let whole = Subgroup::whole(&s2);
        let (_, _, aug1) = crate::glattice::augmentation_sublattice(&whole).unwrap();
        assert!(equivariant_section(&aug1).unwrap().is_some());
    }
}
