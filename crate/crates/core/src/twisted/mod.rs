//! Twisted monomial actions over a formal coefficient group.
//!
//! A coefficient group is `A = Z^r ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`, written as integer
//! vectors with the torsion entries reduced. A twist on a lattice `M` assigns
//! to each group element `g` a map `φ_g ∈ Hom(M, A)` and acts on monomials by
//! `g(a·x^m) = (g·a + φ_g(m))·x^{gm}`; this is an action exactly when
//! `φ_{gh}(m) = g·φ_h(m) + φ_g(h·m)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::glattice::GLattice;
use crate::groups::{cosets, PermGroup, Subgroup};
use crate::zmat::{det, solve, IntMatrix};

/// An element of a coefficient group.
pub type Coeff = Vec<i64>;

/// `Hom(M, A)` as one coefficient per basis vector of `M`.
pub type HomToCoeff = Vec<Coeff>;

#[derive(Clone, Debug)]
pub struct CoefficientGroup {
    group: Arc<PermGroup>,
    free_rank: usize,
    torsion: Vec<i64>,
    /// dim×dim matrix per group element, row-major
    mats: Vec<Vec<i64>>,
}

impl CoefficientGroup {
    /// `A` with generator matrices acting on the coordinate vectors.
    pub fn new(group: &Arc<PermGroup>, free_rank: usize, torsion: Vec<i64>, gens: &[Vec<Vec<i64>>]) -> Result<CoefficientGroup> {
        let dim = free_rank + torsion.len();
        if torsion.iter().any(|&t| t < 2) {
            return Err(Error::Invalid("torsion orders must be at least 2".into()));
        }
        if gens.len() != group.generators().len() {
            return Err(Error::Invalid(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let mut a = CoefficientGroup {
            group: group.clone(),
            free_rank,
            torsion,
            mats: vec![identity(dim); group.order()],
        };
        let flat: Vec<Vec<i64>> = gens
            .iter()
            .map(|m| {
                if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                    return Err(Error::Invalid(format!("action matrices must be {dim}×{dim}")));
                }
                Ok(m.concat())
            })
            .collect::<Result<_>>()?;
        for m in &flat {
            a.check_matrix(m)?;
        }
        for i in 1..group.order() {
            let (p, k) = group.word_step(i).expect("non-identity");
            a.mats[i] = a.reduce_matrix(&mat_mul(&flat[k], &a.mats[p], dim));
        }
        for s in 0..flat.len() {
            let si = group.generator_indices()[s];
            if a.reduce_matrix(&flat[s]) != a.mats[si] {
                return Err(Error::NotHomomorphism(format!("generator {} of the coefficient action", s + 1)));
            }
            for x in 0..group.order() {
                let lhs = a.reduce_matrix(&mat_mul(&a.mats[si], &a.mats[x], dim));
                if lhs != a.mats[group.mul(si, x)] {
                    return Err(Error::NotHomomorphism(format!("coefficient action at generator {}", s + 1)));
                }
            }
        }
        Ok(a)
    }

    /// `A` with trivial action.
    pub fn trivial(group: &Arc<PermGroup>, free_rank: usize, torsion: Vec<i64>) -> Result<CoefficientGroup> {
        let dim = free_rank + torsion.len();
        let id: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
        CoefficientGroup::new(group, free_rank, torsion, &vec![id; group.generators().len()])
    }

    /// A lattice viewed as a torsion-free coefficient group.
    pub fn from_lattice(m: &GLattice) -> Result<CoefficientGroup> {
        let n = m.rank();
        let gens: Vec<Vec<Vec<i64>>> = m
            .group()
            .generator_indices()
            .iter()
            .map(|&g| {
                let mat = m.action_matrix(g);
                (0..n).map(|i| (0..n).map(|j| mat.get_i64(i, j)).collect()).collect()
            })
            .collect();
        CoefficientGroup::new(m.group(), n, vec![], &gens)
    }

    fn check_matrix(&self, m: &[i64]) -> Result<()> {
        let (r, dim) = (self.free_rank, self.dim());
        for j in r..dim {
            let t = self.torsion[j - r];
            for i in 0..dim {
                let v = m[i * dim + j];
                if i < r && v != 0 {
                    return Err(Error::Invalid("torsion may not map into the free part".into()));
                }
                if i >= r && (t * v) % self.torsion[i - r] != 0 {
                    return Err(Error::Invalid(format!("column {} is not well defined on Z/{t}", j + 1)));
                }
            }
        }
        let free = IntMatrix::from_fn(r, r, |i, j| m[i * dim + j]);
        let d = det(&free);
        if r > 0 && d != BigInt::from(1) && d != BigInt::from(-1) {
            return Err(Error::Invalid("action on the free part is not unimodular".into()));
        }
        Ok(())
    }

    fn reduce_matrix(&self, m: &[i64]) -> Vec<i64> {
        let dim = self.dim();
        let mut out = m.to_vec();
        for i in self.free_rank..dim {
            let t = self.torsion[i - self.free_rank];
            for j in 0..dim {
                out[i * dim + j] = out[i * dim + j].rem_euclid(t);
            }
        }
        out
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> Coeff {
        vec![0; self.dim()]
    }

    pub fn reduce(&self, mut a: Coeff) -> Coeff {
        for (i, t) in self.torsion.iter().enumerate() {
            a[self.free_rank + i] = a[self.free_rank + i].rem_euclid(*t);
        }
        a
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Coeff {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Coeff {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Coeff {
        self.reduce(a.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        self.reduce(a.to_vec()).iter().all(|&x| x == 0)
    }

    pub fn act(&self, g: usize, a: &[i64]) -> Coeff {
        let dim = self.dim();
        let m = &self.mats[g];
        self.reduce((0..dim).map(|i| (0..dim).map(|j| m[i * dim + j] * a[j]).sum()).collect())
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = identity(self.dim());
        self.mats.iter().all(|m| *m == id)
    }

    /// Every element, when `A` is finite and has at most `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Coeff>> {
        if self.free_rank > 0 {
            return None;
        }
        let total: usize = self.torsion.iter().map(|&t| t as usize).product();
        if total > limit {
            return None;
        }
        let mut out = vec![vec![]];
        for &t in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..t).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }
}

fn identity(dim: usize) -> Vec<i64> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], dim: usize) -> Vec<i64> {
    let mut out = vec![0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let x = a[i * dim + k];
            if x != 0 {
                for j in 0..dim {
                    out[i * dim + j] += x * b[k * dim + j];
                }
            }
        }
    }
    out
}

/// `L_φ[M]`: a lattice, coefficients and a twist on every group element.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    lattice: Arc<GLattice>,
    coeffs: CoefficientGroup,
    /// `φ_g` for every element, indexed like the group
    phi: Vec<HomToCoeff>,
}

/// Applies `f ∈ Hom(M, A)` to a vector of `M`.
pub fn hom_apply(a: &CoefficientGroup, f: &[Coeff], v: &[i64]) -> Coeff {
    let mut out = a.zero();
    for (c, x) in f.iter().zip(v) {
        if *x != 0 {
            for (o, y) in out.iter_mut().zip(c) {
                *o += x * y;
            }
        }
    }
    a.reduce(out)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Builds the twisted action from `φ_s` on the generators (in the order of
/// `group.generators()`), extending by `φ_{sx}(m) = s·φ_x(m) + φ_s(x·m)`.
pub fn make_twisted(m: &Arc<GLattice>, a: &CoefficientGroup, twist: &[HomToCoeff]) -> Result<TwistedAction> {
    let grp = m.group().clone();
    if !crate::groups::same_group(&grp, a.group()) {
        return Err(Error::GroupMismatch("lattice and coefficients over different groups".into()));
    }
    if twist.len() != grp.generators().len() || twist.iter().any(|f| f.len() != m.rank() || f.iter().any(|c| c.len() != a.dim())) {
        return Err(Error::Invalid("twist must give one Hom(M, A) per generator".into()));
    }
    let gens: Vec<HomToCoeff> = twist.iter().map(|f| f.iter().map(|c| a.reduce(c.clone())).collect()).collect();
    let n = grp.order();
    let rank = m.rank();
    let step = |s: usize, x: usize, phi_x: &HomToCoeff| -> Result<HomToCoeff> {
        let si = grp.generator_indices()[s];
        (0..rank)
            .map(|b| {
                let xm = m.act(x, &unit(rank, b))?;
                Ok(a.add(&a.act(si, &phi_x[b]), &hom_apply(a, &gens[s], &xm)))
            })
            .collect()
    };
    let mut phi: Vec<Option<HomToCoeff>> = vec![None; n];
    phi[0] = Some(vec![a.zero(); rank]);
    for i in 1..n {
        let (p, k) = grp.word_step(i).expect("non-identity");
        let prev = phi[p].clone().expect("breadth-first order");
        phi[i] = Some(step(k, p, &prev)?);
    }
    let phi: Vec<HomToCoeff> = phi.into_iter().map(|x| x.expect("all elements reached")).collect();
    for s in 0..gens.len() {
        let si = grp.generator_indices()[s];
        if phi[si] != gens[s] {
            return Err(Error::CocycleCondition(format!(
                "(generator {}, identity): value differs from the extension along words",
                s + 1
            )));
        }
        for x in 0..n {
            if step(s, x, &phi[x])? != phi[grp.mul(si, x)] {
                return Err(Error::CocycleCondition(format!(
                    "(generator {}, element {})",
                    s + 1,
                    grp.element(x)
                )));
            }
        }
    }
    Ok(TwistedAction {
        lattice: m.clone(),
        coeffs: a.clone(),
        phi,
    })
}

/// The twist `φ_g(m) = ψ(g·m) − g·ψ(m)` obtained by conjugating the untwisted
/// action with the rescaling `x^m ↦ ψ(m)·x^m`, on the generators.
pub fn coboundary_twist(m: &GLattice, a: &CoefficientGroup, psi: &[Coeff]) -> Result<Vec<HomToCoeff>> {
    let rank = m.rank();
    m.group()
        .generator_indices()
        .iter()
        .map(|&g| {
            (0..rank)
                .map(|b| {
                    let gm = m.act(g, &unit(rank, b))?;
                    Ok(a.sub(&hom_apply(a, psi, &gm), &a.act(g, &psi[b])))
                })
                .collect()
        })
        .collect()
}

impl TwistedAction {
    pub fn lattice(&self) -> &Arc<GLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &CoefficientGroup {
        &self.coeffs
    }

    /// `φ_g` for the element with index `g`.
    pub fn twist(&self, g: usize) -> &HomToCoeff {
        &self.phi[g]
    }

    /// `g(a·x^m) = (g·a + φ_g(m))·x^{gm}`.
    pub fn apply(&self, g: usize, coeff: &[i64], exps: &[i64]) -> Result<(Coeff, Vec<i64>)> {
        let a = &self.coeffs;
        let c = a.add(&a.act(g, coeff), &hom_apply(a, &self.phi[g], exps));
        Ok((c, self.lattice.act(g, exps)?))
    }

    /// `ψ` with `φ = coboundary(ψ)`, if one exists.
    pub fn untwist(&self) -> Result<Option<HomToCoeff>> {
        let m = &self.lattice;
        let a = &self.coeffs;
        let (rank, dim, r) = (m.rank(), a.dim(), a.free_rank());
        let grp = m.group();
        let unknowns = rank * dim;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        let mut slack_rows: Vec<(usize, i64)> = Vec::new();
        for &g in grp.generator_indices() {
            for b in 0..rank {
                let gm = m.act(g, &unit(rank, b))?;
                for c in 0..dim {
                    let mut row = vec![0i64; unknowns];
                    // ψ(g·m)_c
                    for (mp, &x) in gm.iter().enumerate() {
                        row[mp * dim + c] += x;
                    }
                    // − (g·ψ(m))_c
                    let ga = (0..dim).map(|cp| a.act(g, &unit(dim, cp))[c]);
                    for (cp, y) in ga.enumerate() {
                        row[b * dim + cp] -= y;
                    }
                    if c >= r {
                        slack_rows.push((rows.len(), a.torsion()[c - r]));
                    }
                    rows.push(row);
                    rhs.push(self.phi[g][b][c]);
                }
            }
        }
        let ncols = unknowns + slack_rows.len();
        let mat = IntMatrix::from_fn(rows.len(), ncols, |i, j| {
            if j < unknowns {
                rows[i][j]
            } else {
                let (ri, t) = slack_rows[j - unknowns];
                if ri == i {
                    t
                } else {
                    0
                }
            }
        });
        let b: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
        let Some(x) = solve(&mat, &b) else {
            return Ok(None);
        };
        let mut psi = vec![a.zero(); rank];
        for (b, p) in psi.iter_mut().enumerate() {
            for (c, slot) in p.iter_mut().enumerate() {
                let v = &x[b * dim + c];
                *slot = if c >= r {
                    v.mod_floor(&BigInt::from(a.torsion()[c - r])).to_i64().expect("reduced")
                } else {
                    v.to_i64().ok_or(Error::Overflow("untwist"))?
                };
            }
        }
        let back = coboundary_twist(m, a, &psi)?;
        for (s, &g) in grp.generator_indices().iter().enumerate() {
            if back[s] != self.phi[g] {
                return Err(Error::Internal("untwisting witness does not reproduce the twist".into()));
            }
        }
        Ok(Some(psi))
    }

    /// The same twist as a 1-cochain `g ↦ f_g` with values in `Hom(M, A)` for
    /// the usual action `(g·f)(x) = g·f(g⁻¹x)`: `f_g = φ_g ∘ g⁻¹`. Columns of
    /// each `f_g` are stacked basis vector by basis vector.
    pub fn as_hom_cochain(&self) -> Result<Vec<HomToCoeff>> {
        let m = &self.lattice;
        let grp = m.group();
        let rank = m.rank();
        (0..grp.order())
            .map(|g| {
                let gi = grp.inv(g);
                (0..rank)
                    .map(|b| Ok(hom_apply(&self.coeffs, &self.phi[g], &m.act(gi, &unit(rank, b))?)))
                    .collect()
            })
            .collect()
    }
}

/// The action on the monomial group generated by symbols `d_{xH}`
/// (`xH ≠ H`) with values in a trivial coefficient group `A`:
/// `g(d_{xH}) = d_{gxH} − d_{gH} − c(g, r_x)` written additively, with
/// `d_H = 0` and `r_x` the fixed coset representative.
#[derive(Clone, Debug)]
pub struct SBCocycleAction {
    h: Subgroup,
    coeffs: CoefficientGroup,
    /// `c(g1, g2)` at index `g1·|G| + g2`
    c2: Vec<Coeff>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

/// Whether the assignment is an action, next to the cocycle identity.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SbReport {
    pub identity_acts_trivially: bool,
    pub composition_holds: bool,
    /// first `(g1, g2)` (element indices) where `g1(g2(·)) ≠ (g1g2)(·)`
    pub violation: Option<(usize, usize)>,
    /// normalized 2-cocycle identity for the trivial action, on the entries
    /// `c(g1, g2)` with `g2 ≠ 1` (the only ones the action reads)
    pub cocycle_identity: bool,
}

impl SbReport {
    pub fn is_action(&self) -> bool {
        self.identity_acts_trivially && self.composition_holds
    }

    pub fn agrees(&self) -> bool {
        self.is_action() == self.cocycle_identity
    }
}

/// A monomial: exponents on the symbols plus a coefficient.
pub type Monomial = (Vec<i64>, Coeff);

pub fn sb_action(h: &Subgroup, a: &CoefficientGroup, c2: Vec<Coeff>) -> Result<SBCocycleAction> {
    let g = h.parent();
    if !crate::groups::same_group(g, a.group()) || !a.is_trivial_action() {
        return Err(Error::Invalid("sb_action needs a trivial coefficient group over the same group".into()));
    }
    if c2.len() != g.order() * g.order() || c2.iter().any(|c| c.len() != a.dim()) {
        return Err(Error::Invalid("c2 must be given on every pair".into()));
    }
    let cs = cosets(h);
    let c2 = c2.into_iter().map(|c| a.reduce(c)).collect();
    Ok(SBCocycleAction {
        h: h.clone(),
        coeffs: a.clone(),
        c2,
        reps: cs.reps.clone(),
        coset_of: cs.coset_of.clone(),
    })
}

impl SBCocycleAction {
    /// Symbols are the cosets other than `H` (coset `k ≥ 1` is symbol `k − 1`).
    pub fn symbols(&self) -> usize {
        self.reps.len() - 1
    }

    pub fn c(&self, g1: usize, g2: usize) -> &Coeff {
        &self.c2[g1 * self.h.parent().order() + g2]
    }

    /// Image of the monomial `x` under `g`.
    pub fn apply(&self, g: usize, x: &Monomial) -> Monomial {
        let grp = self.h.parent();
        let a = &self.coeffs;
        let k = self.symbols();
        let mut exps = vec![0i64; k];
        let mut coeff = x.1.clone();
        let g_h = self.coset_of[g];
        for (s, &e) in x.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let r = self.reps[s + 1];
            let target = self.coset_of[grp.mul(g, r)];
            if target > 0 {
                exps[target - 1] += e;
            }
            if g_h > 0 {
                exps[g_h - 1] -= e;
            }
            coeff = a.sub(&coeff, &a.scale(e, self.c(g, r)));
        }
        (exps, coeff)
    }

    /// `c` with the entries the action never reads (`c(g, 1)`) set to zero.
    pub fn read_part(&self) -> Vec<Coeff> {
        let n = self.h.parent().order();
        let mut c = self.c2.clone();
        for g in 0..n {
            c[g * n] = self.coeffs.zero();
        }
        c
    }

    pub fn validity(&self) -> SbReport {
        let grp = self.h.parent();
        let n = grp.order();
        let k = self.symbols();
        let a = &self.coeffs;
        let basis: Vec<Monomial> = (0..k).map(|s| (unit(k, s), a.zero())).collect();
        let identity_acts_trivially = basis.iter().all(|b| self.apply(0, b) == *b);
        let mut violation = None;
        'outer: for g1 in 0..n {
            for g2 in 0..n {
                let g12 = grp.mul(g1, g2);
                for b in &basis {
                    if self.apply(g1, &self.apply(g2, b)) != self.apply(g12, b) {
                        violation = Some((g1, g2));
                        break 'outer;
                    }
                }
            }
        }
        SbReport {
            identity_acts_trivially,
            composition_holds: violation.is_none(),
            violation,
            cocycle_identity: is_normalized_2_cocycle(grp, a, &self.read_part()),
        }
    }
}

/// `c(g1,g2) + c(g1g2,g3) = c(g2,g3) + c(g1,g2g3)` for all triples and
/// `c(1,1) = 0`, with trivial action on `A`.
pub fn is_normalized_2_cocycle(grp: &PermGroup, a: &CoefficientGroup, c2: &[Coeff]) -> bool {
    let n = grp.order();
    let c = |x: usize, y: usize| &c2[x * n + y];
    if !a.is_zero(c(0, 0)) {
        return false;
    }
    for g1 in 0..n {
        for g2 in 0..n {
            let g12 = grp.mul(g1, g2);
            for g3 in 0..n {
                let lhs = a.add(c(g1, g2), c(g12, g3));
                let rhs = a.add(c(g2, g3), c(g1, grp.mul(g2, g3)));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The 2-coboundary of a normalized 1-cochain `f` (`f(1) = 0`) for the
/// trivial action: `c(g,h) = f(g) + f(h) − f(gh)`.
pub fn coboundary_2(grp: &PermGroup, a: &CoefficientGroup, f: &[Coeff]) -> Vec<Coeff> {
    let n = grp.order();
    let mut out = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            out.push(a.sub(&a.add(&f[g], &f[h]), &f[grp.mul(g, h)]));
        }
    }
    out
}

#[cfg(test)]
mod tests;
