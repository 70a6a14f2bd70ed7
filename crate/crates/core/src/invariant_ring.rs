//! Degree-bounded invariant theory over `Q` for small linear representations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{weyl_group, PermGroup};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense rational matrix, row-major.
type QMat = Vec<Vec<Q>>;

fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

fn qmat_identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

/// Row-reduces in place and returns the pivot columns.
fn rref(a: &mut QMat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn qrank(a: &QMat) -> usize {
    let mut b = a.clone();
    rref(&mut b).len()
}

/// Basis of `{x : A x = 0}` (columns of `A` are the unknowns).
fn qkernel(a: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let mut b = a.clone();
    let pivots = rref(&mut b);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -b[r][f].clone();
            }
            v
        })
        .collect()
}

fn qdet(a: &QMat) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            if !f.is_zero() {
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// A polynomial in `dim` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Poly {
    dim: usize,
    #[serde(serialize_with = "serialize_terms")]
    terms: BTreeMap<Vec<u32>, Q>,
}

fn serialize_terms<S: serde::Serializer>(t: &BTreeMap<Vec<u32>, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for (e, c) in t {
        seq.serialize_element(&(e, c.to_string()))?;
    }
    seq.end()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("v{}", i + 1) } else { format!("v{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join(""))?;
            } else {
                write!(f, "{a}{}", mono.join(""))?;
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(dim: usize) -> Poly {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: i64) -> Poly {
        let mut p = Poly::zero(dim);
        p.add_term(vec![0; dim], q(c));
        p
    }

    /// The variable `v_{i+1}`.
    pub fn var(dim: usize, i: usize) -> Poly {
        let mut e = vec![0; dim];
        e[i] = 1;
        let mut p = Poly::zero(dim);
        p.add_term(e, Q::one());
        p
    }

    /// From `(exponents, coefficient)` pairs.
    pub fn from_terms(dim: usize, terms: &[(Vec<u32>, i64)]) -> Poly {
        let mut p = Poly::zero(dim);
        for (e, c) in terms {
            p.add_term(e.clone(), q(*c));
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), x * c);
        }
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                p.add_term(e, x * y);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut p = Poly::constant(self.dim, 1);
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    /// Substitutes `v_i ↦ Σ_j m[j][i] v_j`.
    pub fn substitute(&self, m: &QMat) -> Poly {
        let images: Vec<Poly> = (0..self.dim)
            .map(|i| {
                let mut p = Poly::zero(self.dim);
                for j in 0..self.dim {
                    let mut e = vec![0; self.dim];
                    e[j] = 1;
                    p.add_term(e, m[j][i].clone());
                }
                p
            })
            .collect();
        let mut out = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(self.dim, 1).scale(c);
            for (i, &k) in e.iter().enumerate() {
                t = t.mul(&images[i].pow(k));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c * q(e[i] as i64));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc + t
        })
    }

    fn coefficients(&self, monos: &[Vec<u32>]) -> Vec<Q> {
        monos.iter().map(|m| self.terms.get(m).cloned().unwrap_or_else(Q::zero)).collect()
    }

    fn from_coefficients(dim: usize, monos: &[Vec<u32>], v: &[Q]) -> Poly {
        let mut p = Poly::zero(dim);
        for (m, c) in monos.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub fn primitive(&self) -> Poly {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
        let mut s = Q::new(den, num);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

/// Exponent vectors of degree `d` in `dim` variables, in lexicographic order.
pub fn monomials(dim: usize, d: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(dim - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A representation of a permutation group on `Q^dim`.
#[derive(Clone)]
pub struct LinearRep {
    name: String,
    group: Arc<PermGroup>,
    dim: usize,
    mats: Vec<QMat>,
}

impl fmt::Debug for LinearRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearRep({}, dim {} over {})", self.name, self.dim, self.group.label())
    }
}

/// Largest number of monomials per degree handled.
pub const MONOMIAL_BUDGET: usize = 20_000;

impl LinearRep {
    /// From one integer matrix per generator; the homomorphism property is
    /// checked on the whole group.
    pub fn new(group: &Arc<PermGroup>, gens: &[Vec<Vec<i64>>], name: &str) -> Result<LinearRep> {
        if gens.len() != group.generators().len() {
            return Err(Error::Invalid(format!("{name}: need one matrix per generator")));
        }
        let dim = gens.first().map_or(1, |m| m.len());
        let qgens: Vec<QMat> = gens
            .iter()
            .map(|m| {
                if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                    return Err(Error::Invalid(format!("{name}: matrices must be {dim}×{dim}")));
                }
                Ok(m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            })
            .collect::<Result<_>>()?;
        let n = group.order();
        let mut mats = vec![qmat_identity(dim); n];
        for i in 1..n {
            let (p, k) = group.word_step(i).expect("non-identity");
            mats[i] = qmat_mul(&qgens[k], &mats[p]);
        }
        for a in 0..n {
            for b in 0..n {
                if qmat_mul(&mats[a], &mats[b]) != mats[group.mul(a, b)] {
                    return Err(Error::NotHomomorphism(format!("{name} at ({}, {})", group.element(a), group.element(b))));
                }
            }
        }
        Ok(LinearRep {
            name: name.to_string(),
            group: group.clone(),
            dim,
            mats,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn act(&self, g: usize, p: &Poly) -> Poly {
        p.substitute(&self.mats[g])
    }

    pub fn is_invariant(&self, p: &Poly) -> bool {
        self.group.generator_indices().iter().all(|&g| self.act(g, p) == *p)
    }

    /// `(1/|G|) Σ_g g·p`.
    pub fn reynolds(&self, p: &Poly) -> Poly {
        let mut sum = Poly::zero(self.dim);
        for g in 0..self.group.order() {
            sum = sum.add(&self.act(g, p));
        }
        sum.scale(&Q::new(BigInt::one(), BigInt::from(self.group.order())))
    }
}

/// `W(2)` acting on `U = Qv₁ ⊕ Qv₂`: `τ₁ = diag(−1, 1)` and the block swap
/// exchanging `v₁, v₂`.
pub fn weyl_u() -> Result<LinearRep> {
    let w = weyl_group(2)?;
    let gens: Vec<Vec<Vec<i64>>> = w
        .w
        .generators()
        .iter()
        .map(|p| {
            // points 0,1 form block 1 and 2,3 block 2
            if p.apply(0) == 1 {
                vec![vec![-1, 0], vec![0, 1]]
            } else if p.apply(0) == 2 {
                vec![vec![0, 1], vec![1, 0]]
            } else {
                vec![vec![1, 0], vec![0, 1]]
            }
        })
        .collect();
    LinearRep::new(&w.w, &gens, "U")
}

/// Named representations: `U`, `sign` (`Z/2` by `−1`), `trivial`, `S3-std`
/// (the reflection representation of `S3` on the sum-zero plane).
pub fn named_rep(name: &str) -> Result<LinearRep> {
    match name {
        "U" | "u" => weyl_u(),
        "sign" => LinearRep::new(&crate::groups::cyclic_group(2)?, &[vec![vec![-1]]], "sign"),
        "trivial" => LinearRep::new(&crate::groups::cyclic_group(1)?, &[], "trivial"),
        "S3-std" => {
            // basis e1 − e2, e2 − e3; generators (1 2) and (1 2 3)
            let s3 = crate::groups::symmetric_group(3)?;
            LinearRep::new(&s3, &[vec![vec![-1, 1], vec![0, 1]], vec![vec![0, -1], vec![1, -1]]], "S3-std")
        }
        other => Err(Error::Unknown(format!("representation {other}"))),
    }
}

/// Coefficients of the Molien series up to `t^d_max`.
pub fn molien_coefficients(rep: &LinearRep, d_max: usize) -> Vec<Q> {
    let n = rep.dim;
    let mut total = vec![Q::zero(); d_max + 1];
    for m in &rep.mats {
        // det(1 − tM) = Σ_k (−t)^k e_k(M), e_k the sum of principal k-minors
        let mut poly = vec![Q::zero(); n + 1];
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let minor: QMat = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let k = idx.len();
            let d = if k == 0 { Q::one() } else { qdet(&minor) };
            poly[k] += if k % 2 == 0 { d } else { -d };
        }
        // power series inverse, poly[0] = 1
        let mut inv = vec![Q::zero(); d_max + 1];
        inv[0] = Q::one();
        for d in 1..=d_max {
            let mut s = Q::zero();
            for k in 1..=n.min(d) {
                s += &poly[k] * &inv[d - k];
            }
            inv[d] = -s;
        }
        for (t, x) in total.iter_mut().zip(inv) {
            *t += x;
        }
    }
    let ord = q(rep.group.order() as i64);
    total.into_iter().map(|x| x / &ord).collect()
}

/// Molien coefficients as integers (they always are).
pub fn molien_dims(rep: &LinearRep, d_max: usize) -> Result<Vec<usize>> {
    molien_coefficients(rep, d_max)
        .into_iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().try_into().map_err(|_| Error::Overflow("molien"))
            } else {
                Err(Error::Internal(format!("Molien coefficient {x} is not an integer")))
            }
        })
        .collect()
}

/// Basis of the degree-`d` invariants: the kernel of the stacked `g − 1`
/// over the generators, cross-checked against Reynolds images of monomials.
pub fn invariants_of_degree(rep: &LinearRep, d: u32) -> Result<Vec<Poly>> {
    let monos = monomials(rep.dim, d);
    if monos.len() > MONOMIAL_BUDGET {
        return Err(Error::Budget {
            needed: monos.len() as u128,
            budget: MONOMIAL_BUDGET as u128,
            hint: "lower the degree bound".into(),
        });
    }
    let k = monos.len();
    let mut rows: QMat = Vec::new();
    for &g in rep.group.generator_indices() {
        let images: Vec<Vec<Q>> = monos
            .iter()
            .map(|e| {
                let mut p = Poly::zero(rep.dim);
                p.add_term(e.clone(), Q::one());
                rep.act(g, &p).coefficients(&monos)
            })
            .collect();
        for i in 0..k {
            rows.push((0..k).map(|j| if i == j { &images[j][i] - Q::one() } else { images[j][i].clone() }).collect());
        }
    }
    let basis: Vec<Poly> = if rows.is_empty() {
        (0..k).map(|j| Poly::from_coefficients(rep.dim, &[monos[j].clone()], &[Q::one()])).collect()
    } else {
        qkernel(&rows, k)
            .iter()
            .map(|v| Poly::from_coefficients(rep.dim, &monos, v).primitive())
            .collect()
    };
    let reyn: QMat = monos
        .iter()
        .map(|e| {
            let mut p = Poly::zero(rep.dim);
            p.add_term(e.clone(), Q::one());
            rep.reynolds(&p).coefficients(&monos)
        })
        .collect();
    let kern: QMat = basis.iter().map(|p| p.coefficients(&monos)).collect();
    let both: QMat = reyn.iter().chain(&kern).cloned().collect();
    if qrank(&reyn) != basis.len() || qrank(&both) != basis.len() {
        return Err(Error::Internal(format!("degree {d}: Reynolds images and the kernel differ")));
    }
    Ok(basis)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub invariant_dim: usize,
    pub product_span_dim: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub generators: Vec<String>,
    pub generators_invariant: bool,
    pub d_max: u32,
    pub per_degree: Vec<DegreeCheck>,
    /// first degree where products fall short
    pub fails_at: Option<u32>,
    pub jacobian_rank: usize,
    pub algebraically_independent: bool,
    /// `Π deg = |G|` (meaningful for reflection groups)
    pub degree_product: u64,
    pub group_order: usize,
}

impl GenerationReport {
    pub fn generates(&self) -> bool {
        self.generators_invariant && self.fails_at.is_none()
    }
}

/// Exponent vectors `e` with `Σ e_i·deg_i = d`.
fn weighted_exponents(degs: &[u32], d: u32) -> Vec<Vec<u32>> {
    let Some((&first, rest)) = degs.split_first() else {
        return if d == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    let max = if first == 0 { 0 } else { d / first };
    for k in 0..=max {
        for mut tail in weighted_exponents(rest, d - k * first) {
            tail.insert(0, k);
            out.push(tail);
        }
    }
    out
}

/// For each degree `≤ d_max`, compares the span of products of `gens` with
/// the invariants, and tests algebraic independence through the Jacobian.
pub fn check_generation(rep: &LinearRep, gens: &[Poly], d_max: u32) -> Result<GenerationReport> {
    if gens.iter().any(|g| !g.is_homogeneous() || g.is_zero()) {
        return Err(Error::Invalid("generators must be nonzero homogeneous polynomials".into()));
    }
    let degs: Vec<u32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let generators_invariant = gens.iter().all(|g| rep.is_invariant(g));
    let mut per_degree = Vec::new();
    let mut fails_at = None;
    for d in 0..=d_max {
        let inv = invariants_of_degree(rep, d)?;
        let monos = monomials(rep.dim, d);
        let products: QMat = weighted_exponents(&degs, d)
            .iter()
            .map(|e| {
                gens.iter()
                    .zip(e)
                    .fold(Poly::constant(rep.dim, 1), |acc, (g, &k)| acc.mul(&g.pow(k)))
                    .coefficients(&monos)
            })
            .collect();
        let span = if products.is_empty() { 0 } else { qrank(&products) };
        let ok = span == inv.len();
        if !ok && fails_at.is_none() {
            fails_at = Some(d);
        }
        per_degree.push(DegreeCheck {
            degree: d,
            invariant_dim: inv.len(),
            product_span_dim: span,
            ok,
        });
    }
    let jac: Vec<Vec<Poly>> = gens.iter().map(|g| (0..rep.dim).map(|i| g.derivative(i)).collect()).collect();
    let mut jacobian_rank = 0;
    for seed in 0..8i64 {
        let point: Vec<Q> = (0..rep.dim).map(|i| q(2 + seed + 3 * i as i64 + (i as i64) * (i as i64) * (seed + 1))).collect();
        let m: QMat = jac.iter().map(|row| row.iter().map(|p| p.eval(&point)).collect()).collect();
        jacobian_rank = jacobian_rank.max(qrank(&m));
    }
    Ok(GenerationReport {
        generators: gens.iter().map(|g| g.to_string()).collect(),
        generators_invariant,
        d_max,
        per_degree,
        fails_at,
        jacobian_rank,
        algebraically_independent: jacobian_rank == gens.len(),
        degree_product: degs.iter().map(|&d| d as u64).product(),
        group_order: rep.group.order(),
    })
}

/// `v₁² + v₂²` and `v₁²v₂²`.
pub fn weyl_u_generators() -> Vec<Poly> {
    vec![
        Poly::from_terms(2, &[(vec![2, 0], 1), (vec![0, 2], 1)]),
        Poly::from_terms(2, &[(vec![2, 2], 1)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_sign_series() {
        let t = named_rep("trivial").unwrap();
        assert_eq!(molien_dims(&t, 5).unwrap(), vec![1; 6]);
        let s = named_rep("sign").unwrap();
        assert_eq!(molien_dims(&s, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn weyl_u_series_and_invariants() {
        let u = weyl_u().unwrap();
        let dims = molien_dims(&u, 8).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
        for (d, &n) in dims.iter().enumerate() {
            assert_eq!(invariants_of_degree(&u, d as u32).unwrap().len(), n, "degree {d}");
        }
        let deg2 = invariants_of_degree(&u, 2).unwrap();
        assert_eq!(deg2, vec![weyl_u_generators()[0].clone()]);
        assert_eq!(deg2[0].to_string(), "v1^2 + v2^2");
        let deg4 = invariants_of_degree(&u, 4).unwrap();
        let monos = monomials(2, 4);
        let mut rows: QMat = deg4.iter().map(|p| p.coefficients(&monos)).collect();
        let r = qrank(&rows);
        rows.push(weyl_u_generators()[1].coefficients(&monos));
        assert_eq!(qrank(&rows), r);
    }

    #[test]
    fn generation_of_the_weyl_invariants() {
        let u = weyl_u().unwrap();
        let r = check_generation(&u, &weyl_u_generators(), 8).unwrap();
        assert!(r.generates() && r.algebraically_independent, "{r:?}");
        assert_eq!(r.degree_product, 8);
        assert_eq!(r.group_order, 8);
        let r = check_generation(&u, &weyl_u_generators()[..1], 4).unwrap();
        assert_eq!(r.fails_at, Some(4));
        let dependent = vec![weyl_u_generators()[0].clone(), weyl_u_generators()[0].pow(2)];
        assert!(!check_generation(&u, &dependent, 2).unwrap().algebraically_independent);
    }

    #[test]
    fn reynolds_is_an_idempotent_projection() {
        for name in ["U", "S3-std"] {
            let rep = named_rep(name).unwrap();
            for d in 0..5 {
                for e in monomials(2, d) {
                    let mut p = Poly::zero(2);
                    p.add_term(e, Q::one());
                    let r = rep.reynolds(&p);
                    assert!(rep.is_invariant(&r));
                    assert_eq!(rep.reynolds(&r), r);
                }
            }
        }
    }

    #[test]
    fn s3_reflection_representation() {
        let rep = named_rep("S3-std").unwrap();
        let dims = molien_dims(&rep, 8).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 2, 1, 2]);
        for (d, &n) in dims.iter().enumerate() {
            assert_eq!(invariants_of_degree(&rep, d as u32).unwrap().len(), n);
        }
    }
}
