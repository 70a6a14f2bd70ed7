//! Group cohomology of lattices through inhomogeneous bar cochains.
//!
//! An `n`-cochain is a flat `Vec<i64>`: the value on `(g_1, …, g_n)` sits at
//! `slot · rank + component`, where `slot` reads the tuple as mixed-radix
//! digits with `g_1` most significant. Normalized cochains (the default) only
//! store tuples without the identity.
//!
//! For `n ≥ 1`, `H^n` is the torsion of the cokernel of `ρ_S ∘ d^{n-1}`, where
//! `ρ_S` keeps the values whose first argument lies in a generating set `S`:
//! a cocycle is determined by those values, so `ρ_S` is injective on
//! cocycles with saturated image. Each `p`-part is read off a sparse
//! elimination over `Z/p^e` with `p^e` beyond the exponent of `H^n`.

mod lemmas;
mod maps;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::glattice::GLattice;
use crate::groups::PermGroup;
use crate::zmat::local::{lift, modpow, p_valuation, prime_factors, LocalElimination, Pivot, SparseRow};
use crate::zmat::{AbelianInvariants, IntMatrix, Solver};

pub use lemmas::{
    class_order_decomposition, lemma04_d, lemma08_h, membership_in_restriction, prop07_package, restricted_generators,
    DoubleCosetSetup, Lemma04Report, Lemma08Report, Prop07Report,
};
pub use maps::{
    canonical_class, cohomology_via_shapiro, conjugate_cochain, CohomologyView, connecting, ext_group, extension_class, extension_from_cocycle, inflate_cochain,
    pushforward, restrict_cochain, restriction, shapiro_forward, shapiro_inverse, CanonicalClass,
};

/// Default limit on `rank(M)·|G|^{n+1}` for a direct computation.
pub const DEFAULT_BUDGET: u128 = 200_000_000;

/// Cochains of a group with coefficients in a lattice.
#[derive(Clone, Debug)]
pub struct Complex {
    module: Arc<GLattice>,
    normalized: bool,
    radix: usize,
}

impl Complex {
    pub fn new(module: &Arc<GLattice>) -> Complex {
        let radix = module.group().order() - 1;
        Complex {
            module: module.clone(),
            normalized: true,
            radix,
        }
    }

    /// Cochains on all tuples, identity included.
    pub fn unnormalized(module: &Arc<GLattice>) -> Complex {
        Complex {
            module: module.clone(),
            normalized: false,
            radix: module.group().order(),
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.module.group()
    }

    pub fn module(&self) -> &Arc<GLattice> {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn tuples(&self, n: usize) -> usize {
        self.radix.pow(n as u32)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.tuples(n) * self.rank()
    }

    fn digit(&self, x: usize) -> Option<usize> {
        if self.normalized {
            x.checked_sub(1)
        } else {
            Some(x)
        }
    }

    fn element(&self, d: usize) -> usize {
        if self.normalized {
            d + 1
        } else {
            d
        }
    }

    /// Slot of a tuple, `None` when a normalized cochain vanishes there.
    pub fn slot(&self, tuple: &[usize]) -> Option<usize> {
        let mut s = 0usize;
        for &x in tuple {
            s = s * self.radix + self.digit(x)?;
        }
        Some(s)
    }

    /// Tuple of group element indices at a slot.
    pub fn decode(&self, n: usize, mut slot: usize) -> Vec<usize> {
        let mut t = vec![0usize; n];
        for i in (0..n).rev() {
            t[i] = self.element(slot % self.radix);
            slot /= self.radix;
        }
        t
    }

    /// Value of a cochain at a tuple (zero on degenerate tuples).
    pub fn value(&self, c: &[i64], tuple: &[usize]) -> Vec<i64> {
        let r = self.rank();
        match self.slot(tuple) {
            Some(s) => c[s * r..(s + 1) * r].to_vec(),
            None => vec![0; r],
        }
    }

    pub fn zero(&self, n: usize) -> Vec<i64> {
        vec![0; self.dim(n)]
    }

    /// Builds an `n`-cochain from its values; `f` writes the value at a tuple.
    pub fn from_fn(&self, n: usize, mut f: impl FnMut(&[usize], &mut [i64]) -> Result<()>) -> Result<Vec<i64>> {
        let r = self.rank();
        let mut c = self.zero(n);
        for s in 0..self.tuples(n) {
            let t = self.decode(n, s);
            f(&t, &mut c[s * r..(s + 1) * r])?;
        }
        Ok(c)
    }

    /// The bar differential `d^n: C^n → C^{n+1}`.
    pub fn d(&self, n: usize, c: &[i64]) -> Result<Vec<i64>> {
        if c.len() != self.dim(n) {
            return Err(Error::Invalid(format!(
                "cochain of length {} is not of degree {n} (dimension {})",
                c.len(),
                self.dim(n)
            )));
        }
        let g = self.group();
        let r = self.rank();
        let rad_n = self.tuples(n);
        let mut out = self.zero(n + 1);
        let mut tmp = vec![0usize; n];
        let overflow = || Error::Overflow("coboundary");
        for big in 0..self.tuples(n + 1) {
            let t = self.decode(n + 1, big);
            let o = &mut out[big * r..(big + 1) * r];
            // g_1 · c(g_2, …)
            let tail = big % rad_n;
            self.module.action(t[0]).apply_add(1, &c[tail * r..(tail + 1) * r], o)?;
            for i in 0..n {
                let p = g.mul(t[i], t[i + 1]);
                tmp[..i].copy_from_slice(&t[..i]);
                tmp[i] = p;
                tmp[i + 1..n].copy_from_slice(&t[i + 2..n + 1]);
                if let Some(s) = self.slot(&tmp) {
                    let sign = if i % 2 == 0 { -1 } else { 1 };
                    for (k, x) in o.iter_mut().enumerate() {
                        *x = x.checked_add(sign * c[s * r + k]).ok_or_else(overflow)?;
                    }
                }
            }
            let head = big / self.radix;
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            for (k, x) in o.iter_mut().enumerate() {
                *x = x.checked_add(sign * c[head * r + k]).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, n: usize, c: &[i64]) -> Result<bool> {
        Ok(self.d(n, c)?.iter().all(|x| *x == 0))
    }

    /// Rows of `ρ_S ∘ d^{n-1}` modulo `q`, one per (tuple with first entry in
    /// `s`, component).
    fn restricted_rows(&self, n: usize, s: &[usize], q: u64) -> Vec<SparseRow> {
        assert!(n >= 1);
        let g = self.group();
        let r = self.rank();
        let red = |x: i64| crate::zmat::local::reduce(x, q);
        let mut rows = Vec::with_capacity(s.len() * self.tuples(n - 1) * r);
        let mut tmp = vec![0usize; n - 1];
        let mut t = vec![0usize; n];
        let mut acc: Vec<(u32, i64)> = Vec::new();
        for &s0 in s {
            for rest in 0..self.tuples(n - 1) {
                t[0] = s0;
                t[1..].copy_from_slice(&self.decode(n - 1, rest));
                let a = self.module.action(s0);
                for comp in 0..r {
                    acc.clear();
                    for &(b, v) in a.row(comp) {
                        acc.push(((rest * r) as u32 + b, v));
                    }
                    for i in 0..n - 1 {
                        let p = g.mul(t[i], t[i + 1]);
                        tmp[..i].copy_from_slice(&t[..i]);
                        tmp[i] = p;
                        tmp[i + 1..n - 1].copy_from_slice(&t[i + 2..n]);
                        if let Some(sl) = self.slot(&tmp) {
                            let sign = if i % 2 == 0 { -1 } else { 1 };
                            acc.push(((sl * r + comp) as u32, sign));
                        }
                    }
                    if let Some(sl) = self.slot(&t[..n - 1]) {
                        let sign = if n % 2 == 0 { 1 } else { -1 };
                        acc.push(((sl * r + comp) as u32, sign));
                    }
                    acc.sort_unstable_by_key(|x| x.0);
                    let mut row: SparseRow = Vec::with_capacity(acc.len());
                    let mut i = 0;
                    while i < acc.len() {
                        let c = acc[i].0;
                        let mut v = 0i64;
                        while i < acc.len() && acc[i].0 == c {
                            v += acc[i].1;
                            i += 1;
                        }
                        let v = red(v);
                        if v != 0 {
                            row.push((c, v));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// The block of `c` on tuples whose first entry lies in `s`.
    fn restrict_rows(&self, n: usize, c: &[i64], s: &[usize], q: u64) -> Vec<u64> {
        let block = self.tuples(n - 1) * self.rank();
        let mut out = Vec::with_capacity(s.len() * block);
        for &s0 in s {
            let d = self.digit(s0).expect("generators are not the identity");
            out.extend(c[d * block..(d + 1) * block].iter().map(|&x| crate::zmat::local::reduce(x, q)));
        }
        out
    }

    /// `rank(M)·|G|^{n+1}`, the size measure compared against the budget.
    pub fn cost(&self, n: usize) -> u128 {
        self.rank() as u128 * (self.group().order() as u128).pow(n as u32 + 1)
    }
}

#[derive(Clone, Debug)]
struct LocalPart {
    p: u64,
    elim: LocalElimination,
    pivots: Vec<Pivot>,
    /// for each invariant factor, the pivot index carrying its `p`-part
    slots: Vec<Option<usize>>,
}

/// `H^n(G, M)` with explicit cocycle generators, one per invariant factor.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    complex: Complex,
    degree: usize,
    invariants: AbelianInvariants,
    /// invariant factors `d_1 | d_2 | …` (degree ≥ 1)
    orders: Vec<u64>,
    generators: Vec<Vec<i64>>,
    sgen: Vec<usize>,
    local: Vec<LocalPart>,
    /// degree 0: basis of `M^G` and a solver for coordinates
    fixed: Option<(IntMatrix, Arc<Solver>)>,
}

fn budget_error(needed: u128, budget: u128, what: &str) -> Error {
    Error::Budget {
        needed,
        budget,
        hint: format!("{what}: compute on the subgroup side with Shapiro's lemma (cohomology --via-shapiro) or raise --budget"),
    }
}

impl CohomologyGroup {
    /// `H^n` of a complex, `n ≤ 3`, within `budget`.
    pub fn compute(complex: &Complex, n: usize, budget: u128) -> Result<CohomologyGroup> {
        if n > 3 {
            return Err(Error::Invalid("only degrees 0..=3 are supported".into()));
        }
        let cost = complex.cost(n);
        if cost > budget {
            return Err(budget_error(
                cost,
                budget,
                &format!("H^{n}({}, {})", complex.group().label(), complex.module().name()),
            ));
        }
        let m = complex.module();
        let fixed = m.fixed_basis();
        if n == 0 {
            let k = fixed.cols();
            let solver = Arc::new(Solver::new(&fixed));
            let generators = fixed
                .columns()
                .iter()
                .map(|c| c.iter().map(|x| x.to_i64().expect("small")).collect())
                .collect();
            return Ok(CohomologyGroup {
                complex: complex.clone(),
                degree: 0,
                invariants: AbelianInvariants::new(k, Vec::new()),
                orders: Vec::new(),
                generators,
                sgen: Vec::new(),
                local: Vec::new(),
                fixed: Some((fixed, solver)),
            });
        }
        let g = complex.group();
        let order = g.order() as u64;
        // expected rank of d^{n-1}
        let mut rank_prev = m.rank() - fixed.cols();
        for k in 1..n {
            rank_prev = complex.dim(k) - rank_prev;
        }
        let sgen: Vec<usize> = if complex.is_normalized() {
            g.small_generating_set().to_vec()
        } else {
            (0..g.order()).collect()
        };
        let ncols = complex.dim(n - 1);
        let mut local = Vec::new();
        let mut per_prime: Vec<(u64, Vec<(usize, u32)>)> = Vec::new();
        for p in prime_factors(order) {
            let e = 2 * p_valuation(order, p) + 1;
            let q = modpow(p, e);
            let rows = complex.restricted_rows(n, &sgen, q);
            let elim = LocalElimination::new(rows, ncols, p, e, None);
            if elim.rank() != rank_prev {
                return Err(Error::Internal(format!(
                    "mod {p}^{e} elimination found {} pivots, expected rank {rank_prev}",
                    elim.rank()
                )));
            }
            let pivots = elim.pivots();
            let mut tors: Vec<(usize, u32)> = pivots
                .iter()
                .enumerate()
                .filter(|(_, pv)| pv.valuation > 0)
                .map(|(k, pv)| (k, pv.valuation))
                .collect();
            // largest valuation first, ties by pivot order
            tors.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            per_prime.push((p, tors));
            local.push(LocalPart {
                p,
                elim,
                pivots,
                slots: Vec::new(),
            });
        }
        let nf = per_prime.iter().map(|(_, t)| t.len()).max().unwrap_or(0);
        // factor i (largest first) collects the i-th largest valuation per prime
        let mut orders_desc = vec![1u64; nf];
        let mut gens_desc = vec![complex.zero(n); nf];
        for (lp, (p, tors)) in local.iter_mut().zip(&per_prime) {
            lp.slots = vec![None; nf];
            for (i, &(k, v)) in tors.iter().enumerate() {
                orders_desc[i] *= modpow(*p, v);
                lp.slots[i] = Some(k);
                let z = local_generator(complex, n, &lp.elim, k, *p, v)?;
                for (a, b) in gens_desc[i].iter_mut().zip(&z) {
                    *a += b;
                }
            }
        }
        orders_desc.reverse();
        gens_desc.reverse();
        for lp in local.iter_mut() {
            lp.slots.reverse();
        }
        let invariants = AbelianInvariants::new(0, orders_desc.iter().map(|&d| BigInt::from(d)).collect());
        debug_assert_eq!(invariants.torsion.len(), orders_desc.len());
        Ok(CohomologyGroup {
            complex: complex.clone(),
            degree: n,
            invariants,
            orders: orders_desc,
            generators: gens_desc,
            sgen,
            local,
            fixed: None,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    /// Invariant factors (empty in degree 0, where the group is free).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn orders_big(&self) -> Vec<BigInt> {
        self.orders.iter().map(|&d| BigInt::from(d)).collect()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_trivial()
    }

    /// Order of the group (`None` in degree 0 with nonzero fixed points).
    pub fn order(&self) -> Option<u64> {
        if self.degree == 0 {
            return if self.generators.is_empty() { Some(1) } else { None };
        }
        Some(self.orders.iter().product())
    }

    /// Coordinates of a cocycle: residues modulo the invariant factors (or
    /// integer coordinates in `M^G` in degree 0).
    pub fn coordinates(&self, c: &[i64]) -> Result<Vec<i64>> {
        let n = self.degree;
        if c.len() != self.complex.dim(n) {
            return Err(Error::Invalid("cochain has the wrong degree".into()));
        }
        if let Some((_, solver)) = &self.fixed {
            let b: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            let x = solver
                .solve(&b)
                .ok_or_else(|| Error::NotCocycle("0-cochain is not a fixed vector".into()))?;
            return Ok(x.iter().map(|v| v.to_i64().expect("small")).collect());
        }
        let mut res = vec![0i64; self.orders.len()];
        let mut moduli = vec![1u64; self.orders.len()];
        for lp in &self.local {
            let q = lp.elim.modulus();
            let mut ub = self.complex.restrict_rows(n, c, &self.sgen, q);
            lp.elim.apply_u(&mut ub);
            for (i, slot) in lp.slots.iter().enumerate() {
                if let Some(k) = slot {
                    let pk = modpow(lp.p, lp.pivots[*k].valuation);
                    let a = lp.elim.coordinate(&ub, *k) as i64;
                    let (r, m) = crt(res[i], moduli[i] as i64, a, pk as i64);
                    res[i] = r;
                    moduli[i] = m as u64;
                }
            }
        }
        Ok(res)
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_zero(&self, c: &[i64]) -> Result<bool> {
        Ok(self.coordinates(c)?.iter().all(|x| *x == 0))
    }

    /// The cocycle `Σ a_i z_i`.
    pub fn cocycle(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = self.complex.zero(self.degree);
        for (a, z) in coords.iter().zip(&self.generators) {
            if *a != 0 {
                for (o, x) in out.iter_mut().zip(z) {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Reduces coordinates modulo the invariant factors.
    pub fn normalize(&self, coords: &[i64]) -> Vec<i64> {
        if self.degree == 0 {
            return coords.to_vec();
        }
        coords
            .iter()
            .zip(&self.orders)
            .map(|(a, &d)| a.rem_euclid(d as i64))
            .collect()
    }

    /// Order of the class with the given coordinates (0 for infinite order).
    pub fn class_order(&self, coords: &[i64]) -> u64 {
        if self.degree == 0 {
            return if coords.iter().all(|x| *x == 0) { 1 } else { 0 };
        }
        coords.iter().zip(&self.orders).fold(1u64, |acc, (a, &d)| {
            let a = a.rem_euclid(d as i64) as u64;
            acc.lcm(&(d / a.gcd(&d)))
        })
    }

    /// A class from a cocycle (checked).
    pub fn class(self: &Arc<Self>, rep: Vec<i64>) -> Result<CohClass> {
        if !self.complex.is_cocycle(self.degree, &rep)? {
            return Err(Error::NotCocycle(format!(
                "{}-cochain over {}",
                self.degree,
                self.complex.group().label()
            )));
        }
        let coords = self.coordinates(&rep)?;
        Ok(CohClass {
            group: self.clone(),
            coords,
            rep,
        })
    }

    pub fn class_from_coords(self: &Arc<Self>, coords: &[i64]) -> CohClass {
        let coords = self.normalize(coords);
        CohClass {
            group: self.clone(),
            rep: self.cocycle(&coords),
            coords,
        }
    }

    pub fn zero_class(self: &Arc<Self>) -> CohClass {
        self.class_from_coords(&vec![0; self.generators.len()])
    }
}

/// `x ≡ a (mod m)`, `x ≡ b (mod n)` with coprime moduli.
fn crt(a: i64, m: i64, b: i64, n: i64) -> (i64, i64) {
    let e = num_integer::Integer::extended_gcd(&m, &n);
    debug_assert_eq!(e.gcd, 1);
    let mn = m * n;
    let x = (a as i128 * n as i128 * e.y as i128 + b as i128 * m as i128 * e.x as i128).rem_euclid(mn as i128);
    (x as i64, mn)
}

/// `z_k = d(x_k) / p^v` for the column lift `x_k` of pivot `k`.
fn local_generator(complex: &Complex, n: usize, elim: &LocalElimination, k: usize, p: u64, v: u32) -> Result<Vec<i64>> {
    let q = elim.modulus();
    let x: Vec<i64> = elim.column_lift(k).into_iter().map(|a| lift(a, q)).collect();
    let dx = complex.d(n - 1, &x)?;
    let pv = modpow(p, v) as i64;
    if dx.iter().any(|a| a % pv != 0) {
        return Err(Error::Internal(format!("coboundary of pivot lift not divisible by {pv}")));
    }
    Ok(dx.into_iter().map(|a| a / pv).collect())
}

/// A cohomology class with its coordinates and a cocycle representative.
#[derive(Clone, Debug)]
pub struct CohClass {
    pub group: Arc<CohomologyGroup>,
    pub coords: Vec<i64>,
    pub rep: Vec<i64>,
}

impl CohClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| *x == 0)
    }

    pub fn order(&self) -> u64 {
        self.group.class_order(&self.coords)
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn scale(&self, k: i64) -> CohClass {
        let coords: Vec<i64> = self.coords.iter().map(|a| a * k).collect();
        let rep = self.rep.iter().map(|x| x * k).collect();
        CohClass {
            group: self.group.clone(),
            coords: self.group.normalize(&coords),
            rep,
        }
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        let coords: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        let rep = self.rep.iter().zip(&other.rep).map(|(a, b)| a + b).collect();
        CohClass {
            group: self.group.clone(),
            coords: self.group.normalize(&coords),
            rep,
        }
    }

    pub fn neg(&self) -> CohClass {
        self.scale(-1)
    }

    pub fn same_class(&self, other: &CohClass) -> bool {
        self.coords == other.coords
    }
}

/// `H^n(G, M)` computed directly.
pub fn cohomology(m: &Arc<GLattice>, n: usize, budget: u128) -> Result<Arc<CohomologyGroup>> {
    Ok(Arc::new(CohomologyGroup::compute(&Complex::new(m), n, budget)?))
}

/// Matrix (columns = images of generators) of a homomorphism between
/// computed groups given by a cochain-level map.
pub fn induced_matrix(
    src: &CohomologyGroup,
    dst: &CohomologyGroup,
    mut f: impl FnMut(&[i64]) -> Result<Vec<i64>>,
) -> Result<IntMatrix> {
    let mut cols = Vec::new();
    for z in src.generators() {
        let img = f(z)?;
        cols.push(dst.coordinates(&img)?.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
    Ok(IntMatrix::from_columns(&cols, dst.generators().len()))
}

#[cfg(test)]
mod tests;
