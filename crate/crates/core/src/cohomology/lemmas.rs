//! The Ext and double-coset constructions built from the basic maps.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::glattice::{construct_j, hom_precompose, hom_sequence_into, ConstructJ, GLattice, GMap, Induction};
use crate::groups::{Perm, Subgroup};
use crate::zmat::{hom_image, hom_kernel, solve, subgroup_lattice, IntMatrix};

use super::maps::{pullback, CohomologyView};
use super::{
    canonical_class, cohomology, conjugate_cochain, connecting, extension_from_cocycle, induced_matrix, pushforward,
    restrict_cochain, restriction, shapiro_forward, shapiro_inverse, CohClass, CohomologyGroup, Complex,
};

fn rows_of(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect()
}

fn trivial_subgroup(orders: &[BigInt]) -> IntMatrix {
    subgroup_lattice(orders, &[])
}

/// The four-term sequence `0 → H^1(H,M) → Ext^1(I,M) → H^2(G,M) → H^2(H,M)`.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma04Report {
    pub h1_g: Vec<u64>,
    pub h1_h: Vec<u64>,
    pub ext1: Vec<u64>,
    pub h2_g: Vec<u64>,
    pub h2_h: Vec<u64>,
    /// columns: images of generators
    pub a: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub res: Vec<Vec<i64>>,
    pub a_injective: bool,
    /// `res: H^1(G,M) → H^1(H,M)` is zero, which is what injectivity of
    /// `a` amounts to
    pub res1_zero: bool,
    pub im_a_is_ker_d: bool,
    pub im_d_is_ker_res: bool,
    /// `d` read off the extension `M'` of each generator, as `δ'(α)`
    pub d_via_extensions: Vec<Vec<i64>>,
    /// `+1` or `-1` when both descriptions of `d` agree up to that sign
    pub route_sign: Option<i64>,
}

impl Lemma04Report {
    pub fn exact(&self) -> bool {
        self.a_injective && self.im_a_is_ker_d && self.im_d_is_ker_res
    }
}

/// Builds `d: Ext^1(I, M) → H^2(G, M)` for `I ⊂ Z[G/H]` and checks exactness.
pub fn lemma04_d(h: &Subgroup, m: &Arc<GLattice>, budget: u128) -> Result<Lemma04Report> {
    let cc = canonical_class(h, budget)?;
    let i_lat = cc.ses.sub().clone();
    let hom_seq = hom_sequence_into(&cc.ses, m)?;
    let res_m = Arc::new(m.restrict(h.group())?);
    let h1h = cohomology(&res_m, 1, budget)?;
    let h1g = cohomology(m, 1, budget)?;
    let res1 = restriction(&h1g, &h1h, h)?;
    let h2h = cohomology(&res_m, 2, budget)?;
    let ext1 = cohomology(hom_seq.quotient(), 1, budget)?;
    let h2g = cohomology(m, 2, budget)?;

    let ind = Induction::hom_perm(h, m)?;
    let a = induced_matrix(&h1h, &ext1, |e| {
        let lifted = shapiro_inverse(&ind, 1, e)?;
        pushforward(
            hom_seq.right(),
            &Complex::new(ind.big()),
            ext1.complex(),
            1,
            &lifted,
        )
    })?;
    let d = induced_matrix(&ext1, &h2g, |z| connecting(&hom_seq, 1, z))?;
    let res = restriction(&h2g, &h2h, h)?;

    let mut via_ext = Vec::new();
    for phi in ext1.generators() {
        let ses = extension_from_cocycle(m, &i_lat, phi, "M'")?;
        let img = connecting(&ses, 1, &cc.class.rep)?;
        via_ext.push(h2g.coordinates(&img)?);
    }
    let d_cols: Vec<Vec<i64>> = (0..d.cols())
        .map(|j| (0..d.rows()).map(|i| d.get_i64(i, j)).collect())
        .collect();
    let route_sign = [1i64, -1].into_iter().find(|&s| {
        via_ext
            .iter()
            .zip(&d_cols)
            .all(|(v, w)| h2g.normalize(&v.iter().map(|x| s * x).collect::<Vec<_>>()) == h2g.normalize(w))
    });

    let (o1, oe, o2g, o2h) = (h1h.orders_big(), ext1.orders_big(), h2g.orders_big(), h2h.orders_big());
    let res1_zero = hom_image(&res1, &o1) == trivial_subgroup(&o1);
    let a_injective = hom_kernel(&a, &o1, &oe) == trivial_subgroup(&o1);
    let im_a_is_ker_d = hom_image(&a, &oe) == hom_kernel(&d, &oe, &o2g);
    let im_d_is_ker_res = hom_image(&d, &o2g) == hom_kernel(&res, &o2g, &o2h);
    Ok(Lemma04Report {
        h1_g: h1g.orders().to_vec(),
        h1_h: h1h.orders().to_vec(),
        ext1: ext1.orders().to_vec(),
        h2_g: h2g.orders().to_vec(),
        h2_h: h2h.orders().to_vec(),
        a: rows_of(&a),
        d: rows_of(&d),
        res: rows_of(&res),
        a_injective,
        res1_zero,
        im_a_is_ker_d,
        im_d_is_ker_res,
        d_via_extensions: via_ext,
        route_sign,
    })
}

/// `G = H ∪ HgH`, `H' ⊂ H ∩ gHg⁻¹` and a `G`-lattice `M`, with the lattices
/// and Shapiro data both descriptions of `h` need.
#[derive(Clone, Debug)]
pub struct DoubleCosetSetup {
    pub h: Subgroup,
    pub h1: Subgroup,
    /// `g` as a parent element index
    pub g: usize,
    pub m: Arc<GLattice>,
    pub cj: ConstructJ,
    pub res_h: Arc<GLattice>,
    pub res_h1: Arc<GLattice>,
    ind_h: Induction,
    ind_h1: Induction,
    to_h1: GMap,
}

impl DoubleCosetSetup {
    pub fn new(h: &Subgroup, h1: &Subgroup, g: &Perm, m: &Arc<GLattice>) -> Result<DoubleCosetSetup> {
        let cj = construct_j(h, h1, g)?;
        let gi = h.parent().try_index(g)?;
        let to_h1 = hom_precompose(&cj.to_perm_h, m)?;
        if !h1.embedding().iter().all(|&x| h.contains(x)) {
            return Err(Error::Precondition(format!("{} is not inside {}", h1.name(), h.name())));
        }
        Ok(DoubleCosetSetup {
            h: h.clone(),
            h1: h1.clone(),
            g: gi,
            m: m.clone(),
            res_h: Arc::new(m.restrict(h.group())?),
            res_h1: Arc::new(m.restrict(h1.group())?),
            ind_h: Induction::hom_perm(h, m)?,
            ind_h1: Induction::hom_perm(h1, m)?,
            to_h1,
            cj,
        })
    }

    /// `Hom(Z[G/H], M) = Ind_H^G Res M`.
    pub fn hom_perm_h(&self) -> &Induction {
        &self.ind_h
    }

    /// The cocycle on `G` with values in `Hom(Z[G/H], M)` whose Shapiro
    /// image is `β`.
    pub fn lift(&self, beta: &[i64]) -> Result<Vec<i64>> {
        shapiro_inverse(&self.ind_h, 2, beta)
    }

    /// `h(β)` through `Hom(Z[G/H], M) → Hom(Z[G/H'], M)` and Shapiro.
    pub fn h_via_ext(&self, beta: &[i64]) -> Result<Vec<i64>> {
        let lifted = self.lift(beta)?;
        let moved = pushforward(
            &self.to_h1,
            &Complex::new(self.ind_h.big()),
            &Complex::new(self.ind_h1.big()),
            2,
            &lifted,
        )?;
        shapiro_forward(&self.ind_h1, 2, &moved)
    }

    /// `(β − g(β))|_{H'}`.
    pub fn h_direct(&self, beta: &[i64]) -> Result<Vec<i64>> {
        let ch = Complex::new(&self.res_h);
        let c1 = Complex::new(&self.res_h1);
        let conj = conjugate_cochain(&self.m, &ch, &c1, &self.h, &self.h1, self.g, 2, beta)?;
        let (h, h1) = (&self.h, &self.h1);
        let res = pullback(&ch, &c1, 2, beta, |x| h.local(h1.embed(x)).expect("H' ⊂ H"), None)?;
        Ok(res.iter().zip(&conj).map(|(a, b)| a - b).collect())
    }

    /// Whether `H^1(H', M) = 0`.
    pub fn h1_vanishes(&self, budget: u128) -> Result<bool> {
        Ok(cohomology(&self.res_h1, 1, budget)?.is_trivial())
    }
}

/// Both computations of `h: H^2(H, M) → H^2(H', M)` on each generator.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma08Report {
    pub h2_h: Vec<u64>,
    pub h2_h1: Vec<u64>,
    pub via_ext: Vec<Vec<i64>>,
    pub direct: Vec<Vec<i64>>,
    pub agree: bool,
}

pub fn lemma08_h(setup: &DoubleCosetSetup, budget: u128) -> Result<Lemma08Report> {
    let h2h = cohomology(&setup.res_h, 2, budget)?;
    let h2h1 = cohomology(&setup.res_h1, 2, budget)?;
    let mut via_ext = Vec::new();
    let mut direct = Vec::new();
    for beta in h2h.generators() {
        via_ext.push(h2h1.coordinates(&setup.h_via_ext(beta)?)?);
        direct.push(h2h1.coordinates(&setup.h_direct(beta)?)?);
    }
    Ok(Lemma08Report {
        h2_h: h2h.orders().to_vec(),
        h2_h1: h2h1.orders().to_vec(),
        agree: via_ext == direct,
        via_ext,
        direct,
    })
}

/// Outcome of the extension construction attached to `β ∈ H^2(H, M)`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop07Report {
    /// `(β − g(β))|_{H'} = 0`
    pub in_a: bool,
    pub ext1_j: Vec<u64>,
    pub ext2_i: Vec<u64>,
    /// coordinates of `α ∈ Ext^1(J, M)` (when `β ∈ A`)
    pub alpha: Option<Vec<i64>>,
    pub alpha_order: Option<u64>,
    pub h2_g: Vec<u64>,
    /// `β ∈ Res(H^2(G, M))`
    pub member: bool,
    /// coefficients of the restricted generators hitting `β`
    pub witness: Option<Vec<i64>>,
    /// `α = 0 ⇔ β ∈ Res` (when `β ∈ A`)
    pub iff_holds: Option<bool>,
    #[serde(skip)]
    pub alpha_cocycle: Option<Vec<i64>>,
}

/// Solves `A x ≡ b` modulo `orders` (componentwise), returning `x`.
fn solve_mod(a: &IntMatrix, b: &[i64], orders: &[u64]) -> Option<Vec<BigInt>> {
    let k = orders.len();
    let diag = IntMatrix::from_fn(k, k, |i, j| if i == j { orders[i] as i64 } else { 0 });
    let big = a.hstack(&diag);
    let rhs: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    solve(&big, &rhs).map(|x| x[..a.cols()].to_vec())
}

/// Coordinates of restricted generators of `H^2(G, M)` inside `H^2(H, M)`.
pub fn restricted_generators(
    h2g: &CohomologyView,
    h2h: &CohomologyGroup,
    g_complex: &Complex,
    sub: &Subgroup,
) -> Result<IntMatrix> {
    let mut cols = Vec::new();
    for z in h2g.generators()? {
        let r = restrict_cochain(g_complex, h2h.complex(), sub, h2g.degree(), &z)?;
        cols.push(h2h.coordinates(&r)?.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
    Ok(IntMatrix::from_columns(&cols, h2h.generators().len()))
}

/// Whether `β ∈ H^2(H, M)` is a restriction, by solving over cocycle
/// coordinates; returns the coefficients when it is.
pub fn membership_in_restriction(res_gens: &IntMatrix, h2h: &CohomologyGroup, beta: &[i64]) -> Result<Option<Vec<i64>>> {
    let b = h2h.coordinates(beta)?;
    Ok(solve_mod(res_gens, &b, h2h.orders()).map(|x| x.iter().map(|v| v.to_i64().unwrap_or(0)).collect()))
}

/// The extension class of `β ∈ A` together with the membership test.
///
/// With `via = Some(Ind_K^G L)` for `M`, every `G`-cohomology group is read
/// through Shapiro's lemma so the complexes stay over `K`.
pub fn prop07_package(
    setup: &DoubleCosetSetup,
    beta: &[i64],
    budget: u128,
    via: Option<&Induction>,
) -> Result<Prop07Report> {
    if !setup.h1_vanishes(budget)? {
        return Err(Error::Precondition(format!("H^1({}, M) is not zero", setup.h1.name())));
    }
    let m = &setup.m;
    let h2h = cohomology(&setup.res_h, 2, budget)?;
    let h2h1 = cohomology(&setup.res_h1, 2, budget)?;
    let in_a = h2h1.is_zero(&setup.h_direct(beta)?)?;

    let h2g = CohomologyView::new(m, 2, budget, via)?;
    let res_gens = restricted_generators(&h2g, &h2h, &Complex::new(m), &setup.h)?;
    let witness = membership_in_restriction(&res_gens, &h2h, beta)?;
    let member = witness.is_some();

    let cj = &setup.cj;
    let hom_seq = hom_sequence_into(&cj.ses, m)?;
    let via_i = via.map(|ind| Induction::hom_from(&cj.i, ind)).transpose()?;
    let via_j = via.map(|ind| Induction::hom_from(&cj.j, ind)).transpose()?;
    let ext2 = CohomologyView::new(hom_seq.sub(), 2, budget, via_i.as_ref())?;
    let ext1 = CohomologyView::new(hom_seq.quotient(), 1, budget, via_j.as_ref())?;

    let mut alpha = None;
    let mut alpha_order = None;
    let mut alpha_cocycle = None;
    let mut iff_holds = None;
    if in_a {
        let lifted = setup.lift(beta)?;
        let to_i = hom_precompose(&cj.i_incl, m)?;
        let x = pushforward(
            &to_i,
            &Complex::new(setup.ind_h.big()),
            &Complex::new(hom_seq.sub()),
            2,
            &lifted,
        )?;
        let xc = ext2.coordinates(&x)?;
        let gens = ext1.generators()?;
        let mut cols = Vec::new();
        for z in &gens {
            let dz = connecting(&hom_seq, 1, z)?;
            cols.push(ext2.coordinates(&dz)?.into_iter().map(BigInt::from).collect::<Vec<_>>());
        }
        let dmat = IntMatrix::from_columns(&cols, ext2.orders().len());
        let c = solve_mod(&dmat, &xc, ext2.orders())
            .ok_or_else(|| Error::Internal("image of β in Ext^2(I, M) is not hit by Ext^1(J, M)".into()))?;
        let coords: Vec<i64> = c
            .iter()
            .zip(ext1.orders())
            .map(|(v, &d)| v.mod_floor(&BigInt::from(d)).to_i64().expect("reduced"))
            .collect();
        let order = coords.iter().zip(ext1.orders()).fold(1u64, |acc, (a, &d)| {
            let a = *a as u64;
            acc.lcm(&(d / a.gcd(&d)))
        });
        let mut cocycle = Complex::new(hom_seq.quotient()).zero(1);
        for (a, z) in coords.iter().zip(&gens) {
            for (o, v) in cocycle.iter_mut().zip(z) {
                *o += a * v;
            }
        }
        iff_holds = Some((order == 1) == member);
        alpha = Some(coords);
        alpha_order = Some(order);
        alpha_cocycle = Some(cocycle);
    }
    Ok(Prop07Report {
        in_a,
        ext1_j: ext1.orders().to_vec(),
        ext2_i: ext2.orders().to_vec(),
        alpha,
        alpha_order,
        h2_g: h2g.orders().to_vec(),
        member,
        witness,
        iff_holds,
        alpha_cocycle,
    })
}

/// `cls = cls₂ + cls_odd` with `cls₂` of 2-power order and `cls_odd` of odd
/// order: with `N = 2^a·b`, take `u ≡ 1 (mod 2^a)`, `u ≡ 0 (mod b)`.
pub fn class_order_decomposition(cls: &CohClass) -> (CohClass, CohClass) {
    let n = cls.order().max(1) as i64;
    let two = 1i64 << n.trailing_zeros();
    let b = n / two;
    let binv = (1..=two).find(|k| (b * k) % two == 1 % two).unwrap_or(1);
    let u = (b * binv).rem_euclid(n);
    let cls2 = cls.scale(u);
    let odd = cls.scale((1 - u).rem_euclid(n));
    (cls2, odd)
}

