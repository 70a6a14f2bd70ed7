//! The named lattices over the Weyl group `W(m) = (Z/2)^m ⋊ S_m`.
//!
//! Points are `0..2m` with blocks `{2k, 2k+1}`; `y_ij` has index `i·2m + j`
//! and labels are printed 1-based (`y12` is `y_{01}`).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groups::{double_cosets, intersection, weyl_group, Perm, Subgroup, WeylGroup};
use crate::zmat::{hnf, solve_matrix, IntMatrix};

use super::{
    coordinate_sublattice, equivariant_section, find_equivariant_iso, kernel_lattice, perm_lattice,
    permutation_lattice, quotient_lattice, sublattice_from_basis, trivial_lattice, direct_sum, GLattice, GMap,
    Induction, IsoOutcome, ShortExactSeq,
};

/// Rows `top, middle, bottom` and columns `left, center, right` of the
/// diagram with `Y_D, Y, Y_O` in the left column.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub top: ShortExactSeq,
    pub middle: ShortExactSeq,
    pub bottom: ShortExactSeq,
    pub left: ShortExactSeq,
    pub center: ShortExactSeq,
    pub right: ShortExactSeq,
}

impl Diagram {
    /// The four squares, each as (name, commutes).
    pub fn squares(&self) -> Result<Vec<(String, bool)>> {
        let sq = |name: &str, a: &GMap, b: &GMap, c: &GMap, d: &GMap| -> Result<(String, bool)> {
            Ok((name.to_string(), b.compose(a)?.matrix() == d.compose(c)?.matrix()))
        };
        Ok(vec![
            sq("Y_D -> Y'", self.bottom.left(), self.center.left(), self.left.left(), self.middle.left())?,
            sq("Y_D' -> I_2m", self.bottom.right(), self.right.left(), self.center.left(), self.middle.right())?,
            sq("Y -> Y_O'", self.left.right(), self.top.left(), self.middle.left(), self.center.right())?,
            sq("Y' -> I_m", self.center.right(), self.top.right(), self.middle.right(), self.right.right())?,
        ])
    }
}

/// Lattices built from the monomial lattice `Y'` of rank `4m²`.
#[derive(Clone, Debug)]
pub struct WeylLattices {
    pub m: usize,
    pub weyl: WeylGroup,
    /// `X = Z[S_2m/S_2m-1]` restricted to `W`, basis `d_i`
    pub x: Arc<GLattice>,
    pub y_prime: Arc<GLattice>,
    /// `I_2m ⊂ X` with basis `d_i − d_1`
    pub i2m: Arc<GLattice>,
    pub i2m_incl: GMap,
    pub char_map: GMap,
    pub y: Arc<GLattice>,
    pub y_incl: GMap,
    pub yd_prime: Arc<GLattice>,
    pub yd_prime_incl: GMap,
    pub yo_prime: Arc<GLattice>,
    pub yo_prime_incl: GMap,
    pub yo_proj: GMap,
    /// `Z[W/H]` on the blocks, basis `f_k`
    pub blocks: Arc<GLattice>,
    /// `I_m ⊂ Z[W/H]` with basis `f_k − f_1`
    pub im: Arc<GLattice>,
    pub im_incl: GMap,
    pub i2m_to_im: GMap,
    /// `Z⁻[S_m/S_m-1] ⊂ I_2m` with basis `d_2k−1 − d_2k`
    pub zminus: Arc<GLattice>,
    pub yd: Arc<GLattice>,
    pub yo: Arc<GLattice>,
    pub diagram: Diagram,
    /// `I_m → I_2m`, `f_k − f_1 ↦ d_2k−1 + d_2k − d_1 − d_2`
    pub im_to_i2m: GMap,
    pub y2: Arc<GLattice>,
    pub y2_incl: GMap,
    pub y_in_y2: GMap,
    pub y2_to_im: GMap,
    /// `M ⊂ Res_H Y_D` spanned by `y11, y22, y12 + y21`
    pub m_h: Arc<GLattice>,
    /// `Y_D = Ind_H^W M`
    pub yd_induction: Induction,
}

fn solve_into(sub_incl: &GMap, m: &IntMatrix, what: &str) -> Result<IntMatrix> {
    solve_matrix(sub_incl.matrix(), m).ok_or_else(|| Error::Internal(format!("{what}: image not in the sublattice")))
}

/// Factors `f: A → B` through the inclusion `S → B`.
fn factor(f: &GMap, incl: &GMap, what: &str) -> Result<GMap> {
    let mat = solve_into(incl, f.matrix(), what)?;
    GMap::new(f.source(), incl.source(), mat)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn cols_i64(rows: usize, cols: &[Vec<i64>]) -> IntMatrix {
    let big: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_columns(&big, rows)
}

pub fn weyl_lattices(m: usize) -> Result<WeylLattices> {
    if m < 2 {
        return Err(Error::Invalid("the named lattices need m >= 2".into()));
    }
    let weyl = weyl_group(m)?;
    let w = weyl.w.clone();
    let n = 2 * m;
    let perm = |x: usize| w.element(x).clone();

    let x = Arc::new(permutation_lattice(
        &w,
        n,
        |g, i| perm(g).apply(i),
        (1..=n).map(|i| format!("d{i}")).collect(),
        "X",
    )?);
    let y_prime = Arc::new(permutation_lattice(
        &w,
        n * n,
        |g, k| {
            let p = perm(g);
            p.apply(k / n) * n + p.apply(k % n)
        },
        (0..n * n).map(|k| format!("y{}{}", k / n + 1, k % n + 1)).collect(),
        "Y'",
    )?);

    // I_2m, basis b_i = d_i − d_0 (i ≥ 1)
    let b_cols: Vec<Vec<i64>> = (1..n)
        .map(|i| {
            let mut v = unit(n, i);
            v[0] = -1;
            v
        })
        .collect();
    let (i2m, i2m_incl) = sublattice_from_basis(&x, cols_i64(n, &b_cols), "I_2m")?;
    let i2m = Arc::new(
        (*i2m)
            .clone()
            .with_labels((2..=n).map(|i| format!("d{i}-d1")).collect())?,
    );
    let i2m_incl = GMap::new(&i2m, &x, i2m_incl.matrix().clone())?;
    // d_i in b-coordinates
    let d_in_b = |i: usize| -> Vec<i64> {
        let mut v = vec![0; n - 1];
        if i > 0 {
            v[i - 1] = 1;
        }
        v
    };
    let sub_vec = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(p, q)| p - q).collect() };
    let char_cols: Vec<Vec<i64>> = (0..n * n).map(|k| sub_vec(d_in_b(k / n), d_in_b(k % n))).collect();
    let char_map = GMap::new(&y_prime, &i2m, cols_i64(n - 1, &char_cols))?;
    let (y, y_incl) = kernel_lattice(&char_map, "Y")?;
    let middle = ShortExactSeq::new(y_incl.clone(), char_map.clone())?;

    let same_block = |k: usize| (k / n) / 2 == (k % n) / 2;
    let d_idx: Vec<usize> = (0..n * n).filter(|&k| same_block(k)).collect();
    let o_idx: Vec<usize> = (0..n * n).filter(|&k| !same_block(k)).collect();
    let (yd_prime, yd_prime_incl) = coordinate_sublattice(&y_prime, &d_idx, "Y_D'")?;
    let (yo_prime, yo_prime_incl) = coordinate_sublattice(&y_prime, &o_idx, "Y_O'")?;
    let yd_prime = Arc::new((*yd_prime).clone().with_labels(d_idx.iter().map(|&k| y_prime.labels()[k].clone()).collect())?);
    let yd_prime_incl = GMap::new(&yd_prime, &y_prime, yd_prime_incl.matrix().clone())?;
    let yo_prime = Arc::new((*yo_prime).clone().with_labels(o_idx.iter().map(|&k| y_prime.labels()[k].clone()).collect())?);
    let yo_prime_incl = GMap::new(&yo_prime, &y_prime, yo_prime_incl.matrix().clone())?;
    let yo_proj = GMap::new(&y_prime, &yo_prime, yo_prime_incl.matrix().transpose())?;
    let center = ShortExactSeq::new(yd_prime_incl.clone(), yo_proj.clone())?;

    // blocks and I_m
    let blocks = Arc::new(permutation_lattice(
        &w,
        m,
        |g, k| perm(g).apply(2 * k) / 2,
        (1..=m).map(|k| format!("f{k}")).collect(),
        "Z[W/H]",
    )?);
    let f_cols: Vec<Vec<i64>> = (1..m)
        .map(|k| {
            let mut v = unit(m, k);
            v[0] = -1;
            v
        })
        .collect();
    let (im, im_incl) = sublattice_from_basis(&blocks, cols_i64(m, &f_cols), "I_m")?;
    let im = Arc::new((*im).clone().with_labels((2..=m).map(|k| format!("f{k}-f1")).collect())?);
    let im_incl = GMap::new(&im, &blocks, im_incl.matrix().clone())?;
    let f_in_im = |k: usize| -> Vec<i64> {
        let mut v = vec![0; m - 1];
        if k > 0 {
            v[k - 1] = 1;
        }
        v
    };
    // b_i ↦ f_{block(i)} − f_0
    let i2m_to_im = GMap::new(&i2m, &im, cols_i64(m - 1, &(1..n).map(|i| f_in_im(i / 2)).collect::<Vec<_>>()))?;

    // Z⁻ ⊂ I_2m: d_2k − d_2k+1
    let z_cols: Vec<Vec<i64>> = (0..m).map(|k| sub_vec(d_in_b(2 * k), d_in_b(2 * k + 1))).collect();
    let (zminus, zminus_incl) = sublattice_from_basis(&i2m, cols_i64(n - 1, &z_cols), "Z-[S_m/S_m-1]")?;
    let zminus = Arc::new(
        (*zminus)
            .clone()
            .with_labels((0..m).map(|k| format!("d{}-d{}", 2 * k + 1, 2 * k + 2)).collect())?,
    );
    let zminus_incl = GMap::new(&zminus, &i2m, zminus_incl.matrix().clone())?;
    let right = ShortExactSeq::new(zminus_incl.clone(), i2m_to_im.clone())?;

    // Y_D ⊂ Y_D' with basis y_aa, y_bb, y_ab + y_ba per block; Y_D' coordinates
    // per block are (y_aa, y_ab, y_ba, y_bb)
    let mut yd_cols = Vec::new();
    let mut yd_labels = Vec::new();
    for k in 0..m {
        let (a, b) = (2 * k + 1, 2 * k + 2);
        yd_cols.push(unit(4 * m, 4 * k));
        yd_cols.push(unit(4 * m, 4 * k + 3));
        let mut v = unit(4 * m, 4 * k + 1);
        v[4 * k + 2] = 1;
        yd_cols.push(v);
        yd_labels.extend([format!("y{a}{a}"), format!("y{b}{b}"), format!("y{a}{b}+y{b}{a}")]);
    }
    let (yd, yd_in_ydp) = sublattice_from_basis(&yd_prime, cols_i64(4 * m, &yd_cols), "Y_D")?;
    let yd = Arc::new((*yd).clone().with_labels(yd_labels)?);
    let yd_in_ydp = GMap::new(&yd, &yd_prime, yd_in_ydp.matrix().clone())?;
    let ydp_to_z = factor(&char_map.compose(&yd_prime_incl)?, &zminus_incl, "Y_D' -> Z-")?;
    let bottom = ShortExactSeq::new(yd_in_ydp.clone(), ydp_to_z)?;

    // top row
    let yop_to_im = factor(&i2m_to_im.compose(&char_map)?.compose(&yo_prime_incl)?, &GMap::identity(&im), "Y_O' -> I_m")?;
    let (yo, yo_incl) = kernel_lattice(&yop_to_im, "Y_O")?;
    let top = ShortExactSeq::new(yo_incl.clone(), yop_to_im)?;

    // left column
    let yd_to_y = factor(&yd_prime_incl.compose(&yd_in_ydp)?, &y_incl, "Y_D -> Y")?;
    let y_to_yo = factor(&yo_proj.compose(&y_incl)?, &yo_incl, "Y -> Y_O")?;
    let left = ShortExactSeq::new(yd_to_y, y_to_yo)?;

    let diagram = Diagram {
        top,
        middle,
        bottom,
        left,
        center,
        right,
    };

    // Y_2 = preimage of I_m under the character map
    let e_cols: Vec<Vec<i64>> = (1..m)
        .map(|k| {
            let v = sub_vec(d_in_b(2 * k), d_in_b(0));
            let u = sub_vec(d_in_b(2 * k + 1), d_in_b(1));
            v.iter().zip(&u).map(|(p, q)| p + q).collect()
        })
        .collect();
    let im_to_i2m = GMap::new(&im, &i2m, cols_i64(n - 1, &e_cols))?;
    let (_, q) = quotient_lattice(&im_to_i2m, "I_2m/I_m")?;
    let (y2, y2_incl) = kernel_lattice(&q.compose(&char_map)?, "Y_2")?;
    let y_in_y2 = factor(&y_incl, &y2_incl, "Y -> Y_2")?;
    let y2_to_im = factor(&char_map.compose(&y2_incl)?, &im_to_i2m, "Y_2 -> I_m")?;

    // M and the induction Y_D = Ind_H^W M
    let h = &weyl.h;
    let yd_h = Arc::new(yd.restrict(h.group())?);
    let (m_h, _) = coordinate_sublattice(&yd_h, &[0, 1, 2], "M")?;
    let m_h = Arc::new((*m_h).clone().with_labels(yd.labels()[..3].to_vec())?);
    let iota = IntMatrix::from_fn(3 * m, 3, |i, j| (i == j) as i64);
    let yd_induction = Induction::new(&yd, h, &m_h, iota.clone(), iota.transpose())?;

    Ok(WeylLattices {
        m,
        weyl,
        x,
        y_prime,
        i2m,
        i2m_incl,
        char_map,
        y,
        y_incl,
        yd_prime,
        yd_prime_incl,
        yo_prime,
        yo_prime_incl,
        yo_proj,
        blocks,
        im,
        im_incl,
        i2m_to_im,
        zminus,
        yd,
        yo,
        diagram,
        im_to_i2m,
        y2,
        y2_incl,
        y_in_y2,
        y2_to_im,
        m_h,
        yd_induction,
    })
}

/// `0 → J → Z[G/H'] → I → 0` with `u_{H'} ↦ u_H − u_{gH}`.
#[derive(Clone, Debug)]
pub struct ConstructJ {
    pub j: Arc<GLattice>,
    pub i: Arc<GLattice>,
    pub perm: Arc<GLattice>,
    /// `Z[G/H'] → Z[G/H]`
    pub to_perm_h: GMap,
    /// `I ⊂ Z[G/H]`
    pub i_incl: GMap,
    pub ses: ShortExactSeq,
}

pub fn construct_j(h: &Subgroup, h1: &Subgroup, g: &Perm) -> Result<ConstructJ> {
    let grp = h.parent().clone();
    let gi = grp.try_index(g)?;
    if h.contains(gi) {
        return Err(Error::Precondition("g lies in H".into()));
    }
    let dc = double_cosets(h, h)?;
    if dc.len() != 2 {
        return Err(Error::Precondition(format!(
            "G is not H ∪ HgH: {} double cosets",
            dc.len()
        )));
    }
    let ghg = crate::groups::conjugate_subgroup(h, g)?;
    let both = intersection(h, &ghg, "H ∩ gHg⁻¹")?;
    if !h1.embedding().iter().all(|&x| both.contains(x)) {
        return Err(Error::Precondition(format!("{} is not inside H ∩ gHg⁻¹", h1.name())));
    }
    let ph = Arc::new(perm_lattice(h)?);
    let p1 = Arc::new(perm_lattice(h1)?);
    let ch = crate::groups::cosets(h);
    let c1 = crate::groups::cosets(h1);
    let nh = ch.len();
    let cols: Vec<Vec<i64>> = c1
        .reps
        .iter()
        .map(|&x| {
            let mut v = vec![0i64; nh];
            v[ch.coset_of[x]] += 1;
            v[ch.coset_of[grp.mul(x, gi)]] -= 1;
            v
        })
        .collect();
    let to_perm_h = GMap::new(&p1, &ph, cols_i64(nh, &cols))?;
    let (i, i_incl, _) = super::augmentation_sublattice(h)?;
    let onto_i = factor(&to_perm_h, &i_incl, "Z[G/H'] -> I")?;
    let (j, ses) = ShortExactSeq::from_surjection(onto_i, "J")?;
    Ok(ConstructJ {
        j,
        i,
        perm: p1,
        to_perm_h,
        i_incl,
        ses,
    })
}

/// Whether the columns of `a` and `b` span the same lattice.
pub fn same_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    let ha = hnf(&a.transpose());
    let hb = hnf(&b.transpose());
    let ra = ha.h.select_rows(&(0..ha.rank).collect::<Vec<_>>());
    let rb = hb.h.select_rows(&(0..hb.rank).collect::<Vec<_>>());
    ra == rb
}

/// A named check inside a lattice bundle.
#[derive(Clone, Debug)]
pub struct LatticeCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> LatticeCheck {
    LatticeCheck {
        name: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

/// The `m = 2` lattices around `Y_4`, `Y_2` and `M_B`.
#[derive(Clone, Debug)]
pub struct Sec5Lattices {
    pub base: WeylLattices,
    /// `Z[W]`, basis `u_w` in element order
    pub zw: Arc<GLattice>,
    /// `Z[W] ≅ Y_O'`, `w ↦ y_{w(3) w(1)}`
    pub zw_to_yo: GMap,
    pub y4: Arc<GLattice>,
    pub y4_incl: GMap,
    /// the preimage of `Z(d1 + d2 − d3 − d4)` in `Y_O'`
    pub y25: Arc<GLattice>,
    pub y25_incl: GMap,
    pub b: Subgroup,
    pub m_b: Arc<GLattice>,
    /// `M_B → Z[B] ⊕ Z`, `x ↦ (1 + b, 1)`, `y ↦ (b + ab, 1)`
    pub m_b_embed: GMap,
    pub m_b_seq: Option<ShortExactSeq>,
    pub induced_seq: Option<ShortExactSeq>,
    pub checks: Vec<LatticeCheck>,
}

impl Sec5Lattices {
    pub fn check(&self, name: &str) -> Option<&LatticeCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Induced map `Ind f: Ind L1 → Ind L2` on the bases of [`Induction::induced`].
pub fn induced_map(a: &Induction, b: &Induction, f: &GMap) -> Result<GMap> {
    let nc = a.cosets().len();
    let mat = IntMatrix::identity(nc).kron(f.matrix());
    GMap::new(a.big(), b.big(), mat)
}

fn iso_detail(o: &IsoOutcome) -> String {
    match o {
        IsoOutcome::Found(f) => format!("found, det ±1, matrix {}x{}", f.matrix().rows(), f.matrix().cols()),
        IsoOutcome::NotIsomorphic(r) => format!("not isomorphic: {r}"),
        IsoOutcome::NotFound { tried } => format!("no witness among {tried} candidates"),
    }
}

pub fn sec5_lattices(iso_bound: i64) -> Result<Sec5Lattices> {
    let base = weyl_lattices(2)?;
    let weyl = base.weyl.clone();
    let w = weyl.w.clone();
    let n = 4;
    let mut checks = Vec::new();

    let zw = Arc::new(perm_lattice(&Subgroup::trivial(&w, "1"))?.with_name("Z[W]"));
    let o_idx: Vec<usize> = (0..n * n).filter(|&k| (k / n) / 2 != (k % n) / 2).collect();
    let pos = |k: usize| o_idx.iter().position(|&x| x == k).expect("off-block pair");
    let zw_cols: Vec<Vec<i64>> = (0..w.order())
        .map(|x| {
            let p = w.element(x);
            unit(o_idx.len(), pos(p.apply(2) * n + p.apply(0)))
        })
        .collect();
    let zw_to_yo = GMap::new(&zw, &base.yo_prime, cols_i64(o_idx.len(), &zw_cols))?;
    checks.push(check(
        "Z[W] ≅ Y_O'",
        crate::zmat::is_unimodular(zw_to_yo.matrix()),
        "w ↦ y_{w(3)w(1)}",
    ));

    let yo_to_i2m = base.char_map.compose(&base.yo_prime_incl)?;
    let (y4, y4_incl) = kernel_lattice(&yo_to_i2m, "Y_4")?;
    checks.push(check("rank Y_4 = 5", y4.rank() == 5, format!("rank {}", y4.rank())));

    // elements of Z[W] pushed to Y_O'
    let elt = |terms: &[(i64, &Perm)]| -> Result<Vec<i64>> {
        let mut v = vec![0i64; w.order()];
        for (c, p) in terms {
            v[w.try_index(p)?] += c;
        }
        zw_to_yo.apply(&v)
    };
    let in_y4 = |v: &[i64]| -> Result<bool> { Ok(yo_to_i2m.apply(v)?.iter().all(|x| *x == 0)) };
    let id = Perm::identity(n);
    let sigma = weyl.sigma()?;
    let (t1, t2) = (weyl.tau[0].clone(), weyl.tau[1].clone());
    let one_plus_sigma = elt(&[(1, &id), (1, &sigma)])?;
    checks.push(check("1+σ ∈ Y_4", in_y4(&one_plus_sigma)?, ""));
    let mut translates_ok = true;
    let mut span_cols: Vec<Vec<i64>> = Vec::new();
    for x in 0..w.order() {
        let v = base.yo_prime.act(x, &one_plus_sigma)?;
        translates_ok &= in_y4(&v)?;
        span_cols.push(v);
    }
    checks.push(check("Z[W/<σ>](1+σ) ⊆ Y_4", translates_ok, ""));
    let prod = elt(&[(1, &id), (-1, &t1), (-1, &t2), (1, &t1.compose(&t2))])?;
    checks.push(check("(1-σ1)(1-σ2) ∈ Y_4", in_y4(&prod)?, ""));
    for x in 0..w.order() {
        span_cols.push(base.yo_prime.act(x, &prod)?);
    }
    let span = cols_i64(8, &span_cols);
    checks.push(check(
        "Y_4 generated by 1+σ and (1-σ1)(1-σ2)",
        same_span(&span, y4_incl.matrix()),
        "",
    ));

    // Y_2⁵: preimage of Z(d1 + d2 − d3 − d4)
    // d1 + d2 − d3 − d4 = (d2−d1) − (d3−d1) − (d4−d1)
    let v_sign = vec![1i64, -1, -1];
    let (_, zs_incl) = sublattice_from_basis(&base.i2m, cols_i64(3, &[v_sign]), "Z(d1+d2-d3-d4)")?;
    let (_, qs) = quotient_lattice(&zs_incl, "I_4/Z(d1+d2-d3-d4)")?;
    let (y25, y25_incl) = kernel_lattice(&qs.compose(&yo_to_i2m)?, "Y_2(5)")?;
    checks.push(check("rank Y_2(5) = 6", y25.rank() == 6, format!("rank {}", y25.rank())));
    let s12 = elt(&[(1, &t1), (1, &t2)])?;
    let mut gen_cols: Vec<Vec<i64>> = y4_incl.matrix().columns().iter().map(|c| super::small_vec(c)).collect();
    gen_cols.push(s12);
    checks.push(check(
        "Y_2(5) generated by Y_4 and σ1+σ2",
        same_span(&cols_i64(8, &gen_cols), y25_incl.matrix()),
        "",
    ));

    // 0 → Y_4 → Y → Y_D' → 0
    let y4_in_yp = base.yo_prime_incl.compose(&y4_incl)?;
    let y4_to_y = factor(&y4_in_yp, &base.y_incl, "Y_4 -> Y")?;
    let ydp_proj = GMap::new(&base.y_prime, &base.yd_prime, base.yd_prime_incl.matrix().transpose())?;
    let y_to_ydp = ydp_proj.compose(&base.y_incl)?;
    let seq = ShortExactSeq::new(y4_to_y, y_to_ydp);
    checks.push(check(
        "0 -> Y_4 -> Y -> Y_D' -> 0 exact",
        seq.is_ok(),
        match &seq {
            Ok(_) => "ranks 5, 13, 8".to_string(),
            Err(e) => e.to_string(),
        },
    ));

    // Y_2 ≅ Y_2(5) ⊕ Y_D' through an equivariant section of Y_2 → Y_D'
    let y25_in_yp = base.yo_prime_incl.compose(&y25_incl)?;
    let y25_to_y2 = factor(&y25_in_yp, &base.y2_incl, "Y_2(5) -> Y_2")?;
    let y2_to_ydp = ydp_proj.compose(&base.y2_incl)?;
    let split = ShortExactSeq::new(y25_to_y2, y2_to_ydp.clone())
        .and_then(|_| equivariant_section(&y2_to_ydp));
    checks.push(check(
        "Y_2 ≅ Y_2(5) ⊕ Y_D'",
        matches!(split, Ok(Some(_))),
        match &split {
            Ok(Some(_)) => "equivariant section of Y_2 -> Y_D' found".to_string(),
            Ok(None) => "no equivariant section".to_string(),
            Err(e) => e.to_string(),
        },
    ));

    // M_B ⊂ Z[B]
    let b = weyl.b()?;
    let bg = b.group().clone();
    let zb = Arc::new(perm_lattice(&Subgroup::trivial(&bg, "1"))?.with_name("Z[B]"));
    let a_el = t1.compose(&t2);
    let ab = a_el.compose(&sigma);
    let bidx = |p: &Perm| bg.try_index(p);
    let zb_vec = |ps: &[&Perm]| -> Result<Vec<i64>> {
        let mut v = vec![0i64; bg.order()];
        for p in ps {
            v[bidx(p)?] += 1;
        }
        Ok(v)
    };
    let xv = zb_vec(&[&id, &sigma])?;
    let axv = zb_vec(&[&a_el, &ab])?;
    let yv = zb_vec(&[&sigma, &ab])?;
    let (m_b, _) = sublattice_from_basis(&zb, cols_i64(4, &[xv.clone(), axv.clone(), yv.clone()]), "M_B")?;
    let m_b = Arc::new((*m_b).clone().with_labels(vec!["x".into(), "ax".into(), "y".into()])?);
    let zb_z = Arc::new(direct_sum(&[&zb, &trivial_lattice(&bg, 1)], "Z[B] + Z")?);
    let emb_cols: Vec<Vec<i64>> = [xv, axv, yv]
        .into_iter()
        .map(|mut v| {
            v.push(1);
            v
        })
        .collect();
    let m_b_embed = GMap::new(&m_b, &zb_z, cols_i64(5, &emb_cols))?;
    // relations of the presentation
    let bx = m_b.act(bidx(&sigma)?, &[1, 0, 0])?;
    let ay = m_b.act(bidx(&a_el)?, &[0, 0, 1])?;
    let abxy = {
        let v = m_b.act(bidx(&ab)?, &[1, 0, -1])?;
        vec![1 + v[0], v[1], -1 + v[2]]
    };
    checks.push(check(
        "M_B relations",
        bx == vec![1, 0, 0] && ay == vec![0, 0, 1] && abxy.iter().all(|x| *x == 0),
        "b fixes x, a fixes y, (1+ab)(x-y) = 0",
    ));

    let ab_sub = Subgroup::new(&bg, vec![ab.clone()], "<ab>")?;
    let zb_ab = Arc::new(perm_lattice(&ab_sub)?);
    let (m_b_seq, coker) = match quotient_lattice(&m_b_embed, "coker") {
        Ok((c, proj)) => {
            let iso = find_equivariant_iso(&c, &zb_ab, iso_bound)?;
            checks.push(check("coker(M_B -> Z[B] + Z) ≅ Z[B/<ab>]", iso.is_found(), iso_detail(&iso)));
            match iso.found() {
                Some(f) => {
                    let right = f.compose(&proj)?;
                    (Some(ShortExactSeq::new(m_b_embed.clone(), right)?), true)
                }
                None => (None, false),
            }
        }
        Err(e) => {
            checks.push(check("coker(M_B -> Z[B] + Z) ≅ Z[B/<ab>]", false, e.to_string()));
            (None, false)
        }
    };

    // induce to W
    let mut induced_seq = None;
    let ind_m = Induction::induced(&b, &m_b, "Ind M_B")?;
    if let (Some(ses), true) = (&m_b_seq, coker) {
        let ind_mid = Induction::induced(&b, &zb_z, "Ind(Z[B] + Z)")?;
        let ind_right = Induction::induced(&b, &zb_ab, "Ind Z[B/<ab>]")?;
        let l = induced_map(&ind_m, &ind_mid, ses.left())?;
        let r = induced_map(&ind_mid, &ind_right, ses.right())?;
        let s = ShortExactSeq::new(l, r);
        checks.push(check(
            "induced sequence exact",
            s.is_ok(),
            s.as_ref().map(|_| "ranks 6, 10, 4".to_string()).unwrap_or_else(|e| e.to_string()),
        ));
        induced_seq = s.ok();
        let zw_b = Arc::new(direct_sum(&[&zw, &perm_lattice(&b)?], "Z[W] + Z[W/B]")?);
        let iso_mid = find_equivariant_iso(ind_mid.big(), &zw_b, iso_bound)?;
        checks.push(check("Ind(Z[B] + Z) ≅ Z[W] + Z[W/B]", iso_mid.is_found(), iso_detail(&iso_mid)));
        let wab = Subgroup::new(&w, vec![ab.clone()], "<σ1σ2σ>")?;
        let iso_right = find_equivariant_iso(ind_right.big(), &Arc::new(perm_lattice(&wab)?), iso_bound)?;
        checks.push(check("Ind Z[B/<ab>] ≅ Z[W/<σ1σ2σ>]", iso_right.is_found(), iso_detail(&iso_right)));
    }
    let iso_y = find_equivariant_iso(&y25, ind_m.big(), iso_bound)?;
    checks.push(check("Y_2(5) ≅ Ind_B^W M_B", iso_y.is_found(), iso_detail(&iso_y)));

    Ok(Sec5Lattices {
        base,
        zw,
        zw_to_yo,
        y4,
        y4_incl,
        y25,
        y25_incl,
        b,
        m_b,
        m_b_embed,
        m_b_seq,
        induced_seq,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glattice::DEFAULT_ISO_BOUND;

    #[test]
    fn ranks_m2() {
        let p = weyl_lattices(2).unwrap();
        assert_eq!(p.y_prime.rank(), 16);
        assert_eq!(p.y.rank(), 13);
        assert_eq!(p.yd.rank(), 6);
        assert_eq!(p.yo_prime.rank(), 8);
        assert_eq!(p.yo.rank(), 7);
        assert_eq!(p.y2.rank(), 14);
        assert!(p.diagram.squares().unwrap().iter().all(|s| s.1));
    }

    #[test]
    fn ranks_m3() {
        let p = weyl_lattices(3).unwrap();
        assert_eq!(p.y_prime.rank(), 36);
        assert_eq!(p.yd.rank(), 9);
        assert_eq!(p.y2.rank(), 33);
        assert_eq!(p.m_h.rank(), 3);
        assert!(p.diagram.squares().unwrap().iter().all(|s| s.1));
    }

    #[test]
    fn m2_bundle_checks() {
        let s = sec5_lattices(DEFAULT_ISO_BOUND).unwrap();
        for c in &s.checks {
            assert!(c.ok, "{}: {}", c.name, c.detail);
        }
        assert_eq!(s.y4.rank(), 5);
        assert_eq!(s.y25.rank(), 6);
    }

    #[test]
    fn j_ranks() {
        let w = weyl_group(2).unwrap();
        let j = construct_j(&w.h, w.h2().unwrap(), w.g().unwrap()).unwrap();
        assert_eq!(j.j.rank(), 7);
        let w3 = weyl_group(3).unwrap();
        let j3 = construct_j(&w3.h, w3.h2().unwrap(), w3.g().unwrap()).unwrap();
        assert_eq!(j3.j.rank(), 22);
    }
}
