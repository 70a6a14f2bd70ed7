//! Cochain-level maps between cohomology groups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::glattice::{augmentation_sublattice, hom_lattice, GLattice, GMap, Induction, ShortExactSeq};
use crate::groups::{same_group, GroupHom, Subgroup};
use crate::zmat::{IntMatrix, SparseI64};

use super::{cohomology, induced_matrix, CohClass, CohomologyGroup, Complex};

/// `out(t) = coeff · c(emap(t))`, read on the tuples of `dst`.
pub(crate) fn pullback(
    src: &Complex,
    dst: &Complex,
    n: usize,
    c: &[i64],
    emap: impl Fn(usize) -> usize,
    coeff: Option<&SparseI64>,
) -> Result<Vec<i64>> {
    if c.len() != src.dim(n) {
        return Err(Error::Invalid("cochain has the wrong degree".into()));
    }
    let r = src.rank();
    let mut mapped = vec![0usize; n];
    dst.from_fn(n, |t, out| {
        for (m, &x) in mapped.iter_mut().zip(t) {
            *m = emap(x);
        }
        let Some(s) = src.slot(&mapped) else {
            return Ok(());
        };
        let v = &c[s * r..(s + 1) * r];
        match coeff {
            Some(a) => a.apply_into(v, out),
            None => {
                out.copy_from_slice(v);
                Ok(())
            }
        }
    })
}

fn same_module_matrices(a: &Complex, b: &Complex, map: impl Fn(usize) -> usize) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::Invalid("modules of different rank".into()));
    }
    for &x in b.group().generator_indices() {
        if b.module().action(x) != a.module().action(map(x)) {
            return Err(Error::NotEquivariant(format!(
                "{} does not match {} at {}",
                b.module().name(),
                a.module().name(),
                b.group().element(x)
            )));
        }
    }
    Ok(())
}

/// Restriction of an `n`-cochain on `G` to a subgroup (module restricted).
pub fn restrict_cochain(src: &Complex, dst: &Complex, sub: &Subgroup, n: usize, c: &[i64]) -> Result<Vec<i64>> {
    if !same_group(sub.parent(), src.group()) || !same_group(sub.group(), dst.group()) {
        return Err(Error::GroupMismatch("restriction between unrelated groups".into()));
    }
    same_module_matrices(src, dst, |x| sub.embed(x))?;
    pullback(src, dst, n, c, |x| sub.embed(x), None)
}

/// Matrix of `res: H^n(G, M) → H^n(H, Res M)` in generator coordinates.
pub fn restriction(src: &CohomologyGroup, dst: &CohomologyGroup, sub: &Subgroup) -> Result<IntMatrix> {
    let n = src.degree();
    induced_matrix(src, dst, |z| restrict_cochain(src.complex(), dst.complex(), sub, n, z))
}

/// `(g·z)(k_1, …) = g z(g⁻¹k_1g, …)`, carrying a cochain on `H` (module
/// `Res_H M`) to one on `K = gHg⁻¹` (module `Res_K M`).
#[allow(clippy::too_many_arguments)]
pub fn conjugate_cochain(
    m: &GLattice,
    src: &Complex,
    dst: &Complex,
    h: &Subgroup,
    k: &Subgroup,
    g: usize,
    n: usize,
    z: &[i64],
) -> Result<Vec<i64>> {
    let grp = m.group();
    if !same_group(h.parent(), grp) || !same_group(k.parent(), grp) {
        return Err(Error::GroupMismatch("conjugation inside a different group".into()));
    }
    let gi = grp.inv(g);
    let emap = |x: usize| {
        let y = grp.mul(gi, grp.mul(k.embed(x), g));
        h.local(y).expect("K = gHg⁻¹")
    };
    for x in 0..k.order() {
        if !h.contains(grp.mul(gi, grp.mul(k.embed(x), g))) {
            return Err(Error::Invalid(format!("{} is not the conjugate of {}", k.name(), h.name())));
        }
    }
    pullback(src, dst, n, z, emap, Some(m.action(g)))
}

/// Inflation along a surjection `π: G → Q`; the module on `G` must be the
/// module on `Q` pulled back along `π`.
pub fn inflate_cochain(src: &Complex, dst: &Complex, pi: &GroupHom, n: usize, c: &[i64]) -> Result<Vec<i64>> {
    if !same_group(&pi.source, dst.group()) || !same_group(&pi.target, src.group()) {
        return Err(Error::GroupMismatch("inflation along an unrelated homomorphism".into()));
    }
    same_module_matrices(src, dst, |x| pi.image(x))?;
    pullback(src, dst, n, c, |x| pi.image(x), None)
}

/// Applies a `G`-map to every value of a cochain.
pub fn pushforward(f: &GMap, src: &Complex, dst: &Complex, n: usize, c: &[i64]) -> Result<Vec<i64>> {
    if src.rank() != f.source().rank() || dst.rank() != f.target().rank() {
        return Err(Error::Invalid("push-forward along a map of the wrong shape".into()));
    }
    if !same_group(src.group(), dst.group()) {
        return Err(Error::GroupMismatch("push-forward between different groups".into()));
    }
    pullback(src, dst, n, c, |x| x, Some(f.sparse()))
}

/// `H^n(G, Ind L) → H^n(H, L)`: restrict to `H`, then project with `π`.
pub fn shapiro_forward(ind: &Induction, n: usize, c: &[i64]) -> Result<Vec<i64>> {
    let src = Complex::new(ind.big());
    let dst = Complex::new(ind.small());
    let sub = ind.subgroup();
    pullback(&src, &dst, n, c, |x| sub.embed(x), Some(ind.pi()))
}

/// The inverse of [`shapiro_forward`] on cocycles:
/// `f(g_1, …, g_n) = Σ_t t ι E(r(t⁻¹), r(t⁻¹g_1), …, r(t⁻¹g_1⋯g_n))` with
/// `E` the homogeneous form of `e` and `r` the retraction onto `H`.
pub fn shapiro_inverse(ind: &Induction, n: usize, e: &[i64]) -> Result<Vec<i64>> {
    let small = Complex::new(ind.small());
    if e.len() != small.dim(n) {
        return Err(Error::Invalid("cochain has the wrong degree".into()));
    }
    let big = Complex::new(ind.big());
    let g = ind.group().clone();
    let sub = ind.subgroup();
    let hg = sub.group().clone();
    let reps = ind.cosets().reps.clone();
    let l = ind.small().rank();
    let mut pts = vec![0usize; n + 1];
    let mut args = vec![0usize; n];
    let mut val = vec![0i64; l];
    let mut lifted = vec![0i64; big.rank()];
    big.from_fn(n, |t, out| {
        for &rep in &reps {
            let ti = g.inv(rep);
            // r(t⁻¹ g_1⋯g_k) as local indices of H
            let mut x = ti;
            pts[0] = sub.local(ind.retract(x)).expect("retraction lands in H");
            for k in 0..n {
                x = g.mul(x, t[k]);
                pts[k + 1] = sub.local(ind.retract(x)).expect("retraction lands in H");
            }
            for k in 0..n {
                args[k] = hg.mul(hg.inv(pts[k]), pts[k + 1]);
            }
            let Some(s) = small.slot(&args) else {
                continue;
            };
            ind.small().action(pts[0]).apply_into(&e[s * l..(s + 1) * l], &mut val)?;
            ind.iota().apply_into(&val, &mut lifted)?;
            ind.big().action(rep).apply_add(1, &lifted, out)?;
        }
        Ok(())
    })
}

/// `H^n(G, Ind_H^G L)` through Shapiro's lemma, i.e. `H^n(H, L)`.
pub fn cohomology_via_shapiro(ind: &Induction, n: usize, budget: u128) -> Result<Arc<CohomologyGroup>> {
    cohomology(ind.small(), n, budget)
}

fn sparse_of(m: &IntMatrix) -> Result<SparseI64> {
    SparseI64::from_int_matrix(m)
}

/// The connecting map `H^n(G, C) → H^{n+1}(G, A)` of `0 → A → B → C → 0`.
pub fn connecting(ses: &ShortExactSeq, n: usize, z: &[i64]) -> Result<Vec<i64>> {
    let cc = Complex::new(ses.quotient());
    let cb = Complex::new(ses.middle());
    let ca = Complex::new(ses.sub());
    if z.len() != cc.dim(n) {
        return Err(Error::Invalid("cochain has the wrong degree".into()));
    }
    let s = sparse_of(ses.section())?;
    let l = sparse_of(ses.retraction())?;
    let lifted = pullback(&cc, &cb, n, z, |x| x, Some(&s))?;
    let db = cb.d(n, &lifted)?;
    let out = pullback(&cb, &ca, n + 1, &db, |x| x, Some(&l))?;
    let back = pullback(&ca, &cb, n + 1, &out, |x| x, Some(ses.left().sparse()))?;
    if back != db {
        return Err(Error::NotCocycle("connecting map applied to a non-cocycle".into()));
    }
    Ok(out)
}

/// The class in `H^1(G, Hom(C, A))` of `0 → A → B → C → 0`:
/// `φ(g) = L (g S g⁻¹ − S)` with `S` the section and `L` the retraction.
pub fn extension_class(ses: &ShortExactSeq) -> Result<(Arc<GLattice>, Vec<i64>)> {
    let hom = Arc::new(hom_lattice(ses.quotient(), ses.sub())?);
    let cx = Complex::new(&hom);
    let s = sparse_of(ses.section())?;
    let l = sparse_of(ses.retraction())?;
    let g = ses.middle().group().clone();
    let phi = cx.from_fn(1, |t, out| {
        let x = t[0];
        let m = ses
            .middle()
            .action(x)
            .mul(&s)?
            .mul(ses.quotient().action(g.inv(x)))?
            .sub(&s)?;
        let v = l.mul(&m)?;
        out.copy_from_slice(&v.to_dense());
        Ok(())
    })?;
    Ok((hom, phi))
}

/// The extension `0 → A → A ⊕ C → C → 0` with `g(a, c) = (ga + φ(g)(gc), gc)`
/// for a 1-cocycle `φ` in `Hom(C, A)`.
pub fn extension_from_cocycle(a: &Arc<GLattice>, c: &Arc<GLattice>, phi: &[i64], name: &str) -> Result<ShortExactSeq> {
    let hom = Arc::new(hom_lattice(c, a)?);
    let cx = Complex::new(&hom);
    if !cx.is_cocycle(1, phi)? {
        return Err(Error::CocycleCondition("extension data is not a 1-cocycle".into()));
    }
    let g = a.group().clone();
    let (ra, rc) = (a.rank(), c.rank());
    let mut elems = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let pv = cx.value(phi, &[x]);
        let f = SparseI64::from_dense(ra, rc, &pv).mul(c.action(x))?;
        let mut rows: Vec<Vec<(u32, i64)>> = Vec::with_capacity(ra + rc);
        for i in 0..ra {
            let mut row: Vec<(u32, i64)> = a.action(x).row(i).to_vec();
            row.extend(f.row(i).iter().map(|&(j, v)| (j + ra as u32, v)));
            rows.push(row);
        }
        for i in 0..rc {
            rows.push(c.action(x).row(i).iter().map(|&(j, v)| (j + ra as u32, v)).collect());
        }
        elems.push(SparseI64::from_rows(ra + rc, rows)?);
    }
    let labels = a.labels().iter().chain(c.labels()).cloned().collect();
    let e = Arc::new(GLattice::from_elements(&g, elems, Some(labels), name)?);
    let left = GMap::new(a, &e, IntMatrix::from_fn(ra + rc, ra, |i, j| (i == j) as i64))?;
    let right = GMap::new(&e, c, IntMatrix::from_fn(rc, ra + rc, |i, j| (j == i + ra) as i64))?;
    ShortExactSeq::new(left, right)
}

/// `Ext^i_G(M, N) = H^i(G, Hom(M, N))` for lattices.
pub fn ext_group(m: &GLattice, n: &GLattice, i: usize, budget: u128) -> Result<Arc<CohomologyGroup>> {
    let hom = Arc::new(hom_lattice(m, n)?);
    cohomology(&hom, i, budget)
}

/// `δ(1) ∈ H^1(G, I)` for `0 → I → Z[G/H] → Z → 0`.
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    pub ses: ShortExactSeq,
    pub group: Arc<CohomologyGroup>,
    pub class: CohClass,
}

pub fn canonical_class(h: &Subgroup, budget: u128) -> Result<CanonicalClass> {
    let (_, incl, aug) = augmentation_sublattice(h)?;
    let ses = ShortExactSeq::new(incl, aug)?;
    let rep = connecting(&ses, 0, &[1])?;
    let group = cohomology(ses.sub(), 1, budget)?;
    let class = group.class(rep)?;
    Ok(CanonicalClass { ses, group, class })
}

/// `H^n(G, N)` read either directly or, for `N = Ind_K^G L`, through
/// `H^n(K, L)` with the Shapiro maps on cochains.
#[derive(Clone, Debug)]
pub struct CohomologyView {
    group: Arc<CohomologyGroup>,
    via: Option<Induction>,
}

impl CohomologyView {
    pub fn direct(n_lattice: &Arc<GLattice>, n: usize, budget: u128) -> Result<CohomologyView> {
        Ok(CohomologyView {
            group: cohomology(n_lattice, n, budget)?,
            via: None,
        })
    }

    pub fn shapiro(ind: &Induction, n: usize, budget: u128) -> Result<CohomologyView> {
        Ok(CohomologyView {
            group: cohomology(ind.small(), n, budget)?,
            via: Some(ind.clone()),
        })
    }

    /// Shapiro when `via` is given (its induced lattice must carry the
    /// same action as `n_lattice`), direct otherwise.
    pub fn new(n_lattice: &Arc<GLattice>, n: usize, budget: u128, via: Option<&Induction>) -> Result<CohomologyView> {
        match via {
            Some(ind) => {
                if **ind.big() != **n_lattice {
                    return Err(Error::Invalid(format!(
                        "{} is not the induced lattice {}",
                        n_lattice.name(),
                        ind.big().name()
                    )));
                }
                CohomologyView::shapiro(ind, n, budget)
            }
            None => CohomologyView::direct(n_lattice, n, budget),
        }
    }

    /// The group actually computed (over `K` when routed through Shapiro).
    pub fn computed(&self) -> &Arc<CohomologyGroup> {
        &self.group
    }

    pub fn is_shapiro(&self) -> bool {
        self.via.is_some()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn orders(&self) -> &[u64] {
        self.group.orders()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    /// Coordinates of a cocycle on `G`.
    pub fn coordinates(&self, c: &[i64]) -> Result<Vec<i64>> {
        match &self.via {
            None => self.group.coordinates(c),
            Some(ind) => self.group.coordinates(&shapiro_forward(ind, self.degree(), c)?),
        }
    }

    /// Generator cocycles on `G`.
    pub fn generators(&self) -> Result<Vec<Vec<i64>>> {
        match &self.via {
            None => Ok(self.group.generators().to_vec()),
            Some(ind) => self
                .group
                .generators()
                .iter()
                .map(|z| shapiro_inverse(ind, self.degree(), z))
                .collect(),
        }
    }
}
