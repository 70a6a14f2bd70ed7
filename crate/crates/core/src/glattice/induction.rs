//! A `G`-lattice presented as induced from a subgroup.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{cosets, Cosets, PermGroup, Subgroup};
use crate::zmat::{IntMatrix, SparseI64};

use super::{hom_lattice, GLattice};

/// `N = Ind_H^G L` witnessed by an `H`-equivariant inclusion `ι: L → N` and
/// projection `π: N → L` with `π ι = 1`, `π t ι = 0` for coset
/// representatives `t ∉ H`, and `Σ_t t ι π t⁻¹ = 1`.
#[derive(Clone, Debug)]
pub struct Induction {
    big: Arc<GLattice>,
    sub: Subgroup,
    small: Arc<GLattice>,
    iota: SparseI64,
    pi: SparseI64,
    cosets: Cosets,
}

impl Induction {
    pub fn new(big: &Arc<GLattice>, sub: &Subgroup, small: &Arc<GLattice>, iota: IntMatrix, pi: IntMatrix) -> Result<Induction> {
        let g = big.group();
        if !crate::groups::same_group(sub.parent(), g) {
            return Err(Error::GroupMismatch("induction: subgroup of a different group".into()));
        }
        if !crate::groups::same_group(small.group(), sub.group()) {
            return Err(Error::GroupMismatch("induction: small lattice not over the subgroup".into()));
        }
        let (n, l) = (big.rank(), small.rank());
        if iota.rows() != n || iota.cols() != l || pi.rows() != l || pi.cols() != n {
            return Err(Error::Invalid("induction: ι or π has the wrong shape".into()));
        }
        let iota = SparseI64::from_int_matrix(&iota)?;
        let pi = SparseI64::from_int_matrix(&pi)?;
        let cs = cosets(sub);
        if cs.len() * l != n {
            return Err(Error::Invalid(format!(
                "induction: rank {n} is not [G:H]·{l} = {}",
                cs.len() * l
            )));
        }
        let hg = sub.group();
        for &s in hg.generator_indices() {
            let a = big.action(sub.embed(s));
            let b = small.action(s);
            if a.mul(&iota)? != iota.mul(b)? || pi.mul(a)? != b.mul(&pi)? {
                return Err(Error::NotEquivariant(format!("induction: ι or π at {}", hg.element(s))));
            }
        }
        if !pi.mul(&iota)?.is_identity() {
            return Err(Error::Invalid("induction: π ι is not the identity".into()));
        }
        let mut total = SparseI64::zeros(n, n);
        for (c, &t) in cs.reps.iter().enumerate() {
            let ti = big.action(t).mul(&iota)?;
            if c > 0 && !pi.mul(&ti)?.is_zero() {
                return Err(Error::Invalid(format!("induction: π t ι ≠ 0 for t = {}", g.element(t))));
            }
            let term = ti.mul(&pi)?.mul(big.action(g.inv(t)))?;
            total = total.add(&term)?;
        }
        if !total.is_identity() {
            return Err(Error::Invalid("induction: Σ t ι π t⁻¹ is not the identity".into()));
        }
        Ok(Induction {
            big: big.clone(),
            sub: sub.clone(),
            small: small.clone(),
            iota,
            pi,
            cosets: cs,
        })
    }

    /// Builds `Ind_H^G L` with basis `t_c ⊗ l_j` at index `c·rank L + j`.
    pub fn induced(sub: &Subgroup, small: &Arc<GLattice>, name: &str) -> Result<Induction> {
        let g = sub.parent().clone();
        if !crate::groups::same_group(small.group(), sub.group()) {
            return Err(Error::GroupMismatch("induced lattice over the wrong subgroup".into()));
        }
        let cs = cosets(sub);
        let l = small.rank();
        let nc = cs.len();
        let mut elems = Vec::with_capacity(g.order());
        for x in 0..g.order() {
            let mut rows = vec![Vec::new(); nc * l];
            for c in 0..nc {
                let c2 = cs.act(&g, x, c);
                // x t_c = t_{c2} h
                let h = g.mul(g.inv(cs.reps[c2]), g.mul(x, cs.reps[c]));
                let hl = sub.local(h).expect("coset arithmetic");
                let a = small.action(hl);
                for i in 0..l {
                    for &(j, v) in a.row(i) {
                        rows[c2 * l + i].push(((c * l) as u32 + j, v));
                    }
                }
            }
            elems.push(SparseI64::from_rows(nc * l, rows)?);
        }
        let labels = (0..nc)
            .flat_map(|c| {
                let t = g.element(cs.reps[c]).clone();
                small.labels().iter().map(move |lab| {
                    if c == 0 {
                        lab.clone()
                    } else {
                        format!("{t}·{lab}")
                    }
                })
            })
            .collect();
        let big = Arc::new(GLattice::from_elements(&g, elems, Some(labels), name)?);
        let n = nc * l;
        let iota = IntMatrix::from_fn(n, l, |i, j| (i == j) as i64);
        let pi = iota.transpose();
        Induction::new(&big, sub, small, iota, pi)
    }

    /// `Hom(Z[G/H], M) = Ind_H^G Res_H M` with `π` the evaluation at `u_H`.
    pub fn hom_perm(sub: &Subgroup, m: &Arc<GLattice>) -> Result<Induction> {
        let p = super::perm_lattice(sub)?;
        let big = Arc::new(hom_lattice(&p, m)?);
        let small = Arc::new(m.restrict(sub.group())?);
        let (nc, r) = (p.rank(), m.rank());
        let iota = IntMatrix::from_fn(r * nc, r, |i, a| (i == a * nc) as i64);
        let pi = iota.transpose();
        Induction::new(&big, sub, &small, iota, pi)
    }

    /// `Hom(X, N) = Ind_H^G Hom(Res X, L)` with `ι∘−` and `π∘−`.
    pub fn hom_from(x: &Arc<GLattice>, ind: &Induction) -> Result<Induction> {
        let big = Arc::new(hom_lattice(x, &ind.big)?);
        let xr = x.restrict(ind.sub.group())?;
        let small = Arc::new(hom_lattice(&xr, &ind.small)?);
        let id = SparseI64::identity(x.rank());
        let iota = ind.iota.kron(&id)?.to_int_matrix();
        let pi = ind.pi.kron(&id)?.to_int_matrix();
        Induction::new(&big, &ind.sub, &small, iota, pi)
    }

    pub fn big(&self) -> &Arc<GLattice> {
        &self.big
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn small(&self) -> &Arc<GLattice> {
        &self.small
    }

    pub fn iota(&self) -> &SparseI64 {
        &self.iota
    }

    pub fn pi(&self) -> &SparseI64 {
        &self.pi
    }

    pub fn cosets(&self) -> &Cosets {
        &self.cosets
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.big.group()
    }

    /// `r(x) ∈ H` (parent index) with `r(hx) = h r(x)` and `r(1) = 1`.
    pub fn retract(&self, x: usize) -> usize {
        let g = self.big.group();
        g.mul(x, self.cosets.reps[self.cosets.coset_of[g.inv(x)]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glattice::{perm_lattice, trivial_lattice};
    use crate::groups::{symmetric_group, weyl_group, Perm};

    #[test]
    fn induced_from_trivial_is_regular() {
        let s2 = symmetric_group(2).unwrap();
        let one = Subgroup::trivial(&s2, "1");
        let z = Arc::new(trivial_lattice(one.group(), 1));
        let ind = Induction::induced(&one, &z, "Z[S2]").unwrap();
        assert_eq!(**ind.big(), perm_lattice(&one).unwrap());
        let whole = Subgroup::whole(&s2);
        let zz = Arc::new(trivial_lattice(whole.group(), 1));
        assert_eq!(Induction::induced(&whole, &zz, "Z").unwrap().big().rank(), 1);
    }

    #[test]
    fn retraction_properties() {
        let w = weyl_group(3).unwrap();
        let z = Arc::new(trivial_lattice(w.h.group(), 1));
        let ind = Induction::induced(&w.h, &z, "Z[W/H]").unwrap();
        let g = &w.w;
        assert_eq!(ind.retract(0), 0);
        for x in 0..g.order() {
            let r = ind.retract(x);
            assert!(w.h.contains(r));
            for &h in w.h.embedding() {
                assert_eq!(ind.retract(g.mul(h, x)), g.mul(h, r));
            }
        }
    }

    #[test]
    fn hom_perm_validates() {
        let s3 = symmetric_group(3).unwrap();
        let s2 = Subgroup::new(&s3, vec![Perm::transposition(3, 0, 1)], "S2").unwrap();
        let m = Arc::new(perm_lattice(&s2).unwrap());
        let ind = Induction::hom_perm(&s2, &m).unwrap();
        assert_eq!(ind.big().rank(), 9);
        let x = Arc::new(trivial_lattice(&s3, 2));
        let hf = Induction::hom_from(&x, &ind).unwrap();
        assert_eq!(hf.small().rank(), 6);
    }
}
