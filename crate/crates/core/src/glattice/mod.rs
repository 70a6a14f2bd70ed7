//! Lattices with an action of a finite permutation group.
//!
//! A [`GLattice`] stores one sparse integer matrix per group element (the
//! groups here have at most a few hundred elements), computed from the
//! generator matrices along breadth-first words and then verified.

mod induction;
mod iso;
mod named;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::groups::{cosets, same_group, GroupHom, PermGroup, Subgroup};
use crate::zmat::{hnf, kernel_basis, snf, IntMatrix, Solver, SparseI64};

pub use induction::Induction;
pub use iso::{equivariant_hom_basis, equivariant_section, find_equivariant_iso, IsoOutcome, DEFAULT_ISO_BOUND};
pub use named::{
    construct_j, induced_map, weyl_lattices, same_span, sec5_lattices, ConstructJ, Diagram, LatticeCheck, WeylLattices,
    Sec5Lattices,
};

/// Full pair checks of the homomorphism property up to this group order.
const FULL_CHECK_ORDER: usize = 48;

#[derive(Clone)]
pub struct GLattice {
    name: String,
    group: Arc<PermGroup>,
    rank: usize,
    labels: Vec<String>,
    elems: Vec<SparseI64>,
}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GLattice({}, rank {} over {})", self.name, self.rank, self.group.label())
    }
}

impl PartialEq for GLattice {
    fn eq(&self, other: &GLattice) -> bool {
        self.rank == other.rank
            && same_group(&self.group, &other.group)
            && self
                .group
                .generator_indices()
                .iter()
                .all(|&g| self.elems[g] == other.elems[g])
    }
}

fn default_labels(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("e{i}")).collect()
}

impl GLattice {
    /// Lattice from one matrix per group generator.
    pub fn new(group: &Arc<PermGroup>, gens: &[IntMatrix], labels: Option<Vec<String>>, name: &str) -> Result<GLattice> {
        if gens.len() != group.generators().len() {
            return Err(Error::Invalid(format!(
                "{name}: {} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let rank = gens.first().map_or_else(|| labels.as_ref().map_or(0, |l| l.len()), |m| m.rows());
        let mut sg = Vec::with_capacity(gens.len());
        for m in gens {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Invalid(format!("{name}: action matrices must be {rank}×{rank}")));
            }
            sg.push(SparseI64::from_int_matrix(m)?);
        }
        let n = group.order();
        let mut elems = vec![SparseI64::identity(rank); n];
        for i in 1..n {
            let (p, k) = group.word_step(i).expect("non-identity");
            elems[i] = sg[k].mul(&elems[p])?;
        }
        GLattice::from_elements(group, elems, labels, name)
    }

    /// Lattice from matrices for every element (indexed like the group);
    /// the homomorphism property is verified.
    pub fn from_elements(
        group: &Arc<PermGroup>,
        elems: Vec<SparseI64>,
        labels: Option<Vec<String>>,
        name: &str,
    ) -> Result<GLattice> {
        if elems.len() != group.order() {
            return Err(Error::Invalid(format!("{name}: need one matrix per group element")));
        }
        let rank = elems[0].nrows();
        let labels = labels.unwrap_or_else(|| default_labels(rank));
        if labels.len() != rank {
            return Err(Error::Invalid(format!("{name}: {} labels for rank {rank}", labels.len())));
        }
        let l = GLattice {
            name: name.to_string(),
            group: group.clone(),
            rank,
            labels,
            elems,
        };
        l.verify()?;
        Ok(l)
    }

    /// Checks `ρ(1) = 1` and `ρ(s)ρ(x) = ρ(sx)` for generators `s` and all
    /// elements `x`, which forces `ρ` to be a homomorphism; on small groups
    /// every pair is checked as well.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        if !self.elems[0].is_identity() {
            return Err(Error::NotHomomorphism(format!("{}: identity acts nontrivially", self.name)));
        }
        for m in &self.elems {
            if m.nrows() != self.rank || m.ncols() != self.rank {
                return Err(Error::Invalid(format!("{}: wrong matrix shape", self.name)));
            }
        }
        let firsts: Vec<usize> = if g.order() <= FULL_CHECK_ORDER && self.rank <= 32 {
            (0..g.order()).collect()
        } else {
            g.generator_indices().to_vec()
        };
        for &s in &firsts {
            for x in 0..g.order() {
                if self.elems[s].mul(&self.elems[x])? != self.elems[g.mul(s, x)] {
                    return Err(Error::NotHomomorphism(format!(
                        "{}: action fails at ({}, {})",
                        self.name,
                        g.element(s),
                        g.element(x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> GLattice {
        self.name = name.to_string();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<GLattice> {
        if labels.len() != self.rank {
            return Err(Error::Invalid("label count differs from rank".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Matrix of group element `g` (by index).
    pub fn action(&self, g: usize) -> &SparseI64 {
        &self.elems[g]
    }

    pub fn action_matrix(&self, g: usize) -> IntMatrix {
        self.elems[g].to_int_matrix()
    }

    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.group
            .generator_indices()
            .iter()
            .map(|&g| self.action_matrix(g))
            .collect()
    }

    pub fn act(&self, g: usize, v: &[i64]) -> Result<Vec<i64>> {
        self.elems[g].apply(v)
    }

    /// Whether every element acts by a permutation matrix.
    pub fn is_permutation(&self) -> bool {
        self.elems.iter().all(|m| {
            (0..m.nrows()).all(|i| {
                let r = m.row(i);
                r.len() == 1 && r[0].1 == 1
            })
        })
    }

    /// Same lattice viewed over a subgroup `k` (any group whose elements lie
    /// in this lattice's group).
    pub fn restrict(&self, k: &Arc<PermGroup>) -> Result<GLattice> {
        if same_group(k, &self.group) {
            let mut l = self.clone();
            l.group = k.clone();
            return Ok(l);
        }
        let mut elems = Vec::with_capacity(k.order());
        for p in k.elements() {
            elems.push(self.elems[self.group.try_index(p)?].clone());
        }
        Ok(GLattice {
            name: format!("Res({})", self.name),
            group: k.clone(),
            rank: self.rank,
            labels: self.labels.clone(),
            elems,
        })
    }

    /// Basis (columns) of the fixed sublattice `M^G`.
    pub fn fixed_basis(&self) -> IntMatrix {
        let r = self.rank;
        let mut stacked = IntMatrix::zeros(0, r);
        for &g in self.group.generator_indices() {
            let a = self.action_matrix(g).sub(&IntMatrix::identity(r));
            stacked = stacked.vstack(&a);
        }
        kernel_basis(&stacked)
    }

    pub fn is_fixed(&self, v: &[i64]) -> Result<bool> {
        for &g in self.group.generator_indices() {
            if self.act(g, v)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Label of a vector as a short linear combination of basis labels.
    pub fn describe(&self, v: &[i64]) -> String {
        let mut s = String::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}{}", self.labels[i]));
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

/// `Z^rank` with trivial action.
pub fn trivial_lattice(group: &Arc<PermGroup>, rank: usize) -> GLattice {
    let elems = vec![SparseI64::identity(rank); group.order()];
    GLattice {
        name: if rank == 1 { "Z".into() } else { format!("Z^{rank}") },
        group: group.clone(),
        rank,
        labels: default_labels(rank),
        elems,
    }
}

/// Permutation lattice on a `G`-set: `act(g, x)` is the image of point `x`
/// under element `g` (by index).
pub fn permutation_lattice(
    group: &Arc<PermGroup>,
    points: usize,
    act: impl Fn(usize, usize) -> usize,
    labels: Vec<String>,
    name: &str,
) -> Result<GLattice> {
    let mut elems = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut rows = vec![Vec::new(); points];
        for x in 0..points {
            let y = act(g, x);
            if y >= points {
                return Err(Error::Invalid(format!("{name}: point image out of range")));
            }
            rows[y].push((x as u32, 1i64));
        }
        elems.push(SparseI64::from_rows(points, rows)?);
    }
    GLattice::from_elements(group, elems, Some(labels), name)
}

/// `Z[G/H]` with basis `u_{gH}` over the transversal of [`cosets`].
pub fn perm_lattice(h: &Subgroup) -> Result<GLattice> {
    let g = h.parent().clone();
    let cs = cosets(h);
    let labels = cs
        .reps
        .iter()
        .map(|&r| {
            let p = g.element(r);
            if p.is_identity() {
                format!("u[{}]", h.name())
            } else {
                format!("u[{p}{}]", h.name())
            }
        })
        .collect();
    permutation_lattice(&g, cs.len(), |x, c| cs.act(&g, x, c), labels, &format!("Z[{}/{}]", g.label(), h.name()))
}

/// Rank-one lattice on which `g` acts by `-1` exactly when `chi(g)` is the
/// nontrivial element of `Z/2`.
pub fn sign_lattice(chi: &GroupHom, name: &str) -> Result<GLattice> {
    let g = &chi.source;
    let elems = (0..g.order())
        .map(|x| {
            let s = if chi.image(x) == 0 { 1 } else { -1 };
            SparseI64::from_rows(1, vec![vec![(0, s)]])
        })
        .collect::<Result<Vec<_>>>()?;
    GLattice::from_elements(g, elems, Some(vec!["e".into()]), name)
}

/// Direct sum with concatenated bases.
pub fn direct_sum(parts: &[&GLattice], name: &str) -> Result<GLattice> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Invalid("direct sum of nothing".into()))?;
    let g = first.group.clone();
    for p in parts {
        if !same_group(&p.group, &g) {
            return Err(Error::GroupMismatch("direct sum over different groups".into()));
        }
    }
    let elems = (0..g.order())
        .map(|x| {
            let bl: Vec<&SparseI64> = parts.iter().map(|p| &p.elems[x]).collect();
            SparseI64::block_diag(&bl)
        })
        .collect();
    let labels = parts.iter().flat_map(|p| p.labels.iter().cloned()).collect();
    GLattice::from_elements(&g, elems, Some(labels), name)
}

/// `Hom_Z(M, N)` with `(g·f)(x) = g·f(g⁻¹x)`; the homomorphism with matrix
/// `F` (`rank N × rank M`) has coordinates `F[a][b]` at `a·rank(M) + b`.
pub fn hom_lattice(m: &GLattice, n: &GLattice) -> Result<GLattice> {
    if !same_group(&m.group, &n.group) {
        return Err(Error::GroupMismatch("Hom between lattices over different groups".into()));
    }
    let g = &m.group;
    let elems = (0..g.order())
        .map(|x| n.elems[x].kron(&m.elems[g.inv(x)].transpose()))
        .collect::<Result<Vec<_>>>()?;
    let labels = n
        .labels
        .iter()
        .flat_map(|a| m.labels.iter().map(move |b| format!("{b}->{a}")))
        .collect();
    GLattice::from_elements(g, elems, Some(labels), &format!("Hom({}, {})", m.name, n.name))
}

/// `Hom_Z(M, Z)`.
pub fn dual_lattice(m: &GLattice) -> Result<GLattice> {
    let z = trivial_lattice(&m.group, 1);
    Ok(hom_lattice(m, &z)?.with_name(&format!("{}*", m.name)))
}

/// An equivariant map, stored as a `target.rank × source.rank` matrix.
#[derive(Clone)]
pub struct GMap {
    source: Arc<GLattice>,
    target: Arc<GLattice>,
    matrix: IntMatrix,
    sparse: SparseI64,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap({} -> {})", self.source.name, self.target.name)
    }
}

impl GMap {
    pub fn new(source: &Arc<GLattice>, target: &Arc<GLattice>, matrix: IntMatrix) -> Result<GMap> {
        if !same_group(&source.group, &target.group) {
            return Err(Error::GroupMismatch(format!(
                "map {} -> {} between different groups",
                source.name, target.name
            )));
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::Invalid(format!(
                "map {} -> {} needs a {}×{} matrix, got {}×{}",
                source.name,
                target.name,
                target.rank,
                source.rank,
                matrix.rows(),
                matrix.cols()
            )));
        }
        let sparse = SparseI64::from_int_matrix(&matrix)?;
        let g = &source.group;
        for &s in g.generator_indices() {
            let lhs = target.elems[s].mul(&sparse)?;
            let rhs = sparse.mul(&source.elems[s])?;
            if lhs != rhs {
                return Err(Error::NotEquivariant(format!(
                    "{} -> {} at generator {}",
                    source.name,
                    target.name,
                    g.element(s)
                )));
            }
        }
        Ok(GMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
            sparse,
        })
    }

    pub fn identity(l: &Arc<GLattice>) -> GMap {
        GMap::new(l, l, IntMatrix::identity(l.rank)).expect("identity is equivariant")
    }

    pub fn source(&self) -> &Arc<GLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GLattice> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn sparse(&self) -> &SparseI64 {
        &self.sparse
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.sparse.apply(v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GMap) -> Result<GMap> {
        if *first.target != *self.source {
            return Err(Error::Invalid(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name, self.target.name, first.source.name, first.target.name
            )));
        }
        GMap::new(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn rank(&self) -> usize {
        crate::zmat::rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.rank
    }

    /// Surjective onto the target lattice (not just of full rank).
    pub fn is_surjective(&self) -> bool {
        let s = snf(&self.matrix);
        s.diag.len() == self.target.rank && s.diag.iter().all(|d| d.is_one())
    }

    /// Torsion of `target / image`, empty when the image is saturated.
    pub fn image_torsion(&self) -> Vec<BigInt> {
        snf(&self.matrix).diag.into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The same map viewed over a subgroup.
    pub fn restrict(&self, k: &Arc<PermGroup>) -> Result<GMap> {
        let s = Arc::new(self.source.restrict(k)?);
        let t = Arc::new(self.target.restrict(k)?);
        GMap::new(&s, &t, self.matrix.clone())
    }
}

/// Saturated kernel of a map, with its inclusion.
pub fn kernel_lattice(f: &GMap, name: &str) -> Result<(Arc<GLattice>, GMap)> {
    let k = kernel_basis(&f.matrix);
    sublattice_from_basis(&f.source, k, name)
}

/// Sublattice spanned by the columns of `basis`; must be saturated, of full
/// column rank and stable under the group.
pub fn sublattice_from_basis(target: &Arc<GLattice>, basis: IntMatrix, name: &str) -> Result<(Arc<GLattice>, GMap)> {
    if basis.rows() != target.rank {
        return Err(Error::Invalid(format!("{name}: basis vectors have the wrong length")));
    }
    let s = snf(&basis);
    if s.diag.len() != basis.cols() {
        return Err(Error::Invalid(format!("{name}: basis vectors are dependent")));
    }
    let torsion: Vec<BigInt> = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    if !torsion.is_empty() {
        return Err(Error::NotSaturated(torsion.iter().map(|d| d.to_string()).collect()));
    }
    let solver = Solver::new(&basis);
    let g = &target.group;
    let k = basis.cols();
    let mut gens = Vec::new();
    for &x in g.generator_indices() {
        let img = target.action_matrix(x).mul(&basis);
        let mut cols = Vec::with_capacity(k);
        for c in img.columns() {
            cols.push(solver.solve(&c).ok_or_else(|| {
                Error::Invalid(format!("{name}: span is not stable under {}", g.element(x)))
            })?);
        }
        gens.push(IntMatrix::from_columns(&cols, k));
    }
    let labels: Vec<String> = basis
        .columns()
        .iter()
        .map(|c| {
            let v: Vec<i64> = c.iter().map(|x| x.to_i64().unwrap_or(0)).collect();
            target.describe(&v)
        })
        .collect();
    let sub = Arc::new(GLattice::new(g, &gens, Some(labels), name)?);
    let incl = GMap::new(&sub, target, basis)?;
    Ok((sub, incl))
}

/// Coordinate sublattice on the listed basis indices (must be stable).
pub fn coordinate_sublattice(target: &Arc<GLattice>, idx: &[usize], name: &str) -> Result<(Arc<GLattice>, GMap)> {
    let basis = IntMatrix::from_triplets(
        target.rank,
        idx.len(),
        idx.iter().enumerate().map(|(j, &i)| (i, j, BigInt::one())).collect(),
    );
    sublattice_from_basis(target, basis, name)
}

/// Quotient by a saturated image. Fails with the torsion invariants when the
/// image is not saturated.
pub fn quotient_lattice(f: &GMap, name: &str) -> Result<(Arc<GLattice>, GMap)> {
    if !f.is_injective() {
        return Err(Error::Invalid(format!("{name}: quotient needs an injective map")));
    }
    let torsion = f.image_torsion();
    if !torsion.is_empty() {
        return Err(Error::NotSaturated(torsion.iter().map(|d| d.to_string()).collect()));
    }
    let t = &f.target;
    let r = f.source.rank;
    let n = t.rank;
    // rows of U past the rank of the Hermite form of F^T... use the column
    // Hermite form instead: U·F = [I; 0] up to the top block.
    let h = hnf(&f.matrix);
    let u = h.u; // u · F = H with H's nonzero rows first
    let q_rows: Vec<usize> = (r..n).collect();
    let q = u.select_rows(&q_rows);
    let uinv = crate::zmat::inverse_unimodular(&u)?;
    let s = uinv.select_cols(&q_rows);
    let g = &t.group;
    let gens: Vec<IntMatrix> = g
        .generator_indices()
        .iter()
        .map(|&x| q.mul(&t.action_matrix(x)).mul(&s))
        .collect();
    let ql = Arc::new(GLattice::new(g, &gens, None, name)?);
    let proj = GMap::new(t, &ql, q)?;
    Ok((ql, proj))
}

/// `Z[G/H] ⊃ I` spanned by `u_{gH} − u_H`, with the inclusion and the
/// augmentation `Z[G/H] → Z`.
pub fn augmentation_sublattice(h: &Subgroup) -> Result<(Arc<GLattice>, GMap, GMap)> {
    let p = Arc::new(perm_lattice(h)?);
    let n = p.rank;
    let g = h.parent();
    let aug_target = Arc::new(trivial_lattice(g, 1));
    let aug = GMap::new(&p, &aug_target, IntMatrix::from_fn(1, n, |_, _| 1))?;
    let basis = IntMatrix::from_fn(n, n.saturating_sub(1), |i, j| {
        if i == j + 1 {
            1
        } else if i == 0 {
            -1
        } else {
            0
        }
    });
    let (i, incl) = sublattice_from_basis(&p, basis, &format!("I[{}/{}]", g.label(), h.name()))?;
    Ok((i, incl, aug))
}

/// `0 → A → B → C → 0`, validated on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    left: GMap,
    right: GMap,
    section: IntMatrix,
    retraction: IntMatrix,
}

impl ShortExactSeq {
    pub fn new(left: GMap, right: GMap) -> Result<ShortExactSeq> {
        if *left.target != *right.source {
            return Err(Error::Invalid("sequence maps do not compose".into()));
        }
        if !right.compose(&left)?.is_zero() {
            return Err(Error::Invalid("composite of the sequence maps is not zero".into()));
        }
        if !left.is_injective() {
            return Err(Error::Invalid("left map is not injective".into()));
        }
        let torsion = left.image_torsion();
        if !torsion.is_empty() {
            return Err(Error::NotSaturated(torsion.iter().map(|d| d.to_string()).collect()));
        }
        if !right.is_surjective() {
            return Err(Error::Invalid("right map is not surjective".into()));
        }
        let (a, b, c) = (left.source.rank, left.target.rank, right.target.rank);
        if a + c != b {
            return Err(Error::Invalid(format!("not exact in the middle: ranks {a} + {c} != {b}")));
        }
        let section = crate::zmat::solve_matrix(right.matrix(), &IntMatrix::identity(c))
            .ok_or_else(|| Error::Internal("surjection without integral section".into()))?;
        let p = left.matrix().hstack(&section);
        let pinv = crate::zmat::inverse_unimodular(&p)?;
        let retraction = pinv.select_rows(&(0..a).collect::<Vec<_>>());
        Ok(ShortExactSeq {
            left,
            right,
            section,
            retraction,
        })
    }

    /// Builds `0 → ker f → source → target → 0` for a surjection `f`.
    pub fn from_surjection(f: GMap, kernel_name: &str) -> Result<(Arc<GLattice>, ShortExactSeq)> {
        let (k, incl) = kernel_lattice(&f, kernel_name)?;
        Ok((k, ShortExactSeq::new(incl, f)?))
    }

    pub fn left(&self) -> &GMap {
        &self.left
    }

    pub fn right(&self) -> &GMap {
        &self.right
    }

    pub fn sub(&self) -> &Arc<GLattice> {
        &self.left.source
    }

    pub fn middle(&self) -> &Arc<GLattice> {
        &self.left.target
    }

    pub fn quotient(&self) -> &Arc<GLattice> {
        &self.right.target
    }

    /// A Z-linear section `C → B` of the right map.
    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    /// A Z-linear left inverse `B → A` of the left map, vanishing on the
    /// image of the section.
    pub fn retraction(&self) -> &IntMatrix {
        &self.retraction
    }

    /// The sequence over a subgroup.
    pub fn restrict(&self, k: &Arc<PermGroup>) -> Result<ShortExactSeq> {
        let b = Arc::new(self.middle().restrict(k)?);
        let a = Arc::new(self.sub().restrict(k)?);
        let c = Arc::new(self.quotient().restrict(k)?);
        let l = GMap::new(&a, &b, self.left.matrix.clone())?;
        let r = GMap::new(&b, &c, self.right.matrix.clone())?;
        ShortExactSeq::new(l, r)
    }
}

/// `Hom(Y, M) → Hom(X, M)`, `φ ↦ φ∘f` for `f: X → Y`.
pub fn hom_precompose(f: &GMap, m: &Arc<GLattice>) -> Result<GMap> {
    let src = Arc::new(hom_lattice(f.target(), m)?);
    let tgt = Arc::new(hom_lattice(f.source(), m)?);
    let mat = SparseI64::identity(m.rank).kron(&f.sparse.transpose())?;
    GMap::new(&src, &tgt, mat.to_int_matrix())
}

/// `Hom(M, X) → Hom(M, Y)`, `φ ↦ f∘φ` for `f: X → Y`.
pub fn hom_postcompose(m: &Arc<GLattice>, f: &GMap) -> Result<GMap> {
    let src = Arc::new(hom_lattice(m, f.source())?);
    let tgt = Arc::new(hom_lattice(m, f.target())?);
    let mat = f.sparse.kron(&SparseI64::identity(m.rank))?;
    GMap::new(&src, &tgt, mat.to_int_matrix())
}

/// `0 → Hom(C, M) → Hom(B, M) → Hom(A, M) → 0` from `0 → A → B → C → 0`.
pub fn hom_sequence_into(ses: &ShortExactSeq, m: &Arc<GLattice>) -> Result<ShortExactSeq> {
    let l = hom_precompose(ses.right(), m)?;
    let r0 = hom_precompose(ses.left(), m)?;
    let r = GMap::new(l.target(), r0.target(), r0.matrix().clone())?;
    ShortExactSeq::new(l, r)
}

/// Vector of `i64` from big integers (panics on overflow, which callers
/// rule out by construction).
pub(crate) fn small_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{symmetric_group, weyl_group};

    #[test]
    fn trivial_and_perm() {
        let s2 = symmetric_group(2).unwrap();
        assert_eq!(trivial_lattice(&s2, 1).rank(), 1);
        let w = weyl_group(2).unwrap();
        assert_eq!(trivial_lattice(&w.w, 0).rank(), 0);
        let one = Subgroup::trivial(&s2, "1");
        let p = perm_lattice(&one).unwrap();
        assert_eq!(p.rank(), 2);
        assert!(p.is_permutation());
        let whole = Subgroup::whole(&s2);
        assert_eq!(perm_lattice(&whole).unwrap().rank(), 1);
        let h2 = w.h2().unwrap();
        assert_eq!(perm_lattice(h2).unwrap().rank(), 8);
    }

    #[test]
    fn augmentation_ranks() {
        let s3 = symmetric_group(3).unwrap();
        let s2 = Subgroup::new(&s3, vec![crate::groups::Perm::transposition(3, 0, 1)], "S2").unwrap();
        let (i, _, _) = augmentation_sublattice(&s2).unwrap();
        assert_eq!(i.rank(), 2);
        let s2g = symmetric_group(2).unwrap();
        let (i1, _, _) = augmentation_sublattice(&Subgroup::trivial(&s2g, "1")).unwrap();
        assert_eq!(i1.rank(), 1);
        assert_eq!(i1.action_matrix(1), IntMatrix::from_rows_i64(&[vec![-1]]));
        let (i0, _, _) = augmentation_sublattice(&Subgroup::whole(&s3)).unwrap();
        assert_eq!(i0.rank(), 0);
    }

    #[test]
    fn hom_examples() {
        let s3 = symmetric_group(3).unwrap();
        let s2 = Subgroup::new(&s3, vec![crate::groups::Perm::transposition(3, 0, 1)], "S2").unwrap();
        let (i, _, _) = augmentation_sublattice(&s2).unwrap();
        let z = trivial_lattice(&s3, 1);
        let h = hom_lattice(&i, &z).unwrap();
        assert_eq!(h.rank(), 2);
        // dual action = inverse transpose
        for x in 0..s3.order() {
            let a = i.action_matrix(x);
            let d = h.action_matrix(x);
            assert!(d.transpose().mul(&a).is_identity());
        }
        let hz = hom_lattice(&z, &i).unwrap();
        for x in 0..s3.order() {
            assert_eq!(hz.action_matrix(x), i.action_matrix(x));
        }
    }

    #[test]
    fn kernel_and_quotient() {
        let s2 = symmetric_group(2).unwrap();
        let (i, incl, aug) = augmentation_sublattice(&Subgroup::trivial(&s2, "1")).unwrap();
        let (k, _) = kernel_lattice(&aug, "K").unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(*k, *i);
        let ses = ShortExactSeq::new(incl.clone(), aug).unwrap();
        assert_eq!(ses.section().rows(), 2);
        let (q, proj) = quotient_lattice(&incl, "Q").unwrap();
        assert_eq!(q.rank(), 1);
        assert!(proj.compose(&incl).unwrap().is_zero());
        // non-saturated image is rejected with its torsion
        let z = Arc::new(trivial_lattice(&s2, 1));
        let twice = GMap::new(&z, &z, IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        match quotient_lattice(&twice, "bad") {
            Err(Error::NotSaturated(t)) => assert_eq!(t, vec!["2".to_string()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_action_is_rejected() {
        let s3 = symmetric_group(3).unwrap();
        let a = IntMatrix::from_rows_i64(&[vec![-1]]);
        let b = IntMatrix::from_rows_i64(&[vec![-1]]);
        // the 3-cycle cannot act by -1
        assert!(GLattice::new(&s3, &[a, b], None, "bad").is_err());
    }
}
