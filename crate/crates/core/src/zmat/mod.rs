//! Exact integer matrices and normal forms.

mod abelian;
pub mod local;
mod normal_forms;
mod sparse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use abelian::{hom_image, hom_kernel, subgroup_lattice, subgroup_order, AbelianInvariants};
pub use sparse::SparseI64;
pub use normal_forms::{
    cokernel_invariants, det, hnf, inverse_unimodular, is_unimodular, kernel_basis, rank, snf,
    solve, solve_matrix, Hnf, Snf, Solver,
};

/// Matrices above this many cells are stored sparsely.
pub const SPARSE_CELLS: usize = 1_000_000;
/// Matrices below this density are stored sparsely.
pub const SPARSE_DENSITY: f64 = 0.05;

#[derive(Clone)]
enum Store {
    Dense(Vec<BigInt>),
    /// sorted by (row, col), no zeros
    Sparse(Vec<(usize, usize, BigInt)>),
}

/// Integer matrix with dense or sparse storage chosen by size and density.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    store: Store,
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.triplets() == other.triplets()
    }
}

impl Eq for IntMatrix {}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, Vec::new())
    }

    pub fn identity(n: usize) -> IntMatrix {
        IntMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, BigInt::one())).collect())
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntMatrix::from_dense(
            r,
            c,
            rows.iter()
                .flat_map(|row| {
                    assert_eq!(row.len(), c, "ragged rows");
                    row.iter().map(|&v| BigInt::from(v))
                })
                .collect(),
        )
    }

    /// Builds from explicit rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        IntMatrix::from_dense(r, cols, data)
    }

    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> IntMatrix {
        let mut t = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    t.push((i, j, v.clone()));
                }
            }
        }
        IntMatrix::from_triplets(rows, columns.len(), t)
    }

    pub fn from_dense(rows: usize, cols: usize, data: Vec<BigInt>) -> IntMatrix {
        assert_eq!(data.len(), rows * cols, "dimension mismatch");
        let m = IntMatrix {
            rows,
            cols,
            store: Store::Dense(data),
        };
        m.normalized()
    }

    /// Builds from triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, BigInt)>) -> IntMatrix {
        let mut map: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet out of range");
            *map.entry((i, j)).or_insert_with(BigInt::zero) += v;
        }
        let t: Vec<(usize, usize, BigInt)> = map
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| (i, j, v))
            .collect();
        IntMatrix {
            rows,
            cols,
            store: Store::Sparse(t),
        }
        .normalized()
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(BigInt::from(f(i, j)));
            }
        }
        IntMatrix::from_dense(rows, cols, data)
    }

    fn nnz_count(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Store::Sparse(t) => t.len(),
        }
    }

    /// Re-chooses the storage according to the size and density thresholds.
    fn normalized(self) -> IntMatrix {
        let cells = self.rows * self.cols;
        let nnz = self.nnz_count();
        let want_sparse = cells > SPARSE_CELLS
            || (cells >= 64 && (nnz as f64) < SPARSE_DENSITY * cells as f64);
        match (&self.store, want_sparse) {
            (Store::Dense(_), true) => IntMatrix {
                rows: self.rows,
                cols: self.cols,
                store: Store::Sparse(self.triplets()),
            },
            (Store::Sparse(t), false) => {
                let mut data = vec![BigInt::zero(); cells];
                for (i, j, v) in t {
                    data[i * self.cols + j] = v.clone();
                }
                IntMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    store: Store::Dense(data),
                }
            }
            _ => self,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.store {
            Store::Dense(d) => d[i * self.cols + j].clone(),
            Store::Sparse(t) => t
                .binary_search_by(|(a, b, _)| (*a, *b).cmp(&(i, j)))
                .map(|k| t[k].2.clone())
                .unwrap_or_else(|_| BigInt::zero()),
        }
    }

    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("entry fits in i64")
    }

    /// Nonzero entries sorted by (row, col).
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        match &self.store {
            Store::Dense(d) => {
                let mut out = Vec::new();
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let v = &d[i * self.cols + j];
                        if !v.is_zero() {
                            out.push((i, j, v.clone()));
                        }
                    }
                }
                out
            }
            Store::Sparse(t) => t.clone(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.nnz_count()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        match &self.store {
            Store::Dense(d) => {
                for (i, row) in out.iter_mut().enumerate() {
                    row.clone_from_slice(&d[i * self.cols..(i + 1) * self.cols]);
                }
            }
            Store::Sparse(t) => {
                for (i, j, v) in t {
                    out[*i][*j] = v.clone();
                }
            }
        }
        out
    }

    /// Rows as sparse lists of (column, value) with values fitting in i64.
    pub fn to_sparse_rows_i64(&self) -> Result<Vec<Vec<(usize, i64)>>> {
        let mut out = vec![Vec::new(); self.rows];
        for (i, j, v) in self.triplets() {
            out[i].push((j, v.to_i64().ok_or(Error::Overflow("matrix entry to i64"))?));
        }
        Ok(out)
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (i, j, v) in self.triplets() {
            out[j][i] = v;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.nnz_count() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.cols,
            self.rows,
            self.triplets().into_iter().map(|(i, j, v)| (j, i, v)).collect(),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut brows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in other.triplets() {
            brows[i].push((j, v));
        }
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for (i, k, a) in self.triplets() {
            for (j, b) in &brows[k] {
                *acc[i].entry(*j).or_insert_with(BigInt::zero) += &a * b;
            }
        }
        let mut t = Vec::new();
        for (i, row) in acc.into_iter().enumerate() {
            for (j, v) in row {
                if !v.is_zero() {
                    t.push((i, j, v));
                }
            }
        }
        IntMatrix::from_triplets(self.rows, other.cols, t)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, j, a) in self.triplets() {
            out[i] += a * &v[j];
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let mut t = self.triplets();
        t.extend(other.triplets());
        IntMatrix::from_triplets(self.rows, self.cols, t)
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.triplets().into_iter().map(|(i, j, v)| (i, j, v * c)).collect(),
        )
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut t = self.triplets();
        t.extend(other.triplets().into_iter().map(|(i, j, v)| (i, j + self.cols, v)));
        IntMatrix::from_triplets(self.rows, self.cols + other.cols, t)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut t = self.triplets();
        t.extend(other.triplets().into_iter().map(|(i, j, v)| (i + self.rows, j, v)));
        IntMatrix::from_triplets(self.rows + other.rows, self.cols, t)
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let (mut r, mut c) = (0, 0);
        let mut t = Vec::new();
        for b in blocks {
            t.extend(b.triplets().into_iter().map(|(i, j, v)| (i + r, j + c, v)));
            r += b.rows;
            c += b.cols;
        }
        IntMatrix::from_triplets(r, c, t)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let bt = other.triplets();
        let mut t = Vec::new();
        for (i, j, a) in self.triplets() {
            for (k, l, b) in &bt {
                t.push((i * other.rows + k, j * other.cols + l, &a * b));
            }
        }
        IntMatrix::from_triplets(self.rows * other.rows, self.cols * other.cols, t)
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let pos: BTreeMap<usize, Vec<usize>> = idx.iter().enumerate().fold(BTreeMap::new(), |mut m, (k, &i)| {
            m.entry(i).or_insert_with(Vec::new).push(k);
            m
        });
        let mut t = Vec::new();
        for (i, j, v) in self.triplets() {
            if let Some(ks) = pos.get(&i) {
                for &k in ks {
                    t.push((k, j, v.clone()));
                }
            }
        }
        IntMatrix::from_triplets(idx.len(), self.cols, t)
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn max_abs(&self) -> BigInt {
        self.triplets()
            .into_iter()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Line-based text form: `rows cols` header, then `i j value` triplets.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            s.push_str(&format!("{i} {j} {v}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let mut t = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad triplet {l:?}")));
            }
            let i: usize = parts[0].parse().map_err(|_| Error::Parse(l.to_string()))?;
            let j: usize = parts[1].parse().map_err(|_| Error::Parse(l.to_string()))?;
            let v: BigInt = parts[2].parse().map_err(|_| Error::Parse(l.to_string()))?;
            if i >= dims[0] || j >= dims[1] {
                return Err(Error::Parse(format!("triplet out of range {l:?}")));
            }
            t.push((i, j, v));
        }
        Ok(IntMatrix::from_triplets(dims[0], dims[1], t))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            let rows: Vec<String> = self
                .to_rows()
                .iter()
                .map(|r| {
                    let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", v.join(", "))
                })
                .collect();
            write!(f, "[{}]", rows.join(", "))
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

/// Human-readable rows.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_rows();
        let width = rows
            .iter()
            .flat_map(|r| r.iter().map(|x| x.to_string().len()))
            .max()
            .unwrap_or(1);
        for r in rows {
            let v: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", v.join(" "))?;
        }
        Ok(())
    }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("vector entry to i64")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_is_transparent() {
        let d = IntMatrix::from_rows_i64(&[vec![1, 0], vec![0, 2]]);
        let s = IntMatrix::from_triplets(2, 2, vec![(1, 1, big(2)), (0, 0, big(1))]);
        assert_eq!(d, s);
        let big_sparse = IntMatrix::identity(100);
        assert!(big_sparse.is_sparse());
        assert_eq!(big_sparse.mul(&big_sparse), big_sparse);
    }

    #[test]
    fn text_roundtrip() {
        let m = IntMatrix::from_rows_i64(&[vec![1, -2, 0], vec![0, 0, 7]]);
        let t = m.to_text();
        assert!(t.starts_with("2 3\n"));
        assert_eq!(IntMatrix::from_text(&t).unwrap(), m);
    }

    #[test]
    fn kron_and_blocks() {
        let a = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
        let i = IntMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get_i64(0, 2), 1);
        let b = IntMatrix::block_diag(&[&a, &i]);
        assert_eq!(b.get_i64(3, 3), 1);
        assert_eq!(b.get_i64(0, 1), 1);
    }
}
