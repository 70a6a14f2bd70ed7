//! Small sparse integer matrices with checked `i64` arithmetic.
//!
//! Group actions on lattices are stored this way: they are applied millions of
//! times while building cochains, and their entries stay tiny.

use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseI64 {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseI64 {
    pub fn zeros(nrows: usize, ncols: usize) -> SparseI64 {
        SparseI64 {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> SparseI64 {
        SparseI64 {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    /// Builds from rows of `(column, value)`; zero entries are dropped and
    /// duplicate columns summed.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(u32, i64)>>) -> Result<SparseI64> {
        let mut out = Vec::with_capacity(rows.len());
        for mut r in rows {
            r.sort_unstable_by_key(|x| x.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(r.len());
            for (c, v) in r {
                if c as usize >= ncols {
                    return Err(Error::Invalid(format!("column {c} out of range {ncols}")));
                }
                match merged.last_mut() {
                    Some(last) if last.0 == c => {
                        last.1 = last.1.checked_add(v).ok_or(Error::Overflow("sparse build"))?
                    }
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|x| x.1 != 0);
            out.push(merged);
        }
        Ok(SparseI64 {
            nrows: out.len(),
            ncols,
            rows: out,
        })
    }

    pub fn from_dense(nrows: usize, ncols: usize, data: &[i64]) -> SparseI64 {
        let rows = (0..nrows)
            .map(|i| {
                (0..ncols)
                    .filter(|&j| data[i * ncols + j] != 0)
                    .map(|j| (j as u32, data[i * ncols + j]))
                    .collect()
            })
            .collect();
        SparseI64 { nrows, ncols, rows }
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Result<SparseI64> {
        let mut rows = vec![Vec::new(); m.rows()];
        for (i, j, v) in m.triplets() {
            let v = v.to_i64().ok_or(Error::Overflow("matrix entry exceeds i64"))?;
            rows[i].push((j as u32, v));
        }
        for r in rows.iter_mut() {
            r.sort_unstable_by_key(|x| x.0);
        }
        Ok(SparseI64 {
            nrows: m.rows(),
            ncols: m.cols(),
            rows,
        })
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let t = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j as usize, num_bigint::BigInt::from(v))))
            .collect();
        IntMatrix::from_triplets(self.nrows, self.ncols, t)
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut d = vec![0i64; self.nrows * self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                d[i * self.ncols + j as usize] = v;
            }
        }
        d
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i]
            .binary_search_by_key(&(j as u32), |x| x.0)
            .map(|k| self.rows[i][k].1)
            .unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0] == (i as u32, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// `self · v`.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.nrows];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    /// Writes `self · v` into `out` (overwriting it).
    pub fn apply_into(&self, v: &[i64], out: &mut [i64]) -> Result<()> {
        debug_assert_eq!(v.len(), self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: i64 = 0;
            for &(j, a) in r {
                let x = v[j as usize];
                if x != 0 {
                    acc = a
                        .checked_mul(x)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("sparse apply"))?;
                }
            }
            out[i] = acc;
        }
        Ok(())
    }

    /// Adds `c · self · v` to `out`.
    pub fn apply_add(&self, c: i64, v: &[i64], out: &mut [i64]) -> Result<()> {
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: i64 = 0;
            for &(j, a) in r {
                let x = v[j as usize];
                if x != 0 {
                    acc = a
                        .checked_mul(x)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("sparse apply"))?;
                }
            }
            if acc != 0 {
                out[i] = c
                    .checked_mul(acc)
                    .and_then(|p| out[i].checked_add(p))
                    .ok_or(Error::Overflow("sparse apply"))?;
            }
        }
        Ok(())
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseI64) -> Result<SparseI64> {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut acc = vec![0i64; other.ncols];
        let mut touched: Vec<u32> = Vec::new();
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            for &(k, a) in r {
                for &(j, b) in &other.rows[k as usize] {
                    let slot = &mut acc[j as usize];
                    if *slot == 0 {
                        touched.push(j);
                    }
                    *slot = a
                        .checked_mul(b)
                        .and_then(|p| slot.checked_add(p))
                        .ok_or(Error::Overflow("sparse product"))?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out_row = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = std::mem::take(&mut acc[j as usize]);
                if v != 0 {
                    out_row.push((j, v));
                }
            }
            touched.clear();
            rows.push(out_row);
        }
        Ok(SparseI64 {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    pub fn transpose(&self) -> SparseI64 {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                rows[j as usize].push((i as u32, v));
            }
        }
        SparseI64 {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SparseI64) -> Result<SparseI64> {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for &(ja, a) in ra {
                    for &(jb, b) in rb {
                        let v = a.checked_mul(b).ok_or(Error::Overflow("kron"))?;
                        row.push((ja * other.ncols as u32 + jb, v));
                    }
                }
                rows.push(row);
            }
        }
        Ok(SparseI64 {
            nrows: self.nrows * other.nrows,
            ncols: self.ncols * other.ncols,
            rows,
        })
    }

    pub fn sub(&self, other: &SparseI64) -> Result<SparseI64> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r: Vec<(u32, i64)> = a.clone();
                r.extend(b.iter().map(|&(j, v)| (j, -v)));
                r
            })
            .collect();
        SparseI64::from_rows(self.ncols, rows)
    }

    pub fn add(&self, other: &SparseI64) -> Result<SparseI64> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r: Vec<(u32, i64)> = a.clone();
                r.extend_from_slice(b);
                r
            })
            .collect();
        SparseI64::from_rows(self.ncols, rows)
    }

    pub fn neg(&self) -> SparseI64 {
        SparseI64 {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.iter().map(|&(j, v)| (j, -v)).collect()).collect(),
        }
    }

    pub fn block_diag(blocks: &[&SparseI64]) -> SparseI64 {
        let ncols: usize = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::new();
        let mut off = 0u32;
        for b in blocks {
            for r in &b.rows {
                rows.push(r.iter().map(|&(j, v)| (j + off, v)).collect());
            }
            off += b.ncols as u32;
        }
        SparseI64 {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|x| x.1.abs()))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = IntMatrix::from_rows_i64(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = IntMatrix::from_rows_i64(&[vec![1, 0], vec![2, 1], vec![0, 5]]);
        let sa = SparseI64::from_int_matrix(&a).unwrap();
        let sb = SparseI64::from_int_matrix(&b).unwrap();
        assert_eq!(sa.mul(&sb).unwrap().to_int_matrix(), a.mul(&b));
        assert_eq!(sa.kron(&sb).unwrap().to_int_matrix(), a.kron(&b));
        assert_eq!(sa.transpose().to_int_matrix(), a.transpose());
        assert_eq!(sa.apply(&[1, 1, 1]).unwrap(), vec![3, 2]);
    }

    #[test]
    fn cancellation_is_dropped() {
        let a = SparseI64::from_rows(2, vec![vec![(0, 1), (1, 1)]]).unwrap();
        let b = SparseI64::from_rows(1, vec![vec![(0, 1)], vec![(0, -1)]]).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseI64::from_rows(1, vec![vec![(0, i64::MAX)]]).unwrap();
        assert!(a.mul(&a).is_err());
    }
}
