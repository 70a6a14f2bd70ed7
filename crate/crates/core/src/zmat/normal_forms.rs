use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AbelianInvariants, IntMatrix};
use crate::error::{Error, Result};

type Rows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

/// Replaces rows `(r, s)` by `(x r + y s, z r + w s)`.
fn combine_rows(m: &mut Rows, r: usize, s: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
    let n = m[r].len();
    for k in 0..n {
        let a = &m[r][k];
        let b = &m[s][k];
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let na = x * a + y * b;
        let nb = z * a + w * b;
        m[r][k] = na;
        m[s][k] = nb;
    }
}

/// Column version of [`combine_rows`].
fn combine_cols(m: &mut Rows, r: usize, s: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
    for row in m.iter_mut() {
        let a = &row[r];
        let b = &row[s];
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let na = x * a + y * b;
        let nb = z * a + w * b;
        row[r] = na;
        row[s] = nb;
    }
}

fn sub_row_multiple(m: &mut Rows, target: usize, src: usize, q: &BigInt) {
    let n = m[target].len();
    for k in 0..n {
        if !m[src][k].is_zero() {
            let d = q * &m[src][k];
            m[target][k] -= d;
        }
    }
}

fn negate_row(m: &mut Rows, r: usize) {
    for v in m[r].iter_mut() {
        *v = -std::mem::take(v);
    }
}

/// Row Hermite normal form `U·A = H`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn hnf_rows(mut h: Rows, cols: usize, track: bool) -> (Rows, Rows, Vec<usize>) {
    let m = h.len();
    let mut u = if track { identity_rows(m) } else { Vec::new() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[i][j].is_zero() {
                continue;
            }
            if h[r][j].is_zero() {
                h.swap(r, i);
                if track {
                    u.swap(r, i);
                }
                continue;
            }
            let a = h[r][j].clone();
            let b = h[i][j].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                sub_row_multiple(&mut h, i, r, &q);
                if track {
                    sub_row_multiple(&mut u, i, r, &q);
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            let nb = -bg;
            combine_rows(&mut h, r, i, &x, &y, &nb, &ag);
            if track {
                combine_rows(&mut u, r, i, &x, &y, &nb, &ag);
            }
        }
        if h[r][j].is_zero() {
            continue;
        }
        if h[r][j].is_negative() {
            negate_row(&mut h, r);
            if track {
                negate_row(&mut u, r);
            }
        }
        for i in 0..r {
            if h[i][j].is_zero() {
                continue;
            }
            let q = h[i][j].div_floor(&h[r][j]);
            if !q.is_zero() {
                sub_row_multiple(&mut h, i, r, &q);
                if track {
                    sub_row_multiple(&mut u, i, r, &q);
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    (h, u, pivots)
}

pub fn hnf(a: &IntMatrix) -> Hnf {
    let (h, u, pivots) = hnf_rows(a.to_rows(), a.cols(), true);
    let m = a.rows();
    Hnf {
        h: IntMatrix::from_rows(h, a.cols()),
        u: IntMatrix::from_rows(u, m),
        rank: pivots.len(),
        pivots,
    }
}

/// Smith normal form `U·A·V = S`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// positive diagonal entries, each dividing the next
    pub diag: Vec<BigInt>,
}

fn snf_rows(mut a: Rows, rows: usize, cols: usize, track: bool) -> (Rows, Rows, Rows, Vec<BigInt>) {
    let mut u = if track { identity_rows(rows) } else { Vec::new() };
    let mut v = if track { identity_rows(cols) } else { Vec::new() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if a[i][j].abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a[bi][bj].abs().is_one()) {
                break;
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if track {
            u.swap(t, bi);
        }
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            if track {
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        loop {
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let p = a[t][t].clone();
                let b = a[i][t].clone();
                if b.is_multiple_of(&p) {
                    let q = &b / &p;
                    sub_row_multiple(&mut a, i, t, &q);
                    if track {
                        sub_row_multiple(&mut u, i, t, &q);
                    }
                } else {
                    let eg = p.extended_gcd(&b);
                    let pg = &p / &eg.gcd;
                    let nbg = -(&b / &eg.gcd);
                    combine_rows(&mut a, t, i, &eg.x, &eg.y, &nbg, &pg);
                    if track {
                        combine_rows(&mut u, t, i, &eg.x, &eg.y, &nbg, &pg);
                    }
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let p = a[t][t].clone();
                let b = a[t][j].clone();
                if b.is_multiple_of(&p) {
                    let q = &b / &p;
                    for row in a.iter_mut() {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[j] -= d;
                        }
                    }
                    if track {
                        for row in v.iter_mut() {
                            if !row[t].is_zero() {
                                let d = &q * &row[t];
                                row[j] -= d;
                            }
                        }
                    }
                } else {
                    let eg = p.extended_gcd(&b);
                    let pg = &p / &eg.gcd;
                    let nbg = -(&b / &eg.gcd);
                    combine_cols(&mut a, t, j, &eg.x, &eg.y, &nbg, &pg);
                    if track {
                        combine_cols(&mut v, t, j, &eg.x, &eg.y, &nbg, &pg);
                    }
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[i][t].is_zero());
            if !col_clear {
                continue;
            }
            // divisibility of the trailing block
            let p = a[t][t].clone();
            let mut offending = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[i][j].is_multiple_of(&p) {
                        offending = Some(i);
                        break 'outer;
                    }
                }
            }
            match offending {
                None => break,
                Some(i) => {
                    let one = BigInt::one();
                    sub_row_multiple(&mut a, t, i, &(-&one));
                    if track {
                        sub_row_multiple(&mut u, t, i, &(-&one));
                    }
                }
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            if track {
                negate_row(&mut u, t);
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    (u, a, v, diag)
}

pub fn snf(a: &IntMatrix) -> Snf {
    let (u, s, v, diag) = snf_rows(a.to_rows(), a.rows(), a.cols(), true);
    Snf {
        u: IntMatrix::from_rows(u, a.rows()),
        s: IntMatrix::from_rows(s, a.cols()),
        v: IntMatrix::from_rows(v, a.cols()),
        diag,
    }
}

/// Invariant factors only (no transforms).
pub fn snf_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    snf_rows(a.to_rows(), a.rows(), a.cols(), false).3
}

/// Fraction-free elimination; returns (rank, determinant of the leading block when square).
fn bareiss(a: &IntMatrix) -> (usize, BigInt) {
    let mut m = a.to_rows();
    let rows = a.rows();
    let cols = a.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut sign = BigInt::one();
    for j in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][j].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for k in j + 1..cols {
                let v = (&m[r][j] * &m[i][k] - &m[i][j] * &m[r][k]) / &prev;
                m[i][k] = v;
            }
            m[i][j] = BigInt::zero();
        }
        prev = m[r][j].clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if rows == 0 {
            BigInt::one()
        } else {
            sign * &m[rows - 1][cols - 1]
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

pub fn rank(a: &IntMatrix) -> usize {
    bareiss(a).0
}

pub fn det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    bareiss(a).1
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.rows() == a.cols() && det(a).abs().is_one()
}

pub fn inverse_unimodular(a: &IntMatrix) -> Result<IntMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::Invalid("inverse of a non-square matrix".into()));
    }
    let h = hnf(a);
    if !h.h.is_identity() {
        return Err(Error::Invalid("matrix is not unimodular".into()));
    }
    Ok(h.u)
}

/// Columns form a saturated Z-basis of the kernel, in Hermite-reduced form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let h = hnf(&a.transpose());
    let urows = h.u.to_rows();
    let krows: Rows = urows.into_iter().skip(h.rank).collect();
    if krows.is_empty() {
        return IntMatrix::zeros(n, 0);
    }
    let (kh, _, piv) = hnf_rows(krows, n, false);
    let kh: Rows = kh.into_iter().take(piv.len()).collect();
    IntMatrix::from_rows(kh, n).transpose()
}

/// Integer solver sharing one Hermite decomposition across right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver {
    h: Rows,
    u: Rows,
    pivots: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Solver {
        let (h, u, pivots) = hnf_rows(a.transpose().to_rows(), a.rows(), true);
        Solver {
            h,
            u,
            pivots,
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let r = self.pivots.len();
        let mut y = vec![BigInt::zero(); r];
        for k in 0..r {
            let p = self.pivots[k];
            let mut rhs = b[p].clone();
            for (l, yl) in y.iter().enumerate().take(k) {
                rhs -= &self.h[l][p] * yl;
            }
            let (q, rem) = rhs.div_rem(&self.h[k][p]);
            if !rem.is_zero() {
                return None;
            }
            y[k] = q;
        }
        for i in 0..self.rows {
            let mut s = BigInt::zero();
            for (k, yk) in y.iter().enumerate() {
                if !self.h[k][i].is_zero() {
                    s += &self.h[k][i] * yk;
                }
            }
            if s != b[i] {
                return None;
            }
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (j, xj) in x.iter_mut().enumerate() {
                if !self.u[k][j].is_zero() {
                    *xj += &self.u[k][j] * yk;
                }
            }
        }
        Some(x)
    }
}

/// Some integer solution of `A·x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(a).solve(b)
}

/// Solves `A·X = B` column by column.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let s = Solver::new(a);
    let mut cols = Vec::with_capacity(b.cols());
    for c in b.columns() {
        cols.push(s.solve(&c)?);
    }
    Some(IntMatrix::from_columns(&cols, a.cols()))
}

/// Invariants of `Z^rows / colspan(A)`.
pub fn cokernel_invariants(a: &IntMatrix) -> AbelianInvariants {
    let diag = snf_diagonal(a);
    let free = a.rows() - diag.len();
    AbelianInvariants::new(free, diag.into_iter().filter(|d| !d.is_one()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmat::{big, big_vec};

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows_i64(rows)
    }

    #[test]
    fn hnf_examples() {
        let h = hnf(&IntMatrix::identity(3));
        assert!(h.h.is_identity() && h.u.is_identity());
        let z = IntMatrix::zeros(2, 3);
        let h = hnf(&z);
        assert!(h.h.is_zero() && h.u.is_identity());
        let a = m(&[vec![4, 6], vec![2, 2]]);
        let h = hnf(&a);
        assert_eq!(h.h.get(0, 0), big(2));
        assert_eq!(h.u.mul(&a), h.h);
        assert!(is_unimodular(&h.u));
    }

    #[test]
    fn snf_examples() {
        let s = snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diag, big_vec(&[1, 6]));
        assert_eq!(s.u.mul(&m(&[vec![2, 0], vec![0, 3]])).mul(&s.v), s.s);
        assert!(snf(&IntMatrix::zeros(2, 2)).diag.is_empty());
        assert_eq!(snf(&IntMatrix::identity(3)).diag, big_vec(&[1, 1, 1]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&m(&[vec![1, 1]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert!(v == big_vec(&[1, -1]) || v == big_vec(&[-1, 1]));
        let k = kernel_basis(&m(&[vec![2, 4, 6]]));
        assert_eq!(k.cols(), 2);
        assert!(m(&[vec![2, 4, 6]]).mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&IntMatrix::identity(2), &big_vec(&[3, -4])), Some(big_vec(&[3, -4])));
        assert_eq!(solve(&m(&[vec![2]]), &big_vec(&[1])), None);
        let x = solve(&m(&[vec![2, 3]]), &big_vec(&[1])).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, big(1));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_invariants(&IntMatrix::zeros(1, 1));
        assert_eq!((c.free_rank, c.torsion.len()), (1, 0));
        assert_eq!(cokernel_invariants(&m(&[vec![2]])).torsion, big_vec(&[2]));
        assert_eq!(cokernel_invariants(&m(&[vec![2, 0], vec![0, 3]])).torsion, big_vec(&[6]));
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(det(&m(&[vec![1, 2], vec![3, 4]])), big(-2));
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(det(&IntMatrix::zeros(0, 0)), big(1));
    }
}
