//! Sparse elimination over `Z/p^e`.
//!
//! When every invariant factor of an integer matrix has `p`-adic valuation
//! below `e`, the pivots found here carry exactly the `p`-parts of the Smith
//! invariants. The elimination records its row operations (to transform right
//! hand sides) and the pivot rows (to rebuild columns of the column transform).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub type SparseRow = Vec<(u32, u64)>;

#[derive(Clone, Debug)]
struct Step {
    row: u32,
    col: u32,
    val: u32,
    unit_inv: u64,
    ops: Vec<(u32, u64)>,
    row_entries: Vec<(u32, u64)>,
}

/// Record of a finished elimination over `Z/q`, `q = p^e`.
#[derive(Clone, Debug)]
pub struct LocalElimination {
    p: u64,
    e: u32,
    q: u64,
    nrows: usize,
    ncols: usize,
    steps: Vec<Step>,
    complete: bool,
}

/// Pivot data: row, column and `p`-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub valuation: u32,
}

pub fn modpow(p: u64, e: u32) -> u64 {
    let mut q: u64 = 1;
    for _ in 0..e {
        q = q.checked_mul(p).expect("modulus overflow");
    }
    q
}

fn valuation(mut x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (q as i128, (a % q) as i128);
    while nr != 0 {
        let quo = r / nr;
        (t, nt) = (nt, t - quo * nt);
        (r, nr) = (nr, r - quo * nr);
    }
    assert_eq!(r, 1, "not a unit");
    t.rem_euclid(q as i128) as u64
}

/// Reduces an integer into `[0, q)`.
pub fn reduce(x: i64, q: u64) -> u64 {
    (x as i128).rem_euclid(q as i128) as u64
}

/// Symmetric lift of a residue into `(-q/2, q/2]`.
pub fn lift(x: u64, q: u64) -> i64 {
    if x > q / 2 {
        x as i64 - q as i64
    } else {
        x as i64
    }
}

fn entry(row: &SparseRow, c: u32) -> Option<u64> {
    row.binary_search_by_key(&c, |&(j, _)| j).ok().map(|k| row[k].1)
}

/// `target - m * src` over `Z/q`; returns columns that became nonzero.
fn axpy(target: &SparseRow, src: &SparseRow, m: u64, q: u64, out: &mut SparseRow, new_cols: &mut Vec<u32>) {
    out.clear();
    new_cols.clear();
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < src.len() {
        let ca = target.get(a).map_or(u32::MAX, |x| x.0);
        let cb = src.get(b).map_or(u32::MAX, |x| x.0);
        if ca < cb {
            out.push(target[a]);
            a += 1;
        } else if cb < ca {
            let v = (q - (m as u128 * src[b].1 as u128 % q as u128) as u64) % q;
            if v != 0 {
                out.push((cb, v));
                new_cols.push(cb);
            }
            b += 1;
        } else {
            let sub = (m as u128 * src[b].1 as u128 % q as u128) as u64;
            let v = (target[a].1 + q - sub) % q;
            if v != 0 {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
}

impl LocalElimination {
    /// Eliminates `rows` (sparse, columns < `ncols`, values reduced mod `p^e`).
    /// With `stop_rank`, stops as soon as that many pivots are found.
    pub fn new(rows: Vec<SparseRow>, ncols: usize, p: u64, e: u32, stop_rank: Option<usize>) -> LocalElimination {
        let q = modpow(p, e);
        let nrows = rows.len();
        let mut rows: Vec<SparseRow> = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|&(_, v)| v % q != 0);
                for x in r.iter_mut() {
                    x.1 %= q;
                }
                r.sort_unstable_by_key(|x| x.0);
                r
            })
            .collect();
        let mut row_active = vec![true; nrows];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
            }
        }
        let mut col_active = vec![true; ncols];
        let mut steps: Vec<Step> = Vec::new();
        let mut scratch: SparseRow = Vec::new();
        let mut new_cols: Vec<u32> = Vec::new();
        let mut complete = true;
        let pw: Vec<u64> = (0..=e).map(|k| modpow(p, k)).collect();

        'phases: for v in 0..e {
            loop {
                let mut found = false;
                let mut heap: BinaryHeap<Reverse<(usize, u32)>> = BinaryHeap::new();
                for c in 0..ncols {
                    if col_active[c] {
                        heap.push(Reverse((col_rows[c].len(), c as u32)));
                    }
                }
                while let Some(Reverse((cnt, c))) = heap.pop() {
                    let cu = c as usize;
                    if !col_active[cu] {
                        continue;
                    }
                    let list = &mut col_rows[cu];
                    list.sort_unstable();
                    list.dedup();
                    list.retain(|&i| row_active[i as usize] && entry(&rows[i as usize], c).is_some());
                    if list.is_empty() {
                        col_active[cu] = false;
                        continue;
                    }
                    if list.len() != cnt {
                        heap.push(Reverse((list.len(), c)));
                        continue;
                    }
                    let mut best: Option<u32> = None;
                    for &i in list.iter() {
                        let a = entry(&rows[i as usize], c).expect("listed");
                        if valuation(a, p, e) == v
                            && best.is_none_or(|b| rows[i as usize].len() < rows[b as usize].len())
                        {
                            best = Some(i);
                        }
                    }
                    let Some(r) = best else { continue };
                    found = true;
                    let ru = r as usize;
                    let a = entry(&rows[ru], c).expect("pivot entry");
                    let unit = (a / pw[v as usize]) % q;
                    let unit_inv = inv_mod(unit, q);
                    let prow = std::mem::take(&mut rows[ru]);
                    row_active[ru] = false;
                    col_active[cu] = false;
                    let others: Vec<u32> = std::mem::take(&mut col_rows[cu]);
                    let mut ops = Vec::new();
                    for i in others {
                        if i == r {
                            continue;
                        }
                        let iu = i as usize;
                        let b = entry(&rows[iu], c).expect("listed");
                        let m = ((b / pw[v as usize]) as u128 * unit_inv as u128 % q as u128) as u64;
                        axpy(&rows[iu], &prow, m, q, &mut scratch, &mut new_cols);
                        std::mem::swap(&mut rows[iu], &mut scratch);
                        debug_assert!(entry(&rows[iu], c).is_none());
                        for &nc in &new_cols {
                            col_rows[nc as usize].push(i);
                        }
                        ops.push((i, m));
                    }
                    let row_entries: Vec<(u32, u64)> = prow.into_iter().filter(|x| x.0 != c).collect();
                    steps.push(Step {
                        row: r,
                        col: c,
                        val: v,
                        unit_inv,
                        ops,
                        row_entries,
                    });
                    if stop_rank.is_some_and(|s| steps.len() >= s) {
                        complete = false;
                        break 'phases;
                    }
                }
                if !found {
                    break;
                }
            }
        }
        LocalElimination {
            p,
            e,
            q,
            nrows,
            ncols,
            steps,
            complete,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// False when the elimination stopped early at the requested rank.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of pivots, i.e. invariant factors of valuation below `e`.
    pub fn rank(&self) -> usize {
        self.steps.len()
    }

    pub fn pivots(&self) -> Vec<Pivot> {
        self.steps
            .iter()
            .map(|s| Pivot {
                row: s.row as usize,
                col: s.col as usize,
                valuation: s.val,
            })
            .collect()
    }

    /// Applies the recorded row operations to a right-hand side.
    pub fn apply_u(&self, b: &mut [u64]) {
        assert_eq!(b.len(), self.nrows, "right-hand side length");
        let q = self.q as u128;
        for s in &self.steps {
            let br = b[s.row as usize];
            if br == 0 {
                continue;
            }
            for &(i, m) in &s.ops {
                let sub = (m as u128 * br as u128 % q) as u64;
                let x = &mut b[i as usize];
                *x = (*x + self.q - sub) % self.q;
            }
        }
    }

    /// Whether `b` lies in the column span modulo `q` (requires a complete run).
    pub fn in_column_space(&self, b: &[u64]) -> bool {
        assert!(self.complete, "membership needs a complete elimination");
        let mut ub: Vec<u64> = b.iter().map(|x| x % self.q).collect();
        self.apply_u(&mut ub);
        let mut is_pivot_row = vec![false; self.nrows];
        for s in &self.steps {
            is_pivot_row[s.row as usize] = true;
            if ub[s.row as usize] % modpow(self.p, s.val) != 0 {
                return false;
            }
        }
        ub.iter().enumerate().all(|(i, &x)| is_pivot_row[i] || x == 0)
    }

    /// Coordinate of a transformed right-hand side on pivot `k`, modulo `p^val`.
    pub fn coordinate(&self, ub: &[u64], k: usize) -> u64 {
        let s = &self.steps[k];
        ub[s.row as usize] % modpow(self.p, s.val)
    }

    /// Column `k` of the column transform, scaled so that the image has unit
    /// coordinate `p^val` on pivot `k`.
    pub fn column_lift(&self, k: usize) -> Vec<u64> {
        let q = self.q as u128;
        let mut x = vec![0u64; self.ncols];
        x[self.steps[k].col as usize] = self.steps[k].unit_inv;
        for l in (0..k).rev() {
            let s = &self.steps[l];
            let pv = modpow(self.p, s.val);
            let mut acc: u128 = 0;
            for &(j, a) in &s.row_entries {
                let xj = x[j as usize];
                if xj != 0 {
                    let f = (a / pv) as u128 * s.unit_inv as u128 % q;
                    acc = (acc + f * xj as u128) % q;
                }
            }
            if acc != 0 {
                let c = s.col as usize;
                x[c] = (x[c] + self.q - acc as u64) % self.q;
            }
        }
        x
    }
}

/// `p`-adic valuation of a positive integer.
pub fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 && n > 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmat::{snf, IntMatrix};
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn to_rows(m: &IntMatrix, q: u64) -> Vec<SparseRow> {
        (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .filter_map(|j| {
                        let v = reduce(m.get_i64(i, j), q);
                        (v != 0).then_some((j as u32, v))
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn valuations_match_smith_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let m = IntMatrix::from_fn(r, c, |_, _| {
                let x: i64 = rng.gen_range(-6..7);
                if rng.gen_bool(0.4) {
                    0
                } else {
                    x * [1, 2, 4, 3][rng.gen_range(0..4)]
                }
            });
            let s = snf(&m);
            for (p, e) in [(2u64, 5u32), (3, 3)] {
                let q = modpow(p, e);
                let le = LocalElimination::new(to_rows(&m, q), c, p, e, None);
                let mut want: Vec<u32> = s
                    .diag
                    .iter()
                    .map(|d| p_valuation(d.to_u64().unwrap(), p))
                    .filter(|&v| v < e)
                    .collect();
                want.sort();
                let mut got: Vec<u32> = le.pivots().iter().map(|x| x.valuation).collect();
                got.sort();
                assert_eq!(got, want, "matrix {m:?} p {p}");
                // column lifts map onto p^val times a unit vector in U-coordinates
                for (k, piv) in le.pivots().iter().enumerate() {
                    let x = le.column_lift(k);
                    let mut ax = vec![0u64; r];
                    for i in 0..r {
                        let mut acc = 0i128;
                        for j in 0..c {
                            acc += m.get_i64(i, j) as i128 * lift(x[j], q) as i128;
                        }
                        ax[i] = acc.rem_euclid(q as i128) as u64;
                    }
                    assert!(le.in_column_space(&ax));
                    le.apply_u(&mut ax);
                    let pv = modpow(p, piv.valuation);
                    for (k2, p2) in le.pivots().iter().enumerate() {
                        let want = if k2 == k { pv } else { 0 };
                        assert_eq!(ax[p2.row] % q, want % q);
                    }
                }
            }
        }
    }

    #[test]
    fn membership_against_brute_force() {
        // 2x2 over Z/4
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a: Vec<i64> = (0..4).map(|_| rng.gen_range(0..4)).collect();
            let m = IntMatrix::from_rows_i64(&[vec![a[0], a[1]], vec![a[2], a[3]]]);
            let le = LocalElimination::new(to_rows(&m, 4), 2, 2, 2, None);
            let mut image = std::collections::BTreeSet::new();
            for x in 0..4 {
                for y in 0..4 {
                    image.insert(((a[0] * x + a[1] * y) % 4, (a[2] * x + a[3] * y) % 4));
                }
            }
            for b0 in 0..4 {
                for b1 in 0..4 {
                    assert_eq!(
                        le.in_column_space(&[b0 as u64, b1 as u64]),
                        image.contains(&(b0, b1))
                    );
                }
            }
        }
    }
}
