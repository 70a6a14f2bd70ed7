use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::Result;
use crate::groups::{symmetric_group, Perm, PermGroup, Subgroup};
use crate::zmat::{subgroup_lattice, subgroup_order, IntMatrix};

pub fn big_orders(orders: &[u64]) -> Vec<BigInt> {
    orders.iter().map(|&d| BigInt::from(d)).collect()
}

/// Order of the subgroup of `⊕ Z/d_i` spanned by the columns of `cols`.
pub fn image_order(target: &[u64], cols: &IntMatrix) -> BigInt {
    let orders = big_orders(target);
    if orders.is_empty() {
        return BigInt::one();
    }
    subgroup_order(&orders, &subgroup_lattice(&orders, &cols.columns()))
}

/// `map: ⊕ Z/s_i → ⊕ Z/t_j` is injective, for finite source.
pub fn injective(source: &[u64], target: &[u64], map: &IntMatrix) -> bool {
    let total: BigInt = source.iter().fold(BigInt::one(), |a, &d| a * d);
    image_order(target, map) == total
}

pub fn rows_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect()
}

pub fn combine(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

/// `S_n` with `S_{n-1}` fixing the last point.
pub fn sym_pair(n: usize) -> Result<(Arc<PermGroup>, Subgroup)> {
    let g = symmetric_group(n)?;
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Perm::transposition(n, 0, 1));
    }
    if n >= 4 {
        gens.push(Perm::from_cycles(n, &[(0..n - 1).collect()])?);
    }
    let name = format!("S{}", n - 1);
    let h = if gens.is_empty() {
        Subgroup::trivial(&g, &name)
    } else {
        Subgroup::new(&g, gens, &name)?
    };
    Ok((g, h))
}
