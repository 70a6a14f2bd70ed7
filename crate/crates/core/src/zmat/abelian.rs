use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{det, hnf, kernel_basis, IntMatrix};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(with = "big_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Normalizes arbitrary cyclic orders into invariant factors.
    pub fn new(free_rank: usize, orders: Vec<BigInt>) -> AbelianInvariants {
        AbelianInvariants {
            free_rank,
            torsion: invariant_factors(orders),
        }
    }

    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Exponent of the torsion part.
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

/// Turns a list of cyclic orders (entries 0 or 1 dropped) into invariant factors.
pub fn invariant_factors(orders: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = orders.into_iter().filter(|x| *x > BigInt::one()).collect();
    // repeatedly replace pairs (a, b) by (gcd, lcm)
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| *x > BigInt::one());
    d
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Lattice `L ⊂ Z^k` with `⊕ d_i Z ⊂ L` describing the subgroup of
/// `⊕ Z/d_i` generated by `gens`; returned as Hermite rows, so equal
/// subgroups give equal matrices.
pub fn subgroup_lattice(orders: &[BigInt], gens: &[Vec<BigInt>]) -> IntMatrix {
    let k = orders.len();
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    for (i, d) in orders.iter().enumerate() {
        let mut r = vec![BigInt::zero(); k];
        r[i] = d.clone();
        rows.push(r);
    }
    if k == 0 {
        return IntMatrix::zeros(0, 0);
    }
    let h = hnf(&IntMatrix::from_rows(rows, k));
    h.h.select_rows(&(0..h.rank).collect::<Vec<_>>())
}

/// Kernel of the homomorphism `⊕ Z/src_i → ⊕ Z/tgt_j` given by `a`
/// (`tgt.len() × src.len()`), as a subgroup lattice of the source.
pub fn hom_kernel(a: &IntMatrix, src: &[BigInt], tgt: &[BigInt]) -> IntMatrix {
    let k = src.len();
    let l = tgt.len();
    let e = IntMatrix::from_triplets(l, l, tgt.iter().enumerate().map(|(i, v)| (i, i, -v.clone())).collect());
    let big = a.hstack(&e);
    let kb = kernel_basis(&big);
    let gens: Vec<Vec<BigInt>> = kb.columns().into_iter().map(|c| c[..k].to_vec()).collect();
    subgroup_lattice(src, &gens)
}

/// Image of the same homomorphism, as a subgroup lattice of the target.
pub fn hom_image(a: &IntMatrix, tgt: &[BigInt]) -> IntMatrix {
    subgroup_lattice(tgt, &a.columns())
}

/// Order of the subgroup described by a full-rank subgroup lattice.
pub fn subgroup_order(orders: &[BigInt], lattice: &IntMatrix) -> BigInt {
    let total = orders.iter().fold(BigInt::one(), |a, b| a * b);
    if lattice.rows() == 0 {
        return total;
    }
    total / det(lattice).abs()
}

mod big_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmat::big_vec;

    #[test]
    fn factors_and_display() {
        let a = AbelianInvariants::new(0, big_vec(&[2, 3]));
        assert_eq!(a.torsion, big_vec(&[6]));
        assert_eq!(a.to_string(), "Z/6");
        let b = AbelianInvariants::new(2, big_vec(&[4, 2, 1]));
        assert_eq!(b.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }

    #[test]
    fn finite_subgroups() {
        // Z/4 → Z/2 reduction: kernel is 2Z/4, image everything
        let a = IntMatrix::from_rows_i64(&[vec![1]]);
        let src = big_vec(&[4]);
        let tgt = big_vec(&[2]);
        let k = hom_kernel(&a, &src, &tgt);
        assert_eq!(subgroup_order(&src, &k), big_vec(&[2])[0]);
        assert_eq!(k, subgroup_lattice(&src, &[big_vec(&[2])]));
        let im = hom_image(&a, &tgt);
        assert_eq!(subgroup_order(&tgt, &im), big_vec(&[2])[0]);
        // multiplication by 2 on Z/6: kernel of order 2
        let b = IntMatrix::from_rows_i64(&[vec![2]]);
        let s6 = big_vec(&[6]);
        assert_eq!(subgroup_order(&s6, &hom_kernel(&b, &s6, &s6)), big_vec(&[2])[0]);
    }
}
