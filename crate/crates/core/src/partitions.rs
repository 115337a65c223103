//! Set partitions, the bottom Möbius function of the partition lattice, and
//! generalized and iterated binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::Polynomial;

pub const DEFAULT_PARTITION_CAP: usize = 10;

/// A partition of `{1..k}`; blocks are sorted and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
    size: usize,
}

impl SetPartition {
    /// Validates and normalizes a block list covering `{1..size}`.
    pub fn new(mut blocks: Vec<Vec<usize>>, size: usize) -> Result<Self> {
        let mut seen = vec![false; size + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > size || seen[e] {
                    return Err(Error::InvalidInput(format!(
                        "element {e} out of range or repeated"
                    )));
                }
                seen[e] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::InvalidInput(
                "blocks do not cover the ground set".into(),
            ));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { blocks, size })
    }

    fn from_growth_string(rgs: &[usize]) -> Self {
        let n_blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self {
            blocks,
            size: rgs.len(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of blocks, `N(π)`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `μ(0̂, π) = Π_B (-1)^(|B|-1)·(|B|-1)!`.
    pub fn mobius_bottom(&self) -> BigInt {
        self.blocks
            .iter()
            .map(|b| {
                let f = factorial(b.len() - 1);
                if b.len() % 2 == 0 {
                    -f
                } else {
                    f
                }
            })
            .product()
    }
}

/// All set partitions of `{1..k}` via restricted growth strings.
pub fn partitions_of(k: usize, cap: usize) -> Result<Vec<SetPartition>> {
    if k > cap {
        return Err(Error::ResourceLimit(format!(
            "partition enumeration of a {k}-set exceeds the cap of {cap}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn extend(i: usize, max_so_far: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_growth_string(rgs));
            return;
        }
        for b in 0..=max_so_far + 1 {
            rgs[i] = b;
            extend(i + 1, max_so_far.max(b), rgs, out);
        }
    }
    if k == 0 {
        out.push(SetPartition::from_growth_string(&[]));
    } else {
        // element 1 always opens block 0
        extend(1, 0, &mut rgs, &mut out);
    }
    Ok(out)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `x(x-1)⋯(x-k+1)`.
pub fn falling_factorial(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (x - int(i as i64)))
}

/// `x(x-1)⋯(x-k+1)/k!` for any rational `x`.
pub fn gen_binomial(x: &Rational, k: usize) -> Rational {
    falling_factorial(x, k) / Rational::from_integer(factorial(k))
}

/// Left fold of [`gen_binomial`] over `ks`, starting from `x`.
pub fn iterated_binomial(x: &Rational, ks: &[usize]) -> Rational {
    ks.iter().fold(x.clone(), |acc, &k| gen_binomial(&acc, k))
}

/// `binom(p(x), k)` as a polynomial in `x`.
pub fn binomial_of_polynomial(p: &Polynomial, k: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    for i in 0..k {
        acc = &acc * &(p - &Polynomial::constant(int(i as i64)));
    }
    acc.scale(&Rational::from_integer(factorial(k)).recip())
}

/// The iterated binomial coefficient as a polynomial in its base.
pub fn iterated_binomial_polynomial(ks: &[usize]) -> Polynomial {
    ks.iter()
        .fold(Polynomial::x(), |acc, &k| binomial_of_polynomial(&acc, k))
}

/// Integer binomial coefficient `binom(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6)
            .map(|k| partitions_of(k, DEFAULT_PARTITION_CAP).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
        assert!(matches!(
            partitions_of(11, DEFAULT_PARTITION_CAP),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn partitions_are_distinct_and_valid() {
        let parts = partitions_of(4, 10).unwrap();
        let unique: std::collections::HashSet<_> = parts.iter().cloned().collect();
        assert_eq!(unique.len(), parts.len());
        for p in &parts {
            let rebuilt = SetPartition::new(p.blocks().to_vec(), 4).unwrap();
            assert_eq!(&rebuilt, p);
        }
    }

    #[test]
    fn mobius_values() {
        let singletons = SetPartition::new(vec![vec![1], vec![2], vec![3]], 3).unwrap();
        assert_eq!(singletons.mobius_bottom(), BigInt::from(1));
        let pair = SetPartition::new(vec![vec![3], vec![2, 1]], 3).unwrap();
        assert_eq!(pair.blocks()[0], vec![1, 2]);
        assert_eq!(pair.mobius_bottom(), BigInt::from(-1));
        let whole = SetPartition::new(vec![vec![1, 2, 3]], 3).unwrap();
        assert_eq!(whole.mobius_bottom(), BigInt::from(2));
        assert!(SetPartition::new(vec![vec![1], vec![1, 2]], 2).is_err());
        assert!(SetPartition::new(vec![vec![1]], 2).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(gen_binomial(&int(-2), 3), int(-4));
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(gen_binomial(&rat(7, 3), 0), int(1));
        assert_eq!(falling_factorial(&int(-2), 3), int(-24));
    }

    #[test]
    fn iterated() {
        assert_eq!(iterated_binomial(&int(4), &[2, 2]), int(15));
        assert_eq!(iterated_binomial(&rat(1, 2), &[2, 2]), rat(9, 128));
        assert_eq!(iterated_binomial(&rat(5, 7), &[]), rat(5, 7));
        let p = iterated_binomial_polynomial(&[2, 2]);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.eval(&rat(1, 2)), rat(9, 128));
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
