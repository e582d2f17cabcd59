//! Exact Clifford algebra with negative-definite signature: e_i² = -1 and
//! e_i e_j = -e_j e_i. Monomials are bitmasks over the generators, with
//! coefficients in Z[1/√2].
//!
//! The negative-definite convention makes unit vectors square to -1, so the
//! lift of a transposition squares to the central -1 of the covering group
//! without any extra sign bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use std::ops::Neg;

use thiserror::Error;

use super::scalar::DyadicRootTwo;

/// Generators are indexed 0..N-1; N ≤ 9 covers every simplex dimension the
/// dual-skeleton machinery accepts (manifold dimension up to 8).
pub const MAX_RANK: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
}

/// A sparse multivector: map from monomial bitmask to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    rank: usize,
    coeffs: BTreeMap<u16, DyadicRootTwo>,
}

impl CliffordElement {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds maximum {MAX_RANK}");
        CliffordElement { rank, coeffs: BTreeMap::new() }
    }

    pub fn scalar(rank: usize, value: DyadicRootTwo) -> Self {
        let mut e = Self::zero(rank);
        e.insert(0, value);
        e
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, DyadicRootTwo::one())
    }

    pub fn basis_vector(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut e = Self::zero(rank);
        e.insert(1 << i, DyadicRootTwo::one());
        e
    }

    /// The unit vector (e_a - e_b)/√2, the building block of transposition lifts.
    pub fn unit_difference(rank: usize, a: usize, b: usize) -> Self {
        assert!(a < rank && b < rank && a != b);
        let mut e = Self::zero(rank);
        e.insert(1 << a, DyadicRootTwo::inv_sqrt2());
        e.insert(1 << b, -DyadicRootTwo::inv_sqrt2());
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some(sign) when the element is exactly +1 or -1.
    pub fn as_unit_scalar(&self) -> Option<i8> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (mask, c) = self.coeffs.iter().next().unwrap();
        if *mask != 0 {
            return None;
        }
        if c.is_one() {
            Some(1)
        } else if c.clone().neg() == DyadicRootTwo::one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn coefficient(&self, mask: u16) -> DyadicRootTwo {
        self.coeffs.get(&mask).cloned().unwrap_or_else(DyadicRootTwo::zero)
    }

    pub fn monomials(&self) -> impl Iterator<Item = (u16, &DyadicRootTwo)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    fn insert(&mut self, mask: u16, value: DyadicRootTwo) {
        if !value.is_zero() {
            self.coeffs.insert(mask, value);
        }
    }

    fn accumulate(&mut self, mask: u16, value: DyadicRootTwo) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.remove(&mask) {
            None => {
                self.coeffs.insert(mask, value);
            }
            Some(old) => {
                let sum = old
                    .checked_add(&value)
                    .expect("clifford coefficients of one monomial share √2-parity");
                self.insert(mask, sum);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.rank != other.rank {
            return Err(CliffordError::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, c.clone().neg())).collect();
        CliffordElement { rank: self.rank, coeffs }
    }

    pub fn scale(&self, s: &DyadicRootTwo) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.coeffs {
            out.insert(*m, c * s);
        }
        out
    }

    /// Geometric product. The sign of a monomial product counts the
    /// transpositions needed to interleave the two index sets, plus one
    /// factor of -1 per repeated generator (e_i² = -1).
    pub fn product(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.rank != other.rank {
            return Err(CliffordError::RankMismatch(self.rank, other.rank));
        }
        let mut out = Self::zero(self.rank);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let (mask, negative) = mul_monomials(*ma, *mb);
                let mut c = ca * cb;
                if negative {
                    c = c.neg();
                }
                out.accumulate(mask, c);
            }
        }
        Ok(out)
    }

    /// Reversal anti-automorphism: grade g is scaled by (-1)^(g(g-1)/2).
    pub fn reverse(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.coeffs {
            let g = m.count_ones();
            let flip = (g * (g.saturating_sub(1)) / 2) % 2 == 1;
            out.insert(*m, if flip { c.clone().neg() } else { c.clone() });
        }
        out
    }
}

/// Product of two basis monomials: resulting mask and whether the sign is -1.
fn mul_monomials(a: u16, b: u16) -> (u16, bool) {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        bb &= bb - 1;
        swaps += (a >> (i + 1)).count_ones();
    }
    let repeats = (a & b).count_ones();
    ((a ^ b), (swaps + repeats) % 2 == 1)
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
                for i in 0..16 {
                    if m & (1 << i) != 0 {
                        write!(f, "e{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
