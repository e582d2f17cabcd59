//! The Z₂-central extension Σ̃ₙ⁻ of the symmetric group (transposition lifts
//! square to -1) and its even subgroup, the binary alternating group Ãₙ.
//!
//! An element is stored as (base permutation, parity bit, spinor). The spinor
//! is the exact Clifford word of the lift with the diagonal direction d̂
//! factored out: the lift of (a b) is u_ab·d̂ with u_ab = (e_a - e_b)/√2, and
//! since d̂ is orthogonal to every u_ab the d̂ factors cancel out of products
//! entirely, leaving group multiplication as plain spinor multiplication.
//! Every sign in the cover is therefore decided by exact Clifford arithmetic.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{CliffordElement, DyadicRootTwo, MAX_RANK};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("transposition endpoints must differ")]
    EqualPoints,
    #[error("cycle contains a repeated element")]
    RepeatedElement,
    #[error("cycle needs at least two elements")]
    CycleTooShort,
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
    #[error("element moves marked point {0}")]
    MovesMarkedPoint(usize),
    #[error("enumeration limited to rank ≤ {0}, got {1}")]
    EnumerationTooLarge(usize, usize),
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
}

/// The kernel {±1} of the central extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CentralSign {
    Plus,
    Minus,
}

impl CentralSign {
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: CentralSign) -> CentralSign {
        if self == other {
            CentralSign::Plus
        } else {
            CentralSign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            CentralSign::Plus => 1,
            CentralSign::Minus => -1,
        }
    }
}

impl fmt::Display for CentralSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == CentralSign::Plus { "+1" } else { "-1" })
    }
}

/// An element of Σ̃ₙ⁻ (rank n = number of permuted points).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiftedPermutation {
    base: Permutation,
    parity: bool,
    spinor: CliffordElement,
}

impl LiftedPermutation {
    pub fn identity(rank: usize) -> Self {
        LiftedPermutation {
            base: Permutation::identity(rank),
            parity: false,
            spinor: CliffordElement::one(rank),
        }
    }

    /// The central element -1.
    pub fn central_minus_one(rank: usize) -> Self {
        LiftedPermutation {
            base: Permutation::identity(rank),
            parity: false,
            spinor: CliffordElement::one(rank).neg(),
        }
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &Permutation {
        &self.base
    }

    pub fn parity_odd(&self) -> bool {
        self.parity
    }

    pub fn spinor(&self) -> &CliffordElement {
        &self.spinor
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_identity() && self.spinor.as_unit_scalar() == Some(1)
    }

    /// Some(sign) when the element is central.
    pub fn central_sign(&self) -> Option<CentralSign> {
        if !self.base.is_identity() {
            return None;
        }
        match self.spinor.as_unit_scalar() {
            Some(1) => Some(CentralSign::Plus),
            Some(-1) => Some(CentralSign::Minus),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.rank() != other.rank() {
            return Err(GroupError::RankMismatch(self.rank(), other.rank()));
        }
        let spinor = self.spinor.product(&other.spinor).expect("equal ranks");
        Ok(LiftedPermutation {
            base: self.base.compose(&other.base),
            parity: self.parity ^ other.parity,
            spinor,
        })
    }

    pub fn inverse(&self) -> Self {
        let rev = self.spinor.reverse();
        LiftedPermutation {
            base: self.base.inverse(),
            parity: self.parity,
            spinor: if self.parity { rev.neg() } else { rev },
        }
    }

    /// Central negation -x.
    pub fn negate(&self) -> Self {
        LiftedPermutation {
            base: self.base.clone(),
            parity: self.parity,
            spinor: self.spinor.neg(),
        }
    }

    /// Spinor-unit invariant: x·reverse(x) = +1 for even elements, -1 for odd.
    pub fn check_spinor_unit(&self) -> bool {
        let prod = self.spinor.product(&self.spinor.reverse()).expect("equal ranks");
        match prod.as_unit_scalar() {
            Some(1) => !self.parity,
            Some(-1) => self.parity,
            _ => false,
        }
    }

    /// Least m ≥ 1 with x^m = +1.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = acc.mul(self).expect("equal ranks");
            m += 1;
            assert!(m <= 4 * 720, "order computation ran away");
        }
        m
    }
}

/// The distinguished lift [a b]; squares to the central -1, order 4.
pub fn transposition_lift(a: usize, b: usize, rank: usize) -> Result<LiftedPermutation, GroupError> {
    if rank > MAX_RANK {
        return Err(GroupError::RankTooLarge(rank));
    }
    if a == b {
        return Err(GroupError::EqualPoints);
    }
    for &v in &[a, b] {
        if v >= rank {
            return Err(GroupError::IndexOutOfRange(v, rank));
        }
    }
    Ok(LiftedPermutation {
        base: Permutation::transposition(rank, a, b),
        parity: true,
        spinor: CliffordElement::unit_difference(rank, a, b),
    })
}

/// [a₁ a₂ … a_k] = [a₁a₂][a₂a₃]…[a_{k-1}a_k].
pub fn cycle_lift(points: &[usize], rank: usize) -> Result<LiftedPermutation, GroupError> {
    if points.len() < 2 {
        return Err(GroupError::CycleTooShort);
    }
    let mut seen = HashSet::new();
    for &p in points {
        if p >= rank {
            return Err(GroupError::IndexOutOfRange(p, rank));
        }
        if !seen.insert(p) {
            return Err(GroupError::RepeatedElement);
        }
    }
    let mut acc = transposition_lift(points[0], points[1], rank)?;
    for w in points.windows(2).skip(1) {
        acc = acc.mul(&transposition_lift(w[0], w[1], rank)?)?;
    }
    Ok(acc)
}

/// The base-point lift of a permutation: disjoint cycles smallest-first,
/// ordered by smallest element, cycle lifts multiplied left to right.
pub fn canonical_lift(p: &Permutation) -> LiftedPermutation {
    let mut acc = LiftedPermutation::identity(p.len());
    for cycle in p.cycles() {
        let lift = cycle_lift(&cycle, p.len()).expect("cycles are valid");
        acc = acc.mul(&lift).expect("equal ranks");
    }
    acc
}

/// Conjugation x ↦ g x g⁻¹ by a bare permutation; both lifts of g act the
/// same way because the kernel is central.
pub fn conjugate_by_permutation(
    g: &Permutation,
    x: &LiftedPermutation,
) -> Result<LiftedPermutation, GroupError> {
    if g.len() != x.rank() {
        return Err(GroupError::RankMismatch(g.len(), x.rank()));
    }
    let lift = canonical_lift(g);
    lift.mul(x)?.mul(&lift.inverse())
}

/// The odd-fix inclusion α ↦ α (α even) or α·[i j] (α odd), for α fixing the
/// marked points i and j. Lands in the even subgroup and is a homomorphism.
pub fn embed_odd_fix(
    x: &LiftedPermutation,
    i: usize,
    j: usize,
) -> Result<LiftedPermutation, GroupError> {
    if i == j {
        return Err(GroupError::EqualPoints);
    }
    for &v in &[i, j] {
        if v >= x.rank() {
            return Err(GroupError::IndexOutOfRange(v, x.rank()));
        }
        if !x.base().fixes(v) {
            return Err(GroupError::MovesMarkedPoint(v));
        }
    }
    if x.parity_odd() {
        x.mul(&transposition_lift(i, j, x.rank())?)
    } else {
        Ok(x.clone())
    }
}

/// Closure enumeration of Σ̃ₙ⁻ (or Ãₙ with `even_only`) from cycle-lift
/// generators; rank is capped because the group order is 2·n!.
pub fn enumerate_cover(rank: usize, even_only: bool) -> Result<Vec<LiftedPermutation>, GroupError> {
    const CAP: usize = 6;
    if rank > CAP {
        return Err(GroupError::EnumerationTooLarge(CAP, rank));
    }
    let mut generators = Vec::new();
    if even_only {
        for k in 2..rank {
            generators.push(cycle_lift(&[0, 1, k], rank)?);
        }
        if rank < 3 {
            // Ã₂ and below are just the kernel.
            generators.push(LiftedPermutation::central_minus_one(rank));
        }
    } else {
        for k in 0..rank.saturating_sub(1) {
            generators.push(transposition_lift(k, k + 1, rank)?);
        }
        if rank < 2 {
            generators.push(LiftedPermutation::central_minus_one(rank));
        }
    }
    let mut seen: HashSet<LiftedPermutation> = HashSet::new();
    let mut frontier = vec![LiftedPermutation::identity(rank)];
    seen.insert(frontier[0].clone());
    while let Some(x) = frontier.pop() {
        for g in &generators {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<LiftedPermutation> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        (a.base().images(), render_sign(a) == CentralSign::Minus)
            .cmp(&(b.base().images(), render_sign(b) == CentralSign::Minus))
    });
    Ok(out)
}

/// Sign of x relative to the canonical lift of its base.
pub fn render_sign(x: &LiftedPermutation) -> CentralSign {
    let canon = canonical_lift(x.base());
    if x == &canon {
        CentralSign::Plus
    } else {
        debug_assert_eq!(x, &canon.negate(), "element is neither lift of its base");
        CentralSign::Minus
    }
}

impl fmt::Display for LiftedPermutation {
    /// Renders as ±[a₁ a₂ … a_k][…]… in canonical cycle order; ±1 for central.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = render_sign(self);
        let cycles = self.base.cycles();
        if cycles.is_empty() {
            return write!(f, "{}", if sign == CentralSign::Plus { "+1" } else { "-1" });
        }
        write!(f, "{}", if sign == CentralSign::Plus { "+" } else { "-" })?;
        for c in cycles {
            write!(f, "[")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Expected spinor coefficient magnitudes stay in Z[1/√2]; exposed for tests
/// that pin down specific Clifford words.
pub fn spinor_coefficient(x: &LiftedPermutation, mask: u16) -> DyadicRootTwo {
    x.spinor().coefficient(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, n: usize) -> LiftedPermutation {
        transposition_lift(a, b, n).unwrap()
    }

    fn c(points: &[usize], n: usize) -> LiftedPermutation {
        cycle_lift(points, n).unwrap()
    }

    #[test]
    fn transposition_has_order_four() {
        let x = t(0, 1, 4);
        assert_eq!(x.order(), 4);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.central_sign(), Some(CentralSign::Minus));
        assert!(x.mul(&x.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_lift_matches_chain() {
        let lhs = c(&[0, 1, 2], 4);
        let rhs = t(0, 1, 4).mul(&t(1, 2, 4)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.base(), &Permutation::cycle(4, &[0, 1, 2]));
        // length-2 cycle is a transposition lift
        assert_eq!(c(&[2, 3], 4), t(2, 3, 4));
    }

    #[test]
    fn three_cycle_cubed_is_central_minus() {
        let x = c(&[0, 1, 2], 4);
        let cube = x.mul(&x).unwrap().mul(&x).unwrap();
        assert_eq!(cube.central_sign(), Some(CentralSign::Minus));
        assert_eq!(x.order(), 6);
        assert_eq!(x.negate().order(), 3);
    }

    #[test]
    fn disjoint_cycles_anticommute() {
        let a = t(1, 2, 5);
        let b = t(3, 4, 5);
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, ba.negate());
    }

    #[test]
    fn conjugation_examples() {
        // [1 2]^{(3 4)} = -[1 2]: disjoint odd conjugator flips the sign.
        let x = t(1, 2, 5);
        let g = Permutation::transposition(5, 3, 4);
        assert_eq!(conjugate_by_permutation(&g, &x).unwrap(), x.negate());
        // [1 2]^{(1 2 3)} = [2 3]: even conjugator relabels with no sign.
        let g = Permutation::cycle(5, &[1, 2, 3]);
        assert_eq!(conjugate_by_permutation(&g, &x).unwrap(), t(2, 3, 5));
        // identity conjugator
        let id = Permutation::identity(5);
        assert_eq!(conjugate_by_permutation(&id, &x).unwrap(), x);
    }

    #[test]
    fn central_element_properties() {
        let m = LiftedPermutation::central_minus_one(4);
        assert_eq!(m.order(), 2);
        let x = c(&[0, 2, 3], 4);
        assert_eq!(m.mul(&x).unwrap(), x.mul(&m).unwrap());
        assert_eq!(m.mul(&x).unwrap(), x.negate());
    }

    #[test]
    fn embed_odd_fix_examples() {
        let n = 6;
        // even element is unchanged
        let even = c(&[0, 1, 2], n);
        assert_eq!(embed_odd_fix(&even, 4, 5).unwrap(), even);
        // odd element picks up [i j]
        let odd = t(0, 1, n);
        let img = embed_odd_fix(&odd, 4, 5).unwrap();
        assert_eq!(img, odd.mul(&t(4, 5, n)).unwrap());
        assert!(!img.parity_odd());
        // moving a marked point is an error
        assert!(matches!(embed_odd_fix(&odd, 1, 5, ), Err(GroupError::MovesMarkedPoint(1))));
    }

    #[test]
    fn canonical_lift_round_trip() {
        let p = Permutation::from_images(vec![1, 0, 3, 2]).unwrap();
        let l = canonical_lift(&p);
        assert_eq!(l, t(0, 1, 4).mul(&t(2, 3, 4)).unwrap());
        assert_eq!(l.base(), &p);
        assert!(canonical_lift(&Permutation::identity(4)).is_identity());
    }

    #[test]
    fn spinor_unit_invariant() {
        for x in enumerate_cover(4, false).unwrap() {
            assert!(x.check_spinor_unit(), "spinor unit failed for {x}");
        }
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(enumerate_cover(4, true).unwrap().len(), 24);
        assert_eq!(enumerate_cover(4, false).unwrap().len(), 48);
        assert_eq!(enumerate_cover(5, true).unwrap().len(), 120);
        assert!(enumerate_cover(7, false).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(format!("{}", t(0, 1, 4)), "+[0 1]");
        assert_eq!(format!("{}", t(0, 1, 4).negate()), "-[0 1]");
        assert_eq!(format!("{}", LiftedPermutation::identity(3)), "+1");
        assert_eq!(format!("{}", LiftedPermutation::central_minus_one(3)), "-1");
        assert_eq!(format!("{}", t(0, 1, 5).mul(&t(2, 3, 5)).unwrap()), "+[0 1][2 3]");
    }

    #[test]
    fn embed_odd_fix_is_a_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        // random rank-6 elements fixing the marked points 4 and 5
        let random_fixing = |rng: &mut rand::rngs::StdRng| {
            let mut images: Vec<usize> = (0..4).collect();
            for i in (1..4).rev() {
                let j = rng.gen_range(0..=i);
                images.swap(i, j);
            }
            images.push(4);
            images.push(5);
            let lift = canonical_lift(&Permutation::from_images(images).unwrap());
            if rng.gen_bool(0.5) {
                lift.negate()
            } else {
                lift
            }
        };
        for _ in 0..200 {
            let x = random_fixing(&mut rng);
            let y = random_fixing(&mut rng);
            let lhs = embed_odd_fix(&x.mul(&y).unwrap(), 4, 5).unwrap();
            let rhs = embed_odd_fix(&x, 4, 5)
                .unwrap()
                .mul(&embed_odd_fix(&y, 4, 5).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            assert!(!embed_odd_fix(&x, 4, 5).unwrap().parity_odd());
        }
    }

    #[test]
    fn canonical_lift_projects_back() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                images.swap(i, j);
            }
            let p = Permutation::from_images(images).unwrap();
            let lift = canonical_lift(&p);
            assert_eq!(lift.base(), &p);
            assert!(lift.check_spinor_unit());
        }
    }

    #[test]
    fn five_cycle_orders() {
        let x = c(&[0, 1, 2, 3, 4], 5);
        let o = x.order();
        assert!(o == 5 || o == 10);
        assert!(x.negate().order() == 5 || x.negate().order() == 10);
        assert_ne!(x.order(), x.negate().order());
    }
}
