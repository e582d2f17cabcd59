//! Exact quaternions over a fixed quadratic field Q(√d).

use std::fmt;

use super::scalar::{QuadraticScalar, ScalarError};

/// r + x i + y j + z k with components in one Q(√d).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub r: QuadraticScalar,
    pub x: QuadraticScalar,
    pub y: QuadraticScalar,
    pub z: QuadraticScalar,
}

impl Quaternion {
    pub fn new(
        r: QuadraticScalar,
        x: QuadraticScalar,
        y: QuadraticScalar,
        z: QuadraticScalar,
    ) -> Result<Self, ScalarError> {
        let d = r.radicand();
        for c in [&x, &y, &z] {
            if c.radicand() != d {
                return Err(ScalarError::MixedRadicands(d, c.radicand()));
            }
        }
        Ok(Quaternion { r, x, y, z })
    }

    pub fn from_ints(d: u32, r: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion {
            r: QuadraticScalar::from_int(d, r),
            x: QuadraticScalar::from_int(d, x),
            y: QuadraticScalar::from_int(d, y),
            z: QuadraticScalar::from_int(d, z),
        }
    }

    pub fn one(d: u32) -> Self {
        Self::from_ints(d, 1, 0, 0, 0)
    }

    pub fn radicand(&self) -> u32 {
        self.r.radicand()
    }

    /// Hamilton product, exact.
    pub fn mul(&self, q: &Quaternion) -> Result<Quaternion, ScalarError> {
        if self.radicand() != q.radicand() {
            return Err(ScalarError::MixedRadicands(self.radicand(), q.radicand()));
        }
        let (a1, b1, c1, d1) = (&self.r, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&q.r, &q.x, &q.y, &q.z);
        let r = a1
            .mul(a2)?
            .sub(&b1.mul(b2)?)?
            .sub(&c1.mul(c2)?)?
            .sub(&d1.mul(d2)?)?;
        let x = a1
            .mul(b2)?
            .add(&b1.mul(a2)?)?
            .add(&c1.mul(d2)?)?
            .sub(&d1.mul(c2)?)?;
        let y = a1
            .mul(c2)?
            .sub(&b1.mul(d2)?)?
            .add(&c1.mul(a2)?)?
            .add(&d1.mul(b2)?)?;
        let z = a1
            .mul(d2)?
            .add(&b1.mul(c2)?)?
            .sub(&c1.mul(b2)?)?
            .add(&d1.mul(a2)?)?;
        Ok(Quaternion { r, x, y, z })
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion { r: self.r.neg(), x: self.x.neg(), y: self.y.neg(), z: self.z.neg() }
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion { r: self.r.clone(), x: self.x.neg(), y: self.y.neg(), z: self.z.neg() }
    }

    /// Coordinatewise Galois conjugate √d ↦ -√d.
    pub fn galois(&self) -> Quaternion {
        Quaternion {
            r: self.r.conjugate(),
            x: self.x.conjugate(),
            y: self.y.conjugate(),
            z: self.z.conjugate(),
        }
    }

    pub fn norm(&self) -> Result<QuadraticScalar, ScalarError> {
        self.r
            .mul(&self.r)?
            .add(&self.x.mul(&self.x)?)?
            .add(&self.y.mul(&self.y)?)?
            .add(&self.z.mul(&self.z)?)
    }

    pub fn inverse(&self) -> Result<Quaternion, ScalarError> {
        let n = self.norm()?;
        let c = self.conjugate();
        Ok(Quaternion {
            r: c.r.div(&n)?,
            x: c.x.div(&n)?,
            y: c.y.div(&n)?,
            z: c.z.div(&n)?,
        })
    }

    pub fn is_one(&self) -> bool {
        *self == Quaternion::one(self.radicand())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i + ({})j + ({})k", self.r, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(d: u32) -> (Quaternion, Quaternion, Quaternion, Quaternion) {
        (
            Quaternion::one(d),
            Quaternion::from_ints(d, 0, 1, 0, 0),
            Quaternion::from_ints(d, 0, 0, 1, 0),
            Quaternion::from_ints(d, 0, 0, 0, 1),
        )
    }

    #[test]
    fn hamilton_identities() {
        let (one, i, j, k) = basis(2);
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&k).unwrap(), i);
        assert_eq!(k.mul(&i).unwrap(), j);
        assert_eq!(i.mul(&i).unwrap(), one.neg());
        assert_eq!(i.mul(&j).unwrap().mul(&k).unwrap(), one.neg());
    }

    #[test]
    fn eighth_root() {
        // ((1+i)/√2)⁴ = -1 by repeated multiplication.
        let h = QuadraticScalar::new(2, 0, 1, 2); // 1/√2 = √2/2
        let q = Quaternion::new(h.clone(), h, QuadraticScalar::zero(2), QuadraticScalar::zero(2))
            .unwrap();
        let mut p = Quaternion::one(2);
        for _ in 0..4 {
            p = p.mul(&q).unwrap();
        }
        assert_eq!(p, Quaternion::one(2).neg());
        assert!(q.norm().unwrap() == QuadraticScalar::one(2));
    }

    #[test]
    fn sixth_root_cubed() {
        // ((-1+i+j+k)/2)³ = 1 by direct expansion.
        let half = QuadraticScalar::new(2, 1, 0, 2);
        let mhalf = half.neg();
        let q = Quaternion::new(mhalf, half.clone(), half.clone(), half).unwrap();
        let q3 = q.mul(&q).unwrap().mul(&q).unwrap();
        assert!(q3.is_one());
    }

    #[test]
    fn norm_multiplicative() {
        let p = Quaternion::from_ints(5, 1, 2, -3, 4);
        let q = Quaternion::from_ints(5, -2, 0, 1, 7);
        let lhs = p.mul(&q).unwrap().norm().unwrap();
        let rhs = p.norm().unwrap().mul(&q.norm().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn radicand_mismatch() {
        let p = Quaternion::one(2);
        let q = Quaternion::one(5);
        assert!(p.mul(&q).is_err());
    }
}
