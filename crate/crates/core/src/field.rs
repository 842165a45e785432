//! Prime-field coefficients.

use core::fmt;

use crate::error::AlgebraError;

/// An element of `F_p`, stored as its residue in `[0, p)`.
///
/// The modulus lives in the ambient [`PrimeField`]; elements on their own do
/// not know which field they belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const F2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if is_prime(p) && p < (1 << 16) {
            Ok(PrimeField { p })
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn element(self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.element(t0))
    }

    #[inline]
    pub fn div(self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::F2
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 13, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let a = FieldElement(a);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            assert_eq!(f.inv(FieldElement::ZERO), None);
        }
    }

    #[test]
    fn signed_embedding() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.element(-1).value(), 4);
        assert_eq!(f.element(12).value(), 2);
        assert_eq!(f.sub(f.element(1), f.element(3)).value(), 3);
    }
}
