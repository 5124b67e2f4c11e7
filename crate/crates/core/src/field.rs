//! Arithmetic in a prime field `F_p`.
//!
//! Elements are plain `u64` residues in `[0, p)`; the [`Field`] value carries
//! the modulus and performs every operation. The default prime is the
//! Mersenne prime `2^31 - 1`, so products of two residues fit in a `u64`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A prime field `Z/pZ` with `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Field {
    p: u64,
}

/// A residue tagged with its modulus, for callers that want a self-contained value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: Field,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_p`, rejecting composite moduli and moduli of 2^32 or more.
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1u64 << 32) {
            return Err(Error::Input(format!("prime {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.from_i64(v),
            field: *self,
        }
    }
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn field(&self) -> Field {
        self.field
    }
    fn check(&self, o: &FieldElement) {
        assert_eq!(self.field, o.field, "mixed fields");
    }
    pub fn inv(&self) -> FieldElement {
        FieldElement {
            value: self.field.inv(self.value),
            field: self.field,
        }
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        self.check(&o);
        FieldElement {
            value: self.field.add(self.value, o.value),
            field: self.field,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        self.check(&o);
        FieldElement {
            value: self.field.sub(self.value, o.value),
            field: self.field,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        self.check(&o);
        FieldElement {
            value: self.field.mul(self.value, o.value),
            field: self.field,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::new(15).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(101).is_ok());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::default();
        for a in [1u64, 2, 3, 12345, DEFAULT_PRIME - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn signed_repr() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.to_signed(6), -1);
        assert_eq!(f.to_signed(3), 3);
        assert_eq!(f.from_i64(-3), 4);
    }

    #[test]
    fn element_ops() {
        let f = Field::new(11).unwrap();
        let a = f.elem(4);
        let b = f.elem(9);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 6);
        assert_eq!((a * b).value(), 3);
        assert_eq!((a * a.inv()).value(), 1);
        assert_eq!((-a).value(), 7);
    }
}
