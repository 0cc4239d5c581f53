//! Arithmetic in the prime field F_p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field F_p with `2 <= p < 2^31`.
///
/// Elements are plain `u32` residues in `[0, p)`; the field only carries the
/// modulus and performs the arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

impl Field {
    /// Builds F_p, rejecting composite or out-of-range moduli.
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::InvalidField(p));
        }
        let mut d = 2u64;
        while d * d <= p as u64 {
            if (p as u64).is_multiple_of(d) {
                return Err(Error::InvalidField(p));
            }
            d += 1;
        }
        Ok(Field { p })
    }

    pub const fn f2() -> Self {
        Field { p: 2 }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    /// Multiplies by an orientation sign in {-1, 0, +1}.
    #[inline]
    pub fn signed(self, sign: i8, a: u32) -> u32 {
        match sign {
            0 => 0,
            s if s > 0 => a,
            _ => self.neg(a),
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::f2()
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_small_moduli() {
        assert!(Field::new(0).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(4).is_err());
        assert!(Field::new(91).is_err());
        assert!(Field::new(2).is_ok());
        assert!(Field::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 101] {
            let f = Field::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn signs() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.signed(-1, 2), 3);
        assert_eq!(f.signed(1, 2), 2);
        assert_eq!(f.signed(0, 2), 0);
        assert_eq!(f.from_i64(-7), 3);
    }
}
