//! Arithmetic in `F_q` for the Mersenne prime `q = 2^61 - 1`.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use serde::{Deserialize, Serialize};

/// The field modulus `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

/// An element of `F_q`, always stored reduced.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(u64);

#[inline(always)]
fn reduce128(x: u128) -> u64 {
    // x < q^2, so hi < 2^61 - 1 and lo + hi < 2q.
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    let s = lo + hi;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Reduces an arbitrary `u64`.
    pub fn new(value: u64) -> Self {
        let s = (value & MODULUS) + (value >> 61);
        Fq(if s >= MODULUS { s - MODULUS } else { s })
    }

    /// Maps a signed integer to its residue.
    pub fn from_i64(value: i64) -> Self {
        if value >= 0 {
            Fq::new(value as u64)
        } else {
            -Fq::new(value.unsigned_abs())
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fq::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }

    /// Uniform element of `F_q`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fq(rng.gen_range(0..MODULUS))
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fq {
    type Output = Fq;
    #[inline(always)]
    fn add(self, rhs: Fq) -> Fq {
        let s = self.0 + rhs.0;
        Fq(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fq {
    type Output = Fq;
    #[inline(always)]
    fn sub(self, rhs: Fq) -> Fq {
        if self.0 >= rhs.0 {
            Fq(self.0 - rhs.0)
        } else {
            Fq(self.0 + MODULUS - rhs.0)
        }
    }
}

impl Neg for Fq {
    type Output = Fq;
    #[inline(always)]
    fn neg(self) -> Fq {
        if self.0 == 0 {
            self
        } else {
            Fq(MODULUS - self.0)
        }
    }
}

impl Mul for Fq {
    type Output = Fq;
    #[inline(always)]
    fn mul(self, rhs: Fq) -> Fq {
        Fq(reduce128(self.0 as u128 * rhs.0 as u128))
    }
}

impl AddAssign for Fq {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Fq) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq {
    #[inline(always)]
    fn sub_assign(&mut self, rhs: Fq) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: Fq) {
        *self = *self * rhs;
    }
}

/// `dst[k] -= factor * src[k]` over the whole slice.
#[inline]
pub(crate) fn sub_scaled(dst: &mut [Fq], src: &[Fq], factor: Fq) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d -= factor * s;
    }
}

/// `dst[k] += factor * src[k]` over the whole slice.
#[inline]
pub(crate) fn add_scaled(dst: &mut [Fq], src: &[Fq], factor: Fq) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += factor * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % MODULUS as u128) as u64
    }

    #[test]
    fn edge_values() {
        let top = Fq::new(MODULUS - 1);
        assert_eq!(top * top, Fq::ONE);
        assert_eq!(top + Fq::ONE, Fq::ZERO);
        assert_eq!(Fq::new(MODULUS), Fq::ZERO);
        assert_eq!(Fq::new(u64::MAX).value(), u64::MAX % MODULUS);
        assert_eq!(Fq::from_i64(-1), top);
        assert_eq!(Fq::ZERO.inverse(), None);
    }

    proptest! {
        #[test]
        fn mul_matches_u128(a in 0..MODULUS, b in 0..MODULUS) {
            prop_assert_eq!((Fq(a) * Fq(b)).value(), naive_mul(a, b));
        }

        #[test]
        fn inverse_roundtrip(a in 1..MODULUS) {
            let x = Fq(a);
            prop_assert_eq!(x * x.inverse().unwrap(), Fq::ONE);
        }

        #[test]
        fn sub_then_add(a in 0..MODULUS, b in 0..MODULUS) {
            prop_assert_eq!(Fq(a) - Fq(b) + Fq(b), Fq(a));
            prop_assert_eq!(Fq(a) + (-Fq(b)), Fq(a) - Fq(b));
        }
    }
}
