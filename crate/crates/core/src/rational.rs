//! Reduced integer fractions with exact comparisons.
//!
//! The carrier for conditional expectations, attributions, and importance
//! scores. Magnitudes stay small here — denominators divide m!·2^m for the
//! arities this crate accepts — so a reduced i64/i64 pair suffices, with all
//! intermediate products widened to i128 so no operation can silently wrap.
//! A result that does not fit back into i64 is a violated invariant and
//! panics rather than returning a wrong value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact rational number. Always reduced, denominator always positive.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Self::reduced(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    /// Reduces a wide fraction and narrows it back to the i64 carrier.
    pub(crate) fn reduced(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = match gcd(num, den) {
            0 => 1, // num == 0; keep den 1 below
            g => g,
        };
        let (num, den) = if num == 0 {
            (0, 1)
        } else {
            (sign * num / g, sign * den / g)
        };
        Rational {
            num: i64::try_from(num).expect("reduced numerator exceeds i64"),
            den: i64::try_from(den).expect("reduced denominator exceeds i64"),
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Rational::reduced(num, self.den as i128 * rhs.den as i128)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational::reduced(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
