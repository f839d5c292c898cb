//! Exact dyadic rationals `a / 2^n` in the closed unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported exponent; `2^127` still fits a `u128` numerator.
pub const MAX_EXPONENT: u32 = 127;

/// A dyadic rational `numerator / 2^exponent` with `0 <= value <= 1`.
///
/// Always stored in lowest terms: the numerator is odd, or the value is
/// zero (`0/2^0`) or one (`1/2^0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dyadic {
    numerator: u128,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        numerator: 0,
        exponent: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        numerator: 1,
        exponent: 0,
    };

    pub fn new(numerator: u128, exponent: u32) -> Result<Self> {
        if exponent > MAX_EXPONENT {
            // Reducing first may still bring it into range.
            let tz = numerator.trailing_zeros().min(exponent);
            if numerator == 0 {
                return Ok(Self::ZERO);
            }
            if exponent - tz > MAX_EXPONENT {
                return Err(Error::ExponentOverflow(exponent - tz));
            }
            return Self::new(numerator >> tz, exponent - tz);
        }
        if numerator > 1u128 << exponent {
            return Err(Error::Domain(format!(
                "{numerator}/2^{exponent} is greater than 1"
            )));
        }
        if numerator == 0 {
            return Ok(Self::ZERO);
        }
        let tz = numerator.trailing_zeros().min(exponent);
        Ok(Dyadic {
            numerator: numerator >> tz,
            exponent: exponent - tz,
        })
    }

    /// `2^-n`.
    pub fn pow2_neg(n: u32) -> Result<Self> {
        Self::new(1, n)
    }

    /// Every finite `f64` in `[0, 1]` is a dyadic rational; this recovers it exactly.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("{x} is not in [0, 1]")));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        let bits = x.to_bits();
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp_field == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        let tz = mant.trailing_zeros() as i64;
        let mant = mant >> tz;
        let e = e + tz;
        if e >= 0 {
            // Only x == 1 lands here.
            return Self::new((mant as u128) << e, 0);
        }
        let n = (-e) as u32;
        if n > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(n));
        }
        Self::new(mant as u128, n)
    }

    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn is_one(&self) -> bool {
        self.numerator == 1 && self.exponent == 0
    }

    pub fn to_f64(&self) -> f64 {
        // Exact for numerators below 2^53; otherwise correctly rounded by the cast.
        (self.numerator as f64) * (-(self.exponent as f64)).exp2()
    }

    /// Numerators of both values over the common denominator `2^e`.
    fn aligned(&self, other: &Dyadic) -> (u128, u128, u32) {
        let e = self.exponent.max(other.exponent);
        (
            self.numerator << (e - self.exponent),
            other.numerator << (e - other.exponent),
            e,
        )
    }

    pub fn checked_add(&self, other: &Dyadic) -> Result<Dyadic> {
        let (a, b, e) = self.aligned(other);
        let sum = a
            .checked_add(b)
            .ok_or_else(|| Error::Domain("dyadic sum exceeds 1".into()))?;
        Dyadic::new(sum, e)
    }

    pub fn checked_sub(&self, other: &Dyadic) -> Result<Dyadic> {
        let (a, b, e) = self.aligned(other);
        let diff = a
            .checked_sub(b)
            .ok_or_else(|| Error::Domain("dyadic difference is negative".into()))?;
        Dyadic::new(diff, e)
    }

    /// The terminating binary digits `a_1 .. a_n` with `a_n = 1`.
    ///
    /// Empty for zero and for one (which has no terminating fractional
    /// expansion; use the canonical stream `0.111...` instead).
    pub fn terminating_digits(&self) -> Vec<u8> {
        let n = self.exponent;
        (1..=n)
            .map(|j| ((self.numerator >> (n - j)) & 1) as u8)
            .collect()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `a/2^n`, `a/2**n` and plain `a/b` with `b` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected a/2^n, got {s:?}")))?;
        let num: u128 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den = den.trim();
        let exp = if let Some(e) = den.strip_prefix("2^").or_else(|| den.strip_prefix("2**")) {
            e.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?
        } else {
            let d: u128 = den
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d == 0 || !d.is_power_of_two() {
                return Err(Error::Parse(format!("{d} is not a power of two")));
            }
            d.trailing_zeros()
        };
        Dyadic::new(num, exp)
    }
}
