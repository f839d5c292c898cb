//! Truncated asymptotic expansions in `1/m` and the Euler–Maclaurin
//! expansion of Hurwitz zeta at integer arguments.

use crate::error::{Error, Result};

/// Highest power of `1/m` kept in an expansion.
pub(crate) const ORDER: usize = 40;

/// `B_{2i} / (2i)!` for `i = 0..=20`.
fn bernoulli_over_factorial() -> &'static [f64; 21] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; 21]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Even Bernoulli numbers B_0, B_2, ..., B_40.
        const B: [(f64, f64); 21] = [
            (1.0, 1.0),
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
            (-7709321041217.0, 510.0),
            (2577687858367.0, 6.0),
            (-26315271553053477373.0, 1919190.0),
            (2929993913841559.0, 6.0),
            (-261082718496449122051.0, 13530.0),
        ];
        let mut out = [0.0; 21];
        let mut fact = 1.0f64;
        for (i, &(num, den)) in B.iter().enumerate() {
            if i > 0 {
                fact *= (2 * i - 1) as f64 * (2 * i) as f64;
            }
            out[i] = num / den / fact;
        }
        out
    })
}

/// `sum_{p=0}^{ORDER} c_p m^{-p}`, valid for `m` beyond some cutoff.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct AsymSeries {
    coeffs: [f64; ORDER + 1],
}

impl AsymSeries {
    pub fn zero() -> Self {
        AsymSeries {
            coeffs: [0.0; ORDER + 1],
        }
    }

    /// `c * m^{-p}`; vanishes when `p` is beyond the kept order.
    pub fn monomial(p: usize, c: f64) -> Self {
        let mut s = Self::zero();
        if p <= ORDER {
            s.coeffs[p] = c;
        }
        s
    }

    #[cfg(test)]
    pub fn coeff(&self, p: usize) -> f64 {
        self.coeffs[p]
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0.0)
    }

    pub fn eval(&self, m: f64) -> f64 {
        let x = m.recip();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut s = self.clone();
        s.coeffs.iter_mut().for_each(|c| *c *= k);
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            return out;
        };
        for i in va..=ORDER {
            let a = self.coeffs[i];
            if a == 0.0 {
                continue;
            }
            for j in vb..=ORDER - i {
                out.coeffs[i + j] += a * other.coeffs[j];
            }
        }
        out
    }

    /// `m * f(m)`; needs a vanishing constant term.
    pub fn mul_m(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::Divergent("m * f(m) with f(m) -> const".into()));
        }
        let mut out = Self::zero();
        out.coeffs[..ORDER].copy_from_slice(&self.coeffs[1..]);
        Ok(out)
    }

    /// `exp(f)` for `f` with a vanishing constant term.
    pub fn exp(&self) -> Self {
        debug_assert_eq!(self.coeffs[0], 0.0);
        let mut e = Self::zero();
        e.coeffs[0] = 1.0;
        for n in 1..=ORDER {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += k as f64 * self.coeffs[k] * e.coeffs[n - k];
            }
            e.coeffs[n] = acc / n as f64;
        }
        e
    }

    /// Expansion of the suffix sum `sum_{n >= m} f(n)`.
    ///
    /// Every power present must be at least 2, otherwise the sum diverges.
    pub fn suffix_sum(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if p < 2 {
                return Err(Error::Divergent(format!(
                    "summand decays like m^-{p}, not summable"
                )));
            }
            out = out.add(&hurwitz_series(p).scale(c));
        }
        Ok(out)
    }
}

/// Euler–Maclaurin expansion of `zeta(s, m) = sum_{n >= m} n^{-s}` in powers of `1/m`:
///
/// `m^{1-s}/(s-1) + m^{-s}/2 + sum_i B_{2i}/(2i)! * s(s+1)...(s+2i-2) * m^{-s-2i+1}`.
pub(crate) fn hurwitz_series(s: usize) -> AsymSeries {
    assert!(s >= 2, "Hurwitz zeta needs s >= 2");
    let b = bernoulli_over_factorial();
    let mut out = AsymSeries::zero();
    if s - 1 > ORDER {
        return out;
    }
    out.coeffs[s - 1] = 1.0 / (s - 1) as f64;
    if s <= ORDER {
        out.coeffs[s] = 0.5;
    }
    let mut rising = s as f64; // s(s+1)...(s+2i-2)
    for (i, &bi) in b.iter().enumerate().skip(1) {
        let p = s + 2 * i - 1;
        if p > ORDER {
            break;
        }
        out.coeffs[p] = bi * rising;
        rising *= (s + 2 * i - 1) as f64 * (s + 2 * i) as f64;
    }
    out
}

/// Argument beyond which the truncated Euler–Maclaurin expansion is used directly.
const HURWITZ_SWITCH: f64 = 40.0;

/// `zeta(s, x) = sum_{n >= 0} (x + n)^{-s}` for integer `s >= 2` and real `x > 0`.
pub fn hurwitz_zeta(s: u32, x: f64) -> f64 {
    assert!(s >= 2 && x > 0.0);
    let mut head = 0.0;
    let mut comp = 0.0;
    let mut x = x;
    let mut direct = Vec::new();
    while x < HURWITZ_SWITCH {
        direct.push(x.powi(-(s as i32)));
        x += 1.0;
    }
    // Smallest terms first.
    let tail = hurwitz_series(s as usize).eval(x);
    for t in std::iter::once(tail).chain(direct.into_iter().rev()) {
        let y = t - comp;
        let sum = head + y;
        comp = (sum - head) - y;
        head = sum;
    }
    head
}

/// Riemann zeta at an integer `s >= 2`.
pub fn zeta(s: u32) -> f64 {
    hurwitz_zeta(s, 1.0)
}
