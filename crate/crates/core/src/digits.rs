//! Eventually periodic binary expansions of points in `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Binary digits `a_1 a_2 ...` written as a finite prefix followed by a
/// repeating cycle.
///
/// The representation is normalized on construction (shortest cycle, shortest
/// prefix), so two streams are equal exactly when they list the same digits.
/// A terminating expansion has cycle `0`; the canonical form of a nonzero
/// dyadic instead ends in the cycle `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitStream {
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

impl DigitStream {
    pub fn new(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Parse("digit cycle must be nonempty".into()));
        }
        if prefix.iter().chain(&cycle).any(|&d| d > 1) {
            return Err(Error::Parse("binary digits must be 0 or 1".into()));
        }
        let mut s = DigitStream { prefix, cycle };
        s.normalize();
        Ok(s)
    }

    /// Finite digit list followed by zeros.
    pub fn terminating(digits: Vec<u8>) -> Result<Self> {
        Self::new(digits, vec![0])
    }

    /// Canonical expansion of a dyadic: non-terminating for every nonzero value.
    pub fn from_dyadic(d: &Dyadic) -> Result<Self> {
        if d.is_one() {
            return Self::new(vec![], vec![1]);
        }
        Self::terminating(d.terminating_digits())?.canonicalize()
    }

    /// Exact expansion of `num / den` by long division; canonicalized.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Domain(format!("{num}/{den} is not in [0, 1]")));
        }
        if num == 0 {
            return Err(Error::ZeroValue);
        }
        if num == den {
            return Self::new(vec![], vec![1]);
        }
        let den = den as u128;
        let mut rem = num as u128;
        let mut seen = std::collections::HashMap::new();
        let mut digits = Vec::new();
        while !seen.contains_key(&rem) {
            seen.insert(rem, digits.len());
            rem *= 2;
            if rem >= den {
                digits.push(1);
                rem -= den;
            } else {
                digits.push(0);
            }
        }
        let start = seen[&rem];
        let cycle = digits.split_off(start);
        Self::new(digits, cycle)?.canonicalize()
    }

    fn normalize(&mut self) {
        // Minimal period.
        let n = self.cycle.len();
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]) {
                self.cycle.truncate(p);
                break;
            }
        }
        // Absorb prefix digits that already continue the cycle backwards.
        while let Some(&last) = self.prefix.last() {
            if last != *self.cycle.last().unwrap() {
                break;
            }
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u8] {
        &self.cycle
    }

    /// Digit `a_j`, 1-based.
    pub fn digit(&self, j: usize) -> u8 {
        assert!(j >= 1, "digits are 1-based");
        let i = j - 1;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> + '_ {
        (1..).map(move |j| self.digit(j))
    }

    pub fn is_zero(&self) -> bool {
        self.cycle == [0] && self.prefix.is_empty()
    }

    /// Canonical streams never end in an all-zero cycle.
    pub fn is_canonical(&self) -> bool {
        self.cycle != [0]
    }

    /// Rewrites a terminating `...1 0 0 0...` as `...0 1 1 1...`; idempotent.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.is_canonical() {
            return Ok(self.clone());
        }
        // After normalization a terminating stream has no trailing zeros in the prefix.
        let mut prefix = self.prefix.clone();
        match prefix.pop() {
            None => Err(Error::ZeroValue),
            Some(_) => {
                prefix.push(0);
                Self::new(prefix, vec![1])
            }
        }
    }

    /// True when the expansion ends in a constant cycle, i.e. the value is dyadic.
    pub fn is_eventually_constant(&self) -> bool {
        self.cycle.len() == 1
    }

    /// Exact dyadic value when the stream is eventually constant.
    pub fn to_dyadic(&self) -> Option<Dyadic> {
        if !self.is_eventually_constant() {
            return None;
        }
        let l = self.prefix.len() as u32;
        let mut num: u128 = 0;
        for &d in &self.prefix {
            num = num.checked_mul(2)? + d as u128;
        }
        if self.cycle[0] == 1 {
            // prefix + 2^-l
            num = num.checked_add(1)?;
        }
        Dyadic::new(num, l).ok()
    }

    /// `sum_j a_j 2^-j` in binary64 (error below `2^-60`).
    pub fn value_f64(&self) -> f64 {
        self.scaled_tail(1) * 0.5
    }

    /// `sum_{i >= d} a_i 2^{d-i}`, the value of the stream read from digit `d`
    /// with `a_d` in the units place.
    pub fn scaled_tail(&self, d: usize) -> f64 {
        let mut acc = 0.0;
        for i in (d..d + 64).rev() {
            acc = acc * 0.5 + self.digit(i) as f64;
        }
        acc
    }

    /// Position of the `count`-th zero digit (1-based), if any.
    pub fn nth_zero(&self, count: usize, limit: usize) -> Option<usize> {
        let mut seen = 0;
        for j in 1..=limit {
            if self.digit(j) == 0 {
                seen += 1;
                if seen == count {
                    return Some(j);
                }
            }
        }
        None
    }
}

impl fmt::Display for DigitStream {
    /// `0.<prefix>(<cycle>)`, e.g. `0.0(1)` for one half.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        write!(f, "(")?;
        for d in &self.cycle {
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for DigitStream {
    type Err = Error;

    /// Parses `0.0111...` (trailing `...` repeats the last digit),
    /// `0.(01)` / `0.0(1)` (explicit cycle) or `0.101` (terminating).
    /// The result is not canonicalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix("0.")
            .or_else(|| s.strip_prefix('.'))
            .ok_or_else(|| Error::Parse(format!("binary expansion must start with 0.: {s:?}")))?;
        let bits = |t: &str| -> Result<Vec<u8>> {
            t.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::Parse(format!(
                        "unexpected {c:?} in binary expansion"
                    ))),
                })
                .collect()
        };
        if let Some(open) = body.find('(') {
            let close = body
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let prefix = bits(&close[..open])?;
            let cycle = bits(&close[open + 1..])?;
            return DigitStream::new(prefix, cycle);
        }
        if let Some(head) = body.strip_suffix("...") {
            let mut prefix = bits(head)?;
            let last = prefix
                .pop()
                .ok_or_else(|| Error::Parse("'...' needs a digit to repeat".into()))?;
            return DigitStream::new(prefix, vec![last]);
        }
        DigitStream::terminating(bits(body)?)
    }
}
