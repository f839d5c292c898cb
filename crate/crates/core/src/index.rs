//! Indices `(k_1, k_2, ...)` of finite or eventually periodic length, and
//! their encoding as points `sum_j 2^-(k_1 + ... + k_j)` of the unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digits::DigitStream;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// What follows the explicit prefix of an index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    /// The index ends after the prefix.
    Finite,
    /// `{l}^inf`.
    Constant(u32),
    /// `{block}^inf`; never a single entry after normalization.
    Periodic(Vec<u32>),
}

/// An index with positive integer entries.
///
/// Indices are normalized on construction: a periodic block is reduced to its
/// minimal period, prefix entries that merely continue the block are folded
/// into it, and one-entry blocks become [`Tail::Constant`]. Two indices are
/// therefore equal exactly when they are the same sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Index {
    prefix: Vec<u32>,
    tail: Tail,
}

impl Index {
    pub fn new(prefix: Vec<u32>, tail: Tail) -> Result<Self> {
        let entries_ok = match &tail {
            Tail::Finite => true,
            Tail::Constant(l) => *l >= 1,
            Tail::Periodic(b) => !b.is_empty() && b.iter().all(|&k| k >= 1),
        };
        if !entries_ok || prefix.iter().any(|&k| k == 0) {
            return Err(Error::Inadmissible("index entries must be >= 1".into()));
        }
        if matches!(tail, Tail::Finite) && prefix.is_empty() {
            return Err(Error::Inadmissible("empty index".into()));
        }
        let mut idx = Index { prefix, tail };
        idx.normalize();
        Ok(idx)
    }

    pub fn finite(entries: Vec<u32>) -> Result<Self> {
        Self::new(entries, Tail::Finite)
    }

    pub fn constant_tail(prefix: Vec<u32>, l: u32) -> Result<Self> {
        Self::new(prefix, Tail::Constant(l))
    }

    pub fn periodic(prefix: Vec<u32>, block: Vec<u32>) -> Result<Self> {
        Self::new(prefix, Tail::Periodic(block))
    }

    fn normalize(&mut self) {
        let mut block = match &self.tail {
            Tail::Finite => return,
            Tail::Constant(l) => vec![*l],
            Tail::Periodic(b) => b.clone(),
        };
        let n = block.len();
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| block[i] == block[i - p]) {
                block.truncate(p);
                break;
            }
        }
        while let Some(&last) = self.prefix.last() {
            if last != *block.last().unwrap() {
                break;
            }
            self.prefix.pop();
            block.rotate_right(1);
        }
        self.tail = if block.len() == 1 {
            Tail::Constant(block[0])
        } else {
            Tail::Periodic(block)
        };
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Finite)
    }

    fn block(&self) -> &[u32] {
        match &self.tail {
            Tail::Finite => &[],
            Tail::Constant(l) => std::slice::from_ref(l),
            Tail::Periodic(b) => b,
        }
    }

    /// Entry `k_j` (1-based); `None` past the end of a finite index.
    pub fn entry(&self, j: usize) -> Option<u32> {
        let i = j.checked_sub(1)?;
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        let b = self.block();
        if b.is_empty() {
            None
        } else {
            Some(b[(i - self.prefix.len()) % b.len()])
        }
    }

    pub fn first(&self) -> u32 {
        self.entry(1).expect("indices are nonempty")
    }

    /// The same index with the first entry increased by one, `(k_1 + 1, k_2, ...)`.
    pub fn bump_first(&self) -> Index {
        let mut prefix = self.prefix.clone();
        let mut tail = self.tail.clone();
        if prefix.is_empty() {
            // Pull the first block entry out of the tail.
            let b = self.block().to_vec();
            prefix.push(b[0]);
            let mut rest = b;
            rest.rotate_left(1);
            tail = if rest.len() == 1 {
                Tail::Constant(rest[0])
            } else {
                Tail::Periodic(rest)
            };
        }
        prefix[0] += 1;
        Index::new(prefix, tail).expect("bumping keeps entries positive")
    }

    /// `true` for `(2, 1, 1, ...)`, the one infinite index whose star sum diverges.
    pub fn is_divergent(&self) -> bool {
        self.tail == Tail::Constant(1) && self.prefix == [2]
    }

    /// A convergent star sum needs a first entry of at least two.
    pub fn is_admissible(&self) -> bool {
        self.first() >= 2 && !self.is_divergent()
    }

    /// Rewrites `(..., k_s, {1}^inf)` with `k_s >= 2` as the finite index
    /// `(..., k_s - 1)`. Other indices are returned unchanged.
    pub fn fold_ones_tail(&self) -> Result<Index> {
        if self.tail != Tail::Constant(1) {
            return Ok(self.clone());
        }
        // After normalization the prefix does not end with 1.
        let mut prefix = self.prefix.clone();
        match prefix.last_mut() {
            None => Err(Error::Inadmissible("(1, 1, 1, ...)".into())),
            Some(k) => {
                *k -= 1;
                if prefix.len() == 1 && prefix[0] < 2 {
                    return Err(Error::Divergent("(2, 1, 1, ...)".into()));
                }
                Index::finite(prefix)
            }
        }
    }

    /// Binary digits with ones at positions `k_1, k_1 + k_2, ...`.
    ///
    /// Finite indices give terminating streams; infinite ones give canonical streams.
    pub fn to_digits(&self) -> DigitStream {
        fn push_entry(v: &mut Vec<u8>, k: u32) {
            v.extend(std::iter::repeat_n(0, k as usize - 1));
            v.push(1);
        }
        let mut prefix = Vec::new();
        for &k in &self.prefix {
            push_entry(&mut prefix, k);
        }
        let mut cycle = Vec::new();
        for &k in self.block() {
            push_entry(&mut cycle, k);
        }
        if cycle.is_empty() {
            cycle.push(0);
        }
        DigitStream::new(prefix, cycle).expect("digits are binary")
    }

    /// `sum_j 2^-(k_1 + ... + k_j)`.
    pub fn point(&self) -> PointValue {
        let digits = self.to_digits();
        match digits.to_dyadic() {
            Some(d) => PointValue::Dyadic(d),
            None => PointValue::Real(digits.value_f64()),
        }
    }

    /// Inverse of [`Index::to_digits`] on canonical streams.
    pub fn from_digits(d: &DigitStream) -> Result<Index> {
        if d.is_zero() {
            return Err(Error::ZeroValue);
        }
        if !d.is_canonical() {
            return Err(Error::NonCanonicalInput);
        }
        let mut prefix = Vec::new();
        let mut last_one = 0usize;
        for (i, &a) in d.prefix().iter().enumerate() {
            if a == 1 {
                prefix.push((i + 1 - last_one) as u32);
                last_one = i + 1;
            }
        }
        let l = d.prefix().len();
        let ones: Vec<usize> = d
            .cycle()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(i, _)| i + 1)
            .collect();
        let c = d.cycle().len();
        prefix.push((l + ones[0] - last_one) as u32);
        let mut block: Vec<u32> = ones.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        block.push((c + ones[0] - ones[ones.len() - 1]) as u32);
        Index::periodic(prefix, block)
    }

    /// Literal lexicographic comparison of the entry sequences.
    ///
    /// A finite sequence that is a proper prefix of the other compares `Less`.
    pub fn lex_compare(&self, other: &Index) -> Ordering {
        let head = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.block().len().max(1), other.block().len().max(1));
        for j in 1..=head + period {
            match (self.entry(j), other.entry(j)) {
                (Some(a), Some(b)) if a != b => return a.cmp(&b),
                (Some(_), Some(_)) => {}
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
            }
        }
        Ordering::Equal
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Value of an encoded point: exact where possible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PointValue {
    Dyadic(Dyadic),
    Real(f64),
}

impl PointValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PointValue::Dyadic(d) => d.to_f64(),
            PointValue::Real(x) => *x,
        }
    }
}

impl fmt::Display for Index {
    /// `2,1,(1)` style: prefix, then the repeating block in parentheses,
    /// or a trailing `!` for a finite index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.tail {
            Tail::Finite => write!(f, "{}!", join(&self.prefix)),
            _ if self.prefix.is_empty() => write!(f, "({})", join(self.block())),
            _ => write!(f, "{},({})", join(&self.prefix), join(self.block())),
        }
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Accepts `2,1,1,({1})`, `3,(2)`, `(2,1)`, `4!` and plain `3,1`
    /// (read as finite).
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let entries = |t: &str| -> Result<Vec<u32>> {
            t.split(',')
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad index entry {p:?}")))
                })
                .collect()
        };
        if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed block in {s:?}")))?;
            let inner = inner
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .unwrap_or(inner);
            let prefix = entries(&s[..open])?;
            let block = entries(inner)?;
            if block.is_empty() {
                return Err(Error::Parse("empty repeating block".into()));
            }
            return Index::periodic(prefix, block);
        }
        let body = s.strip_suffix('!').unwrap_or(&s);
        Index::finite(entries(body)?)
    }
}
