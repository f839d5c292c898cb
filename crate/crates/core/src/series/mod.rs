//! Direct evaluation of multiple zeta-star values
//!
//! `zeta*(k_1, ..., k_r) = sum_{m_1 >= ... >= m_r >= 1} m_1^{-k_1} ... m_r^{-k_r}`
//!
//! for finite indices, indices with a constant tail `{l}^inf`, and eventually
//! periodic indices, plus the digit-weighted chain sums used by the `Z*` map.
//!
//! All evaluators share one engine (see [`nested`]): an exact recursion below
//! a cutoff `N` joined to Euler–Maclaurin expansions above it. Every result is
//! computed at two cutoffs `N` and `2N`; the difference is reported as the
//! error estimate, and `N` is doubled until that difference is below the
//! tolerance or `m_cap` is reached.

pub(crate) mod asym;
pub(crate) mod nested;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Index, Tail};
use asym::{hurwitz_series, AsymSeries, ORDER};
pub use asym::{hurwitz_zeta, zeta};
use nested::{Compensated, Link, NestedSum, Weight};

/// Knobs shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationParams {
    /// Largest cutoff `N` on the summation variables.
    pub m_cap: usize,
    /// Target absolute error.
    pub tol: f64,
    /// Most repetitions of a periodic block.
    pub block_reps_cap: usize,
    /// Aitken acceleration of periodic limits.
    pub extrapolate: bool,
    /// Most binary digits consumed by the digit series of the `Z*` map.
    pub depth_cap: usize,
}

impl Default for TruncationParams {
    fn default() -> Self {
        TruncationParams {
            m_cap: 1 << 16,
            tol: 1e-10,
            block_reps_cap: 40,
            extrapolate: true,
            depth_cap: 400,
        }
    }
}

impl TruncationParams {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_cap < 4 || !(self.tol > 0.0) || self.block_reps_cap < 2 || self.depth_cap < 1 {
            return Err(Error::Domain(format!(
                "invalid truncation parameters {self:?}"
            )));
        }
        Ok(())
    }

    pub(crate) fn first_cutoff(&self) -> usize {
        (self.m_cap / 2).clamp(2, 64)
    }
}

/// A numerical value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl Evaluation {
    /// The `+inf` marker of the divergent index `(2, 1, 1, ...)`.
    pub fn divergent() -> Self {
        Evaluation {
            value: f64::INFINITY,
            err_estimate: 0.0,
            terms_used: 0,
            converged: true,
        }
    }

    pub fn is_divergent(&self) -> bool {
        self.value == f64::INFINITY
    }
}

/// How [`evaluate`] dispatched an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Finite,
    TailL,
    Periodic,
    Divergent,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Finite => "finite",
            Method::TailL => "tail-l",
            Method::Periodic => "periodic",
            Method::Divergent => "divergent",
        })
    }
}

fn rounding_floor(value: f64, levels: usize) -> f64 {
    f64::EPSILON * value.abs() * (levels as f64 + 1.0)
}

/// Runs `compute(N)` and `compute(2N)` with `N` doubling until they agree.
fn with_cutoff_doubling(
    p: &TruncationParams,
    mut compute: impl FnMut(usize) -> Result<(f64, usize)>,
) -> Result<Evaluation> {
    p.validate()?;
    let mut n = p.first_cutoff();
    let (mut prev, mut terms) = compute(n)?;
    loop {
        let next_n = 2 * n;
        if next_n > p.m_cap {
            return Err(Error::NotConverged {
                terms,
                err: f64::NAN,
            });
        }
        let (v, t) = compute(next_n)?;
        terms += t;
        let err = (v - prev).abs() + rounding_floor(v, t / next_n.max(1));
        if err <= p.tol {
            return Ok(Evaluation {
                value: v,
                err_estimate: err,
                terms_used: terms,
                converged: true,
            });
        }
        if 2 * next_n > p.m_cap {
            return Err(Error::NotConverged { terms, err });
        }
        prev = v;
        n = next_n;
    }
}

fn check_entries(k: &[u32]) -> Result<()> {
    if k.iter().any(|&e| e == 0) {
        return Err(Error::Inadmissible("index entries must be >= 1".into()));
    }
    Ok(())
}

/// Star sum with the given exponents; the last level optionally carries an
/// extra weight in place of `m^{-k_r}`.
fn star_chain(k: &[u32], last: Option<&Weight>, cutoff: usize) -> Result<(f64, usize)> {
    star_chain_from(k, last, 1, cutoff)
}

fn star_chain_from(
    k: &[u32],
    last: Option<&Weight>,
    floor: usize,
    cutoff: usize,
) -> Result<(f64, usize)> {
    let r = k.len();
    let level = |j: usize| -> Weight {
        match (j + 1 == r, last) {
            (true, Some(w)) => w.clone(),
            _ => Weight::Power(k[j]),
        }
    };
    let mut s = NestedSum::new(floor, cutoff.max(floor + 2), &level(0));
    for j in 1..r {
        s.push(Link::Free, &level(j))?;
    }
    Ok((s.total()?, s.terms()))
}

/// `zeta*(k_1, ..., k_r)` for a finite admissible index.
pub fn eval_finite(k: &[u32], p: &TruncationParams) -> Result<Evaluation> {
    check_entries(k)?;
    match k.first() {
        None => return Err(Error::Inadmissible("empty index".into())),
        Some(&k1) if k1 < 2 => return Err(Error::Inadmissible(format!("first entry {k1} < 2"))),
        _ => {}
    }
    with_cutoff_doubling(p, |n| star_chain(k, None, n))
}

/// `sum_{m_1 >= ... >= m_r >= floor} m_1^{-k_1} ... m_r^{-k_r}`.
pub fn star_sum_from(k: &[u32], floor: usize, p: &TruncationParams) -> Result<Evaluation> {
    check_entries(k)?;
    if floor == 0 || k.is_empty() {
        return Err(Error::Domain("need floor >= 1 and a nonempty index".into()));
    }
    if k[0] < 2 {
        return Err(Error::Inadmissible(format!("first entry {} < 2", k[0])));
    }
    with_cutoff_doubling(p, |n| star_chain_from(k, None, floor, n))
}

/// `P_l(m) = prod_{s=2}^{m} s^l / (s^l - 1)` tabulated for `m < cutoff`, its
/// expansion for `m >= cutoff`, and the limit `P_l(inf)`.
pub(crate) struct ProductWeight {
    pub values: Vec<f64>,
    pub series: AsymSeries,
    pub limit: f64,
}

pub(crate) fn constant_tail_product(l: u32, cutoff: usize) -> ProductWeight {
    assert!(l >= 2);
    // log P_l(m) = -sum_{s=2}^{m} log(1 - s^-l)
    let mut values = vec![0.0, 1.0];
    let mut log = Compensated::default();
    for s in 2..=cutoff {
        log.add(-(-(s as f64).powi(-(l as i32))).ln_1p());
        if s < cutoff {
            values.push(log.value().exp());
        }
    }
    let at_cutoff = log.value();
    // For m >= cutoff: P_l(m) = P_l(inf) * prod_{s > m} (1 - s^-l)
    //                          = P_l(inf) * exp(-sum_j zeta(jl, m + 1) / j)
    let mut g = AsymSeries::zero();
    let mut j = 1usize;
    while j * (l as usize) <= ORDER + 1 {
        let s = j * l as usize;
        let shifted = hurwitz_series(s).add(&AsymSeries::monomial(s, -1.0));
        g = g.add(&shifted.scale(-1.0 / j as f64));
        j += 1;
    }
    let w = g.exp();
    let limit = (at_cutoff - w.eval(cutoff as f64).ln()).exp();
    ProductWeight {
        values,
        series: w.scale(limit),
        limit,
    }
}

/// `zeta*(k_1, ..., k_r, {l}^inf)` through the constant-tail product formula
/// `sum_{m_1 >= ... >= m_r} prod m_j^{-k_j} * prod_{s=2}^{m_r} s^l / (s^l - 1)`.
///
/// An empty prefix gives `zeta*({l}^inf) = P_l(inf)`. For `l = 1` the product
/// is `m_r`. The divergent index `(2, {1}^inf)` returns the `+inf` marker.
pub fn eval_tail_l(prefix: &[u32], l: u32, p: &TruncationParams) -> Result<Evaluation> {
    check_entries(prefix)?;
    if l == 0 {
        return Err(Error::Inadmissible("tail entry must be >= 1".into()));
    }
    if prefix.is_empty() {
        if l < 2 {
            return Err(Error::Inadmissible("(1, 1, 1, ...)".into()));
        }
        return with_cutoff_doubling(p, |n| Ok((constant_tail_product(l, n).limit, n)));
    }
    if prefix[0] < 2 {
        return Err(Error::Inadmissible(format!(
            "first entry {} < 2",
            prefix[0]
        )));
    }
    if l == 1 && Index::constant_tail(prefix.to_vec(), 1)?.is_divergent() {
        return Ok(Evaluation::divergent());
    }
    let kr = *prefix.last().unwrap();
    with_cutoff_doubling(p, |n| {
        let last = if l == 1 {
            Weight::Power(kr - 1)
        } else {
            let pw = constant_tail_product(l, n);
            Weight::power_times(kr, &pw.values, &pw.series)
        };
        star_chain(prefix, Some(&last), n)
    })
}

/// Aitken's delta-squared estimate from the last three terms of a sequence.
pub fn aitken(x0: f64, x1: f64, x2: f64) -> Option<f64> {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if denom == 0.0 || !denom.is_finite() || d2.abs() >= d1.abs() {
        return None;
    }
    let acc = x2 - d2 * d2 / denom;
    acc.is_finite().then_some(acc)
}

/// `lim_{d -> inf} zeta*(prefix, block^d)`.
///
/// The partial values increase with `d`; the loop stops once the next
/// difference (or, with extrapolation on, the Aitken correction) falls below
/// the tolerance.
pub fn eval_periodic(prefix: &[u32], block: &[u32], p: &TruncationParams) -> Result<Evaluation> {
    p.validate()?;
    check_entries(prefix)?;
    check_entries(block)?;
    if block.is_empty() {
        return Err(Error::Inadmissible("empty block".into()));
    }
    if block.iter().all(|&k| k == 1) {
        return eval_tail_l(prefix, 1, p);
    }
    let first = prefix.first().or(block.first()).copied().unwrap();
    if first < 2 {
        return Err(Error::Inadmissible(format!("first entry {first} < 2")));
    }
    let n = p.first_cutoff();
    let entries: Vec<u32> = prefix.iter().chain(block.iter()).copied().collect();
    let mut coarse = NestedSum::new(1, n, &Weight::Power(entries[0]));
    let mut fine = NestedSum::new(1, 2 * n, &Weight::Power(entries[0]));
    let mut pushed = 1;
    let push = |k: u32, coarse: &mut NestedSum, fine: &mut NestedSum| -> Result<()> {
        coarse.push(Link::Free, &Weight::Power(k))?;
        fine.push(Link::Free, &Weight::Power(k))
    };
    for &k in &entries[1..] {
        push(k, &mut coarse, &mut fine)?;
        pushed += 1;
    }
    let mut seq: Vec<f64> = Vec::new();
    let mut cutoff_err;
    let mut terms = 0;
    loop {
        let x = fine.total()?;
        cutoff_err = (x - coarse.total()?).abs() + rounding_floor(x, pushed);
        terms = terms.max(coarse.terms() + fine.terms());
        seq.push(x);
        let d = seq.len();
        if d >= 3 {
            let (x0, x1, x2) = (seq[d - 3], seq[d - 2], seq[d - 1]);
            let (d1, d2) = (x1 - x0, x2 - x1);
            let noise = 64.0 * f64::EPSILON * x2.abs();
            if d >= 4 && d2 > noise && d1 > noise && d2 >= d1 {
                return Err(Error::NotConverged { terms, err: d2 });
            }
            let (value, step_err) = if p.extrapolate {
                match aitken(x0, x1, x2) {
                    Some(acc) if d2 > noise => (acc, (acc - x2).abs()),
                    _ => (x2, d2.abs()),
                }
            } else {
                let ratio = if d1 > noise {
                    (d2 / d1).clamp(0.0, 0.99)
                } else {
                    0.0
                };
                (x2, d2.abs() * (1.0 + ratio / (1.0 - ratio)))
            };
            let err = step_err + cutoff_err;
            if err <= p.tol || d >= p.block_reps_cap {
                return Ok(Evaluation {
                    value,
                    err_estimate: err,
                    terms_used: terms,
                    converged: err <= p.tol,
                });
            }
        }
        for &k in block {
            push(k, &mut coarse, &mut fine)?;
            pushed += 1;
        }
    }
}

/// Evaluates any admissible index, choosing the evaluator from its tail.
pub fn evaluate(index: &Index, p: &TruncationParams) -> Result<(Evaluation, Method)> {
    if index.is_divergent() {
        return Ok((Evaluation::divergent(), Method::Divergent));
    }
    match index.tail() {
        Tail::Finite => Ok((eval_finite(index.prefix(), p)?, Method::Finite)),
        Tail::Constant(l) => {
            let ev = eval_tail_l(index.prefix(), *l, p)?;
            let method = if ev.is_divergent() {
                Method::Divergent
            } else {
                Method::TailL
            };
            Ok((ev, method))
        }
        Tail::Periodic(block) => Ok((eval_periodic(index.prefix(), block, p)?, Method::Periodic)),
    }
}

/// Digit-weighted chain sum
/// `sum_{m_1 >= ... >= m_d >= floor} a_1^{m_1-m_2} ... a_{d-1}^{m_{d-1}-m_d} / (m_1^e m_2 ... m_d)`
/// with `0^0 = 1`, so a zero digit ties two consecutive variables together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub digits: Vec<u8>,
    pub depth: usize,
    pub floor: usize,
    pub lead_exponent: u32,
}

impl ChainSpec {
    pub fn new(digits: Vec<u8>, floor: usize, lead_exponent: u32) -> Result<Self> {
        let spec = ChainSpec {
            depth: digits.len() + 1,
            digits,
            floor,
            lead_exponent,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.depth != self.digits.len() + 1 {
            return Err(Error::Domain(
                "depth must be one more than the digit count".into(),
            ));
        }
        if self.floor < 1 || self.lead_exponent < 2 || self.digits.iter().any(|&a| a > 1) {
            return Err(Error::Domain(format!("invalid chain {self:?}")));
        }
        Ok(())
    }
}

/// Incremental chain sums: after `d` levels, `total()` is `S_d` for the digits
/// pushed so far. Shared prefixes are therefore computed once.
#[derive(Debug, Clone)]
pub(crate) struct Chain {
    sum: NestedSum,
}

impl Chain {
    pub fn new(floor: usize, lead_exponent: u32, cutoff: usize) -> Self {
        Chain {
            sum: NestedSum::new(floor, cutoff.max(floor + 2), &Weight::Power(lead_exponent)),
        }
    }

    /// Adds variable `m_{d+1}` linked to `m_d` by digit `a_d`.
    pub fn push_digit(&mut self, a: u8) -> Result<()> {
        let link = if a == 1 { Link::Free } else { Link::Tied };
        self.sum.push(link, &Weight::Power(1))
    }

    pub fn total(&self) -> Result<f64> {
        self.sum.total()
    }

    /// `sum F_d(m) (a m + b)` over the innermost variable.
    pub fn total_linear(&self, a: f64, b: f64) -> Result<f64> {
        self.sum.total_linear(a, b)
    }

    #[cfg(test)]
    /// Part of the total coming from `m_d >= cutoff`.
    pub fn tail_total(&self) -> Result<f64> {
        self.sum.tail_total()
    }

    pub fn terms(&self) -> usize {
        self.sum.terms()
    }
}

pub fn chain_sum(spec: &ChainSpec, p: &TruncationParams) -> Result<Evaluation> {
    spec.validate()?;
    with_cutoff_doubling(p, |n| {
        let mut c = Chain::new(spec.floor, spec.lead_exponent, n);
        for &a in &spec.digits {
            c.push_digit(a)?;
        }
        Ok((c.total()?, c.terms()))
    })
}

/// Explicit bounds on
/// `sum_{m_1 >= ... >= m_s >= n} 1 / (m_1^{r+1} m_2 ... m_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainBound {
    pub upper: f64,
    /// Only known up to unspecified constants, so never populated.
    pub lower: Option<f64>,
}

/// Upper bound `1 / ((n-1)...(n-r) r^s)` for `n > r`, and `s / (r! r^s)` for `n = r`.
pub fn bound_chain_sum(r: u32, s: u32, n: u32) -> Result<ChainBound> {
    if r == 0 || s == 0 {
        return Err(Error::Domain("r and s must be positive".into()));
    }
    if n < r {
        return Err(Error::Domain(format!("n = {n} < r = {r}")));
    }
    let rs = (r as f64).powi(s as i32);
    let upper = if n > r {
        let falling: f64 = (1..=r).map(|i| (n - i) as f64).product();
        1.0 / (falling * rs)
    } else {
        let fact: f64 = (1..=r).map(|i| i as f64).product();
        s as f64 / (fact * rs)
    };
    Ok(ChainBound { upper, lower: None })
}

/// `sum_{m_1 >= ... >= m_s >= n} 1/(m_1^{r+1} m_2 ... m_s)` via the chain engine.
pub fn lead_chain_sum(r: u32, s: u32, n: usize, p: &TruncationParams) -> Result<Evaluation> {
    let spec = ChainSpec::new(vec![1; s as usize - 1], n, r + 1)?;
    chain_sum(&spec, p)
}
