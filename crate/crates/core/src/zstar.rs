//! The map `Z*: (0, 1] -> (1, inf]`,
//! `Z*(sum_j 2^-(k_1 + ... + k_j)) = zeta*(k_1 + 1, k_2, k_3, ...)`,
//! evaluated through its binary-digit series
//!
//! `Z*(z) = 1 + z/2 + sum_d a_d S_d 2^d (z - sum_{i<d} a_i 2^-i)`
//!
//! with `S_d` the chain sum over `m_1 >= ... >= m_d >= 3` of
//! `a_1^{m_1-m_2} ... a_{d-1}^{m_{d-1}-m_d} / (m_1^2 m_2 ... m_d)`, together with
//! its one-sided derivatives, inversion and graph data.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digits::DigitStream;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::format::fmt15;
use crate::index::Index;
use crate::series::{evaluate, Chain, Evaluation, Method, TruncationParams};

/// Constant in front of the `(r - t) / 3^(r - t)` remainder model.
const REMAINDER_CONSTANT: f64 = 10.0;
/// Successive chain ratios looked at when estimating the remainder.
const RATIO_WINDOW: usize = 4;

/// A point of `(0, 1]`: its canonical binary expansion, plus the exact
/// dyadic value when there is one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZPoint {
    exact: Option<Dyadic>,
    digits: DigitStream,
    approx: f64,
}

impl ZPoint {
    pub fn from_dyadic(d: Dyadic) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Domain("z must be positive".into()));
        }
        Ok(ZPoint {
            exact: Some(d),
            digits: DigitStream::from_dyadic(&d)?,
            approx: d.to_f64(),
        })
    }

    pub fn from_digits(d: &DigitStream) -> Result<Self> {
        let digits = d
            .canonicalize()
            .map_err(|_| Error::Domain("z must be positive".into()))?;
        Ok(ZPoint {
            exact: digits.to_dyadic(),
            approx: digits.value_f64(),
            digits,
        })
    }

    /// `num / den` with exact digit extraction by long division.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 {
            return Err(Error::Domain("z must be positive".into()));
        }
        Self::from_digits(&DigitStream::from_ratio(num, den)?)
    }

    /// Every finite binary64 in `(0, 1]` is dyadic; this is exact when the
    /// exponent fits.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::Domain(format!("z = {x} is not in (0, 1]")));
        }
        Self::from_dyadic(Dyadic::from_f64(x)?)
    }

    pub fn exact(&self) -> Option<Dyadic> {
        self.exact
    }

    pub fn digits(&self) -> &DigitStream {
        &self.digits
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn is_one(&self) -> bool {
        self.exact.is_some_and(|d| d.is_one())
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "{}", self.digits),
        }
    }
}

impl FromStr for ZPoint {
    type Err = Error;

    /// Accepts `a/2^n`, `a/b`, binary `0.0111...` / `0.(01)` / `0b0.101`, or a
    /// decimal such as `0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(bin) = s.strip_prefix("0b") {
            return Self::from_digits(&bin.parse()?);
        }
        if s.contains("...") || s.contains('(') {
            return Self::from_digits(&s.parse()?);
        }
        if let Some((num, den)) = s.split_once('/') {
            if let Ok(d) = s.parse::<Dyadic>() {
                return Self::from_dyadic(d);
            }
            let parse = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad ratio {s:?}")))
            };
            return Self::from_ratio(parse(num)?, parse(den)?);
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("cannot read a point from {s:?}")))?;
        Self::from_f64(x)
    }
}

/// Which one-sided limit a derivative report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    /// Both one-sided limits agree (non-dyadic points).
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub side: Side,
    /// `+inf` when the left derivative diverges.
    pub value: f64,
    /// Number of binary digits `r` used.
    pub truncation_depth: usize,
    /// Estimated error from truncation in depth and in the summation variables.
    pub error_model: f64,
}

impl DerivativeReport {
    pub fn diverges(&self) -> bool {
        self.value == f64::INFINITY
    }
}

/// The chain sums `S_d` at two cutoffs `N < 2N`.
struct ChainPair {
    coarse: Chain,
    fine: Chain,
}

impl ChainPair {
    fn new(n: usize) -> Self {
        ChainPair {
            coarse: Chain::new(3, 2, n),
            fine: Chain::new(3, 2, 2 * n),
        }
    }

    fn push(&mut self, a: u8) -> Result<()> {
        self.coarse.push_digit(a)?;
        self.fine.push_digit(a)
    }

    /// `(S, |S_2N - S_N|)`.
    fn total(&self) -> Result<(f64, f64)> {
        let f = self.fine.total()?;
        Ok((f, (f - self.coarse.total()?).abs()))
    }

    fn linear(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        let f = self.fine.total_linear(a, b)?;
        Ok((f, (f - self.coarse.total_linear(a, b)?).abs()))
    }

    fn terms(&self) -> usize {
        self.coarse.terms() + self.fine.terms()
    }
}

/// Runs `f(N)` for `N = N_0, 2 N_0, ...` until its cutoff error is within
/// `budget` or the next doubling would pass `m_cap`.
fn with_cutoffs<T>(
    p: &TruncationParams,
    budget: f64,
    mut f: impl FnMut(usize) -> Result<(T, f64)>,
) -> Result<(T, f64)> {
    p.validate()?;
    let mut n = p.first_cutoff();
    loop {
        let (t, err) = f(n)?;
        if err <= budget || 4 * n > p.m_cap {
            return Ok((t, err));
        }
        n *= 2;
    }
}

/// What each digit contributes in a digit series.
#[derive(Clone, Copy)]
enum Terms {
    /// `S_d 2^d (z - sum_{i<d} a_i 2^-i)`: the `Z*` series.
    Value,
    /// `S_d 2^d`: the derivative series.
    Slope,
}

#[derive(Clone, Copy)]
enum Depth {
    /// Stop once the remainder estimate is below the tolerance.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy)]
struct SeriesRun {
    sum: f64,
    cutoff_err: f64,
    remainder: f64,
    depth: usize,
    terms: usize,
    converged: bool,
}

/// `sum_{d <= r} a_d S_d w_d` for the weights selected by `kind`.
fn digit_series(
    digits: &DigitStream,
    kind: Terms,
    depth: Depth,
    p: &TruncationParams,
    n: usize,
) -> Result<SeriesRun> {
    let mut pair = ChainPair::new(n);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut cutoff_err = 0.0;
    let mut prev_s = f64::NAN;
    let mut ratios: Vec<f64> = Vec::new();
    let mut zeros = 0;
    let mut second_zero = None;
    let cap = match depth {
        Depth::Auto => p.depth_cap,
        Depth::Fixed(r) => r,
    };
    let mut remainder = f64::INFINITY;
    for d in 1..=cap {
        if d > 1 {
            pair.push(digits.digit(d - 1))?;
        }
        let (s, s_err) = pair.total()?;
        let a = digits.digit(d);
        let w = match kind {
            Terms::Value => digits.scaled_tail(d),
            Terms::Slope => 2f64.powi(d as i32),
        };
        if a == 1 {
            let y = s * w - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            cutoff_err += s_err * w;
        } else {
            zeros += 1;
            if zeros == 2 {
                second_zero = Some(d);
            }
        }
        if d > 1 {
            ratios.push(s / prev_s);
        }
        prev_s = s;

        // Remainder: later terms shrink at least by the largest recent ratio.
        let rho = ratios
            .iter()
            .rev()
            .take(RATIO_WINDOW)
            .fold(0.0f64, |m, &r| m.max(r));
        let (growth, next_w) = match kind {
            Terms::Value => (rho, 2.0),
            Terms::Slope => (2.0 * rho, 2f64.powi(d as i32 + 1)),
        };
        remainder = if ratios.len() >= RATIO_WINDOW && growth < 1.0 {
            s * rho * next_w / (1.0 - growth)
        } else {
            f64::INFINITY
        };
        if let Depth::Auto = depth {
            let model = match second_zero {
                Some(t) if d > t => {
                    let k = (d - t) as f64;
                    REMAINDER_CONSTANT * k / 3f64.powf(k)
                }
                Some(_) => f64::INFINITY,
                None => 0.0,
            };
            let model = if matches!(kind, Terms::Slope) {
                0.0
            } else {
                model
            };
            if remainder <= p.tol / 2.0 && model <= p.tol / 2.0 {
                return Ok(SeriesRun {
                    sum,
                    cutoff_err,
                    remainder,
                    depth: d,
                    terms: pair.terms(),
                    converged: true,
                });
            }
        }
    }
    let converged = matches!(depth, Depth::Fixed(_)) || remainder <= p.tol;
    Ok(SeriesRun {
        sum,
        cutoff_err,
        remainder,
        depth: cap,
        terms: pair.terms(),
        converged,
    })
}

fn zstar_run(z: &ZPoint, p: &TruncationParams, depth: Depth) -> Result<(Evaluation, usize)> {
    if z.is_one() {
        return Ok((Evaluation::divergent(), 0));
    }
    let (run, _) = with_cutoffs(p, p.tol / 4.0, |n| {
        let run = digit_series(&z.digits, Terms::Value, depth, p, n)?;
        Ok((run, run.cutoff_err))
    })?;
    let value = 1.0 + z.approx / 2.0 + run.sum;
    Ok((
        Evaluation {
            value,
            err_estimate: run.remainder + run.cutoff_err + 4.0 * f64::EPSILON * value,
            terms_used: run.terms,
            converged: run.converged,
        },
        run.depth,
    ))
}

/// `Z*(z)` by the digit series; `z = 1` gives the `+inf` marker.
pub fn zstar(z: &ZPoint, p: &TruncationParams) -> Result<Evaluation> {
    Ok(zstar_run(z, p, Depth::Auto)?.0)
}

/// `Z*(z)` with the series cut after exactly `depth` digits.
pub fn zstar_at_depth(z: &ZPoint, depth: usize, p: &TruncationParams) -> Result<Evaluation> {
    Ok(zstar_run(z, p, Depth::Fixed(depth))?.0)
}

/// `Z*(z)` through the index: digits -> `(k_1, k_2, ...)` -> `zeta*(k_1 + 1, k_2, ...)`.
pub fn zstar_via_index(z: &ZPoint, p: &TruncationParams) -> Result<(Evaluation, Method, Index)> {
    let index = Index::from_digits(&z.digits)?.bump_first();
    let (ev, method) = evaluate(&index, p)?;
    Ok((ev, method, index))
}

/// `Z*(x) - Z*(y)` with both sides cut at the same depth, so that shared
/// truncation error cancels.
pub fn zstar_difference(x: &ZPoint, y: &ZPoint, p: &TruncationParams) -> Result<f64> {
    let (_, dx) = zstar_run(x, p, Depth::Auto)?;
    let (_, dy) = zstar_run(y, p, Depth::Auto)?;
    let depth = dx.max(dy);
    let a = zstar_at_depth(x, depth, p)?;
    let b = zstar_at_depth(y, depth, p)?;
    Ok(a.value - b.value)
}

fn check_half_open(z: &Dyadic) -> Result<()> {
    if z.is_one() {
        return Err(Error::Domain(
            "one-sided derivatives need 0 <= z < 1".into(),
        ));
    }
    Ok(())
}

/// `1/2 + sum_{d <= r} a_d S_d 2^d` over the terminating digits of `z`, and
/// the chain state after `r` digits for the left-hand correction.
fn right_slope(digits: &[u8], n: usize) -> Result<((f64, ChainPair), f64)> {
    let mut pair = ChainPair::new(n);
    let mut sum = 0.5;
    let mut err = 0.0;
    for (i, &a) in digits.iter().enumerate() {
        let d = i + 1;
        if d > 1 {
            pair.push(digits[i - 1])?;
        }
        if a == 1 {
            let (s, e) = pair.total()?;
            let w = 2f64.powi(d as i32);
            sum += s * w;
            err += e * w;
        }
    }
    Ok(((sum, pair), err))
}

/// Right derivative at a dyadic `0 <= z < 1`.
pub fn right_derivative(z: &Dyadic, p: &TruncationParams) -> Result<DerivativeReport> {
    check_half_open(z)?;
    let digits = z.terminating_digits();
    let ((value, _), err) = with_cutoffs(p, p.tol, |n| right_slope(&digits, n))?;
    Ok(DerivativeReport {
        side: Side::Right,
        value,
        truncation_depth: digits.len(),
        error_model: err + 4.0 * f64::EPSILON * value,
    })
}

/// Left derivative at a dyadic `0 < z < 1`: the right derivative plus
/// `2^r sum_{m_1 >= ... >= m_r >= 3} (chain) (m_r - 2)`. It is `+inf` exactly
/// at `z = 1 - 2^-r`.
pub fn left_derivative(z: &Dyadic, p: &TruncationParams) -> Result<DerivativeReport> {
    check_half_open(z)?;
    if z.is_zero() {
        return Err(Error::Domain("no left derivative at 0".into()));
    }
    let digits = z.terminating_digits();
    let r = digits.len();
    if digits.iter().all(|&a| a == 1) {
        return Ok(DerivativeReport {
            side: Side::Left,
            value: f64::INFINITY,
            truncation_depth: r,
            error_model: 0.0,
        });
    }
    let (value, err) = with_cutoffs(p, p.tol, |n| {
        let ((right, pair), e1) = right_slope(&digits, n)?;
        let (extra, e2) = pair.linear(1.0, -2.0)?;
        let w = 2f64.powi(r as i32);
        Ok((right + w * extra, e1 + w * e2))
    })?;
    Ok(DerivativeReport {
        side: Side::Left,
        value,
        truncation_depth: r,
        error_model: err + 4.0 * f64::EPSILON * value,
    })
}

/// Derivative at a point whose digits contain infinitely many ones and
/// infinitely many zeros: `1/2 + sum_d a_d S_d 2^d`.
pub fn derivative_nondyadic(z: &ZPoint, p: &TruncationParams) -> Result<DerivativeReport> {
    if z.digits.is_eventually_constant() {
        return Err(Error::HypothesisUnmet(format!(
            "{z} has an eventually constant expansion; use the one-sided derivatives"
        )));
    }
    let (run, _) = with_cutoffs(p, p.tol / 4.0, |n| {
        let run = digit_series(&z.digits, Terms::Slope, Depth::Auto, p, n)?;
        Ok((run, run.cutoff_err))
    })?;
    if !run.converged {
        return Err(Error::NotConverged {
            terms: run.terms,
            err: run.remainder,
        });
    }
    Ok(DerivativeReport {
        side: Side::TwoSided,
        value: 0.5 + run.sum,
        truncation_depth: run.depth,
        error_model: run.remainder + run.cutoff_err,
    })
}

/// `(Z*(z) - Z*(z - h)) / h` at `z = 1 - 2^-p`, `h = 2^-q`.
pub fn divergence_ratio(p: u32, q: u32, params: &TruncationParams) -> Result<f64> {
    if p < 1 || q <= p {
        return Err(Error::Domain(format!(
            "need 1 <= p < q, got p = {p}, q = {q}"
        )));
    }
    let z = Dyadic::ONE.checked_sub(&Dyadic::pow2_neg(p)?)?;
    let h = Dyadic::pow2_neg(q)?;
    let x = z.checked_sub(&h)?;
    let tight = params.with_tol(params.tol.min(1e-13));
    let diff = zstar_difference(&ZPoint::from_dyadic(z)?, &ZPoint::from_dyadic(x)?, &tight)?;
    Ok(diff / h.to_f64())
}

/// The `z` with `Z*(z) = v`, to `depth` binary digits.
///
/// Each bisection step fixes one more digit; the returned point is the
/// upper end of the final interval, so it is never zero.
pub fn invert_zstar(v: f64, depth: u32, p: &TruncationParams) -> Result<ZPoint> {
    if !(v > 1.0) || !v.is_finite() {
        return Err(Error::Domain(format!(
            "Z* takes values in (1, inf), got {v}"
        )));
    }
    if depth == 0 || depth > crate::dyadic::MAX_EXPONENT {
        return Err(Error::Domain(format!("digit depth {depth} out of range")));
    }
    let mut lo = Dyadic::ZERO;
    for k in 1..=depth {
        let mid = lo.checked_add(&Dyadic::pow2_neg(k)?)?;
        if zstar(&ZPoint::from_dyadic(mid)?, p)?.value < v {
            lo = mid;
        }
    }
    ZPoint::from_dyadic(lo.checked_add(&Dyadic::pow2_neg(depth)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphRow {
    pub z: f64,
    pub zstar: f64,
}

/// `Z*` on the grid `j / 2^k`, `k = ceil(log2 n)`, `0 < j < 2^k` (the point
/// `z = 1`, where `Z* = inf`, is left out).
pub fn graph_samples(n: usize, p: &TruncationParams) -> Result<Vec<GraphRow>> {
    if n < 2 {
        return Err(Error::Domain("need at least two samples".into()));
    }
    let k = n.next_power_of_two().trailing_zeros();
    (1..1u128 << k)
        .map(|j| {
            let z = ZPoint::from_dyadic(Dyadic::new(j, k)?)?;
            Ok(GraphRow {
                z: z.approx(),
                zstar: zstar(&z, p)?.value,
            })
        })
        .collect()
}

/// CSV with header `z,zstar` and 15 significant digits.
pub fn write_graph_csv<W: Write>(mut w: W, rows: &[GraphRow]) -> io::Result<()> {
    writeln!(w, "z,zstar")?;
    for r in rows {
        writeln!(w, "{},{}", fmt15(r.z), fmt15(r.zstar))?;
    }
    Ok(())
}
