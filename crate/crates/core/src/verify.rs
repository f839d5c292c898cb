//! The identity suite behind `zstar verify`: every special value, identity
//! and bound the library claims, checked numerically, one row per check.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    const_index_closed, hoffman_like_closed, staircase_closed, tail2_reduction, two_n_one_closed,
};
use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::format::fmt15;
use crate::series::{
    bound_chain_sum, eval_finite, eval_periodic, eval_tail_l, lead_chain_sum, star_sum_from, zeta,
    TruncationParams,
};
use crate::zstar::{
    divergence_ratio, invert_zstar, left_derivative, right_derivative, zstar, zstar_difference,
    zstar_via_index, ZPoint,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    /// Acceptance criterion number, 1..=16.
    pub criterion: u8,
    pub name: String,
    pub expected: f64,
    pub computed: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckRow {
    /// `|computed - expected| <= tol`.
    fn close(
        criterion: u8,
        name: impl Into<String>,
        expected: f64,
        computed: f64,
        tol: f64,
    ) -> Self {
        let residual = (computed - expected).abs();
        CheckRow {
            criterion,
            name: name.into(),
            expected,
            computed,
            residual,
            tol,
            pass: residual <= tol,
        }
    }

    /// `computed <= bound`; the residual is the excess.
    fn at_most(criterion: u8, name: impl Into<String>, bound: f64, computed: f64) -> Self {
        CheckRow {
            criterion,
            name: name.into(),
            expected: bound,
            computed,
            residual: computed - bound,
            tol: 0.0,
            pass: computed <= bound,
        }
    }

    fn failed(criterion: u8, name: impl Into<String>, expected: f64) -> Self {
        CheckRow {
            criterion,
            name: name.into(),
            expected,
            computed: f64::NAN,
            residual: f64::NAN,
            tol: 0.0,
            pass: false,
        }
    }
}

type Check = fn(&TruncationParams) -> Result<Vec<CheckRow>>;

/// The checks in criterion order.
pub fn checks() -> Vec<(u8, &'static str, Check)> {
    vec![
        (1, "zeta*({2}^inf) = 2", c01_two_constant),
        (
            2,
            "zeta*({4}^inf) = 8 pi / (e^pi - e^-pi)",
            c02_four_constant,
        ),
        (3, "zeta*(3,{2}^inf) = 2 zeta(2) - 2", c03_three_then_twos),
        (4, "zeta*({2,1}^inf) = 3", c04_two_one),
        (
            5,
            "zeta*({3,1}^inf) = 4 (e^pi + 1) / (pi (e^pi - 1))",
            c05_three_one,
        ),
        (6, "zeta*({2,{1}^(n-2)}^inf) = n", c06_staircase),
        (
            7,
            "zeta*(..., k_r + 1, {1}^inf) = zeta*(..., k_r)",
            c07_ones_tail,
        ),
        (
            8,
            "zeta*({2,{1}^(n-2)}^a, 1) = n zeta(a n + 1)",
            c08_ohno_wenzel,
        ),
        (9, "weighted distinct-value sums", c09_distinct_value_sums),
        (10, "Z*(1/2) = zeta(2)", c10_half),
        (11, "Z* increasing on the 2^-10 grid", c11_monotone),
        (12, "Z*(invert(v)) = v", c12_inverse),
        (13, "one-sided derivatives at dyadics", c13_derivatives),
        (
            14,
            "left difference ratio at 1/2 grows like q",
            c14_divergence,
        ),
        (15, "explicit chain-sum bounds", c15_bounds),
        (16, "right derivative 1/2 at 0", c16_origin),
    ]
}

/// Runs every check; a check that errors becomes a failing row.
pub fn run_suite(p: &TruncationParams) -> Vec<CheckRow> {
    run_selected(p, |_| true)
}

pub fn run_selected(p: &TruncationParams, keep: impl Fn(u8) -> bool) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for (id, name, check) in checks() {
        if !keep(id) {
            continue;
        }
        match check(p) {
            Ok(r) => rows.extend(r),
            Err(e) => rows.push(CheckRow::failed(id, format!("{name}: {e}"), f64::NAN)),
        }
    }
    rows
}

/// Tab-separated table with a header line.
pub fn write_tsv<W: Write>(mut w: W, rows: &[CheckRow]) -> io::Result<()> {
    writeln!(
        w,
        "criterion\tidentity\texpected\tcomputed\tresidual\tstatus"
    )?;
    for r in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{:.3e}\t{}",
            r.criterion,
            r.name,
            fmt15(r.expected),
            fmt15(r.computed),
            r.residual,
            if r.pass { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(())
}

fn tight(p: &TruncationParams, tol: f64) -> TruncationParams {
    p.with_tol(p.tol.min(tol))
}

fn c01_two_constant(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let start = Instant::now();
    let series = eval_tail_l(&[], 2, &tight(p, 1e-10))?.value;
    let closed = const_index_closed(2)?.value;
    let secs = start.elapsed().as_secs_f64();
    Ok(vec![
        CheckRow::close(1, "eval_tail_l((), 2)", 2.0, series, 1e-9),
        CheckRow::close(1, "const_index_closed(2)", 2.0, closed, 1e-9),
        CheckRow::at_most(1, "runtime seconds", 1.0, secs),
    ])
}

fn c02_four_constant(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let exact = 8.0 * PI / (PI.exp() - (-PI).exp());
    let series = eval_tail_l(&[], 4, &tight(p, 1e-11))?.value;
    let cf = const_index_closed(4)?;
    Ok(vec![
        CheckRow::close(2, "series vs 8 pi / (e^pi - e^-pi)", exact, series, 1e-9),
        CheckRow::close(2, "Gamma product vs series", cf.value, series, 1e-10),
        CheckRow::close(2, "Gamma product vs exact", cf.value, exact, 1e-10),
        CheckRow::close(2, "Gamma product vs m-product", cf.value, cf.product, 1e-10),
    ])
}

fn c03_three_then_twos(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-10);
    let exact = 2.0 * zeta(2) - 2.0;
    let series = eval_tail_l(&[3], 2, &q)?.value;
    let reduced = tail2_reduction(&[3], &q)?;
    Ok(vec![
        CheckRow::close(3, "eval_tail_l((3), 2) vs exact", exact, series, 1e-8),
        CheckRow::close(3, "tail2_reduction((3)) vs exact", exact, reduced, 1e-8),
        CheckRow::close(3, "eval_tail_l vs tail2_reduction", reduced, series, 1e-8),
    ])
}

fn c04_two_one(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = TruncationParams {
        block_reps_cap: 20,
        extrapolate: true,
        ..tight(p, 1e-8)
    };
    let series = eval_periodic(&[], &[2, 1], &q)?.value;
    let cf = two_n_one_closed(1)?;
    Ok(vec![
        CheckRow::close(
            4,
            "eval_periodic((2,1)), Aitken, d <= 20",
            3.0,
            series,
            1e-5,
        ),
        CheckRow::close(4, "two_n_one_closed(1)", 3.0, cf.value, 1e-10),
        CheckRow::close(4, "two_n_one_closed(1) m-product", 3.0, cf.product, 1e-10),
    ])
}

fn c05_three_one(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let e = PI.exp();
    let exact = 4.0 * (e + 1.0) / (PI * (e - 1.0));
    let series = eval_periodic(&[], &[3, 1], &tight(p, 1e-8))?.value;
    let cf = hoffman_like_closed(0)?;
    Ok(vec![
        CheckRow::close(5, "eval_periodic((3,1)) vs exact", exact, series, 1e-5),
        CheckRow::close(5, "hoffman_like_closed(0) vs exact", exact, cf.value, 1e-10),
        CheckRow::close(
            5,
            "hoffman_like_closed(0) m-product",
            exact,
            cf.product,
            1e-10,
        ),
    ])
}

fn c06_staircase(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-8);
    let mut rows = Vec::new();
    for n in 2..=5u32 {
        let mut block = vec![2];
        block.extend(std::iter::repeat_n(1, n as usize - 2));
        let v = eval_periodic(&[], &block, &q)?.value;
        rows.push(CheckRow::close(
            6,
            format!("eval_periodic({{2,{{1}}^{}}})", n - 2),
            staircase_closed(n)?,
            v,
            1e-5,
        ));
    }
    Ok(rows)
}

/// Admissible finite indices with `r <= 3` and entries in `1..=4`.
pub fn small_indices() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for r in 1..=3usize {
        let total = 4usize.pow(r as u32);
        for code in 0..total {
            let k: Vec<u32> = (0..r)
                .map(|i| (code / 4usize.pow(i as u32) % 4) as u32 + 1)
                .collect();
            if k[0] >= 2 {
                out.push(k);
            }
        }
    }
    out
}

fn c07_ones_tail(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-10);
    let mut worst = (0.0f64, Vec::new(), 0.0, 0.0);
    for k in small_indices() {
        let finite = eval_finite(&k, &q)?.value;
        let mut bumped = k.clone();
        *bumped.last_mut().unwrap() += 1;
        let tail = eval_tail_l(&bumped, 1, &q)?.value;
        if (tail - finite).abs() >= worst.0 {
            worst = ((tail - finite).abs(), k, finite, tail);
        }
    }
    let (_, k, finite, tail) = worst;
    Ok(vec![CheckRow::close(
        7,
        format!("{} indices, worst {k:?}", small_indices().len()),
        finite,
        tail,
        1e-8,
    )])
}

fn c08_ohno_wenzel(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-10);
    let mut rows = Vec::new();
    for n in 2..=3u32 {
        for a in 1..=2u32 {
            let mut k = Vec::new();
            for _ in 0..a {
                k.push(2);
                k.extend(std::iter::repeat_n(1, n as usize - 2));
            }
            k.push(1);
            let lhs = eval_finite(&k, &q)?.value;
            rows.push(CheckRow::close(
                8,
                format!("n={n} a={a}: zeta*{k:?}"),
                n as f64 * zeta(a * n + 1),
                lhs,
                1e-8,
            ));
        }
    }
    Ok(rows)
}

/// `sum_{M >= m_1 >= ... >= m_len >= 1} 2^{#distinct} prod sign(m_j) m_j^-s`, with
/// `sign(m) = (-1)^m` when `signed`.
///
/// Dynamic programming over the smallest variable so far: a step to an equal
/// value multiplies by the weight, a step to a strictly smaller one by twice it.
pub fn distinct_value_sum(len: usize, s: u32, signed: bool, big_m: usize) -> f64 {
    let w = |m: usize| {
        let base = (m as f64).powi(-(s as i32));
        if signed && m % 2 == 1 {
            -base
        } else {
            base
        }
    };
    // f[m] = weighted sum over chains of the current length ending at m.
    let mut f: Vec<f64> = (0..=big_m)
        .map(|m| if m == 0 { 0.0 } else { 2.0 * w(m) })
        .collect();
    for _ in 1..len {
        let mut above = 0.0; // sum_{m' > m} f[m']
        let mut next = vec![0.0; big_m + 1];
        for m in (1..=big_m).rev() {
            next[m] = w(m) * (f[m] + 2.0 * above);
            above += f[m];
        }
        f = next;
    }
    f.iter().rev().sum()
}

fn c09_distinct_value_sums(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-10);
    let mut rows = Vec::new();
    // ({2}^n, 1)^d with exponent 2n + 1; n = 0 is inadmissible.
    for d in 1..=2usize {
        let k: Vec<u32> = [2, 1].repeat(d);
        let lhs = eval_finite(&k, &q)?.value;
        rows.push(CheckRow::close(
            9,
            format!("unsigned n=1 d={d}"),
            distinct_value_sum(d, 3, false, 2000),
            lhs,
            1e-6,
        ));
    }
    // ({2}^n, 3, {2}^n, 1)^d with signed exponent 2n + 2.
    for n in 0..=1usize {
        for d in 1..=2usize {
            let mut block = vec![2; n];
            block.push(3);
            block.extend(vec![2; n]);
            block.push(1);
            let k = block.repeat(d);
            let lhs = eval_finite(&k, &q)?.value;
            let rhs = distinct_value_sum(2 * d, 2 * n as u32 + 2, true, 2000);
            rows.push(CheckRow::close(
                9,
                format!("signed n={n} d={d}"),
                rhs,
                lhs,
                1e-6,
            ));
        }
    }
    Ok(rows)
}

fn c10_half(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-11);
    let z: ZPoint = "1/2".parse()?;
    let a = zstar(&z, &q)?.value;
    let (b, _, _) = zstar_via_index(&z, &q)?;
    Ok(vec![
        CheckRow::close(10, "digit series", zeta(2), a, 1e-8),
        CheckRow::close(10, "index dispatch", zeta(2), b.value, 1e-8),
        CheckRow::close(10, "digit series vs index dispatch", b.value, a, 1e-9),
    ])
}

fn c11_monotone(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-11);
    let mut prev = 1.0;
    let mut violations = 0;
    for j in 1..=1024u128 {
        let v = zstar(&ZPoint::from_dyadic(Dyadic::new(j, 10)?)?, &q)?.value;
        if !(v > prev) {
            violations += 1;
        }
        prev = v;
    }
    Ok(vec![CheckRow::close(
        11,
        "violations on j/1024",
        0.0,
        violations as f64,
        0.0,
    )])
}

fn c12_inverse(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-10);
    let mut rows = Vec::new();
    for v in [1.2, 1.5, zeta(2), 2.0, 3.0] {
        let z = invert_zstar(v, 48, &q)?;
        rows.push(CheckRow::close(
            12,
            format!("v = {}", fmt15(v)),
            v,
            zstar(&z, &q)?.value,
            1e-6,
        ));
    }
    Ok(rows)
}

/// One-sided difference quotient `(Z*(z + s h) - Z*(z)) / (s h)`, `h = 2^-q`.
pub fn difference_quotient(z: &Dyadic, q: u32, right: bool, p: &TruncationParams) -> Result<f64> {
    let h = Dyadic::pow2_neg(q)?;
    let (hi, lo) = if right {
        (z.checked_add(&h)?, *z)
    } else {
        (*z, z.checked_sub(&h)?)
    };
    let diff = if lo.is_zero() {
        zstar(&ZPoint::from_dyadic(hi)?, p)?.value - 1.0
    } else {
        zstar_difference(&ZPoint::from_dyadic(hi)?, &ZPoint::from_dyadic(lo)?, p)?
    };
    Ok(diff / h.to_f64())
}

/// Richardson limit of the quotients at `h = 2^-q0, ..., 2^-q1`, assuming
/// their error behaves like `h^alpha` with `alpha` read off the last three.
pub fn richardson_quotient(
    z: &Dyadic,
    q0: u32,
    q1: u32,
    right: bool,
    p: &TruncationParams,
) -> Result<f64> {
    let d: Vec<f64> = (q0..=q1)
        .map(|q| difference_quotient(z, q, right, p))
        .collect::<Result<_>>()?;
    let n = d.len();
    let (a, b, c) = (d[n - 3], d[n - 2], d[n - 1]);
    let ratio = (b - a) / (c - b); // 2^alpha
    if !(ratio.is_finite() && ratio > 1.0) {
        return Ok(c);
    }
    Ok(c + (c - b) / (ratio - 1.0))
}

fn c13_derivatives(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-13);
    let mut rows = Vec::new();
    for s in ["1/4", "3/8", "5/8"] {
        let z: Dyadic = s.parse()?;
        let right = right_derivative(&z, &q)?.value;
        let left = left_derivative(&z, &q)?.value;
        let fr = richardson_quotient(&z, 14, 20, true, &q)?;
        let fl = richardson_quotient(&z, 14, 20, false, &q)?;
        rows.push(CheckRow::close(
            13,
            format!("right derivative at {s} (relative)"),
            0.0,
            (right - fr) / right,
            1e-3,
        ));
        rows.push(CheckRow::close(
            13,
            format!("left derivative at {s} (relative)"),
            0.0,
            (left - fl) / left,
            1e-3,
        ));
    }
    for s in ["1/2", "3/4", "7/8"] {
        let z: Dyadic = s.parse()?;
        let rep = left_derivative(&z, &q)?;
        rows.push(CheckRow::close(
            13,
            format!("left derivative at {s} diverges"),
            1.0,
            rep.diverges() as u8 as f64,
            0.0,
        ));
        let left = difference_quotient(&z, 16, false, &q)?;
        let right = difference_quotient(&z, 16, true, &q)?;
        let ratio = left / right;
        rows.push(CheckRow {
            criterion: 13,
            name: format!("left/right quotient at {s}, h = 2^-16, exceeds 10"),
            expected: 10.0,
            computed: ratio,
            residual: 10.0 - ratio,
            tol: 0.0,
            pass: ratio > 10.0,
        });
    }
    Ok(rows)
}

fn c14_divergence(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let start = Instant::now();
    let ratios: Vec<f64> = (6..=16u32)
        .map(|q| divergence_ratio(1, q, p))
        .collect::<Result<_>>()?;
    let secs = start.elapsed().as_secs_f64();
    let scaled: Vec<f64> = ratios
        .iter()
        .zip(6..)
        .map(|(r, q)| r / (q - 2) as f64)
        .collect();
    let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
    let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
    let steps = ratios.windows(2).filter(|w| !(w[1] > w[0])).count();
    Ok(vec![
        CheckRow::at_most(14, "bracket of ratio/(q-2), q = 6..16", 4.0, hi / lo),
        CheckRow::close(14, "non-increasing steps", 0.0, steps as f64, 0.0),
        CheckRow::at_most(14, "runtime seconds", 30.0, secs),
    ])
}

fn c15_bounds(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-13);
    let mut rows = Vec::new();
    // Largest sum/bound ratio over each family; a ratio above 1 is a violation.
    let mut explicit = (0.0f64, String::new());
    let mut at_r = (0.0f64, String::new());
    for r in 1..=3u32 {
        for s in 1..=4u32 {
            for n in r..=6u32 {
                let sum = lead_chain_sum(r, s, n as usize, &q)?.value;
                let ratio = sum / bound_chain_sum(r, s, n)?.upper;
                let slot = if n > r { &mut explicit } else { &mut at_r };
                if ratio > slot.0 {
                    *slot = (ratio, format!("r={r} s={s} n={n}"));
                }
            }
        }
    }
    rows.push(CheckRow::at_most(
        15,
        format!("sum / (1/((n-1)...(n-r) r^s)), worst {}", explicit.1),
        1.0,
        explicit.0,
    ));
    rows.push(CheckRow::at_most(
        15,
        format!("sum / (s/(r! r^s)) at n = r, worst {}", at_r.1),
        1.0,
        at_r.0,
    ));
    let (ratio, at) = nested_tail_comparison(&q)?;
    rows.push(CheckRow::at_most(
        15,
        format!("two-block comparison, worst {at}"),
        1.0,
        ratio,
    ));
    Ok(rows)
}

/// Largest ratio of
/// `sum_{m_1 >= ... >= m_a >= n_1 >= ... >= n_b >= A} 1/(m_1^2 m_2 ... m_a n_1^k_1 ... n_b^k_b)`
/// to `sum_{n_1 >= ... >= n_b >= A} 1/((n_1 - 1) n_1^k_1 ... n_b^k_b)` over
/// `a, b <= 2`, `2 <= A <= 4`, `k_j <= 3`.
pub fn nested_tail_comparison(p: &TruncationParams) -> Result<(f64, String)> {
    let mut worst = (0.0f64, String::new());
    for a in 1..=2usize {
        for b in 1..=2usize {
            for code in 0..3usize.pow(b as u32) {
                let k: Vec<u32> = (0..b)
                    .map(|i| (code / 3usize.pow(i as u32) % 3) as u32 + 1)
                    .collect();
                for floor in 2..=4usize {
                    let mut lhs_index = vec![2];
                    lhs_index.extend(vec![1; a - 1]);
                    lhs_index.extend(&k);
                    let lhs = star_sum_from(&lhs_index, floor, p)?.value;
                    // 1/(n - 1) = sum_{j >= 1} n^-j
                    let mut rhs = 0.0;
                    for j in 1..=200u32 {
                        let mut idx = k.clone();
                        idx[0] += j;
                        let t = star_sum_from(&idx, floor, p)?.value;
                        rhs += t;
                        if t < 1e-17 * rhs {
                            break;
                        }
                    }
                    let ratio = lhs / rhs;
                    if ratio > worst.0 {
                        worst = (ratio, format!("a={a} k={k:?} A={floor}"));
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn c16_origin(p: &TruncationParams) -> Result<Vec<CheckRow>> {
    let q = tight(p, 1e-15);
    let slope = difference_quotient(&Dyadic::ZERO, 20, true, &q)?;
    let right = right_derivative(&Dyadic::ZERO, &q)?.value;
    Ok(vec![
        CheckRow::close(16, "(Z*(2^-20) - 1) / 2^-20", 0.5, slope, 1e-3),
        CheckRow::close(16, "right_derivative(0)", 0.5, right, 0.0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_value_sum_small_cases() {
        // One variable: 2 zeta(s) truncated.
        let v = distinct_value_sum(1, 3, false, 2000);
        assert!((v - 2.0 * zeta(3)).abs() < 1e-6);
        // Two variables by direct double loop.
        let m = 60;
        let mut direct = 0.0;
        for a in 1..=m {
            for b in 1..=a {
                let c = if a == b { 2.0 } else { 4.0 };
                let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                direct += sign * c / ((a * b) as f64).powi(2);
            }
        }
        assert!((distinct_value_sum(2, 2, true, m) - direct).abs() < 1e-14);
    }

    #[test]
    fn small_index_count() {
        // r = 1: 3, r = 2: 12, r = 3: 48
        assert_eq!(small_indices().len(), 63);
    }

    #[test]
    fn tsv_has_header_and_status() {
        let rows = vec![CheckRow::close(1, "x", 2.0, 2.0, 1e-9)];
        let mut out = Vec::new();
        write_tsv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("criterion\tidentity"));
        assert!(text.trim_end().ends_with("PASS"));
    }
}
