//! Closed forms for special infinite indices: Gamma products over roots of
//! unity, the matching infinite products over `m >= 2`, and the `{2}^inf`
//! tail reduction to finite values.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{eval_finite, hurwitz_zeta, TruncationParams};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(z)` by the Lanczos approximation, with reflection for `re z < 1/2`.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(z.re));
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (z * PI).sin();
        return Ok(Complex64::from(PI) / (s * complex_gamma(1.0 - z)?));
    }
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x)
}

/// One closed form evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// Real part of the Gamma product.
    pub value: f64,
    /// Imaginary part left over by the Gamma product (rounding only).
    pub imag_residue: f64,
    /// The infinite product over `m >= 2`, summed in log space.
    pub product: f64,
    /// Bound on the log of the tail `m > PRODUCT_TERMS` that was added analytically.
    pub product_tail_bound: f64,
}

/// Terms of an infinite product taken explicitly before the analytic tail.
const PRODUCT_TERMS: usize = 1001;

fn roots(k: usize, offset: f64) -> impl Iterator<Item = Complex64> {
    (0..k).map(move |j| Complex64::from_polar(1.0, PI * (2.0 * j as f64 + offset) / k as f64))
}

fn gamma_product<I>(factors: I) -> Result<(f64, f64)>
where
    I: IntoIterator<Item = Result<Complex64>>,
{
    let mut acc = Complex64::from(1.0);
    for f in factors {
        acc *= f?;
    }
    if acc.im.abs() > 1e-10 * acc.re.abs().max(1.0) {
        return Err(Error::Domain(format!("Gamma product not real: {acc}")));
    }
    Ok((acc.re, acc.im.abs()))
}

/// `sum_{m > M} (-1)^m m^-s` through two Hurwitz values at half-integers.
fn alternating_tail(s: u32, big_m: usize) -> f64 {
    let a = (big_m + 1) as f64 / 2.0;
    let sign = if (big_m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    sign * 0.5f64.powi(s as i32) * (hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 0.5))
}

/// `log prod_{m >= 2} f(m)`: explicit terms, then the tail from the
/// expansion `log f(m) = sum_j c_j e_j(m) m^{-j a}` supplied by `tail`.
fn log_product(log_f: impl Fn(f64) -> f64, tail: impl Fn(usize) -> f64) -> f64 {
    let mut head: Vec<f64> = (2..=PRODUCT_TERMS).map(|m| log_f(m as f64)).collect();
    head.reverse();
    let mut acc = tail(PRODUCT_TERMS);
    let mut comp = 0.0;
    for x in head {
        let y = x - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc
}

/// Powers `j a` that contribute to a product tail at `M = PRODUCT_TERMS`.
fn tail_powers(a: u32) -> impl Iterator<Item = u32> {
    (1..).map(move |j| j * a).take_while(|&s| s <= 60)
}

/// `zeta*({k}^inf) = prod_{m >= 2} m^k / (m^k - 1) = prod_{c^k = 1} Gamma(2 - c)`.
pub fn const_index_closed(k: u32) -> Result<ClosedForm> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} < 2")));
    }
    let (value, imag_residue) =
        gamma_product(roots(k as usize, 0.0).map(|c| complex_gamma(2.0 - c)))?;
    let log = log_product(
        |m| -(-m.powi(-(k as i32))).ln_1p(),
        |big_m| {
            tail_powers(k)
                .map(|s| hurwitz_zeta(s, big_m as f64 + 1.0) / (s / k) as f64)
                .sum()
        },
    );
    Ok(ClosedForm {
        value,
        imag_residue,
        product: log.exp(),
        product_tail_bound: 2.0 * (PRODUCT_TERMS as f64).powi(1 - k as i32) / (k - 1) as f64,
    })
}

/// `zeta*(({2}^n, 1)^inf) = 2 prod_{c^{2n+1} = 1} Gamma(2 - c) / Gamma(2 + c)`,
/// with product channel `2 prod_{m >= 2} (m^{2n+1} + 1) / (m^{2n+1} - 1)`.
pub fn two_n_one_closed(n: u32) -> Result<ClosedForm> {
    if n < 1 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let a = 2 * n + 1;
    let (g, imag_residue) = gamma_product(
        roots(a as usize, 0.0).map(|c| Ok(complex_gamma(2.0 - c)? / complex_gamma(2.0 + c)?)),
    )?;
    // log((x + 1)/(x - 1)) with x = m^a is 2 sum_{j odd} m^{-j a} / j
    let log = log_product(
        |m| {
            let x = m.powi(-(a as i32));
            (x).ln_1p() - (-x).ln_1p()
        },
        |big_m| {
            tail_powers(a)
                .filter(|s| (s / a) % 2 == 1)
                .map(|s| 2.0 * hurwitz_zeta(s, big_m as f64 + 1.0) / (s / a) as f64)
                .sum()
        },
    );
    Ok(ClosedForm {
        value: 2.0 * g,
        imag_residue,
        product: 2.0 * log.exp(),
        product_tail_bound: 4.0 * (PRODUCT_TERMS as f64).powi(1 - a as i32) / (a - 1) as f64,
    })
}

/// `zeta*(({2}^n, 3, {2}^n, 1)^inf)`.
///
/// Gamma channel `2 prod_{s = +-1} prod_{c^{2n+2} = s} Gamma(2 - c)^s Gamma(1 - c/2)^{-2s}`,
/// product channel `2 prod_{m >= 2} (m^{2n+2} - (-1)^m) / (m^{2n+2} + (-1)^m)`.
///
/// Both are the reciprocals, in the `m >= 2` factors, of the forms one gets
/// when the sign carried by the value `m = 1` is dropped; see
/// [`hoffman_like_unsigned`]. At `n = 0` this gives `4 coth(pi/2) / pi`.
pub fn hoffman_like_closed(n: u32) -> Result<ClosedForm> {
    let f = hoffman_like_unsigned(n)?;
    Ok(ClosedForm {
        value: 4.0 / f.value,
        imag_residue: f.imag_residue,
        product: 4.0 / f.product,
        product_tail_bound: f.product_tail_bound,
    })
}

/// The same family with the opposite sign convention:
/// `2 prod_{s = +-1} prod_{c^{2n+2} = s} Gamma(2 - c)^{-s} Gamma(1 - c/2)^{2s}`
/// `= 2 prod_{m >= 2} (m^{2n+2} + (-1)^m) / (m^{2n+2} - (-1)^m)`.
///
/// Kept as a separate entry point so the two conventions can be compared
/// against the series; only [`hoffman_like_closed`] matches it.
pub fn hoffman_like_unsigned(n: u32) -> Result<ClosedForm> {
    let a = 2 * n + 2;
    let k = a as usize;
    let plus =
        roots(k, 0.0).map(|c| Ok(complex_gamma(1.0 - c / 2.0)?.powu(2) / complex_gamma(2.0 - c)?));
    let minus =
        roots(k, 1.0).map(|c| Ok(complex_gamma(2.0 - c)? / complex_gamma(1.0 - c / 2.0)?.powu(2)));
    let (g, imag_residue) = gamma_product(plus.chain(minus))?;
    // log((x + e)/(x - e)) with e = (-1)^m is 2 sum_{j odd} e m^{-j a} / j
    let log = log_product(
        |m| {
            let e = if m as usize % 2 == 0 { 1.0 } else { -1.0 };
            let x = e * m.powi(-(a as i32));
            x.ln_1p() - (-x).ln_1p()
        },
        |big_m| {
            tail_powers(a)
                .filter(|s| (s / a) % 2 == 1)
                .map(|s| 2.0 * alternating_tail(s, big_m) / (s / a) as f64)
                .sum()
        },
    );
    Ok(ClosedForm {
        value: 2.0 * g,
        imag_residue,
        product: 2.0 * log.exp(),
        product_tail_bound: 4.0 * (PRODUCT_TERMS as f64).powi(1 - a as i32) / (a - 1) as f64,
    })
}

/// `zeta*({2, {1}^{n-2}}^inf) = n`.
pub fn staircase_closed(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} < 2")));
    }
    Ok(n as f64)
}

/// `zeta*(k_1, ..., k_r, {2}^inf)` reduced to finite values:
///
/// `(-1)^{|k|} (2 - 2 sum_s sum'_{j=2}^{k_s - 1} (-1)^{k_1 + ... + k_{s-1} + j} zeta*(k_1, ..., k_{s-1}, j))`
///
/// where `sum'_{j=a}^{b-1}` is `-sum_{j=b}^{a-1}` for `b < a` and empty for
/// `b = a`. With `a = 2` that means: nothing for `k_s = 2`, minus the `j = 1`
/// term for `k_s = 1`.
pub fn tail2_reduction(k: &[u32], p: &TruncationParams) -> Result<f64> {
    match k.first() {
        None => return Ok(2.0),
        Some(&k1) if k1 < 2 => return Err(Error::Inadmissible(format!("first entry {k1} < 2"))),
        _ => {}
    }
    if k.contains(&0) {
        return Err(Error::Inadmissible("index entries must be >= 1".into()));
    }
    let sign = |e: u32| if e % 2 == 0 { 1.0 } else { -1.0 };
    let mut inner = 0.0;
    let mut partial = 0u32;
    let mut idx: Vec<u32> = Vec::with_capacity(k.len());
    for &ks in k {
        let terms: Vec<(u32, f64)> = match ks {
            1 => vec![(1, -1.0)],
            _ => (2..ks).map(|j| (j, 1.0)).collect(),
        };
        for (j, c) in terms {
            idx.push(j);
            inner += c * sign(partial + j) * eval_finite(&idx, p)?.value;
            idx.pop();
        }
        partial += ks;
        idx.push(ks);
    }
    Ok(sign(partial) * (2.0 - 2.0 * inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::zeta;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_known_values() {
        assert!((complex_gamma(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((complex_gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((complex_gamma(c(-0.5, 0.0)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(matches!(complex_gamma(c(-2.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(complex_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_modulus_on_vertical_line() {
        // |Gamma(1 + i y)|^2 = pi y / sinh(pi y)
        for y in [0.3, 1.0, 2.0] {
            let g = complex_gamma(c(1.0, y)).unwrap().norm_sqr();
            let expect = PI * y / (PI * y).sinh();
            assert!(((g - expect) / expect).abs() < 1e-13);
        }
    }

    #[test]
    fn gamma_against_product_limit() {
        // Gamma(z) = lim n^z n! / (z (z+1) ... (z+n)); error O(1/n), removed by
        // Richardson over n, 2n, 4n.
        let z = c(2.0, -1.0);
        let limit = |n: usize| {
            let mut log = z * (n as f64).ln();
            for j in 0..=n {
                log -= (z + j as f64).ln();
                if j > 0 {
                    log += (j as f64).ln();
                }
            }
            log.exp()
        };
        let (a, b, d) = (limit(250_000), limit(500_000), limit(1_000_000));
        let r1 = 2.0 * b - a;
        let r2 = 2.0 * d - b;
        let extrapolated = (4.0 * r2 - r1) / 3.0;
        let g = complex_gamma(z).unwrap();
        assert!(
            (g - extrapolated).norm() / g.norm() < 1e-9,
            "{g} vs {extrapolated}"
        );
    }

    #[test]
    fn gamma_conjugate_symmetry() {
        for z in [c(0.7, 1.3), c(3.5, -2.0), c(-1.5, 0.5)] {
            let a = complex_gamma(z.conj()).unwrap();
            let b = complex_gamma(z).unwrap().conj();
            assert!((a - b).norm() <= 1e-13 * a.norm());
        }
    }

    #[test]
    fn const_index_values() {
        let two = const_index_closed(2).unwrap();
        assert!((two.value - 2.0).abs() < 1e-13);
        assert!((two.product - 2.0).abs() < 1e-13);
        let four = const_index_closed(4).unwrap();
        let expect = 8.0 * PI / (PI.exp() - (-PI).exp());
        assert!((four.value - expect).abs() < 1e-12);
        assert!((four.product - expect).abs() < 1e-12);
        for k in 3..=8 {
            let f = const_index_closed(k).unwrap();
            assert!((f.value - f.product).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn two_n_one_values() {
        let one = two_n_one_closed(1).unwrap();
        assert!((one.value - 3.0).abs() < 1e-12);
        assert!((one.product - 3.0).abs() < 1e-12);
        for n in 2..=4 {
            let f = two_n_one_closed(n).unwrap();
            assert!((f.value - f.product).abs() < 1e-10);
        }
    }

    #[test]
    fn hoffman_like_values() {
        let e = PI.exp();
        let f = hoffman_like_closed(0).unwrap();
        let expect = 4.0 * (e + 1.0) / (PI * (e - 1.0));
        assert!((f.value - expect).abs() < 1e-12, "{f:?}");
        assert!((f.product - expect).abs() < 1e-12);
        // The other sign convention lands on pi tanh(pi/2) instead.
        let g = hoffman_like_unsigned(0).unwrap();
        assert!((g.value - PI * (PI / 2.0).tanh()).abs() < 1e-12);
        for n in 1..=3 {
            let f = hoffman_like_closed(n).unwrap();
            assert!((f.value - f.product).abs() < 1e-10);
        }
    }

    #[test]
    fn tail2_examples() {
        let p = TruncationParams::default();
        assert!((tail2_reduction(&[3], &p).unwrap() - (2.0 * zeta(2) - 2.0)).abs() < 1e-10);
        assert!((tail2_reduction(&[2], &p).unwrap() - 2.0).abs() < 1e-15);
        assert!(tail2_reduction(&[1, 2], &p).is_err());
    }

    #[test]
    fn staircase() {
        assert_eq!(staircase_closed(5).unwrap(), 5.0);
        assert!(staircase_closed(1).is_err());
    }
}
