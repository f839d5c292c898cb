//! Nested sums over weakly decreasing chains `m_1 >= m_2 >= ... >= m_d >= floor`.
//!
//! The recursion runs from the outermost variable inwards. After `j` levels
//! the state is the summand `F_j(m)` as a function of the innermost variable:
//!
//! * `F_1(m) = w_1(m)`
//! * free link:  `F_{j+1}(m) = w_{j+1}(m) * sum_{n >= m} F_j(n)`
//! * tied link:  `F_{j+1}(m) = w_{j+1}(m) * F_j(m)`   (forces `m_{j+1} = m_j`)
//!
//! and the full sum after `j` levels is `sum_{m >= floor} F_j(m)`.
//!
//! Below a cutoff `N` every `F_j(m)` is held exactly; from `N` on it is held as
//! an asymptotic expansion in `1/m`, so infinite suffix sums reduce to
//! Euler–Maclaurin expansions of Hurwitz zeta. Because the sums are taken
//! from the top, no logarithms ever appear in these expansions.

use super::asym::AsymSeries;
use crate::error::Result;

/// Per-level weight `w(m)`: exact below the cutoff, an expansion above it.
#[derive(Debug, Clone)]
pub(crate) enum Weight {
    /// `m^{-k}`.
    Power(u32),
    /// Tabulated `w(m)` for `m < cutoff` (indexed by `m`) plus its expansion.
    Table {
        values: Vec<f64>,
        series: AsymSeries,
    },
}

impl Weight {
    fn at(&self, m: usize) -> f64 {
        match self {
            Weight::Power(k) => (m as f64).powi(-(*k as i32)),
            Weight::Table { values, .. } => values[m],
        }
    }

    fn series(&self) -> AsymSeries {
        match self {
            Weight::Power(k) => AsymSeries::monomial(*k as usize, 1.0),
            Weight::Table { series, .. } => series.clone(),
        }
    }

    /// `m^{-k} * g(m)` where `g` is tabulated up to the cutoff.
    pub fn power_times(k: u32, g_values: &[f64], g_series: &AsymSeries) -> Weight {
        let values = g_values
            .iter()
            .enumerate()
            .map(|(m, &g)| {
                if m == 0 {
                    0.0
                } else {
                    g * (m as f64).powi(-(k as i32))
                }
            })
            .collect();
        Weight::Table {
            values,
            series: AsymSeries::monomial(k as usize, 1.0).mul(g_series),
        }
    }
}

/// Link between consecutive chain variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Link {
    /// `m_j >= m_{j+1}`
    Free,
    /// `m_j = m_{j+1}`
    Tied,
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new(x: f64) -> Self {
        Compensated { sum: x, comp: 0.0 }
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NestedSum {
    floor: usize,
    cutoff: usize,
    /// `F(m)` for `m` in `floor..cutoff`.
    exact: Vec<f64>,
    /// `F(m)` for `m >= cutoff`.
    tail: AsymSeries,
    levels: usize,
}

impl NestedSum {
    /// Chain with one variable, `F_1 = w`.
    pub fn new(floor: usize, cutoff: usize, w: &Weight) -> Self {
        assert!(floor >= 1 && cutoff > floor);
        let exact = (floor..cutoff).map(|m| w.at(m)).collect();
        NestedSum {
            floor,
            cutoff,
            exact,
            tail: w.series(),
            levels: 1,
        }
    }

    /// Terms touched so far: exact cells per level.
    pub fn terms(&self) -> usize {
        self.levels * (self.cutoff - self.floor)
    }

    pub fn push(&mut self, link: Link, w: &Weight) -> Result<()> {
        match link {
            Link::Tied => {
                for (i, f) in self.exact.iter_mut().enumerate() {
                    *f *= w.at(self.floor + i);
                }
                self.tail = self.tail.mul(&w.series());
            }
            Link::Free => {
                let suffix = self.tail.suffix_sum()?;
                let mut acc = Compensated::new(suffix.eval(self.cutoff as f64));
                for i in (0..self.exact.len()).rev() {
                    acc.add(self.exact[i]);
                    self.exact[i] = acc.value() * w.at(self.floor + i);
                }
                self.tail = suffix.mul(&w.series());
            }
        }
        self.levels += 1;
        Ok(())
    }

    /// `sum_{m >= floor} F(m)`.
    pub fn total(&self) -> Result<f64> {
        self.total_with(|_| 1.0, &AsymSeries::monomial(0, 1.0))
    }

    /// `sum_{m >= floor} F(m) (a m + b)`.
    pub fn total_linear(&self, a: f64, b: f64) -> Result<f64> {
        let tail = self.tail.mul_m()?.scale(a).add(&self.tail.scale(b));
        let head = self.head_sum(|m| a * m as f64 + b);
        Ok(tail.suffix_sum()?.eval(self.cutoff as f64) + head)
    }

    /// `sum_{m >= floor} F(m) g(m)` with `g` given exactly and by its expansion.
    pub fn total_with(&self, g: impl Fn(usize) -> f64, g_series: &AsymSeries) -> Result<f64> {
        let tail = self
            .tail
            .mul(g_series)
            .suffix_sum()?
            .eval(self.cutoff as f64);
        let mut acc = Compensated::new(tail);
        for i in (0..self.exact.len()).rev() {
            acc.add(self.exact[i] * g(self.floor + i));
        }
        Ok(acc.value())
    }

    fn head_sum(&self, g: impl Fn(usize) -> f64) -> f64 {
        let mut acc = Compensated::default();
        for i in (0..self.exact.len()).rev() {
            acc.add(self.exact[i] * g(self.floor + i));
        }
        acc.value()
    }

    #[cfg(test)]
    /// Portion of the total carried by the asymptotic tail (`m >= cutoff`).
    pub fn tail_total(&self) -> Result<f64> {
        Ok(self.tail.suffix_sum()?.eval(self.cutoff as f64))
    }
}
