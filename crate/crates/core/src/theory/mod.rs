//! Closed forms and numerics for the greedy yield: `u(d, r)`, `f(d, r)`, the
//! locality error `epsilon`, comparison bounds, the hypertree recursion and
//! the limiting ODE.

mod bounds;
mod grid;
mod series;

use serde::Serialize;
use thiserror::Error;

pub use bounds::{
    akpss_per_n, asymptotic_scale, caro_tuza_exact, caro_tuza_per_n, caro_tuza_quadrature,
    epsilon_bound, epsilon_bound_sum_form, escape_probability_bound, escape_probability_bound_exact,
    increasing_path_count, increasing_path_probability, variance_bound_per_n,
};
pub use grid::{
    g_tilde, iterate_to_limit, ode_g, recursion_step, FunctionGrid, IterationRecord, LimitResult,
    OdeSolution, DEFAULT_GRID,
};
pub use series::{f_value, series_h, series_h_quadrature, solve_u, MAX_TERMS};

pub(crate) use series::f_from_u;

/// Default tolerance on `|H_d(u) - 1|`.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoryError {
    #[error("{0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryReport {
    pub d: u64,
    pub r: u64,
    pub g: Option<u64>,
    pub u: f64,
    pub f: f64,
    pub epsilon: Option<f64>,
    /// The variant of epsilon with a sum in the denominator.
    pub epsilon_sum_form: Option<f64>,
    pub lower_bound_per_n: Option<f64>,
    pub caro_tuza_per_n: f64,
    pub akpss_per_n: f64,
    /// `(ln d / (r d))^(1/r)`.
    pub asymptotic_approx: f64,
}

pub const REPORT_CSV_HEADER: &str = "d,r,g,u,f,epsilon,lower_per_n,caro_tuza,akpss,asymptotic";

impl TheoryReport {
    pub fn compute(d: u64, r: u64, g: Option<u64>) -> Result<Self, TheoryError> {
        let u = solve_u(d, r, DEFAULT_TOL)?;
        let f = f_from_u(u, r);
        let (epsilon, epsilon_sum_form) = match g {
            Some(g) => (Some(epsilon_bound(g, d, r)?), Some(epsilon_bound_sum_form(g, d, r)?)),
            None => (None, None),
        };
        Ok(Self {
            d,
            r,
            g,
            u,
            f,
            epsilon,
            epsilon_sum_form,
            lower_bound_per_n: epsilon.map(|e| f - e),
            caro_tuza_per_n: caro_tuza_per_n(d, r)?,
            akpss_per_n: akpss_per_n(d as f64, r)?,
            asymptotic_approx: asymptotic_scale(d as f64, r),
        })
    }

    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(crate::fmt::sig9).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.r,
            self.g.map(|g| g.to_string()).unwrap_or_default(),
            crate::fmt::sig9(self.u),
            crate::fmt::sig9(self.f),
            opt(self.epsilon),
            opt(self.lower_bound_per_n),
            crate::fmt::sig9(self.caro_tuza_per_n),
            crate::fmt::sig9(self.akpss_per_n),
            crate::fmt::sig9(self.asymptotic_approx),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub d: u64,
    pub u: f64,
    pub f: f64,
    pub scale: f64,
    /// `u / scale`.
    pub ratio: f64,
    pub f_over_u: f64,
}

/// Ratio of `u(d, r)` to `(ln d / (r d))^(1/r)` for each `d`.
pub fn asymptotic_table(r: u64, ds: &[u64]) -> Result<Vec<AsymptoticRow>, TheoryError> {
    ds.iter()
        .map(|&d| {
            if d < 3 {
                return Err(TheoryError::Domain(format!("asymptotic table needs d >= 3, got {d}")));
            }
            let u = solve_u(d, r, DEFAULT_TOL)?;
            let f = f_from_u(u, r);
            let scale = asymptotic_scale(d as f64, r);
            Ok(AsymptoticRow { d, u, f, scale, ratio: u / scale, f_over_u: f / u })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_petersen_parameters() {
        let rep = TheoryReport::compute(3, 1, Some(5)).unwrap();
        assert!((rep.u - 0.5).abs() < 1e-10);
        assert!((rep.f - 0.375).abs() < 1e-10);
        assert!((rep.epsilon.unwrap() - 1.0).abs() < 1e-15);
        assert!(rep.lower_bound_per_n.unwrap() < rep.f);
        let row = rep.csv_row();
        assert!(row.starts_with("3,1,5,0.5,0.375,1,"), "{row}");
    }

    #[test]
    fn asymptotic_ratios_approach_one() {
        for r in 1..=3 {
            let rows = asymptotic_table(r, &[100, 1000, 10_000, 100_000, 1_000_000]).unwrap();
            let gaps: Vec<f64> = rows.iter().map(|x| (x.ratio - 1.0).abs()).collect();
            assert!(gaps.windows(2).all(|w| w[1] < w[0]), "r={r}: {gaps:?}");
            assert!(rows.iter().all(|x| x.ratio.is_finite() && x.ratio > 0.0));
            assert!(rows.windows(2).all(|w| (1.0 - w[1].f_over_u) < (1.0 - w[0].f_over_u)));
        }
        assert!(asymptotic_table(1, &[2]).is_err());
    }

    #[test]
    fn akpss_is_below_f_at_large_d() {
        for r in 1..=4 {
            let d = 1_000_000;
            assert!(akpss_per_n(d as f64, r).unwrap() < f_value(d, r, 1e-12).unwrap());
        }
    }
}
