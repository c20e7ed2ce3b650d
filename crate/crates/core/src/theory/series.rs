//! The power series `H_d(u) = sum_n C(n+d-2, d-2) u^(rn+1) / (rn+1)`, its root
//! `u(d, r)` and the limit density `f(d, r)`.

use super::TheoryError;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_args(d: u64, r: u64) -> Result<(), TheoryError> {
    if d < 2 {
        return Err(TheoryError::Domain(format!("d must be at least 2, got {d}")));
    }
    if r < 1 {
        return Err(TheoryError::Domain("r must be at least 1".into()));
    }
    Ok(())
}

/// Sums the series, stopping once the tail is provably below `tol` or, when
/// `cutoff` is given, as soon as the partial sum exceeds it.
///
/// The ratio of consecutive terms after term `n` is bounded by
/// `q_n = (n+d-1)/(n+1) * u^r`, which decreases in `n`; once `q_n < 1` the
/// tail is at most `t_n q_n / (1 - q_n)`.
fn sum_series(d: u64, r: u64, u: f64, tol: f64, cutoff: Option<f64>) -> Result<f64, TheoryError> {
    let (df, rf) = (d as f64, r as f64);
    let ur = u.powi(r as i32);
    let mut acc = Compensated::default();
    // t_n = C(n+d-2, d-2) u^(rn+1) / (rn+1), tracked through c_n = C(n+d-2,d-2) u^(rn+1)
    let mut c = u;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = c / (rf * nf + 1.0);
        acc.add(term);
        if let Some(limit) = cutoff {
            if acc.value() > limit {
                return Ok(acc.value());
            }
        }
        let q = (nf + df - 1.0) / (nf + 1.0) * ur;
        if term == 0.0 || (q < 1.0 && term * q / (1.0 - q) < tol) {
            return Ok(acc.value());
        }
        c *= q;
        if !c.is_finite() {
            return Err(TheoryError::Numeric("series term overflowed".into()));
        }
    }
    Err(TheoryError::Numeric(format!("series did not converge within {MAX_TERMS} terms")))
}

/// `H_d(u)` for `0 <= u < 1`.
pub fn series_h(d: u64, r: u64, u: f64, tol: f64) -> Result<f64, TheoryError> {
    check_args(d, r)?;
    if !(0.0..1.0).contains(&u) {
        return Err(TheoryError::Domain(format!("H_d(u) needs 0 <= u < 1, got {u}")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    sum_series(d, r, u, tol, None)
}

/// `H_d(u)` by quadrature of its derivative `(1 - t^r)^-(d-1)` over `[0, u]`.
pub fn series_h_quadrature(d: u64, r: u64, u: f64) -> Result<f64, TheoryError> {
    check_args(d, r)?;
    if !(0.0..1.0).contains(&u) {
        return Err(TheoryError::Domain(format!("H_d(u) needs 0 <= u < 1, got {u}")));
    }
    let out = quadrature::integrate(
        |t| (1.0 - t.powi(r as i32)).powf(-((d - 1) as f64)),
        0.0,
        u,
        1e-14,
    );
    Ok(out.integral)
}

/// `u(d, r)`: the root of `H_d(u) = 1` in `(0, 1)`, by bisection.
pub fn solve_u(d: u64, r: u64, tol: f64) -> Result<f64, TheoryError> {
    check_args(d, r)?;
    let term_tol = (tol * 1e-3).max(1e-17);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let h = sum_series(d, r, mid, term_tol, Some(2.0))?;
        if h < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = 0.5 * (lo + hi);
    let h = series_h(d, r, u, term_tol)?;
    if (h - 1.0).abs() > tol.max(1e-12) {
        return Err(TheoryError::Numeric(format!("bisection ended with |H - 1| = {:e}", (h - 1.0).abs())));
    }
    Ok(u)
}

/// `f(d, r) = u - u^(r+1) / (r+1)`.
pub fn f_value(d: u64, r: u64, tol: f64) -> Result<f64, TheoryError> {
    let u = solve_u(d, r, tol)?;
    Ok(f_from_u(u, r))
}

pub(crate) fn f_from_u(u: f64, r: u64) -> f64 {
    u - u.powi(r as i32 + 1) / (r + 1) as f64
}
