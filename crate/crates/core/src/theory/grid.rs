//! Distribution functions on a uniform grid: the hypertree recursion, its
//! limit, and the limiting ODE.

use serde::Serialize;

use super::series::series_h;
use super::TheoryError;

pub const DEFAULT_GRID: usize = 4096;

/// `values[i]` approximates `F(i / M)` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionGrid {
    values: Vec<f64>,
}

impl FunctionGrid {
    pub fn from_values(values: Vec<f64>) -> Result<Self, TheoryError> {
        if values.len() < 2 {
            return Err(TheoryError::Domain("a grid needs at least 2 points".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TheoryError::Domain("grid values must be finite".into()));
        }
        Ok(Self { values })
    }

    pub fn from_fn(grid_size: usize, f: impl Fn(f64) -> f64) -> Result<Self, TheoryError> {
        if grid_size < 1 {
            return Err(TheoryError::Domain("grid size must be positive".into()));
        }
        let m = grid_size as f64;
        Self::from_values((0..=grid_size).map(|i| f(i as f64 / m)).collect())
    }

    /// `F_{d,0}(x) = x`.
    pub fn identity(grid_size: usize) -> Result<Self, TheoryError> {
        Self::from_fn(grid_size, |x| x)
    }

    pub fn grid_size(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 / self.grid_size() as f64
    }

    pub fn is_distribution(&self) -> bool {
        self.values.iter().all(|v| (0.0..=1.0).contains(v))
            && self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn sup_distance(&self, other: &FunctionGrid) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn integrand(f: f64, d_exp: u32, r: u32) -> f64 {
    (1.0 - (1.0 - f).powi(r as i32)).powi(d_exp as i32)
}

fn step_with_stride(prev: &FunctionGrid, d_exp: u32, r: u32, stride: usize) -> Vec<f64> {
    let m = prev.grid_size();
    let h = stride as f64 / m as f64;
    let pts: Vec<usize> = (0..=m).step_by(stride).collect();
    let mut out = vec![0.0; pts.len()];
    let mut tail = 0.0;
    let last = pts.len() - 1;
    out[last] = 1.0;
    for k in (0..last).rev() {
        let a = integrand(prev.at(pts[k]), d_exp, r);
        let b = integrand(prev.at(pts[k + 1]), d_exp, r);
        tail += 0.5 * h * (a + b);
        out[k] = 1.0 - tail;
    }
    out
}

fn clamp_monotone(values: &mut [f64]) {
    let mut running = 0.0f64;
    for v in values.iter_mut() {
        *v = v.clamp(0.0, 1.0).max(running);
        running = *v;
    }
}

/// `x -> 1 - int_x^1 [1 - (1 - F(t))^r]^d_exp dt` by the composite trapezoid
/// rule on the grid of `prev`, clamped to `[0, 1]` and made non-decreasing.
pub fn recursion_step(prev: &FunctionGrid, d_exp: u32, r: u32) -> Result<FunctionGrid, TheoryError> {
    if r < 1 {
        return Err(TheoryError::Domain("r must be at least 1".into()));
    }
    if !prev.is_distribution() {
        return Err(TheoryError::Domain("input grid is not a distribution function".into()));
    }
    let mut values = step_with_stride(prev, d_exp, r, 1);
    clamp_monotone(&mut values);
    FunctionGrid::from_values(values)
}

/// Richardson-style estimate of the trapezoid error of one step: the gap
/// between the full-grid and half-grid results divided by 3.
fn quadrature_error_estimate(prev: &FunctionGrid, d_exp: u32, r: u32) -> f64 {
    if !prev.grid_size().is_multiple_of(2) {
        return 0.0;
    }
    let fine = step_with_stride(prev, d_exp, r, 1);
    let coarse = step_with_stride(prev, d_exp, r, 2);
    coarse.iter().enumerate().map(|(k, c)| (fine[2 * k] - c).abs()).fold(0.0, f64::max) / 3.0
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub h: usize,
    /// `F_{d,h}(0)`.
    pub value_at_zero: f64,
    /// Sup-norm change from the previous iterate.
    pub change: f64,
    pub quadrature_error: f64,
    /// Largest violation of the alternating inequalities between this iterate
    /// and the two before it (0 when they hold exactly).
    pub oscillation_violation: f64,
    pub oscillation_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitResult {
    pub limit: FunctionGrid,
    pub converged: bool,
    pub iterations: usize,
    /// Sup distance between the last even and the last odd iterate.
    pub envelope_gap: f64,
    pub oscillation_ok: bool,
    pub log: Vec<IterationRecord>,
}

/// Iterates the recursion from `F_{d,0}(x) = x` until the sup-norm change drops
/// below `tol` or `max_h` steps, checking at each step that
/// `(-1)^h F_h <= (-1)^h F_{h+1}` and `(-1)^h F_h <= (-1)^h F_{h+2}` pointwise
/// within twice the estimated quadrature error (plus a roundoff floor).
pub fn iterate_to_limit(
    d: u32,
    r: u32,
    grid_size: usize,
    max_h: usize,
    tol: f64,
) -> Result<LimitResult, TheoryError> {
    if grid_size < 1000 {
        return Err(TheoryError::Domain(format!("grid size must be at least 1000, got {grid_size}")));
    }
    if d < 1 || r < 1 {
        return Err(TheoryError::Domain("iteration needs d >= 1 and r >= 1".into()));
    }
    const FLOOR: f64 = 1e-12;
    // sliding window of the last three iterates and their step errors
    let mut window: Vec<(FunctionGrid, f64)> = vec![(FunctionGrid::identity(grid_size)?, 0.0)];
    let mut log = Vec::new();
    let mut converged = false;
    let mut all_ok = true;

    for h in 1..=max_h {
        let prev = &window[window.len() - 1].0;
        let err = quadrature_error_estimate(prev, d, r);
        let next = recursion_step(prev, d, r)?;
        let change = next.sup_distance(prev);

        let mut violation = 0.0f64;
        let mut ok = true;
        let mut slack_sum = err;
        for back in 1..=2usize {
            if back > h {
                break;
            }
            let k = h - back;
            let (older, older_err) = &window[window.len() - back];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let slack = 2.0 * slack_sum + FLOOR;
            slack_sum += older_err;
            for (a, b) in older.values().iter().zip(next.values()) {
                let v = sign * (a - b);
                violation = violation.max(v);
                if v > slack {
                    ok = false;
                }
            }
        }
        all_ok &= ok;
        log.push(IterationRecord {
            h,
            value_at_zero: next.at(0),
            change,
            quadrature_error: err,
            oscillation_violation: violation,
            oscillation_ok: ok,
        });
        window.push((next, err));
        if window.len() > 3 {
            window.remove(0);
        }
        if change < tol {
            converged = true;
            break;
        }
    }

    let last = log.len();
    let envelope_gap = log.last().map_or(0.0, |rec| rec.change);
    let limit = window.pop().expect("window is never empty").0;
    Ok(LimitResult { limit, converged, iterations: last, envelope_gap, oscillation_ok: all_ok, log })
}

#[derive(Debug, Clone, Serialize)]
pub struct OdeSolution {
    pub grid: FunctionGrid,
    /// `max_x |1 - H_d(G(x)) - x|`.
    pub residual: f64,
}

/// `G' = -(1 - G^r)^(d-1)` with `G(1) = 0`, integrated from 1 down to 0 with
/// fixed-step RK4.
pub fn ode_g(d: u32, r: u32, grid_size: usize) -> Result<OdeSolution, TheoryError> {
    if d < 2 || r < 1 {
        return Err(TheoryError::Domain("the ODE needs d >= 2 and r >= 1".into()));
    }
    if grid_size < 1 {
        return Err(TheoryError::Domain("grid size must be positive".into()));
    }
    let rhs = |g: f64| -(1.0 - g.powi(r as i32)).powi(d as i32 - 1);
    let step = -1.0 / grid_size as f64;
    let mut values = vec![0.0; grid_size + 1];
    let mut g = 0.0;
    for i in (0..grid_size).rev() {
        let k1 = rhs(g);
        let k2 = rhs(g + 0.5 * step * k1);
        let k3 = rhs(g + 0.5 * step * k2);
        let k4 = rhs(g + step * k3);
        g += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !g.is_finite() || !(0.0..1.0).contains(&g) {
            return Err(TheoryError::Numeric(format!("ODE left [0, 1) at x = {}", i as f64 / grid_size as f64)));
        }
        values[i] = g;
    }
    let grid = FunctionGrid::from_values(values)?;
    let mut residual = 0.0f64;
    for i in 0..=grid_size {
        let h = series_h(d as u64, r as u64, grid.at(i), 1e-16)?;
        residual = residual.max((1.0 - h - grid.x(i)).abs());
    }
    Ok(OdeSolution { grid, residual })
}

/// Pointwise `G - G^(r+1) / (r+1)`.
pub fn g_tilde(g: &FunctionGrid, r: u32) -> Result<FunctionGrid, TheoryError> {
    if g.values().iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(TheoryError::Domain("values must lie in [0, 1]".into()));
    }
    let k = (r + 1) as f64;
    FunctionGrid::from_values(g.values().iter().map(|&v| v - v.powi(r as i32 + 1) / k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{f_value, solve_u};

    #[test]
    fn step_on_identity_is_closed_form() {
        let base = FunctionGrid::identity(4096).unwrap();
        let f = recursion_step(&base, 2, 1).unwrap();
        for i in (0..=4096).step_by(256) {
            let x = base.x(i);
            assert!((f.at(i) - (2.0 + x.powi(3)) / 3.0).abs() < 1e-6);
        }
        assert!((1.0 - f.at(0) - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn step_on_constants() {
        let one = FunctionGrid::from_fn(1000, |_| 1.0).unwrap();
        let f = recursion_step(&one, 3, 2).unwrap();
        for i in 0..=1000 {
            assert!((f.at(i) - f.x(i)).abs() < 1e-12);
        }
        let zero = FunctionGrid::from_fn(1000, |x| if x < 1.0 { 0.0 } else { 1.0 }).unwrap();
        let f = recursion_step(&zero, 3, 2).unwrap();
        // only the last panel sees a nonzero integrand
        assert!(f.values()[..999].iter().all(|&v| (v - (1.0 - 0.5e-3)).abs() < 1e-12));
    }

    #[test]
    fn rejects_non_distribution_input() {
        let bad = FunctionGrid::from_fn(10, |x| 1.0 - x).unwrap();
        assert!(recursion_step(&bad, 2, 1).is_err());
    }

    #[test]
    fn limit_matches_root() {
        let res = iterate_to_limit(1, 1, 4096, 2000, 1e-12).unwrap();
        assert!(res.converged && res.oscillation_ok);
        assert!((1.0 - res.limit.at(0) - (1.0 - (-1f64).exp())).abs() < 1e-5);
        let res = iterate_to_limit(2, 1, 4096, 2000, 1e-12).unwrap();
        assert!((1.0 - res.limit.at(0) - 0.5).abs() < 1e-5);
    }

    #[test]
    fn oscillation_is_visible_in_first_steps() {
        let res = iterate_to_limit(2, 2, 2048, 6, 0.0).unwrap();
        let v: Vec<f64> = res.log.iter().map(|r| r.value_at_zero).collect();
        // F_0(0) = 0 <= F_2(0) <= F_4(0) <= ... <= F_3(0) <= F_1(0)
        assert!(v[1] <= v[3] && v[3] <= v[5] && v[5] <= v[4] && v[4] <= v[2] && v[2] <= v[0]);
        assert!(res.oscillation_ok);
    }

    #[test]
    fn ode_hits_root_with_small_residual() {
        for (d, r) in [(2, 1), (3, 1), (3, 2), (5, 3)] {
            let sol = ode_g(d, r, 10_000).unwrap();
            assert_eq!(sol.grid.at(10_000), 0.0);
            let u = solve_u(d as u64, r as u64, 1e-13).unwrap();
            assert!((sol.grid.at(0) - u).abs() < 1e-8, "d={d} r={r}");
            assert!(sol.residual < 1e-8, "d={d} r={r}: {}", sol.residual);
        }
    }

    #[test]
    fn g_tilde_at_zero_is_f() {
        let sol = ode_g(3, 1, 4000).unwrap();
        let gt = g_tilde(&sol.grid, 1).unwrap();
        assert!((gt.at(0) - f_value(3, 1, 1e-13).unwrap()).abs() < 1e-8);
        assert!(gt.values().windows(2).all(|w| w[0] >= w[1]));
        let zero = FunctionGrid::from_fn(10, |_| 0.0).unwrap();
        assert!(g_tilde(&zero, 2).unwrap().values().iter().all(|&v| v == 0.0));
    }
}
