//! Closed-form bounds: the locality error, comparison bounds, increasing loose
//! paths and the variance bound.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::TheoryError;

fn product_k_plus_inv_r(r: u64, upto: u64) -> f64 {
    let inv = 1.0 / r as f64;
    (1..=upto).map(|k| k as f64 + inv).product()
}

/// `d (d-1)^h / (r prod_{k=1}^{h+1} (k + 1/r))`.
pub fn escape_probability_bound(d: u64, r: u64, h: u64) -> Result<f64, TheoryError> {
    if d < 2 || r < 1 {
        return Err(TheoryError::Domain("escape bound needs d >= 2 and r >= 1".into()));
    }
    let num = d as f64 * ((d - 1) as f64).powi(h as i32);
    Ok(num / (r as f64 * product_k_plus_inv_r(r, h + 1)))
}

/// The same bound as an exact rational, `d (d-1)^h r^h / prod_{k=1}^{h+1} (kr+1)`.
pub fn escape_probability_bound_exact(d: u64, r: u64, h: u64) -> Result<BigRational, TheoryError> {
    if d < 2 || r < 1 {
        return Err(TheoryError::Domain("escape bound needs d >= 2 and r >= 1".into()));
    }
    let num = BigInt::from(d) * BigInt::from(d - 1).pow(h as u32) * BigInt::from(r).pow(h as u32);
    let den: BigInt = (1..=h + 1).map(|k| BigInt::from(k * r + 1)).product();
    Ok(BigRational::new(num, den))
}

fn h0(g: u64) -> u64 {
    (g - 3) / 2
}

fn check_eps(g: u64, d: u64, r: u64) -> Result<(), TheoryError> {
    if g < 4 || d < 2 || r < 1 {
        return Err(TheoryError::Domain(format!(
            "epsilon needs g >= 4, d >= 2, r >= 1 (got g={g}, d={d}, r={r})"
        )));
    }
    Ok(())
}

/// `epsilon(g, d, r)`: the escape bound at `h0 = floor((g-3)/2)`, with the
/// product in the denominator.
pub fn epsilon_bound(g: u64, d: u64, r: u64) -> Result<f64, TheoryError> {
    check_eps(g, d, r)?;
    escape_probability_bound(d, r, h0(g))
}

/// The displayed variant with `r * sum_{k=1}^{floor((g-1)/2)} (k + 1/r)` in
/// the denominator. Reported next to [`epsilon_bound`] for comparison only.
pub fn epsilon_bound_sum_form(g: u64, d: u64, r: u64) -> Result<f64, TheoryError> {
    check_eps(g, d, r)?;
    let inv = 1.0 / r as f64;
    let sum: f64 = (1..=(g - 1) / 2).map(|k| k as f64 + inv).sum();
    Ok(d as f64 * ((d - 1) as f64).powi(h0(g) as i32) / (r as f64 * sum))
}

/// `d! / prod_{i=1}^d (i + 1/r)`, the per-vertex Caro-Tuza yield.
pub fn caro_tuza_per_n(d: u64, r: u64) -> Result<f64, TheoryError> {
    if r < 1 {
        return Err(TheoryError::Domain("r must be at least 1".into()));
    }
    let rf = r as f64;
    Ok((1..=d).map(|i| i as f64 * rf / (i as f64 * rf + 1.0)).product())
}

/// Exact form `prod_{i=1}^d ri / (ri + 1)`.
pub fn caro_tuza_exact(d: u64, r: u64) -> Result<BigRational, TheoryError> {
    if r < 1 {
        return Err(TheoryError::Domain("r must be at least 1".into()));
    }
    let num: BigInt = (1..=d).map(|i| BigInt::from(i * r)).product();
    let den: BigInt = (1..=d).map(|i| BigInt::from(i * r + 1)).product();
    Ok(BigRational::new(num, den))
}

/// `int_0^1 (1 - x^r)^d dx` by double-exponential quadrature.
pub fn caro_tuza_quadrature(d: u64, r: u64) -> f64 {
    quadrature::integrate(|x| (1.0 - x.powi(r as i32)).powi(d as i32), 0.0, 1.0, 1e-15).integral
}

/// `0.36 * 10^(-5/r) * (ln d / (r d))^(1/r)`.
pub fn akpss_per_n(d: f64, r: u64) -> Result<f64, TheoryError> {
    if d <= 1.0 || r < 1 {
        return Err(TheoryError::Domain(format!("AKPSS bound needs d > 1 and r >= 1, got d={d}")));
    }
    let rf = r as f64;
    Ok(0.36 * 10f64.powf(-5.0 / rf) * asymptotic_scale(d, r))
}

/// `(ln d / (r d))^(1/r)`.
pub fn asymptotic_scale(d: f64, r: u64) -> f64 {
    let rf = r as f64;
    (d.ln() / (rf * d)).powf(1.0 / rf)
}

/// Number of weight orders of a loose path of length `l` under which it is
/// increasing: `(lr+1)! / prod_{k=1}^l (kr+1)`.
pub fn increasing_path_count(r: u64, l: u64) -> Result<BigInt, TheoryError> {
    if r < 1 || l < 1 {
        return Err(TheoryError::Domain("paths need r >= 1 and l >= 1".into()));
    }
    let fact: BigInt = (1..=l * r + 1).map(BigInt::from).product();
    let den: BigInt = (1..=l).map(|k| BigInt::from(k * r + 1)).product();
    Ok(fact / den)
}

/// `1 / prod_{k=1}^l (kr+1)`.
pub fn increasing_path_probability(r: u64, l: u64) -> Result<BigRational, TheoryError> {
    if r < 1 || l < 1 {
        return Err(TheoryError::Domain("paths need r >= 1 and l >= 1".into()));
    }
    let den: BigInt = (1..=l).map(|k| BigInt::from(k * r + 1)).product();
    Ok(BigRational::new(BigInt::from(1), den))
}

/// `3 d^2 r^2 e^(r^2 (d-1)^3)`, a per-vertex variance bound.
pub fn variance_bound_per_n(d: u64, r: u64) -> f64 {
    let (df, rf) = (d as f64, r as f64);
    3.0 * df * df * rf * rf * (rf * rf * (df - 1.0).powi(3)).exp()
}
