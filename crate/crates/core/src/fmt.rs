//! Number formatting shared by reports and the CLI.

/// Formats `x` with 9 significant digits, dropping trailing zeros, in the
/// style of C's `%.9g`.
pub fn sig9(x: f64) -> String {
    sig(x, 9)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig9(0.5), "0.5");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(0.375), "0.375");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(0.632120558828558), "0.632120559");
        assert_eq!(sig9(1234567890.0), "1.23456789e+09");
        assert_eq!(sig9(3.6e-6), "3.6e-06");
        assert_eq!(sig9(-2.5), "-2.5");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(99999.99999), "100000");
    }
}
