//! Locale-independent number formatting in the style of C's `%g`.

use miquel_core::Point;

/// `v` with at most `sig` significant digits, trailing zeros removed.
/// Negative zero prints as `0`.
pub fn sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        format!("{}e{}", trim(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = trim(&format!("{v:.decimals$}")).to_string();
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Twelve significant digits, used for reports and tables.
pub fn num(v: f64) -> String {
    sig(v, 12)
}

pub fn point(p: Point) -> String {
    format!("({}, {})", num(p.x), num(p.y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        assert_eq!(sig(0.0, 9), "0");
        assert_eq!(sig(-0.0, 9), "0");
        assert_eq!(sig(1.0, 9), "1");
        assert_eq!(sig(-2.5, 9), "-2.5");
        assert_eq!(sig(1.0 / 3.0, 9), "0.333333333");
        assert_eq!(sig(123456789012.0, 9), "1.23456789e11");
        assert_eq!(sig(0.00001234, 9), "1.234e-5");
        assert_eq!(sig(0.0001234, 9), "0.0001234");
        assert_eq!(sig(9.9999999999, 9), "10");
        assert_eq!(sig(-1e-300, 12), "-1e-300");
        assert_eq!(num(2f64.sqrt()), "1.41421356237");
    }
}
