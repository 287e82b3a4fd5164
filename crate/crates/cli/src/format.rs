//! `printf("%.*g")`-style number rendering.

/// Significant digits printed by default.
pub const DEFAULT_DIGITS: usize = 12;
/// Enough digits to round-trip any `f64`.
pub const EXACT_DIGITS: usize = 17;

/// Formats `x` like C's `%.{digits}g`: fixed notation for decimal exponents
/// in `-4..digits`, scientific otherwise, trailing zeros removed.
pub fn general(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Number formatter bound to a digit count.
#[derive(Debug, Clone, Copy)]
pub struct Num {
    pub digits: usize,
}

impl Num {
    pub fn new(exact: bool) -> Self {
        Num {
            digits: if exact { EXACT_DIGITS } else { DEFAULT_DIGITS },
        }
    }

    pub fn fmt(&self, x: f64) -> String {
        general(x, self.digits)
    }
}
