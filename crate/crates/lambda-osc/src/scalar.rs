//! Deformation parameters given on the command line, kept both exactly and
//! as `f64`.

use std::fmt;
use std::str::FromStr;

use lambda_osc_core::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaValue {
    text: String,
    exact: Rational,
    value: f64,
}

impl LambdaValue {
    pub fn from_f64(x: f64) -> Self {
        format!("{x}").parse().expect("finite float literal")
    }

    pub fn exact(&self) -> &Rational {
        &self.exact
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for LambdaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Accepts `p/q`, decimals and scientific notation; decimals are converted
/// exactly (`0.3` is `3/10`).
impl FromStr for LambdaValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (exact, value) = if t.contains('/') {
            let r: Rational = t.parse().map_err(|_| format!("invalid fraction `{t}`"))?;
            let v = r.to_f64();
            (r, v)
        } else {
            let v: f64 = t.parse().map_err(|_| format!("invalid number `{t}`"))?;
            if !v.is_finite() {
                return Err(format!("lambda must be finite, got `{t}`"));
            }
            (decimal_to_rational(t)?, v)
        };
        Ok(LambdaValue {
            text: t.to_string(),
            exact,
            value,
        })
    }
}

fn decimal_to_rational(t: &str) -> Result<Rational, String> {
    let bad = || format!("invalid number `{t}`");
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let mut num = format!("{int}{frac}");
    if num.is_empty() {
        return Err(bad());
    }
    let scale = exp - frac.len() as i32;
    let mut den = String::from("1");
    if scale >= 0 {
        num.push_str(&"0".repeat(scale as usize));
    } else {
        den.push_str(&"0".repeat((-scale) as usize));
    }
    format!("{sign}{num}/{den}").parse().map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use lambda_osc_core::rat;

    #[test]
    fn parses_forms() {
        let l: LambdaValue = "0.3".parse().unwrap();
        assert_eq!(l.exact(), &rat(3, 10));
        assert_eq!(l.value(), 0.3);
        let l: LambdaValue = "-1/5".parse().unwrap();
        assert_eq!(l.exact(), &rat(-1, 5));
        assert_eq!(l.value(), -0.2);
        let l: LambdaValue = "1e-6".parse().unwrap();
        assert_eq!(l.exact(), &rat(1, 1_000_000));
        let l: LambdaValue = "-2.5E1".parse().unwrap();
        assert_eq!(l.exact(), &rat(-25, 1));
        assert_eq!("0".parse::<LambdaValue>().unwrap().exact(), &rat(0, 1));
        assert!("abc".parse::<LambdaValue>().is_err());
        assert!("inf".parse::<LambdaValue>().is_err());
    }
}
