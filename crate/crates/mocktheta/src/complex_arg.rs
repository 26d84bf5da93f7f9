//! Complex numbers on the command line: `a`, `bi`, `a+bi`, `a-bi`, with an
//! optional leading sign, decimal or exponent notation and `i` standing for
//! `1i`.

use num_complex::Complex64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as a complex number (expected a+bi)")]
pub struct ParseComplexError(String);

fn real(s: &str, whole: &str) -> Result<f64, ParseComplexError> {
    let v: f64 = s.parse().map_err(|_| ParseComplexError(whole.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseComplexError(whole.to_string()))
    }
}

fn imag(s: &str, whole: &str) -> Result<f64, ParseComplexError> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s, whole),
    }
}

pub fn parse_complex(input: &str) -> Result<Complex64, ParseComplexError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ParseComplexError(input.to_string()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s, input)?, 0.0));
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k], input)?, imag(&body[k..], input)?)),
        None => Ok(Complex64::new(0.0, imag(body, input)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0+1.0i"), Ok(c(0.0, 1.0)));
        assert_eq!(parse_complex("0.1+0.8i"), Ok(c(0.1, 0.8)));
        assert_eq!(parse_complex("-0.25-2i"), Ok(c(-0.25, -2.0)));
        assert_eq!(parse_complex("2.5"), Ok(c(2.5, 0.0)));
        assert_eq!(parse_complex("i"), Ok(c(0.0, 1.0)));
        assert_eq!(parse_complex("-i"), Ok(c(0.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Ok(c(1e-3, 20.0)));
        assert_eq!(parse_complex(" 1 + 2i "), Ok(c(1.0, 2.0)));
        for bad in ["", "1+", "abc", "1+2j", "1+xi", "nan", "inf+1i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}
