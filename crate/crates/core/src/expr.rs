//! Parser for quaternion literals such as `3 + 3i`, `-k + 2j - k` or `7`.
//!
//! Grammar (whitespace is ignored everywhere):
//!
//! ```text
//! expr := [sign] term (sign term)*
//! term := integer | [integer] unit
//! unit := 'i' | 'j' | 'k'
//! sign := '+' | '-' | '−'
//! ```
//!
//! Repeated units are summed. The `Display` form of [`Quaternion`] parses
//! back to the same value.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quat::{Quaternion, RingParams};

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

pub fn parse_quaternion(text: &str, params: &RingParams) -> Result<Quaternion> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(parse_error(0, "empty expression"));
    }
    let at = |n: usize| chars.get(n).map_or(text.len(), |&(p, _)| p);

    let mut coeffs: [BigInt; 4] = Default::default();
    let mut n = 0;
    let mut first = true;
    while n < chars.len() {
        let negative = match chars[n].1 {
            '+' => {
                n += 1;
                false
            }
            '-' | '−' => {
                n += 1;
                true
            }
            c if first => {
                if !(c.is_ascii_digit() || matches!(c, 'i' | 'j' | 'k')) {
                    return Err(parse_error(at(n), format!("unexpected '{c}'")));
                }
                false
            }
            c => return Err(parse_error(at(n), format!("expected '+' or '-', found '{c}'"))),
        };
        first = false;

        let digits_start = n;
        while n < chars.len() && chars[n].1.is_ascii_digit() {
            n += 1;
        }
        let magnitude = if n > digits_start {
            let digits: String = chars[digits_start..n].iter().map(|&(_, c)| c).collect();
            Some(digits.parse::<BigInt>().expect("ascii digits"))
        } else {
            None
        };
        let unit = match chars.get(n).map(|&(_, c)| c) {
            Some('i') => Some(1),
            Some('j') => Some(2),
            Some('k') => Some(3),
            _ => None,
        };
        if unit.is_some() {
            n += 1;
        }
        if magnitude.is_none() && unit.is_none() {
            let msg = match chars.get(n) {
                Some(&(_, c)) => format!("expected an integer or unit, found '{c}'"),
                None => "expected an integer or unit at end of input".to_string(),
            };
            return Err(parse_error(at(n), msg));
        }
        let mut value = magnitude.unwrap_or_else(|| BigInt::from(1));
        if negative {
            value = -value;
        }
        coeffs[unit.unwrap_or(0)] += value;
    }
    Ok(Quaternion::new(params, coeffs))
}

/// Parses `A,B` into ring parameters.
pub fn parse_ring(text: &str) -> Result<RingParams> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| parse_error(0, "expected A,B"))?;
    let field = |s: &str, offset: usize| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| parse_error(offset, format!("'{}' is not an integer", s.trim())))
    };
    RingParams::new(field(a, 0)?, field(b, a.len() + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingParams {
        RingParams::new(1, 1).unwrap()
    }

    fn parse(s: &str) -> Result<[i64; 4]> {
        parse_quaternion(s, &ring()).map(|q| q.coeffs().clone().map(|c| i64::try_from(c).unwrap()))
    }

    #[test]
    fn examples() {
        assert_eq!(parse("3+3i").unwrap(), [3, 3, 0, 0]);
        assert_eq!(parse("-k + 2j - k").unwrap(), [0, 0, 2, -2]);
        assert_eq!(parse("  7 ").unwrap(), [7, 0, 0, 0]);
        assert_eq!(parse("i").unwrap(), [0, 1, 0, 0]);
        assert_eq!(parse("5 − 3j").unwrap(), [5, 0, -3, 0]);
        assert_eq!(parse("+0").unwrap(), [0, 0, 0, 0]);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse("3 + + i"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { pos: 0, .. })));
        assert!(parse("3i2").is_err());
        assert!(parse("3 +").is_err());
        assert!(parse("2x").is_err());
        assert!(parse("--1").is_err());
        assert!(parse("ii").is_err());
    }

    #[test]
    fn big_coefficients() {
        let q = parse_quaternion("123456789012345678901234567890k", &ring()).unwrap();
        assert_eq!(q.coeffs()[3].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn ring_flag() {
        assert_eq!(parse_ring("3,6").unwrap(), RingParams::new(3, 6).unwrap());
        assert!(parse_ring("0,1").is_err());
        assert!(parse_ring("3").is_err());
        assert!(parse_ring("a,1").is_err());
    }
}
