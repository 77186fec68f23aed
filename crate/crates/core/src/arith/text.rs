//! Polynomial text format: coefficients lowest degree first, each a decimal
//! integer or a `num/den` rational, e.g. `["4","1","-5","0","1"]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_from_text<S: AsRef<str>>(items: &[S]) -> Result<RatPoly> {
    Ok(RatPoly::new(items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?))
}

pub fn rat_to_text(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn int_from_text<S: AsRef<str>>(items: &[S]) -> Result<IntPoly> {
    rat_from_text(items)?
        .to_int()
        .ok_or_else(|| Error::Parse("expected integer coefficients".into()))
}

pub fn int_to_text(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Parses either a JSON array of coefficient strings or a whitespace/comma
/// separated token list (the form accepted in poly files on the CLI).
pub fn parse_poly_file(content: &str) -> Result<RatPoly> {
    let t = content.trim();
    if t.starts_with('[') {
        let items: Vec<serde_json::Value> = serde_json::from_str(t)?;
        let strs: Vec<String> = items
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::Parse(format!("unexpected coefficient {other}"))),
            })
            .collect::<Result<_>>()?;
        rat_from_text(&strs)
    } else {
        let toks: Vec<&str> = t.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        rat_from_text(&toks)
    }
}

/// Human-readable rendering, highest degree first (`x^4 - 5*x^2 + x + 4`).
pub(crate) fn write_human<I>(f: &mut fmt::Formatter<'_>, coeffs: I) -> fmt::Result
where
    I: DoubleEndedIterator<Item = (BigInt, BigInt)> + ExactSizeIterator,
{
    let n = coeffs.len();
    if n == 0 {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, (num, den)) in coeffs.enumerate().collect::<Vec<_>>().into_iter().rev() {
        if num.is_zero() {
            continue;
        }
        let neg = num.is_negative();
        let abs = num.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = abs.is_one() && den.is_one();
        let c = if den.is_one() { abs.to_string() } else { format!("{abs}/{den}") };
        match i {
            0 => write!(f, "{c}")?,
            _ => {
                if !unit {
                    write!(f, "{c}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
    }
    Ok(())
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_to_text(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        int_from_text(&v).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_to_text(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        rat_from_text(&v).map_err(serde::de::Error::custom)
    }
}
