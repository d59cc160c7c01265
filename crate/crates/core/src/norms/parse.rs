//! Norm spec grammar:
//!
//! ```text
//! spec   := "euclidean" | "l1" | "linf" | "sc-nonsmooth" | "lp:" number | "poly:" points
//! points := "(" number "," number ")" { ";" "(" number "," number ")" }
//! number := decimal [exponent] | integer "/" integer
//! ```
//!
//! A `poly:` list gives one half of the polygon and is completed by
//! negation; a list already closed under negation is taken as the full
//! polygon.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::polygon::{to_f64, Polygon, PolygonError, RationalPair};
use super::Norm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid norm spec at position {pos}: {msg}")]
pub struct ParseNormError {
    pub pos: usize,
    pub msg: String,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseNormError {
    ParseNormError {
        pos,
        msg: msg.into(),
    }
}

pub(super) fn parse_norm_spec(s: &str) -> Result<Norm, ParseNormError> {
    let trimmed = s.trim_start();
    let offset = s.len() - trimmed.len();
    let t = trimmed.trim_end();
    match t {
        "euclidean" => return Ok(Norm::euclidean()),
        "l1" => return Ok(Norm::l1()),
        "linf" => return Ok(Norm::linf()),
        "sc-nonsmooth" => return Ok(Norm::sc_nonsmooth()),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("lp:") {
        let pos = offset + 3;
        let p = parse_rational(rest).map_err(|(i, m)| err(pos + i, m))?;
        let p = to_f64(&p);
        if p <= 1.0 {
            return Err(err(pos, "p must exceed 1 (use \"l1\" for p = 1)"));
        }
        if p == 2.0 {
            return Err(err(pos, "p = 2 is the Euclidean norm (use \"euclidean\")"));
        }
        if !p.is_finite() {
            return Err(err(pos, "p must be finite (use \"linf\")"));
        }
        return Norm::lp(p).map_err(|e| err(pos, e.to_string()));
    }
    if let Some(rest) = t.strip_prefix("poly:") {
        let pos = offset + 5;
        let points = parse_points(rest).map_err(|(i, m)| err(pos + i, m))?;
        let closed = points.iter().any(|(x, y)| {
            points
                .iter()
                .any(|(u, w)| *u == -x && *w == -y && !(x.is_zero() && y.is_zero()))
        });
        let polygon = if closed {
            Polygon::from_full(points)
        } else {
            Polygon::from_half(points)
        };
        return polygon
            .map(Norm::polyhedral)
            .map_err(|e: PolygonError| err(pos, e.to_string()));
    }
    let word_end = t.find(':').unwrap_or(t.len());
    Err(err(
        offset,
        format!(
            "unknown norm \"{}\" (expected euclidean, l1, linf, lp:<p>, sc-nonsmooth or poly:...)",
            &t[..word_end]
        ),
    ))
}

const MAX_EXPONENT: u32 = 4000;

type Located<T> = Result<T, (usize, String)>;

fn parse_points(s: &str) -> Located<Vec<RationalPair>> {
    let mut points = Vec::new();
    let mut pos = 0;
    for item in s.split(';') {
        let lead = item.len() - item.trim_start().len();
        let body = item.trim();
        let at = pos + lead;
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| (at, format!("expected \"(x,y)\", found \"{body}\"")))?;
        let comma = inner
            .find(',')
            .ok_or_else(|| (at + 1, "expected \",\" between coordinates".to_string()))?;
        let x = parse_rational(&inner[..comma]).map_err(|(i, m)| (at + 1 + i, m))?;
        let y = parse_rational(&inner[comma + 1..]).map_err(|(i, m)| (at + 2 + comma + i, m))?;
        points.push((x, y));
        pos += item.len() + 1;
    }
    if points.len() < 2 {
        return Err((0, "a polygon needs at least two half-list vertices".into()));
    }
    Ok(points)
}

/// Parses `a/b` or a decimal with optional exponent into an exact rational.
pub(crate) fn parse_rational(s: &str) -> Located<BigRational> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if t.is_empty() {
        return Err((lead, "expected a number".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| (lead, format!("invalid numerator \"{n}\"")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| (lead + n.len() + 1, format!("invalid denominator \"{d}\"")))?;
        if den.is_zero() {
            return Err((lead + n.len() + 1, "zero denominator".into()));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(t).ok_or_else(|| (lead, format!("invalid number \"{t}\"")))
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    if exponent.unsigned_abs() > MAX_EXPONENT {
        return None;
    }
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let shift = exponent - frac_part.len() as i32;
    let mut value = BigRational::from_integer(all);
    let factor = num_traits::pow::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if negative {
        value = -value;
    }
    Some(value)
}
