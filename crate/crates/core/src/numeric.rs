//! Exact rational helpers: decimal parsing, half-even rounding and display.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact rational over machine integers.
pub type Rational = Ratio<i64>;

/// Rounding applied when rendering rationals as decimal text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    /// Round half to even (banker's rounding).
    #[default]
    HalfEven,
    /// No rounding: full terminating expansion, or `p/q` when the expansion does not terminate.
    Exact,
}

pub fn to_f64(value: &Rational) -> f64 {
    // Both parts are exact in f64 for the magnitudes the lattice produces.
    *value.numer() as f64 / *value.denom() as f64
}

fn pow10(decimals: u32) -> Result<i64> {
    10i64
        .checked_pow(decimals)
        .ok_or_else(|| Error::domain(format!("{decimals} decimals overflow i64")))
}

/// Rounds `value` to `decimals` places, ties to even. The result is exact.
pub fn round_half_even(value: &Rational, decimals: u32) -> Result<Rational> {
    let scale = pow10(decimals)?;
    let numer = *value.numer() as i128 * scale as i128;
    let denom = *value.denom() as i128;
    let (floor, rem) = numer.div_mod_floor(&denom);
    // rem in [0, denom); compare 2*rem against denom.
    let twice = 2 * rem;
    let rounded = if twice > denom || (twice == denom && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let rounded = i64::try_from(rounded)
        .map_err(|_| Error::domain(format!("{value} out of range at {decimals} decimals")))?;
    Ok(Rational::new(rounded, scale))
}

/// Formats `value` with exactly `decimals` fractional digits after half-even rounding.
pub fn format_fixed(value: &Rational, decimals: u32) -> Result<String> {
    let rounded = round_half_even(value, decimals)?;
    let scale = pow10(decimals)?;
    // rounded * scale is an integer by construction
    let scaled = (rounded * scale).to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let int_part = abs / scale as u64;
    let frac_part = abs % scale as u64;
    if decimals == 0 {
        return Ok(format!("{sign}{int_part}"));
    }
    Ok(format!(
        "{sign}{int_part}.{frac_part:0width$}",
        width = decimals as usize
    ))
}

/// Full decimal expansion when it terminates, `p/q` otherwise.
pub fn format_exact(value: &Rational) -> String {
    let mut d = *value.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{}/{}", value.numer(), value.denom());
    }
    match format_fixed(value, twos.max(fives)) {
        Ok(s) => s,
        Err(_) => format!("{}/{}", value.numer(), value.denom()),
    }
}

pub fn format_rational(value: &Rational, decimals: u32, rounding: Rounding) -> Result<String> {
    match rounding {
        Rounding::HalfEven => format_fixed(value, decimals),
        Rounding::Exact => Ok(format_exact(value)),
    }
}

/// Parses a plain decimal literal (`"0.062"`, `"1"`, `"-2.5"`, or `"0,031"` with a decimal
/// comma) into an exact rational. Also accepts `p/q`.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let bad = || Error::parse(format!("{text:?}"), "not a decimal number");
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let t = t.replace(',', ".");
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.as_str()),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let scale = pow10(frac_part.len() as u32).map_err(|_| bad())?;
    let int_value: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let frac_value: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    let numer = int_value
        .checked_mul(scale)
        .and_then(|v| v.checked_add(frac_value))
        .ok_or_else(bad)?;
    let value = Rational::new(numer, scale);
    Ok(if neg { -value } else { value })
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn half_even_reproduces_table_display() {
        assert_eq!(format_fixed(&r(1, 16), 3).unwrap(), "0.062");
        assert_eq!(format_fixed(&r(1, 64), 3).unwrap(), "0.016");
        assert_eq!(format_fixed(&r(1, 32), 3).unwrap(), "0.031");
        assert_eq!(format_fixed(&r(1, 8), 2).unwrap(), "0.12");
        assert_eq!(format_fixed(&r(3, 8), 2).unwrap(), "0.38");
        assert_eq!(format_fixed(&r(1, 1), 3).unwrap(), "1.000");
        assert_eq!(format_fixed(&r(-1, 16), 3).unwrap(), "-0.062");
        assert_eq!(format_fixed(&r(5, 2), 0).unwrap(), "2");
    }

    #[test]
    fn exact_format() {
        assert_eq!(format_exact(&r(1, 16)), "0.0625");
        assert_eq!(format_exact(&r(1, 3)), "1/3");
        assert_eq!(format_exact(&r(2, 1)), "2");
    }

    #[test]
    fn parse_decimals() {
        assert_eq!(parse_decimal("0.062").unwrap(), r(62, 1000));
        assert_eq!(parse_decimal("0,031").unwrap(), r(31, 1000));
        assert_eq!(parse_decimal("1").unwrap(), r(1, 1));
        assert_eq!(parse_decimal("-0.5").unwrap(), r(-1, 2));
        assert_eq!(parse_decimal("1/16").unwrap(), r(1, 16));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("1/0").is_err());
    }
}
