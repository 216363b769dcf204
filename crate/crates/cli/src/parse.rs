//! Exact parsing of integers written in decimal or scientific notation.

use sextic_core::Sign;

use crate::error::{CliError, Result};

/// Parses `12167`, `1e12`, `3e23`, `2.5e6`, `10^16`; the value must be an integer.
pub fn parse_exact(s: &str) -> Result<u128> {
    let bad = || CliError::Usage(format!("not an exact non-negative integer: {s:?}"));
    let t = s.trim().replace('_', "");
    if let Some((base, exp)) = t.split_once('^') {
        let base: u128 = base.parse().map_err(|_| bad())?;
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        return base.checked_pow(exp).ok_or_else(bad);
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (&t[..], 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let shift = exp - frac.len() as i32;
    let mut value: u128 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    if shift >= 0 {
        value = 10u128.checked_pow(shift as u32).and_then(|p| value.checked_mul(p)).ok_or_else(bad)?;
    } else {
        let p = 10u128.checked_pow((-shift) as u32).ok_or_else(bad)?;
        if !value.is_multiple_of(p) {
            return Err(bad());
        }
        value /= p;
    }
    Ok(value)
}

/// A comma-separated list of exact integers.
pub fn parse_list(s: &str) -> Result<Vec<u128>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(parse_exact).collect()
}

pub fn parse_u64(s: &str) -> Result<u64> {
    u64::try_from(parse_exact(s)?).map_err(|_| CliError::Usage(format!("value too large: {s}")))
}

pub fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "pos" | "+" | "positive" => Ok(Sign::Positive),
        "neg" | "-" | "negative" => Ok(Sign::Negative),
        _ => Err(CliError::Usage(format!("sign must be pos or neg, got {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(parse_exact("12167").unwrap(), 12167);
        assert_eq!(parse_exact("1e12").unwrap(), 1_000_000_000_000);
        assert_eq!(parse_exact("3e23").unwrap(), 300_000_000_000_000_000_000_000);
        assert_eq!(parse_exact("2.5e6").unwrap(), 2_500_000);
        assert_eq!(parse_exact("10^16").unwrap(), 10u128.pow(16));
        assert_eq!(parse_exact("1E3").unwrap(), 1000);
        assert_eq!(parse_exact("1200e-2").unwrap(), 12);
        assert!(parse_exact("1.5").is_err());
        assert!(parse_exact("-3").is_err());
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("1e40").is_err());
        assert_eq!(parse_list("1e12, 1e13,1e14").unwrap(), vec![10u128.pow(12), 10u128.pow(13), 10u128.pow(14)]);
    }
}
