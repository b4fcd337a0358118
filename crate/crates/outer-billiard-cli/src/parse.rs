use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use outer_billiard::exactfield::FieldElement;
use outer_billiard::{Point, Table};

/// Parses `3`, `-3/4`, `0.25` or `1e-2` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" { format!("{digits}0") } else { digits };
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 { BigRational::from_integer(n * factor) } else { BigRational::new(n, factor) })
}

/// `a,b` sector coordinates or `field:c0,c1,...` coefficients.
pub fn parse_point(table: &Table, s: &str) -> Result<Point, String> {
    if let Some(rest) = s.strip_prefix("field:") {
        let coeffs = rest.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        return FieldElement::new(table.n_root(), coeffs).map_err(|e| e.to_string());
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b` or `field:c0,...`, got {s:?}"));
    }
    let a = parse_rational(parts[0])?;
    let b = parse_rational(parts[1])?;
    Ok(table.sector_point(&a, &b))
}

pub fn positive_eps(s: &str) -> Result<BigRational, String> {
    let eps = parse_rational(s)?;
    if eps <= BigRational::zero() || eps > BigRational::one() {
        return Err(format!("eps must lie in (0, 1], got {s}"));
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), r(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("1e-2").unwrap(), r(1, 100));
        assert_eq!(parse_rational("2.5E1").unwrap(), r(25, 1));
        assert_eq!(parse_rational("-.5").unwrap(), r(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn points() {
        let t = Table::new(4).unwrap();
        assert_eq!(parse_point(&t, "0,0").unwrap(), *t.vertex(0));
        assert_eq!(parse_point(&t, "field:0,1").unwrap(), *t.vertex(1));
        assert!(parse_point(&t, "1,2,3").is_err());
        assert_eq!(parse_point(&t, "field:1,0,1").unwrap(), parse_point(&t, "field:0").unwrap());
        assert!(parse_point(&t, "field:1,x").is_err());
    }
}
