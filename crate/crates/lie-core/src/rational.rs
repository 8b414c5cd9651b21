use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Height of a reduced fraction p/q: max(|p|, |q|).
pub fn height(r: &Rational) -> BigUint {
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    if p >= q {
        p.clone()
    } else {
        q.clone()
    }
}

/// Parses "p/q" or a bare integer "p".
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in rational '{s}'"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in rational '{s}'"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational '{s}'"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: bare integer when the denominator is 1, else "p/q".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest float, used when exact values cross into measurement code.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn height_is_max_of_parts() {
        assert_eq!(height(&rat(3, 7)), BigUint::from(7u32));
        assert_eq!(height(&rat(-9, 2)), BigUint::from(9u32));
        assert_eq!(height(&rat(0, 1)), BigUint::from(1u32));
    }
}
