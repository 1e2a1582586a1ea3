//! Exact rational scalars. Coefficients throughout the crate are
//! arbitrary-precision fractions kept in lowest terms with a positive
//! denominator; `num::BigRational` maintains exactly that invariant.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`; intended for literals.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn rint(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

/// Parses `p`, `-p` or `p/q` with nonzero `q`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = |pos| Error::Parse(crate::error::ParseErrorDetail {
        pos,
        expected: vec!["rational number p or p/q".into()],
    });
    let text = text.trim();
    let (num_str, den_str) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad(0))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad(num_str.len() + 1))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad(num_str.len() + 1));
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical rendering: integers without a denominator, otherwise `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `r^e` for a signed exponent; `e < 0` requires `r != 0`.
pub fn rat_pow(r: &Rat, e: i64) -> Result<Rat> {
    if e < 0 && r.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let mut acc = Rat::one();
    let base = if e < 0 { r.recip() } else { r.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-3", "1/2", "-7/5", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // normalization
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(rat_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&rint(5), 0).unwrap(), rint(1));
        assert!(rat_pow(&rint(0), -1).is_err());
    }
}
