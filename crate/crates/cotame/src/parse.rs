//! Canonical text form for polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! poly   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! var    := 't' | 'x' nat
//! coeff  := nat ('/' posnat)?
//! ```
//!
//! Output is deterministic: terms in descending lexicographic order,
//! coefficients as reduced fractions, unit coefficients and exponents
//! suppressed. `parse(format(p)) = p` for every polynomial.

use num::{One, Signed, Zero};

use crate::error::{Error, ParseErrorDetail, Result};
use crate::poly::Polynomial;
use crate::rational::{format_rat, Rat};
use crate::space::{Monomial, VarSpace};

pub fn format_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let space = p.space();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if m.is_one() || !mag.is_one() {
            parts.push(format_rat(&mag));
        }
        for slot in 0..space.len() {
            let e = m.exp(slot);
            if e == 1 {
                parts.push(space.slot_name(slot));
            } else if e > 1 {
                parts.push(format!("{}^{}", space.slot_name(slot), e));
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_poly(self))
    }
}

pub fn parse_poly(text: &str, space: VarSpace) -> Result<Polynomial> {
    Parser { bytes: text.as_bytes(), pos: 0, space }.poly()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    space: VarSpace,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Parse(ParseErrorDetail {
            pos: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.space);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.bump();
                -Rat::one()
            }
            Some(b'+') => {
                self.bump();
                Rat::one()
            }
            _ => Rat::one(),
        };
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.bump();
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.bump();
                    sign = -Rat::one();
                }
                Some(_) => return self.err(&["'+'", "'-'", "end of input"]),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rat)> {
        let mut coeff = Rat::one();
        let mut mono = Monomial::one(self.space);
        match self.peek() {
            Some(b'0'..=b'9') => {
                coeff = self.coeff()?;
                while self.peek() == Some(b'*') {
                    self.bump();
                    let (slot, e) = self.factor()?;
                    mono = mono.with_exp(slot, mono.exp(slot) + e);
                }
            }
            Some(b't') | Some(b'x') => {
                let (slot, e) = self.factor()?;
                mono = mono.with_exp(slot, mono.exp(slot) + e);
                while self.peek() == Some(b'*') {
                    self.bump();
                    let (slot, e) = self.factor()?;
                    mono = mono.with_exp(slot, mono.exp(slot) + e);
                }
            }
            _ => return self.err(&["number", "variable"]),
        }
        Ok((mono, coeff))
    }

    fn coeff(&mut self) -> Result<Rat> {
        let numer = self.nat_digits()?;
        if self.peek() == Some(b'/') {
            self.bump();
            self.skip_ws();
            let denom_pos = self.pos;
            let denom = self.nat_digits()?;
            if denom.is_zero() {
                return Err(Error::Parse(ParseErrorDetail {
                    pos: denom_pos,
                    expected: vec!["positive integer".into()],
                }));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    fn nat_digits(&mut self) -> Result<num::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(&["digit"]);
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let slot = self.var()?;
        let e = if self.peek() == Some(b'^') {
            self.bump();
            let digits = self.nat_digits()?;
            u32::try_from(&digits).map_err(|_| {
                Error::Parse(ParseErrorDetail {
                    pos: self.pos,
                    expected: vec!["exponent that fits in 32 bits".into()],
                })
            })?
        } else {
            1
        };
        Ok((slot, e))
    }

    fn var(&mut self) -> Result<usize> {
        let t_ok = self.space.is_extended();
        match self.peek() {
            Some(b't') => {
                if !t_ok {
                    return self.err(&["x<i> (t is not a variable of this ring)"]);
                }
                self.bump();
                Ok(0)
            }
            Some(b'x') => {
                let var_pos = self.pos;
                self.bump();
                let idx = self.nat_digits()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                self.space.x_slot(idx).map_err(|_| {
                    Error::Parse(ParseErrorDetail {
                        pos: var_pos,
                        expected: vec![format!("x1..x{}", self.space.n())],
                    })
                })
            }
            _ => {
                if t_ok {
                    self.err(&["'t'", "'x'"])
                } else {
                    self.err(&["'x'"])
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};
    use proptest::prelude::*;

    fn s3() -> VarSpace {
        VarSpace::plain(3).unwrap()
    }

    fn e3() -> VarSpace {
        VarSpace::extended(3).unwrap()
    }

    #[test]
    fn parses_kernel_polynomial() {
        let p = parse_poly("x1*x3 - x2^2", s3()).unwrap();
        let f = Polynomial::var_x(s3(), 1)
            .unwrap()
            .mul(&Polynomial::var_x(s3(), 3).unwrap())
            .unwrap()
            .sub(&Polynomial::var_x(s3(), 2).unwrap().pow(2))
            .unwrap();
        assert_eq!(p, f);
    }

    #[test]
    fn formats_zero_and_constants() {
        assert_eq!(format_poly(&Polynomial::zero(s3())), "0");
        assert_eq!(format_poly(&Polynomial::constant(s3(), rat(-1, 2))), "-1/2");
        assert_eq!(parse_poly("0", s3()).unwrap(), Polynomial::zero(s3()));
    }

    #[test]
    fn half_t_squared_round_trips() {
        let text = "1/2*t^2*x1";
        let p = parse_poly(text, e3()).unwrap();
        assert_eq!(format_poly(&p), text);
    }

    #[test]
    fn normalizes_degenerate_input() {
        assert_eq!(parse_poly("x1^0", s3()).unwrap(), Polynomial::one(s3()));
        assert!(parse_poly("0*x1", s3()).unwrap().is_zero());
        assert_eq!(
            parse_poly("x1 + 0", s3()).unwrap(),
            Polynomial::var_x(s3(), 1).unwrap()
        );
        // whitespace is insignificant
        assert_eq!(
            parse_poly("  x1 * x3   -   x2 ^ 2 ", s3()).unwrap(),
            parse_poly("x1*x3-x2^2", s3()).unwrap()
        );
        // repeated factors multiply
        assert_eq!(parse_poly("x1*x1", s3()).unwrap(), parse_poly("x1^2", s3()).unwrap());
    }

    #[test]
    fn rejects_with_positions() {
        match parse_poly("x4", s3()) {
            Err(Error::Parse(d)) => assert_eq!(d.pos, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly("t*x1", s3()) {
            Err(Error::Parse(d)) => assert_eq!(d.pos, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly("x1 + ", s3()) {
            Err(Error::Parse(d)) => assert_eq!(d.pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly("1/0*x1", s3()).is_err());
        assert!(parse_poly("", s3()).is_err());
        assert!(parse_poly("x1 x2", s3()).is_err());
    }

    #[test]
    fn leading_sign_is_accepted() {
        let p = parse_poly("-x1 + 5", s3()).unwrap();
        assert_eq!(format_poly(&p), "-x1 + 5");
        assert_eq!(p.coeff(&Monomial::var(s3(), 0)), rint(-1));
    }

    prop_compose! {
        fn arb_rat()(n in -9i64..=9, d in 1i64..=9) -> Rat {
            rat(n, d)
        }
    }

    fn arb_poly(space: VarSpace) -> impl Strategy<Value = Polynomial> {
        let len = space.len();
        prop::collection::vec((prop::collection::vec(0u32..5, len), arb_rat()), 0..8).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    space,
                    terms.into_iter().map(|(exps, c)| {
                        (Monomial::from_exponents(space, &exps).unwrap(), c)
                    }),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn parse_format_round_trip(p in arb_poly(VarSpace::extended(3).unwrap())) {
            let text = format_poly(&p);
            let q = parse_poly(&text, VarSpace::extended(3).unwrap()).unwrap();
            prop_assert_eq!(p, q);
        }
    }
}
