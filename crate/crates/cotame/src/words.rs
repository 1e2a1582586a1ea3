//! Composition words.
//!
//! `WordSpec` is the alternating shape phi^{i_1} . tau_{a_1} . ... .
//! phi^{i_s} with every power and every translation vector nonzero. The
//! text grammar additionally admits the other named generators, giving
//! general composition programs:
//!
//! ```text
//! word := atom ('.' atom)*
//! atom := 'phi' ('^' int)? | 'tau' '(' rat (',' rat)* ')'
//!       | 'eps' '(' poly ')' | 'epsp' '(' poly ')'
//!       | 'mu' '(' rat ')' | 'nu' '(' rat ')' | 'sigma' | 'id'
//! ```
//!
//! `.` composes with (g . h)(x) = g(h(x)), so the leftmost atom is
//! applied last.

use num::Zero;

use crate::error::{Error, ParseErrorDetail, Result};
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::space::VarSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSpec {
    powers: Vec<i64>,
    translations: Vec<Vec<Rat>>,
}

impl WordSpec {
    pub fn new(powers: Vec<i64>, translations: Vec<Vec<Rat>>) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidWord("a word needs at least one phi power".into()));
        }
        if powers.len() != translations.len() + 1 {
            return Err(Error::InvalidWord(format!(
                "{} powers need {} translations, got {}",
                powers.len(),
                powers.len() - 1,
                translations.len()
            )));
        }
        if powers.iter().any(|&i| i == 0) {
            return Err(Error::InvalidWord("phi powers must be nonzero".into()));
        }
        for a in &translations {
            if a.iter().all(Rat::is_zero) {
                return Err(Error::InvalidWord("translation vectors must be nonzero".into()));
            }
            if a.len() != translations[0].len() {
                return Err(Error::InvalidWord("translation vectors must share one length".into()));
            }
        }
        Ok(WordSpec { powers, translations })
    }

    /// Number of phi segments (s).
    pub fn segments(&self) -> usize {
        self.powers.len()
    }

    pub fn powers(&self) -> &[i64] {
        &self.powers
    }

    pub fn translations(&self) -> &[Vec<Rat>] {
        &self.translations
    }
}

impl std::fmt::Display for WordSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (j, power) in self.powers.iter().enumerate() {
            if j > 0 {
                let a = &self.translations[j - 1];
                let entries: Vec<String> = a.iter().map(format_rat).collect();
                write!(f, " . tau({}) . ", entries.join(","))?;
            }
            if *power == 1 {
                write!(f, "phi")?;
            } else {
                write!(f, "phi^{}", power)?;
            }
        }
        Ok(())
    }
}

/// One step of a composition program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Phi { power: i64 },
    Tau(Vec<Rat>),
    Eps(Polynomial),
    EpsPrime(Polynomial),
    Mu(Rat),
    Nu(Rat),
    Sigma,
    Id,
}

/// Parses a composition word over `k[x_1..x_n]` into atoms.
pub fn parse_word(text: &str, n: usize) -> Result<Vec<Atom>> {
    WordParser { bytes: text.as_bytes(), pos: 0, space: VarSpace::plain(n)? }.word()
}

/// Extracts the alternating phi/tau shape, rejecting anything else.
pub fn atoms_to_word_spec(atoms: &[Atom]) -> Result<WordSpec> {
    let mut powers = Vec::new();
    let mut translations = Vec::new();
    for (j, atom) in atoms.iter().enumerate() {
        match (j % 2 == 0, atom) {
            (true, Atom::Phi { power }) => powers.push(*power),
            (false, Atom::Tau(a)) => translations.push(a.clone()),
            _ => {
                return Err(Error::InvalidWord(
                    "expected alternating phi powers and translations".into(),
                ))
            }
        }
    }
    if atoms.len() % 2 == 0 {
        return Err(Error::InvalidWord("a word must end with a phi power".into()));
    }
    WordSpec::new(powers, translations)
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    space: VarSpace,
}

impl<'a> WordParser<'a> {
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

    fn expect(&mut self, byte: u8, what: &str) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&[what])
        }
    }

    fn word(&mut self) -> Result<Vec<Atom>> {
        let mut atoms = vec![self.atom()?];
        loop {
            match self.peek() {
                None => return Ok(atoms),
                Some(b'.') => {
                    self.pos += 1;
                    atoms.push(self.atom()?);
                }
                Some(_) => return self.err(&["'.'", "end of input"]),
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(&["generator name"]);
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii").to_string())
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "phi" => {
                let power = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.int()?
                } else {
                    1
                };
                Ok(Atom::Phi { power })
            }
            "tau" => {
                self.expect(b'(', "'('")?;
                let mut entries = vec![self.rat()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    entries.push(self.rat()?);
                }
                self.expect(b')', "')'")?;
                Ok(Atom::Tau(entries))
            }
            "eps" => Ok(Atom::Eps(self.paren_poly()?)),
            "epsp" => Ok(Atom::EpsPrime(self.paren_poly()?)),
            "mu" => {
                self.expect(b'(', "'('")?;
                let a = self.rat()?;
                self.expect(b')', "')'")?;
                Ok(Atom::Mu(a))
            }
            "nu" => {
                self.expect(b'(', "'('")?;
                let b = self.rat()?;
                self.expect(b')', "')'")?;
                Ok(Atom::Nu(b))
            }
            "sigma" => Ok(Atom::Sigma),
            "id" => Ok(Atom::Id),
            _ => {
                self.pos = start;
                self.err(&["phi", "tau", "eps", "epsp", "mu", "nu", "sigma", "id"])
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        s.parse().or_else(|_| {
            self.pos = start;
            self.err(&["integer"])
        })
    }

    fn rat(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        parse_rat(s).map_err(|_| {
            Error::Parse(ParseErrorDetail {
                pos: start,
                expected: vec!["rational number".into()],
            })
        })
    }

    fn paren_poly(&mut self) -> Result<Polynomial> {
        self.expect(b'(', "'('")?;
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos] != b')' {
            self.pos += 1;
        }
        if self.pos == self.bytes.len() {
            return self.err(&["')'"]);
        }
        let inner = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        let poly = parse_poly(inner, self.space).map_err(|e| match e {
            Error::Parse(d) => Error::Parse(ParseErrorDetail {
                pos: start + d.pos,
                expected: d.expected,
            }),
            other => other,
        })?;
        self.pos += 1; // consume ')'
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn parses_proposition_words() {
        let atoms = parse_word("phi^2 . tau(1,0,0) . phi^-1", 3).unwrap();
        let word = atoms_to_word_spec(&atoms).unwrap();
        assert_eq!(word.powers(), &[2, -1]);
        assert_eq!(word.translations(), &[vec![rint(1), rint(0), rint(0)]]);
        assert_eq!(word.segments(), 2);
        assert_eq!(word.to_string(), "phi^2 . tau(1,0,0) . phi^-1");
    }

    #[test]
    fn rejects_zero_powers_in_word_mode() {
        let atoms = parse_word("phi^0 . tau(1,0,0) . phi", 3).unwrap();
        assert!(matches!(atoms_to_word_spec(&atoms), Err(Error::InvalidWord(_))));
        let atoms = parse_word("phi . tau(0,0,0) . phi", 3).unwrap();
        assert!(matches!(atoms_to_word_spec(&atoms), Err(Error::InvalidWord(_))));
        // general programs are not proposition words
        let atoms = parse_word("mu(2) . eps(x1*x3-x2^2)", 3).unwrap();
        assert!(atoms_to_word_spec(&atoms).is_err());
        assert_eq!(atoms.len(), 2);
        assert!(matches!(&atoms[0], Atom::Mu(a) if *a == rint(2)));
    }

    #[test]
    fn parses_every_atom() {
        let atoms = parse_word(
            "id . sigma . nu(-2/3) . mu(5) . epsp(x2^2) . eps(1/2*x3) . tau(1/2,0,-1) . phi^3",
            3,
        )
        .unwrap();
        assert_eq!(atoms.len(), 8);
        assert!(matches!(&atoms[2], Atom::Nu(b) if *b == rat(-2, 3)));
        assert!(matches!(&atoms[7], Atom::Phi { power: 3 }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_word("phi . bogus", 3) {
            Err(Error::Parse(d)) => assert_eq!(d.pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_word("eps(x9)", 3) {
            Err(Error::Parse(d)) => assert_eq!(d.pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_word("tau(1,2", 3).is_err());
        assert!(parse_word("", 3).is_err());
    }

    #[test]
    fn word_spec_validation() {
        assert!(WordSpec::new(vec![], vec![]).is_err());
        assert!(WordSpec::new(vec![1, 1], vec![]).is_err());
        let one = WordSpec::new(vec![1], vec![]).unwrap();
        assert_eq!(one.to_string(), "phi");
        assert!(WordSpec::new(vec![1, 2], vec![vec![rint(0)]]).is_err());
    }
}
