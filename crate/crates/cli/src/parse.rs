//! Parsers for the shared input grammars.
//!
//! Polynomials: `poly := term ('+' term)*`,
//! `term := coeffseries? ('*')? 'x' ('^' nat)? | coeffseries`,
//! `coeffseries := smon | '(' smon ('+' smon)* ')'`,
//! `smon := int ('*' 't^(' rat ')')? | 't^(' rat ')'`.
//!
//! Series literals are sums of `smon`. Integer coefficients are reduced
//! mod `p`. Valuation specs: `rho:n,i`, `mu:n`, `vs`, `w:<series>,<rat>`.

use std::fmt;

use mlv_core::exactmath::{FieldTower, Rat};
#[cfg(test)]
use mlv_core::exactmath::ValOrInf;
use mlv_core::polyring::Poly;
use mlv_core::series::PuiseuxSeries;

/// Syntax error with a byte position into the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { pos: self.pos, message }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected an integer".into()));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range".into()))
    }

    fn natural(&mut self) -> Result<u64, ParseError> {
        let n = self.integer()?;
        u64::try_from(n).map_err(|_| self.error("expected a natural number".into()))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            Rat::new(num, den).map_err(|_| self.error("zero denominator".into()))
        } else {
            Ok(Rat::int(num))
        }
    }

    /// `t^(' rat ')`.
    fn t_power(&mut self) -> Result<Rat, ParseError> {
        if !self.eat_str("t^(") {
            return Err(self.error("expected t^(".into()));
        }
        let e = self.rational()?;
        self.expect(b')')?;
        Ok(e)
    }

    /// `smon := int ('*' 't^(' rat ')')? | 't^(' rat ')'`.
    fn smon(&mut self, tw: &FieldTower) -> Result<PuiseuxSeries, ParseError> {
        if self.peek() == Some(b't') {
            let e = self.t_power()?;
            return Ok(PuiseuxSeries::monomial(e, tw.one()));
        }
        let c = self.integer()?;
        let coeff = tw.from_int(c);
        // the '*' may belong to the enclosing term (`3*x`); only take it
        // here when a t-power follows
        let mark = self.pos;
        if self.eat(b'*') {
            if self.peek() == Some(b't') {
                let e = self.t_power()?;
                return Ok(PuiseuxSeries::monomial(e, coeff));
            }
            self.pos = mark;
        }
        Ok(PuiseuxSeries::monomial(Rat::zero(), coeff))
    }

    fn smon_sum(&mut self, tw: &FieldTower) -> Result<PuiseuxSeries, ParseError> {
        let mut acc = self.smon(tw)?;
        while self.eat(b'+') {
            acc = acc.add(&self.smon(tw)?, tw);
        }
        Ok(acc)
    }

    /// `coeffseries := smon | '(' smon ('+' smon)* ')'`.
    fn coeffseries(&mut self, tw: &FieldTower) -> Result<PuiseuxSeries, ParseError> {
        if self.eat(b'(') {
            let s = self.smon_sum(tw)?;
            self.expect(b')')?;
            Ok(s)
        } else {
            self.smon(tw)
        }
    }

    /// One polynomial term; returns `(degree, coefficient)`.
    fn term(&mut self, tw: &FieldTower) -> Result<(usize, PuiseuxSeries), ParseError> {
        if self.peek() == Some(b'x') {
            self.pos += 1;
            let k = if self.eat(b'^') { self.natural()? as usize } else { 1 };
            return Ok((k, PuiseuxSeries::one(tw)));
        }
        // `t` starts a bare monomial only when not inside parentheses;
        // both shapes are handled by coeffseries
        let c = self.coeffseries(tw)?;
        let star = self.eat(b'*');
        if self.peek() == Some(b'x') {
            self.pos += 1;
            let k = if self.eat(b'^') { self.natural()? as usize } else { 1 };
            Ok((k, c))
        } else if star {
            Err(self.error("expected x after '*'".into()))
        } else {
            Ok((0, c))
        }
    }
}

pub fn parse_rat(text: &str) -> Result<Rat, ParseError> {
    let mut cur = Cursor::new(text);
    let r = cur.rational()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after rational".into()));
    }
    Ok(r)
}

pub fn parse_series(text: &str, tw: &FieldTower) -> Result<PuiseuxSeries, ParseError> {
    let mut cur = Cursor::new(text);
    let s = cur.smon_sum(tw)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after series".into()));
    }
    Ok(s)
}

pub fn parse_poly(text: &str, tw: &FieldTower) -> Result<Poly, ParseError> {
    let mut cur = Cursor::new(text);
    let mut coeffs: Vec<PuiseuxSeries> = Vec::new();
    loop {
        let (k, c) = cur.term(tw)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, PuiseuxSeries::zero());
        }
        coeffs[k] = coeffs[k].add(&c, tw);
        if !cur.eat(b'+') {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after polynomial".into()));
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Parsed valuation specification.
#[derive(Debug, Clone, PartialEq)]
pub enum ValuationSpec {
    Rho { n: u32, i: u64 },
    Mu { n: u32 },
    Vs,
    /// Ad-hoc depth-zero valuation at a finite series center.
    W { center: PuiseuxSeries, delta: Rat },
}

pub fn parse_valuation_spec(text: &str, tw: &FieldTower) -> Result<ValuationSpec, ParseError> {
    let fail = |msg: &str| ParseError { pos: 0, message: msg.into() };
    if text == "vs" {
        return Ok(ValuationSpec::Vs);
    }
    if let Some(rest) = text.strip_prefix("rho:") {
        let (n, i) = rest
            .split_once(',')
            .ok_or_else(|| fail("rho spec needs n,i"))?;
        let n = n.trim().parse().map_err(|_| fail("bad n in rho spec"))?;
        let i = i.trim().parse().map_err(|_| fail("bad i in rho spec"))?;
        return Ok(ValuationSpec::Rho { n, i });
    }
    if let Some(rest) = text.strip_prefix("mu:") {
        let n = rest.trim().parse().map_err(|_| fail("bad n in mu spec"))?;
        return Ok(ValuationSpec::Mu { n });
    }
    if let Some(rest) = text.strip_prefix("w:") {
        let (series, delta) = rest
            .rsplit_once(',')
            .ok_or_else(|| fail("w spec needs <series>,<rat>"))?;
        let center = parse_series(series.trim(), tw)?;
        let delta = parse_rat(delta.trim())?;
        return Ok(ValuationSpec::W { center, delta });
    }
    Err(fail("unknown valuation spec (expected rho:n,i | mu:n | vs | w:<series>,<rat>)"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw2() -> FieldTower {
        FieldTower::new(2)
    }

    #[test]
    fn parses_phi_one() {
        let tw = tw2();
        let f = parse_poly("x^2 + x + t^(-1)", &tw).unwrap();
        assert_eq!(f, Poly::as_iterate_minus_tinv(1, &tw));
    }

    #[test]
    fn parses_zero_and_reduces_mod_p() {
        let tw = tw2();
        assert!(parse_poly("0", &tw).unwrap().is_zero());
        assert_eq!(parse_poly("3*x", &tw).unwrap(), Poly::x(&tw));
        assert!(parse_poly("2*x", &tw).unwrap().is_zero());
    }

    #[test]
    fn parses_parenthesised_coefficients() {
        let tw = tw2();
        let f = parse_poly("(t^(-1/2) + t^(-1/4))*x + 1", &tw).unwrap();
        assert_eq!(f.degree(), Some(1));
        assert_eq!(f.coeff(1).terms().len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let tw = tw2();
        let e = parse_poly("x^2 + $", &tw).unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(parse_poly("x^(1/2)", &tw).is_err());
    }

    #[test]
    fn round_trips_renderings() {
        use rand_core::{RngCore, SeedableRng};
        let tw = tw2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let deg = (rng.next_u32() % 5) as usize;
            let coeffs: Vec<PuiseuxSeries> = (0..=deg)
                .map(|_| {
                    let k = rng.next_u32() % 3;
                    let terms = (0..k)
                        .map(|_| {
                            let num = (rng.next_u32() % 17) as i64 - 8;
                            (Rat::frac(num, 4), tw.one())
                        })
                        .collect();
                    PuiseuxSeries::from_terms(terms, ValOrInf::Infinity, &tw)
                })
                .collect();
            let f = Poly::from_coeffs(coeffs);
            let text = f.render(&tw);
            let back = parse_poly(&text, &tw).unwrap();
            assert_eq!(back, f, "round-trip of {text}");
        }
    }

    #[test]
    fn valuation_specs() {
        let tw = tw2();
        assert_eq!(
            parse_valuation_spec("rho:0,1", &tw).unwrap(),
            ValuationSpec::Rho { n: 0, i: 1 }
        );
        assert_eq!(parse_valuation_spec("mu:2", &tw).unwrap(), ValuationSpec::Mu { n: 2 });
        assert_eq!(parse_valuation_spec("vs", &tw).unwrap(), ValuationSpec::Vs);
        let w = parse_valuation_spec("w:t^(-1/2),-1/4", &tw).unwrap();
        match w {
            ValuationSpec::W { center, delta } => {
                assert_eq!(delta, Rat::frac(-1, 4));
                assert_eq!(center.terms().len(), 1);
            }
            _ => panic!(),
        }
        assert!(parse_valuation_spec("nope", &tw).is_err());
    }
}
