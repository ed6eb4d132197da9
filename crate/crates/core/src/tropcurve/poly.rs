//! Tropical polynomials in `x, y` over the max-plus semiring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactq::{format_rational, parse_rational, Rational};

pub type Exponent = (i64, i64);

/// `max_k (a_k + k·z)` with one coefficient per distinct exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    terms: BTreeMap<Exponent, Rational>,
}

impl TropicalPolynomial {
    /// Builds a polynomial; repeated exponents keep the larger coefficient.
    pub fn new(terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (k, a) in terms {
            map.entry(k)
                .and_modify(|old| {
                    if a > *old {
                        *old = a.clone();
                    }
                })
                .or_insert(a);
        }
        if map.is_empty() {
            return Err(Error::Parse("polynomial has no terms".into()));
        }
        Ok(Self { terms: map })
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, k: Exponent) -> Option<&Rational> {
        self.terms.get(&k)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    /// The value at `z` and the exponents attaining it.
    pub fn eval(&self, z: &[Rational; 2]) -> (Rational, Vec<Exponent>) {
        let mut best: Option<Rational> = None;
        let mut arg = Vec::new();
        for (&(k1, k2), a) in &self.terms {
            let v = a + &z[0] * Rational::from_integer(k1.into()) + &z[1] * Rational::from_integer(k2.into());
            match &best {
                Some(b) if v < *b => {}
                Some(b) if v == *b => arg.push((k1, k2)),
                _ => {
                    best = Some(v);
                    arg = vec![(k1, k2)];
                }
            }
        }
        (best.expect("nonempty polynomial"), arg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).polynomial()
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(k1, k2), a) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})", format_rational(a))?;
            for (name, e) in [("x", k1), ("y", k2)] {
                match e {
                    0 => {}
                    1 => write!(f, " {name}")?,
                    _ => write!(f, " {name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.char_indices().peekable(),
            text,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in polynomial {:?}", self.text))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace() || *c == '*' || *c == '⊗') {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn polynomial(&mut self) -> Result<TropicalPolynomial> {
        let mut terms = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c != '+' && c != '⊕' {
                return Err(self.err(&format!("unexpected {c:?}")));
            }
            self.chars.next();
            terms.push(self.term()?);
        }
        TropicalPolynomial::new(terms)
    }

    fn term(&mut self) -> Result<(Exponent, Rational)> {
        let mut coeff = None;
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let start = self.chars.peek().map_or(self.text.len(), |&(i, _)| i);
                let mut end = None;
                for (i, c) in self.chars.by_ref() {
                    if c == ')' {
                        end = Some(i);
                        break;
                    }
                }
                let end = end.ok_or_else(|| self.err("unclosed parenthesis"))?;
                coeff = Some(parse_rational(&self.text[start..end])?);
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit() || c == '/');
                coeff = Some(parse_rational(&digits)?);
            }
            _ => {}
        }
        let mut exps = [None, None];
        while let Some(c @ ('x' | 'y')) = self.peek() {
            self.chars.next();
            let slot = usize::from(c == 'y');
            if exps[slot].is_some() {
                return Err(self.err(&format!("variable {c} repeated in a term")));
            }
            let e = if self.peek() == Some('^') {
                self.chars.next();
                self.exponent()?
            } else {
                1
            };
            exps[slot] = Some(e);
        }
        if coeff.is_none() && exps.iter().all(Option::is_none) {
            return Err(self.err("empty term"));
        }
        Ok((
            (exps[0].unwrap_or(0), exps[1].unwrap_or(0)),
            coeff.unwrap_or_default(),
        ))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.chars.next();
        }
        self.skip_ws();
        let neg = matches!(self.chars.peek(), Some((_, '-' | '−')));
        if neg {
            self.chars.next();
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let value: i64 = digits.parse().map_err(|_| self.err("bad exponent"))?;
        if paren {
            if self.peek() != Some(')') {
                return Err(self.err("unclosed exponent"));
            }
            self.chars.next();
        }
        Ok(if neg { -value } else { value })
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.chars.next();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    #[test]
    fn parses_quadratic() {
        let f = TropicalPolynomial::parse("(−1) + x + y + x y + (−1) y^2 + (−1) x^2").unwrap();
        assert_eq!(f.terms().len(), 6);
        assert_eq!(f.coefficient((2, 0)), Some(&rat(-1)));
        assert_eq!(f.coefficient((1, 1)), Some(&rat(0)));
        assert_eq!(TropicalPolynomial::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn bare_coefficients_and_merging() {
        let f = TropicalPolynomial::parse("2x + y^2 + 4 + (1) x").unwrap();
        assert_eq!(f.coefficient((1, 0)), Some(&rat(2)));
        assert_eq!(f.coefficient((0, 0)), Some(&rat(4)));
        let g = TropicalPolynomial::parse("x^-1 y^(−2) + 0").unwrap();
        assert!(g.coefficient((-1, -2)).is_some());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "+", "x + ", "(1", "x x", "z", "1.5 x", "(-1/0)"] {
            assert!(TropicalPolynomial::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn eval_reports_ties() {
        let f = TropicalPolynomial::parse("2x + y^2 + 4").unwrap();
        let (v, arg) = f.eval(&[rat(2), rat(2)]);
        assert_eq!(v, rat(4));
        assert_eq!(arg.len(), 3);
        let (v, arg) = f.eval(&[rat(0), rat(0)]);
        assert_eq!((v, arg), (rat(4), vec![(0, 0)]));
    }
}
