//! Text form of polynomials: `3*x0^2*x1 - 1/2*x2 + 7`.
//!
//! Variables are `x0..xN`, plus `y0..yN` for bihomogeneous data; with `y`
//! variables present the layout is `x0..xN, y0..yN` with `N + 1` variables
//! per block. Whitespace is insignificant.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};
use crate::poly::monomial::Monomial;
use crate::poly::multi::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarKind {
    X,
    Y,
}

struct RawTerm {
    coeff: BigRational,
    factors: Vec<(VarKind, usize, u16)>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn coefficient(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        let text = if self.eat(b'/') {
            let den = self.digits()?;
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        match parse_rational(&text) {
            Some(r) => Ok(r),
            None => self.err("zero denominator"),
        }
    }

    fn factor(&mut self) -> Result<(VarKind, usize, u16)> {
        let kind = match self.peek() {
            Some(b'x') => VarKind::X,
            Some(b'y') => VarKind::Y,
            _ => return self.err("expected a variable x<i> or y<i>"),
        };
        self.pos += 1;
        if !self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("variable index must follow immediately");
        }
        let idx: usize = match self.digits()?.parse() {
            Ok(v) => v,
            Err(_) => return self.err("variable index too large"),
        };
        let exp = if self.eat(b'^') {
            match self.digits()?.parse::<u16>() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            }
        } else {
            1
        };
        Ok((kind, idx, exp))
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut coeff = BigRational::from_integer(1.into());
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coefficient()?;
                if self.eat(b'*') {
                    factors.push(self.factor()?);
                }
            }
            Some(b'x') | Some(b'y') => factors.push(self.factor()?),
            _ => return self.err("expected a term"),
        }
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        if negative {
            coeff = -coeff;
        }
        Ok(RawTerm { coeff, factors })
    }

    fn expression(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
        Ok(terms)
    }
}

/// Parses a polynomial. With `vars_per_block = None` the block size is
/// inferred from the largest index used; polynomials mentioning `y`
/// variables get `2 * block` variables.
pub fn parse_poly<F: Field>(
    field: &F,
    text: &str,
    vars_per_block: Option<usize>,
) -> Result<MultiPoly<F>> {
    let mut parser = Parser::new(text);
    if parser.peek().is_none() {
        return parser.err("empty polynomial");
    }
    let raw = parser.expression()?;
    let max_index = raw
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.1))
        .max();
    let has_y = raw
        .iter()
        .any(|t| t.factors.iter().any(|f| f.0 == VarKind::Y));
    let block = match (vars_per_block, max_index) {
        (Some(b), Some(m)) if m >= b => {
            return Err(Error::Usage(format!(
                "variable index {m} exceeds the declared {b} variables"
            )))
        }
        (Some(b), _) => b,
        (None, Some(m)) => m + 1,
        (None, None) => 1,
    };
    let nvars = if has_y { 2 * block } else { block };
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let mut exps = vec![0u16; nvars];
        for (kind, idx, e) in t.factors {
            let slot = match kind {
                VarKind::X => idx,
                VarKind::Y => block + idx,
            };
            exps[slot] = exps[slot]
                .checked_add(e)
                .ok_or_else(|| Error::Usage("exponent overflow".into()))?;
        }
        let c = field.from_rational(&t.coeff).ok_or_else(|| {
            Error::Usage(format!(
                "coefficient {} is not representable in {}",
                t.coeff,
                field.name()
            ))
        })?;
        terms.push((Monomial::new(exps), c));
    }
    Ok(MultiPoly::from_terms(field, nvars, terms))
}

/// Parses a comma separated coordinate list such as `1,-1,0` or `1/2,3`.
pub fn parse_point<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    text.split(',')
        .map(|s| {
            let r = parse_rational(s.trim()).ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("bad coordinate '{}'", s.trim()),
            })?;
            field.from_rational(&r).ok_or_else(|| {
                Error::Usage(format!("coordinate {r} not representable in {}", field.name()))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::multi::VarNames;

    #[test]
    fn parses_and_prints_canonically() {
        let q = Rationals;
        let p = parse_poly(&q, " x1^2 - 1/2*x0*x2 +3*x0^3 - 7 ", None).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.to_string(), "3*x0^3 + x1^2 - 1/2*x0*x2 - 7");
        let again = parse_poly(&q, &p.to_string(), None).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn bihomogeneous_layout() {
        let q = Rationals;
        let p = parse_poly(&q, "x0*y1 + 2*x1*y0", None).unwrap();
        assert_eq!(p.nvars(), 4);
        assert_eq!(p.bidegree(2), Some((1, 1)));
        let names = VarNames::bihomogeneous(2);
        assert_eq!(p.display_with(&names).to_string(), "2*x1*y0 + x0*y1");
    }

    #[test]
    fn prime_field_coefficients() {
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly(&f, "1/2*x0 - x1", None).unwrap();
        assert_eq!(p.to_string(), "4*x0 + 6*x1");
        assert!(parse_poly(&f, "1/7*x0", None).is_err());
    }

    #[test]
    fn rejects_garbage() {
        let q = Rationals;
        for bad in ["", "x", "3*", "x0^", "x0 x1", "1/0*x0", "x0 + + x1", "z0"] {
            assert!(parse_poly(&q, bad, None).is_err(), "{bad:?}");
        }
        assert!(parse_poly(&q, "x5", Some(3)).is_err());
    }

    #[test]
    fn points() {
        let q = Rationals;
        let pt = parse_point(&q, "1, -1/2,0").unwrap();
        assert_eq!(pt[1], parse_rational("-1/2").unwrap());
    }
}
