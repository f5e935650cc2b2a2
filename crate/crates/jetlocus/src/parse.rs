use crate::error::{Error, Result};
use crate::poly::{Poly, VarSet};
use crate::ratfunc::RatFunc;

/// Recursive-descent parser for the canonical polynomial text format:
/// sums of `coeff*monomial` terms, coefficients as `num/den` in t,
/// `^` powers, parentheses. `-` is accepted on input even though the
/// canonical printer never emits it.
struct Parser<'a, const P: u64> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
}

pub fn parse_poly<const P: u64>(src: &str, vars: &VarSet) -> Result<Poly<RatFunc<P>>> {
    let mut p = Parser::<P> {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!(
            "unexpected input at byte {} of `{src}`",
            p.pos
        )));
    }
    Ok(value)
}

/// Parse a coefficient: an expression with no ring variables.
pub fn parse_ratfunc<const P: u64>(src: &str) -> Result<RatFunc<P>> {
    let vars = VarSet::new(Vec::<String>::new());
    let poly = parse_poly::<P>(src, &vars)?;
    poly.as_constant()
        .ok_or_else(|| Error::Parse(format!("`{src}` is not a constant")))
}

impl<const P: u64> Parser<'_, P> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Poly<RatFunc<P>>> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<RatFunc<P>>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.bump();
                    let divisor = self.factor()?;
                    let c = divisor.as_constant().ok_or_else(|| {
                        Error::Parse("division by a non-constant polynomial".into())
                    })?;
                    let inv = c
                        .inv()
                        .ok_or_else(|| Error::Parse("division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<RatFunc<P>>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.integer()?;
            if e > u32::MAX as u64 {
                return Err(Error::Parse("exponent too large".into()));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<RatFunc<P>>> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(self.vars, RatFunc::from_u64(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                if name == "t" {
                    Ok(Poly::constant(self.vars, RatFunc::t()))
                } else {
                    Poly::var_named(self.vars, &name)
                }
            }
            other => Err(Error::Parse(format!(
                "expected a factor, found {:?}",
                other.map(char::from)
            ))),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected an integer".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse("integer out of range".into()))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric()
                || self.src[self.pos] == b'_'
                || self.src[self.pos] == b'@')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}
