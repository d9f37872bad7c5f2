//! Scalar literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | symbol | '(' expr ')'
//! ```
//!
//! The symbol is the field's generator: `r` for the square root in a
//! quadratic extension, `e` for the infinitesimal, `g` for the generator of
//! a non-prime finite field. Whitespace is ignored between tokens.

use num_bigint::BigInt;

use super::{ScalarError, StarField};

struct Parser<'s, F> {
    src: &'s [u8],
    pos: usize,
    symbol: Option<(char, F)>,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ScalarError> {
    Err(ScalarError::Parse {
        pos,
        message: message.into(),
    })
}

impl<F: StarField> Parser<'_, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn expr(&mut self) -> Result<F, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<F, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc * rhs
            } else {
                match acc.checked_div(&rhs) {
                    Ok(v) => v,
                    Err(_) => return err(at, "division by zero"),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<F, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<F, ScalarError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let at = self.pos;
        let e: i64 = match self.digits()?.try_into() {
            Ok(e) => e,
            Err(_) => return err(at, "exponent too large"),
        };
        match base.powi(if negative { -e } else { e }) {
            Ok(v) => Ok(v),
            Err(_) => err(at, "negative power of zero"),
        }
    }

    fn atom(&mut self) -> Result<F, ScalarError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(F::from_bigint(&self.digits()?)),
            Some(c) => match &self.symbol {
                Some((s, v)) if c as char == *s => {
                    self.pos += 1;
                    Ok(v.clone())
                }
                _ => err(at, format!("unexpected `{}`", c as char)),
            },
            None => err(at, "unexpected end of input"),
        }
    }
}

pub fn parse_scalar<F: StarField>(s: &str) -> Result<F, ScalarError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        symbol: F::generator(),
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(v)
}

fn outer_parens_match(t: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            return i == t.len() - 1;
        }
    }
    false
}

/// Comma-separated scalars, optionally wrapped in `()` or `[]`.
pub fn parse_vector<F: StarField>(s: &str) -> Result<Vec<F>, ScalarError> {
    let t = s.trim();
    let wrapped = match (t.chars().next(), t.chars().last()) {
        (Some('['), Some(']')) => true,
        (Some('('), Some(')')) => outer_parens_match(t),
        _ => false,
    };
    let (body, offset) = if wrapped && t.len() >= 2 {
        (&t[1..t.len() - 1], 1)
    } else {
        (t, 0)
    };
    let base = s.len() - s.trim_start().len() + offset;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ','))) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                let piece = &body[start..i];
                out.push(parse_scalar(piece).map_err(|e| match e {
                    ScalarError::Parse { pos, message } => ScalarError::Parse {
                        pos: pos + base + start,
                        message,
                    },
                    other => other,
                })?);
                start = i + 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Gf, Quad, RatFunc};
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn rationals() {
        let v: BigRational = parse_scalar("-3/4").unwrap();
        assert_eq!(v, BigRational::new((-3).into(), 4.into()));
        let w: BigRational = parse_scalar(" 2 ^ -2 + (1 - 1/2) ").unwrap();
        assert_eq!(w, BigRational::new(3.into(), 4.into()));
        assert!(matches!(parse_scalar::<BigRational>("1/0"), Err(ScalarError::Parse { pos: 1, .. })));
        assert!(matches!(parse_scalar::<BigRational>("e"), Err(ScalarError::Parse { pos: 0, .. })));
        assert!(matches!(parse_scalar::<BigRational>("1 2"), Err(ScalarError::Parse { pos: 2, .. })));
    }

    #[test]
    fn other_fields() {
        let x: Quad<2, true> = parse_scalar("3+2*r").unwrap();
        assert_eq!(x, Quad::from_ints(3, 2));
        let e: RatFunc = parse_scalar("(1+e)*(1-e)").unwrap();
        assert_eq!(e, parse_scalar("1-e^2").unwrap());
        let g: Gf<3, 2, true> = parse_scalar("g^2").unwrap();
        assert_eq!(g, -Gf::one());
    }

    #[test]
    fn vectors() {
        let v: Vec<RatFunc> = parse_vector("(1, e, (1+e)/(1-e))").unwrap();
        assert_eq!(v.len(), 3);
        let w: Vec<BigRational> = parse_vector("[1,2]").unwrap();
        assert_eq!(w.len(), 2);
        let single: Vec<RatFunc> = parse_vector("(1+e)/(1-e)").unwrap();
        assert_eq!(single.len(), 1);
        match parse_vector::<BigRational>("(1, x)") {
            Err(ScalarError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
