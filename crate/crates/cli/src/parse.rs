//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := base ("^" uint)?
//! base   := "D" | "t" | "g" | uint | "(" expr ")"
//! ```
//!
//! Evaluation happens left to right in the target ring, so `D*t` becomes
//! `t*D + 1`. The same grammar with `Y` in place of `D` reads commutative
//! polynomials in Y over F_q(t).

use lclm_core::fieldkit::{PolyRing, RatField, RatFunc};
use lclm_core::ore::{OrePoly, OreRing};
use lclm_core::yfactor::YPoly;
use lclm_core::Field;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by an operator of positive order at position {pos}")]
    DivisionByOperator { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
}

/// What the parser evaluates into.
trait Target {
    type V: Clone;
    /// The letter of the non-scalar generator.
    const VAR: char;
    fn var(&self) -> Self::V;
    fn scalar(&self, c: RatFunc) -> Self::V;
    fn as_scalar(&self, v: &Self::V) -> Option<RatFunc>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, e: u64) -> Self::V;
}

struct OpTarget<'a>(&'a OreRing<RatField>);

impl Target for OpTarget<'_> {
    type V = OrePoly<RatFunc>;
    const VAR: char = 'D';

    fn var(&self) -> Self::V {
        self.0.d()
    }
    fn scalar(&self, c: RatFunc) -> Self::V {
        self.0.constant(c)
    }
    fn as_scalar(&self, v: &Self::V) -> Option<RatFunc> {
        match v.ord() {
            None => Some(self.0.field.zero()),
            Some(0) => Some(v.coeffs[0].clone()),
            _ => None,
        }
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.0.add(a, b)
    }
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.0.mul(a, b)
    }
    fn pow(&self, a: &Self::V, e: u64) -> Self::V {
        self.0.pow(a, e)
    }
}

struct YTarget<'a> {
    k: &'a RatField,
    ring: PolyRing<RatField>,
}

impl Target for YTarget<'_> {
    type V = YPoly;
    const VAR: char = 'Y';

    fn var(&self) -> YPoly {
        self.ring.x()
    }
    fn scalar(&self, c: RatFunc) -> YPoly {
        self.ring.constant(c)
    }
    fn as_scalar(&self, v: &YPoly) -> Option<RatFunc> {
        match v.len() {
            0 => Some(self.k.zero()),
            1 => Some(v[0].clone()),
            _ => None,
        }
    }
    fn add(&self, a: &YPoly, b: &YPoly) -> YPoly {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &YPoly, b: &YPoly) -> YPoly {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &YPoly, b: &YPoly) -> YPoly {
        self.ring.mul(a, b)
    }
    fn pow(&self, a: &YPoly, e: u64) -> YPoly {
        self.ring.pow(a, e)
    }
}

struct Parser<'s, T: Target> {
    src: &'s [u8],
    pos: usize,
    k: &'s RatField,
    target: T,
}

impl<'s, T: Target> Parser<'s, T> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<V>(&self, pos: usize, msg: impl Into<String>) -> Result<V, ParseError> {
        Err(ParseError::Syntax { pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<T::V, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { self.target.add(&acc, &rhs) } else { self.target.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T::V, ParseError> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            if c == b'*' {
                acc = self.target.mul(&acc, &rhs);
            } else {
                let c = self.target.as_scalar(&rhs).ok_or(ParseError::DivisionByOperator { pos: at })?;
                let inv = self.k.inv(&c).ok_or(ParseError::DivisionByZero { pos: at })?;
                acc = self.target.mul(&acc, &self.target.scalar(inv));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<T::V, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err(at, "expected a nonnegative integer exponent");
            }
            let e: u64 = digits.parse().map_err(|_| ParseError::Syntax { pos: at, msg: "exponent too large".into() })?;
            return Ok(self.target.pow(&base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<T::V, ParseError> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let at = self.pos;
        match c {
            b'(' => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            b't' => {
                self.pos += 1;
                Ok(self.target.scalar(self.k.t()))
            }
            b'g' => {
                self.pos += 1;
                Ok(self.target.scalar(self.k.constant(self.k.fq.generator())))
            }
            c if c == T::VAR as u8 => {
                self.pos += 1;
                Ok(self.target.var())
            }
            c if c.is_ascii_digit() => {
                let p = self.k.p() as u64;
                let n = self.digits().bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.target.scalar(self.k.from_int(n as i64)))
            }
            _ => self.err(at, format!("unexpected character '{}'", c as char)),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected character '{}'", c as char)),
        }
    }
}

fn run<T: Target>(text: &str, k: &RatField, target: T) -> Result<T::V, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, k, target };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_operator(text: &str, ring: &OreRing<RatField>) -> Result<OrePoly<RatFunc>, ParseError> {
    run(text, &ring.field, OpTarget(ring))
}

/// A polynomial in `Y` over F_q(t).
pub fn parse_ypoly(text: &str, k: &RatField) -> Result<YPoly, ParseError> {
    run(text, k, YTarget { k, ring: PolyRing::new(k.clone()) })
}

/// An expression of order zero, i.e. an element of F_q(t).
pub fn parse_ratfunc(text: &str, ring: &OreRing<RatField>) -> Result<RatFunc, ParseError> {
    let op = parse_operator(text, ring)?;
    OpTarget(ring).as_scalar(&op).ok_or(ParseError::Syntax { pos: 0, msg: "expected an expression without D".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lclm_core::display::fmt_operator;
    use lclm_core::fieldkit::Fq;

    fn ring(p: u32) -> OreRing<RatField> {
        OreRing::new(RatField::new(Fq::prime(p).unwrap()))
    }

    #[test]
    fn examples() {
        let r = ring(5);
        let k = r.field.clone();
        assert_eq!(parse_operator("D*t", &r).unwrap(), r.from_coeffs(vec![k.one(), k.t()]));
        let op = parse_operator("(t^2+1)/t*D^2 + 3", &r).unwrap();
        let c2 = k.frac(vec![k.fq.one(), k.fq.zero(), k.fq.one()], vec![k.fq.zero(), k.fq.one()]).unwrap();
        assert_eq!(op, r.from_coeffs(vec![k.from_int(3), k.zero(), c2]));
        assert_eq!(parse_operator("D/D", &r), Err(ParseError::DivisionByOperator { pos: 2 }));
        assert_eq!(parse_operator("D/(t-t)", &r), Err(ParseError::DivisionByZero { pos: 2 }));
        assert!(matches!(parse_operator("2t", &r), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_operator("D^", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_operator("(D", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_operator("Y", &r), Err(ParseError::Syntax { .. })));
        assert_eq!(parse_operator("7", &r).unwrap(), r.constant(k.from_int(2)));
    }

    #[test]
    fn ypoly() {
        let k = RatField::new(Fq::prime(3).unwrap());
        let q = parse_ypoly("Y^2 - t", &k).unwrap();
        assert_eq!(q, vec![k.neg(&k.t()), k.zero(), k.one()]);
        assert!(parse_ypoly("D", &k).is_err());
    }

    #[test]
    fn print_then_parse() {
        let r = ring(3);
        let k = &r.field;
        for src in ["D*t", "(t^2+1)/(t+2)*D^3 + t*D + 1", "D/t", "(D+t)^3", "0", "2"] {
            let op = parse_operator(src, &r).unwrap();
            let text = fmt_operator(k, &op);
            assert_eq!(parse_operator(&text, &r).unwrap(), op, "{src} -> {text}");
        }
    }
}
