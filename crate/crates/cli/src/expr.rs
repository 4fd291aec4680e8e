//! Recursive-descent parser for scalar and ε-rational literals.
//!
//! Grammar (whitespace between tokens is allowed):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | factor
//! factor := atom ('^' natural)?
//! atom   := natural | 'e' | 'zeta' '(' natural ')' | '(' expr ')'
//! ```
//!
//! `e` is the reserved limit parameter; `zeta(M)` requires M to divide the
//! ambient conductor and denotes the primitive M-th root of unity inside it.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use waring_core::cyclotomic::{FieldContext, Scalar};
use waring_core::eps::EpsScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ExprError {
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col + 1, self.msg)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<FieldContext>,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            col: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ExprError> {
        if self.eat(byte) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", byte as char))
        }
    }

    fn natural(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn expr(&mut self) -> Result<EpsScalar, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<EpsScalar, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let col = self.pos;
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs).map_err(|_| ExprError {
                    col,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<EpsScalar, ExprError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.negated());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<EpsScalar, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let col = self.pos;
            let exp = self.natural()?;
            let exp: u32 = exp
                .try_into()
                .ok()
                .filter(|&e| e <= 65_535)
                .ok_or_else(|| ExprError {
                    col,
                    msg: "exponent too large".into(),
                })?;
            let mut acc = EpsScalar::from_int(1);
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<EpsScalar, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(EpsScalar::eps())
            }
            Some(b'z') => {
                let rest = &self.src[self.pos..];
                if !rest.starts_with(b"zeta") {
                    return self.error("unknown symbol");
                }
                self.pos += 4;
                self.expect(b'(')?;
                let col = self.pos;
                let order = self.natural()?;
                self.expect(b')')?;
                let order: u64 = order.try_into().map_err(|_| ExprError {
                    col,
                    msg: "conductor too large".into(),
                })?;
                if order == 0 {
                    return Err(ExprError {
                        col,
                        msg: "zeta(0) is undefined".into(),
                    });
                }
                let n = self.ctx.conductor();
                if !n.is_multiple_of(order) {
                    return Err(ExprError {
                        col,
                        msg: format!("zeta({order}) does not lie in the declared field zeta({n})"),
                    });
                }
                let value = Scalar::zeta(self.ctx)
                    .pow((n / order) as i64)
                    .expect("root of unity power");
                Ok(EpsScalar::from_scalar(value))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                Ok(EpsScalar::from_scalar(Scalar::from_rational(
                    BigRational::from_integer(n),
                )))
            }
            Some(c) => self.error(format!("unexpected character '{}'", c as char)),
            None => self.error("unexpected end of expression"),
        }
    }
}

/// Parse an ε-rational literal against the declared cyclotomic field.
pub fn parse_eps(src: &str, ctx: &Arc<FieldContext>) -> Result<EpsScalar, ExprError> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return parser.error("trailing input after expression");
    }
    Ok(value)
}

/// Parse an ε-free scalar literal.
pub fn parse_scalar(src: &str, ctx: &Arc<FieldContext>) -> Result<Scalar, ExprError> {
    let value = parse_eps(src, ctx)?;
    value.as_scalar().ok_or_else(|| ExprError {
        col: 0,
        msg: "the symbol e is not allowed in a scalar literal".into(),
    })
}
