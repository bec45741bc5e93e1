//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := prefix (('*' | '/') prefix)*
//! prefix   := '-' prefix | power
//! power    := atom ('^' exponent)?
//! exponent := '-'? power              (must reduce to a numeric literal)
//! atom     := number | ident | func '(' expr ')' | '(' expr ')'
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};

use super::ast::{BinaryOp, Expr, Function, UnaryOp};

const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: expected {expected}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: String,
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let expr = parser.expr()?;
    parser.skip_whitespace();
    if parser.pos < parser.src.len() {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_whitespace(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_whitespace();
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

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.error("less deeply nested input"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinaryOp::Add,
                Some(b'-') => BinaryOp::Sub,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.term()?;
            left = Expr::Binary(op, Box::new(left), Box::new(right));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.prefix()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinaryOp::Mul,
                Some(b'/') => BinaryOp::Div,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.prefix()?;
            left = Expr::Binary(op, Box::new(left), Box::new(right));
        }
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let operand = self.prefix()?;
            self.nesting -= 1;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(operand)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.enter()?;
        let start = {
            self.skip_whitespace();
            self.pos
        };
        let negative = self.eat(b'-');
        let exponent = self.power()?;
        self.nesting -= 1;
        match exponent {
            Expr::Literal(c) => {
                let c = if negative { -c } else { c };
                Ok(Expr::Binary(
                    BinaryOp::Pow,
                    Box::new(base),
                    Box::new(Expr::Literal(c)),
                ))
            }
            _ => Err(ParseError {
                offset: start,
                expected: "a numeric literal exponent".to_string(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let inner = self.expr()?;
                self.nesting -= 1;
                if !self.eat(b')') {
                    return Err(self.error("')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.identifier();
                if self.peek() == Some(b'(') {
                    let Some(func) = Function::from_name(&name) else {
                        return Err(ParseError {
                            offset: start,
                            expected: "a known function (log, sin, cos, exp)".to_string(),
                        });
                    };
                    self.pos += 1;
                    self.enter()?;
                    let arg = self.expr()?;
                    self.nesting -= 1;
                    if !self.eat(b')') {
                        return Err(self.error("')'"));
                    }
                    Ok(Expr::Call(func, Box::new(arg)))
                } else if Function::from_name(&name).is_some() {
                    Err(self.error("'(' after function name"))
                } else {
                    Ok(Expr::Variable(name))
                }
            }
            _ => Err(self.error("a number, variable, function call or '('")),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .iter()
            .map(|&c| c as char)
            .collect()
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let mut count = self.digits();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += self.digits();
        }
        if count == 0 {
            self.pos = start;
            return Err(self.error("a digit"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                self.pos = mark;
            }
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        text.parse::<f64>()
            .map(Expr::Literal)
            .map_err(|_| ParseError {
                offset: start,
                expected: "a valid number".to_string(),
            })
    }
}
