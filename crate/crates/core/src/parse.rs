//! Hand-rolled scanner shared by the polynomial, multivector and graph
//! text formats. Errors carry the byte offset into the original input.

use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(f) => self.err(format!("expected '{c}', found '{f}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect_str(&mut self, s: &str) -> Result<()> {
        if self.eat_str(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    /// Unsigned decimal digits; no whitespace skipped after the first digit.
    pub fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected a number");
        }
        self.pos += len;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    pub fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let n = self.digits()?;
        usize::try_from(n).map_err(|_| Error::Syntax { pos: at, msg: "index too large".into() })
    }

    /// `p` or `p/q`, unsigned.
    pub fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// Optionally signed rational.
    pub fn signed_rational(&mut self) -> Result<Rational> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    pub fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing '{c}'")),
        }
    }
}
