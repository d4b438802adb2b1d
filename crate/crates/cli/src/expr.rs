//! Element expressions: `T0..Td`, `Trho`, `[w=..]`, `[e]`, `[T1]`, integers,
//! `v`, `v^k`, `*`, `+`, `-` and parentheses. Whitespace is ignored.

use affine_hecke_d::{AffinePerm, BigInt, GenLabel, Hecke, Laurent};

#[derive(Debug)]
pub enum ExprError {
    /// Syntax error at a 1-based character column.
    Syntax { column: usize, message: String },
    /// Well-formed input naming an invalid element.
    Core(affine_hecke_d::Error),
}

impl From<affine_hecke_d::Error> for ExprError {
    fn from(e: affine_hecke_d::Error) -> Self {
        ExprError::Core(e)
    }
}

pub fn parse(d: usize, text: &str) -> Result<Hecke, ExprError> {
    let mut p = Parser { d, chars: text.chars().collect(), pos: 0 };
    let value = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(value)
}

struct Parser {
    d: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn scalar(&self, p: Laurent) -> Result<Hecke, ExprError> {
        Ok(Hecke::term(AffinePerm::identity(self.d)?, p))
    }

    fn sum(&mut self) -> Result<Hecke, ExprError> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Hecke, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mult(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Hecke, ExprError> {
        if self.eat('-') {
            let x = self.unary()?;
            return Ok(x.scale(&-Laurent::one()));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Hecke, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.sum()?;
                self.expect(')')?;
                Ok(x)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.bracket()?;
                self.expect(']')?;
                Ok(x)
            }
            Some('T') => {
                let g = self.generator()?;
                Ok(Hecke::generator(self.d, g)?)
            }
            Some('v') => {
                self.pos += 1;
                let exp = if self.eat('^') {
                    let start = self.pos;
                    let k = self.signed_int()?;
                    i32::try_from(k).map_err(|_| ExprError::Syntax {
                        column: start + 1,
                        message: "exponent out of range".into(),
                    })?
                } else {
                    1
                };
                self.scalar(Laurent::v_pow(exp))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let n: BigInt = n.parse().expect("digit string");
                self.scalar(Laurent::constant(n))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn generator(&mut self) -> Result<GenLabel, ExprError> {
        let start = self.pos;
        if self.eat_word("Trho") {
            return Ok(GenLabel::Rho);
        }
        self.expect('T')?;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected generator index or `rho` after `T`"));
        }
        let i: usize = self.digits()?.parse().map_err(|_| ExprError::Syntax {
            column: start + 1,
            message: "generator index out of range".into(),
        })?;
        if i > self.d {
            return Err(ExprError::Syntax {
                column: start + 1,
                message: format!("no generator T{i} at d={}", self.d),
            });
        }
        Ok(GenLabel::S(i))
    }

    fn bracket(&mut self) -> Result<Hecke, ExprError> {
        match self.peek() {
            Some('e') => {
                self.pos += 1;
                Ok(Hecke::unit(self.d)?)
            }
            Some('T') => {
                let g = self.generator()?;
                Ok(Hecke::generator(self.d, g)?)
            }
            Some('w') => {
                self.pos += 1;
                self.expect('=')?;
                let mut window = vec![self.signed_int()?];
                while self.eat(',') {
                    window.push(self.signed_int()?);
                }
                Ok(Hecke::basis(&AffinePerm::from_window(self.d, window)?))
            }
            _ => Err(self.error("expected `e`, `T..` or `w=` inside brackets")),
        }
    }

    fn digits(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn signed_int(&mut self) -> Result<i64, ExprError> {
        let negative = self.eat('-');
        let start = self.pos;
        let digits = self.digits()?;
        let n: i64 = digits.parse().map_err(|_| ExprError::Syntax {
            column: start + 1,
            message: "integer out of range".into(),
        })?;
        Ok(if negative { -n } else { n })
    }
}
