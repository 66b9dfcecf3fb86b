//! Line-oriented reader shared by the branch and polynomial file formats.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::series::Rational;

/// One parsed monomial: coefficient and the exponent of each variable, in the
/// order the variables were given to [`parse_sum`].
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RawTerm {
    pub coeff: Rational,
    pub exponents: Vec<u32>,
}

/// Non-empty lines with comments stripped: `(line number, column offset, text)`.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let code = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed_start = code.len() - code.trim_start().len();
        let body = code.trim();
        if !body.is_empty() {
            out.push((i + 1, trimmed_start, body));
        }
    }
    out
}

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col0,
            _src: src,
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.col0 + self.pos + 1,
            message: message.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<BigInt>()
            .map_err(|_| self.error("invalid integer"))
    }

    fn small_uint(&mut self) -> Result<u32> {
        let v = self.uint()?;
        u32::try_from(v).map_err(|_| self.error("exponent out of range"))
    }

    /// `name = ` prefix of a line; returns the name.
    pub fn assignment(&mut self) -> Result<char> {
        let name = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => c,
            _ => return Err(self.error("expected a line of the form '<name> = ...'")),
        };
        self.pos += 1;
        self.expect('=')?;
        Ok(name)
    }
}

/// Parse `term (("+"|"-") term)*` where each term is an optional rational
/// coefficient times a product of powers of `vars`.
pub(crate) fn parse_sum(cur: &mut Cursor<'_>, vars: &[char]) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    let mut negative = false;
    if cur.eat('-') {
        negative = true;
    } else {
        cur.eat('+');
    }
    loop {
        let mut term = parse_term(cur, vars)?;
        if negative {
            term.coeff = -term.coeff;
        }
        out.push(term);
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else if cur.at_end() {
            return Ok(out);
        } else {
            return Err(cur.error("expected '+', '-' or end of line"));
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>, vars: &[char]) -> Result<RawTerm> {
    let mut coeff = Rational::one();
    let mut exponents = vec![0u32; vars.len()];
    let mut saw_any = false;
    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        let num = cur.uint()?;
        let den = if cur.eat('/') {
            let d = cur.uint()?;
            if d.is_zero() {
                return Err(cur.error("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Rational::new(num, den);
        saw_any = true;
        if cur.eat('*') && !matches!(cur.peek(), Some(c) if vars.contains(&c)) {
            return Err(cur.error("expected a variable after '*'"));
        }
    }
    let mut last_var: Option<usize> = None;
    while let Some(c) = cur.peek() {
        let Some(idx) = vars.iter().position(|v| *v == c) else {
            break;
        };
        if last_var.is_some_and(|l| l >= idx) {
            return Err(cur.error(format!("variable '{c}' repeated or out of order")));
        }
        cur.pos += 1;
        exponents[idx] = if cur.eat('^') { cur.small_uint()? } else { 1 };
        last_var = Some(idx);
        saw_any = true;
        if cur.eat('*') && !matches!(cur.peek(), Some(c) if vars.contains(&c)) {
            return Err(cur.error("expected a variable after '*'"));
        }
    }
    if !saw_any {
        return Err(cur.error("expected a term"));
    }
    Ok(RawTerm { coeff, exponents })
}
