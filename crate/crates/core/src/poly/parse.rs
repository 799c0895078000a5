//! Text parser and printer for polynomials and ideal files.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expression := term (('+'|'-') term)*
//! term       := coefficient? ('*'? factor)*
//! factor     := variable ('^' exponent)? | '(' expression ')'
//! ```
//!
//! Variables are `x0..x{n-1}`; the aliases `x, y, z, w` map positionally.
//! Coefficients are integers reduced mod p. Ideal files carry one polynomial
//! per line, `#` comments, and a header line `ring: n_vars=<k> p=<prime>`.

use super::{Polynomial, RingSpec};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::poly::MonomialOrder;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: RingSpec,
}

impl Polynomial {
    pub fn parse(text: &str, ring: RingSpec) -> Result<Polynomial> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        };
        p.skip_ws();
        let e = p.expression()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut sign = 1i64;
        // Tolerate a leading sign.
        if let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                self.pos += 1;
                self.skip_ws();
                if c == b'-' {
                    sign = -1;
                }
            }
        }
        let mut acc = self.term()?;
        if sign < 0 {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(self.ring, 1);
        let mut saw_factor = false;
        if let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                let n = self.integer()?;
                acc = Polynomial::constant(self.ring, self.ring.field.reduce_i64(n));
                saw_factor = true;
            }
        }
        loop {
            self.skip_ws();
            let mark = self.pos;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                    saw_factor = true;
                }
                _ => {
                    self.pos = mark;
                    break;
                }
            }
        }
        if !saw_factor {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expression()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                self.maybe_power(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = self.variable()?;
                self.maybe_power(Polynomial::variable(self.ring, v))
            }
            _ => Err(self.err("expected a variable or '('")),
        }
    }

    fn maybe_power(&mut self, base: Polynomial) -> Result<Polynomial> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if !(0..=u16::MAX as i64).contains(&e) {
                return Err(self.err("exponent out of range"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn variable(&mut self) -> Result<usize> {
        // One letter, then digits: makes juxtapositions like `x0x1` split.
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let idx = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            "w" => Some(3),
            // Parameter-line aliases, only meaningful in a binary ring.
            "s" if self.ring.n_vars == 2 => Some(0),
            "u" if self.ring.n_vars == 2 => Some(1),
            _ => name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()),
        };
        match idx {
            Some(i) if i < self.ring.n_vars => Ok(i),
            _ => {
                self.pos = start;
                Err(Error::UnknownVariable(name.to_string()))
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }
}

/// Parse an ideal file: header `ring: n_vars=<k> p=<prime>`, then one
/// polynomial per line; `#` starts a comment.
pub fn parse_ideal_file(text: &str) -> Result<(RingSpec, Vec<Polynomial>)> {
    let mut ring: Option<RingSpec> = None;
    let mut polys = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring:") {
            let mut n_vars = None;
            let mut p = None;
            for part in rest.split_whitespace() {
                if let Some(v) = part.strip_prefix("n_vars=") {
                    n_vars = v.parse::<usize>().ok();
                } else if let Some(v) = part.strip_prefix("p=") {
                    p = v.parse::<u64>().ok();
                }
            }
            let (n_vars, p) = match (n_vars, p) {
                (Some(n), Some(p)) => (n, p),
                _ => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("malformed ring header: `{line}`"),
                    })
                }
            };
            ring = Some(RingSpec::new(
                n_vars,
                FieldSpec::new(p)?,
                MonomialOrder::GrevLex,
            )?);
            continue;
        }
        let ring = ring.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "polynomial before ring header".into(),
        })?;
        polys.push(Polynomial::parse(line, ring)?);
    }
    let ring = ring.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "missing ring header".into(),
    })?;
    Ok((ring, polys))
}

pub fn print_ideal_file(ring: &RingSpec, polys: &[Polynomial]) -> String {
    let mut out = format!("ring: n_vars={} p={}\n", ring.n_vars, ring.field.p());
    for f in polys {
        out.push_str(&format!("{f}\n"));
    }
    out
}
