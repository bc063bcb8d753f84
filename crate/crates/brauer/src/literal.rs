//! Parser for rational-function literals in `t` with integer coefficients,
//! such as `t`, `2*t^2 + 1`, `(t+1)/(t^3 - 2)` or `t^-1 + 1`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 't' | '(' expr ')'
//! ```

use brauer_core::{Field, RatFn, Tower};

use crate::error::CliError;

/// Parses `src` as an element of `K = F_p(t)` for the given tower.
pub fn parse_literal(tower: &Tower, src: &str) -> Result<RatFn, CliError> {
    let mut p = Parser { tower, src: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    tower: &'a Tower,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> CliError {
        CliError::Input(format!(
            "cannot parse rational function {:?}: {} at offset {}",
            String::from_utf8_lossy(self.src),
            what,
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn, CliError> {
        let l = self.tower.l();
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = l.add(&acc, &self.term()?);
            } else if self.eat(b'-') {
                acc = l.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn, CliError> {
        let l = self.tower.l();
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = l.mul(&acc, &self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = l.div(&acc, &d).ok_or_else(|| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn, CliError> {
        if self.eat(b'-') {
            let v = self.unary()?;
            return Ok(self.tower.l().neg(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFn, CliError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let e = self.integer()?.ok_or_else(|| self.err("expected an exponent"))?;
        let e = i64::try_from(e).map_err(|_| self.err("exponent too large"))?;
        let e = if neg { -e } else { e };
        self.tower.l().pow(&base, e).ok_or_else(|| self.err("negative power of zero"))
    }

    fn atom(&mut self) -> Result<RatFn, CliError> {
        let l = self.tower.l();
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(l.t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?.expect("digit present");
                let r = (v % self.tower.p() as u64) as i64;
                Ok(l.from_int(r))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<Option<u64>, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<u64>().map(Some).map_err(|_| self.err("integer too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        let tw = Tower::new(3, 2).unwrap();
        let l = tw.l();
        assert_eq!(parse_literal(&tw, "t").unwrap(), l.t());
        assert_eq!(parse_literal(&tw, "t^2").unwrap(), l.t_pow(2));
        assert_eq!(parse_literal(&tw, "2").unwrap(), l.from_int(2));
        assert_eq!(parse_literal(&tw, "2*t").unwrap(), l.mul(&l.from_int(2), &l.t()));
        assert_eq!(parse_literal(&tw, "5").unwrap(), l.from_int(2));
        assert_eq!(parse_literal(&tw, "t^-1 + 1").unwrap(), l.add(&l.t_pow(-1), &l.one()));
        let x = parse_literal(&tw, "(t^2 + t)/t^3").unwrap();
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(parse_literal(&tw, "-t").unwrap(), l.neg(&l.t()));
    }

    #[test]
    fn rejects_bad_input() {
        let tw = Tower::new(3, 2).unwrap();
        for bad in ["", "t +", "x", "(t", "1/0", "1/(t-t)", "t t", "0^-1"] {
            assert!(parse_literal(&tw, bad).is_err(), "{bad}");
        }
    }
}
