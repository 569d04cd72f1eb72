//! Text form of polynomials.
//!
//! Grammar: `poly = term (("+"|"-") term)*`, `term = [sign] [rational "*"]
//! factor ("*" factor)*` or a bare rational, `factor = varname ["^" int]`,
//! `rational = int ["/" positive-int]`. Variable names match
//! `[A-Za-z][A-Za-z0-9_{}]*`; whitespace is insignificant. `Poly`'s
//! `Display` emits this grammar back in canonical term order, so
//! `parse(render(p)) == p`.

use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::var::Var;
use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::BTreeMap;

/// How variable names occurring in the text resolve to interned variables.
#[derive(Debug, Clone)]
pub enum VarContext {
    /// Every well-formed name interns as a plain (slotless) variable.
    Auto,
    /// Only the listed names are legal; anything else is `UnknownVariable`.
    Known(BTreeMap<String, Var>),
    /// A name made of one of the listed bases followed by digits resolves
    /// to the slot-tagged copy of that base (`x2` -> slot 2 of `x`); other
    /// names intern as plain variables.
    Slotted(Vec<String>),
}

impl VarContext {
    pub fn known<I: IntoIterator<Item = Var>>(vars: I) -> VarContext {
        VarContext::Known(vars.into_iter().map(|v| (v.to_string(), v)).collect())
    }

    fn resolve(&self, name: &str) -> Result<Var> {
        match self {
            VarContext::Auto => Ok(Var::new(name)),
            VarContext::Known(map) => map
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVariable(name.to_string())),
            VarContext::Slotted(bases) => {
                for base in bases {
                    if let Some(rest) = name.strip_prefix(base.as_str()) {
                        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                            let slot: u32 = rest
                                .parse()
                                .map_err(|_| Error::UnknownVariable(name.to_string()))?;
                            return Ok(Var::slotted(base, slot));
                        }
                    }
                }
                Ok(Var::new(name))
            }
        }
    }
}

pub fn parse_poly(text: &str, ctx: &VarContext) -> Result<Poly> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a VarContext,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return self.err("expected `+` or `-` between terms"),
            };
            first = false;
            let term = self.parse_term()?;
            acc = if sign > 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut coeff = Rat::one();
        let mut mono = Mono::one();
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if saw_factor {
                        return self.err("numeric coefficient must come first in a term");
                    }
                    coeff *= self.parse_rational()?;
                    saw_factor = true;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.parse_varname()?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_uint()?
                    } else {
                        1
                    };
                    mono = mono.mul(&Mono::var(v).pow(e));
                    saw_factor = true;
                }
                _ => return self.err("expected a factor"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !saw_factor {
            return self.err("empty term");
        }
        Ok(Poly::from_term(mono, coeff))
    }

    fn parse_rational(&mut self) -> Result<Rat> {
        let n = self.parse_uint_big()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.parse_uint_big()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn parse_uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u32>()
            .map_err(|_| Error::SyntaxError {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn parse_uint_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .unwrap())
    }

    fn parse_varname(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            let ok = if self.pos == start {
                c.is_ascii_alphabetic()
            } else {
                c.is_ascii_alphanumeric() || c == b'_' || c == b'{' || c == b'}'
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a variable name");
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.ctx.resolve(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn slot_sum() {
        let p = parse_poly("x1 + x2 + x3", &VarContext::Auto).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.to_string(), "x1 + x2 + x3");
    }

    #[test]
    fn coefficients_and_powers() {
        let p = parse_poly("1/2*x^2 - 3*y", &VarContext::Auto).unwrap();
        assert_eq!(p.coeff(&Mono::var(Var::new("x")).pow(2)), rat(1, 2));
        assert_eq!(p.coeff(&Mono::var(Var::new("y"))), rint(-3));
    }

    #[test]
    fn malformed() {
        assert!(matches!(
            parse_poly("x^^2", &VarContext::Auto),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_poly("", &VarContext::Auto),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_poly("x y", &VarContext::Auto),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn unknown_variable() {
        let ctx = VarContext::known([Var::new("x")]);
        assert!(matches!(
            parse_poly("x + q", &ctx),
            Err(Error::UnknownVariable(n)) if n == "q"
        ));
    }

    #[test]
    fn render_parse_round_trip() {
        let texts = ["x^3 - 2*x*y + 1/2", "-T_x2*T_y + 4", "x_{12}*x_{34} - 1"];
        for t in texts {
            let p = parse_poly(t, &VarContext::Auto).unwrap();
            assert_eq!(parse_poly(&p.to_string(), &VarContext::Auto).unwrap(), p);
        }
    }
}
