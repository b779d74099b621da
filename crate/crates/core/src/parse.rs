//! Text input for polynomials.
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := integer | [integer '*'] factor ('*' factor)*
//! factor     := variable ['^' integer]
//! variable   := 'x' index | 'x' | 'y' | 'z' | 'w'
//! ```
//!
//! `x`, `y`, `z`, `w` stand for `x1`..`x4`. Whitespace is ignored and
//! coefficients are reduced mod `p`. A bare integer term is accepted by the
//! grammar so that `x + 1` is reported as a unit rather than a syntax error.

use crate::error::{Error, Result};
use crate::ring::{ExponentVector, Polynomial, PrimeModulus};

/// Parses `text` and checks `0 != f ∈ m`.
pub fn parse_polynomial(text: &str, nvars: usize, p: PrimeModulus) -> Result<Polynomial> {
    let f = parse_any(text, nvars, p)?;
    f.ensure_nonzero_in_maximal_ideal()?;
    Ok(f)
}

/// Parses without the `0 != f ∈ m` check.
pub fn parse_any(text: &str, nvars: usize, p: PrimeModulus) -> Result<Polynomial> {
    if nvars < 2 {
        return Err(Error::TooFewVariables(nvars));
    }
    let mut parser = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        at: 0,
        end: text.len(),
        nvars,
        p,
    };
    parser.expression()
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
    nvars: usize,
    p: PrimeModulus,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(i, _)| i)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut f = Polynomial::zero(self.nvars, self.p);
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        let mut negate = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        loop {
            let (exps, c) = self.term()?;
            let c = if negate { self.p.neg(c) } else { c };
            f.add_term(ExponentVector::new(exps), c);
            match self.peek() {
                None => return Ok(f),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(c) => return self.error(format!("unexpected `{c}`")),
            }
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<(Vec<u32>, u32)> {
        let mut exps = vec![0u32; self.nvars];
        let mut coeff = 1u32;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.integer_mod_p()?;
            if self.peek() != Some('*') {
                return Ok((exps, coeff));
            }
            self.at += 1;
        }
        loop {
            let (j, a) = self.factor()?;
            exps[j] = exps[j].checked_add(a).ok_or_else(|| Error::Syntax {
                pos: self.pos(),
                msg: "exponent too large".into(),
            })?;
            if self.peek() != Some('*') {
                return Ok((exps, coeff));
            }
            self.at += 1;
        }
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let index = match self.peek() {
            Some('x') => {
                self.at += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    let i = self.integer()?;
                    if i == 0 || i > self.nvars as u64 {
                        return Err(Error::VariableOutOfRange {
                            index: i as usize,
                            nvars: self.nvars,
                        });
                    }
                    i as usize
                } else {
                    1
                }
            }
            Some('y') => {
                self.at += 1;
                2
            }
            Some('z') => {
                self.at += 1;
                3
            }
            Some('w') => {
                self.at += 1;
                4
            }
            Some(c) => return self.error(format!("expected a variable, found `{c}`")),
            None => return self.error("expected a variable, found end of input"),
        };
        if index > self.nvars {
            return Err(Error::VariableOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut a = 1u32;
        if self.peek() == Some('^') {
            self.at += 1;
            let v = self.integer()?;
            a = u32::try_from(v).or_else(|_| self.error("exponent too large"))?;
        }
        Ok((index - 1, a))
    }

    fn integer(&mut self) -> Result<u64> {
        let mut value: u64 = 0;
        let mut seen = false;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => return self.error("integer too large"),
            };
            seen = true;
            self.at += 1;
        }
        if !seen {
            return self.error("expected an integer");
        }
        Ok(value)
    }

    fn integer_mod_p(&mut self) -> Result<u32> {
        let p = self.p.get() as u64;
        let mut value = 0u64;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = (value * 10 + d as u64) % p;
            self.at += 1;
        }
        Ok(value as u32)
    }
}
