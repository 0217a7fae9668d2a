//! Text, LaTeX and JSON renderings of [`Polynomial`] and the text/JSON
//! parsers.
//!
//! Output lists terms from the top of the canonical order down: higher degree
//! first, then larger `c`-exponent vector, then larger `t`-exponent vector.
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := atom (['*'] atom)*
//! atom   := integer | var ['^' integer] | '(' expr ')' ['^' integer]
//! var    := 'c[' integer ']' | 't[' integer ']'
//!         | 'Theta[' parts ']' | 'Omega[' parts ']'
//! parts  := [integer (',' integer)*]
//! ```
//!
//! `Theta` and `Omega` atoms need a fixed `k` and are accepted only by
//! [`parse_with_k`].

use serde::{Deserialize, Serialize};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::partition::KStrictPartition;
use crate::ring::{Monomial, Polynomial};
use crate::theta::theta_double;
use crate::weyl::omega_poly;

fn factors_text(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (p, e) in m.c_sparse().into_iter().rev() {
        out.push(if e == 1 {
            format!("c[{p}]")
        } else {
            format!("c[{p}]^{e}")
        });
    }
    for (i, e) in m.t_sparse() {
        out.push(if e == 1 {
            format!("t[{i}]")
        } else {
            format!("t[{i}]^{e}")
        });
    }
    out
}

fn factors_latex(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (p, e) in m.c_sparse().into_iter().rev() {
        out.push(if e == 1 {
            format!("c_{{{p}}}")
        } else {
            format!("c_{{{p}}}^{{{e}}}")
        });
    }
    for (i, e) in m.t_sparse() {
        out.push(if e == 1 {
            format!("t_{{{i}}}")
        } else {
            format!("t_{{{i}}}^{{{e}}}")
        });
    }
    out
}

fn render(f: &Polynomial, factors: fn(&Monomial) -> Vec<String>, times: &str, join: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (m, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let fs = factors(m);
        if fs.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push_str(times);
            }
            s.push_str(&fs.join(join));
        }
    }
    s
}

/// Canonical text form, e.g. `c[1] - 2*t[1]`.
pub fn to_text(f: &Polynomial) -> String {
    render(f, factors_text, "*", "*")
}

pub fn to_latex(f: &Polynomial) -> String {
    render(f, factors_latex, " ", " ")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JsonTerm {
    pub c: Vec<[u32; 2]>,
    pub t: Vec<[u32; 2]>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JsonPolynomial {
    pub terms: Vec<JsonTerm>,
}

impl From<&Polynomial> for JsonPolynomial {
    fn from(f: &Polynomial) -> Self {
        JsonPolynomial {
            terms: f
                .terms()
                .rev()
                .map(|(m, c)| JsonTerm {
                    c: m.c_sparse().into_iter().map(|(p, e)| [p, e]).collect(),
                    t: m.t_sparse().into_iter().map(|(i, e)| [i, e]).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&JsonPolynomial> for Polynomial {
    type Error = Error;
    fn try_from(j: &JsonPolynomial) -> Result<Self> {
        let mut out = Polynomial::zero();
        for (idx, term) in j.terms.iter().enumerate() {
            let coeff: Coefficient = term.coeff.parse().map_err(|_| Error::Parse {
                pos: idx,
                msg: format!("bad coefficient {:?}", term.coeff),
            })?;
            if term.t.iter().any(|[i, _]| *i == 0) {
                return Err(Error::Parse {
                    pos: idx,
                    msg: "t-index 0".into(),
                });
            }
            let c: Vec<(u32, u32)> = term.c.iter().map(|[p, e]| (*p, *e)).collect();
            let t: Vec<(u32, u32)> = term.t.iter().map(|[i, e]| (*i, *e)).collect();
            out.add_term(Monomial::from_sparse(&c, &t), &coeff);
        }
        Ok(out)
    }
}

pub fn to_json_value(f: &Polynomial) -> serde_json::Value {
    serde_json::to_value(JsonPolynomial::from(f)).expect("serialisable")
}

pub fn to_json(f: &Polynomial) -> String {
    serde_json::to_string(&JsonPolynomial::from(f)).expect("serialisable")
}

pub fn from_json_value(v: &serde_json::Value) -> Result<Polynomial> {
    let j: JsonPolynomial = serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    Polynomial::try_from(&j)
}

pub fn from_json(s: &str) -> Result<Polynomial> {
    let j: JsonPolynomial = serde_json::from_str(s).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    Polynomial::try_from(&j)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: Option<usize>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", ch as char))
        }
    }

    fn integer(&mut self) -> Result<Coefficient> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.integer()?;
        v.to_i64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or(Error::Parse {
                pos: start,
                msg: "index or exponent too large".into(),
            })
    }

    fn exponent(&mut self, base: Polynomial) -> Result<Polynomial> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn parts(&mut self) -> Result<Vec<usize>> {
        self.expect(b'[')?;
        let mut parts = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(parts);
        }
        loop {
            parts.push(self.small()? as usize);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(parts);
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
    }

    fn named(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let (name, theta) = if self.src[self.pos..].starts_with(b"Theta") {
            ("Theta", true)
        } else if self.src[self.pos..].starts_with(b"Omega") {
            ("Omega", false)
        } else {
            return self.err("unexpected identifier");
        };
        let Some(k) = self.k else {
            return self.err(format!("{name} needs a fixed k"));
        };
        self.pos += name.len();
        let parts = self.parts()?;
        let lam = KStrictPartition::new(k, &parts).map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })?;
        let base = if theta { theta_double(&lam) } else { omega_poly(&lam) };
        self.exponent(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'T') | Some(b'O') => self.named(),
            Some(b'0'..=b'9') => Ok(Polynomial::constant(self.integer()?)),
            Some(b'c') | Some(b't') => {
                let which = self.src[self.pos];
                self.pos += 1;
                self.expect(b'[')?;
                let at = self.pos;
                let idx = self.small()?;
                self.expect(b']')?;
                let base = if which == b'c' {
                    Polynomial::c(idx as i64)
                } else {
                    if idx == 0 {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "t-variables are indexed from 1".into(),
                        });
                    }
                    Polynomial::t(idx as i64)
                };
                self.exponent(base)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                self.exponent(inner)
            }
            Some(ch) => self.err(format!("unexpected '{}'", ch as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.atom()?;
                }
                Some(b'0'..=b'9') | Some(b'c') | Some(b't') | Some(b'T') | Some(b'O') | Some(b'(') => {
                    acc = &acc * &self.atom()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut sign_neg = false;
        match self.peek() {
            Some(b'-') => {
                sign_neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if sign_neg { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses the text grammar above without `Theta`/`Omega` atoms.
pub fn parse(src: &str) -> Result<Polynomial> {
    parse_inner(src, None)
}

/// Parses the text grammar with `Theta[λ]` and `Omega[λ]` read at `k`.
pub fn parse_with_k(src: &str, k: usize) -> Result<Polynomial> {
    parse_inner(src, Some(k))
}

fn parse_inner(src: &str, k: Option<usize>) -> Result<Polynomial> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        k,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_renderings() {
        assert_eq!(to_text(&Polynomial::zero()), "0");
        let f = &Polynomial::c(1) - &Polynomial::t(1).scale(&2.into());
        assert_eq!(to_text(&f), "c[1] - 2*t[1]");
        assert_eq!(to_latex(&f), "c_{1} - 2 t_{1}");
        assert_eq!(to_text(&-Polynomial::one()), "-1");
    }

    #[test]
    fn parse_single_term() {
        let f = parse("c[2]*t[1]^2").unwrap();
        assert_eq!(f, &Polynomial::c(2) * &Polynomial::t(1).pow(2));
        assert_eq!(f.len(), 1);
        assert_eq!(parse("3c[1]").unwrap(), Polynomial::c(1).scale(&3.into()));
        assert_eq!(
            parse("(c[1] - t[1])^2").unwrap(),
            (&Polynomial::c(1) - &Polynomial::t(1)).pow(2)
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("c[1] + * t[2]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse("c[1] t") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse("t[0]").is_err());
        assert!(parse("").is_err());
        assert!(parse("c[1])").is_err());
    }

    #[test]
    fn big_coefficients_round_trip() {
        let f = parse("123456789012345678901234567890*c[3] - 5").unwrap();
        assert_eq!(parse(&to_text(&f)).unwrap(), f);
        assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (
            -50i64..50,
            prop::collection::vec((1u32..5, 1u32..3), 0..3),
            prop::collection::vec((1u32..5, 1u32..3), 0..3),
        );
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|(c, cs, tsv)| (Monomial::from_sparse(&cs, &tsv), Coefficient::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(f in arb_poly()) {
            prop_assert_eq!(parse(&to_text(&f)).unwrap(), f);
        }

        #[test]
        fn json_round_trip(f in arb_poly()) {
            prop_assert_eq!(from_json(&to_json(&f)).unwrap(), f);
        }
    }
}
