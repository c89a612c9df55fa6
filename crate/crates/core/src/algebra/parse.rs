//! Text forms of polynomials and ring presentations.
//!
//! ```text
//! ring   := "artin(" field ";" vars "|" ideal ")" | "poly(" field ";" vars ")"
//! field  := "F" prime | "Q"
//! ideal  := item ("," item)*
//! item   := poly | "(" poly ("," poly)* ")^" n
//! poly   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := number ["/" number] | var ["^" n] | "(" poly ")" ["^" n]
//! ```
//! Juxtaposed variable names (`xy`) multiply.

use crate::error::{Error, Result};
use crate::grobner::{Monomial, Poly, PolyVec};
use crate::linalg::{Field, Scalar};

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(Field::Q);
    }
    let digits = s
        .strip_prefix("F_")
        .or_else(|| s.strip_prefix('F'))
        .or_else(|| s.strip_prefix("GF"))
        .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
    let p: u32 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad field characteristic `{digits}`")))?;
    Field::prime(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(
                t.parse().map_err(|_| Error::Parse(format!("number `{t}` too large")))?,
            ));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()/,".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: Field,
    vars: &'a [String],
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn poly(&mut self) -> Result<Poly> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul_poly(&self.factor()?);
            } else if self.starts_factor() {
                acc = acc.mul_poly(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) if e >= 0 => {
                    self.pos += 1;
                    Ok(e as u32)
                }
                _ => Err(Error::Parse("expected exponent after `^`".into())),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let f = self.field;
        let n = self.n();
        let base = match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let mut c = f.from_i64(a);
                if self.eat('/') {
                    let Some(Tok::Num(b)) = self.peek().cloned() else {
                        return Err(Error::Parse("expected denominator".into()));
                    };
                    self.pos += 1;
                    c = f
                        .from_ratio(a, b)
                        .ok_or_else(|| Error::Parse("zero denominator".into()))?;
                }
                PolyVec::constant(f, n, c)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.identifier(&name)?
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.poly()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                p
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        let e = self.exponent()?;
        let mut acc = PolyVec::constant(f, n, f.one());
        for _ in 0..e {
            acc = acc.mul_poly(&base);
        }
        Ok(acc)
    }

    /// A variable, or a juxtaposition of variables such as `xy`.
    fn identifier(&self, name: &str) -> Result<Poly> {
        let f = self.field;
        let n = self.n();
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(PolyVec::variable(f, n, i));
        }
        let mut rest = name;
        let mut exps = vec![0u16; n];
        while !rest.is_empty() {
            let best = self
                .vars
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .max_by_key(|(_, v)| v.len());
            match best {
                Some((i, v)) => {
                    exps[i] += 1;
                    rest = &rest[v.len()..];
                }
                None => return Err(Error::Parse(format!("unknown variable `{name}`"))),
            }
        }
        Ok(PolyVec::term(f, 0, Monomial(exps), f.one()))
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_poly(s: &str, field: Field, vars: &[String]) -> Result<Poly> {
    let mut p = PolyParser {
        toks: tokenize(s)?,
        pos: 0,
        field,
        vars,
    };
    let out = p.poly()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(out)
}

/// Splits at top-level commas.
pub fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parses the ideal list of an artinian presentation; `(a, b)^n` expands to
/// all products of `n` generators.
pub fn parse_ideal(s: &str, field: Field, vars: &[String]) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for item in split_top(s, ',') {
        if item.is_empty() {
            continue;
        }
        if let Some(rest) = item.strip_prefix('(') {
            if let Some(close) = rest.rfind(")^") {
                let inner = &rest[..close];
                let parts = split_top(inner, ',');
                if parts.len() > 1 {
                    let e: usize = rest[close + 2..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad ideal power in `{item}`")))?;
                    let gens: Vec<Poly> = parts
                        .iter()
                        .map(|p| parse_poly(p, field, vars))
                        .collect::<Result<_>>()?;
                    let mut prods = vec![PolyVec::constant(field, vars.len(), field.one())];
                    for _ in 0..e {
                        let mut next = Vec::new();
                        for p in &prods {
                            for g in &gens {
                                next.push(p.mul_poly(g));
                            }
                        }
                        prods = next;
                    }
                    prods.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
                    prods.dedup();
                    out.extend(prods);
                    continue;
                }
            }
        }
        out.push(parse_poly(&item, field, vars)?);
    }
    Ok(out)
}

pub fn parse_scalar(s: &str, field: Field) -> Result<Scalar> {
    let p = parse_poly(s, field, &[])?;
    Ok(p.constant_coefficient(0))
}
