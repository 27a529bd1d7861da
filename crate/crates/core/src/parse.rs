//! Text syntax for differential polynomials, field elements and elements of
//! `B ⊗ R`.
//!
//! ```text
//! expr    := ['-'] term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*
//! unary   := '-' unary | factor
//! factor  := atom ('^' nat)?
//! atom    := int | 't' nat | derivs? 'x' nat ('_' nat)? | label | '(' expr ')'
//! derivs  := ('d' nat ('^' nat)?)+
//! ```
//!
//! Division is only by field elements. Labels name basis vectors of a finite
//! algebra and are only available when parsing into `B ⊗ R`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeffield::FieldElem;
use crate::diffpoly::{AlgIndet, DerivOp, DiffPoly, Polys, Var};
use crate::error::{Error, Result};
use crate::finitealg::{DAlgebra, DElement};
use crate::ring::{Ring, Scalars};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax { line, column: col, expected: "a number, symbol or operator".into() });
        };
        col += i - start;
        out.push(Token { tok, line: l0, column: c0 });
    }
    Ok(out)
}

/// A ring that text can be evaluated into.
pub trait ParseTarget: Ring {
    fn indet(&self, u: AlgIndet) -> Result<Self::Elem> {
        Err(Error::UnknownSymbol(u.to_string()))
    }

    fn label(&self, name: &str) -> Result<Self::Elem> {
        Err(Error::UnknownSymbol(name.to_string()))
    }

    /// `Some(c)` if `a` is the image of the field element `c`.
    fn as_scalar(&self, a: &Self::Elem) -> Option<FieldElem>;
}

impl ParseTarget for Scalars {
    fn as_scalar(&self, a: &FieldElem) -> Option<FieldElem> {
        Some(a.clone())
    }
}

impl ParseTarget for Polys {
    fn indet(&self, u: AlgIndet) -> Result<DiffPoly> {
        Ok(DiffPoly::indet(u))
    }

    fn as_scalar(&self, a: &DiffPoly) -> Option<FieldElem> {
        a.as_constant()
    }
}

impl<R: ParseTarget> ParseTarget for DAlgebra<'_, R> {
    fn indet(&self, u: AlgIndet) -> Result<DElement<R::Elem>> {
        Ok(self.embed(&self.ring.indet(u)?))
    }

    fn label(&self, name: &str) -> Result<DElement<R::Elem>> {
        let v = self.alg.atom(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(self.constant(v))
    }

    fn as_scalar(&self, a: &DElement<R::Elem>) -> Option<FieldElem> {
        let unit = self.alg.unit();
        let k = unit.iter().position(|u| !num_traits::Zero::is_zero(u))?;
        let c = self.ring.as_scalar(&a[k])?.div(&FieldElem::from_rational(unit[k].clone())).ok()?;
        (self.from_scalar(&c) == *a).then_some(c)
    }
}

struct Parser<'t, T> {
    toks: Vec<Token>,
    pos: usize,
    target: &'t T,
    end: (usize, usize),
}

impl<T: ParseTarget> Parser<'_, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<X>(&self, expected: &str) -> Result<X> {
        let (line, column) = self.here();
        Err(Error::Syntax { line, column, expected: expected.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v = u32::try_from(n.clone()).or_else(|_| self.fail("a small natural number"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("a natural number"),
        }
    }

    fn expr(&mut self) -> Result<T::Elem> {
        let t = self.target;
        let mut acc = if self.eat('-') { t.neg(&self.term()?) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = t.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = t.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T::Elem> {
        let t = self.target;
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = t.mul(&acc, &self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                let d = self.unary()?;
                let c = t.as_scalar(&d).ok_or(Error::Syntax {
                    line: at.0,
                    column: at.1,
                    expected: "a field element after '/'".into(),
                })?;
                acc = t.mul(&acc, &t.from_scalar(&c.inv()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T::Elem> {
        if self.eat('-') {
            Ok(self.target.neg(&self.unary()?))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<T::Elem> {
        let a = self.atom()?;
        if self.eat('^') {
            let e = self.nat()?;
            return Ok(self.target.pow(&a, e));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<T::Elem> {
        let t = self.target;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(t.from_scalar(&FieldElem::from_rational(BigRational::from_integer(n))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.fail("')'");
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if let Some(k) = indexed(&name, 't') {
                    self.pos += 1;
                    if k == 0 {
                        return Err(Error::UnknownSymbol(name));
                    }
                    return Ok(t.from_scalar(&FieldElem::t(k as usize)));
                }
                if indexed(&name, 'd').is_some() {
                    return self.derivative();
                }
                if let Some(var) = parse_var(&name) {
                    self.pos += 1;
                    return t.indet(AlgIndet::plain(var));
                }
                self.pos += 1;
                t.label(&name)
            }
            _ => self.fail("a number, variable, label or '('"),
        }
    }

    fn derivative(&mut self) -> Result<T::Elem> {
        let mut exps: Vec<u32> = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek().cloned() {
            let Some(j) = indexed(&name, 'd') else { break };
            if j == 0 {
                return Err(Error::UnknownSymbol(name));
            }
            self.pos += 1;
            let e = if self.eat('^') { self.nat()? } else { 1 };
            let j = j as usize;
            if exps.len() < j {
                exps.resize(j, 0);
            }
            exps[j - 1] += e;
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => match parse_var(&name) {
                Some(var) => {
                    self.pos += 1;
                    self.target.indet(AlgIndet::new(var, DerivOp::from_exponents(exps)))
                }
                None => self.fail("a variable after the derivative"),
            },
            _ => self.fail("a variable after the derivative"),
        }
    }
}

/// `n` if `name` is `prefix` followed by decimal digits.
fn indexed(name: &str, prefix: char) -> Option<u32> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

pub(crate) fn parse_var(name: &str) -> Option<Var> {
    let rest = name.strip_prefix('x')?;
    let (i, j) = match rest.split_once('_') {
        Some((i, j)) => (i, Some(j)),
        None => (rest, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(i) || !j.is_none_or(digits) {
        return None;
    }
    let i: u32 = i.parse().ok()?;
    if i == 0 {
        return None;
    }
    match j {
        None => Some(Var::x(i)),
        Some(j) => Some(Var::prolonged(i, j.parse().ok()?)),
    }
}

/// Parses `text` into the ring `target`.
pub fn parse_in<T: ParseTarget>(target: &T, text: &str) -> Result<T::Elem> {
    let toks = tokenize(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(l, s)| (l + 1, s.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, target, end };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<DiffPoly> {
    parse_in(&Polys, text)
}

pub fn parse_field_elem(text: &str) -> Result<FieldElem> {
    parse_in(&Scalars, text)
}
