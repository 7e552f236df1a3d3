//! Text syntax for Cuntz elements and CAR polynomials.
//!
//! ```text
//! element ::= ['+'|'-'] term (('+'|'-') term)*
//! term    ::= factor+
//! factor  ::= primary '*'?
//! primary ::= number | 'i' | 'I' | 's[' word (';' word)? ']' | 's' int | 'a' int '*'? | 'K' int
//!           | name '(' element ')' | '(' element ')'
//! ```
//!
//! `s[1,2;2,1]` is `s_1 s_2 s_2^* s_1^*`. A postfix `*` on any other factor is the adjoint.
//! Names resolve through [`by_name`](crate::morphisms::by_name), plus `adj`, `nf` and `car`.

use crate::algebra::{Element, Word};
use crate::car::poly::CarPoly;
use crate::car::transport::{from_cuntz, to_cuntz};
use crate::error::{Error, Result};
use crate::morphisms::by_name;
use crate::scalar::{Scalar, Q};
use std::fmt;

/// Parse tree; positions are byte offsets into the source text.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    /// `re + i im`.
    Num(Q, Q),
    S(Word, Word),
    A(usize, bool),
    K(usize),
    Id,
    Adj(Box<Ast>),
    Call { name: String, arg: Box<Ast>, pos: usize },
    Paren(Box<Ast>),
    /// Terms with a negation flag each.
    Sum(Vec<(bool, Ast)>),
    Prod(Vec<(usize, Ast)>),
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            perr(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn int(&mut self) -> Result<usize> {
        let p = self.pos;
        match self.digits() {
            Some(s) => s.parse().or_else(|_| perr(p, "integer too large")),
            None => perr(p, "expected an integer"),
        }
    }

    fn element(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            terms.push((neg, self.term()?));
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Ast::Sum(terms) })
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'(' || c == b'_')
    }

    fn term(&mut self) -> Result<Ast> {
        let mut fs = Vec::new();
        while self.starts_factor() {
            let p = self.pos;
            fs.push((p, self.factor()?));
        }
        match fs.len() {
            0 => perr(self.pos, "expected a term"),
            1 => Ok(fs.pop().unwrap().1),
            _ => Ok(Ast::Prod(fs)),
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let mut x = self.primary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            x = match x {
                Ast::A(n, false) => Ast::A(n, true),
                other => Ast::Adj(Box::new(other)),
            };
        }
        Ok(x)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Vec::new();
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(w);
        }
        loop {
            self.skip_ws();
            let p = self.pos;
            let v = self.int()?;
            if v == 0 || v > 255 {
                return perr(p, "letters run from 1 to 255");
            }
            w.push(v as u8);
            if !self.eat(b',') {
                return Ok(w);
            }
        }
    }

    fn is_ident(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'_' || c == b'^'
    }

    fn number(&mut self) -> Result<Ast> {
        let p = self.pos;
        let int = self.digits().unwrap_or("0").to_string();
        let big = |s: &str| s.parse::<i128>().or_else(|_| perr(p, "number too large"));
        let q = if self.peek() == Some(b'/') && self.at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let den = big(self.digits().unwrap())?;
            if den == 0 {
                return perr(p, "zero denominator");
            }
            Q::new(big(&int)?, den)
        } else if self.peek() == Some(b'.') && self.at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let frac = self.digits().unwrap();
            if frac.len() > 30 {
                return perr(p, "too many decimals");
            }
            Q::new(big(&format!("{int}{frac}"))?, 10i128.pow(frac.len() as u32))
        } else {
            Q::from_integer(big(&int)?)
        };
        Ok(Ast::Num(q, Q::from_integer(0)))
    }

    fn primary(&mut self) -> Result<Ast> {
        self.skip_ws();
        let p = self.pos;
        let Some(c) = self.peek() else { return perr(p, "unexpected end of input") };
        if c.is_ascii_digit() {
            return self.number();
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.element()?;
            self.expect(b')')?;
            return Ok(Ast::Paren(Box::new(e)));
        }
        let next_ident = self.at(1).is_some_and(Self::is_ident) || self.at(1) == Some(b'[');
        let next_digit = self.at(1).is_some_and(|c| c.is_ascii_digit());
        let rest_is_int = next_digit && {
            let mut k = 1;
            while self.at(k).is_some_and(|c| c.is_ascii_digit()) {
                k += 1;
            }
            !self.at(k).is_some_and(|c| Self::is_ident(c) || c == b'[' || c == b'(')
        };
        match c {
            b'i' if !next_ident && self.at(1) != Some(b'(') => {
                self.pos += 1;
                return Ok(Ast::Num(Q::from_integer(0), Q::from_integer(1)));
            }
            b'I' if !next_ident && self.at(1) != Some(b'(') => {
                self.pos += 1;
                return Ok(Ast::Id);
            }
            b's' if self.at(1) == Some(b'[') => {
                self.pos += 2;
                let left = self.word()?;
                let right = if self.eat(b';') { self.word()? } else { Vec::new() };
                self.expect(b']')?;
                return Ok(Ast::S(left, right));
            }
            b's' if rest_is_int => {
                self.pos += 1;
                let q = self.pos;
                let v = self.int()?;
                if v == 0 || v > 255 {
                    return perr(q, "letters run from 1 to 255");
                }
                return Ok(Ast::S(vec![v as u8], Vec::new()));
            }
            b'a' | b'K' if rest_is_int => {
                self.pos += 1;
                let q = self.pos;
                let n = self.int()?;
                if n == 0 || n > 64 {
                    return perr(q, "modes run from 1 to 64");
                }
                return Ok(if c == b'a' { Ast::A(n, false) } else { Ast::K(n) });
            }
            _ => {}
        }
        if !(c.is_ascii_alphabetic() || c == b'_') {
            return perr(p, format!("unexpected '{}'", c as char));
        }
        let name = self.name()?;
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return perr(p, format!("'{name}' must be applied to an argument"));
        }
        self.pos += 1;
        let arg = self.element()?;
        self.expect(b')')?;
        Ok(Ast::Call { name, arg: Box::new(arg), pos: p })
    }

    /// Identifier with bracket groups and, when another `(` follows, a numeric argument list.
    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        loop {
            while self.peek().is_some_and(Self::is_ident) {
                self.pos += 1;
            }
            if self.peek() != Some(b'[') {
                break;
            }
            while self.peek().is_some_and(|c| c != b']') {
                self.pos += 1;
            }
            if self.peek() != Some(b']') {
                return perr(start, "unclosed '['");
            }
            self.pos += 1;
        }
        if self.peek() == Some(b'(') {
            let mut k = 1;
            while self.at(k).is_some_and(|c| c.is_ascii_digit() || c == b',' || c == b' ') {
                k += 1;
            }
            if self.at(k) == Some(b')') && self.at(k + 1) == Some(b'(') {
                self.pos += k + 1;
            }
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

/// Parses `text` into an [`Ast`]; errors carry the byte offset.
pub fn parse(text: &str) -> Result<Ast> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.element()?;
    p.skip_ws();
    if p.pos != text.len() {
        return perr(p.pos, "trailing input");
    }
    Ok(e)
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_word(w: &[u8]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_factor(x: &Ast, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match x {
        Ast::Sum(_) | Ast::Prod(_) => write!(f, "({x})"),
        Ast::Num(re, im) if *re != Q::from_integer(0) && *im != Q::from_integer(0) => write!(f, "({x})"),
        Ast::Num(re, _) if *re < Q::from_integer(0) => write!(f, "({x})"),
        Ast::Num(_, im) if *im < Q::from_integer(0) => write!(f, "({x})"),
        _ => write!(f, "{x}"),
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Q::from_integer(0);
        match self {
            Ast::Num(re, im) => match (*re == zero, *im == zero) {
                (_, true) => write!(f, "{}", fmt_q(re)),
                (true, false) if *im == Q::from_integer(1) => write!(f, "i"),
                (true, false) => write!(f, "{} i", fmt_q(im)),
                _ if *im == Q::from_integer(1) => write!(f, "{} + i", fmt_q(re)),
                _ => write!(f, "{} + {} i", fmt_q(re), fmt_q(im)),
            },
            Ast::S(l, r) if r.is_empty() => write!(f, "s[{}]", fmt_word(l)),
            Ast::S(l, r) => write!(f, "s[{};{}]", fmt_word(l), fmt_word(r)),
            Ast::A(n, d) => write!(f, "a{n}{}", if *d { "*" } else { "" }),
            Ast::K(n) => write!(f, "K{n}"),
            Ast::Id => write!(f, "I"),
            Ast::Adj(x) => match **x {
                Ast::Paren(_) | Ast::S(..) | Ast::Id | Ast::K(_) | Ast::Call { .. } => write!(f, "{x}*"),
                _ => write!(f, "({x})*"),
            },
            Ast::Call { name, arg, .. } => write!(f, "{name}({arg})"),
            Ast::Paren(x) => write!(f, "({x})"),
            Ast::Sum(ts) => {
                for (k, (neg, t)) in ts.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    match t {
                        Ast::Sum(_) => write!(f, "({t})")?,
                        Ast::Num(re, im) if *re != zero && *im != zero => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
            Ast::Prod(fs) => {
                for (k, (_, x)) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    fmt_factor(x, f)?;
                }
                Ok(())
            }
        }
    }
}

/// Structural equality ignoring source positions.
pub fn same_shape(a: &Ast, b: &Ast) -> bool {
    match (a, b) {
        (Ast::Prod(x), Ast::Prod(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same_shape(&p.1, &q.1)),
        (Ast::Sum(x), Ast::Sum(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.0 == q.0 && same_shape(&p.1, &q.1)),
        (Ast::Call { name: n1, arg: a1, .. }, Ast::Call { name: n2, arg: a2, .. }) => n1 == n2 && same_shape(a1, a2),
        (Ast::Adj(x), Ast::Adj(y)) | (Ast::Paren(x), Ast::Paren(y)) => same_shape(x, y),
        _ => a == b,
    }
}

/// Value of an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<S: Scalar> {
    Scalar(S),
    Cuntz(Element<S>),
    Car(CarPoly<S>),
}

impl<S: Scalar> fmt::Display for Value<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Cuntz(x) => write!(f, "{x}"),
            Value::Car(x) => write!(f, "{x}"),
        }
    }
}

impl<S: Scalar> Value<S> {
    /// Canonical text: Cuntz elements are contracted, CAR polynomials get Klein factoring.
    pub fn canonical_text(&self) -> String {
        match self {
            Value::Cuntz(x) => x.canonical().to_string(),
            Value::Car(x) => x.pretty(),
            Value::Scalar(c) => Element::scalar(2, c.clone()).to_string(),
        }
    }

    pub fn into_cuntz(self, d: u8) -> Result<Element<S>> {
        match self {
            Value::Scalar(c) => Ok(Element::scalar(d, c)),
            Value::Cuntz(x) => Ok(x),
            Value::Car(x) => to_cuntz(&x),
        }
    }

    pub fn into_car(self) -> Result<CarPoly<S>> {
        match self {
            Value::Scalar(c) => Ok(CarPoly::scalar(c)),
            Value::Car(x) => Ok(x),
            Value::Cuntz(x) => from_cuntz(&x),
        }
    }
}

fn max_letter(a: &Ast) -> u8 {
    match a {
        Ast::S(l, r) => l.iter().chain(r).copied().max().unwrap_or(0),
        Ast::Adj(x) | Ast::Paren(x) => max_letter(x),
        Ast::Call { arg, .. } => max_letter(arg),
        Ast::Sum(ts) => ts.iter().map(|t| max_letter(&t.1)).max().unwrap_or(0),
        Ast::Prod(fs) => fs.iter().map(|t| max_letter(&t.1)).max().unwrap_or(0),
        _ => 0,
    }
}

struct Eval {
    d: u8,
}

fn mixed<T>(pos: usize, e: Error) -> Result<T> {
    perr(pos, e.to_string())
}

impl Eval {
    fn combine<S: Scalar>(
        &self,
        x: Value<S>,
        y: Value<S>,
        pos: usize,
        op: impl Fn(Value<S>, Value<S>) -> Result<Value<S>>,
    ) -> Result<Value<S>> {
        let r = match (&x, &y) {
            (Value::Cuntz(_), Value::Car(_)) | (Value::Car(_), Value::Cuntz(_)) => {
                let a = x.into_cuntz(self.d).or_else(|e| mixed(pos, e))?;
                let b = y.into_cuntz(self.d).or_else(|e| mixed(pos, e))?;
                op(Value::Cuntz(a), Value::Cuntz(b))
            }
            _ => op(x, y),
        };
        r.or_else(|e| match e {
            Error::Parse { .. } => Err(e),
            other => mixed(pos, other),
        })
    }

    fn add<S: Scalar>(&self, x: Value<S>, y: Value<S>, pos: usize) -> Result<Value<S>> {
        let d = self.d;
        self.combine(x, y, pos, |x, y| {
            Ok(match (x, y) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
                (Value::Cuntz(a), b) => Value::Cuntz(a.checked_add(&b.into_cuntz(d)?)?),
                (a, Value::Cuntz(b)) => Value::Cuntz(a.into_cuntz(d)?.checked_add(&b)?),
                (a, b) => Value::Car(&a.into_car()? + &b.into_car()?),
            })
        })
    }

    fn mul<S: Scalar>(&self, x: Value<S>, y: Value<S>, pos: usize) -> Result<Value<S>> {
        let d = self.d;
        self.combine(x, y, pos, |x, y| {
            Ok(match (x, y) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
                (Value::Scalar(a), Value::Cuntz(b)) | (Value::Cuntz(b), Value::Scalar(a)) => Value::Cuntz(b.scale(&a)),
                (Value::Scalar(a), Value::Car(b)) | (Value::Car(b), Value::Scalar(a)) => Value::Car(b.scale(&a)),
                (Value::Cuntz(a), b) => Value::Cuntz(a.checked_mul(&b.into_cuntz(d)?)?),
                (a, b) => Value::Car(&a.into_car()? * &b.into_car()?),
            })
        })
    }

    fn eval<S: Scalar>(&self, a: &Ast, pos: usize) -> Result<Value<S>> {
        Ok(match a {
            Ast::Num(re, im) => Value::Scalar(S::from_q(*re, *im)),
            Ast::S(l, r) => Value::Cuntz(Element::s(self.d, l, r)),
            Ast::A(n, d) => Value::Car(if *d { CarPoly::a_dag(*n) } else { CarPoly::a(*n) }),
            Ast::K(n) => Value::Car(CarPoly::klein(*n)),
            Ast::Id => Value::Scalar(S::one()),
            Ast::Paren(x) => self.eval(x, pos)?,
            Ast::Adj(x) => adjoint(self.eval::<S>(x, pos)?),
            Ast::Sum(ts) => {
                let mut acc = Value::Scalar(S::zero());
                for (neg, t) in ts {
                    let mut v = self.eval::<S>(t, pos)?;
                    if *neg {
                        v = self.mul(Value::Scalar(-S::one()), v, pos)?;
                    }
                    acc = self.add(acc, v, pos)?;
                }
                acc
            }
            Ast::Prod(fs) => {
                let mut acc = Value::Scalar(S::one());
                for (p, x) in fs {
                    let v = self.eval::<S>(x, *p)?;
                    acc = self.mul(acc, v, *p)?;
                }
                acc
            }
            Ast::Call { name, arg, pos } => self.call(name, self.eval(arg, *pos)?, *pos)?,
        })
    }

    fn call<S: Scalar>(&self, name: &str, v: Value<S>, pos: usize) -> Result<Value<S>> {
        match name {
            "adj" => return Ok(adjoint(v)),
            "nf" => {
                return Ok(match v {
                    Value::Cuntz(x) => Value::Cuntz(x.canonical()),
                    other => other,
                })
            }
            "car" => return Ok(Value::Car(v.into_car().or_else(|e| mixed(pos, e))?)),
            _ => {}
        }
        let m = by_name::<S>(name).or_else(|e| mixed(pos, e))?;
        let src = m.source_d() as u8;
        match v {
            Value::Car(x) => {
                let y = to_cuntz(&x).and_then(|c| m.apply(&c)).or_else(|e| mixed(pos, e))?;
                Ok(Value::Car(from_cuntz(&y).or_else(|e| mixed(pos, e))?))
            }
            other => {
                let x = other.into_cuntz(src).and_then(|x| x.with_d(src)).or_else(|e| mixed(pos, e))?;
                Ok(Value::Cuntz(m.apply(&x).or_else(|e| mixed(pos, e))?))
            }
        }
    }
}

fn adjoint<S: Scalar>(v: Value<S>) -> Value<S> {
    match v {
        Value::Scalar(c) => Value::Scalar(c.conj()),
        Value::Cuntz(e) => Value::Cuntz(e.adjoint()),
        Value::Car(p) => Value::Car(p.adjoint()),
    }
}

/// Evaluates `ast`; Cuntz monomials live in `O_d` with `d = max(d_min, largest letter, 2)`.
pub fn eval<S: Scalar>(ast: &Ast, d_min: u8) -> Result<Value<S>> {
    let d = d_min.max(max_letter(ast)).max(2);
    Eval { d }.eval(ast, 0)
}

/// [`parse`] followed by [`eval`].
pub fn parse_value<S: Scalar>(text: &str, d_min: u8) -> Result<Value<S>> {
    eval(&parse(text)?, d_min)
}

/// Parses a Cuntz element; CAR input is sent through `Φ_{SR_1}`.
pub fn parse_element<S: Scalar>(text: &str, d_min: u8) -> Result<Element<S>> {
    let d = d_min.max(2);
    parse_value::<S>(text, d)?.into_cuntz(d)
}

/// Parses a CAR polynomial; Cuntz input is pulled back through `Φ_{SR_1}`.
pub fn parse_car<S: Scalar>(text: &str) -> Result<CarPoly<S>> {
    parse_value::<S>(text, 2)?.into_car()
}
