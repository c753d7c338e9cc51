//! Expression grammar for multivector identities.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := '-'* chain
//! chain    := postfix (('*' | '^' | '|')? postfix)*   left assoc, equal precedence
//! postfix  := primary ('~' | '!' | '**' INT)*
//! primary  := RATIONAL | IDENT | '(' expr ')' | '<' expr '>' '_' INT
//! ```
//!
//! Juxtaposition is the geometric product, as is `*`. `^` is the outer and
//! `|` the inner product; all three bind identically and associate left, so
//! mixed chains should be parenthesized for readability. `~` is reversion,
//! `!` the metric adjoint (reversion conjugated by the first generator),
//! `**n` an integer power. `I` names the unit pseudoscalar. Rationals are
//! written `p/q` with no spaces.

use super::SymbolicError;
use num::{BigInt, BigRational};

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Rational(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    StarStar,
    Caret,
    Pipe,
    Tilde,
    Bang,
    Lt,
    Gt,
    Underscore,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> SymbolicError {
    SymbolicError::Parse { pos, msg: msg.into() }
}

pub fn lex(src: &str) -> Result<Vec<(usize, Token)>, SymbolicError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => { out.push((i, Token::Plus)); i += 1; }
            '-' => { out.push((i, Token::Minus)); i += 1; }
            '*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    out.push((i, Token::StarStar));
                    i += 2;
                } else {
                    out.push((i, Token::Star));
                    i += 1;
                }
            }
            '^' => { out.push((i, Token::Caret)); i += 1; }
            '|' => { out.push((i, Token::Pipe)); i += 1; }
            '~' => { out.push((i, Token::Tilde)); i += 1; }
            '!' => { out.push((i, Token::Bang)); i += 1; }
            '<' => { out.push((i, Token::Lt)); i += 1; }
            '>' => { out.push((i, Token::Gt)); i += 1; }
            '_' => { out.push((i, Token::Underscore)); i += 1; }
            '(' => { out.push((i, Token::LParen)); i += 1; }
            ')' => { out.push((i, Token::RParen)); i += 1; }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let p: BigInt = src[start..i].parse().unwrap();
                // a '/' directly attached to digits continues the literal as p/q
                let q = if bytes.get(i) == Some(&b'/') && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit()) {
                    i += 1;
                    let qs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    src[qs..i].parse().unwrap()
                } else {
                    BigInt::from(1)
                };
                if q == BigInt::from(0) {
                    return Err(err(start, "rational literal with zero denominator"));
                }
                out.push((start, Token::Rational(BigRational::new(p, q))));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            other => return Err(err(i, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    /// Unresolved name: generator, pseudoscalar, scalar or vector symbol.
    Ident(String),
    Neg(Box<Expr>),
    Reverse(Box<Expr>),
    Adjoint(Box<Expr>),
    Power(Box<Expr>, u32),
    Grade(Box<Expr>, u32),
    Geometric(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Dot(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

enum Op {
    Geo,
    Wedge,
    Dot,
}

struct Parser {
    toks: Vec<(usize, Token)>,
    at: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.src_len, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), SymbolicError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    fn small_uint(&mut self, what: &str) -> Result<u32, SymbolicError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Rational(r)) if r.is_integer() => u32::try_from(r.to_integer())
                .map_err(|_| err(pos, format!("{what} out of range"))),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, SymbolicError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SymbolicError> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.chain()
    }

    fn chain(&mut self) -> Result<Expr, SymbolicError> {
        let mut lhs = self.postfix()?;
        loop {
            let op = match self.peek() {
                Some(Token::Star) => { self.bump(); Op::Geo }
                Some(Token::Caret) => { self.bump(); Op::Wedge }
                Some(Token::Pipe) => { self.bump(); Op::Dot }
                // juxtaposition: next token can begin a primary
                Some(Token::Rational(_) | Token::Ident(_) | Token::LParen | Token::Lt) => Op::Geo,
                _ => return Ok(lhs),
            };
            let rhs = self.postfix()?;
            lhs = match op {
                Op::Geo => Expr::Geometric(Box::new(lhs), Box::new(rhs)),
                Op::Wedge => Expr::Wedge(Box::new(lhs), Box::new(rhs)),
                Op::Dot => Expr::Dot(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn postfix(&mut self) -> Result<Expr, SymbolicError> {
        let mut e = self.primary()?;
        loop {
            match self.peek() {
                Some(Token::Tilde) => {
                    self.bump();
                    e = Expr::Reverse(Box::new(e));
                }
                Some(Token::Bang) => {
                    self.bump();
                    e = Expr::Adjoint(Box::new(e));
                }
                Some(Token::StarStar) => {
                    self.bump();
                    let n = self.small_uint("integer exponent")?;
                    e = Expr::Power(Box::new(e), n);
                }
                _ => return Ok(e),
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, SymbolicError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Rational(r)) => Ok(Expr::Rational(r)),
            Some(Token::Ident(name)) => Ok(Expr::Ident(name)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(e)
            }
            Some(Token::Lt) => {
                let e = self.expr()?;
                self.expect(Token::Gt, "'>' closing grade projection")?;
                self.expect(Token::Underscore, "'_' after '>'")?;
                let k = self.small_uint("grade index")?;
                Ok(Expr::Grade(Box::new(e), k))
            }
            _ => Err(err(pos, "expected a value")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, SymbolicError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, src_len: src.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input after expression"));
    }
    Ok(e)
}
