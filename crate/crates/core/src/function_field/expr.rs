//! Parser for element expressions: integer literals, `x`, `y`, `+ - * / ^`,
//! parentheses and unary minus. `^` binds tightest and takes an integer
//! exponent (optionally signed); `*` and `/` are left associative.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn mentions_y(&self) -> bool {
        match self {
            Expr::Y => true,
            Expr::Int(_) | Expr::X => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_y(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.mentions_y() || b.mentions_y()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, offset);
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let tok = match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                    continue;
                }
                '0'..='9' => {
                    let s = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    lx.toks.push((Tok::Int(src[s..i].parse().unwrap()), s));
                    continue;
                }
                'x' => Tok::X,
                'y' => Tok::Y,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    let ch = src[i..].chars().next().unwrap();
                    return Err(syntax(src, i, format!("unexpected character `{ch}`")));
                }
            };
            lx.toks.push((tok, i));
            i += 1;
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> Error {
        syntax(self.src, self.offset(), msg)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let e: i64 = n
                    .try_into()
                    .map_err(|_| syntax(self.src, at, "exponent too large"))?;
                if e > 10_000 {
                    return Err(syntax(self.src, at, "exponent too large"));
                }
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => Err(syntax(self.src, at, "expected integer exponent after `^`")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::X => {
                self.bump();
                Ok(Expr::X)
            }
            Tok::Y => {
                self.bump();
                Ok(Expr::Y)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(self.err("unexpected end of expression")),
            _ => Err(self.err("expected a number, `x`, `y` or `(`")),
        }
    }
}

/// Parses an expression string into a syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("-x^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::X), 2))));
        let e = parse_expr("1/x/x").unwrap();
        assert!(matches!(e, Expr::Div(ref a, _) if matches!(**a, Expr::Div(_, _))));
        assert!(parse_expr("x^-1").is_ok());
        assert!(parse_expr("(x+1)*(y-2)").unwrap().mentions_y());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_expr("x + * 2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse_expr("1 +\n  x $") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("x^y").is_err());
    }
}
