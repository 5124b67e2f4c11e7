//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly, MAX_EXP};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(Token {
                tok: t,
                line: tl,
                col: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            col: tc,
            msg: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    field: Field,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            if acc.degree() + rhs.degree() > MAX_EXP {
                let t = self.peek().clone();
                return self.err(&t, "degree exceeds 255");
            }
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            let e: u32 = match &t.tok {
                Tok::Int(s) => match s.parse::<u32>() {
                    Ok(v) if v <= MAX_EXP => v,
                    _ => return self.err(&t, "exponent too large"),
                },
                _ => return self.err(&t, "expected a non-negative integer exponent"),
            };
            if (base.degree() as u64) * (e as u64) > MAX_EXP as u64 {
                return self.err(&t, "degree exceeds 255");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => {
                let p = self.field.p();
                let mut v = 0u64;
                for ch in s.chars() {
                    v = (v * 10 + ch.to_digit(10).unwrap() as u64) % p;
                }
                Ok(Poly::monomial(n, self.field, Monomial::ONE, v))
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Ok(Poly::var(n, self.field, i)),
                None => self.err(&t, format!("unknown variable '{name}'")),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.err(&close, "expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.err(&t, "unexpected end of expression"),
            other => self.err(&t, format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `src` as a polynomial in the named variables over `field`.
pub fn parse_poly(src: &str, vars: &[String], field: Field) -> Result<Poly> {
    if vars.len() > crate::poly::MAX_VARS {
        return Err(Error::Input(format!(
            "{} variables given; at most {} are supported",
            vars.len(),
            crate::poly::MAX_VARS
        )));
    }
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        field,
    };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn roundtrip_deglex() {
        let v = names(&["x", "y"]);
        let p = parse_poly("-3*y^3 + x^2*y", &v, Field::default()).unwrap();
        assert_eq!(p.to_string_with(&v), "x^2*y - 3*y^3");
        let q = parse_poly(&p.to_string_with(&v), &v, Field::default()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parentheses_and_powers() {
        let v = names(&["x", "y"]);
        let p = parse_poly("(x+y)^2 - (x - y)*(x+y)", &v, Field::default()).unwrap();
        assert_eq!(p.to_string_with(&v), "2*x*y + 2*y^2");
    }

    #[test]
    fn error_positions() {
        let v = names(&["x", "y"]);
        match parse_poly("x + z", &v, Field::default()) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse_poly("x +\n  $", &v, Field::default()) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x^", &v, Field::default()).is_err());
        assert!(parse_poly("(x", &v, Field::default()).is_err());
        assert!(parse_poly("x y", &v, Field::default()).is_err());
    }

    #[test]
    fn multi_char_variables() {
        let v = names(&["a1", "b22"]);
        let p = parse_poly("a1*b22 - 7", &v, Field::default()).unwrap();
        assert_eq!(p.to_string_with(&v), "a1*b22 - 7");
    }

    #[test]
    fn large_coefficients_reduce() {
        let v = names(&["x"]);
        let f = Field::new(7).unwrap();
        let p = parse_poly("15*x", &v, f).unwrap();
        assert_eq!(p.to_string_with(&v), "x");
    }
}
