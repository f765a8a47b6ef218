use super::{BinOp, Expr, Func};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok<'a> {
    Num(f64),
    Ident(&'a str),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and the byte offset it starts at.
    fn next(&mut self) -> Result<(Tok<'a>, usize)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let Some(&c) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Tok::Op(c as char)
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => Tok::Num(self.number()?),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let len = bytes[start..]
                    .iter()
                    .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                    .count();
                self.pos += len;
                Tok::Ident(&self.src[start..start + len])
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self) -> Result<f64> {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let digits = |from: usize| {
            bytes[from..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count()
        };
        let mut end = start + digits(start);
        if bytes.get(end) == Some(&b'.') {
            end += 1;
            end += digits(end);
        }
        // An `e` only starts an exponent when digits follow; otherwise it is
        // left for the lexer (and will be rejected as a dangling constant).
        if matches!(bytes.get(end), Some(b'e' | b'E')) {
            let mut exp = end + 1;
            if matches!(bytes.get(exp), Some(b'+' | b'-')) {
                exp += 1;
            }
            let n = digits(exp);
            if n > 0 {
                end = exp + n;
            }
        }
        let text = &self.src[start..end];
        self.pos = end;
        let value: f64 = text
            .parse()
            .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
        if !value.is_finite() {
            return Err(syntax(start, format!("number `{text}` is out of range")));
        }
        Ok(value)
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok<'a>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.tok {
            self.bump()?;
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.tok {
            self.bump()?;
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let at = self.at;
        match self.tok {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                self.expect_rparen(at)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump()?;
                match name {
                    "x" => Ok(Expr::X),
                    "pi" => Ok(Expr::Pi),
                    "e" => Ok(Expr::E),
                    _ => {
                        let func = Func::from_name(name)
                            .ok_or_else(|| syntax(at, format!("unknown identifier `{name}`")))?;
                        if self.tok != Tok::LParen {
                            return Err(syntax(
                                self.at,
                                format!("expected `(` after function `{name}`"),
                            ));
                        }
                        let open = self.at;
                        self.bump()?;
                        let arg = self.expr()?;
                        self.expect_rparen(open)?;
                        Ok(Expr::call(func, arg))
                    }
                }
            }
            Tok::End => Err(syntax(at, "expected an expression, found end of input")),
            Tok::RParen => Err(syntax(at, "expected an expression, found `)`")),
            Tok::Op(c) => Err(syntax(
                at,
                format!("dangling operator, found `{c}` where an operand was expected"),
            )),
        }
    }

    fn expect_rparen(&mut self, open: usize) -> Result<()> {
        if self.tok != Tok::RParen {
            return Err(syntax(
                self.at,
                format!("unbalanced parenthesis: `(` at offset {open} is never closed"),
            ));
        }
        self.bump()
    }
}

/// Parses an integrand expression in the variable `x`.
pub fn parse(text: &str) -> Result<Expr> {
    if text.trim().is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut parser = Parser {
        lexer: Lexer { src: text, pos: 0 },
        tok: Tok::End,
        at: 0,
    };
    parser.bump()?;
    let expr = parser.expr()?;
    match parser.tok {
        Tok::End => Ok(expr),
        Tok::RParen => Err(syntax(parser.at, "unbalanced parenthesis: unexpected `)`")),
        _ => Err(syntax(parser.at, "unexpected trailing input")),
    }
}
