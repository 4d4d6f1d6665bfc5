//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = power { ("*" | "/") power } ;
//! power   = unary [ "^" power ] ;            (* right associative *)
//! unary   = ("-" | "+") unary | primary ;     (* binds tighter than "^" *)
//! primary = number | "pi" | "e" | VAR
//!         | FUNC "(" expr ")" | "(" expr ")" ;
//! FUNC    = "sin" | "cos" | "tan" | "asin" | "atan" | "exp" | "ln" | "sqrt" | "abs" ;
//! ```
//!
//! Exponents must be constant and evaluate to an integer or half-integer.

use super::ast::{BinaryOp, ExprNode, Function};
use super::eval::eval_scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("malformed number {0:?}")]
    BadNumber(String),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("function {name} takes 1 argument, got {got}")]
    Arity { name: &'static str, got: usize },
    #[error("exponent must not depend on the variable")]
    NonConstantExponent,
    #[error("exponent {0} is not an integer or half-integer")]
    InvalidExponent(f64),
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(v) => format!("number {v}"),
            Token::Ident(name) => format!("identifier {name:?}"),
            Token::Op(c) => format!("operator {c:?}"),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Comma => "','".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent part, only if followed by a digit (optionally signed)
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lexeme = &text[start..i];
            let value: f64 = lexeme.parse().map_err(|_| ParseError {
                kind: ParseErrorKind::BadNumber(lexeme.to_string()),
                offset: start,
            })?;
            out.push((Token::Number(value), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Token::Ident(text[start..i].to_string()), start));
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Token::Op(c),
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    offset: start,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    variable: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            Token::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.describe()),
        };
        ParseError {
            kind,
            offset: self.offset(),
        }
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Op('+') => BinaryOp::Add,
                Token::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = ExprNode::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.power()?;
        loop {
            let op = match self.peek() {
                Token::Op('*') => BinaryOp::Mul,
                Token::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.power()?;
            lhs = ExprNode::binary(op, lhs, rhs);
        }
    }

    fn power(&mut self) -> Result<ExprNode, ParseError> {
        let base = self.unary()?;
        if *self.peek() != Token::Op('^') {
            return Ok(base);
        }
        self.bump();
        let exp_offset = self.offset();
        let exponent = self.power()?;
        check_exponent(&exponent, exp_offset)?;
        Ok(ExprNode::binary(BinaryOp::Pow, base, exponent))
    }

    fn unary(&mut self) -> Result<ExprNode, ParseError> {
        match self.peek() {
            Token::Op('-') => {
                self.bump();
                Ok(ExprNode::negate(self.unary()?))
            }
            Token::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<ExprNode, ParseError> {
        match self.peek().clone() {
            Token::Number(v) => {
                self.bump();
                Ok(ExprNode::Constant(v))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::Ident(name) => {
                let (_, offset) = self.bump();
                if name == self.variable {
                    return Ok(ExprNode::Variable);
                }
                match name.as_str() {
                    "pi" => return Ok(ExprNode::Constant(std::f64::consts::PI)),
                    "e" => return Ok(ExprNode::Constant(std::f64::consts::E)),
                    _ => {}
                }
                let Some(func) = Function::from_name(&name) else {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownIdentifier(name),
                        offset,
                    });
                };
                if *self.peek() != Token::LParen {
                    return Err(self.unexpected());
                }
                self.bump();
                self.call_args(func, offset)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn call_args(&mut self, func: Function, offset: usize) -> Result<ExprNode, ParseError> {
        let mut args = Vec::new();
        if *self.peek() != Token::RParen {
            loop {
                args.push(self.expr()?);
                if *self.peek() == Token::Comma {
                    self.bump();
                    continue;
                }
                break;
            }
        }
        self.expect_rparen()?;
        if args.len() != 1 {
            return Err(ParseError {
                kind: ParseErrorKind::Arity {
                    name: func.name(),
                    got: args.len(),
                },
                offset,
            });
        }
        Ok(ExprNode::call(func, args.pop().unwrap()))
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Token::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }
}

fn check_exponent(exponent: &ExprNode, offset: usize) -> Result<(), ParseError> {
    if exponent.depends_on_variable() {
        return Err(ParseError {
            kind: ParseErrorKind::NonConstantExponent,
            offset,
        });
    }
    let value = eval_scalar(exponent, 0.0).map_err(|_| ParseError {
        kind: ParseErrorKind::InvalidExponent(f64::NAN),
        offset,
    })?;
    if !is_half_integer(value) {
        return Err(ParseError {
            kind: ParseErrorKind::InvalidExponent(value),
            offset,
        });
    }
    Ok(())
}

pub(crate) fn is_half_integer(value: f64) -> bool {
    value.is_finite() && (2.0 * value).fract() == 0.0 && value.abs() < 1e6
}

/// Parse an expression in the variable `s`.
pub fn parse(text: &str) -> Result<ExprNode, ParseError> {
    parse_in(text, "s")
}

/// Parse an expression whose free variable is named `variable`.
pub fn parse_in(text: &str, variable: &str) -> Result<ExprNode, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            offset: 0,
        });
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        variable,
    };
    let node = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected());
    }
    Ok(node)
}
