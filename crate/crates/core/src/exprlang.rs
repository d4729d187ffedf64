//! A small expression language over one real variable `x`.
//!
//! Grammar (EBNF):
//!
//! ```text
//! expr   := term   { ("+" | "-") term }
//! term   := unary  { ("*" | "/") unary }
//! unary  := "-" unary | power
//! power  := atom   [ "^" unary ]
//! atom   := NUMBER | "x" | "pi" | "e"
//!         | FUNC "(" expr ")" | "(" expr ")"
//! FUNC   := "sin" | "cos" | "exp" | "ln" | "sqrt" | "cbrt" | "abs" | "tanh"
//! NUMBER := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^-3` is accepted. `cbrt` of a negative argument is the
//! real cube root. Evaluation follows IEEE semantics except that `ln` of a
//! non-positive value and `sqrt` of a negative value are reported as
//! [`Error::Eval`] with the byte offset of the call.

use std::fmt;

use crate::error::{Error, Result};

/// Built-in unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Cbrt,
    Abs,
    Tanh,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Cbrt => "cbrt",
            Func::Abs => "abs",
            Func::Tanh => "tanh",
        }
    }

    fn by_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "cbrt" => Func::Cbrt,
            "abs" => Func::Abs,
            "tanh" => Func::Tanh,
            _ => return None,
        })
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    /// Binding strength used by both the parser and the printer.
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

/// A parsed expression. Every node remembers the byte offset of the token
/// that introduced it so evaluation errors can point back into the source.
#[derive(Debug, Clone)]
pub struct Expr {
    kind: ExprKind,
    offset: usize,
}

#[derive(Debug, Clone)]
enum ExprKind {
    Number(f64),
    Variable,
    Pi,
    Euler,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Byte offset of the token that introduced this node.
    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Evaluates the expression at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match &self.kind {
            ExprKind::Number(v) => Ok(*v),
            ExprKind::Variable => Ok(x),
            ExprKind::Pi => Ok(std::f64::consts::PI),
            ExprKind::Euler => Ok(std::f64::consts::E),
            ExprKind::Neg(inner) => Ok(-inner.eval(x)?),
            ExprKind::Bin(op, lhs, rhs) => {
                let a = lhs.eval(x)?;
                let b = rhs.eval(x)?;
                Ok(match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                })
            }
            ExprKind::Call(func, arg) => {
                let v = arg.eval(x)?;
                match func {
                    Func::Ln if v <= 0.0 => Err(Error::Eval {
                        offset: self.offset,
                        message: format!("ln of non-positive value {v}"),
                    }),
                    Func::Ln => Ok(v.ln()),
                    Func::Sqrt if v < 0.0 => Err(Error::Eval {
                        offset: self.offset,
                        message: format!("sqrt of negative value {v}"),
                    }),
                    Func::Sqrt => Ok(v.sqrt()),
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Exp => Ok(v.exp()),
                    Func::Cbrt => Ok(v.cbrt()),
                    Func::Abs => Ok(v.abs()),
                    Func::Tanh => Ok(v.tanh()),
                }
            }
        }
    }

    /// Renders the expression with the minimal parentheses needed to parse
    /// back to the same tree. `parse(format(e))` reproduces `e`.
    pub fn format(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out
    }

    /// Precedence of this node as seen by the printer.
    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Bin(op, ..) => op.precedence(),
            ExprKind::Neg(_) => 3,
            _ => 5,
        }
    }

    fn write(&self, out: &mut String, min_prec: u8) {
        let prec = self.precedence();
        let parens = prec < min_prec;
        if parens {
            out.push('(');
        }
        match &self.kind {
            ExprKind::Number(v) => out.push_str(&format_number(*v)),
            ExprKind::Variable => out.push('x'),
            ExprKind::Pi => out.push_str("pi"),
            ExprKind::Euler => out.push('e'),
            ExprKind::Neg(inner) => {
                out.push('-');
                inner.write(out, 3);
            }
            ExprKind::Bin(op, lhs, rhs) => match op {
                // Left-associative: the right operand needs one extra level.
                BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div => {
                    lhs.write(out, prec);
                    out.push(op.symbol());
                    rhs.write(out, prec + 1);
                }
                // Right-associative, base restricted to atoms.
                BinOp::Pow => {
                    lhs.write(out, 5);
                    out.push('^');
                    rhs.write(out, 3);
                }
            },
            ExprKind::Call(func, arg) => {
                out.push_str(func.name());
                out.push('(');
                arg.write(out, 0);
                out.push(')');
            }
        }
        if parens {
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Formats a literal so the lexer reads it back as a single number token.
fn format_number(v: f64) -> String {
    format!("{v}")
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let offset = lhs.offset;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            let offset = lhs.offset;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                offset,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            let offset = self.pos;
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                offset,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // Right-associative; a signed exponent like `2^-3` is allowed.
            let exponent = self.unary()?;
            let offset = base.offset;
            return Ok(Expr {
                kind: ExprKind::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)),
                offset,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let mut end = self.pos;
        let mut saw_digit = false;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            saw_digit = true;
            end += 1;
        }
        if end < self.bytes.len() && self.bytes[end] == b'.' {
            end += 1;
            while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                saw_digit = true;
                end += 1;
            }
        }
        if !saw_digit {
            return Err(self.err("malformed number"));
        }
        // An exponent part only if `e`/`E` is followed by a (signed) digit;
        // otherwise the `e` belongs to the next token (Euler's constant).
        if end < self.bytes.len() && (self.bytes[end] == b'e' || self.bytes[end] == b'E') {
            let mut probe = end + 1;
            if probe < self.bytes.len() && (self.bytes[probe] == b'+' || self.bytes[probe] == b'-')
            {
                probe += 1;
            }
            if probe < self.bytes.len() && self.bytes[probe].is_ascii_digit() {
                end = probe;
                while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                    end += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..end]).expect("ascii slice");
        let value: f64 = text.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("malformed number '{text}'"),
        })?;
        self.pos = end;
        Ok(Expr {
            kind: ExprKind::Number(value),
            offset: start,
        })
    }

    fn identifier(&mut self) -> Result<Expr> {
        let start = self.pos;
        let mut end = self.pos;
        while end < self.bytes.len()
            && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
        {
            end += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..end]).expect("ascii slice");
        self.pos = end;
        let kind = match name {
            "x" => ExprKind::Variable,
            "pi" => ExprKind::Pi,
            "e" => ExprKind::Euler,
            _ => {
                if let Some(func) = Func::by_name(name) {
                    if !self.eat(b'(') {
                        return Err(self.err(format!("expected '(' after '{name}'")));
                    }
                    let arg = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    return Ok(Expr {
                        kind: ExprKind::Call(func, Box::new(arg)),
                        offset: start,
                    });
                }
                self.pos = start;
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unknown identifier '{name}'"),
                });
            }
        };
        Ok(Expr {
            kind,
            offset: start,
        })
    }
}
