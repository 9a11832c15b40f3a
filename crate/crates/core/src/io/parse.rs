//! System files and polynomial expressions.
//!
//! ```text
//! # circle meets line
//! vars: x y
//! field: GF 5
//! polys:
//! x^2 + y^2 - 1
//! y - x
//! conclusion: 2*x^2 - 1
//! ```
//!
//! `vars:` lists variables least first. `field:` is `QQ` or `GF <p>`. Each
//! line after `polys:` holds one expression; `#` starts a comment and blank
//! lines are skipped. Multiplication is always explicit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coeff::{Coeff, Field};
use crate::poly::{Polynomial, VarOrder};

/// Parse failure with a 1-based position and the tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into(), expected: Vec::new() }
    }

    fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub order: VarOrder,
    pub field: Field,
    pub polys: Vec<Polynomial>,
    pub conclusion: Option<Polynomial>,
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    parse_system_with_field(text, None)
}

/// Like [`parse_system`], but the given field replaces the declared one.
pub fn parse_system_with_field(text: &str, field_override: Option<Field>) -> Result<SystemFile, ParseError> {
    let mut order: Option<VarOrder> = None;
    let mut field: Option<Field> = None;
    let mut in_polys = false;
    let mut polys = Vec::new();
    let mut conclusion = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        let offset = content.chars().count() - trimmed.chars().count();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }

        let header = |name: &str| trimmed.strip_prefix(name).map(|rest| (rest, offset + name.chars().count()));
        if let Some((rest, col)) = header("vars:") {
            if order.is_some() {
                return Err(ParseError::new(line_no, offset + 1, "variables declared twice"));
            }
            order = Some(parse_vars(rest, line_no, col)?);
            in_polys = false;
        } else if let Some((rest, col)) = header("field:") {
            if field.is_some() {
                return Err(ParseError::new(line_no, offset + 1, "field declared twice"));
            }
            field = Some(parse_field(rest, line_no, col)?);
        } else if let Some((rest, _)) = header("polys:") {
            if !rest.trim().is_empty() {
                let col = offset + "polys:".len() + 1 + (rest.len() - rest.trim_start().len());
                return Err(ParseError::new(line_no, col, "expressions go on the lines after `polys:`"));
            }
            in_polys = true;
        } else if let Some((rest, col)) = header("conclusion:") {
            let (order, field) = ring(&order, &field, field_override, line_no)?;
            if conclusion.is_some() {
                return Err(ParseError::new(line_no, offset + 1, "conclusion given twice"));
            }
            conclusion = Some(parse_expr_at(rest, field, order, line_no, col)?);
            in_polys = false;
        } else if in_polys {
            let (order, field) = ring(&order, &field, field_override, line_no)?;
            polys.push(parse_expr_at(trimmed, field, order, line_no, offset)?);
        } else {
            return Err(ParseError::new(line_no, offset + 1, "unexpected line").expecting(&[
                "vars:",
                "field:",
                "polys:",
                "conclusion:",
            ]));
        }
    }

    let order = order.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing `vars:` declaration"))?;
    let field =
        field_override.or(field).ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing `field:` declaration"))?;
    Ok(SystemFile { order, field, polys, conclusion })
}

fn ring<'a>(
    order: &'a Option<VarOrder>,
    field: &Option<Field>,
    field_override: Option<Field>,
    line: usize,
) -> Result<(&'a VarOrder, Field), ParseError> {
    let order =
        order.as_ref().ok_or_else(|| ParseError::new(line, 1, "`vars:` must be declared before any expression"))?;
    let field = field_override
        .or(*field)
        .ok_or_else(|| ParseError::new(line, 1, "`field:` must be declared before any expression"))?;
    Ok((order, field))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn words(rest: &str, col: usize) -> Vec<(usize, &str)> {
    // (1-based column, word)
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in rest.char_indices().chain(std::iter::once((rest.len(), ' '))) {
        match (start, c.is_whitespace()) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push((col + rest[..s].chars().count() + 1, &rest[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_vars(rest: &str, line: usize, col: usize) -> Result<VarOrder, ParseError> {
    let ws = words(rest, col);
    if ws.is_empty() {
        return Err(ParseError::new(line, col + 1, "no variables declared").expecting(&["variable name"]));
    }
    for (i, (c, w)) in ws.iter().enumerate() {
        if !is_ident(w) {
            return Err(ParseError::new(line, *c, format!("`{w}` is not a valid variable name")));
        }
        if ws[..i].iter().any(|(_, prev)| prev == w) {
            return Err(ParseError::new(line, *c, format!("variable `{w}` declared twice")));
        }
    }
    Ok(VarOrder::new(ws.iter().map(|(_, w)| *w)).expect("validated names"))
}

fn parse_field(rest: &str, line: usize, col: usize) -> Result<Field, ParseError> {
    let ws = words(rest, col);
    match ws.as_slice() {
        [(_, "QQ")] => Ok(Field::Rationals),
        [(_, "GF"), (c, p)] => {
            let n: u64 = p
                .parse()
                .map_err(|_| ParseError::new(line, *c, format!("`{p}` is not a modulus")).expecting(&["prime"]))?;
            Field::prime(n).map_err(|e| ParseError::new(line, *c, e.to_string()))
        }
        [(c, "GF")] => Err(ParseError::new(line, *c + 2, "missing modulus").expecting(&["prime"])),
        [(c, w), ..] => Err(ParseError::new(line, *c, format!("unknown field `{w}`")).expecting(&["QQ", "GF"])),
        [] => Err(ParseError::new(line, col + 1, "missing field").expecting(&["QQ", "GF"])),
    }
}

/// Parses one expression over `field` and `order`.
pub fn parse_polynomial(text: &str, field: Field, order: &VarOrder) -> Result<Polynomial, ParseError> {
    parse_expr_at(text, field, order, 1, 0)
}

fn parse_expr_at(
    text: &str,
    field: Field,
    order: &VarOrder,
    line: usize,
    col_offset: usize,
) -> Result<Polynomial, ParseError> {
    let tokens = lex(text, line, col_offset)?;
    let mut parser = ExprParser { tokens, pos: 0, line, field, order };
    let p = parser.expr()?;
    let tok = parser.peek();
    if tok.kind != Tok::End {
        let expected: &[&str] = &["+", "-", "*", "^", "end of line"];
        return Err(ParseError::new(line, tok.col, format!("unexpected {}", tok.kind.describe())).expecting(expected));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of line".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col_offset: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col_offset + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            out.push(Token { kind, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { kind: Tok::Int(s.parse().expect("digits")), col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { kind: Tok::Ident(chars[start..i].iter().collect()), col });
        } else {
            return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { kind: Tok::End, col: col_offset + chars.len() + 1 });
    Ok(out)
}

const OPERAND: &[&str] = &["number", "variable", "(", "-"];

struct ExprParser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    field: Field,
    order: &'a VarOrder,
}

impl ExprParser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, tok: &Token, msg: String, expected: &[&str]) -> ParseError {
        ParseError::new(self.line, tok.col, msg).expecting(expected)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().kind == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().kind == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek().kind != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let tok = self.bump();
        let Tok::Int(n) = &tok.kind else {
            return Err(self.err(&tok, format!("unexpected {}", tok.kind.describe()), &["exponent"]));
        };
        let e = n.to_u32().ok_or_else(|| self.err(&tok, format!("exponent {n} is too large"), &[]))?;
        base.pow(e).map_err(|err| self.err(&tok, err.to_string(), &[]))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let tok = self.bump();
        match &tok.kind {
            Tok::Int(n) => {
                if self.peek().kind != Tok::Slash {
                    return Ok(Polynomial::constant(self.field, self.order, Coeff::from_bigint(self.field, n))
                        .expect("same field"));
                }
                self.bump();
                let den_tok = self.bump();
                let Tok::Int(d) = &den_tok.kind else {
                    return Err(self.err(
                        &den_tok,
                        format!("unexpected {}", den_tok.kind.describe()),
                        &["denominator"],
                    ));
                };
                if !self.field.is_rational() {
                    return Err(self.err(&tok, format!("rational literal not allowed over {}", self.field), &[]));
                }
                let c = Coeff::from_ratio(self.field, n, d)
                    .map_err(|_| self.err(&den_tok, "zero denominator".into(), &[]))?;
                Ok(Polynomial::constant(self.field, self.order, c).expect("same field"))
            }
            Tok::Ident(name) => match self.order.index_of(name) {
                Some(v) => Ok(Polynomial::variable(self.field, self.order, v)),
                None => Err(self.err(&tok, format!("unknown variable `{name}`"), &[])),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.kind != Tok::RParen {
                    return Err(self.err(
                        &close,
                        format!("unexpected {}", close.kind.describe()),
                        &["+", "-", "*", "^", ")"],
                    ));
                }
                Ok(inner)
            }
            other => Err(self.err(&tok, format!("unexpected {}", other.describe()), OPERAND)),
        }
    }
}
