//! Line-oriented parser for `.ffn` presentation files.
//!
//! ```text
//! file   := header? decl*
//! header := "functor" IDENT
//! decl   := "shape" IDENT "/" NAT | "eq" term "=" term
//! term   := IDENT | IDENT "(" IDENT ("," IDENT)* ")"
//! ```
//!
//! One declaration per line; `#` starts a comment.

use thiserror::Error;

use super::{Equation, FlatTerm, Presentation, Shape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate shape `{name}` (first declared on line {first_line})")]
    DuplicateShape {
        name: String,
        line: usize,
        first_line: usize,
    },
    #[error("unknown shape `{name}` at {line}:{column}")]
    UnknownShape {
        name: String,
        line: usize,
        column: usize,
    },
    #[error(
        "arity mismatch at {line}:{column}: `{shape}` takes {expected} argument(s), found {found}"
    )]
    ArityMismatch {
        shape: String,
        expected: usize,
        found: usize,
        line: usize,
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Slash,
    LParen,
    RParen,
    Comma,
    Equals,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Equals => "`=`".into(),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of one line with their 1-based columns.
fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '/' | '(' | ')' | ',' | '=' => {
                let tok = match c {
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Equals,
                };
                tokens.push((tok, column));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((Tok::Ident(chars[start..i].iter().collect()), column));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits
                    .parse()
                    .map_err(|_| syntax(line, column, format!("number `{digits}` is too large")))?;
                tokens.push((Tok::Nat(value), column));
            }
            other => {
                return Err(syntax(
                    line,
                    column,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(tokens)
}

struct Cursor<'a> {
    tokens: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self, expected: &str) -> Result<(Tok, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some(tok) => {
                self.pos += 1;
                Ok(tok.clone())
            }
            None => Err(syntax(
                self.line,
                self.end_column,
                format!("expected {expected}, found end of line"),
            )),
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, usize), ParseError> {
        match self.next(expected)? {
            (Tok::Ident(name), column) => Ok((name, column)),
            (other, column) => Err(syntax(
                self.line,
                column,
                format!("expected {expected}, found {}", other.describe()),
            )),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let desc = want.describe();
        match self.next(&desc)? {
            (tok, _) if tok == want => Ok(()),
            (other, column) => Err(syntax(
                self.line,
                column,
                format!("expected {desc}, found {}", other.describe()),
            )),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some((tok, column)) => Err(syntax(
                self.line,
                *column,
                format!("unexpected {} after declaration", tok.describe()),
            )),
        }
    }
}

struct RawTerm {
    shape: String,
    vars: Vec<String>,
    line: usize,
    column: usize,
}

fn parse_term(cursor: &mut Cursor<'_>) -> Result<RawTerm, ParseError> {
    let (shape, column) = cursor.ident("a shape name")?;
    let mut vars = Vec::new();
    if cursor.peek() == Some(&Tok::LParen) {
        cursor.pos += 1;
        loop {
            vars.push(cursor.ident("a variable")?.0);
            match cursor.next("`,` or `)`")? {
                (Tok::Comma, _) => continue,
                (Tok::RParen, _) => break,
                (other, col) => {
                    return Err(syntax(
                        cursor.line,
                        col,
                        format!("expected `,` or `)`, found {}", other.describe()),
                    ))
                }
            }
        }
    }
    Ok(RawTerm {
        shape,
        vars,
        line: cursor.line,
        column,
    })
}

/// Parses and validates a presentation. A file without a `functor` header
/// gets the name `unnamed`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut name: Option<String> = None;
    let mut seen_decl = false;
    let mut shapes: Vec<(Shape, usize)> = Vec::new();
    let mut raw_equations: Vec<(RawTerm, RawTerm)> = Vec::new();

    for (index, text_line) in text.lines().enumerate() {
        let line = index + 1;
        let tokens = tokenize(text_line, line)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cursor = Cursor {
            tokens: &tokens,
            pos: 0,
            line,
            end_column: text_line.chars().count() + 1,
        };
        let (keyword, column) = cursor.ident("`functor`, `shape` or `eq`")?;
        match keyword.as_str() {
            "functor" => {
                if name.is_some() {
                    return Err(syntax(line, column, "duplicate `functor` header"));
                }
                if seen_decl {
                    return Err(syntax(
                        line,
                        column,
                        "`functor` header must precede declarations",
                    ));
                }
                name = Some(cursor.ident("a functor name")?.0);
            }
            "shape" => {
                seen_decl = true;
                let (shape_name, _) = cursor.ident("a shape name")?;
                cursor.expect(Tok::Slash)?;
                let arity = match cursor.next("an arity")? {
                    (Tok::Nat(n), _) => n,
                    (other, col) => {
                        return Err(syntax(
                            line,
                            col,
                            format!("expected an arity, found {}", other.describe()),
                        ))
                    }
                };
                if let Some((_, first_line)) = shapes.iter().find(|(s, _)| s.name == shape_name) {
                    return Err(ParseError::DuplicateShape {
                        name: shape_name,
                        line,
                        first_line: *first_line,
                    });
                }
                shapes.push((
                    Shape {
                        name: shape_name,
                        arity,
                    },
                    line,
                ));
            }
            "eq" => {
                seen_decl = true;
                let lhs = parse_term(&mut cursor)?;
                cursor.expect(Tok::Equals)?;
                let rhs = parse_term(&mut cursor)?;
                raw_equations.push((lhs, rhs));
            }
            other => {
                return Err(syntax(
                    line,
                    column,
                    format!("expected `functor`, `shape` or `eq`, found `{other}`"),
                ))
            }
        }
        cursor.finish()?;
    }

    let shapes: Vec<Shape> = shapes.into_iter().map(|(s, _)| s).collect();
    let resolve = |term: RawTerm| -> Result<FlatTerm, ParseError> {
        let index = shapes
            .iter()
            .position(|s| s.name == term.shape)
            .ok_or_else(|| ParseError::UnknownShape {
                name: term.shape.clone(),
                line: term.line,
                column: term.column,
            })?;
        let expected = shapes[index].arity;
        if term.vars.len() != expected {
            return Err(ParseError::ArityMismatch {
                shape: term.shape,
                expected,
                found: term.vars.len(),
                line: term.line,
                column: term.column,
            });
        }
        Ok(FlatTerm {
            shape: index,
            vars: term.vars,
        })
    };
    let equations = raw_equations
        .into_iter()
        .map(|(lhs, rhs)| {
            Ok(Equation {
                lhs: resolve(lhs)?,
                rhs: resolve(rhs)?,
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;

    Ok(Presentation {
        name: name.unwrap_or_else(|| "unnamed".into()),
        shapes,
        equations,
    })
}
