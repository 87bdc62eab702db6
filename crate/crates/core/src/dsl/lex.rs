//! Tokenizer for model and scenario files.
//!
//! `#` starts a comment running to end of line. The word operators `not`,
//! `and`, `or` and the symbols `¬`, `∧`, `∨` normalize to the same tokens as
//! `!`, `&`, `|`.

use super::{diag, SourceDiagnostic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum TokKind {
    /// Identifier or structural keyword.
    Word(String),
    /// Digits with an optional fractional part, e.g. `1`, `0`, `0.6`.
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    /// `:=`
    Define,
    /// `=`
    Equals,
    /// `==`
    EqEq,
    /// `!=`
    NotEq,
    /// `->`
    Arrow,
    Comma,
    Slash,
    /// `!`, `¬`, or the word `not`
    Bang,
    /// `&`, `∧`, or the word `and`
    Amp,
    /// `|`, `∨`, or the word `or`
    Pipe,
}

impl TokKind {
    pub(super) fn describe(&self) -> String {
        match self {
            TokKind::Word(w) => format!("`{w}`"),
            TokKind::Number(n) => format!("`{n}`"),
            TokKind::LBrace => "`{`".into(),
            TokKind::RBrace => "`}`".into(),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
            TokKind::Define => "`:=`".into(),
            TokKind::Equals => "`=`".into(),
            TokKind::EqEq => "`==`".into(),
            TokKind::NotEq => "`!=`".into(),
            TokKind::Arrow => "`->`".into(),
            TokKind::Comma => "`,`".into(),
            TokKind::Slash => "`/`".into(),
            TokKind::Bang => "`!`".into(),
            TokKind::Amp => "`&`".into(),
            TokKind::Pipe => "`|`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub kind: TokKind,
    pub line: usize,
    pub column: usize,
}

pub(super) fn lex(src: &str, diagnostics: &mut Vec<SourceDiagnostic>) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;
    let bump = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, column);
        let mut push = |kind: TokKind| {
            tokens.push(Token {
                kind,
                line: tok_line,
                column: tok_col,
            })
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(c, &mut line, &mut column);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    bump(c, &mut line, &mut column);
                }
            }
            '{' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::LBrace);
            }
            '}' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::RBrace);
            }
            '(' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::LParen);
            }
            ')' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::RParen);
            }
            ',' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::Comma);
            }
            '/' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::Slash);
            }
            '&' | '\u{2227}' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::Amp);
            }
            '|' | '\u{2228}' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::Pipe);
            }
            '\u{ac}' => {
                chars.next();
                bump(c, &mut line, &mut column);
                push(TokKind::Bang);
            }
            ':' => {
                chars.next();
                bump(c, &mut line, &mut column);
                if chars.peek() == Some(&'=') {
                    chars.next();
                    bump('=', &mut line, &mut column);
                    push(TokKind::Define);
                } else {
                    diagnostics.push(diag(src, tok_line, tok_col, "expected `=` after `:`"));
                }
            }
            '=' => {
                chars.next();
                bump(c, &mut line, &mut column);
                if chars.peek() == Some(&'=') {
                    chars.next();
                    bump('=', &mut line, &mut column);
                    push(TokKind::EqEq);
                } else {
                    push(TokKind::Equals);
                }
            }
            '!' => {
                chars.next();
                bump(c, &mut line, &mut column);
                if chars.peek() == Some(&'=') {
                    chars.next();
                    bump('=', &mut line, &mut column);
                    push(TokKind::NotEq);
                } else {
                    push(TokKind::Bang);
                }
            }
            '-' => {
                chars.next();
                bump(c, &mut line, &mut column);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut column);
                    push(TokKind::Arrow);
                } else {
                    diagnostics.push(diag(src, tok_line, tok_col, "expected `>` after `-`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        text.push(d);
                        chars.next();
                        bump(d, &mut line, &mut column);
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'.') {
                    text.push('.');
                    chars.next();
                    bump('.', &mut line, &mut column);
                    let mut any = false;
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            any = true;
                            text.push(d);
                            chars.next();
                            bump(d, &mut line, &mut column);
                        } else {
                            break;
                        }
                    }
                    if !any {
                        diagnostics.push(diag(
                            src,
                            tok_line,
                            tok_col,
                            "expected digits after the decimal point",
                        ));
                        continue;
                    }
                }
                push(TokKind::Number(text));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        chars.next();
                        bump(d, &mut line, &mut column);
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "not" => push(TokKind::Bang),
                    "and" => push(TokKind::Amp),
                    "or" => push(TokKind::Pipe),
                    _ => push(TokKind::Word(word)),
                }
            }
            other => {
                chars.next();
                bump(other, &mut line, &mut column);
                diagnostics.push(diag(
                    src,
                    tok_line,
                    tok_col,
                    &format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    tokens
}
