//! Tokenizer for the shared expression grammar.
//!
//! Scalars use `+ - * / ^ ( )` over integer literals and coordinate names;
//! `d <coord>` names a basis 1-form and `@<coord>` a basis vector field in the
//! graded grammar built on top of these tokens. Juxtaposition is not a product.

use crate::{BigInt, Error};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
pub struct SpannedToken {
    pub token: Token,
    pub position: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<SpannedToken>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let position = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Token::Plus, position)),
            b'-' => out.push((Token::Minus, position)),
            b'*' => out.push((Token::Star, position)),
            b'/' => out.push((Token::Slash, position)),
            b'^' => out.push((Token::Caret, position)),
            b'@' => out.push((Token::At, position)),
            b'(' => out.push((Token::LParen, position)),
            b')' => out.push((Token::RParen, position)),
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value = digits.parse::<BigInt>().map_err(|_| Error::Syntax {
                    position: start,
                    message: "invalid integer literal".into(),
                })?;
                out.push((Token::Int(value), start));
                continue;
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position,
                    message: format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out
        .into_iter()
        .map(|(token, position)| SpannedToken { token, position })
        .collect())
}
