//! Shared helpers for the line-oriented text formats.
//!
//! All formats are whitespace-tolerant and treat lines whose first
//! non-blank character is `#` as comments.

use std::fmt;
use std::str::FromStr;

/// Parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Token stream over non-comment lines, remembering line numbers.
pub(crate) struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    pub fn new(input: &'a str) -> Self {
        let mut items = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let trimmed = line.trim_start();
            if trimmed.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                items.push((idx + 1, tok));
            }
        }
        Tokens { items, pos: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.pos >= self.items.len()
    }

    /// Line number of the most recently consumed token (or 1).
    pub fn current_line(&self) -> usize {
        if self.pos == 0 {
            self.items.first().map_or(1, |t| t.0)
        } else {
            self.items[self.pos - 1].0
        }
    }

    pub fn peek(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|t| t.1)
    }

    pub fn next_token(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.items.get(self.pos) {
            Some(&(_, tok)) => {
                self.pos += 1;
                Ok(tok)
            }
            None => Err(ParseError::new(
                self.current_line(),
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    pub fn next_parsed<T: FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let tok = self.next_token(what)?;
        tok.parse::<T>().map_err(|_| {
            ParseError::new(
                self.current_line(),
                format!("expected {what}, found {tok:?}"),
            )
        })
    }

    /// Consume a fixed keyword token.
    pub fn expect(&mut self, keyword: &str) -> Result<(), ParseError> {
        let tok = self.next_token(&format!("keyword {keyword:?}"))?;
        if tok == keyword {
            Ok(())
        } else {
            Err(ParseError::new(
                self.current_line(),
                format!("expected {keyword:?}, found {tok:?}"),
            ))
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if let Some(&(line, tok)) = self.items.get(self.pos) {
            Err(ParseError::new(line, format!("trailing input {tok:?}")))
        } else {
            Ok(())
        }
    }
}
