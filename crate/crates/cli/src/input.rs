//! Reading tournaments from matrix text or `T<n>:<hex>` codes.

use std::fmt;

use tourneylab::{Error, Tournament, UpperTriangleCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Guess per input: lines starting with `T` are codes, anything else a matrix.
    Auto,
    Matrix,
    Code,
}

/// A parse failure with its position in the input (1-based).
#[derive(Debug)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: Option<usize>,
    pub error: Error,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "{}:{}:{}: {}", self.source, self.line, c, self.error),
            None => write!(f, "{}:{}: {}", self.source, self.line, self.error),
        }
    }
}

impl std::error::Error for ParseError {}

fn looks_like_code(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('T'))
}

/// Parses every tournament in `text`. Codes are one per line; matrices are
/// separated by blank lines.
pub fn parse_all(text: &str, format: Format, source: &str) -> Result<Vec<Tournament>, ParseError> {
    let format = match format {
        Format::Auto if looks_like_code(text) => Format::Code,
        Format::Auto => Format::Matrix,
        f => f,
    };
    match format {
        Format::Code => parse_codes(text, source),
        _ => parse_matrices(text, source),
    }
}

fn parse_codes(text: &str, source: &str) -> Result<Vec<Tournament>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let code: UpperTriangleCode = line.parse().map_err(|error| ParseError {
            source: source.to_string(),
            line: i + 1,
            column: None,
            error,
        })?;
        out.push(Tournament::decode(&code));
    }
    Ok(out)
}

fn parse_matrices(text: &str, source: &str) -> Result<Vec<Tournament>, ParseError> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut block_start = 0;
    let lines: Vec<&str> = text.lines().collect();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            if !block.is_empty() {
                out.push(parse_block(&block, block_start, source)?);
                block.clear();
            }
            continue;
        }
        if block.is_empty() {
            block_start = i;
        }
        block.push_str(line);
        block.push('\n');
    }
    if !block.is_empty() {
        out.push(parse_block(&block, block_start, source)?);
    }
    if out.is_empty() {
        return Err(ParseError {
            source: source.to_string(),
            line: 1,
            column: None,
            error: Error::OrderOutOfRange {
                n: 0,
                min: 1,
                max: tourneylab::MAX_ORDER,
            },
        });
    }
    Ok(out)
}

fn parse_block(block: &str, offset: usize, source: &str) -> Result<Tournament, ParseError> {
    Tournament::from_matrix_text(block).map_err(|error| {
        let (line, column) = match &error {
            Error::BadChar { line, column, .. } => (offset + line, Some(*column)),
            Error::NonSquare { row, .. } => (offset + row + 1, None),
            _ => (offset + 1, None),
        };
        ParseError {
            source: source.to_string(),
            line,
            column,
            error,
        }
    })
}
