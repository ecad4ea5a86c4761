//! On-disk document grammars and report rendering.
//!
//! Two document kinds are parsed from untrusted input: system spec files and
//! bootstrap certificates. Both are line-oriented `key: value` text with `#`
//! comments, every rational serialized as `num/den`, and hard size caps so
//! that hostile input fails fast instead of allocating. Reports are rendered
//! with a fixed key order so byte-identical inputs give byte-identical
//! output.

pub mod certificate_document;
pub mod report;
pub mod spec_document;

use std::fmt;

/// Parse failure with a 1-based line number; line 0 refers to the document
/// as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub message: String,
}

impl DocError {
    pub fn whole(message: impl Into<String>) -> Self {
        DocError {
            line: 0,
            message: message.into(),
        }
    }

    pub fn at(line: usize, message: impl Into<String>) -> Self {
        DocError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for DocError {}

/// Largest accepted document, in bytes.
pub const MAX_DOCUMENT_BYTES: usize = 8 * 1024 * 1024;

pub(crate) fn check_size(text: &str) -> Result<(), DocError> {
    if text.len() > MAX_DOCUMENT_BYTES {
        return Err(DocError::whole(format!(
            "document exceeds {MAX_DOCUMENT_BYTES} bytes"
        )));
    }
    Ok(())
}

/// Iterate meaningful lines: trimmed, comments and blanks skipped, split at
/// the first `:` into `(line_no, key, value)`.
pub(crate) fn keyed_lines(
    text: &str,
) -> impl Iterator<Item = Result<(usize, &str, &str), DocError>> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        Some(match trimmed.split_once(':') {
            Some((k, v)) => Ok((line_no, k.trim(), v.trim())),
            None => Err(DocError::at(line_no, "expected `key: value`")),
        })
    })
}
