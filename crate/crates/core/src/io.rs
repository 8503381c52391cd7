//! File formats: PCM text for matrices, JSON for complexes and balanced codes.
//!
//! PCM text is a `rows cols` header followed by `rows` lines of exactly `cols`
//! characters from `{0,1}`. Lines starting with `#` are comments. The writer
//! always emits a trailing newline; the reader accepts either.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::balance::{BalancedCode, BlockLayout, Parent};
use crate::complex::{ChainComplex, ClassicalCode, ComplexError, CssCode};
use crate::gf2::BitMatrix;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("PCM line {line}: {msg}")]
    Pcm { line: usize, msg: String },
    #[error("JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn pcm_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Pcm {
        line,
        msg: msg.into(),
    }
}

pub fn write_pcm(m: &BitMatrix) -> String {
    let mut out = String::with_capacity(16 + m.rows() * (m.cols() + 1));
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(if m.get(r, c) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_pcm(text: &str) -> Result<BitMatrix, FormatError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| pcm_err(1, "missing header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims.as_slice() else {
        return Err(pcm_err(hline, "header must be `<rows> <cols>`"));
    };
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| pcm_err(hline, format!("bad dimension {s:?}")))
    };
    let (rows, cols) = (parse(rows)?, parse(cols)?);

    let mut m = BitMatrix::zeros(rows, cols);
    let mut seen = 0;
    for (line, l) in lines.by_ref() {
        if seen == rows {
            if l.trim().is_empty() {
                continue;
            }
            return Err(pcm_err(line, format!("more than {rows} rows")));
        }
        if l.chars().count() != cols {
            return Err(pcm_err(
                line,
                format!("expected {cols} characters, found {}", l.chars().count()),
            ));
        }
        for (c, ch) in l.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(seen, c, true),
                other => return Err(pcm_err(line, format!("unexpected character {other:?}"))),
            }
        }
        seen += 1;
    }
    // zero-width rows are empty lines, which a dropped trailing newline can swallow
    if seen < rows && cols != 0 {
        return Err(pcm_err(
            hline,
            format!("expected {rows} rows, found {seen}"),
        ));
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
struct ComplexWire {
    spaces: Vec<usize>,
    diffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl ComplexWire {
    fn from_complex(c: &ChainComplex) -> Self {
        ComplexWire {
            spaces: c.spaces().to_vec(),
            diffs: c.diffs().iter().map(write_pcm).collect(),
            labels: c.labels().map(<[String]>::to_vec),
        }
    }
}

#[derive(Serialize)]
struct BalancedWire<'a> {
    spaces: Vec<usize>,
    diffs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    block_layout: &'a BlockLayout,
    parent: &'a Parent,
    rounds: usize,
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    let mut s = serde_json::to_string(&ComplexWire::from_complex(c)).expect("serialisable");
    s.push('\n');
    s
}

/// Parses a complex, checking shapes but not the chain condition. Extra
/// fields (such as a balanced code's `block_layout`) are ignored.
pub fn parse_complex_json(text: &str) -> Result<ChainComplex, FormatError> {
    let wire: ComplexWire =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let diffs = wire
        .diffs
        .iter()
        .map(|d| parse_pcm(d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainComplex::new(wire.spaces, diffs, wire.labels)?)
}

pub fn balanced_to_json(b: &BalancedCode) -> String {
    let c = ComplexWire::from_complex(b.code.complex());
    let wire = BalancedWire {
        spaces: c.spaces,
        diffs: c.diffs,
        labels: c.labels,
        block_layout: &b.block_layout,
        parent: &b.parent,
        rounds: b.rounds,
    };
    let mut s = serde_json::to_string(&wire).expect("serialisable");
    s.push('\n');
    s
}

/// A code read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeFile {
    Classical(ClassicalCode),
    Quantum(CssCode),
}

impl CodeFile {
    pub fn kind(&self) -> &'static str {
        match self {
            CodeFile::Classical(_) => "classical",
            CodeFile::Quantum(_) => "quantum",
        }
    }
}

impl fmt::Display for CodeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFile::Classical(c) => write!(f, "classical code t={} s={}", c.t(), c.s()),
            CodeFile::Quantum(q) => {
                write!(f, "CSS code n={} nX={} nZ={}", q.n(), q.n_x(), q.n_z())
            }
        }
    }
}

/// JSON when the first non-blank character is `{`, PCM otherwise. A 2-term
/// complex is a classical code and a 3-term complex a CSS code.
pub fn parse_code(text: &str) -> Result<CodeFile, FormatError> {
    if text.trim_start().starts_with('{') {
        let complex = parse_complex_json(text)?;
        match complex.terms() {
            2 => Ok(CodeFile::Classical(ClassicalCode::from_complex(&complex)?)),
            3 => Ok(CodeFile::Quantum(CssCode::from_complex(complex)?)),
            found => Err(ComplexError::Arity { expected: 3, found }.into()),
        }
    } else {
        Ok(CodeFile::Classical(ClassicalCode::new(parse_pcm(text)?)))
    }
}

pub fn read_code(path: &Path) -> Result<CodeFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_code(&text)
}

/// PCM for classical codes, complex JSON for CSS codes.
pub fn write_code(code: &CodeFile) -> String {
    match code {
        CodeFile::Classical(c) => write_pcm(c.h()),
        CodeFile::Quantum(q) => complex_to_json(q.complex()),
    }
}
