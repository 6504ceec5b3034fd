//! Graph file formats.
//!
//! `planar_code` is binary: an optional 15-byte header `>>planar_code<<`,
//! then per graph one byte holding the vertex count followed by, for every
//! vertex, its neighbors in rotation order as 1-based bytes and a 0
//! terminator.
//!
//! The ASCII format holds one graph per line: `n; 0: a b c; 1: ...`, with
//! 0-based vertex labels and neighbors in rotation order. Blank lines and
//! lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::io::{self, Write};

use super::canonical::{parse_record, CodeError};
use super::{Embedding, EmbeddingError};

pub const PLANAR_CODE_HEADER: &[u8; 15] = b">>planar_code<<";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("graph {index}: {source}")]
    Record { index: usize, source: CodeError },
    #[error("line {line}: {message}")]
    Ascii { line: usize, message: String },
    #[error("line {line}: {source}")]
    AsciiEmbedding { line: usize, source: EmbeddingError },
    #[error("graph with {0} vertices does not fit planar_code (max 255)")]
    TooLarge(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Supported on-disk graph encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    PlanarCode,
    Ascii,
}

/// One planar_code record using the embedding's own vertex numbering.
pub fn encode_planar_code(e: &Embedding) -> Result<Vec<u8>, FormatError> {
    let n = e.vertex_count();
    if n > 255 {
        return Err(FormatError::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + n + e.dart_count());
    out.push(n as u8);
    for v in 0..n {
        out.extend(e.neighbors(v).into_iter().map(|w| (w + 1) as u8));
        out.push(0);
    }
    Ok(out)
}

pub fn write_planar_code<'a, W: Write>(
    mut out: W,
    graphs: impl IntoIterator<Item = &'a Embedding>,
    header: bool,
) -> Result<(), FormatError> {
    if header {
        out.write_all(PLANAR_CODE_HEADER)?;
    }
    for e in graphs {
        out.write_all(&encode_planar_code(e)?)?;
    }
    Ok(())
}

/// Parses a planar_code stream, with or without header.
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<Embedding>, FormatError> {
    let mut rest = bytes
        .strip_prefix(PLANAR_CODE_HEADER.as_slice())
        .unwrap_or(bytes);
    let mut graphs = Vec::new();
    while !rest.is_empty() {
        let index = graphs.len();
        let (lists, used) =
            parse_record(rest).map_err(|source| FormatError::Record { index, source })?;
        let e = Embedding::from_neighbor_lists(&lists).map_err(|e| FormatError::Record {
            index,
            source: e.into(),
        })?;
        graphs.push(e);
        rest = &rest[used..];
    }
    Ok(graphs)
}

pub fn format_ascii(e: &Embedding) -> String {
    let mut s = e.vertex_count().to_string();
    for v in 0..e.vertex_count() {
        let _ = write!(s, "; {v}:");
        for w in e.neighbors(v) {
            let _ = write!(s, " {w}");
        }
    }
    s
}

pub fn parse_ascii_line(text: &str, line: usize) -> Result<Embedding, FormatError> {
    let err = |message: String| FormatError::Ascii { line, message };
    let mut parts = text.split(';');
    let n: usize = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| err("expected vertex count before the first ';'".into()))?;
    let mut lists: Vec<Option<Vec<usize>>> = vec![None; n];
    for part in parts {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (label, rest) = part
            .split_once(':')
            .ok_or_else(|| err(format!("missing ':' in '{part}'")))?;
        let v: usize = label
            .trim()
            .parse()
            .map_err(|_| err(format!("bad vertex label '{}'", label.trim())))?;
        if v >= n {
            return Err(err(format!("vertex {v} out of range for {n} vertices")));
        }
        if lists[v].is_some() {
            return Err(err(format!("vertex {v} listed twice")));
        }
        let neighbors = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(format!("bad neighbor '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        lists[v] = Some(neighbors);
    }
    let lists: Vec<Vec<usize>> = lists.into_iter().map(Option::unwrap_or_default).collect();
    Embedding::from_neighbor_lists(&lists)
        .map_err(|source| FormatError::AsciiEmbedding { line, source })
}

pub fn read_ascii(text: &str) -> Result<Vec<Embedding>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| parse_ascii_line(l, i + 1))
        .collect()
}

/// Guesses the encoding of `bytes`: the planar_code header, or text that
/// starts like an ASCII graph line, decide; anything else is treated as
/// headerless planar_code.
pub fn detect_format(bytes: &[u8]) -> GraphFormat {
    if bytes.starts_with(PLANAR_CODE_HEADER) {
        return GraphFormat::PlanarCode;
    }
    match std::str::from_utf8(bytes) {
        Ok(text) => {
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'));
            match first {
                Some(l) if l.contains(';') || l.chars().all(|c| c.is_ascii_digit()) => {
                    GraphFormat::Ascii
                }
                None => GraphFormat::Ascii,
                _ => GraphFormat::PlanarCode,
            }
        }
        Err(_) => GraphFormat::PlanarCode,
    }
}

pub fn read_graphs(
    bytes: &[u8],
    format: Option<GraphFormat>,
) -> Result<Vec<Embedding>, FormatError> {
    match format.unwrap_or_else(|| detect_format(bytes)) {
        GraphFormat::PlanarCode => read_planar_code(bytes),
        GraphFormat::Ascii => {
            let text = std::str::from_utf8(bytes).map_err(|e| FormatError::Ascii {
                line: 0,
                message: e.to_string(),
            })?;
            read_ascii(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> Embedding {
        Embedding::from_neighbor_lists(&[
            vec![1, 2, 3],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
        .unwrap()
    }

    #[test]
    fn planar_code_bytes_are_exact() {
        let mut buf = Vec::new();
        write_planar_code(&mut buf, [&tetrahedron()], true).unwrap();
        let mut expected = b">>planar_code<<".to_vec();
        expected.extend([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0]);
        assert_eq!(buf, expected);
        let back = read_planar_code(&buf).unwrap();
        assert_eq!(back, vec![tetrahedron()]);
        // headerless, two graphs back to back
        let two = [&expected[15..], &expected[15..]].concat();
        assert_eq!(read_planar_code(&two).unwrap().len(), 2);
    }

    #[test]
    fn ascii_round_trip() {
        let line = format_ascii(&tetrahedron());
        assert_eq!(line, "4; 0: 1 2 3; 1: 0 3 2; 2: 0 1 3; 3: 0 2 1");
        let text = format!("# comment\n\n{line}\n{line}\n");
        let graphs = read_ascii(&text).unwrap();
        assert_eq!(graphs, vec![tetrahedron(), tetrahedron()]);
        assert_eq!(detect_format(text.as_bytes()), GraphFormat::Ascii);
    }

    #[test]
    fn ascii_errors_carry_line_numbers() {
        assert!(matches!(
            read_ascii("4; 0: 1 2 3\nx; 0: 1"),
            Err(FormatError::Ascii { line: 1, .. })
                | Err(FormatError::AsciiEmbedding { line: 1, .. })
        ));
        assert!(matches!(
            read_ascii("2; 0: 1; 0: 1"),
            Err(FormatError::Ascii { line: 1, .. })
        ));
        assert!(matches!(
            read_ascii("2; 0: 7; 1: 0"),
            Err(FormatError::AsciiEmbedding { line: 1, .. })
        ));
    }

    #[test]
    fn truncated_planar_code_is_an_error() {
        let bytes = [b">>planar_code<<".as_slice(), &[4, 2, 3]].concat();
        assert!(matches!(
            read_planar_code(&bytes),
            Err(FormatError::Record { index: 0, .. })
        ));
        assert_eq!(detect_format(&bytes), GraphFormat::PlanarCode);
    }
}
