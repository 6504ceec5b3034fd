use std::fmt;

use super::{Dart, Embedding, EmbeddingError};

/// Identity of an embedding up to sphere homeomorphism, reflections
/// included.
///
/// The bytes are a planar-code record: the vertex count, then for each
/// vertex (numbered 1.. in breadth-first discovery order) its neighbors in
/// rotation order followed by a 0. Codes compare lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Box<[u8]>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("code is empty")]
    Empty,
    #[error("code ends before all {0} vertex lists are terminated")]
    Truncated(usize),
    #[error("code has {0} trailing bytes")]
    TrailingBytes(usize),
    #[error("neighbor {neighbor} out of range for {vertices} vertices")]
    NeighborOutOfRange { neighbor: u8, vertices: usize },
    #[error("invalid hex: {0}")]
    Hex(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl CanonicalCode {
    /// Wraps raw bytes after checking that they parse as a single
    /// planar-code record.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodeError> {
        parse_lists(bytes)?;
        Ok(Self(bytes.into()))
    }

    pub fn from_hex(text: &str) -> Result<Self, CodeError> {
        let bytes = hex::decode(text.trim()).map_err(|e| CodeError::Hex(e.to_string()))?;
        Self::from_bytes(&bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    /// Rebuilds the embedding this code serializes. Vertex `i` of the result
    /// is the vertex numbered `i + 1` in the code.
    pub fn decode(&self) -> Result<Embedding, CodeError> {
        let lists = parse_lists(&self.0)?;
        Ok(Embedding::from_neighbor_lists(&lists)?)
    }

    pub(crate) fn from_raw(bytes: Vec<u8>) -> Self {
        Self(bytes.into_boxed_slice())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl serde::Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

/// Parses one planar-code record (without header) into 0-based neighbor
/// lists, requiring the record to span `bytes` exactly.
pub(crate) fn parse_lists(bytes: &[u8]) -> Result<Vec<Vec<usize>>, CodeError> {
    let (lists, used) = parse_record(bytes)?;
    if used != bytes.len() {
        return Err(CodeError::TrailingBytes(bytes.len() - used));
    }
    Ok(lists)
}

/// Parses one record from the front of `bytes`, returning the lists and the
/// number of bytes consumed.
pub(crate) fn parse_record(bytes: &[u8]) -> Result<(Vec<Vec<usize>>, usize), CodeError> {
    let (&n, rest) = bytes.split_first().ok_or(CodeError::Empty)?;
    let n = n as usize;
    let mut lists = Vec::with_capacity(n);
    let mut current = Vec::new();
    let mut pos = 0;
    while lists.len() < n {
        let &b = rest.get(pos).ok_or(CodeError::Truncated(n))?;
        pos += 1;
        if b == 0 {
            lists.push(std::mem::take(&mut current));
        } else if b as usize > n {
            return Err(CodeError::NeighborOutOfRange {
                neighbor: b,
                vertices: n,
            });
        } else {
            current.push(b as usize - 1);
        }
    }
    Ok((lists, pos + 1))
}

/// Canonical code of `e`: the lexicographically smallest breadth-first
/// serialization over every starting dart and both orientations.
///
/// For simple graphs every serialization rooted at a vertex of degree `d`
/// begins `n, 2, 3, .., d + 1, 0`, so only roots of minimum degree can win
/// and the others are skipped.
///
/// # Panics
///
/// If `e` has more than 255 vertices or any isolated vertex.
pub fn canonical_code(e: &Embedding) -> CanonicalCode {
    let n = e.vertex_count();
    assert!(n <= 255, "canonical codes hold at most 255 vertices");
    let mut coder = Coder::new(e);
    let min_degree = e.degrees().iter().copied().min().unwrap_or(0);
    let restrict = e.is_simple();
    for start in 0..e.dart_count() {
        if restrict && e.degree(e.tail(start)) != min_degree {
            continue;
        }
        coder.try_start(e, start, true);
        coder.try_start(e, start, false);
    }
    if e.dart_count() == 0 {
        // a lone vertex
        assert_eq!(n, 1, "isolated vertices have no canonical code");
        return CanonicalCode::from_raw(vec![1, 0]);
    }
    CanonicalCode::from_raw(coder.best)
}

struct Coder {
    number: Vec<u8>,
    entry: Vec<Dart>,
    order: Vec<usize>,
    best: Vec<u8>,
    current: Vec<u8>,
}

impl Coder {
    fn new(e: &Embedding) -> Self {
        let n = e.vertex_count();
        Self {
            number: vec![0; n],
            entry: vec![0; n],
            order: Vec::with_capacity(n),
            best: Vec::new(),
            current: Vec::with_capacity(1 + n + e.dart_count()),
        }
    }

    /// Serializes from `start`; keeps the result if it beats the best so far.
    fn try_start(&mut self, e: &Embedding, start: Dart, forward: bool) {
        let n = e.vertex_count();
        self.number.iter_mut().for_each(|x| *x = 0);
        self.order.clear();
        self.current.clear();
        self.current.push(n as u8);

        let root = e.tail(start);
        self.number[root] = 1;
        self.entry[root] = start;
        self.order.push(root);
        let mut assigned: u8 = 1;

        // once below `best`, the remaining bytes need no comparison
        let mut smaller = self.best.is_empty();
        let mut k = 0;
        while k < self.order.len() {
            let v = self.order[k];
            k += 1;
            let first = self.entry[v];
            let mut d = first;
            loop {
                let w = e.head(d);
                if self.number[w] == 0 {
                    assigned += 1;
                    self.number[w] = assigned;
                    self.entry[w] = d ^ 1;
                    self.order.push(w);
                }
                if !self.emit(self.number[w], &mut smaller) {
                    return;
                }
                d = if forward {
                    e.next_around(d)
                } else {
                    e.prev_around(d)
                };
                if d == first {
                    break;
                }
            }
            if !self.emit(0, &mut smaller) {
                return;
            }
        }
        if smaller {
            std::mem::swap(&mut self.best, &mut self.current);
        }
    }

    #[inline]
    fn emit(&mut self, byte: u8, smaller: &mut bool) -> bool {
        let pos = self.current.len();
        self.current.push(byte);
        if !*smaller {
            let b = self.best[pos];
            if byte > b {
                return false;
            }
            if byte < b {
                *smaller = true;
            }
        }
        true
    }
}
