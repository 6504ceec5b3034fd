//! Combinatorial embeddings on the sphere.
//!
//! An [`Embedding`] is a rotation system: every vertex carries a cyclic
//! order of its outgoing darts. Edge `i` owns the dart pair `(2i, 2i + 1)`,
//! so the opposite of dart `d` is always `d ^ 1`.
//!
//! Faces are orbits of the successor `d -> next(opposite(d))`: arrive at a
//! vertex along `d`, then leave along the dart that follows the reversed
//! dart in the rotation at that vertex. Every routine in this crate uses
//! that single chirality.

mod canonical;
pub mod format;

pub use canonical::{canonical_code, CanonicalCode, CodeError};

use std::collections::VecDeque;

use thiserror::Error;

/// Index of a vertex in an [`Embedding`].
pub type Vertex = usize;
/// Index of a dart (half-edge) in an [`Embedding`].
pub type Dart = usize;

const NO_DART: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("embedding needs at least one vertex")]
    Empty,
    #[error("neighbor list of vertex {vertex} references vertex {neighbor}, but there are only {vertex_count} vertices")]
    InvalidVertex {
        vertex: Vertex,
        neighbor: Vertex,
        vertex_count: usize,
    },
    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(Vertex),
    #[error("{u} lists {v} {forward} times but {v} lists {u} {backward} times")]
    MismatchedAdjacency {
        u: Vertex,
        v: Vertex,
        forward: usize,
        backward: usize,
    },
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("embedding is not spherical: V - E + F = {0}")]
    NotSpherical(i64),
}

/// A rotation system describing a graph embedded on an orientable surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    tail: Vec<Vertex>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    first: Vec<Dart>,
    degree: Vec<usize>,
}

/// One face boundary, as the cyclic list of darts traversed by the face
/// successor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    darts: Vec<Dart>,
}

impl Face {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Number of edges on the boundary, equal to the number of corners.
    pub fn size(&self) -> usize {
        self.darts.len()
    }

    /// Corner vertices in traversal order (the tail of each boundary dart).
    pub fn vertices(&self, embedding: &Embedding) -> Vec<Vertex> {
        self.darts.iter().map(|&d| embedding.tail(d)).collect()
    }
}

impl Embedding {
    /// Builds an embedding from per-vertex neighbor sequences in rotation
    /// order. The `k`-th occurrence of `v` in the list of `u` is paired with
    /// the `k`-th occurrence of `u` in the list of `v`.
    pub fn from_neighbor_lists(lists: &[Vec<Vertex>]) -> Result<Self, EmbeddingError> {
        let n = lists.len();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        let mut slot_count = 0usize;
        for (u, list) in lists.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(EmbeddingError::InvalidVertex {
                        vertex: u,
                        neighbor: v,
                        vertex_count: n,
                    });
                }
                if v == u {
                    return Err(EmbeddingError::SelfLoop(u));
                }
            }
            slot_count += list.len();
        }

        let count = |list: &[Vertex], v: Vertex| list.iter().filter(|&&x| x == v).count();
        let mut dart_of_slot: Vec<Vec<Dart>> =
            lists.iter().map(|l| vec![NO_DART; l.len()]).collect();
        let mut edges = 0usize;
        for (u, list) in lists.iter().enumerate() {
            for (pos, &v) in list.iter().enumerate() {
                if u > v {
                    continue;
                }
                // the k-th occurrence of v here pairs with the k-th of u there
                let k = count(&list[..pos], v);
                if k == 0 {
                    let (forward, backward) = (count(list, v), count(&lists[v], u));
                    if forward != backward {
                        return Err(EmbeddingError::MismatchedAdjacency {
                            u,
                            v,
                            forward,
                            backward,
                        });
                    }
                }
                let wpos = lists[v]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == u)
                    .nth(k)
                    .map(|(p, _)| p)
                    .expect("occurrence counts match");
                dart_of_slot[u][pos] = 2 * edges;
                dart_of_slot[v][wpos] = 2 * edges + 1;
                edges += 1;
            }
        }
        // pairs listed only from the larger endpoint
        for (u, list) in lists.iter().enumerate() {
            for &v in list.iter().filter(|&&v| v < u) {
                if !lists[v].contains(&u) {
                    return Err(EmbeddingError::MismatchedAdjacency {
                        u: v,
                        v: u,
                        forward: 0,
                        backward: count(list, v),
                    });
                }
            }
        }
        debug_assert_eq!(2 * edges, slot_count);

        let mut tail = vec![0; slot_count];
        let mut next = vec![0; slot_count];
        let mut prev = vec![0; slot_count];
        let mut first = vec![NO_DART; n];
        let mut degree = vec![0; n];
        for (u, darts) in dart_of_slot.iter().enumerate() {
            let k = darts.len();
            degree[u] = k;
            if k > 0 {
                first[u] = darts[0];
            }
            for i in 0..k {
                let d = darts[i];
                tail[d] = u;
                next[d] = darts[(i + 1) % k];
                prev[d] = darts[(i + k - 1) % k];
            }
        }
        Ok(Self {
            tail,
            next,
            prev,
            first,
            degree,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.first.len()
    }

    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tail.len() / 2
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> Vertex {
        self.tail[d]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> Vertex {
        self.tail[d ^ 1]
    }

    #[inline]
    pub fn opposite(d: Dart) -> Dart {
        d ^ 1
    }

    /// Next dart counterclockwise around the tail of `d`.
    #[inline]
    pub fn next_around(&self, d: Dart) -> Dart {
        self.next[d]
    }

    #[inline]
    pub fn prev_around(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Face successor: `next_around(opposite(d))`.
    #[inline]
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next[d ^ 1]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// First dart of the rotation at `v`, if `v` has any.
    pub fn first_dart(&self, v: Vertex) -> Option<Dart> {
        (self.first[v] != NO_DART).then_some(self.first[v])
    }

    /// Outgoing darts of `v` in rotation order.
    pub fn darts_at(&self, v: Vertex) -> impl Iterator<Item = Dart> + '_ {
        let start = self.first[v];
        let deg = self.degree[v];
        let mut d = start;
        (0..deg).map(move |_| {
            let out = d;
            d = self.next[d];
            out
        })
    }

    /// Neighbors of `v` in rotation order, with multiplicity.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.darts_at(v).map(|d| self.head(d)).collect()
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<Vertex>> {
        (0..self.vertex_count())
            .map(|v| self.neighbors(v))
            .collect()
    }

    /// The dart from `u` to `v`, if the two are adjacent (the first one in
    /// rotation order when there are parallel edges).
    pub fn dart_between(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        self.darts_at(u).find(|&d| self.head(d) == v)
    }

    /// The same graph with every rotation reversed (orientation flip).
    pub fn mirror(&self) -> Self {
        Self {
            tail: self.tail.clone(),
            next: self.prev.clone(),
            prev: self.next.clone(),
            first: self.first.clone(),
            degree: self.degree.clone(),
        }
    }

    /// Face boundaries, each listed from its smallest dart, ordered by that
    /// dart.
    pub fn faces(&self) -> Vec<Face> {
        let nd = self.dart_count();
        let mut seen = vec![false; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                darts.push(d);
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face { darts });
        }
        faces
    }

    /// For every dart, the index (into [`Embedding::faces`]) of the face it
    /// bounds, plus the number of faces.
    pub fn face_index(&self) -> (Vec<usize>, usize) {
        let nd = self.dart_count();
        let mut index = vec![usize::MAX; nd];
        let mut count = 0;
        for start in 0..nd {
            if index[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                index[d] = count;
                d = self.face_successor(d);
                if d == start {
                    break;
                }
            }
            count += 1;
        }
        (index, count)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for d in self.darts_at(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// Euler characteristic `V - E + F` of the traced surface.
    pub fn euler_characteristic(&self) -> i64 {
        let (_, f) = self.face_index();
        self.vertex_count() as i64 - self.edge_count() as i64 + f as i64
    }

    /// True iff the embedding is on the sphere (`V - E + F = 2`).
    pub fn genus_check(&self) -> Result<bool, EmbeddingError> {
        if !self.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        Ok(self.euler_characteristic() == 2)
    }

    /// The dual embedding: one vertex per face (numbered as in
    /// [`Embedding::faces`]), with edge `i` of the dual crossing edge `i`.
    /// Dual dart `d` starts at the face bounded by primal dart `d`, and the
    /// rotation at a dual vertex follows its primal face boundary, so taking
    /// the dual twice returns the original rotation system.
    pub fn dual(&self) -> Result<Self, EmbeddingError> {
        if !self.genus_check()? {
            return Err(EmbeddingError::NotSpherical(self.euler_characteristic()));
        }
        let (face_of, f) = self.face_index();
        let nd = self.dart_count();
        let mut first = vec![NO_DART; f];
        let mut degree = vec![0; f];
        let mut next = vec![0; nd];
        let mut prev = vec![0; nd];
        for d in 0..nd {
            let face = face_of[d];
            degree[face] += 1;
            if first[face] == NO_DART {
                first[face] = d;
            }
            let s = self.face_successor(d);
            next[d] = s;
            prev[s] = d;
        }
        Ok(Self {
            tail: face_of,
            next,
            prev,
            first,
            degree,
        })
    }

    /// Inserts a new edge across a face, from the corner entered by dart
    /// `into_a` to the corner entered by dart `into_b` (both on the same face).
    pub(crate) fn with_diagonal(&self, into_a: Dart, into_b: Dart) -> Self {
        let mut out = self.clone();
        let d = out.tail.len();
        let a = self.head(into_a);
        let b = self.head(into_b);
        out.tail.extend([a, b]);
        out.next.extend([0, 0]);
        out.prev.extend([0, 0]);
        out.insert_after(d, into_a ^ 1);
        out.insert_after(d + 1, into_b ^ 1);
        out.degree[a] += 1;
        out.degree[b] += 1;
        out
    }

    /// Splits `v` into `v` and a new vertex joined by a new edge. The darts
    /// at positions `moved` of the rotation starting at `first_dart(v)` move
    /// to the new vertex; the rest stay.
    pub(crate) fn with_split(&self, v: Vertex, moved: std::ops::Range<usize>) -> Self {
        let rotation: Vec<Dart> = self.darts_at(v).collect();
        let deg = rotation.len();
        let mut out = self.clone();
        let w = out.first.len();
        let d = out.tail.len();
        let kept: Vec<Dart> = rotation[moved.end..]
            .iter()
            .chain(&rotation[..moved.start])
            .copied()
            .collect();
        let gone: Vec<Dart> = rotation[moved.clone()].to_vec();
        out.tail.extend([v, w]);
        out.next.extend([0, 0]);
        out.prev.extend([0, 0]);
        for &g in &gone {
            out.tail[g] = w;
        }
        // the new edge takes the place of the moved arc on both sides
        let mut ring_v = kept;
        ring_v.push(d);
        let mut ring_w = gone;
        ring_w.push(d + 1);
        out.set_ring(v, &ring_v);
        out.first.push(NO_DART);
        out.degree.push(0);
        out.set_ring(w, &ring_w);
        debug_assert_eq!(out.degree[v] + out.degree[w], deg + 2);
        out
    }

    fn insert_after(&mut self, new: Dart, anchor: Dart) {
        let after = self.next[anchor];
        self.next[anchor] = new;
        self.prev[new] = anchor;
        self.next[new] = after;
        self.prev[after] = new;
    }

    fn set_ring(&mut self, v: Vertex, ring: &[Dart]) {
        let k = ring.len();
        for i in 0..k {
            self.next[ring[i]] = ring[(i + 1) % k];
            self.prev[ring[i]] = ring[(i + k - 1) % k];
        }
        self.first[v] = ring[0];
        self.degree[v] = k;
    }

    /// True iff no two edges join the same unordered vertex pair.
    pub(crate) fn is_simple(&self) -> bool {
        let n = self.vertex_count();
        let mut mark = vec![usize::MAX; n];
        for v in 0..n {
            for d in self.darts_at(v) {
                let w = self.head(d);
                if mark[w] == v {
                    return false;
                }
                mark[w] = v;
            }
        }
        true
    }
}
