//! Reducibility: separating cycles, splitting along them, gluing along
//! faces, and full factorization into irreducible pieces.
//!
//! A cycle separates when every vertex on it has an edge strictly inside
//! each of the two regions it bounds, and both regions, capped by a new face
//! along the cycle, are polyhedral again.

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{CanonicalCode, Dart, Embedding, Vertex};
use crate::validity::{validate_polyhedral, PolyhedralGraph, ValidationReport, ValidityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("cycle {0:?} does not split the graph into two polyhedral factors")]
    NotSeparating(Vec<Vertex>),
    #[error("faces have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("face index {face} out of range ({faces} faces)")]
    FaceOutOfRange { face: usize, faces: usize },
    #[error("corner offset {offset} out of range for a {size}-gon")]
    OffsetOutOfRange { offset: usize, size: usize },
    #[error("gluing creates multiple edges between {0} and {1}")]
    NotSimple(Vertex, Vertex),
    #[error("glued graph is not polyhedral: {0}")]
    NotPolyhedral(ValidationReport),
}

/// A simple cycle whose two sides are both polyhedral once capped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycle {
    /// Cycle vertices, starting from the smallest, in the direction whose
    /// second vertex is smaller than the last.
    pub vertices: Vec<Vertex>,
    /// Darts of the edges strictly on each side, sorted.
    pub sides: [Vec<Dart>; 2],
}

/// The two capped factors of a split.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub cycle: SeparatingCycle,
    pub factors: [PolyhedralGraph; 2],
    /// Index of the cap face (bounded by the cycle) in each factor.
    pub cap_faces: [usize; 2],
    /// For each factor, the original vertex behind every factor vertex.
    pub vertex_maps: [Vec<Vertex>; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSummary {
    pub seam: Vec<Vertex>,
    pub factors: [CanonicalCode; 2],
}

impl Decomposition {
    pub fn summary(&self) -> DecompositionSummary {
        DecompositionSummary {
            seam: self.cycle.vertices.clone(),
            factors: [
                self.factors[0].canonical_code().clone(),
                self.factors[1].canonical_code().clone(),
            ],
        }
    }
}

/// Simple cycles (length >= 3) through vertices of degree >= 4, each
/// reported once in normalized order, sorted by (length, vertices).
fn candidate_cycles(e: &Embedding) -> Vec<Vec<Vertex>> {
    let n = e.vertex_count();
    let allowed: Vec<bool> = (0..n).map(|v| e.degree(v) >= 4).collect();
    let adj: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut l: Vec<Vertex> = e.neighbors(v).into_iter().filter(|&w| allowed[w]).collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();

    fn extend(
        adj: &[Vec<Vertex>],
        start: Vertex,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(adj, start, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in (0..n).filter(|&v| allowed[v]) {
        let mut path = vec![s];
        on_path[s] = true;
        extend(&adj, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Attempts to split along `cycle`, a vertex sequence in `p`.
fn try_split(p: &PolyhedralGraph, cycle: &[Vertex]) -> Option<Decomposition> {
    let e = p.embedding();
    let n = e.vertex_count();
    let m = cycle.len();
    if m < 3 {
        return None;
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in cycle.iter().enumerate() {
        if v >= n || position[v] != usize::MAX || e.degree(v) < 4 {
            return None;
        }
        position[v] = i;
    }
    let forward: Vec<Dart> = (0..m)
        .map(|i| e.dart_between(cycle[i], cycle[(i + 1) % m]))
        .collect::<Option<_>>()?;

    // darts strictly between the outgoing and the incoming cycle dart, on
    // each side
    let mut side_darts: [Vec<Vec<Dart>>; 2] = [vec![Vec::new(); m], vec![Vec::new(); m]];
    for i in 0..m {
        let out = forward[i];
        let back = forward[(i + m - 1) % m] ^ 1;
        let mut d = e.next_around(out);
        while d != back {
            side_darts[0][i].push(d);
            d = e.next_around(d);
        }
        d = e.next_around(back);
        while d != out {
            side_darts[1][i].push(d);
            d = e.next_around(d);
        }
        if side_darts[0][i].is_empty() || side_darts[1][i].is_empty() {
            return None;
        }
    }

    let mut factors = Vec::with_capacity(2);
    let mut caps = [0; 2];
    let mut maps: [Vec<Vertex>; 2] = [Vec::new(), Vec::new()];
    let mut sides: [Vec<Dart>; 2] = [Vec::new(), Vec::new()];
    for side in 0..2 {
        // interior vertices reached from this side
        let mut inside = vec![false; n];
        let mut interior = Vec::new();
        let mut stack: Vec<Vertex> = Vec::new();
        for darts in &side_darts[side] {
            for &d in darts {
                let w = e.head(d);
                if position[w] == usize::MAX && !inside[w] {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
        while let Some(v) = stack.pop() {
            interior.push(v);
            for d in e.darts_at(v) {
                let w = e.head(d);
                if position[w] == usize::MAX && !inside[w] {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
        if interior.is_empty() {
            return None;
        }
        interior.sort_unstable();

        let mut index = vec![usize::MAX; n];
        let map: Vec<Vertex> = cycle.iter().chain(&interior).copied().collect();
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut lists = Vec::with_capacity(map.len());
        let mut darts = Vec::new();
        for i in 0..m {
            let (prev, next) = (cycle[(i + m - 1) % m], cycle[(i + 1) % m]);
            let middle = side_darts[side][i].iter().map(|&d| index[e.head(d)]);
            let list: Vec<Vertex> = if side == 0 {
                std::iter::once(index[next])
                    .chain(middle)
                    .chain(std::iter::once(index[prev]))
                    .collect()
            } else {
                std::iter::once(index[prev])
                    .chain(middle)
                    .chain(std::iter::once(index[next]))
                    .collect()
            };
            if list.contains(&usize::MAX) {
                return None;
            }
            lists.push(list);
            darts.extend(side_darts[side][i].iter().flat_map(|&d| [d, d ^ 1]));
        }
        for &v in &interior {
            let list: Vec<Vertex> = e.neighbors(v).into_iter().map(|w| index[w]).collect();
            if list.contains(&usize::MAX) {
                return None;
            }
            lists.push(list);
            darts.extend(e.darts_at(v).flat_map(|d| [d, d ^ 1]));
        }
        darts.sort_unstable();
        darts.dedup();

        let factor = Embedding::from_neighbor_lists(&lists).ok()?;
        let factor = validate_polyhedral(&factor).ok()?;
        let cap = factor
            .faces()
            .iter()
            .position(|f| f.size() == m && f.vertices(factor.embedding()).iter().all(|&v| v < m))
            .expect("capped factor has a face along the cycle");
        caps[side] = cap;
        maps[side] = map;
        sides[side] = darts;
        factors.push(factor);
    }
    let second = factors.pop().unwrap();
    let first = factors.pop().unwrap();
    Some(Decomposition {
        cycle: SeparatingCycle {
            vertices: cycle.to_vec(),
            sides,
        },
        factors: [first, second],
        cap_faces: caps,
        vertex_maps: maps,
    })
}

/// Every separating cycle of `p`, sorted by (length, vertex sequence).
pub fn separating_cycles(p: &PolyhedralGraph) -> Vec<SeparatingCycle> {
    candidate_cycles(p.embedding())
        .into_iter()
        .filter_map(|c| try_split(p, &c).map(|d| d.cycle))
        .collect()
}

fn first_decomposition(p: &PolyhedralGraph) -> Option<Decomposition> {
    candidate_cycles(p.embedding())
        .into_iter()
        .find_map(|c| try_split(p, &c))
}

/// Splits `p` along `cycle` into two capped polyhedral factors.
pub fn split_along(p: &PolyhedralGraph, cycle: &[Vertex]) -> Result<Decomposition, ReductionError> {
    try_split(p, cycle).ok_or_else(|| ReductionError::NotSeparating(cycle.to_vec()))
}

pub fn is_reducible(p: &PolyhedralGraph) -> bool {
    first_decomposition(p).is_some()
}

/// Result of repeatedly splitting along the first separating cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorTree {
    pub code: CanonicalCode,
    /// The cycle split along; absent on irreducible leaves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<Vertex>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FactorTree>,
}

impl FactorTree {
    pub fn is_leaf(&self) -> bool {
        self.factors.is_empty()
    }

    /// Codes of the irreducible leaves, left to right.
    pub fn leaves(&self) -> Vec<CanonicalCode> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    /// Leaf codes as a sorted multiset.
    pub fn sorted_leaves(&self) -> Vec<CanonicalCode> {
        let mut l = self.leaves();
        l.sort();
        l
    }

    fn collect_leaves(&self, out: &mut Vec<CanonicalCode>) {
        if self.is_leaf() {
            out.push(self.code.clone());
        }
        for f in &self.factors {
            f.collect_leaves(out);
        }
    }
}

pub fn factorize(p: &PolyhedralGraph) -> FactorTree {
    let code = p.canonical_code().clone();
    match first_decomposition(p) {
        None => FactorTree {
            code,
            cycle: None,
            factors: Vec::new(),
        },
        Some(d) => {
            let [a, b] = &d.factors;
            let (left, right) = rayon::join(|| factorize(a), || factorize(b));
            FactorTree {
                code,
                cycle: Some(d.cycle.vertices),
                factors: vec![left, right],
            }
        }
    }
}

/// How the boundary of the second face is laid onto the first: corner `i`
/// of the first face meets corner `(offset - i) mod k` of the second, after
/// reflecting the second graph when `mirror` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GlueMatching {
    pub offset: usize,
    pub mirror: bool,
}

/// All `2k` matchings for `k`-gonal faces.
pub fn glue_matchings(k: usize) -> impl Iterator<Item = GlueMatching> {
    [false, true]
        .into_iter()
        .flat_map(move |mirror| (0..k).map(move |offset| GlueMatching { offset, mirror }))
}

fn rotate_to(list: &[Vertex], start: Vertex) -> Vec<Vertex> {
    let pos = list
        .iter()
        .position(|&x| x == start)
        .expect("neighbor present");
    list[pos..].iter().chain(&list[..pos]).copied().collect()
}

/// Glues `p2` onto `p1`, identifying face `f1` of `p1` with face `f2` of
/// `p2` and deleting both. Vertices of `p1` keep their indices; the other
/// vertices of `p2` follow in increasing order.
pub fn glue(
    p1: &PolyhedralGraph,
    f1: usize,
    p2: &PolyhedralGraph,
    f2: usize,
    matching: GlueMatching,
) -> Result<PolyhedralGraph, ReductionError> {
    let face = |p: &PolyhedralGraph, f: usize| {
        p.faces()
            .get(f)
            .cloned()
            .ok_or(ReductionError::FaceOutOfRange {
                face: f,
                faces: p.face_count(),
            })
    };
    let (face1, face2) = (face(p1, f1)?, face(p2, f2)?);
    let k = face1.size();
    if k != face2.size() {
        return Err(ReductionError::SizeMismatch(k, face2.size()));
    }
    if matching.offset >= k {
        return Err(ReductionError::OffsetOutOfRange {
            offset: matching.offset,
            size: k,
        });
    }
    let e1 = p1.embedding();
    let e2 = p2.embedding();
    let a = face1.vertices(e1);
    let mut b = face2.vertices(e2);
    let mut lists2 = e2.neighbor_lists();
    if matching.mirror {
        b.reverse();
        lists2.iter_mut().for_each(|l| l.reverse());
    }

    let n1 = e1.vertex_count();
    let mut map2 = vec![usize::MAX; e2.vertex_count()];
    for (j, &bj) in b.iter().enumerate() {
        map2[bj] = a[(matching.offset + k - j) % k];
    }
    let mut fresh = n1;
    for slot in map2.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = fresh;
        fresh += 1;
    }

    let mut lists = e1.neighbor_lists();
    for i in 0..k {
        let j = (matching.offset + k - i) % k;
        let own = rotate_to(&lists[a[i]], a[(i + 1) % k]);
        debug_assert_eq!(own.last(), Some(&a[(i + k - 1) % k]));
        let other = rotate_to(&lists2[b[j]], b[(j + 1) % k]);
        debug_assert_eq!(other.last(), Some(&b[(j + k - 1) % k]));
        let mut merged = own;
        merged.extend(other[1..other.len() - 1].iter().map(|&w| map2[w]));
        lists[a[i]] = merged;
    }
    lists.resize(fresh, Vec::new());
    for (v, list) in lists2.iter().enumerate() {
        if map2[v] >= n1 {
            lists[map2[v]] = list.iter().map(|&w| map2[w]).collect();
        }
    }

    for (v, list) in lists.iter().enumerate() {
        let mut sorted = list.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|p| p[0] == p[1]) {
            return Err(ReductionError::NotSimple(v.min(w[0]), v.max(w[0])));
        }
    }
    let glued = Embedding::from_neighbor_lists(&lists).expect("glued lists are consistent");
    validate_polyhedral(&glued)
        .map_err(|ValidityError::Invalid(r)| ReductionError::NotPolyhedral(r))
}
