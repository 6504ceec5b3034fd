//! Polyhedrality: simple, 3-connected, embedded on the sphere.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{canonical_code, CanonicalCode, Embedding, Face, Vertex};
use crate::rigidity::GraphProfile;

/// Why a graph is not simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicityWitness {
    Loop(Vertex),
    MultiEdge(Vertex, Vertex),
}

impl fmt::Display for SimplicityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Loop(v) => write!(f, "loop at {v}"),
            Self::MultiEdge(u, v) => write!(f, "multiple edges between {u} and {v}"),
        }
    }
}

/// Why a graph is not 3-connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConnectivityFailure {
    #[error("{0} vertices; at least 4 are needed")]
    TooSmall(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("removing {0} and {1} disconnects the graph")]
    SeparatingPair(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of every polyhedrality check; all pass exactly when
/// [`validate_polyhedral`] succeeds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .failed()
            .map(|c| match &c.witness {
                Some(w) => format!("{} ({w})", c.name),
                None => c.name.to_string(),
            })
            .collect();
        write!(f, "failed checks: {}", failed.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidityError {
    #[error("not polyhedral: {0}")]
    Invalid(ValidationReport),
}

/// A simple 3-connected sphere embedding with its faces cached.
#[derive(Debug, Clone)]
pub struct PolyhedralGraph {
    embedding: Embedding,
    faces: Vec<Face>,
    face_of_dart: Vec<usize>,
    profile: OnceLock<GraphProfile>,
    code: OnceLock<CanonicalCode>,
}

impl PolyhedralGraph {
    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Index into [`PolyhedralGraph::faces`] of the face bounded by dart `d`.
    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    pub fn vertex_count(&self) -> usize {
        self.embedding.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.embedding.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn profile(&self) -> &GraphProfile {
        self.profile.get_or_init(|| GraphProfile::compute(self))
    }

    pub fn canonical_code(&self) -> &CanonicalCode {
        self.code.get_or_init(|| canonical_code(&self.embedding))
    }

    /// The dual graph, which is again polyhedral.
    pub fn dual(&self) -> PolyhedralGraph {
        let dual = self
            .embedding
            .dual()
            .expect("polyhedral graphs are spherical");
        validate_polyhedral(&dual).expect("the dual of a polyhedral graph is polyhedral")
    }

    /// Wraps an embedding already known to be polyhedral.
    pub(crate) fn new_unchecked(embedding: Embedding) -> Self {
        let faces = embedding.faces();
        let mut face_of_dart = vec![0; embedding.dart_count()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f.darts() {
                face_of_dart[d] = i;
            }
        }
        Self {
            embedding,
            faces,
            face_of_dart,
            profile: OnceLock::new(),
            code: OnceLock::new(),
        }
    }
}

impl PartialEq for PolyhedralGraph {
    fn eq(&self, other: &Self) -> bool {
        self.embedding == other.embedding
    }
}

impl Eq for PolyhedralGraph {}

pub fn check_simple(e: &Embedding) -> Result<(), SimplicityWitness> {
    let n = e.vertex_count();
    let mut mark = vec![usize::MAX; n];
    for v in 0..n {
        for d in e.darts_at(v) {
            let w = e.head(d);
            if w == v {
                return Err(SimplicityWitness::Loop(v));
            }
            if mark[w] == v {
                return Err(SimplicityWitness::MultiEdge(v.min(w), v.max(w)));
            }
            mark[w] = v;
        }
    }
    Ok(())
}

fn adjacency(e: &Embedding) -> Vec<Vec<Vertex>> {
    let mut adj = e.neighbor_lists();
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Counts vertices reachable from the first vertex not in `removed`.
fn reachable_without(adj: &[Vec<Vertex>], removed: &[Vertex], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    for &r in removed {
        seen[r] = true;
    }
    let Some(start) = (0..adj.len()).find(|v| !seen[*v]) else {
        return 0;
    };
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count
}

/// Exhaustive pair deletion: passes iff removing any two vertices leaves a
/// connected graph. The witness is the lexicographically first separating
/// pair.
pub fn check_three_connected(e: &Embedding) -> Result<(), ConnectivityFailure> {
    let n = e.vertex_count();
    if n < 4 {
        return Err(ConnectivityFailure::TooSmall(n));
    }
    let adj = adjacency(e);
    let mut seen = vec![false; n];
    if reachable_without(&adj, &[], &mut seen) != n {
        return Err(ConnectivityFailure::Disconnected);
    }
    for u in 0..n {
        for v in u + 1..n {
            if reachable_without(&adj, &[u, v], &mut seen) != n - 2 {
                return Err(ConnectivityFailure::SeparatingPair(u, v));
            }
        }
    }
    Ok(())
}

/// Runs every check and either returns the validated graph or a report
/// listing each failure.
pub fn validate_polyhedral(e: &Embedding) -> Result<PolyhedralGraph, ValidityError> {
    let mut checks = Vec::new();
    let mut push = |name, result: Result<(), String>| {
        checks.push(CheckResult {
            name,
            passed: result.is_ok(),
            witness: result.err(),
        })
    };

    let n = e.vertex_count();
    push(
        "min_vertices",
        if n >= 4 {
            Ok(())
        } else {
            Err(format!("{n} vertices"))
        },
    );
    push("simple", check_simple(e).map_err(|w| w.to_string()));
    let connected = e.is_connected();
    push(
        "connected",
        if connected {
            Ok(())
        } else {
            Err("graph is disconnected".into())
        },
    );
    let chi = e.euler_characteristic();
    push(
        "spherical",
        if connected && chi == 2 {
            Ok(())
        } else {
            Err(format!("V - E + F = {chi}"))
        },
    );
    push(
        "three_connected",
        check_three_connected(e).map_err(|f| f.to_string()),
    );
    let low_degree = (0..n).find(|&v| e.degree(v) < 3);
    push(
        "min_degree",
        match low_degree {
            None => Ok(()),
            Some(v) => Err(format!("vertex {v} has degree {}", e.degree(v))),
        },
    );
    let small_face = e.faces().into_iter().find(|f| f.size() < 3);
    push(
        "min_face_size",
        match small_face {
            None => Ok(()),
            Some(f) => Err(format!(
                "face through dart {} has size {}",
                f.darts()[0],
                f.size()
            )),
        },
    );

    let report = ValidationReport { checks };
    if report.all_passed() {
        Ok(PolyhedralGraph::new_unchecked(e.clone()))
    } else {
        Err(ValidityError::Invalid(report))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emb(lists: &[&[usize]]) -> Embedding {
        Embedding::from_neighbor_lists(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn tetrahedron() -> Embedding {
        emb(&[&[1, 2, 3], &[0, 3, 2], &[0, 1, 3], &[0, 2, 1]])
    }

    #[test]
    fn simple_checks() {
        assert_eq!(check_simple(&tetrahedron()), Ok(()));
        let doubled = emb(&[&[1, 1], &[0, 0]]);
        assert_eq!(
            check_simple(&doubled),
            Err(SimplicityWitness::MultiEdge(0, 1))
        );
        // triangles 0-1-2 and 0-2-3 with the seam chord 0-2 drawn on both sides
        let chorded = emb(&[&[1, 2, 3, 2], &[2, 0], &[3, 0, 1, 0], &[0, 2]]);
        assert_eq!(
            check_simple(&chorded),
            Err(SimplicityWitness::MultiEdge(0, 2))
        );
    }

    #[test]
    fn three_connectivity() {
        assert_eq!(check_three_connected(&tetrahedron()), Ok(()));
        // 4-cycle 0-1-2-3 with chord 0-2
        let chorded = emb(&[&[1, 2, 3], &[2, 0], &[3, 0, 1], &[0, 2]]);
        assert_eq!(
            check_three_connected(&chorded),
            Err(ConnectivityFailure::SeparatingPair(0, 2))
        );
        // wheel: hub 5, rim 0..4
        let wheel = emb(&[
            &[1, 5, 4],
            &[2, 5, 0],
            &[3, 5, 1],
            &[4, 5, 2],
            &[0, 5, 3],
            &[0, 1, 2, 3, 4],
        ]);
        assert_eq!(check_three_connected(&wheel), Ok(()));
        assert_eq!(
            check_three_connected(&emb(&[&[1], &[0]])),
            Err(ConnectivityFailure::TooSmall(2))
        );
    }

    #[test]
    fn validates_tetrahedron() {
        let p = validate_polyhedral(&tetrahedron()).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.face_count(), 4);
    }

    #[test]
    fn single_edge_report_lists_failures() {
        let ValidityError::Invalid(report) = validate_polyhedral(&emb(&[&[1], &[0]])).unwrap_err();
        let failed: Vec<_> = report.failed().map(|c| c.name).collect();
        assert!(failed.contains(&"min_vertices"));
        assert!(failed.contains(&"three_connected"));
        assert!(!report.all_passed());
    }

    #[test]
    fn twisted_k4_fails_genus() {
        let twisted = emb(&[&[1, 2, 3], &[0, 3, 2], &[0, 1, 3], &[0, 1, 2]]);
        let ValidityError::Invalid(report) = validate_polyhedral(&twisted).unwrap_err();
        let failed: Vec<_> = report.failed().map(|c| c.name).collect();
        assert_eq!(failed, vec!["spherical"]);
    }
}
