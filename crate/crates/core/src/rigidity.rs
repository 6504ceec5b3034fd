//! Non-triangular degrees, rigid vertices and the counting identities they
//! obey.
//!
//! A vertex is rigid when at most three of its incident faces are
//! non-triangular. `V_k` / `F_k` count `k`-valent vertices and `k`-gonal
//! faces.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::FromPrimitive;
use serde::Serialize;

use crate::embedding::Vertex;
use crate::validity::PolyhedralGraph;

/// Largest non-triangular degree a rigid vertex may have.
pub const RIGID_MAX_NONTRIANGULAR: usize = 3;

/// Degree and face statistics of a polyhedral graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// degree -> number of vertices of that degree
    pub v_k: BTreeMap<usize, usize>,
    /// size -> number of faces of that size
    pub f_k: BTreeMap<usize, usize>,
    /// per-vertex count of incident faces with at least 4 sides
    pub nontriangular_degree: Vec<usize>,
    #[serde(rename = "rigid")]
    pub rigid_count: usize,
    #[serde(rename = "nonrigid")]
    pub nonrigid_count: usize,
    pub totally_triangular: Vec<Vertex>,
}

impl GraphProfile {
    pub(crate) fn compute(p: &PolyhedralGraph) -> Self {
        let e = p.embedding();
        let n = e.vertex_count();
        let mut v_k = BTreeMap::new();
        let mut f_k = BTreeMap::new();
        for v in 0..n {
            *v_k.entry(e.degree(v)).or_insert(0) += 1;
        }
        for f in p.faces() {
            *f_k.entry(f.size()).or_insert(0) += 1;
        }
        let nontriangular_degree: Vec<usize> = (0..n).map(|v| nontriangular_degree(p, v)).collect();
        let rigid_count = nontriangular_degree
            .iter()
            .filter(|&&k| k <= RIGID_MAX_NONTRIANGULAR)
            .count();
        let totally_triangular = (0..n).filter(|&v| nontriangular_degree[v] == 0).collect();
        Self {
            vertices: n,
            edges: e.edge_count(),
            faces: p.face_count(),
            v_k,
            f_k,
            nontriangular_degree,
            rigid_count,
            nonrigid_count: n - rigid_count,
            totally_triangular,
        }
    }

    pub fn v(&self, k: usize) -> usize {
        self.v_k.get(&k).copied().unwrap_or(0)
    }

    pub fn f(&self, k: usize) -> usize {
        self.f_k.get(&k).copied().unwrap_or(0)
    }

    pub fn is_rigid(&self, v: Vertex) -> bool {
        self.nontriangular_degree[v] <= RIGID_MAX_NONTRIANGULAR
    }
}

/// Number of faces with at least four sides meeting `v`.
///
/// # Panics
///
/// If some face meets `v` at two corners, which polyhedral graphs exclude.
pub fn nontriangular_degree(p: &PolyhedralGraph, v: Vertex) -> usize {
    let e = p.embedding();
    let corners: Vec<usize> = e.darts_at(v).map(|d| p.face_of_dart(d)).collect();
    let mut distinct = corners.clone();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(
        distinct.len(),
        corners.len(),
        "a face meets vertex {v} at two corners"
    );
    corners
        .iter()
        .filter(|&&f| p.faces()[f].size() >= 4)
        .count()
}

/// Rigid vertices in increasing order.
pub fn rigid_vertices(p: &PolyhedralGraph) -> Vec<Vertex> {
    let profile = p.profile();
    (0..p.vertex_count())
        .filter(|&v| profile.is_rigid(v))
        .collect()
}

pub fn profile(p: &PolyhedralGraph) -> GraphProfile {
    p.profile().clone()
}

/// How the two sides of an [`IdentityCheck`] are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    LessOrEqual,
    GreaterOrEqual,
    /// both sides even
    BothEven,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub lhs: i64,
    pub rhs: i64,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: i64, relation: Relation, rhs: i64) -> Self {
        let passed = match relation {
            Relation::Equal => lhs == rhs,
            Relation::LessOrEqual => lhs <= rhs,
            Relation::GreaterOrEqual => lhs >= rhs,
            Relation::BothEven => lhs % 2 == 0 && rhs % 2 == 0,
        };
        Self {
            name,
            relation,
            lhs,
            rhs,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluates the counting identities and inequalities every polyhedral
/// graph satisfies. The two-sided triangle bound is reported as two checks.
pub fn check_identities(p: &PolyhedralGraph) -> IdentityReport {
    let prof = p.profile();
    let e = prof.edges as i64;
    let excess = |counts: &BTreeMap<usize, usize>| -> i64 {
        counts
            .iter()
            .filter(|(&k, _)| k >= 5)
            .map(|(&k, &c)| (k as i64 - 4) * c as i64)
            .sum()
    };
    let weighted = |counts: &BTreeMap<usize, usize>| -> i64 {
        counts.iter().map(|(&k, &c)| k as i64 * c as i64).sum()
    };
    let odd = |counts: &BTreeMap<usize, usize>| -> i64 {
        counts
            .iter()
            .filter(|(&k, _)| k % 2 == 1)
            .map(|(_, &c)| c as i64)
            .sum()
    };
    let v3 = prof.v(3) as i64;
    let f3 = prof.f(3) as i64;
    let rigid = prof.rigid_count as i64;
    let sum_v = weighted(&prof.v_k);
    let sum_f = weighted(&prof.f_k);

    let mut handshake = IdentityCheck::new("double_handshake", sum_v, Relation::Equal, sum_f);
    handshake.passed &= sum_v == 2 * e;

    IdentityReport {
        checks: vec![
            IdentityCheck::new(
                "v3_f3_identity",
                v3 + f3,
                Relation::Equal,
                excess(&prof.v_k) + excess(&prof.f_k) + 8,
            ),
            handshake,
            IdentityCheck::new(
                "odd_degree_parity",
                odd(&prof.v_k),
                Relation::BothEven,
                odd(&prof.f_k),
            ),
            IdentityCheck::new("triangle_lower_bound", 8 - rigid, Relation::LessOrEqual, f3),
            IdentityCheck::new(
                "triangle_upper_bound",
                f3,
                Relation::LessOrEqual,
                2 * rigid - 4,
            ),
            IdentityCheck::new("at_least_four_rigid", rigid, Relation::GreaterOrEqual, 4),
            IdentityCheck::new("rigid_vertex_exists", rigid, Relation::GreaterOrEqual, 1),
        ],
    }
}

/// Exact angle sum, as a multiple of pi, of regular polygons with the given
/// numbers of sides meeting at a point: the sum of `(s - 2) / s`.
pub fn regular_angle_sum<T>(face_sizes: impl IntoIterator<Item = usize>) -> Ratio<T>
where
    T: Clone + Integer + FromPrimitive,
{
    face_sizes
        .into_iter()
        .fold(Ratio::from_integer(T::zero()), |acc, s| {
            let s = T::from_usize(s).expect("face size fits the scalar type");
            let two = T::one() + T::one();
            acc + Ratio::new(s.clone() - two, s)
        })
}

/// Result of [`regular_angle_feasible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleCheck {
    pub feasible: bool,
    /// Angle sum as a multiple of pi.
    pub sum: crate::AngleSum,
}

/// Whether regular faces of the sizes meeting at `v` leave room for a convex
/// corner, i.e. their angles sum to strictly less than `2 * pi`.
pub fn regular_angle_feasible(p: &PolyhedralGraph, v: Vertex) -> AngleCheck {
    let e = p.embedding();
    let sizes = e.darts_at(v).map(|d| p.faces()[p.face_of_dart(d)].size());
    angle_check(sizes)
}

pub fn angle_check(face_sizes: impl IntoIterator<Item = usize>) -> AngleCheck {
    let sum: crate::AngleSum = regular_angle_sum(face_sizes);
    AngleCheck {
        feasible: sum < Ratio::from_integer(2),
        sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bipyramid, prism, prism_stack, pyramid};

    #[test]
    fn nontriangular_degrees() {
        let tet = pyramid(3).unwrap();
        assert!((0..4).all(|v| nontriangular_degree(&tet, v) == 0));
        let cube = prism(4).unwrap();
        assert!((0..8).all(|v| nontriangular_degree(&cube, v) == 3));
        let stack = prism_stack(2).unwrap();
        // ring 1 is the middle ring
        assert!((3..6).all(|v| nontriangular_degree(&stack, v) == 4));
    }

    #[test]
    fn rigid_sets() {
        assert_eq!(rigid_vertices(&pyramid(4).unwrap()).len(), 5);
        assert_eq!(rigid_vertices(&bipyramid(3).unwrap()).len(), 5);
        let stack = prism_stack(2).unwrap();
        assert_eq!(rigid_vertices(&stack), vec![0, 1, 2, 6, 7, 8]);
        assert_eq!(stack.profile().nonrigid_count, 3);
    }

    #[test]
    fn profiles_of_small_solids() {
        let tet = profile(&pyramid(3).unwrap());
        assert_eq!((tet.v(3), tet.f(3), tet.rigid_count), (4, 4, 4));
        assert_eq!(tet.totally_triangular, vec![0, 1, 2, 3]);
        let bip = profile(&bipyramid(3).unwrap());
        assert_eq!(
            (bip.v(3), bip.v(4), bip.f(3), bip.rigid_count),
            (2, 3, 6, 5)
        );
        let pyr = profile(&pyramid(4).unwrap());
        assert_eq!(
            (pyr.v(3), pyr.v(4), pyr.f(3), pyr.f(4), pyr.rigid_count),
            (4, 1, 4, 1, 5)
        );
    }

    #[test]
    fn identities_hold_with_expected_sides() {
        let tet = check_identities(&pyramid(3).unwrap());
        assert!(tet.all_passed());
        assert_eq!((tet.checks[0].lhs, tet.checks[0].rhs), (8, 8));
        assert_eq!(
            (tet.checks[3].lhs, tet.checks[4].lhs, tet.checks[4].rhs),
            (4, 4, 4)
        );

        let pent = check_identities(&pyramid(5).unwrap());
        assert!(pent.all_passed());
        // 5 + 5 = 1 + 1 + 8
        assert_eq!((pent.checks[0].lhs, pent.checks[0].rhs), (10, 10));

        let cube = check_identities(&prism(4).unwrap());
        assert!(cube.all_passed());
        assert_eq!((cube.checks[0].lhs, cube.checks[0].rhs), (8, 8));
        assert_eq!((cube.checks[2].lhs, cube.checks[2].rhs), (8, 0));
    }

    #[test]
    fn angle_sums_are_exact() {
        let four_squares = angle_check([4, 4, 4, 4]);
        assert!(!four_squares.feasible);
        assert_eq!(four_squares.sum, Ratio::from_integer(2));
        let cube = angle_check([4, 4, 4]);
        assert!(cube.feasible);
        assert_eq!(cube.sum, Ratio::new(3, 2));
        let ico = angle_check([3, 3, 3, 3, 3]);
        assert!(ico.feasible);
        assert_eq!(ico.sum, Ratio::new(5, 3));
        let cube_vertex = regular_angle_feasible(&prism(4).unwrap(), 0);
        assert_eq!(cube_vertex, cube);
    }

    #[test]
    fn angle_sum_is_scalar_generic() {
        let wide: Ratio<i128> = regular_angle_sum([5, 5, 5]);
        assert_eq!(wide, Ratio::new(9, 5));
        let narrow: Ratio<i32> = regular_angle_sum([6, 6, 6]);
        assert_eq!(narrow, Ratio::from_integer(2));
    }
}
