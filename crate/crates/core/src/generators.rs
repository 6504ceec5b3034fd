//! Named polyhedral families and the stellation move.
//!
//! Rotations are written counterclockwise for a drawing with the first
//! ring (or the base polygon) innermost; every constructor validates its
//! output.

use thiserror::Error;

use crate::embedding::Embedding;
use crate::validity::{validate_polyhedral, PolyhedralGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("parameter {got} is below the minimum {min}")]
    TooSmall { min: usize, got: usize },
    #[error("face {face} has {size} sides, not 3")]
    NotTriangle { face: usize, size: usize },
    #[error("face index {face} out of range ({faces} faces)")]
    FaceOutOfRange { face: usize, faces: usize },
}

fn require(got: usize, min: usize) -> Result<(), GeneratorError> {
    if got < min {
        Err(GeneratorError::TooSmall { min, got })
    } else {
        Ok(())
    }
}

fn build(lists: Vec<Vec<usize>>) -> PolyhedralGraph {
    let e = Embedding::from_neighbor_lists(&lists).expect("generator lists are consistent");
    validate_polyhedral(&e).expect("generator output is polyhedral")
}

/// `n`-gonal pyramid: base cycle `0..n`, apex `n`.
pub fn pyramid(n: usize) -> Result<PolyhedralGraph, GeneratorError> {
    require(n, 3)?;
    let mut lists: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![(i + 1) % n, n, (i + n - 1) % n])
        .collect();
    lists.push((0..n).collect());
    Ok(build(lists))
}

/// `n`-gonal bipyramid: equator `0..n`, apexes `n` (inside) and `n + 1`.
pub fn bipyramid(n: usize) -> Result<PolyhedralGraph, GeneratorError> {
    require(n, 3)?;
    let mut lists: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![(i + 1) % n, n, (i + n - 1) % n, n + 1])
        .collect();
    lists.push((0..n).collect());
    lists.push((0..n).rev().collect());
    Ok(build(lists))
}

/// `levels + 1` concentric `n`-cycles, consecutive ones joined rung by rung.
fn ring_stack(n: usize, levels: usize) -> PolyhedralGraph {
    let id = |ring: usize, j: usize| ring * n + j % n;
    let mut lists = Vec::with_capacity(n * (levels + 1));
    for ring in 0..=levels {
        for j in 0..n {
            let mut list = Vec::with_capacity(4);
            if ring < levels {
                list.push(id(ring + 1, j));
            }
            list.push(id(ring, j + 1));
            if ring > 0 {
                list.push(id(ring - 1, j));
            }
            list.push(id(ring, j + n - 1));
            lists.push(list);
        }
    }
    build(lists)
}

/// `n`-gonal prism; `prism(4)` is the cube.
pub fn prism(n: usize) -> Result<PolyhedralGraph, GeneratorError> {
    require(n, 3)?;
    Ok(ring_stack(n, 1))
}

/// `levels` triangular prisms stacked along triangles: `3 (levels + 1)`
/// vertices, ring `r` being vertices `3r..3r + 3`.
pub fn prism_stack(levels: usize) -> Result<PolyhedralGraph, GeneratorError> {
    require(levels, 1)?;
    Ok(ring_stack(3, levels))
}

/// Adds a vertex inside triangular face `face` (an index into
/// [`PolyhedralGraph::faces`]) joined to its three corners. The new vertex
/// gets the next free index.
pub fn stellate(p: &PolyhedralGraph, face: usize) -> Result<PolyhedralGraph, GeneratorError> {
    let faces = p.faces();
    let f = faces.get(face).ok_or(GeneratorError::FaceOutOfRange {
        face,
        faces: faces.len(),
    })?;
    if f.size() != 3 {
        return Err(GeneratorError::NotTriangle {
            face,
            size: f.size(),
        });
    }
    let e = p.embedding();
    let w = e.vertex_count();
    let corners = f.vertices(e);
    let mut lists = e.neighbor_lists();
    for i in 0..3 {
        let (before, at, after) = (corners[(i + 2) % 3], corners[i], corners[(i + 1) % 3]);
        // the face sits between `before` and `after` in the rotation at `at`
        let list = &mut lists[at];
        let k = list.len();
        let pos = (0..k)
            .find(|&j| list[j] == before && list[(j + 1) % k] == after)
            .expect("face corner appears in rotation");
        list.insert(pos + 1, w);
    }
    lists.push(vec![corners[2], corners[1], corners[0]]);
    Ok(build(lists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::canonical_code;

    #[test]
    fn rejects_small_parameters() {
        assert_eq!(
            pyramid(2).unwrap_err(),
            GeneratorError::TooSmall { min: 3, got: 2 }
        );
        assert!(bipyramid(1).is_err());
        assert!(prism(2).is_err());
        assert_eq!(
            prism_stack(0).unwrap_err(),
            GeneratorError::TooSmall { min: 1, got: 0 }
        );
    }

    #[test]
    fn family_sizes() {
        for n in 3..9 {
            let p = pyramid(n).unwrap();
            assert_eq!((p.vertex_count(), p.face_count()), (n + 1, n + 1));
            let b = bipyramid(n).unwrap();
            assert_eq!((b.vertex_count(), b.face_count()), (n + 2, 2 * n));
            assert!(b.faces().iter().all(|f| f.size() == 3));
            let q = prism(n).unwrap();
            assert_eq!((q.vertex_count(), q.face_count()), (2 * n, n + 2));
        }
        for s in 1..9 {
            let p = prism_stack(s).unwrap();
            assert_eq!((p.vertex_count(), p.face_count()), (3 * (s + 1), 3 * s + 2));
            let tri = p.faces().iter().filter(|f| f.size() == 3).count();
            assert_eq!(tri, 2);
        }
    }

    #[test]
    fn pyramid_three_is_the_tetrahedron() {
        let tet = Embedding::from_neighbor_lists(&[
            vec![1, 2, 3],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
        .unwrap();
        assert_eq!(pyramid(3).unwrap().canonical_code(), &canonical_code(&tet));
    }

    #[test]
    fn bipyramid_four_is_dual_of_cube() {
        let cube = prism(4).unwrap();
        assert_eq!(
            cube.dual().canonical_code(),
            bipyramid(4).unwrap().canonical_code()
        );
    }

    #[test]
    fn stellation() {
        let tet = pyramid(3).unwrap();
        for face in 0..4 {
            let s = stellate(&tet, face).unwrap();
            assert_eq!(s.canonical_code(), bipyramid(3).unwrap().canonical_code());
            assert_eq!(s.embedding().degree(4), 3);
            assert_eq!(s.profile().nontriangular_degree[4], 0);
        }
        let cube = prism(4).unwrap();
        assert_eq!(
            stellate(&cube, 0).unwrap_err(),
            GeneratorError::NotTriangle { face: 0, size: 4 }
        );
        assert!(matches!(
            stellate(&tet, 9),
            Err(GeneratorError::FaceOutOfRange { .. })
        ));
    }
}
