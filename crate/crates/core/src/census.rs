//! Census records and range-limited verification of the rigid-vertex
//! classification over an enumeration run.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::embedding::{CanonicalCode, CodeError};
use crate::enumeration::{
    brute_force_oracle, decode_polyhedral, EnumerationRun, ORACLE_MAX_VERTICES,
};
use crate::generators::{bipyramid, prism_stack, pyramid};
use crate::reduction::{factorize, is_reducible};
use crate::rigidity::{check_identities, regular_angle_feasible, RIGID_MAX_NONTRIANGULAR};
use crate::validity::{validate_polyhedral, PolyhedralGraph, ValidityError};

/// One polyhedral type, as written to census JSONL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub code: CanonicalCode,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub v_k: BTreeMap<usize, usize>,
    pub f_k: BTreeMap<usize, usize>,
    pub rigid: usize,
    pub nonrigid: usize,
    /// Vertices meeting only triangles.
    pub totally_triangular: usize,
    pub reducible: bool,
    /// Sorted codes of the irreducible factors; empty when irreducible.
    pub factors: Vec<CanonicalCode>,
}

impl CensusRecord {
    pub fn new(p: &PolyhedralGraph) -> Self {
        let profile = p.profile();
        let tree = factorize(p);
        let factors = if tree.is_leaf() {
            Vec::new()
        } else {
            tree.sorted_leaves()
        };
        Self {
            code: p.canonical_code().clone(),
            vertices: profile.vertices,
            edges: profile.edges,
            faces: profile.faces,
            v_k: profile.v_k.clone(),
            f_k: profile.f_k.clone(),
            rigid: profile.rigid_count,
            nonrigid: profile.nonrigid_count,
            totally_triangular: profile.totally_triangular.len(),
            reducible: !tree.is_leaf(),
            factors,
        }
    }

    /// Rebuilds the record of the type a code describes.
    pub fn from_code(code: &CanonicalCode) -> Result<Self, RecordError> {
        let p = validate_polyhedral(&code.decode()?)?;
        Ok(Self::new(&p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Invalid(#[from] ValidityError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusFilter {
    /// Keep only types with exactly this many rigid vertices.
    pub rigid: Option<usize>,
    /// Keep only irreducible types.
    pub irreducible: bool,
}

/// Records of the types passing `filter`, sorted by vertex count and then
/// by code. Runs on the current rayon pool.
pub fn census(run: &EnumerationRun, filter: CensusFilter) -> Vec<CensusRecord> {
    let codes: Vec<&CanonicalCode> = run.iter().collect();
    codes
        .par_iter()
        .filter_map(|code| {
            let p = decode_polyhedral(code);
            if filter.rigid.is_some_and(|k| p.profile().rigid_count != k) {
                return None;
            }
            if filter.irreducible && is_reducible(&p) {
                return None;
            }
            Some(CensusRecord::new(&p))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// The run does not reach the vertex count the claim needs.
    RangeTooSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub statement: &'static str,
    /// Largest vertex count the claim was checked at.
    pub checked_up_to: usize,
    pub status: ClaimStatus,
    /// Codes contradicting the claim, or a missing expected code.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_vertices: usize,
    pub claims: Vec<ClaimResult>,
}

impl VerificationReport {
    /// True when no claim failed; claims out of range do not count.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            let status = match c.status {
                ClaimStatus::Pass => format!("verified up to {} vertices", c.checked_up_to),
                ClaimStatus::Fail => "FAILED".to_string(),
                ClaimStatus::RangeTooSmall => "not checked: range too small".to_string(),
            };
            writeln!(f, "{:<28} {status}", c.id)?;
            for w in &c.witnesses {
                writeln!(f, "    witness {w}")?;
            }
        }
        Ok(())
    }
}

/// Per-type facts the claims are evaluated from.
struct Facts {
    code: CanonicalCode,
    vertices: usize,
    rigid: usize,
    nonrigid: usize,
    identities_hold: bool,
    angles_hold: bool,
}

fn facts(code: &CanonicalCode) -> Facts {
    let p = decode_polyhedral(code);
    let profile = p.profile();
    let angles_hold = (0..p.vertex_count())
        .filter(|&v| profile.nontriangular_degree[v] > RIGID_MAX_NONTRIANGULAR)
        .all(|v| !regular_angle_feasible(&p, v).feasible);
    Facts {
        code: code.clone(),
        vertices: p.vertex_count(),
        rigid: profile.rigid_count,
        nonrigid: profile.nonrigid_count,
        identities_hold: check_identities(&p).all_passed(),
        angles_hold,
    }
}

fn code_of(p: PolyhedralGraph) -> CanonicalCode {
    p.canonical_code().clone()
}

/// Checks the classification claims within the run's range.
pub fn verify(run: &EnumerationRun) -> VerificationReport {
    let max = run.max_vertices;
    let codes: Vec<&CanonicalCode> = run.iter().collect();
    let all: Vec<Facts> = codes.par_iter().map(|c| facts(c)).collect();
    let hex = |f: &Facts| f.code.to_hex();
    let mut claims = Vec::new();
    let mut push = |id, statement, checked_up_to, status, witnesses| {
        claims.push(ClaimResult {
            id,
            statement,
            checked_up_to,
            status,
            witnesses,
        })
    };
    let judge = |witnesses: &Vec<String>| {
        if witnesses.is_empty() {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        }
    };

    let w: Vec<String> = all.iter().filter(|f| f.rigid < 4).map(hex).collect();
    push(
        "at_least_four_rigid",
        "every polyhedral graph has at least four rigid vertices",
        max,
        judge(&w),
        w,
    );

    let mut exact = |id, statement, rigid: usize, expected: Vec<CanonicalCode>| {
        let expected: Vec<CanonicalCode> = expected
            .into_iter()
            .filter(|c| c.vertex_count() <= max)
            .collect();
        let found: Vec<&CanonicalCode> = all
            .iter()
            .filter(|f| f.rigid == rigid)
            .map(|f| &f.code)
            .collect();
        let mut w: Vec<String> = found
            .iter()
            .filter(|c| !expected.contains(c))
            .map(|c| c.to_hex())
            .collect();
        w.extend(
            expected
                .iter()
                .filter(|c| !found.contains(c))
                .map(|c| format!("missing {c}")),
        );
        let status = judge(&w);
        push(id, statement, max, status, w);
    };
    exact(
        "four_rigid_is_tetrahedron",
        "the tetrahedron is the only type with four rigid vertices",
        4,
        vec![code_of(pyramid(3).unwrap())],
    );
    exact(
        "five_rigid_types",
        "the square pyramid and the triangular bipyramid are the only types with five rigid vertices",
        5,
        vec![code_of(pyramid(4).unwrap()), code_of(bipyramid(3).unwrap())],
    );

    let w: Vec<String> = all
        .iter()
        .filter(|f| f.vertices <= 8 && f.nonrigid > 0)
        .map(hex)
        .collect();
    push(
        "all_rigid_below_nine",
        "every type with fewer than nine vertices has only rigid vertices",
        max.min(8),
        judge(&w),
        w,
    );

    if max < 9 {
        push(
            "nonrigid_minimum_is_nine",
            "the fewest vertices of a type with a nonrigid vertex is nine",
            max,
            ClaimStatus::RangeTooSmall,
            Vec::new(),
        );
    } else {
        let stack = code_of(prism_stack(2).unwrap());
        let mut w: Vec<String> = all
            .iter()
            .filter(|f| f.vertices < 9 && f.nonrigid > 0)
            .map(hex)
            .collect();
        if !all.iter().any(|f| f.code == stack && f.nonrigid > 0) {
            w.push(format!("missing {stack}"));
        }
        push(
            "nonrigid_minimum_is_nine",
            "the fewest vertices of a type with a nonrigid vertex is nine",
            max,
            judge(&w),
            w,
        );
    }

    let stacks: Vec<CanonicalCode> = (1..)
        .map(|s| code_of(prism_stack(s).unwrap()))
        .take_while(|c| c.vertex_count() <= max)
        .collect();
    let six: Vec<&Facts> = all.iter().filter(|f| f.rigid == 6).collect();
    let mut w: Vec<String> = six
        .iter()
        .filter(|f| f.vertices != 6 && !stacks.contains(&f.code))
        .map(|f| hex(f))
        .collect();
    w.extend(
        stacks
            .iter()
            .filter(|c| !six.iter().any(|f| &f.code == *c))
            .map(|c| format!("missing {c}")),
    );
    push(
        "six_rigid_types",
        "types with six rigid vertices have six vertices or are stacked triangular prisms",
        max,
        judge(&w),
        w,
    );

    if max < 6 {
        push(
            "six_rigid_irreducible_count",
            "exactly four irreducible types have six rigid vertices",
            max,
            ClaimStatus::RangeTooSmall,
            Vec::new(),
        );
    } else {
        let irreducible: Vec<String> = six
            .iter()
            .filter(|f| !is_reducible(&decode_polyhedral(&f.code)))
            .map(|f| hex(f))
            .collect();
        let status = if irreducible.len() == 4 {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Fail
        };
        let w = if status == ClaimStatus::Pass {
            Vec::new()
        } else {
            irreducible
        };
        push(
            "six_rigid_irreducible_count",
            "exactly four irreducible types have six rigid vertices",
            max,
            status,
            w,
        );
    }

    let w: Vec<String> = all.iter().filter(|f| !f.identities_hold).map(hex).collect();
    push(
        "counting_identities",
        "the vertex and face counting identities and bounds hold",
        max,
        judge(&w),
        w,
    );

    let w: Vec<String> = all.iter().filter(|f| !f.angles_hold).map(hex).collect();
    push(
        "nonrigid_angle_excess",
        "regular faces around a nonrigid vertex sum to at least a full turn",
        max,
        judge(&w),
        w,
    );

    VerificationReport {
        max_vertices: max,
        claims,
    }
}

/// Compares the run with the brute-force oracle for every vertex count
/// up to `up_to` (clamped to the oracle's and the run's range).
pub fn verify_against_oracle(run: &EnumerationRun, up_to: usize) -> ClaimResult {
    let limit = up_to.min(ORACLE_MAX_VERTICES).min(run.max_vertices);
    let mut witnesses = Vec::new();
    for n in 4..=limit {
        let oracle = brute_force_oracle(n).expect("within oracle range");
        let found = run.codes(n);
        witnesses.extend(
            found
                .iter()
                .filter(|c| oracle.binary_search(c).is_err())
                .map(|c| format!("extra {c}")),
        );
        witnesses.extend(
            oracle
                .iter()
                .filter(|c| found.binary_search(c).is_err())
                .map(|c| format!("missing {c}")),
        );
    }
    let status = if witnesses.is_empty() {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    };
    ClaimResult {
        id: "oracle_agreement",
        statement: "enumeration matches the brute-force oracle",
        checked_up_to: limit,
        status,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_with, EnumerationConfig};

    fn run(max: usize) -> EnumerationRun {
        enumerate_with(&EnumerationConfig::new(max).with_threads(1)).unwrap()
    }

    #[test]
    fn record_of_stacked_prisms() {
        let r = CensusRecord::new(&prism_stack(2).unwrap());
        assert_eq!((r.vertices, r.edges, r.faces), (9, 15, 8));
        assert_eq!((r.rigid, r.nonrigid), (6, 3));
        assert!(r.reducible);
        let prism = prism_stack(1).unwrap().canonical_code().clone();
        assert_eq!(r.factors, vec![prism.clone(), prism]);
        assert_eq!(CensusRecord::from_code(&r.code).unwrap(), r);
    }

    #[test]
    fn rigid_filters() {
        let run = run(7);
        let four = census(
            &run,
            CensusFilter {
                rigid: Some(4),
                irreducible: false,
            },
        );
        assert_eq!(four.len(), 1);
        assert_eq!(&four[0].code, pyramid(3).unwrap().canonical_code());
        let five = census(
            &run,
            CensusFilter {
                rigid: Some(5),
                irreducible: false,
            },
        );
        assert_eq!(five.len(), 2);
        let all = census(&run, CensusFilter::default());
        assert_eq!(all.len(), run.len());
        assert!(all
            .windows(2)
            .all(|w| (w[0].vertices, &w[0].code) < (w[1].vertices, &w[1].code)));
    }

    #[test]
    fn verify_small_range() {
        let report = verify(&run(8));
        assert!(report.passed(), "{report}");
        assert_eq!(
            report.claim("nonrigid_minimum_is_nine").unwrap().status,
            ClaimStatus::RangeTooSmall
        );
        assert_eq!(
            report.claim("four_rigid_is_tetrahedron").unwrap().status,
            ClaimStatus::Pass
        );
        assert_eq!(verify_against_oracle(&run(7), 8).status, ClaimStatus::Pass);
    }
}
