//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so the lines are always
//! printed. Exits nonzero if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use polycensus::census::{census, CensusFilter};
use polycensus::enumeration::{
    brute_force_oracle, enumerate_with, EnumerationConfig, EnumerationRun,
};
use polycensus::generators::{bipyramid, prism_stack, pyramid, stellate};
use polycensus::reduction::{
    factorize, glue, glue_matchings, is_reducible, separating_cycles, split_along,
};
use polycensus::rigidity::{check_identities, regular_angle_feasible, RIGID_MAX_NONTRIANGULAR};
use polycensus::{AngleSum, CanonicalCode, PolyhedralGraph};

/// Vertex bound for the desk-scale criteria.
const DESK: usize = 10;
/// Vertex bound for the six-rigid classification and the seven-rigid census.
const WIDE: usize = 12;
/// Runtime limits.
const ORACLE_SMALL_LIMIT: Duration = Duration::from_secs(2 * 60);
const ORACLE_EIGHT_LIMIT: Duration = Duration::from_secs(30 * 60);
const SIX_RIGID_LIMIT: Duration = Duration::from_secs(15 * 60);
/// Worker counts compared for determinism.
const WORKERS: [usize; 2] = [1, 2];
const STELLATION_SAMPLES: usize = 20;
const STELLATION_SEED: u64 = 0x5eed_2026;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn code(p: PolyhedralGraph) -> CanonicalCode {
    p.canonical_code().clone()
}

fn enumerate(max: usize, threads: usize) -> EnumerationRun {
    enumerate_with(&EnumerationConfig::new(max).with_threads(threads)).expect("enumeration runs")
}

fn with_rigid(run: &EnumerationRun, k: usize) -> Vec<CanonicalCode> {
    run.graphs()
        .filter(|p| p.profile().rigid_count == k)
        .map(code)
        .collect()
}

fn counts_and_oracle(run: &EnumerationRun) -> Outcome {
    let counts: Vec<usize> = (4..=6).map(|n| run.codes(n).len()).collect();
    ensure(counts == [1, 2, 7], || {
        format!("types for n = 4, 5, 6: {counts:?}")
    })?;
    let start = Instant::now();
    for n in 4..=7 {
        let oracle = brute_force_oracle(n).unwrap();
        ensure(oracle.as_slice() == run.codes(n), || {
            format!("n = {n} differs from the oracle")
        })?;
    }
    let small = start.elapsed();
    ensure(small < ORACLE_SMALL_LIMIT, || {
        format!("oracle n <= 7 took {small:?}")
    })?;
    let start = Instant::now();
    let oracle8 = brute_force_oracle(8).unwrap();
    let eight = start.elapsed();
    ensure(oracle8.as_slice() == run.codes(8), || {
        "n = 8 differs from the oracle".into()
    })?;
    ensure(eight < ORACLE_EIGHT_LIMIT, || {
        format!("oracle n = 8 took {eight:?}")
    })?;
    Ok(format!(
        "1, 2, 7 types for n = 4, 5, 6; oracle sets equal for n = 7 ({}) and n = 8 ({}); oracle time {small:.2?} (n <= 7), {eight:.2?} (n = 8)",
        run.codes(7).len(),
        run.codes(8).len()
    ))
}

fn small_classes(run: &EnumerationRun) -> Outcome {
    let below: usize = (0..4).map(|k| with_rigid(run, k).len()).sum();
    ensure(below == 0, || {
        format!("{below} types with fewer than 4 rigid vertices")
    })?;
    let four = with_rigid(run, 4);
    ensure(four == vec![code(pyramid(3).unwrap())], || {
        format!("four rigid: {four:?}")
    })?;
    let mut expected = vec![code(pyramid(4).unwrap()), code(bipyramid(3).unwrap())];
    expected.sort();
    let five = with_rigid(run, 5);
    ensure(five == expected, || format!("five rigid: {five:?}"))?;
    Ok(format!("over {} types: none below 4 rigid, exactly the tetrahedron at 4, exactly the square pyramid and triangular bipyramid at 5", run.len()))
}

fn nonrigid_minimum(run: &EnumerationRun) -> Outcome {
    let small: Vec<PolyhedralGraph> = run.graphs().filter(|p| p.vertex_count() <= 8).collect();
    ensure(small.len() == 301, || {
        format!("{} types with at most 8 vertices", small.len())
    })?;
    let bad = small
        .iter()
        .filter(|p| p.profile().nonrigid_count > 0)
        .count();
    ensure(bad == 0, || {
        format!("{bad} types below 9 vertices have a nonrigid vertex")
    })?;
    let stack = prism_stack(2).unwrap();
    let nonrigid = stack.profile().nonrigid_count;
    ensure(stack.vertex_count() == 9 && nonrigid == 3, || {
        format!("prism_stack(2) nonrigid = {nonrigid}")
    })?;
    Ok(
        "301 types with at most 8 vertices all rigid; prism_stack(2) has 9 vertices, 3 nonrigid"
            .into(),
    )
}

fn six_rigid(run: &EnumerationRun, elapsed: Duration) -> Outcome {
    let six = with_rigid(run, 6);
    let six_vertex = run.codes(6);
    let stacks: Vec<CanonicalCode> = (1..=3).map(|s| code(prism_stack(s).unwrap())).collect();
    let mut expected: Vec<CanonicalCode> = six_vertex.iter().chain(&stacks).cloned().collect();
    expected.sort();
    expected.dedup();
    let mut found = six.clone();
    found.sort();
    ensure(found == expected, || {
        let extra: Vec<_> = found
            .iter()
            .filter(|c| !expected.contains(c))
            .map(|c| c.to_hex())
            .collect();
        let missing: Vec<_> = expected
            .iter()
            .filter(|c| !found.contains(c))
            .map(|c| c.to_hex())
            .collect();
        format!("extra {extra:?}, missing {missing:?}")
    })?;
    let non_prism = six_vertex.iter().filter(|c| **c != stacks[0]).count();
    ensure(non_prism == 6, || {
        format!("{non_prism} non-prism 6-vertex types")
    })?;
    let irreducible = six
        .iter()
        .filter(|c| !is_reducible(&polycensus::validate_polyhedral(&c.decode().unwrap()).unwrap()))
        .count();
    ensure(irreducible == 4, || {
        format!("{irreducible} irreducible six-rigid types")
    })?;
    ensure(elapsed < SIX_RIGID_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "six-rigid types up to {WIDE} vertices: the 6 non-prism 6-vertex types and prism_stack(1..=3); 4 irreducible; {elapsed:.1?} single-threaded"
    ))
}

fn identities(run: &EnumerationRun) -> Outcome {
    let mut checks = 0;
    for p in run.graphs() {
        let report = check_identities(&p);
        checks += report.checks.len();
        ensure(report.all_passed(), || {
            format!(
                "{}: {:?}",
                p.canonical_code(),
                report.failures().map(|c| c.name).collect::<Vec<_>>()
            )
        })?;
    }
    Ok(format!(
        "{checks} identity checks over {} types, zero violations",
        run.len()
    ))
}

fn round_trip(run: &EnumerationRun) -> Outcome {
    let mut splits = 0;
    let mut reducible = 0;
    for p in run.graphs().filter(|p| p.vertex_count() <= 9) {
        let cycles = separating_cycles(&p);
        if !cycles.is_empty() {
            reducible += 1;
        }
        for cycle in cycles {
            let d = split_along(&p, &cycle.vertices).map_err(|e| e.to_string())?;
            let rejoined = glue_matchings(cycle.vertices.len()).any(|m| {
                glue(
                    &d.factors[0],
                    d.cap_faces[0],
                    &d.factors[1],
                    d.cap_faces[1],
                    m,
                )
                .is_ok_and(|g| g.canonical_code() == p.canonical_code())
            });
            ensure(rejoined, || {
                format!("{} along {:?}", p.canonical_code(), cycle.vertices)
            })?;
            splits += 1;
        }
    }
    let prism = code(prism_stack(1).unwrap());
    for s in 1..=6 {
        let leaves = factorize(&prism_stack(s).unwrap()).sorted_leaves();
        ensure(leaves == vec![prism.clone(); s], || {
            format!("prism_stack({s}) factors {leaves:?}")
        })?;
    }
    Ok(format!(
        "{splits} splits of {reducible} reducible types up to 9 vertices glue back; prism_stack(s) factors into s prisms for s = 1..=6"
    ))
}

fn angles(run: &EnumerationRun) -> Outcome {
    let two = AngleSum::from_integer(2);
    let mut vertices = 0;
    for p in run.graphs() {
        let profile = p.profile();
        for v in 0..p.vertex_count() {
            if profile.nontriangular_degree[v] > RIGID_MAX_NONTRIANGULAR {
                let check = regular_angle_feasible(&p, v);
                ensure(check.sum >= two, || {
                    format!("{} vertex {v}: sum {}", p.canonical_code(), check.sum)
                })?;
                vertices += 1;
            }
        }
    }
    Ok(format!(
        "{vertices} vertices of non-triangular degree >= 4, all with angle sum >= 2 pi"
    ))
}

fn seven_rigid_bytes(run: &EnumerationRun, threads: usize) -> Vec<u8> {
    let filter = CensusFilter {
        rigid: Some(7),
        irreducible: true,
    };
    let pool = EnumerationConfig::new(WIDE)
        .with_threads(threads)
        .pool()
        .unwrap();
    let records = pool.install(|| census(run, filter));
    let mut out = Vec::new();
    for r in &records {
        serde_json::to_writer(&mut out, r).unwrap();
        out.push(b'\n');
    }
    out
}

fn determinism(first: &[u8], second: &[u8]) -> Outcome {
    ensure(first == second, || {
        format!("outputs differ ({} vs {} bytes)", first.len(), second.len())
    })?;
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok(format!(
        "irreducible seven-rigid census up to {WIDE} vertices: {lines} records, byte-identical with {} and {} workers",
        WORKERS[0], WORKERS[1]
    ))
}

fn witnesses(run: &EnumerationRun) -> Outcome {
    for s in 1..=6 {
        let p = prism_stack(s).unwrap();
        let (rigid, nonrigid) = (p.profile().rigid_count, p.profile().nonrigid_count);
        ensure(rigid == 6 && nonrigid == 3 * (s - 1), || {
            format!("prism_stack({s}): {rigid} rigid, {nonrigid} nonrigid")
        })?;
    }
    let mut candidates = Vec::new();
    for c in run.iter() {
        let p = polycensus::validate_polyhedral(&c.decode().unwrap()).unwrap();
        for (f, face) in p.faces().iter().enumerate() {
            if face.size() == 3
                && face
                    .vertices(p.embedding())
                    .iter()
                    .all(|&v| p.profile().is_rigid(v))
            {
                candidates.push((c.clone(), f));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(STELLATION_SEED);
    let sample: Vec<_> = candidates
        .choose_multiple(&mut rng, STELLATION_SAMPLES)
        .cloned()
        .collect();
    ensure(sample.len() == STELLATION_SAMPLES, || {
        "too few rigid-cornered triangles".into()
    })?;
    for (c, f) in &sample {
        let p = polycensus::validate_polyhedral(&c.decode().unwrap()).unwrap();
        let s = stellate(&p, *f).unwrap();
        let before = p.profile().rigid_count;
        let after = s.profile().rigid_count;
        ensure(after == before + 1, || {
            format!("{c} face {f}: {before} -> {after} rigid")
        })?;
    }
    Ok(format!(
        "prism_stack(1..=6) all six-rigid; stellating {STELLATION_SAMPLES} random rigid-cornered triangles adds exactly one rigid vertex each"
    ))
}

fn report(label: &str, outcome: std::thread::Result<Outcome>, failed: &mut usize) {
    let line = match outcome {
        Ok(Ok(detail)) => format!("PASS {label}: {detail}"),
        Ok(Err(detail)) => {
            *failed += 1;
            format!("FAIL {label}: {detail}")
        }
        Err(_) => {
            *failed += 1;
            format!("FAIL {label}: panicked")
        }
    };
    println!("{line}");
    std::io::stdout().flush().unwrap();
}

fn main() {
    let mut failed = 0;
    let desk = enumerate(DESK, 1);
    let guard = |f: &dyn Fn() -> Outcome| catch_unwind(AssertUnwindSafe(f));

    report(
        "criterion 1 (enumeration counts, oracle)",
        guard(&|| counts_and_oracle(&desk)),
        &mut failed,
    );
    report(
        "criterion 2 (four- and five-rigid classes)",
        guard(&|| small_classes(&desk)),
        &mut failed,
    );
    report(
        "criterion 3 (nonrigid minimum is nine)",
        guard(&|| nonrigid_minimum(&desk)),
        &mut failed,
    );

    let start = Instant::now();
    let wide = enumerate(WIDE, WORKERS[0]);
    let six = guard(&|| six_rigid(&wide, start.elapsed()));
    let first = catch_unwind(AssertUnwindSafe(|| seven_rigid_bytes(&wide, WORKERS[0])));
    drop(wide);

    report("criterion 4 (six-rigid classification)", six, &mut failed);
    report(
        "criterion 5 (counting identities)",
        guard(&|| identities(&desk)),
        &mut failed,
    );
    report(
        "criterion 6 (split and glue round trip)",
        guard(&|| round_trip(&desk)),
        &mut failed,
    );
    report(
        "criterion 7 (regular-angle excess)",
        guard(&|| angles(&desk)),
        &mut failed,
    );

    let second = catch_unwind(AssertUnwindSafe(|| {
        seven_rigid_bytes(&enumerate(WIDE, WORKERS[1]), WORKERS[1])
    }));
    let eight = match (first, second) {
        (Ok(a), Ok(b)) => Ok(determinism(&a, &b)),
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    report(
        "criterion 8 (deterministic seven-rigid census)",
        eight,
        &mut failed,
    );
    report(
        "constructive witnesses (prism stacks, stellation)",
        guard(&|| witnesses(&desk)),
        &mut failed,
    );

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
