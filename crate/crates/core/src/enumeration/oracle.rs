//! Reference enumeration by exhaustive search over labeled graphs.
//!
//! Edge subsets of the complete graph are searched with the labels ordered
//! by non-increasing degree, which every isomorphism class admits. A
//! survivor must be 3-connected, and it is planar exactly when its induced
//! non-separating cycles bound a sphere: every edge lies on two of them,
//! `V - E + F = 2`, and they orient coherently. Those cycles are then the
//! faces, which give the rotation system directly.

use std::collections::BTreeSet;

use super::EnumerationError;
use crate::embedding::{canonical_code, CanonicalCode, Embedding};

pub const ORACLE_MAX_VERTICES: usize = 8;

/// Sorted canonical codes of every polyhedral graph on `n` vertices.
pub fn brute_force_oracle(n: usize) -> Result<Vec<CanonicalCode>, EnumerationError> {
    if !(4..=ORACLE_MAX_VERTICES).contains(&n) {
        return Err(EnumerationError::OutOfOracleRange(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    // remaining[k][v]: pairs at index >= k that touch v
    let mut remaining = vec![vec![0usize; n]; pairs.len() + 1];
    for k in (0..pairs.len()).rev() {
        remaining[k] = remaining[k + 1].clone();
        remaining[k][pairs[k].0] += 1;
        remaining[k][pairs[k].1] += 1;
    }
    let mut search = Search {
        n,
        pairs,
        remaining,
        adj: vec![0; n],
        degree: vec![0; n],
        edges: 0,
        found: BTreeSet::new(),
    };
    search.descend(0);
    Ok(search.found.into_iter().collect())
}

struct Search {
    n: usize,
    pairs: Vec<(usize, usize)>,
    remaining: Vec<Vec<usize>>,
    adj: Vec<u32>,
    degree: Vec<usize>,
    edges: usize,
    found: BTreeSet<CanonicalCode>,
}

impl Search {
    /// Vertices `0..done` have every incident pair decided once pair `k`
    /// is next.
    fn feasible(&self, k: usize) -> bool {
        let n = self.n;
        if self.edges > 3 * n - 6 {
            return false;
        }
        let done = if k == self.pairs.len() {
            n
        } else {
            self.pairs[k].0
        };
        for v in 0..n {
            if self.degree[v] + self.remaining[k][v] < 3 {
                return false;
            }
        }
        for v in 1..done {
            if self.degree[v] > self.degree[v - 1] {
                return false;
            }
        }
        // degrees only grow, and each later label ends no higher than the
        // last finished one
        if done > 0 {
            let cap = self.degree[done - 1];
            if (done..n).any(|v| self.degree[v] > cap) {
                return false;
            }
        }
        true
    }

    fn descend(&mut self, k: usize) {
        if !self.feasible(k) {
            return;
        }
        if k == self.pairs.len() {
            if let Some(lists) = self.sphere_rotation() {
                let e = Embedding::from_neighbor_lists(&lists).expect("faces pair every edge");
                self.found.insert(canonical_code(&e));
            }
            return;
        }
        let (i, j) = self.pairs[k];
        self.descend(k + 1);
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        self.degree[i] += 1;
        self.degree[j] += 1;
        self.edges += 1;
        self.descend(k + 1);
        self.adj[i] &= !(1 << j);
        self.adj[j] &= !(1 << i);
        self.degree[i] -= 1;
        self.degree[j] -= 1;
        self.edges -= 1;
    }

    fn connected_without(&self, removed: u32) -> bool {
        let all = (1u32 << self.n) - 1;
        let alive = all & !removed;
        if alive == 0 {
            return true;
        }
        let mut seen = alive & alive.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & alive & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == alive
    }

    fn three_connected(&self) -> bool {
        (0..self.n).all(|u| (u..self.n).all(|v| self.connected_without((1 << u) | (1 << v))))
    }

    /// Induced cycles whose removal leaves the graph connected, each once.
    fn peripheral_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.n);
        for s in 0..self.n {
            path.push(s);
            self.grow(&mut path, 1 << s, &mut out);
            path.pop();
        }
        out
    }

    fn grow(&self, path: &mut Vec<usize>, on_path: u32, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        let interior = on_path & !(1 << s) & !(1 << last);
        let mut candidates = self.adj[last] & !on_path & !((2u32 << s) - 1);
        while candidates != 0 {
            let w = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.adj[w] & interior != 0 {
                continue;
            }
            if path.len() >= 2 && self.adj[w] & (1 << s) != 0 {
                // closes a chordless cycle; listed once, in the direction
                // whose second vertex is smaller than the last
                if path[1] < w && self.connected_without(on_path | (1 << w)) {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    out.push(cycle);
                }
                continue;
            }
            path.push(w);
            self.grow(path, on_path | (1 << w), out);
            path.pop();
        }
    }

    /// Rotation lists when the graph is polyhedral, built from its faces.
    fn sphere_rotation(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.n;
        if !self.three_connected() {
            return None;
        }
        let mut faces = self.peripheral_cycles();
        if n + faces.len() != self.edges + 2 {
            return None;
        }
        // face_of[u][v]: faces using edge {u, v}
        let mut face_of = vec![vec![Vec::new(); n]; n];
        for (f, cycle) in faces.iter().enumerate() {
            for (a, b) in cycle_edges(cycle) {
                face_of[a.min(b)][a.max(b)].push(f);
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let expected = if self.adj[u] & (1 << v) != 0 { 2 } else { 0 };
                if face_of[u][v].len() != expected {
                    return None;
                }
            }
        }

        // orient so that neighboring faces cross their shared edge in
        // opposite directions
        let mut oriented = vec![false; faces.len()];
        oriented[0] = true;
        let mut stack = vec![0];
        while let Some(f) = stack.pop() {
            for (a, b) in cycle_edges(&faces[f]).collect::<Vec<_>>() {
                let pair = &face_of[a.min(b)][a.max(b)];
                let g = if pair[0] == f { pair[1] } else { pair[0] };
                let forward = cycle_edges(&faces[g]).any(|e| e == (a, b));
                if oriented[g] {
                    if forward {
                        return None;
                    }
                } else {
                    if forward {
                        faces[g].reverse();
                    }
                    oriented[g] = true;
                    stack.push(g);
                }
            }
        }
        if oriented.iter().any(|o| !o) {
            return None;
        }

        // a face through u, v, w turns from u to w at v
        let mut turn = vec![vec![usize::MAX; n]; n];
        for cycle in &faces {
            let k = cycle.len();
            for i in 0..k {
                let (u, v, w) = (cycle[i], cycle[(i + 1) % k], cycle[(i + 2) % k]);
                if turn[v][u] != usize::MAX {
                    return None;
                }
                turn[v][u] = w;
            }
        }
        let mut lists = Vec::with_capacity(n);
        for v in 0..n {
            let first = self.adj[v].trailing_zeros() as usize;
            let mut list = vec![first];
            let mut u = turn[v][first];
            while u != first {
                if u == usize::MAX || list.len() > self.degree[v] {
                    return None;
                }
                list.push(u);
                u = turn[v][u];
            }
            if list.len() != self.degree[v] {
                return None;
            }
            lists.push(list);
        }
        Some(lists)
    }
}

fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let k = cycle.len();
    (0..k).map(move |i| (cycle[i], cycle[(i + 1) % k]))
}
