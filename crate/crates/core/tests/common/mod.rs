//! Shared randomized-instance generators for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use lodex::gfield::Field;
use lodex::sigraph::SideInfoGraph;
use rand::Rng;
use std::collections::BTreeSet;

pub fn gf(q: u64) -> Field {
    Field::new(q).unwrap()
}

/// Arbitrary side information graph: each possible edge appears with
/// probability `num/den`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> SideInfoGraph {
    let mut side_info = vec![BTreeSet::new(); n];
    for i in 1..=n {
        for j in 1..=n {
            if i != j && rng.gen_ratio(num, den) {
                side_info[i - 1].insert(j);
            }
        }
    }
    SideInfoGraph::new(n, side_info).unwrap()
}

/// Plants a directed cycle through `cycle_len` random vertices, then adds
/// `extra` random edges without ever creating a 2-cycle. The shortest
/// directed cycle of the result has length at least 3.
pub fn random_planted_cycle<R: Rng>(
    rng: &mut R,
    n: usize,
    cycle_len: usize,
    extra: usize,
) -> SideInfoGraph {
    assert!((3..=n).contains(&cycle_len));
    let mut verts: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        verts.swap(i, rng.gen_range(0..=i));
    }
    let cycle = &verts[..cycle_len];
    let mut side_info = vec![BTreeSet::new(); n];
    for t in 0..cycle_len {
        side_info[cycle[t] - 1].insert(cycle[(t + 1) % cycle_len]);
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 50 * extra.max(1) {
        attempts += 1;
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        if i == j || side_info[i - 1].contains(&j) || side_info[j - 1].contains(&i) {
            continue;
        }
        side_info[i - 1].insert(j);
        added += 1;
    }
    SideInfoGraph::new(n, side_info).unwrap()
}

/// Random directed acyclic graph: edges only run upward along a random
/// vertex order.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> SideInfoGraph {
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut pos = vec![0usize; n + 1];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut side_info = vec![BTreeSet::new(); n];
    for i in 1..=n {
        for j in 1..=n {
            if i != j && pos[i] < pos[j] && rng.gen_ratio(num, den) {
                side_info[i - 1].insert(j);
            }
        }
    }
    SideInfoGraph::new(n, side_info).unwrap()
}

/// All permutations of `items` (recursive, lexicographic by swaps).
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &y)| y)
            .collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All fixed-point-free permutations of `[N]` whose functional graph is a
/// single `N`-cycle, as `pi` arrays (`pi[i-1]` = image of `i`).
pub fn all_single_cycles(n: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (2..=n).collect();
    permutations(&rest)
        .into_iter()
        .map(|tail| {
            let mut cycle = vec![1];
            cycle.extend(tail);
            let mut pi = vec![0usize; n];
            for t in 0..n {
                pi[cycle[t] - 1] = cycle[(t + 1) % n];
            }
            pi
        })
        .collect()
}
