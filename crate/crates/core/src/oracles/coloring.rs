//! Chromatic and fractional chromatic numbers, and `a:b` colorings.

use super::OracleError;
use crate::constructions::ABColoring;
use crate::lp::{Cmp, Lp, LpOutcome};
use crate::sigraph::UndirectedGraph;
use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

fn can_color_rec(
    h: &UndirectedGraph,
    num_colors: usize,
    max_used: usize,
    coloring: &mut Vec<usize>,
    next: usize,
) -> bool {
    if next > h.n() {
        return true;
    }
    // trying more than one fresh color is symmetric; cap at max_used + 2
    for col in 1..=num_colors.min(max_used + 2) {
        let clash = (1..next).any(|u| coloring[u] == col && h.has_edge(u, next));
        if !clash {
            coloring[next] = col;
            if can_color_rec(h, num_colors, max_used.max(col), coloring, next + 1) {
                return true;
            }
            coloring[next] = 0;
        }
    }
    false
}

/// Exact chromatic number by backtracking with ascending color counts.
pub fn chromatic_number(h: &UndirectedGraph) -> usize {
    assert!(h.n() <= 20, "chromatic backtracking needs small n");
    if h.n() == 0 {
        return 0;
    }
    for k in 1..=h.n() {
        let mut coloring = vec![0usize; h.n() + 1];
        if can_color_rec(h, k, 0, &mut coloring, 1) {
            return k;
        }
    }
    h.n()
}

/// Exact fractional chromatic number via the covering LP over all maximal
/// independent sets, together with the optimal weights.
pub fn fractional_chromatic(
    h: &UndirectedGraph,
) -> Result<(Rat, Vec<(BTreeSet<usize>, Rat)>), OracleError> {
    if h.n() > 14 {
        return Err(OracleError::TooLarge(format!(
            "fractional chromatic LP limited to 14 vertices, got {}",
            h.n()
        )));
    }
    let sets = h.maximal_independent_sets();
    let rows: Vec<(Vec<Rat>, Cmp, Rat)> = (1..=h.n())
        .map(|v| {
            let coeffs = sets
                .iter()
                .map(|s| {
                    if s.contains(&v) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            (coeffs, Cmp::Ge, Rat::one())
        })
        .collect();
    let objective = vec![-Rat::one(); sets.len()];
    match crate::lp::solve(&Lp { objective, rows }) {
        LpOutcome::Optimal { value, solution } => {
            let chif = -value;
            let weights = sets.into_iter().zip(solution).collect();
            Ok((chif, weights))
        }
        _ => unreachable!("covering LP is feasible and bounded"),
    }
}

/// Optimal `a:b` coloring realized from the covering LP: each independent
/// set with weight `p/s` contributes a block of `p·(b/s)` colors, and each
/// vertex keeps its first `b` colors.
pub fn optimal_ab_coloring(h: &UndirectedGraph) -> Result<ABColoring, OracleError> {
    let (chif, weights) = fractional_chromatic(h)?;
    let mut b = BigInt::one();
    for (_, w) in &weights {
        if w.is_positive() {
            b = b.lcm(w.denom());
        }
    }
    let b_int = usize::try_from(&b).expect("message lengths stay desk-scale");
    let mut classes = vec![BTreeSet::new(); h.n()];
    let mut next_color = 1usize;
    for (set, w) in &weights {
        if !w.is_positive() {
            continue;
        }
        let count = (w.clone() * Rat::from_integer(b.clone())).to_integer();
        let count = usize::try_from(&count).expect("desk-scale");
        let block: Vec<usize> = (next_color..next_color + count).collect();
        next_color += count;
        for &v in set {
            classes[v - 1].extend(block.iter().copied());
        }
    }
    // every vertex is covered at least b times; keep the first b colors
    for c in classes.iter_mut() {
        debug_assert!(c.len() >= b_int);
        while c.len() > b_int {
            let last = *c.iter().next_back().unwrap();
            c.remove(&last);
        }
    }
    let a = next_color - 1;
    let coloring = ABColoring {
        a,
        b: b_int,
        classes,
    };
    debug_assert_eq!(coloring.ratio(), chif, "a/b must equal the LP optimum");
    debug_assert!(coloring.check(h).is_ok());
    Ok(coloring)
}

/// Searches for an `a:b` coloring by backtracking over vertices; new
/// colors are introduced in ascending order to cut palette symmetry.
/// Returns a witness or `None` when none exists.
pub fn ab_coloring(h: &UndirectedGraph, a: usize, b: usize) -> Option<ABColoring> {
    assert!(h.n() <= 16, "a:b coloring search needs small n");
    if b == 0 || b > a {
        return None;
    }
    fn combos(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if pool.len() < k {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (i, &x) in pool.iter().enumerate() {
            for mut rest in combos(&pool[i + 1..], k - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }
    fn rec(
        h: &UndirectedGraph,
        a: usize,
        b: usize,
        used: usize,
        classes: &mut Vec<BTreeSet<usize>>,
        v: usize,
    ) -> bool {
        if v > h.n() {
            return true;
        }
        let mut forbidden = BTreeSet::new();
        for u in 1..v {
            if h.has_edge(u, v) {
                forbidden.extend(classes[u - 1].iter().copied());
            }
        }
        let avail_old: Vec<usize> = (1..=used).filter(|c| !forbidden.contains(c)).collect();
        for fresh in 0..=b.min(a - used) {
            if b - fresh > avail_old.len() {
                continue;
            }
            for old in combos(&avail_old, b - fresh) {
                let mut c: BTreeSet<usize> = old.iter().copied().collect();
                c.extend(used + 1..=used + fresh);
                classes[v - 1] = c;
                if rec(h, a, b, used + fresh, classes, v + 1) {
                    return true;
                }
                classes[v - 1].clear();
            }
        }
        false
    }
    let mut classes = vec![BTreeSet::new(); h.n()];
    if rec(h, a, b, 0, &mut classes, 1) {
        let coloring = ABColoring { a, b, classes };
        debug_assert!(coloring.check(h).is_ok());
        Some(coloring)
    } else {
        None
    }
}
