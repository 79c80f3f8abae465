//! Scalar codes realizing a prescribed locality vector at rate `N-1` on
//! graphs where each receiver knows exactly one message (`K_i = {π(i)}`
//! for a fixed-point-free permutation `π`).
//!
//! A locality vector of positive integers is feasible at rate `N-1` iff
//! its entries sum to at least `2(N-1)`. The construction builds a
//! bipartite query graph whose receiver degrees are the localities and
//! whose code-symbol degrees are all 2, signs the edges so that each code
//! symbol's two weights cancel, and then solves a triangular system for
//! the encoder columns.

use super::{finish, ConstructError};
use crate::fmatrix::{FMatrix, FVector};
use crate::gfield::Field;
use crate::indexcode::IndexCode;
use crate::sigraph::SideInfoGraph;
use std::collections::{BTreeMap, BTreeSet};

/// Bipartite graph between receivers `u_1..u_N` and code symbols
/// `v_1..v_{N-1}` recording who queries what, with edge weights `±1`.
#[derive(Debug, Clone)]
pub struct BipartiteQueryGraph {
    n: usize,
    /// `R_i` as 0-based code-symbol indices, per receiver.
    queries: Vec<BTreeSet<usize>>,
    /// Weight sign of each edge `(receiver 1-based, symbol 0-based)`.
    weights: BTreeMap<(usize, usize), i8>,
}

impl BipartiteQueryGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn queries(&self, i: usize) -> &BTreeSet<usize> {
        &self.queries[i - 1]
    }

    /// Weight sign of the edge `{u_i, v_k}` (`k` 0-based).
    pub fn weight(&self, i: usize, k: usize) -> i8 {
        self.weights[&(i, k)]
    }

    /// Weight as a field element; in characteristic 2 both signs are 1.
    pub fn weight_in(&self, field: &Field, i: usize, k: usize) -> crate::gfield::Felt {
        if self.weight(i, k) > 0 {
            field.one()
        } else {
            field.minus_one()
        }
    }
}

/// Sequential construction: receiver `i <= N-1` gets its
/// own symbol `v_i` plus the `r_i - 1` lowest-indexed symbols that still
/// have degree 1; the last receiver picks up every remaining degree-1
/// symbol. Requires `r` ascending with `Σ r_i = 2(N-1)`.
pub fn bipartite_query_graph(r: &[u64]) -> Result<BipartiteQueryGraph, ConstructError> {
    let n = r.len();
    if n < 2 {
        return Err(ConstructError::InfeasibleDegrees(
            "need at least two receivers".into(),
        ));
    }
    if r.contains(&0) {
        return Err(ConstructError::InfeasibleDegrees(
            "localities must be strictly positive".into(),
        ));
    }
    if r.windows(2).any(|w| w[0] > w[1]) {
        return Err(ConstructError::InfeasibleDegrees(
            "localities must be ascending; relabel first".into(),
        ));
    }
    let sum: u64 = r.iter().sum();
    if sum != 2 * (n as u64 - 1) {
        return Err(ConstructError::InfeasibleDegrees(format!(
            "degree sum {sum} != 2(N-1) = {}",
            2 * (n - 1)
        )));
    }
    // the ascending prefix bound r_1 + ... + r_i <= 2i - 1 follows from the
    // two checks above, so each step below finds enough degree-1 symbols
    let mut degree = vec![0usize; n - 1];
    let mut queries = vec![BTreeSet::new(); n];
    let mut weights = BTreeMap::new();
    let mut connect = |i: usize, k: usize, degree: &mut Vec<usize>| {
        let sign = if degree[k] == 0 { 1i8 } else { -1i8 };
        degree[k] += 1;
        queries[i - 1].insert(k);
        weights.insert((i, k), sign);
    };
    for i in 1..=(n - 1) {
        connect(i, i - 1, &mut degree);
        let mut needed = r[i - 1] as usize - 1;
        for k in 0..(i - 1) {
            if needed == 0 {
                break;
            }
            if degree[k] == 1 {
                connect(i, k, &mut degree);
                needed -= 1;
            }
        }
        if needed > 0 {
            return Err(ConstructError::InfeasibleDegrees(format!(
                "prefix bound violated at receiver {i}"
            )));
        }
    }
    for k in 0..(n - 1) {
        if degree[k] == 1 {
            connect(n, k, &mut degree);
        }
    }
    debug_assert!(degree.iter().all(|&d| d == 2));
    debug_assert_eq!(queries[n - 1].len(), r[n - 1] as usize);
    Ok(BipartiteQueryGraph {
        n,
        queries,
        weights,
    })
}

/// Output of [`feasible_locality_code`].
#[derive(Debug, Clone)]
pub struct FeasibleLocalityCode {
    pub code: IndexCode,
    /// Whether `π` is a single `N`-cycle (the construction also accepts
    /// unions of cycles; this flag reports which case arrived).
    pub single_cycle: bool,
    /// The locality budget actually spent, after trimming any excess above
    /// `2(N-1)` from the largest entries.
    pub spent_localities: Vec<u64>,
}

/// Builds a scalar code of length `N-1` for `K_i = {π(i)}` whose receiver
/// localities are at most the requested `r`. Fails with
/// `InfeasibleLocalities` iff `Σ r_i < 2(N-1)`.
pub fn feasible_locality_code(
    pi: &[usize],
    r: &[u64],
    field: &Field,
) -> Result<FeasibleLocalityCode, ConstructError> {
    let n = pi.len();
    if n < 2 || r.len() != n {
        return Err(ConstructError::InfeasibleDegrees(
            "need N >= 2 and one locality per receiver".into(),
        ));
    }
    let mut seen = vec![false; n + 1];
    for (i, &p) in pi.iter().enumerate() {
        if p == 0 || p > n || seen[p] {
            return Err(ConstructError::InfeasibleDegrees(format!(
                "pi is not a permutation of 1..={n}"
            )));
        }
        if p == i + 1 {
            return Err(ConstructError::InfeasibleDegrees(format!(
                "pi fixes {p}; side information must be another message"
            )));
        }
        seen[p] = true;
    }
    if r.contains(&0) {
        return Err(ConstructError::InfeasibleDegrees(
            "localities must be strictly positive".into(),
        ));
    }
    let sum: u64 = r.iter().sum();
    let required = 2 * (n as u64 - 1);
    if sum < required {
        return Err(ConstructError::InfeasibleLocalities { sum, required });
    }
    // spend exactly 2(N-1): trim the excess from the largest entries,
    // breaking ties toward the largest index
    let mut spent = r.to_vec();
    let mut excess = sum - required;
    while excess > 0 {
        let (idx, _) = spent
            .iter()
            .enumerate()
            .max_by_key(|(i, &v)| (v, *i))
            .expect("nonempty");
        debug_assert!(
            spent[idx] > 1,
            "an all-ones vector has no excess for N >= 2"
        );
        spent[idx] -= 1;
        excess -= 1;
    }

    // relabel receivers so the spent localities ascend (stable)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (spent[i], i));
    let mut rho = vec![0usize; n + 1]; // original (1-based) -> sorted (1-based)
    for (new, &old) in order.iter().enumerate() {
        rho[old + 1] = new + 1;
    }
    let sorted_r: Vec<u64> = order.iter().map(|&i| spent[i]).collect();
    let pi_sorted: Vec<usize> = order.iter().map(|&old| rho[pi[old]]).collect();

    let b = bipartite_query_graph(&sorted_r)?;

    // fitting columns a_i = e_i - e_{pi(i)} in the sorted labels
    let fit_col = |i: usize| {
        let mut v = FVector::zero(field, n);
        v.set(i - 1, field.one());
        v.set(pi_sorted[i - 1] - 1, field.minus_one());
        v
    };

    // the query structure makes a_i = sum_{k in R_i} w_{i,k} L_k a
    // triangular system in L_1..L_{N-1}; solve in index order
    let mut cols: Vec<FVector> = Vec::with_capacity(n - 1);
    for i in 1..=(n - 1) {
        let mut rhs = fit_col(i);
        for &k in b.queries(i) {
            if k == i - 1 {
                continue;
            }
            let w = b.weight_in(field, i, k);
            rhs = rhs.sub(&cols[k].scale(w));
        }
        let w_own = b.weight_in(field, i, i - 1);
        let inv = field.inv(w_own).expect("weights are units");
        cols.push(rhs.scale(inv));
    }
    // the last receiver's equation is dependent on the others
    debug_assert!({
        let mut acc = FVector::zero(field, n);
        for &k in b.queries(n) {
            acc = acc.add(&cols[k].scale(b.weight_in(field, n, k)));
        }
        acc == fit_col(n)
    });

    // map the sorted labels back to the original ones
    let mut encoder = FMatrix::zeros(field, n, n - 1);
    for orig in 1..=n {
        let srt = rho[orig];
        for k in 0..(n - 1) {
            encoder.set(orig - 1, k, cols[k].get(srt - 1));
        }
    }
    let queries = (1..=n).map(|orig| b.queries(rho[orig]).clone()).collect();

    let g = SideInfoGraph::from_permutation(pi)?;
    let code = IndexCode::new(field.clone(), n, 1, encoder, queries)?;
    let code = finish(&g, code)?;
    let single_cycle = {
        let mut visited = 1usize;
        let mut at = pi[0];
        while at != 1 {
            at = pi[at - 1];
            visited += 1;
        }
        visited == n
    };
    let mut spent_original = vec![0u64; n];
    for orig in 1..=n {
        spent_original[orig - 1] = sorted_r[rho[orig] - 1];
    }
    Ok(FeasibleLocalityCode {
        code,
        single_cycle,
        spent_localities: spent_original,
    })
}
