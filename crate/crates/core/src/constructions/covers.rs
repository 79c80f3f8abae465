//! Cover-based schemes: acyclic-induced-subgraph covers, circular
//! symmetry, and the covering-code separation construction.

use super::{finish, scalar_code_from_fitting, solve_query_set, ConstructError};
use crate::fmatrix::{FMatrix, FVector};
use crate::gfield::Field;
use crate::indexcode::{fitting_matrix_of, time_share, IndexCode};
use crate::oracles::{find_fitting_with_rank, minrank_bruteforce, SyndromeTable};
use crate::sigraph::SideInfoGraph;
use std::collections::BTreeSet;

/// A family of vertex subsets covering every vertex at least `fold` times,
/// each inducing an acyclic subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AISCover {
    pub subsets: Vec<BTreeSet<usize>>,
    pub fold: usize,
}

impl AISCover {
    pub fn check(&self, g: &SideInfoGraph) -> Result<(), ConstructError> {
        if self.subsets.is_empty() || self.fold == 0 {
            return Err(ConstructError::BadCover(
                "need at least one subset and fold >= 1".into(),
            ));
        }
        let mut coverage = vec![0usize; g.n() + 1];
        for s in &self.subsets {
            if s.is_empty() {
                return Err(ConstructError::BadCover("empty subset".into()));
            }
            for &v in s {
                if v == 0 || v > g.n() {
                    return Err(ConstructError::BadCover(format!("vertex {v} out of range")));
                }
                coverage[v] += 1;
            }
            let (sub, _) = g.induced_subgraph(s)?;
            if !sub.is_acyclic() {
                return Err(ConstructError::BadCover(format!(
                    "subset {s:?} induces a directed cycle"
                )));
            }
        }
        for v in 1..=g.n() {
            if coverage[v] < self.fold {
                return Err(ConstructError::BadCover(format!(
                    "vertex {v} is covered {} < fold {}",
                    coverage[v], self.fold
                )));
            }
        }
        Ok(())
    }
}

/// All `t`-subsets of the vertex set, a `C(N-1, t-1)`-fold cover; requires
/// every directed cycle to be longer than `t`.
pub fn t_subset_cover(g: &SideInfoGraph, t: usize) -> Result<AISCover, ConstructError> {
    let n = g.n();
    if t == 0 || t > n {
        return Err(ConstructError::BadCover(format!(
            "subset size {t} out of range 1..={n}"
        )));
    }
    if let Some((girth, _)) = g.shortest_directed_cycle() {
        if girth <= t {
            return Err(ConstructError::CycleTooShort { girth, t });
        }
    }
    let mut subsets = Vec::new();
    let mut current: Vec<usize> = (1..=t).collect();
    loop {
        subsets.push(current.iter().copied().collect::<BTreeSet<usize>>());
        // next lexicographic combination
        let mut i = t;
        while i > 0 && current[i - 1] == n - (t - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..t {
            current[j] = current[j - 1] + 1;
        }
    }
    let fold = binomial(n - 1, t - 1);
    Ok(AISCover { subsets, fold })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Reorders a scalar code so its first columns are the fitting columns of
/// the vertices in `s` (in topological order), giving those receivers
/// locality 1 while keeping the column space, length and validity.
pub fn ais_scalar_code(
    g: &SideInfoGraph,
    s: &BTreeSet<usize>,
    base: &IndexCode,
) -> Result<IndexCode, ConstructError> {
    if base.msg_len() != 1 {
        return Err(ConstructError::BadCover(
            "the base must be a scalar code".into(),
        ));
    }
    let (sub, map) = g.induced_subgraph(s)?;
    let Some(order) = sub.topological_order() else {
        return Err(ConstructError::NotAcyclic);
    };
    let order: Vec<usize> = order.into_iter().map(|a| map[a - 1]).collect();
    let fitting = fitting_matrix_of(g, base)?.into_matrix();
    let field = base.field().clone();
    let n = g.n();
    let len = base.code_len();

    // topological order makes these fitting columns linearly independent
    let lead: Vec<FVector> = order.iter().map(|&v| fitting.column(v - 1)).collect();
    let mut chosen = lead.clone();
    {
        let base_cols = base.encoder().columns();
        let mut pool = lead.clone();
        let mut extension_idx = Vec::new();
        for (c, col) in base_cols.iter().enumerate() {
            pool.push(col.clone());
            if crate::fmatrix::span_rank(&pool) > chosen.len() + extension_idx.len() {
                extension_idx.push(c);
            } else {
                pool.pop();
            }
        }
        for &c in &extension_idx {
            chosen.push(base_cols[c].clone());
        }
        // pad with unused base columns to keep the length unchanged
        for c in 0..len {
            if chosen.len() == len {
                break;
            }
            if !extension_idx.contains(&c) {
                chosen.push(base_cols[c].clone());
            }
        }
    }
    debug_assert_eq!(chosen.len(), len);
    let encoder = FMatrix::from_columns(&field, n, &chosen);
    debug_assert_eq!(encoder.rank(), base.encoder().rank());

    let mut queries: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for i in 1..=n {
        if let Some(pos) = order.iter().position(|&v| v == i) {
            queries.push(BTreeSet::from([pos]));
        } else {
            queries.push(solve_query_set(&encoder, &fitting.column(i - 1))?);
        }
    }
    let code = IndexCode::new(field, n, 1, encoder, queries)?;
    finish(g, code)
}

/// Vector code from an AIS cover: one scalar code per subset, reordered so
/// the covered receivers read a single symbol, then time-shared. With `P`
/// subsets covering everyone `Q`-fold at scalar length `ℓ`, the locality
/// is at most `(Q + (P-Q)ℓ)/P` and the rate is `ℓ`.
pub fn ais_cover_code(
    g: &SideInfoGraph,
    cover: &AISCover,
    len: usize,
    field: &Field,
    budget: u64,
) -> Result<IndexCode, ConstructError> {
    cover.check(g)?;
    let n = g.n();
    if len > n {
        return Err(ConstructError::BadCover(format!(
            "scalar length {len} exceeds N = {n}"
        )));
    }
    let mr = minrank_bruteforce(g, field, budget)?;
    if len < mr.minrank {
        return Err(ConstructError::BadCover(format!(
            "scalar length {len} is below the minrank {}",
            mr.minrank
        )));
    }
    let base = scalar_code_from_fitting(g, &mr.witness, len)?;
    let constituents: Vec<IndexCode> = cover
        .subsets
        .iter()
        .map(|s| ais_scalar_code(g, s, &base))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&IndexCode> = constituents.iter().collect();
    let mults = vec![1u64; refs.len()];
    finish(g, time_share(&refs, &mults)?)
}

/// Vector code for circularly symmetric graphs: takes a rank-`len` fitting
/// matrix, keeps `len` independent columns, and time-shares its `N` cyclic
/// shifts. Each receiver reads a single symbol in `len` of the `N` rounds,
/// so the locality is at most `len(N - len + 1)/N` at rate `len`.
pub fn cyclic_symmetry_code(
    g: &SideInfoGraph,
    len: usize,
    field: &Field,
    budget: u64,
) -> Result<IndexCode, ConstructError> {
    if !g.has_cyclic_automorphism() {
        return Err(ConstructError::NotCyclic);
    }
    let n = g.n();
    if len == 0 || len > n {
        return Err(ConstructError::NoFittingMatrix { target: len });
    }
    let fitting = find_fitting_with_rank(g, field, len, budget)?
        .ok_or(ConstructError::NoFittingMatrix { target: len })?;
    let basis = crate::fmatrix::independent_subset_indices(&fitting.columns());
    debug_assert_eq!(basis.len(), len);

    // shifted column: entry r of column c of A moves to row (r + shift) % n
    let shifted_col = |c: usize, shift: usize| {
        let mut v = FVector::zero(field, n);
        for r in 0..n {
            v.set((r + shift) % n, fitting.get(r, c));
        }
        v
    };

    let mut constituents = Vec::with_capacity(n);
    for j in 1..=n {
        let cols: Vec<FVector> = basis.iter().map(|&b| shifted_col(b, j)).collect();
        let encoder = FMatrix::from_columns(field, n, &cols);
        let mut queries: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
        for i in 1..=n {
            // the fitting column of receiver i in round j is the shifted
            // column (i - j) mod n of A
            let src = (i as i64 - j as i64 - 1).rem_euclid(n as i64) as usize;
            if let Some(pos) = basis.iter().position(|&b| b == src) {
                queries.push(BTreeSet::from([pos]));
            } else {
                queries.push(solve_query_set(&encoder, &shifted_col(src, j))?);
            }
        }
        let code = IndexCode::new(field.clone(), n, 1, encoder, queries)?;
        constituents.push(finish(g, code)?);
    }
    let refs: Vec<&IndexCode> = constituents.iter().collect();
    let mults = vec![1u64; refs.len()];
    finish(g, time_share(&refs, &mults)?)
}

/// Separation scheme: multiplies an optimal scalar encoder by the
/// parity-check matrix of a covering code. Every fitting column is then a
/// combination of at most `radius` codeword columns, so each receiver
/// queries at most that many symbols, at rate equal to the covering
/// code's length.
pub fn covering_separation_code(
    g: &SideInfoGraph,
    base: &IndexCode,
    parity_check: &FMatrix,
    max_locality: usize,
    budget: u64,
) -> Result<IndexCode, ConstructError> {
    if base.msg_len() != 1 {
        return Err(ConstructError::BadCover(
            "the base must be a scalar code".into(),
        ));
    }
    if base.field() != parity_check.field() {
        return Err(ConstructError::Code(
            crate::indexcode::CodeError::MixedFields,
        ));
    }
    if parity_check.rows() != base.code_len() {
        return Err(ConstructError::BadCover(format!(
            "parity check has {} rows but the base code has length {}",
            parity_check.rows(),
            base.code_len()
        )));
    }
    let table = SyndromeTable::build(parity_check, budget)?;
    let radius = table.radius()?;
    if radius > max_locality {
        return Err(ConstructError::RadiusExceeded {
            radius,
            max: max_locality,
        });
    }
    let fitting = fitting_matrix_of(g, base)?.into_matrix();
    let n = g.n();
    let encoder = base.encoder().mul(parity_check);
    let mut queries = Vec::with_capacity(n);
    for i in 1..=n {
        let syndrome = base
            .encoder()
            .solve(&fitting.column(i - 1))?
            .expect("fitting columns lie in the base column space");
        let y = table
            .min_combination(&syndrome)
            .expect("finite radius covers every syndrome");
        debug_assert!(y.weight() <= radius);
        queries.push(y.support().into_iter().collect::<BTreeSet<usize>>());
    }
    let code = IndexCode::new(base.field().clone(), n, 1, encoder, queries)?;
    finish(g, code)
}

/// Parity-check matrix of the Hamming code over `F_q` with redundancy `k`:
/// one column per 1-dimensional subspace of `F_q^k` (covering radius 1).
pub fn hamming_parity_check(field: &Field, k: usize) -> FMatrix {
    let cols = projective_columns(field, k);
    FMatrix::from_columns(field, k, &cols)
}

/// All nonzero vectors of `F_q^k` whose first nonzero entry is 1, in
/// ascending odometer order.
fn projective_columns(field: &Field, k: usize) -> Vec<FVector> {
    let q = field.order() as u64;
    let total = q.pow(k as u32);
    let mut cols = Vec::new();
    for mut idx in 1..total {
        let mut v = FVector::zero(field, k);
        for r in 0..k {
            v.set(r, field.elt(idx % q));
            idx /= q;
        }
        let lead = v.support().first().copied();
        if let Some(t) = lead {
            if v.get(t) == field.one() {
                cols.push(v);
            }
        }
    }
    cols
}

/// Exhaustive search for the shortest parity-check matrix with `k` rows
/// and covering radius at most `r`, scanning column subsets of the
/// projective representatives. Small parameters only.
pub fn search_covering_parity_check(
    field: &Field,
    k: usize,
    r: usize,
    max_len: usize,
    budget: u64,
) -> Result<Option<FMatrix>, ConstructError> {
    let pool = projective_columns(field, k);
    for len in 1..=max_len.min(pool.len()) {
        let mut pick: Vec<usize> = (0..len).collect();
        loop {
            let cols: Vec<FVector> = pick.iter().map(|&i| pool[i].clone()).collect();
            let h = FMatrix::from_columns(field, k, &cols);
            if let Ok(table) = SyndromeTable::build(&h, budget) {
                if let Ok(radius) = table.radius() {
                    if radius <= r {
                        return Ok(Some(h));
                    }
                }
            }
            // next combination
            let mut i = len;
            while i > 0 && pick[i - 1] == pool.len() - (len - i) - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            for j in i..len {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    Ok(None)
}
