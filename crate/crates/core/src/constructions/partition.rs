//! Optimal covering of the graph by vertex-disjoint subproblems.
//!
//! Each part of a partition is encoded independently by one of three
//! providers (partial clique / cycle / minrank), each with a nominal
//! length and locality. The subset dynamic program minimizes total length
//! over all partitions subject to a locality cap, and the winning
//! partition is emitted as a concatenated scalar code. The fractional
//! relaxation of the same program is exposed as a bound.

use super::{finish, scalar_code_from_fitting, ConstructError};
use crate::fmatrix::FMatrix;
use crate::gfield::Field;
use crate::indexcode::{validate_cached, IndexCode};
use crate::lp::{Cmp, Lp, LpOutcome};
use crate::oracles::minrank_bruteforce;
use crate::sigraph::SideInfoGraph;
use crate::{rat_usize, Rat};
use std::collections::BTreeSet;

/// Which per-part coding schemes the optimizer may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Providers {
    pub partial_clique: bool,
    pub cycle: bool,
    pub minrank: bool,
}

impl Default for Providers {
    fn default() -> Self {
        Providers {
            partial_clique: true,
            cycle: true,
            minrank: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProviderKind {
    PartialClique,
    Cycle,
    Minrank,
}

/// One part of the winning partition.
#[derive(Debug, Clone)]
pub struct PartRealization {
    pub subset: BTreeSet<usize>,
    pub provider: ProviderKind,
    pub len: usize,
    pub locality: usize,
}

/// Result of the subset dynamic program.
#[derive(Debug, Clone)]
pub struct PartitionCover {
    pub code: IndexCode,
    pub parts: Vec<PartRealization>,
    /// Total codeword length (= the rate, message length is 1).
    pub total_len: usize,
}

/// Nominal `(length, locality)` cost of encoding the induced subproblem on
/// `subset` with each enabled provider. Used identically by the DP and by
/// the exhaustive cross-check, and mirrored column-for-column by
/// [`emit_part`].
pub fn subset_options(
    g: &SideInfoGraph,
    subset: &BTreeSet<usize>,
    providers: &Providers,
    field: &Field,
    budget: u64,
) -> Vec<(ProviderKind, usize, usize)> {
    let size = subset.len();
    let mut out = Vec::new();
    if providers.partial_clique {
        let kappa = subset
            .iter()
            .map(|&i| g.side_info(i).intersection(subset).count())
            .min()
            .unwrap_or(0);
        let len = size - kappa;
        // MDS parity checks with 1 < len < size need size distinct
        // evaluation points; len == size is the identity, len == 1 the
        // plain sum, both field-independent
        let available = len == size || len == 1 || field.order() as usize >= size;
        if available {
            out.push((ProviderKind::PartialClique, len, len));
        }
    }
    if providers.cycle {
        let (len, loc) = match spanning_cycle(g, subset) {
            Some(_) if size >= 3 => (size - 1, 2),
            Some(_) => (1, 1), // bidirected pair
            None => (size, 1), // uncoded fallback
        };
        out.push((ProviderKind::Cycle, len, loc));
    }
    if providers.minrank {
        let (sub, _) = g.induced_subgraph(subset).expect("subset is nonempty");
        if let Ok(mr) = minrank_bruteforce(&sub, field, budget) {
            out.push((ProviderKind::Minrank, mr.minrank, mr.minrank));
        }
    }
    out
}

/// A directed cycle through all of `subset`, as a vertex sequence, found
/// by an ascending depth-first sweep; `None` when none exists or the
/// subset is too large to search.
fn spanning_cycle(g: &SideInfoGraph, subset: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let size = subset.len();
    if !(2..=12).contains(&size) {
        return None;
    }
    let start = *subset.iter().next().unwrap();
    let mut path = vec![start];
    let mut visited = BTreeSet::from([start]);
    fn dfs(
        g: &SideInfoGraph,
        subset: &BTreeSet<usize>,
        start: usize,
        path: &mut Vec<usize>,
        visited: &mut BTreeSet<usize>,
    ) -> Option<Vec<usize>> {
        let last = *path.last().unwrap();
        if path.len() == subset.len() {
            return g.knows(last, start).then(|| path.clone());
        }
        for &next in g.side_info(last) {
            if !subset.contains(&next) || visited.contains(&next) {
                continue;
            }
            path.push(next);
            visited.insert(next);
            if let Some(c) = dfs(g, subset, start, path, visited) {
                return Some(c);
            }
            path.pop();
            visited.remove(&next);
        }
        None
    }
    dfs(g, subset, start, &mut path, &mut visited)
}

/// Emits the scalar code for one part as `(columns over the global vertex
/// space, per-vertex query sets into those columns)`.
fn emit_part(
    g: &SideInfoGraph,
    part: &PartRealization,
    field: &Field,
    budget: u64,
) -> Result<(FMatrix, Vec<(usize, BTreeSet<usize>)>), ConstructError> {
    let n = g.n();
    let verts: Vec<usize> = part.subset.iter().copied().collect();
    let size = verts.len();
    let (sub, _) = g.induced_subgraph(&part.subset)?;
    // local scalar code on the induced subgraph
    let mut local = match part.provider {
        ProviderKind::PartialClique => {
            if part.len == size {
                super::uncoded(&sub, 1, field)
            } else {
                let mut encoder = FMatrix::zeros(field, size, part.len);
                for (v, _) in verts.iter().enumerate() {
                    let alpha = field.elt(v as u64);
                    let mut pw = field.one();
                    for t in 0..part.len {
                        encoder.set(v, t, pw);
                        pw = field.mul(pw, alpha);
                    }
                }
                let queries = vec![(0..part.len).collect::<BTreeSet<usize>>(); size];
                let code = IndexCode::new(field.clone(), size, 1, encoder, queries)?;
                refine_queries(&sub, code)?
            }
        }
        ProviderKind::Cycle => match spanning_cycle(g, &part.subset) {
            Some(cycle) if size >= 2 => {
                // local labels of the cycle order
                let local_of = |v: usize| verts.iter().position(|&w| w == v).unwrap() + 1;
                let cycle: Vec<usize> = cycle.iter().map(|&v| local_of(v)).collect();
                cycle_code_on_order(&sub, &cycle, field)?
            }
            _ => super::uncoded(&sub, 1, field),
        },
        ProviderKind::Minrank => {
            let mr = minrank_bruteforce(&sub, field, budget)?;
            scalar_code_from_fitting(&sub, &mr.witness, mr.minrank)?
        }
    };
    let report = validate_cached(&sub, &mut local)?;
    debug_assert!(report.valid);

    // lift local rows to the global vertex space
    let mut cols = FMatrix::zeros(field, n, local.code_len());
    for (a, &v) in verts.iter().enumerate() {
        for c in 0..local.code_len() {
            cols.set(v - 1, c, local.encoder().get(a, c));
        }
    }
    let queries = verts
        .iter()
        .enumerate()
        .map(|(a, &v)| (v, local.queries(a + 1).clone()))
        .collect();
    Ok((cols, queries))
}

/// Canonical cycle code along the given spanning-cycle order (local
/// 1-based labels): column `k` is `x_{c_1} + x_{c_{k+2}}`; for a pair it
/// degenerates to the single sum.
fn cycle_code_on_order(
    sub: &SideInfoGraph,
    cycle: &[usize],
    field: &Field,
) -> Result<IndexCode, ConstructError> {
    let size = sub.n();
    debug_assert_eq!(cycle.len(), size);
    let len = (size - 1).max(1);
    let mut encoder = FMatrix::zeros(field, size, len);
    let mut queries = vec![BTreeSet::new(); size];
    if size == 2 {
        encoder.set(cycle[0] - 1, 0, field.one());
        encoder.set(cycle[1] - 1, 0, field.one());
        queries[cycle[0] - 1].insert(0);
        queries[cycle[1] - 1].insert(0);
    } else {
        for k in 0..(size - 1) {
            encoder.set(cycle[0] - 1, k, field.one());
            encoder.set(cycle[k + 1] - 1, k, field.one());
        }
        queries[cycle[0] - 1].insert(0);
        queries[cycle[size - 1] - 1].insert(size - 2);
        for t in 2..size {
            queries[cycle[t - 1] - 1].insert(t - 2);
            queries[cycle[t - 1] - 1].insert(t - 1);
        }
    }
    Ok(IndexCode::new(field.clone(), size, 1, encoder, queries)?)
}

/// Replaces each receiver's query set by the support of its cached decode
/// vector (a deterministic, usually smaller, decodable subset).
fn refine_queries(g: &SideInfoGraph, mut code: IndexCode) -> Result<IndexCode, ConstructError> {
    let report = validate_cached(g, &mut code)?;
    if !report.valid {
        return Err(ConstructError::Internal(
            "part code failed validation before query refinement".into(),
        ));
    }
    let queries: Vec<BTreeSet<usize>> = report
        .receivers
        .iter()
        .map(|r| {
            let mut set = BTreeSet::new();
            for d in &r.decode_vectors {
                set.extend(d.support());
            }
            set
        })
        .collect();
    let out = IndexCode::new(
        code.field().clone(),
        code.n(),
        code.msg_len(),
        code.encoder().clone(),
        queries,
    )?;
    finish(g, out)
}

/// Exact minimum-rate partition under a locality cap, via dynamic
/// programming over vertex subsets, together with the emitted code.
pub fn partition_cover_code(
    g: &SideInfoGraph,
    r_max: usize,
    providers: &Providers,
    field: &Field,
    budget: u64,
) -> Result<PartitionCover, ConstructError> {
    let n = g.n();
    if n > 20 {
        return Err(ConstructError::TooLargeForDp { n, limit: 20 });
    }
    if r_max == 0 {
        return Err(ConstructError::NoFeasiblePartition);
    }
    let full = (1usize << n) - 1;
    // best (len, provider) per subset mask under the locality cap
    let mut best: Vec<Option<(usize, ProviderKind)>> = vec![None; full + 1];
    for mask in 1..=full {
        let subset: BTreeSet<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        for (kind, len, loc) in subset_options(g, &subset, providers, field, budget) {
            if loc <= r_max && best[mask].is_none_or(|(b, _)| len < b) {
                best[mask] = Some((len, kind));
            }
        }
    }
    let mut dp: Vec<Option<usize>> = vec![None; full + 1];
    let mut choice: Vec<usize> = vec![0; full + 1];
    dp[0] = Some(0);
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg(); // part containing the lowest vertex
        let mut sub = mask;
        while sub > 0 {
            if sub & low != 0 {
                if let (Some(rest), Some((len, _))) = (dp[mask ^ sub], best[sub]) {
                    let cost = rest + len;
                    if dp[mask].is_none_or(|c| cost < c) {
                        dp[mask] = Some(cost);
                        choice[mask] = sub;
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
    }
    let Some(total_len) = dp[full] else {
        return Err(ConstructError::NoFeasiblePartition);
    };

    // reconstruct and emit
    let mut parts = Vec::new();
    let mut mask = full;
    while mask > 0 {
        let sub = choice[mask];
        let (len, provider) = best[sub].expect("chosen parts have a cost");
        let subset: BTreeSet<usize> = (1..=n).filter(|&v| sub >> (v - 1) & 1 == 1).collect();
        let locality = subset_options(g, &subset, providers, field, budget)
            .into_iter()
            .find(|&(k, _, _)| k == provider)
            .map(|(_, _, loc)| loc)
            .expect("provider was available");
        parts.push(PartRealization {
            subset,
            provider,
            len,
            locality,
        });
        mask ^= sub;
    }
    parts.sort_by_key(|p| *p.subset.iter().next().unwrap());

    let mut encoder = FMatrix::zeros(field, n, total_len);
    let mut queries = vec![BTreeSet::new(); n];
    let mut offset = 0usize;
    for part in &parts {
        let (cols, qs) = emit_part(g, part, field, budget)?;
        debug_assert_eq!(cols.cols(), part.len);
        for c in 0..cols.cols() {
            for r in 0..n {
                encoder.set(r, offset + c, cols.get(r, c));
            }
        }
        for (v, set) in qs {
            for k in set {
                queries[v - 1].insert(offset + k);
            }
        }
        offset += part.len;
    }
    let code = IndexCode::new(field.clone(), n, 1, encoder, queries)?;
    let code = finish(g, code)?;
    debug_assert!(code.locality_profile().overall.le(&rat_usize(r_max)));
    Ok(PartitionCover {
        code,
        parts,
        total_len,
    })
}

/// Fractional relaxation of the partition program: subsets may enter with
/// weights in `[0, 1]` as long as every vertex is covered with total
/// weight one and its weighted locality stays within the cap. The optimum
/// is the rate reachable by time-sharing the per-subset codes with
/// fractional message-length splits; this computes the bound only and
/// emits no code.
pub fn partition_cover_lp_bound(
    g: &SideInfoGraph,
    r_max: &Rat,
    providers: &Providers,
    field: &Field,
    budget: u64,
) -> Result<Rat, ConstructError> {
    let n = g.n();
    // one LP variable per (subset, provider): the dense exact simplex
    // stays responsive up to a few thousand variables
    if n > 10 {
        return Err(ConstructError::TooLargeForDp { n, limit: 10 });
    }
    let full = (1usize << n) - 1;
    let mut vars: Vec<(usize, usize, usize)> = Vec::new(); // (mask, len, loc)
    for mask in 1..=full {
        let subset: BTreeSet<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        for (_, len, loc) in subset_options(g, &subset, providers, field, budget) {
            vars.push((mask, len, loc));
        }
    }
    let mut rows = Vec::new();
    for v in 1..=n {
        let cover: Vec<Rat> = vars
            .iter()
            .map(|&(mask, _, _)| {
                if mask >> (v - 1) & 1 == 1 {
                    Rat::from_integer(1.into())
                } else {
                    Rat::from_integer(0.into())
                }
            })
            .collect();
        rows.push((cover.clone(), Cmp::Eq, Rat::from_integer(1.into())));
        let weighted: Vec<Rat> = vars
            .iter()
            .map(|&(mask, _, loc)| {
                if mask >> (v - 1) & 1 == 1 {
                    rat_usize(loc)
                } else {
                    Rat::from_integer(0.into())
                }
            })
            .collect();
        rows.push((weighted, Cmp::Le, r_max.clone()));
    }
    let objective: Vec<Rat> = vars.iter().map(|&(_, len, _)| -rat_usize(len)).collect();
    match crate::lp::solve(&Lp { objective, rows }) {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        LpOutcome::Infeasible => Err(ConstructError::NoFeasiblePartition),
        LpOutcome::Unbounded => unreachable!("covering program is bounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexcode::validate;
    use crate::{rat, rat_int};

    const BUDGET: u64 = 1 << 22;

    fn gf(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    fn two_disjoint_three_cycles() -> SideInfoGraph {
        SideInfoGraph::new(
            6,
            vec![
                [2].into(),
                [3].into(),
                [1].into(),
                [5].into(),
                [6].into(),
                [4].into(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_cycles_with_budget_two() {
        let g = two_disjoint_three_cycles();
        let out = partition_cover_code(&g, 2, &Providers::default(), &gf(2), BUDGET).unwrap();
        assert_eq!(out.total_len, 4);
        assert_eq!(out.parts.len(), 2);
        assert!(validate(&g, &out.code).unwrap().valid);
        assert!(out.code.locality_profile().overall <= rat_int(2));
    }

    #[test]
    fn two_cycles_with_budget_one_fall_back_to_singletons() {
        let g = two_disjoint_three_cycles();
        let out = partition_cover_code(&g, 1, &Providers::default(), &gf(2), BUDGET).unwrap();
        assert_eq!(out.total_len, 6);
        assert_eq!(out.code.locality_profile().overall, rat_int(1));
    }

    #[test]
    fn bidirected_pair_with_partial_clique() {
        // bidirected edge {1,2} plus isolated vertex 3
        let g = SideInfoGraph::new(3, vec![[2].into(), [1].into(), BTreeSet::new()]).unwrap();
        let providers = Providers {
            partial_clique: true,
            cycle: false,
            minrank: false,
        };
        let out = partition_cover_code(&g, 1, &providers, &gf(2), BUDGET).unwrap();
        assert_eq!(out.total_len, 2);
        assert_eq!(out.code.locality_profile().overall, rat_int(1));
    }

    #[test]
    fn minrank_provider_matches_cycle_on_directed_cycles() {
        let g = SideInfoGraph::directed_cycle(4);
        let only_minrank = Providers {
            partial_clique: false,
            cycle: false,
            minrank: true,
        };
        let out = partition_cover_code(&g, 3, &only_minrank, &gf(2), BUDGET).unwrap();
        assert_eq!(out.total_len, 3);
        assert!(validate(&g, &out.code).unwrap().valid);
    }

    #[test]
    fn lp_bound_never_exceeds_the_integer_optimum() {
        let g = two_disjoint_three_cycles();
        for r_max in 1..=3usize {
            let dp =
                partition_cover_code(&g, r_max, &Providers::default(), &gf(2), BUDGET).unwrap();
            let lp = partition_cover_lp_bound(
                &g,
                &rat_int(r_max as i64),
                &Providers::default(),
                &gf(2),
                BUDGET,
            )
            .unwrap();
            assert!(lp <= rat_usize(dp.total_len), "r_max = {r_max}");
        }
    }

    #[test]
    fn vandermonde_parts_need_a_large_enough_field() {
        // 4-clique (bidirected): partial clique gives len 1 over any field
        let g = SideInfoGraph::complete_bidirected(4);
        let out = partition_cover_code(
            &g,
            1,
            &Providers {
                partial_clique: true,
                cycle: false,
                minrank: false,
            },
            &gf(2),
            BUDGET,
        )
        .unwrap();
        assert_eq!(out.total_len, 1);

        // a 4-vertex graph where every receiver knows exactly two others:
        // kappa = 2, len = 2 < 4 needs q >= 4
        let g = SideInfoGraph::new(
            4,
            vec![[2, 3].into(), [3, 4].into(), [4, 1].into(), [1, 2].into()],
        )
        .unwrap();
        let pc = Providers {
            partial_clique: true,
            cycle: false,
            minrank: false,
        };
        let subset: BTreeSet<usize> = [1, 2, 3, 4].into();
        assert!(subset_options(&g, &subset, &pc, &gf(2), BUDGET)
            .iter()
            .all(|&(_, len, _)| len == 0 || len != 2));
        let opts = subset_options(&g, &subset, &pc, &gf(5), BUDGET);
        assert_eq!(opts, vec![(ProviderKind::PartialClique, 2, 2)]);
        let out = partition_cover_code(&g, 2, &pc, &gf(5), BUDGET).unwrap();
        assert_eq!(out.total_len, 2);
        assert!(validate(&g, &out.code).unwrap().valid);
        assert_eq!(rat(2, 1), out.code.locality_profile().rate);
    }
}
