//! Achievability schemes, each emitted as a concrete [`IndexCode`].
//!
//! - uncoded transmission and the fractional-coloring code (locality 1),
//! - the cycle family: scalar pivot codes, their time-shared vector
//!   version, and message-length-constrained variants ([`cycles`]),
//! - scalar codes realizing a prescribed locality vector on permutation
//!   graphs at rate `N-1` ([`feasible`]),
//! - covers: acyclic-induced-subgraph covers, circular symmetry,
//!   covering-code separation ([`covers`]),
//! - exact partition covering via subset dynamic programming
//!   ([`partition`]).
//!
//! Every constructor validates its output against the target graph before
//! returning, so emitted codes always carry decode coefficients.

mod covers;
mod cycles;
mod feasible;
mod partition;

pub use covers::{
    ais_cover_code, ais_scalar_code, covering_separation_code, cyclic_symmetry_code,
    hamming_parity_check, search_covering_parity_check, t_subset_cover, AISCover,
};
pub use cycles::{
    cycle_code_for_message_length, cycle_scalar_code, cycle_vector_code, minrank_nm1_code,
    MinrankNm1Note,
};
pub use feasible::{
    bipartite_query_graph, feasible_locality_code, BipartiteQueryGraph, FeasibleLocalityCode,
};
pub use partition::{
    partition_cover_code, partition_cover_lp_bound, subset_options, PartRealization,
    PartitionCover, ProviderKind, Providers,
};

use crate::fmatrix::{FMatrix, FVector, MatError};
use crate::gfield::Field;
use crate::indexcode::{validate_cached, CodeError, IndexCode};
use crate::oracles::OracleError;
use crate::sigraph::{GraphError, SideInfoGraph, UndirectedGraph};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("coloring is not a valid a:b coloring of the interference graph: {0}")]
    BadColoring(String),
    #[error("infeasible degree sequence: {0}")]
    InfeasibleDegrees(String),
    #[error("locality vector is infeasible: sum {sum} < 2(N-1) = {required}")]
    InfeasibleLocalities { sum: u64, required: u64 },
    #[error("induced subgraph contains a directed cycle")]
    NotAcyclic,
    #[error("invalid AIS cover: {0}")]
    BadCover(String),
    #[error("graph has a directed cycle of length {girth} <= t = {t}")]
    CycleTooShort { girth: usize, t: usize },
    #[error("the cyclic shift is not an automorphism of this graph")]
    NotCyclic,
    #[error("no fitting matrix of rank {target} exists for this graph over this field")]
    NoFittingMatrix { target: usize },
    #[error("covering radius {radius} exceeds the locality budget {max}")]
    RadiusExceeded { radius: usize, max: usize },
    #[error("no partition satisfies the locality budget")]
    NoFeasiblePartition,
    #[error("{n} receivers exceed the subset sweep limit of {limit}")]
    TooLargeForDp { n: usize, limit: usize },
    #[error("field of order {q} is too small (need at least {needed} elements)")]
    FieldTooSmall { needed: usize, q: u32 },
    #[error("constructed code failed validation: {0}")]
    Internal(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// An `a:b` coloring: each vertex gets `b` of `a` colors, with disjoint
/// color sets across interference edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABColoring {
    pub a: usize,
    pub b: usize,
    /// Per-vertex color sets `C_i ⊆ 1..=a`.
    pub classes: Vec<BTreeSet<usize>>,
}

impl ABColoring {
    /// Checks the coloring against an interference graph.
    pub fn check(&self, h: &UndirectedGraph) -> Result<(), ConstructError> {
        if self.classes.len() != h.n() {
            return Err(ConstructError::BadColoring(format!(
                "{} classes for {} vertices",
                self.classes.len(),
                h.n()
            )));
        }
        if self.b == 0 {
            return Err(ConstructError::BadColoring("b must be positive".into()));
        }
        for (idx, c) in self.classes.iter().enumerate() {
            if c.len() != self.b {
                return Err(ConstructError::BadColoring(format!(
                    "vertex {} has {} colors, expected b = {}",
                    idx + 1,
                    c.len(),
                    self.b
                )));
            }
            if c.iter().any(|&t| t == 0 || t > self.a) {
                return Err(ConstructError::BadColoring(format!(
                    "vertex {} uses a color outside 1..={}",
                    idx + 1,
                    self.a
                )));
            }
        }
        for (i, j) in h.edges() {
            if !self.classes[i - 1].is_disjoint(&self.classes[j - 1]) {
                return Err(ConstructError::BadColoring(format!(
                    "adjacent vertices {i} and {j} share a color"
                )));
            }
        }
        Ok(())
    }

    pub fn ratio(&self) -> crate::Rat {
        crate::rat_usize(self.a) / crate::rat_usize(self.b)
    }
}

/// Validates the finished code against the graph and caches its decode
/// coefficients. Constructions are expected to always pass this gate.
pub(crate) fn finish(g: &SideInfoGraph, mut code: IndexCode) -> Result<IndexCode, ConstructError> {
    let report = validate_cached(g, &mut code)?;
    if !report.valid {
        return Err(ConstructError::Internal(
            "emitted code does not decode on its target graph".into(),
        ));
    }
    Ok(code)
}

/// Uncoded transmission: `c = x`, every receiver queries exactly its own
/// demand block. Rate `N`, locality 1.
pub fn uncoded(g: &SideInfoGraph, msg_len: usize, field: &Field) -> IndexCode {
    let n = g.n();
    let encoder = FMatrix::identity(field, n * msg_len);
    let queries = (1..=n)
        .map(|i| ((i - 1) * msg_len..i * msg_len).collect())
        .collect();
    let mut code = IndexCode::new(field.clone(), n, msg_len, encoder, queries)
        .expect("identity encoder is well formed");
    let report = validate_cached(g, &mut code).expect("dimensions agree");
    debug_assert!(report.valid);
    code
}

/// The fractional-coloring code: message length `b`, codeword length `a`,
/// column `t` carries the sum of the symbols `w_{i,t}` of all vertices `i`
/// colored with `t`. Receiver `i` queries exactly its colors, so the
/// locality is 1 and the rate is `a/b`.
pub fn fractional_coloring_code(
    g: &SideInfoGraph,
    coloring: &ABColoring,
    field: &Field,
) -> Result<IndexCode, ConstructError> {
    coloring.check(&g.interference_graph())?;
    let n = g.n();
    let b = coloring.b;
    let mut encoder = FMatrix::zeros(field, n * b, coloring.a);
    for i in 1..=n {
        for (m, &t) in coloring.classes[i - 1].iter().enumerate() {
            encoder.set((i - 1) * b + m, t - 1, field.one());
        }
    }
    let queries = coloring
        .classes
        .iter()
        .map(|c| c.iter().map(|&t| t - 1).collect())
        .collect();
    let code = IndexCode::new(field.clone(), n, b, encoder, queries)?;
    finish(g, code)
}

/// Scalar code of length `len` built from a fitting matrix: the columns
/// are a lowest-index column basis of the fitting matrix, padded with
/// further fitting columns. Receivers whose own fitting column is present
/// query just it (locality 1); the rest solve for theirs.
pub(crate) fn scalar_code_from_fitting(
    g: &SideInfoGraph,
    fitting: &FMatrix,
    len: usize,
) -> Result<IndexCode, ConstructError> {
    let n = g.n();
    debug_assert_eq!(fitting.rows(), n);
    debug_assert_eq!(fitting.cols(), n);
    if len > n {
        return Err(ConstructError::Internal(format!(
            "scalar code length {len} exceeds the number of receivers {n}"
        )));
    }
    let cols = fitting.columns();
    let basis = crate::fmatrix::independent_subset_indices(&cols);
    if basis.len() > len {
        return Err(ConstructError::Internal(format!(
            "fitting matrix has rank {} > requested length {len}",
            basis.len()
        )));
    }
    let mut chosen: Vec<usize> = basis.clone();
    for c in 0..n {
        if chosen.len() == len {
            break;
        }
        if !chosen.contains(&c) {
            chosen.push(c);
        }
    }
    chosen.sort_unstable();
    let encoder = fitting.select_cols(&chosen);
    let mut queries: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for i in 1..=n {
        if let Some(pos) = chosen.iter().position(|&c| c == i - 1) {
            queries.push(BTreeSet::from([pos]));
        } else {
            let d = encoder.solve(&fitting.column(i - 1))?.ok_or_else(|| {
                ConstructError::Internal(format!(
                    "fitting column {i} escaped the selected column space"
                ))
            })?;
            queries.push(d.support().into_iter().collect());
        }
    }
    let code = IndexCode::new(fitting.field().clone(), n, 1, encoder, queries)?;
    finish(g, code)
}

/// Rate-optimal scalar code: columns of a minimum-rank fitting matrix
/// found by brute force. Receivers whose fitting column is transmitted get
/// locality 1; the rest combine several columns.
pub fn optimal_scalar_code(
    g: &SideInfoGraph,
    field: &Field,
    budget: u64,
) -> Result<IndexCode, ConstructError> {
    let mr = crate::oracles::minrank_bruteforce(g, field, budget)?;
    scalar_code_from_fitting(g, &mr.witness, mr.minrank)
}

/// Deterministic query set for one receiver of a scalar encoder: the
/// support of the lowest-index solution of `L·d = a_i`.
pub(crate) fn solve_query_set(
    encoder: &FMatrix,
    target: &FVector,
) -> Result<BTreeSet<usize>, ConstructError> {
    let d = encoder.solve(target)?.ok_or_else(|| {
        ConstructError::Internal("decoding target is outside the column space".into())
    })?;
    Ok(d.support().into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexcode::validate;
    use crate::rat;

    #[test]
    fn uncoded_profile() {
        let g = SideInfoGraph::directed_cycle(5);
        let f = Field::new(2).unwrap();
        let code = uncoded(&g, 2, &f);
        let p = code.locality_profile();
        assert_eq!(p.rate, rat(5, 1));
        assert_eq!(p.overall, rat(1, 1));
        assert_eq!(p.average, rat(1, 1));
    }

    #[test]
    fn coloring_code_on_three_cycle() {
        // interference graph of the directed 3-cycle is K_3: a 3:1 coloring
        let g = SideInfoGraph::directed_cycle(3);
        let f = Field::new(2).unwrap();
        let coloring = ABColoring {
            a: 3,
            b: 1,
            classes: vec![[1].into(), [2].into(), [3].into()],
        };
        let code = fractional_coloring_code(&g, &coloring, &f).unwrap();
        let p = code.locality_profile();
        assert_eq!(p.rate, rat(3, 1));
        assert_eq!(p.overall, rat(1, 1));
        assert!(validate(&g, &code).unwrap().valid);
    }

    #[test]
    fn coloring_code_on_bidirected_clique_is_single_sum() {
        let g = SideInfoGraph::complete_bidirected(4);
        let f = Field::new(3).unwrap();
        let coloring = ABColoring {
            a: 1,
            b: 1,
            classes: vec![[1].into(); 4],
        };
        let code = fractional_coloring_code(&g, &coloring, &f).unwrap();
        assert_eq!(code.code_len(), 1);
        assert_eq!(code.locality_profile().rate, rat(1, 1));
    }

    #[test]
    fn invalid_coloring_is_rejected() {
        let g = SideInfoGraph::directed_cycle(3);
        let f = Field::new(2).unwrap();
        let coloring = ABColoring {
            a: 2,
            b: 1,
            classes: vec![[1].into(), [1].into(), [2].into()],
        };
        assert!(matches!(
            fractional_coloring_code(&g, &coloring, &f),
            Err(ConstructError::BadColoring(_))
        ));
    }

    #[test]
    fn coloring_code_queries_are_disjoint_across_interference_edges() {
        // the r = 1 converse mechanism: queries of adjacent vertices in the
        // interference graph never overlap
        let g = SideInfoGraph::directed_cycle(3);
        let f = Field::new(2).unwrap();
        let coloring = ABColoring {
            a: 3,
            b: 1,
            classes: vec![[1].into(), [2].into(), [3].into()],
        };
        let code = fractional_coloring_code(&g, &coloring, &f).unwrap();
        let h = g.interference_graph();
        for (i, j) in h.edges() {
            assert!(code.queries(i).is_disjoint(code.queries(j)));
        }
    }
}
