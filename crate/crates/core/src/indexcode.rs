//! Vector linear index codes with receiver queries.
//!
//! A code for `N` receivers with message length `M` over `F_q` is an
//! `MN x ℓ` encoder matrix `L` (codeword `cᵀ = xᵀL`) together with query
//! sets `R_1, ..., R_N ⊆ [ℓ]`. Receiver `i` demands the scalar positions
//! `D_i = {(i-1)M, ..., iM-1}` and knows `𝒦_i = ∪_{j∈K_i} {(j-1)M, ..., jM-1}`.
//!
//! The module implements the decodability criterion (receiver `i` can
//! decode iff `e_j ∈ span(L_k : k ∈ R_i) + span(e_t : t ∈ 𝒦_i)` for every
//! `j ∈ D_i`), exact locality/rate accounting, the zeroing normalization
//! that rewrites singly-queried columns to be supported on the demand
//! block, query pruning, time-sharing composition, and the cyclic
//! symmetrization that equalizes receiver localities on circularly
//! symmetric graphs.
//!
//! Column indices are 0-based internally and 1-based in JSON.

use crate::fmatrix::{extend_basis, independent_subset_indices, FMatrix, FVector, MatError};
use crate::gfield::{Field, FieldError};
use crate::sigraph::{GraphError, SideInfoGraph};
use crate::{rat_usize, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("decode coefficients are missing; run validation first")]
    MissingCoeffs,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("codes are defined over different fields")]
    MixedFields,
    #[error("codes are defined for different numbers of receivers")]
    MixedGraphs,
    #[error("the cyclic shift is not an automorphism of this graph")]
    NotCyclic,
    #[error("malformed code JSON: {0}")]
    Parse(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A (vector) linear index code with per-receiver queries.
#[derive(Debug, Clone)]
pub struct IndexCode {
    field: Field,
    n: usize,
    msg_len: usize,
    encoder: FMatrix,
    queries: Vec<BTreeSet<usize>>,
    decode_coeffs: Option<Vec<Vec<FVector>>>,
}

/// Exact locality and rate figures of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityProfile {
    /// `r_i = |R_i| / M` per receiver.
    pub per_receiver: Vec<Rat>,
    /// `r = max_i r_i`.
    pub overall: Rat,
    /// `r_avg = Σ r_i / N`.
    pub average: Rat,
    /// `β = ℓ / M`.
    pub rate: Rat,
}

/// Query-multiplicity bookkeeping: which columns are queried exactly once.
#[derive(Debug, Clone)]
pub struct SingleQueryStats {
    /// `S_i`: columns queried by receiver `i` and nobody else.
    pub solo: Vec<BTreeSet<usize>>,
    /// `M_i`: columns queried by receiver `i` and at least one other.
    pub shared: Vec<BTreeSet<usize>>,
    /// `|S| = Σ |S_i]`, the number of singly-queried columns.
    pub solo_total: usize,
    /// Number of columns queried by at least one receiver.
    pub covered_len: usize,
    /// Lower bound `2·covered_len − Σ|R_i|` on `|S|`; this is
    /// `M(2β − N·r_avg)` whenever every column is queried.
    pub bound: i64,
    /// Whether `|S| ≥ bound` (always true; kept for reporting).
    pub holds: bool,
}

/// Per-receiver witnesses produced by validation.
#[derive(Debug, Clone)]
pub struct ReceiverReport {
    pub decodable: bool,
    /// Per demand `j ∈ D_i`: the side-information vector `u_j ◁ 𝒦_i`
    /// with `e_j + u_j ∈ span(L_k : k ∈ R_i)` (length `MN`).
    pub side_vectors: Vec<FVector>,
    /// Per demand: the query combination `d_j` with `L·d_j = e_j + u_j`
    /// and `supp(d_j) ⊆ R_i` (length `ℓ`).
    pub decode_vectors: Vec<FVector>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub valid: bool,
    pub receivers: Vec<ReceiverReport>,
    /// Receivers with `R_i = ∅` (degenerate; such codes are reported but a
    /// genuine single-unicast demand can never be decoded this way).
    pub degenerate_empty_queries: Vec<usize>,
    /// Whether `R_1 ∪ ... ∪ R_N = [ℓ]`.
    pub all_columns_queried: bool,
}

/// An `N x N` matrix that fits a graph: unit diagonal and `A[j][i] = 0`
/// whenever `j ∉ K_i` (entries indexed 0-based, receivers 1-based).
#[derive(Debug, Clone)]
pub struct FittingMatrix {
    matrix: FMatrix,
}

impl FittingMatrix {
    pub fn new(g: &SideInfoGraph, matrix: FMatrix) -> Result<Self, CodeError> {
        let n = g.n();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(CodeError::DimensionMismatch(format!(
                "fitting matrix must be {n}x{n}"
            )));
        }
        let one = matrix.field().one();
        for i in 1..=n {
            if matrix.get(i - 1, i - 1) != one {
                return Err(CodeError::InvalidInput(format!(
                    "diagonal entry {i} is not one"
                )));
            }
            for j in 1..=n {
                if j != i && !g.knows(i, j) && !matrix.get(j - 1, i - 1).is_zero() {
                    return Err(CodeError::InvalidInput(format!(
                        "entry ({j},{i}) must be zero: {j} is not side information of {i}"
                    )));
                }
            }
        }
        Ok(FittingMatrix { matrix })
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FMatrix {
        self.matrix
    }
}

impl IndexCode {
    /// Builds a code after checking dimensions and query ranges.
    pub fn new(
        field: Field,
        n: usize,
        msg_len: usize,
        encoder: FMatrix,
        queries: Vec<BTreeSet<usize>>,
    ) -> Result<IndexCode, CodeError> {
        if n == 0 || msg_len == 0 {
            return Err(CodeError::InvalidInput(
                "need at least one receiver and message symbol".into(),
            ));
        }
        if encoder.rows() != n * msg_len {
            return Err(CodeError::DimensionMismatch(format!(
                "encoder has {} rows, expected MN = {}",
                encoder.rows(),
                n * msg_len
            )));
        }
        if encoder.field() != &field {
            return Err(CodeError::MixedFields);
        }
        if queries.len() != n {
            return Err(CodeError::DimensionMismatch(format!(
                "{} query sets for {} receivers",
                queries.len(),
                n
            )));
        }
        let len = encoder.cols();
        for (i, r) in queries.iter().enumerate() {
            if let Some(&k) = r.iter().next_back() {
                if k >= len {
                    return Err(CodeError::DimensionMismatch(format!(
                        "receiver {} queries column {} of a length-{} code",
                        i + 1,
                        k + 1,
                        len
                    )));
                }
            }
        }
        Ok(IndexCode {
            field,
            n,
            msg_len,
            encoder,
            queries,
            decode_coeffs: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Message length `M`.
    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    /// Codeword length `ℓ`.
    pub fn code_len(&self) -> usize {
        self.encoder.cols()
    }

    pub fn encoder(&self) -> &FMatrix {
        &self.encoder
    }

    /// Query set `R_i` (0-based column indices).
    pub fn queries(&self, i: usize) -> &BTreeSet<usize> {
        &self.queries[i - 1]
    }

    pub fn all_queries(&self) -> &[BTreeSet<usize>] {
        &self.queries
    }

    pub fn has_decode_coeffs(&self) -> bool {
        self.decode_coeffs.is_some()
    }

    /// Scalar demand positions of receiver `i` (0-based rows of `L`).
    pub fn demand_rows(&self, i: usize) -> std::ops::Range<usize> {
        (i - 1) * self.msg_len..i * self.msg_len
    }

    /// Scalar side-information positions `𝒦_i` (0-based rows of `L`).
    pub fn side_info_rows(&self, g: &SideInfoGraph, i: usize) -> Vec<usize> {
        let mut rows = Vec::new();
        for &j in g.side_info(i) {
            rows.extend((j - 1) * self.msg_len..j * self.msg_len);
        }
        rows
    }

    /// Encodes a concatenated message vector of length `MN`.
    pub fn encode(&self, x: &FVector) -> FVector {
        self.encoder.vec_mul(x)
    }

    /// Decodes `x_{D_i}` from the queried codeword symbols and the values
    /// of the side-information messages (`side[j] = x_j` for `j ∈ K_i`).
    pub fn decode(
        &self,
        g: &SideInfoGraph,
        i: usize,
        codeword: &FVector,
        side: &BTreeMap<usize, FVector>,
    ) -> Result<FVector, CodeError> {
        let coeffs = self
            .decode_coeffs
            .as_ref()
            .ok_or(CodeError::MissingCoeffs)?;
        if codeword.len() != self.code_len() {
            return Err(CodeError::DimensionMismatch(format!(
                "codeword length {} vs ℓ = {}",
                codeword.len(),
                self.code_len()
            )));
        }
        let f = &self.field;
        let m = self.msg_len;
        let mut out = FVector::zero(f, m);
        for (idx, d) in coeffs[i - 1].iter().enumerate() {
            let j = (i - 1) * m + idx;
            // u_j = L·d_j − e_j, supported on 𝒦_i
            let mut u = self.encoder.mul_vec(d);
            u.set(j, f.sub(u.get(j), f.one()));
            let mut acc = codeword.dot(d);
            for t in u.support() {
                let block = t / m + 1;
                let offset = t % m;
                if !g.knows(i, block) {
                    return Err(CodeError::InvalidInput(format!(
                        "decode vector of receiver {i} touches message {block} outside K_{i}"
                    )));
                }
                let xj = side.get(&block).ok_or_else(|| {
                    CodeError::InvalidInput(format!(
                        "side information x_{block} not supplied to receiver {i}"
                    ))
                })?;
                acc = f.sub(acc, f.mul(u.get(t), xj.get(offset)));
            }
            out.set(idx, acc);
        }
        Ok(out)
    }

    /// Exact locality and rate figures.
    pub fn locality_profile(&self) -> LocalityProfile {
        let m = rat_usize(self.msg_len);
        let per_receiver: Vec<Rat> = self
            .queries
            .iter()
            .map(|r| rat_usize(r.len()) / m.clone())
            .collect();
        let overall = per_receiver.iter().cloned().max().unwrap_or_else(Rat::zero);
        let average = per_receiver.iter().cloned().sum::<Rat>() / rat_usize(self.n);
        let rate = rat_usize(self.code_len()) / m;
        LocalityProfile {
            per_receiver,
            overall,
            average,
            rate,
        }
    }

    /// Query multiplicity accounting: `S_i`, `M_i`, `|S|` and the counting
    /// bound `|S| ≥ 2|∪R_i| − Σ|R_i|`, which reads `M(2β − N·r_avg)` when
    /// every column is queried.
    pub fn single_query_stats(&self) -> SingleQueryStats {
        let mut multiplicity = vec![0usize; self.code_len()];
        for r in &self.queries {
            for &k in r {
                multiplicity[k] += 1;
            }
        }
        let solo: Vec<BTreeSet<usize>> = self
            .queries
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .filter(|&k| multiplicity[k] == 1)
                    .collect()
            })
            .collect();
        let shared: Vec<BTreeSet<usize>> = self
            .queries
            .iter()
            .map(|r| r.iter().copied().filter(|&k| multiplicity[k] > 1).collect())
            .collect();
        let solo_total = solo.iter().map(|s| s.len()).sum();
        let covered_len = multiplicity.iter().filter(|&&c| c > 0).count();
        let total_queries: usize = self.queries.iter().map(|r| r.len()).sum();
        let bound = 2 * covered_len as i64 - total_queries as i64;
        SingleQueryStats {
            solo,
            shared,
            solo_total,
            covered_len,
            bound,
            holds: solo_total as i64 >= bound,
        }
    }
}

/// Decodability check: receiver `i` can recover each demanded symbol iff
/// the demand unit vector lies in the span of its queried columns plus its
/// side-information coordinate subspace. Returns per-demand witnesses.
pub fn validate(g: &SideInfoGraph, code: &IndexCode) -> Result<ValidationReport, CodeError> {
    check_graph_dims(g, code)?;
    let f = code.field();
    let mn = code.n * code.msg_len;
    let mut receivers = Vec::with_capacity(code.n);
    let mut valid = true;
    for i in 1..=code.n {
        let cols: Vec<usize> = code.queries(i).iter().copied().collect();
        let side_rows = code.side_info_rows(g, i);
        // basis matrix [L_{R_i} | e_t, t ∈ 𝒦_i]
        let mut vectors: Vec<FVector> = cols.iter().map(|&k| code.encoder.column(k)).collect();
        for &t in &side_rows {
            vectors.push(FVector::unit(f, mn, t));
        }
        let basis = FMatrix::from_columns(f, mn, &vectors);
        let targets: Vec<FVector> = code
            .demand_rows(i)
            .map(|j| FVector::unit(f, mn, j))
            .collect();
        let rhs = FMatrix::from_columns(f, mn, &targets);
        let solution = basis.solve_multi(&rhs)?;
        match solution {
            Some(x) => {
                let mut side_vectors = Vec::with_capacity(code.msg_len);
                let mut decode_vectors = Vec::with_capacity(code.msg_len);
                for (jdx, j) in code.demand_rows(i).enumerate() {
                    let mut d = FVector::zero(f, code.code_len());
                    for (c, &k) in cols.iter().enumerate() {
                        d.set(k, x.get(c, jdx));
                    }
                    let mut u = FVector::zero(f, mn);
                    for (s, &t) in side_rows.iter().enumerate() {
                        u.set(t, f.neg(x.get(cols.len() + s, jdx)));
                    }
                    debug_assert_eq!(
                        code.encoder.mul_vec(&d),
                        u.add(&FVector::unit(f, mn, j)),
                        "witness identity L·d = e_j + u"
                    );
                    side_vectors.push(u);
                    decode_vectors.push(d);
                }
                receivers.push(ReceiverReport {
                    decodable: true,
                    side_vectors,
                    decode_vectors,
                });
            }
            None => {
                valid = false;
                receivers.push(ReceiverReport {
                    decodable: false,
                    side_vectors: Vec::new(),
                    decode_vectors: Vec::new(),
                });
            }
        }
    }
    let degenerate_empty_queries = (1..=code.n)
        .filter(|&i| code.queries(i).is_empty())
        .collect();
    let mut covered = BTreeSet::new();
    for r in &code.queries {
        covered.extend(r.iter().copied());
    }
    Ok(ValidationReport {
        valid,
        receivers,
        degenerate_empty_queries,
        all_columns_queried: covered.len() == code.code_len(),
    })
}

/// Like [`validate`], additionally caching the decode vectors inside the
/// code on success.
pub fn validate_cached(
    g: &SideInfoGraph,
    code: &mut IndexCode,
) -> Result<ValidationReport, CodeError> {
    let report = validate(g, code)?;
    if report.valid {
        code.decode_coeffs = Some(
            report
                .receivers
                .iter()
                .map(|r| r.decode_vectors.clone())
                .collect(),
        );
    }
    Ok(report)
}

fn check_graph_dims(g: &SideInfoGraph, code: &IndexCode) -> Result<(), CodeError> {
    if g.n() != code.n {
        return Err(CodeError::DimensionMismatch(format!(
            "graph has {} receivers, code has {}",
            g.n(),
            code.n
        )));
    }
    Ok(())
}

/// The `N x N` fitting matrix `[e_1 + u_1 | ... | e_N + u_N]` extracted
/// from a valid scalar code (`M = 1`).
pub fn fitting_matrix_of(g: &SideInfoGraph, code: &IndexCode) -> Result<FittingMatrix, CodeError> {
    if code.msg_len != 1 {
        return Err(CodeError::InvalidInput(
            "fitting matrices are defined for scalar codes (M = 1)".into(),
        ));
    }
    let report = validate(g, code)?;
    if !report.valid {
        return Err(CodeError::InvalidInput("code is not decodable".into()));
    }
    let f = code.field();
    let cols: Vec<FVector> = report
        .receivers
        .iter()
        .enumerate()
        .map(|(idx, r)| r.side_vectors[0].add(&FVector::unit(f, code.n, idx)))
        .collect();
    FittingMatrix::new(g, FMatrix::from_columns(f, code.n, &cols))
}

/// Rewrites every column queried by a single receiver to be supported on
/// that receiver's demand block, leaving queries, length and message
/// length unchanged. Shared columns are untouched.
pub fn normalize_zeroes(g: &SideInfoGraph, code: &IndexCode) -> Result<IndexCode, CodeError> {
    let report = validate(g, code)?;
    if !report.valid {
        return Err(CodeError::InvalidInput(
            "normalization requires a valid code".into(),
        ));
    }
    let stats = code.single_query_stats();
    let f = code.field();
    let mn = code.n * code.msg_len;
    let mut new_encoder = code.encoder.clone();
    for i in 1..=code.n {
        let solo = &stats.solo[i - 1];
        if solo.is_empty() {
            continue;
        }
        let shared = &stats.shared[i - 1];
        let demands: Vec<usize> = code.demand_rows(i).collect();
        let demand_set: BTreeSet<usize> = demands.iter().copied().collect();
        // basis candidates of (V_{M_i} + U_{𝒦_i}) ∩ U_{D_i}
        let mut gens: Vec<FVector> = shared.iter().map(|&k| code.encoder.column(k)).collect();
        for t in code.side_info_rows(g, i) {
            gens.push(FVector::unit(f, mn, t));
        }
        let inside = subspace_intersection_with_coordinates(f, mn, &gens, &demand_set);
        let unit_demands: Vec<FVector> = demands.iter().map(|&j| FVector::unit(f, mn, j)).collect();
        let extension = extend_basis(&inside, &unit_demands)?;
        if extension.len() > solo.len() {
            return Err(CodeError::InvalidInput(
                "normalization needs more replacement columns than available; \
                 the input cannot have been valid"
                    .into(),
            ));
        }
        for (slot, &k) in solo.iter().enumerate() {
            let col = extension
                .get(slot)
                .cloned()
                .unwrap_or_else(|| FVector::zero(f, mn));
            for r in 0..mn {
                new_encoder.set(r, k, col.get(r));
            }
        }
    }
    let mut out = IndexCode::new(
        f.clone(),
        code.n,
        code.msg_len,
        new_encoder,
        code.queries.clone(),
    )?;
    let check = validate_cached(g, &mut out)?;
    debug_assert!(check.valid, "normalized code must stay valid");
    Ok(out)
}

/// Basis of `span(gens) ∩ {v : supp(v) ⊆ coords}`.
fn subspace_intersection_with_coordinates(
    f: &Field,
    len: usize,
    gens: &[FVector],
    coords: &BTreeSet<usize>,
) -> Vec<FVector> {
    if gens.is_empty() {
        return Vec::new();
    }
    let b = FMatrix::from_columns(f, len, gens);
    let outside: Vec<usize> = (0..len).filter(|r| !coords.contains(r)).collect();
    let b_out = b.select_rows(&outside);
    let candidates: Vec<FVector> = b_out
        .null_space_basis()
        .iter()
        .map(|x| b.mul_vec(x))
        .collect();
    let keep = independent_subset_indices(&candidates);
    keep.into_iter().map(|i| candidates[i].clone()).collect()
}

/// Greedily removes redundant queries (lowest index first) until each
/// receiver's queried columns are linearly independent, then deletes
/// columns no receiver queries.
pub fn prune_queries(g: &SideInfoGraph, code: &IndexCode) -> Result<IndexCode, CodeError> {
    let report = validate(g, code)?;
    if !report.valid {
        return Err(CodeError::InvalidInput(
            "pruning requires a valid code".into(),
        ));
    }
    let f = code.field();
    let mut queries: Vec<BTreeSet<usize>> = code.queries.clone();
    for r in queries.iter_mut() {
        let order: Vec<usize> = r.iter().copied().collect();
        for k in order {
            let others: Vec<FVector> = r
                .iter()
                .copied()
                .filter(|&j| j != k)
                .map(|j| code.encoder.column(j))
                .collect();
            let target = code.encoder.column(k);
            if crate::fmatrix::in_span(&others, &target)?.is_some() {
                r.remove(&k);
            }
        }
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for r in &queries {
        used.extend(r.iter().copied());
    }
    let kept: Vec<usize> = used.iter().copied().collect();
    let mut new_index = BTreeMap::new();
    for (new, &old) in kept.iter().enumerate() {
        new_index.insert(old, new);
    }
    let encoder = code.encoder.select_cols(&kept);
    let queries = queries
        .into_iter()
        .map(|r| r.into_iter().map(|k| new_index[&k]).collect())
        .collect();
    let mut out = IndexCode::new(f.clone(), code.n, code.msg_len, encoder, queries)?;
    let check = validate_cached(g, &mut out)?;
    debug_assert!(check.valid, "pruned code must stay valid");
    Ok(out)
}

/// Block-diagonal time-sharing of codes over the same graph and field.
/// Message lengths are aligned on their least common multiple, so code `j`
/// with multiplicity `w_j` contributes a fraction `w_j / Σw` of the message
/// symbols; rates and localities combine as the corresponding weighted
/// averages.
pub fn time_share(codes: &[&IndexCode], multiplicities: &[u64]) -> Result<IndexCode, CodeError> {
    if codes.is_empty() || codes.len() != multiplicities.len() {
        return Err(CodeError::InvalidInput(
            "need one positive multiplicity per code".into(),
        ));
    }
    if multiplicities.contains(&0) {
        return Err(CodeError::InvalidInput(
            "multiplicities must be positive".into(),
        ));
    }
    let field = codes[0].field().clone();
    let n = codes[0].n;
    for c in codes {
        if c.field() != &field {
            return Err(CodeError::MixedFields);
        }
        if c.n != n {
            return Err(CodeError::MixedGraphs);
        }
    }
    let lcm = codes
        .iter()
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.msg_len as u64));
    // instance list: code j repeated w_j * (lcm / M_j) times
    let mut instances = Vec::new();
    for (c, &w) in codes.iter().zip(multiplicities) {
        let reps = w * (lcm / c.msg_len as u64);
        for _ in 0..reps {
            instances.push(*c);
        }
    }
    compose_block_diagonal(&field, n, &instances)
}

/// Concatenates codes as independent generations of message symbols.
fn compose_block_diagonal(
    field: &Field,
    n: usize,
    instances: &[&IndexCode],
) -> Result<IndexCode, CodeError> {
    let m_total: usize = instances.iter().map(|c| c.msg_len).sum();
    let len_total: usize = instances.iter().map(|c| c.code_len()).sum();
    let mut encoder = FMatrix::zeros(field, n * m_total, len_total);
    let mut queries = vec![BTreeSet::new(); n];
    let mut decode: Vec<Vec<FVector>> = vec![Vec::new(); n];
    let all_have_coeffs = instances.iter().all(|c| c.decode_coeffs.is_some());
    let mut m_off = 0usize;
    let mut c_off = 0usize;
    for inst in instances {
        for i in 0..n {
            for m in 0..inst.msg_len {
                let to_row = i * m_total + m_off + m;
                let from_row = i * inst.msg_len + m;
                for c in 0..inst.code_len() {
                    encoder.set(to_row, c_off + c, inst.encoder.get(from_row, c));
                }
            }
            for &k in &inst.queries[i] {
                queries[i].insert(c_off + k);
            }
            if all_have_coeffs {
                let coeffs = inst.decode_coeffs.as_ref().unwrap();
                for d in &coeffs[i] {
                    let mut nd = FVector::zero(field, len_total);
                    for k in d.support() {
                        nd.set(c_off + k, d.get(k));
                    }
                    decode[i].push(nd);
                }
            }
        }
        m_off += inst.msg_len;
        c_off += inst.code_len();
    }
    let mut out = IndexCode::new(field.clone(), n, m_total, encoder, queries)?;
    if all_have_coeffs {
        out.decode_coeffs = Some(decode);
    }
    Ok(out)
}

/// Relabels message roles by a cyclic shift: block `i` of the result is
/// block `(i - shift) mod N` of the input (queries move along).
fn shift_message_blocks(code: &IndexCode, shift: usize) -> IndexCode {
    let n = code.n;
    let m = code.msg_len;
    let f = code.field().clone();
    let mut encoder = FMatrix::zeros(&f, n * m, code.code_len());
    let mut queries = vec![BTreeSet::new(); n];
    let mut decode = code.decode_coeffs.as_ref().map(|_| vec![Vec::new(); n]);
    let src = |i: usize| ((i + n - 1 - shift % n + n) % n) + 1; // (i - shift) wrapped to 1..=n
    for i in 1..=n {
        let s = src(i);
        for mm in 0..m {
            for c in 0..code.code_len() {
                let v = code.encoder.get((s - 1) * m + mm, c);
                encoder.set((i - 1) * m + mm, c, v);
            }
        }
        queries[i - 1] = code.queries[s - 1].clone();
        if let (Some(out), Some(coeffs)) = (decode.as_mut(), code.decode_coeffs.as_ref()) {
            out[i - 1] = coeffs[s - 1].clone();
        }
    }
    let mut out = IndexCode::new(f, n, m, encoder, queries).expect("shape preserved");
    out.decode_coeffs = decode;
    out
}

/// Time-shares the `N` cyclic message relabelings of a code for a
/// circularly symmetric graph, equalizing all receiver query counts; the
/// rate is unchanged and the overall locality drops to the input's average
/// locality.
pub fn symmetrize_cyclic(g: &SideInfoGraph, code: &IndexCode) -> Result<IndexCode, CodeError> {
    check_graph_dims(g, code)?;
    if !g.has_cyclic_automorphism() {
        return Err(CodeError::NotCyclic);
    }
    let shifted: Vec<IndexCode> = (1..=code.n)
        .map(|j| shift_message_blocks(code, j % code.n))
        .collect();
    let refs: Vec<&IndexCode> = shifted.iter().collect();
    let mults = vec![1u64; refs.len()];
    let mut out = time_share(&refs, &mults)?;
    let report = validate_cached(g, &mut out)?;
    debug_assert!(report.valid, "symmetrized code must stay valid");
    Ok(out)
}

/// Serialized form of a code: 1-based query indices, row-major encoder.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u64,
    #[serde(default)]
    pub poly: u32,
    pub n: usize,
    #[serde(rename = "M")]
    pub msg_len: usize,
    pub len: usize,
    #[serde(rename = "L")]
    pub encoder: Vec<u64>,
    pub queries: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode: Option<Vec<Vec<Vec<u64>>>>,
}

impl From<&IndexCode> for CodeJson {
    fn from(code: &IndexCode) -> Self {
        CodeJson {
            q: code.field.order() as u64,
            poly: code.field.poly().unwrap_or(0),
            n: code.n,
            msg_len: code.msg_len,
            len: code.code_len(),
            encoder: code
                .encoder
                .entries()
                .iter()
                .map(|e| e.val() as u64)
                .collect(),
            queries: code
                .queries
                .iter()
                .map(|r| r.iter().map(|&k| k + 1).collect())
                .collect(),
            decode: code.decode_coeffs.as_ref().map(|rows| {
                rows.iter()
                    .map(|per_m| {
                        per_m
                            .iter()
                            .map(|d| d.entries().iter().map(|e| e.val() as u64).collect())
                            .collect()
                    })
                    .collect()
            }),
        }
    }
}

impl TryFrom<&CodeJson> for IndexCode {
    type Error = CodeError;
    fn try_from(j: &CodeJson) -> Result<IndexCode, CodeError> {
        let field = Field::make(j.q, Some(j.poly))?;
        let mn = j.n * j.msg_len;
        if j.encoder.len() != mn * j.len {
            return Err(CodeError::Parse(format!(
                "L has {} entries, expected {}",
                j.encoder.len(),
                mn * j.len
            )));
        }
        let encoder = FMatrix::from_vals(&field, mn, j.len, &j.encoder);
        let mut queries = Vec::with_capacity(j.n);
        for r in &j.queries {
            let mut set = BTreeSet::new();
            for &k in r {
                if k == 0 || k > j.len {
                    return Err(CodeError::Parse(format!(
                        "query index {k} out of range 1..={}",
                        j.len
                    )));
                }
                set.insert(k - 1);
            }
            queries.push(set);
        }
        let mut code = IndexCode::new(field.clone(), j.n, j.msg_len, encoder, queries)?;
        if let Some(d) = &j.decode {
            if d.len() != j.n || d.iter().any(|per| per.len() != j.msg_len) {
                return Err(CodeError::Parse("decode coefficient shape mismatch".into()));
            }
            let mut coeffs = Vec::with_capacity(j.n);
            for (idx, per) in d.iter().enumerate() {
                let mut per_m = Vec::with_capacity(j.msg_len);
                for v in per {
                    if v.len() != j.len {
                        return Err(CodeError::Parse(
                            "decode vector length must equal the code length".into(),
                        ));
                    }
                    let d = FVector::from_vals(&field, v);
                    if d.support().iter().any(|k| !code.queries[idx].contains(k)) {
                        return Err(CodeError::Parse(format!(
                            "decode vector of receiver {} touches unqueried symbols",
                            idx + 1
                        )));
                    }
                    per_m.push(d);
                }
                coeffs.push(per_m);
            }
            code.decode_coeffs = Some(coeffs);
        }
        Ok(code)
    }
}

impl IndexCode {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CodeJson::from(self)).expect("code serialization cannot fail")
    }

    pub fn parse(text: &str) -> Result<IndexCode, CodeError> {
        let j: CodeJson =
            serde_json::from_str(text).map_err(|e| CodeError::Parse(e.to_string()))?;
        IndexCode::try_from(&j)
    }
}
