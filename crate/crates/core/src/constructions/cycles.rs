//! Codes for directed cycles and for graphs whose minrank is `N - 1`.

use super::{finish, uncoded, ConstructError};
use crate::fmatrix::FMatrix;
use crate::gfield::Field;
use crate::indexcode::{time_share, IndexCode};
use crate::sigraph::SideInfoGraph;
use std::collections::BTreeSet;

/// Scalar code of length `N-1` for the directed `N`-cycle, rotated so that
/// receivers `pivot` and `pivot+1` have locality 1 and everyone else
/// locality 2. The codeword symbols are `x_p + x_{p+k}` for the rotated
/// hub `p = pivot + 1`.
pub fn cycle_scalar_code(
    n: usize,
    pivot: usize,
    field: &Field,
) -> Result<IndexCode, ConstructError> {
    if n < 2 {
        return Err(ConstructError::InfeasibleDegrees(
            "a directed cycle needs at least two vertices".into(),
        ));
    }
    if pivot == 0 || pivot > n {
        return Err(ConstructError::InfeasibleDegrees(format!(
            "pivot {pivot} out of range 1..={n}"
        )));
    }
    // rho maps the canonical labels onto the rotated ones: the canonical
    // code gives locality 1 to receivers 1 and N; rho sends them to
    // pivot+1 and pivot
    let rho = |j: usize| ((j - 1 + pivot) % n) + 1;
    let mut encoder = FMatrix::zeros(field, n, n - 1);
    for k in 0..(n - 1) {
        encoder.set(rho(1) - 1, k, field.one());
        let r = rho(k + 2) - 1;
        encoder.set(r, k, field.add(encoder.get(r, k), field.one()));
    }
    let mut queries = vec![BTreeSet::new(); n];
    queries[rho(1) - 1] = BTreeSet::from([0]);
    queries[rho(n) - 1] = BTreeSet::from([n - 2]);
    for j in 2..n {
        queries[rho(j) - 1] = BTreeSet::from([j - 2, j - 1]);
    }
    let g = SideInfoGraph::directed_cycle(n);
    let code = IndexCode::new(field.clone(), n, 1, encoder, queries)?;
    finish(&g, code)
}

/// Pivot schedule of the optimal vector code: all `N` pivots when `N` is
/// odd, the odd pivots when `N` is even.
fn vector_code_pivots(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        (1..=n).collect()
    } else {
        (1..=n).step_by(2).collect()
    }
}

/// Optimal-locality vector code for the directed `N`-cycle at rate `N-1`:
/// time-shares the scalar pivot codes so that every receiver ends up with
/// `r_i = 2(N-1)/N`. Message length `N` for odd `N`, `N/2` for even.
pub fn cycle_vector_code(n: usize, field: &Field) -> Result<IndexCode, ConstructError> {
    if n < 3 {
        return Err(ConstructError::InfeasibleDegrees(
            "the vector cycle code needs N >= 3".into(),
        ));
    }
    cycle_code_from_pivots(n, &vector_code_pivots(n), field)
}

fn cycle_code_from_pivots(
    n: usize,
    pivots: &[usize],
    field: &Field,
) -> Result<IndexCode, ConstructError> {
    let codes: Vec<IndexCode> = pivots
        .iter()
        .map(|&p| cycle_scalar_code(n, p, field))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&IndexCode> = codes.iter().collect();
    let mults = vec![1u64; refs.len()];
    let shared = time_share(&refs, &mults)?;
    finish(&SideInfoGraph::directed_cycle(n), shared)
}

/// Rate-(N-1) cycle code for a prescribed message length `M`.
///
/// The schedule decomposes `M` into full symmetric rounds (each covering
/// every receiver with a locality-1 slot) plus a remainder:
/// - `M < N/2`: one pivot repeated, locality 2;
/// - `N/2 <= M < N`, `N` odd: the staggered pivot sequence, locality `2 - 1/M`;
/// - `M` a multiple of the minimum message length: exact replication of
///   the optimal vector code, locality `2(N-1)/N`.
///
/// Every case keeps the average locality at `2(N-1)/N`.
pub fn cycle_code_for_message_length(
    n: usize,
    msg_len: usize,
    field: &Field,
) -> Result<IndexCode, ConstructError> {
    if n < 3 || msg_len == 0 {
        return Err(ConstructError::InfeasibleDegrees(
            "need N >= 3 and M >= 1".into(),
        ));
    }
    let base = if n % 2 == 1 { n } else { n / 2 };
    let rounds = msg_len / base;
    let rem = msg_len % base;
    let mut pivots = Vec::with_capacity(msg_len);
    for _ in 0..rounds {
        pivots.extend(vector_code_pivots(n));
    }
    if rem > 0 {
        if rem <= n / 2 {
            // too few codes to cover everyone once; repeating one pivot
            // keeps the per-pivot locality sums balanced
            pivots.extend(std::iter::repeat_n(1, rem));
        } else {
            // N odd here (for even N the remainder is < base = N/2):
            // odd pivots, then N, then ascending even pivots
            let mut seq: Vec<usize> = (1..=n - 2).step_by(2).collect();
            seq.push(n);
            seq.extend((2..=2 * rem - (n + 1)).step_by(2));
            debug_assert_eq!(seq.len(), rem);
            pivots.extend(seq);
        }
    }
    debug_assert_eq!(pivots.len(), msg_len);
    cycle_code_from_pivots(n, &pivots, field)
}

/// How [`minrank_nm1_code`] realized rate `N-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinrankNm1Note {
    /// The graph is acyclic; uncoded transmission is already optimal.
    AcyclicUncoded,
    /// A bidirected pair carries one sum, everything else goes uncoded;
    /// locality 1.
    BidirectedPair { i: usize, j: usize },
    /// The shortest cycle carries the scalar cycle code, everything else
    /// goes uncoded; locality 2, average `(N + N_c - 2)/N`.
    CycleScheme { cycle: Vec<usize> },
}

/// Scalar code of length `N-1` for graphs with a directed cycle, pairing
/// the shortest cycle with uncoded transmission of the remaining symbols.
/// On graphs of minrank `N-1` this attains the optimal scalar locality.
pub fn minrank_nm1_code(
    g: &SideInfoGraph,
    field: &Field,
) -> Result<(IndexCode, MinrankNm1Note), ConstructError> {
    let n = g.n();
    let Some((len, cycle)) = g.shortest_directed_cycle() else {
        return Ok((uncoded(g, 1, field), MinrankNm1Note::AcyclicUncoded));
    };
    let in_cycle: BTreeSet<usize> = cycle.iter().copied().collect();
    let rest: Vec<usize> = (1..=n).filter(|v| !in_cycle.contains(v)).collect();
    let mut encoder = FMatrix::zeros(field, n, n - 1);
    let mut queries = vec![BTreeSet::new(); n];
    let note;
    let cycle_cols;
    if len == 2 {
        let (i, j) = (cycle[0], cycle[1]);
        encoder.set(i - 1, 0, field.one());
        encoder.set(j - 1, 0, field.one());
        queries[i - 1].insert(0);
        queries[j - 1].insert(0);
        cycle_cols = 1;
        note = MinrankNm1Note::BidirectedPair { i, j };
    } else {
        // canonical cycle code: column k is x_{c_1} + x_{c_{k+2}}
        for k in 0..(len - 1) {
            encoder.set(cycle[0] - 1, k, field.one());
            encoder.set(cycle[k + 1] - 1, k, field.one());
        }
        queries[cycle[0] - 1].insert(0);
        queries[cycle[len - 1] - 1].insert(len - 2);
        for t in 2..len {
            queries[cycle[t - 1] - 1].insert(t - 2);
            queries[cycle[t - 1] - 1].insert(t - 1);
        }
        cycle_cols = len - 1;
        note = MinrankNm1Note::CycleScheme { cycle };
    }
    for (s, &v) in rest.iter().enumerate() {
        encoder.set(v - 1, cycle_cols + s, field.one());
        queries[v - 1].insert(cycle_cols + s);
    }
    let code = IndexCode::new(field.clone(), n, 1, encoder, queries)?;
    Ok((finish(g, code)?, note))
}
