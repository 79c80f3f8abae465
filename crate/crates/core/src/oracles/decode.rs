//! Information-theoretic decodability by exhaustion, and minimal query
//! search for a fixed encoder.

use super::OracleError;
use crate::fmatrix::{FMatrix, FVector};
use crate::indexcode::IndexCode;
use crate::sigraph::SideInfoGraph;
use std::collections::{BTreeSet, HashMap};

/// Treats the encoder as a black box and checks, for every receiver, that
/// no two message vectors agreeing on its side information and queried
/// symbols disagree on its demand. This is decodability for arbitrary
/// deterministic codes and certifies the linear validator.
pub fn exhaustive_decodability(
    g: &SideInfoGraph,
    code: &IndexCode,
    budget: u64,
) -> Result<bool, OracleError> {
    let f = code.field().clone();
    let q = f.order() as u64;
    let mn = code.n() * code.msg_len();
    let total = (q as u128).checked_pow(mn as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(OracleError::TooLarge(format!(
            "q^(MN) = {q}^{mn} exceeds the budget {budget}"
        )));
    }
    let n = code.n();
    let side_rows: Vec<Vec<usize>> = (1..=n).map(|i| code.side_info_rows(g, i)).collect();
    let demand_rows: Vec<Vec<usize>> = (1..=n).map(|i| code.demand_rows(i).collect()).collect();
    let query_cols: Vec<Vec<usize>> = (1..=n)
        .map(|i| code.queries(i).iter().copied().collect())
        .collect();
    let mut seen: Vec<HashMap<Vec<u32>, Vec<u32>>> = vec![HashMap::new(); n];

    // odometer over message vectors with an incrementally updated codeword
    let mut x = FVector::zero(&f, mn);
    let mut c = FVector::zero(&f, code.code_len());
    loop {
        for i in 0..n {
            let mut key: Vec<u32> = Vec::with_capacity(side_rows[i].len() + query_cols[i].len());
            key.extend(side_rows[i].iter().map(|&t| x.get(t).val()));
            key.extend(query_cols[i].iter().map(|&k| c.get(k).val()));
            let demand: Vec<u32> = demand_rows[i].iter().map(|&t| x.get(t).val()).collect();
            match seen[i].get(&key) {
                Some(prev) if prev != &demand => return Ok(false),
                Some(_) => {}
                None => {
                    seen[i].insert(key, demand);
                }
            }
        }
        // increment x and patch c by the changed digit's delta
        let mut t = 0;
        loop {
            if t == mn {
                return Ok(true);
            }
            let old = x.get(t);
            let nv = old.val() as u64 + 1;
            let new = if nv < q { f.elt(nv) } else { f.zero() };
            x.set(t, new);
            let delta = f.sub(new, old);
            for k in 0..code.code_len() {
                let cur = c.get(k);
                c.set(k, f.add(cur, f.mul(delta, code.encoder().get(t, k))));
            }
            if nv < q {
                break;
            }
            t += 1;
        }
    }
}

/// Smallest query set (by size, then lexicographic) that lets receiver `i`
/// decode all its demands from the given encoder, considering side
/// information. The encoder has `msg_len * n` rows.
pub fn min_queries_for_encoder(
    g: &SideInfoGraph,
    encoder: &FMatrix,
    msg_len: usize,
    i: usize,
    max_len: usize,
) -> Result<(usize, BTreeSet<usize>), OracleError> {
    let len = encoder.cols();
    if len > max_len || len > 20 {
        return Err(OracleError::TooLarge(format!(
            "query subset sweep over {len} columns refused"
        )));
    }
    let f = encoder.field();
    let mn = encoder.rows();
    let side_units: Vec<FVector> = g
        .side_info(i)
        .iter()
        .flat_map(|&j| ((j - 1) * msg_len..j * msg_len).map(|t| FVector::unit(f, mn, t)))
        .collect();
    let targets: Vec<FVector> = ((i - 1) * msg_len..i * msg_len)
        .map(|t| FVector::unit(f, mn, t))
        .collect();
    let rhs = FMatrix::from_columns(f, mn, &targets);
    let decodable = |cols: &[usize]| -> bool {
        let mut vectors: Vec<FVector> = cols.iter().map(|&k| encoder.column(k)).collect();
        vectors.extend(side_units.iter().cloned());
        let basis = FMatrix::from_columns(f, mn, &vectors);
        matches!(basis.solve_multi(&rhs), Ok(Some(_)))
    };
    let all: Vec<usize> = (0..len).collect();
    if !decodable(&all) {
        return Err(OracleError::Undecodable { receiver: i });
    }
    for size in 0..=len {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            if decodable(&pick) {
                return Ok((size, pick.into_iter().collect()));
            }
            let mut t = size;
            while t > 0 && pick[t - 1] == len - (size - t) - 1 {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            pick[t - 1] += 1;
            for j in t..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    unreachable!("the full set was decodable");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_scalar_code, uncoded};
    use crate::gfield::Field;
    use crate::indexcode::validate;

    const BUDGET: u64 = 1 << 20;

    fn gf(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn cycle_code_passes_the_exhaustive_check() {
        let g = SideInfoGraph::directed_cycle(4);
        let code = cycle_scalar_code(4, 4, &gf(2)).unwrap();
        assert!(exhaustive_decodability(&g, &code, BUDGET).unwrap());
    }

    #[test]
    fn broken_query_set_fails_the_exhaustive_check() {
        use std::collections::BTreeSet;
        let g = SideInfoGraph::directed_cycle(3);
        let f = gf(2);
        let l = FMatrix::from_vals(&f, 3, 2, &[1, 1, 1, 0, 0, 1]);
        let queries = vec![
            BTreeSet::from([0]),
            BTreeSet::from([1]),
            BTreeSet::from([1]),
        ];
        let code = IndexCode::new(f, 3, 1, l, queries).unwrap();
        assert!(!exhaustive_decodability(&g, &code, BUDGET).unwrap());
        assert!(!validate(&g, &code).unwrap().valid);
    }

    #[test]
    fn uncoded_passes_for_vector_messages() {
        let g = SideInfoGraph::directed_cycle(3);
        let code = uncoded(&g, 2, &gf(2));
        assert!(exhaustive_decodability(&g, &code, BUDGET).unwrap());
    }

    #[test]
    fn too_large_instances_are_refused() {
        let g = SideInfoGraph::directed_cycle(3);
        let code = uncoded(&g, 2, &gf(2));
        assert!(matches!(
            exhaustive_decodability(&g, &code, 8),
            Err(OracleError::TooLarge(_))
        ));
    }

    #[test]
    fn min_queries_on_the_cycle_code() {
        let g = SideInfoGraph::directed_cycle(4);
        let code = cycle_scalar_code(4, 4, &gf(2)).unwrap();
        // receiver 1 needs one symbol, the middle receivers two
        let (size, wit) = min_queries_for_encoder(&g, code.encoder(), 1, 1, 20).unwrap();
        assert_eq!(size, 1);
        assert_eq!(wit, BTreeSet::from([0]));
        let (size, _) = min_queries_for_encoder(&g, code.encoder(), 1, 2, 20).unwrap();
        assert_eq!(size, 2);
    }

    #[test]
    fn undecodable_encoder_is_reported() {
        let g = SideInfoGraph::directed_cycle(3);
        let f = gf(2);
        // only x1+x2 is transmitted; receiver 3 has no way to get x3
        let l = FMatrix::from_vals(&f, 3, 1, &[1, 1, 0]);
        assert!(matches!(
            min_queries_for_encoder(&g, &l, 1, 3, 20),
            Err(OracleError::Undecodable { receiver: 3 })
        ));
    }
}
