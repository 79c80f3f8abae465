//! Covering radius of a parity-check matrix by breadth-first search over
//! the syndrome space.

use super::OracleError;
use crate::fmatrix::{FMatrix, FVector};
use crate::gfield::Field;
use std::collections::VecDeque;

/// Per-syndrome minimum column counts, with witnesses.
pub struct SyndromeTable {
    field: Field,
    k: usize,
    cols: usize,
    h: FMatrix,
    dist: Vec<u32>,
    pred: Vec<(u32, u32, u32)>, // (column, coefficient, previous syndrome index)
}

const UNSET: u32 = u32::MAX;

impl SyndromeTable {
    /// Builds the table for a `k x ℓ` parity check; `q^k` must stay within
    /// the budget.
    pub fn build(h: &FMatrix, budget: u64) -> Result<SyndromeTable, OracleError> {
        let field = h.field().clone();
        let q = field.order() as u64;
        let k = h.rows();
        let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if total > budget as u128 {
            return Err(OracleError::TooLarge(format!(
                "q^k = {q}^{k} syndromes exceed the budget {budget}"
            )));
        }
        let total = total as usize;
        let mut dist = vec![UNSET; total];
        let mut pred = vec![(0u32, 0u32, 0u32); total];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        // precompute column indices as integer weights for fast stepping
        let powers: Vec<u64> = (0..k).map(|r| q.pow(r as u32)).collect();
        let idx_of = |s: &FVector| -> usize {
            (0..k)
                .map(|r| s.get(r).val() as u64 * powers[r])
                .sum::<u64>() as usize
        };
        let syndrome_of = |mut idx: usize| -> FVector {
            let mut v = FVector::zero(&field, k);
            for r in 0..k {
                v.set(r, field.elt((idx as u64) % q));
                idx /= q as usize;
            }
            v
        };
        while let Some(cur) = queue.pop_front() {
            let s = syndrome_of(cur);
            for c in 0..h.cols() {
                for coeff in 1..q {
                    let alpha = field.elt(coeff);
                    let step = h.column(c).scale(alpha);
                    let next = idx_of(&s.add(&step));
                    if dist[next] == UNSET {
                        dist[next] = dist[cur] + 1;
                        pred[next] = (c as u32, coeff as u32, cur as u32);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(SyndromeTable {
            field,
            k,
            cols: h.cols(),
            h: h.clone(),
            dist,
            pred,
        })
    }

    /// Maximum over syndromes of the minimum number of columns needed;
    /// errors when some syndrome is unreachable.
    pub fn radius(&self) -> Result<usize, OracleError> {
        let mut max = 0u32;
        for &d in &self.dist {
            if d == UNSET {
                return Err(OracleError::NoFiniteRadius);
            }
            max = max.max(d);
        }
        Ok(max as usize)
    }

    /// A coefficient vector `y` of minimal weight with `H·y = s`, or
    /// `None` when `s` is unreachable.
    pub fn min_combination(&self, s: &FVector) -> Option<FVector> {
        let q = self.field.order() as u64;
        let mut idx: usize = (0..self.k)
            .map(|r| s.get(r).val() as u64 * q.pow(r as u32))
            .sum::<u64>() as usize;
        if self.dist[idx] == UNSET {
            return None;
        }
        let mut y = FVector::zero(&self.field, self.cols);
        while idx != 0 {
            let (c, coeff, prev) = self.pred[idx];
            let c = c as usize;
            let cur = y.get(c);
            y.set(c, self.field.add(cur, self.field.elt(coeff as u64)));
            idx = prev as usize;
        }
        debug_assert_eq!(self.h.mul_vec(&y), *s);
        Some(y)
    }
}

/// Covering radius of a parity-check matrix: the maximum over syndromes of
/// the minimum number of columns whose combination reaches it.
pub fn covering_radius(h: &FMatrix, budget: u64) -> Result<usize, OracleError> {
    SyndromeTable::build(h, budget)?.radius()
}
