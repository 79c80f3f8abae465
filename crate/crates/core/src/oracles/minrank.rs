//! Exact minrank by enumerating every matrix that fits the graph.

use super::OracleError;
use crate::fmatrix::{FMatrix, FVector};
use crate::gfield::{Felt, Field};
use crate::sigraph::SideInfoGraph;

/// Whether `a` fits `g`: unit diagonal, and zero at `(j, i)` whenever `j`
/// is not side information of `i`.
pub fn fits(g: &SideInfoGraph, a: &FMatrix) -> bool {
    let n = g.n();
    if a.rows() != n || a.cols() != n {
        return false;
    }
    let one = a.field().one();
    for i in 1..=n {
        if a.get(i - 1, i - 1) != one {
            return false;
        }
        for j in 1..=n {
            if j != i && !g.knows(i, j) && !a.get(j - 1, i - 1).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct MinrankResult {
    pub minrank: usize,
    /// First fitting matrix attaining the minimum, in enumeration order
    /// (columns ascending, free entries of a column by ascending row,
    /// values ascending).
    pub witness: FMatrix,
    /// Number of column assignments visited.
    pub visited: u64,
}

/// Incremental column-space state for the branch-and-bound sweeps: rank of
/// the columns inserted so far, supporting cheap clone-per-branch.
#[derive(Clone)]
struct SpanState {
    field: Field,
    rows: Vec<(usize, FVector)>, // (pivot, reduced vector)
}

impl SpanState {
    fn new(field: &Field) -> Self {
        SpanState {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &FVector) -> bool {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            let c = v.get(*p);
            if !c.is_zero() {
                v = v.sub(&row.scale(c));
            }
        }
        let Some(p) = v.support().first().copied() else {
            return false;
        };
        let inv = self.field.inv(v.get(p)).expect("leading entry nonzero");
        self.rows.push((p, v.scale(inv)));
        true
    }
}

struct Search<'a> {
    g: &'a SideInfoGraph,
    field: &'a Field,
    free_rows: Vec<Vec<usize>>, // per column (0-based): rows that may be nonzero
    budget: u64,
    visited: u64,
    incumbent: usize,
    witness: Option<Vec<Vec<Felt>>>, // per column: values on free rows
}

impl<'a> Search<'a> {
    fn new(g: &'a SideInfoGraph, field: &'a Field, budget: u64) -> Self {
        let free_rows = (1..=g.n())
            .map(|i| g.side_info(i).iter().map(|&j| j - 1).collect())
            .collect();
        Search {
            g,
            field,
            free_rows,
            budget,
            visited: 0,
            incumbent: g.n() + 1,
            witness: None,
        }
    }

    fn column(&self, col: usize, values: &[Felt]) -> FVector {
        let mut v = FVector::zero(self.field, self.g.n());
        v.set(col, self.field.one());
        for (idx, &r) in self.free_rows[col].iter().enumerate() {
            v.set(r, values[idx]);
        }
        v
    }

    /// Depth-first over columns; prunes once the prefix rank can no longer
    /// beat the incumbent. Returns false when the budget ran out.
    fn run(&mut self, col: usize, state: &SpanState, assigned: &mut Vec<Vec<Felt>>) -> bool {
        if state.rank() >= self.incumbent {
            return true; // adding columns can only grow the rank
        }
        if col == self.g.n() {
            let rank = state.rank();
            if rank < self.incumbent {
                self.incumbent = rank;
                self.witness = Some(assigned.clone());
            }
            return true;
        }
        let q = self.field.order() as u64;
        let digits = self.free_rows[col].len();
        let mut values = vec![self.field.zero(); digits];
        loop {
            self.visited += 1;
            if self.visited > self.budget {
                return false;
            }
            let v = self.column(col, &values);
            let mut next = state.clone();
            next.insert(&v);
            assigned.push(values.clone());
            let ok = self.run(col + 1, &next, assigned);
            assigned.pop();
            if !ok {
                return false;
            }
            // odometer over the free entries
            let mut d = 0;
            loop {
                if d == digits {
                    return true;
                }
                let nv = values[d].val() as u64 + 1;
                if nv < q {
                    values[d] = self.field.elt(nv);
                    break;
                }
                values[d] = self.field.zero();
                d += 1;
            }
        }
    }

    fn witness_matrix(&self) -> FMatrix {
        let assigned = self.witness.as_ref().expect("search visited a leaf");
        let cols: Vec<FVector> = (0..self.g.n())
            .map(|c| self.column(c, &assigned[c]))
            .collect();
        FMatrix::from_columns(self.field, self.g.n(), &cols)
    }
}

/// Minimum rank over all matrices fitting `g`, with a witness. Errors with
/// the best upper bound found when the visit budget runs out.
pub fn minrank_bruteforce(
    g: &SideInfoGraph,
    field: &Field,
    budget: u64,
) -> Result<MinrankResult, OracleError> {
    let mut search = Search::new(g, field, budget);
    let done = search.run(0, &SpanState::new(field), &mut Vec::new());
    if !done {
        // uncoded transmission always realizes rank N
        return Err(OracleError::BudgetExceeded {
            upper_bound: search.incumbent.min(g.n()),
        });
    }
    Ok(MinrankResult {
        minrank: search.incumbent,
        witness: search.witness_matrix(),
        visited: search.visited,
    })
}

/// First fitting matrix (in enumeration order) of rank exactly `target`,
/// or `None`. Subtrees whose prefix rank already exceeds `target` are cut.
pub fn find_fitting_with_rank(
    g: &SideInfoGraph,
    field: &Field,
    target: usize,
    budget: u64,
) -> Result<Option<FMatrix>, OracleError> {
    fn rec(
        s: &mut Search,
        target: usize,
        col: usize,
        state: &SpanState,
        assigned: &mut Vec<Vec<Felt>>,
    ) -> Result<bool, OracleError> {
        if state.rank() > target {
            return Ok(false);
        }
        if col == s.g.n() {
            if state.rank() == target {
                s.witness = Some(assigned.clone());
                return Ok(true);
            }
            return Ok(false);
        }
        let q = s.field.order() as u64;
        let digits = s.free_rows[col].len();
        let mut values = vec![s.field.zero(); digits];
        loop {
            s.visited += 1;
            if s.visited > s.budget {
                return Err(OracleError::BudgetExceeded {
                    upper_bound: target,
                });
            }
            let v = s.column(col, &values);
            let mut next = state.clone();
            next.insert(&v);
            assigned.push(values.clone());
            let found = rec(s, target, col + 1, &next, assigned)?;
            assigned.pop();
            if found {
                return Ok(true);
            }
            let mut d = 0;
            loop {
                if d == digits {
                    return Ok(false);
                }
                let nv = values[d].val() as u64 + 1;
                if nv < q {
                    values[d] = s.field.elt(nv);
                    break;
                }
                values[d] = s.field.zero();
                d += 1;
            }
        }
    }
    let mut search = Search::new(g, field, budget);
    let found = rec(
        &mut search,
        target,
        0,
        &SpanState::new(field),
        &mut Vec::new(),
    )?;
    Ok(found.then(|| search.witness_matrix()))
}

/// Visits every fitting matrix in enumeration order until the visitor
/// returns `false` or the budget runs out.
pub fn enumerate_fittings(
    g: &SideInfoGraph,
    field: &Field,
    budget: u64,
    visit: &mut dyn FnMut(&FMatrix) -> bool,
) -> Result<(), OracleError> {
    let n = g.n();
    let free: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| g.side_info(i).iter().map(move |&j| (j - 1, i - 1)))
        .collect();
    let q = field.order() as u64;
    let total: u128 = (q as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(OracleError::BudgetExceeded { upper_bound: n });
    }
    let mut a = FMatrix::identity(field, n);
    let mut digits = vec![0u64; free.len()];
    loop {
        if !visit(&a) {
            return Ok(());
        }
        let mut d = 0;
        loop {
            if d == free.len() {
                return Ok(());
            }
            let (r, c) = free[d];
            digits[d] += 1;
            if digits[d] < q {
                a.set(r, c, field.elt(digits[d]));
                break;
            }
            digits[d] = 0;
            a.set(r, c, field.zero());
            d += 1;
        }
    }
}
