//! Exact linear programming over rationals.
//!
//! A small dense two-phase primal simplex with Bland's rule. Every pivot is
//! carried out in arbitrary-precision rational arithmetic, so optima are
//! exact and deterministic. Intended for the desk-scale programs that arise
//! here (fractional colorings, covering relaxations): tens of variables and
//! constraints, not thousands.

use crate::Rat;
use num_traits::{One, Signed, Zero};

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

/// `maximize c·x  subject to  A_i·x (≤ | = | ≥) b_i,  x ≥ 0`.
#[derive(Debug, Clone)]
pub struct Lp {
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Cmp, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows x cols matrix; last column is the rhs, last row the objective
    a: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = Rat::one() / self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..self.a.len() {
            if r == row {
                continue;
            }
            let factor = self.a[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..=self.cols {
                let delta = factor.clone() * self.a[row][c].clone();
                self.a[r][c] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = lowest-index column with positive reduced
    /// cost; leaving = lowest-index basic variable among min-ratio ties.
    /// Returns false when optimal, errors with `None` row when unbounded.
    fn iterate(&mut self, allowed_cols: usize) -> Result<bool, ()> {
        let m = self.a.len() - 1;
        let obj = self.a.len() - 1;
        let entering = (0..allowed_cols).find(|&c| self.a[obj][c].is_positive());
        let Some(col) = entering else {
            return Ok(false);
        };
        let mut best: Option<(Rat, usize, usize)> = None; // (ratio, basis var, row)
        for r in 0..m {
            if self.a[r][col].is_positive() {
                let ratio = self.a[r][self.cols].clone() / self.a[r][col].clone();
                let key = (ratio, self.basis[r], r);
                if best
                    .as_ref()
                    .is_none_or(|b| (key.0.clone(), key.1) < (b.0.clone(), b.1))
                {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, row)) = best else {
            return Err(()); // unbounded
        };
        self.pivot(row, col);
        Ok(true)
    }
}

/// Solves the LP exactly. Two phases: artificial variables drive the basis
/// feasible, then the real objective is optimized.
pub fn solve(lp: &Lp) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();

    // normalize senses so every rhs is nonnegative
    let mut rows: Vec<(Vec<Rat>, Cmp, Rat)> = lp.rows.clone();
    for (coeffs, cmp, b) in rows.iter_mut() {
        debug_assert_eq!(coeffs.len(), n);
        if b.is_negative() {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            *b = -b.clone();
            *cmp = match *cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Eq => Cmp::Eq,
                Cmp::Ge => Cmp::Le,
            };
        }
    }

    let num_slack = rows.iter().filter(|(_, c, _)| *c != Cmp::Eq).count();
    let num_art = rows
        .iter()
        .filter(|(_, c, _)| matches!(c, Cmp::Eq | Cmp::Ge))
        .count();
    let total = n + num_slack + num_art;

    let mut a = vec![vec![Rat::zero(); total + 1]; m + 1];
    let mut basis = vec![0usize; m];
    let mut slack_idx = n;
    let mut art_idx = n + num_slack;
    let mut art_cols = Vec::new();

    for (r, (coeffs, cmp, b)) in rows.iter().enumerate() {
        for (c, v) in coeffs.iter().enumerate() {
            a[r][c] = v.clone();
        }
        a[r][total] = b.clone();
        match cmp {
            Cmp::Le => {
                a[r][slack_idx] = Rat::one();
                basis[r] = slack_idx;
                slack_idx += 1;
            }
            Cmp::Ge => {
                a[r][slack_idx] = -Rat::one();
                slack_idx += 1;
                a[r][art_idx] = Rat::one();
                basis[r] = art_idx;
                art_cols.push(art_idx);
                art_idx += 1;
            }
            Cmp::Eq => {
                a[r][art_idx] = Rat::one();
                basis[r] = art_idx;
                art_cols.push(art_idx);
                art_idx += 1;
            }
        }
    }

    let mut t = Tableau {
        a,
        basis,
        cols: total,
    };

    if !art_cols.is_empty() {
        // phase 1: maximize -(sum of artificials)
        for &c in &art_cols {
            t.a[m][c] = -Rat::one();
        }
        // price out artificial basic variables
        for r in 0..m {
            if art_cols.contains(&t.basis[r]) {
                for c in 0..=total {
                    let delta = t.a[r][c].clone();
                    t.a[m][c] += delta;
                }
            }
        }
        loop {
            match t.iterate(total) {
                Ok(true) => continue,
                Ok(false) => break,
                Err(()) => unreachable!("phase 1 objective is bounded above by 0"),
            }
        }
        if !t.a[m][total].is_zero() {
            return LpOutcome::Infeasible;
        }
        // pivot any artificial still in the basis out (degenerate rows)
        for r in 0..m {
            if art_cols.contains(&t.basis[r]) {
                if let Some(c) = (0..n + num_slack).find(|&c| !t.a[r][c].is_zero()) {
                    t.pivot(r, c);
                }
                // a fully zero row is redundant; its artificial stays basic
                // at value zero and never re-enters (phase 2 ignores it)
            }
        }
        // reset objective row for phase 2
        for c in 0..=total {
            t.a[m][c] = Rat::zero();
        }
    }

    // phase 2 objective: maximize c·x, priced out against the basis
    for c in 0..n {
        t.a[m][c] = lp.objective[c].clone();
    }
    for r in 0..m {
        let b = t.basis[r];
        let coeff = t.a[m][b].clone();
        if !coeff.is_zero() {
            for c in 0..=total {
                let delta = coeff.clone() * t.a[r][c].clone();
                t.a[m][c] -= delta;
            }
        }
    }
    loop {
        match t.iterate(n + num_slack) {
            Ok(true) => continue,
            Ok(false) => break,
            Err(()) => return LpOutcome::Unbounded,
        }
    }

    let mut solution = vec![Rat::zero(); n];
    for r in 0..m {
        if t.basis[r] < n {
            solution[t.basis[r]] = t.a[r][total].clone();
        }
    }
    let value = -t.a[m][total].clone();
    LpOutcome::Optimal { value, solution }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn le(coeffs: Vec<Rat>, b: Rat) -> (Vec<Rat>, Cmp, Rat) {
        (coeffs, Cmp::Le, b)
    }

    #[test]
    fn simple_bounded_maximum() {
        // max x + y, x + 2y <= 4, 3x + y <= 6 -> optimum at (8/5, 6/5), value 14/5
        let lp = Lp {
            objective: vec![rat_int(1), rat_int(1)],
            rows: vec![
                le(vec![rat_int(1), rat_int(2)], rat_int(4)),
                le(vec![rat_int(3), rat_int(1)], rat_int(6)),
            ],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(solution, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn infeasible_program_detected() {
        // x <= 1, x >= 2
        let lp = Lp {
            objective: vec![rat_int(1)],
            rows: vec![
                (vec![rat_int(1)], Cmp::Le, rat_int(1)),
                (vec![rat_int(1)], Cmp::Ge, rat_int(2)),
            ],
        };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_program_detected() {
        let lp = Lp {
            objective: vec![rat_int(1)],
            rows: vec![(vec![rat_int(-1)], Cmp::Le, rat_int(1))],
        };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_constraints_via_two_phase() {
        // min x + y with x + y = 3, x - y >= 1  (as max -(x+y))
        let lp = Lp {
            objective: vec![rat_int(-1), rat_int(-1)],
            rows: vec![
                (vec![rat_int(1), rat_int(1)], Cmp::Eq, rat_int(3)),
                (vec![rat_int(1), rat_int(-1)], Cmp::Ge, rat_int(1)),
            ],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, rat_int(-3));
                assert_eq!(solution[0].clone() + solution[1].clone(), rat_int(3));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_guarded_by_bland() {
        // classic Beale-style degenerate instance; must terminate
        let lp = Lp {
            objective: vec![rat(3, 4), rat_int(-150), rat(1, 50), rat_int(-6)],
            rows: vec![
                le(
                    vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
                    rat_int(0),
                ),
                le(
                    vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
                    rat_int(0),
                ),
                le(
                    vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
                    rat_int(1),
                ),
            ],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
