//! Dense exact linear algebra over `F_q`: rank, solving, null spaces, span
//! membership with witnesses, and deterministic basis extension.
//!
//! Every elimination pivots on the lowest available index, so all outputs
//! are deterministic and reproducible across runs and implementations.

use crate::gfield::{Felt, Field, FieldError};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors passed as `independent` are linearly dependent")]
    DependentInput,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Felt>,
}

/// Dense vector over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FVector {
    field: Field,
    entries: Vec<Felt>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", v.join(" "))
    }
}

impl FVector {
    pub fn zero(field: &Field, len: usize) -> FVector {
        FVector {
            field: field.clone(),
            entries: vec![field.zero(); len],
        }
    }

    /// Standard basis vector `e_i` (0-indexed position).
    pub fn unit(field: &Field, len: usize, i: usize) -> FVector {
        let mut v = FVector::zero(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn from_vals(field: &Field, vals: &[u64]) -> FVector {
        FVector {
            field: field.clone(),
            entries: vals.iter().map(|&v| field.elt(v)).collect(),
        }
    }

    pub fn from_felts(field: &Field, entries: Vec<Felt>) -> FVector {
        FVector {
            field: field.clone(),
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize) -> Felt {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Felt) {
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Felt] {
        &self.entries
    }

    /// Indices of nonzero entries (0-indexed).
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &FVector) -> FVector {
        assert_eq!(self.len(), other.len());
        let f = &self.field;
        FVector {
            field: f.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FVector) -> FVector {
        assert_eq!(self.len(), other.len());
        let f = &self.field;
        FVector {
            field: f.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: Felt) -> FVector {
        let f = &self.field;
        FVector {
            field: f.clone(),
            entries: self.entries.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn dot(&self, other: &FVector) -> Felt {
        assert_eq!(self.len(), other.len());
        let f = &self.field;
        let mut acc = f.zero();
        for (&a, &b) in self.entries.iter().zip(&other.entries) {
            acc = f.add(acc, f.mul(a, b));
        }
        acc
    }
}

impl FMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer values, reduced into the field.
    pub fn from_vals(field: &Field, rows: usize, cols: usize, vals: &[u64]) -> FMatrix {
        assert_eq!(vals.len(), rows * cols, "entry count must be rows*cols");
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vals.iter().map(|&v| field.elt(v)).collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, len: usize, cols: &[FVector]) -> FMatrix {
        let mut m = FMatrix::zeros(field, len, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), len, "column length mismatch");
            for r in 0..len {
                m.set(r, c, v.get(r));
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Felt] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> FVector {
        FVector {
            field: self.field.clone(),
            entries: (0..self.rows).map(|r| self.get(r, c)).collect(),
        }
    }

    pub fn row(&self, r: usize) -> FVector {
        FVector {
            field: self.field.clone(),
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn columns(&self) -> Vec<FVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = FMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, other.get(k, c))));
                }
            }
        }
        out
    }

    /// `xᵀ * self` for a length-`rows` vector `x`; the codeword map.
    pub fn vec_mul(&self, x: &FVector) -> FVector {
        assert_eq!(x.len(), self.rows, "vector length must equal row count");
        let f = &self.field;
        let mut out = FVector::zero(f, self.cols);
        for r in 0..self.rows {
            let a = x.get(r);
            if a.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let cur = out.get(c);
                out.set(c, f.add(cur, f.mul(a, self.get(r, c))));
            }
        }
        out
    }

    /// `self * y` for a length-`cols` vector `y`.
    pub fn mul_vec(&self, y: &FVector) -> FVector {
        assert_eq!(y.len(), self.cols, "vector length must equal column count");
        let f = &self.field;
        let mut out = FVector::zero(f, self.rows);
        for r in 0..self.rows {
            let mut acc = f.zero();
            for c in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(r, c), y.get(c)));
            }
            out.set(r, acc);
        }
        out
    }

    /// Returns the submatrix with the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> FMatrix {
        let mut m = FMatrix::zeros(&self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c));
            }
        }
        m
    }

    /// Returns the submatrix with the given columns (in the given order).
    pub fn select_cols(&self, cols: &[usize]) -> FMatrix {
        let mut m = FMatrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = FMatrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    /// Pivoting picks the lowest-index row with a nonzero entry in the
    /// lowest not-yet-pivoted column.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pr = 0; // next pivot row
        for pc in 0..self.cols {
            let Some(row) = (pr..self.rows).find(|&r| !self.get(r, pc).is_zero()) else {
                continue;
            };
            // swap rows
            if row != pr {
                for c in 0..self.cols {
                    let a = self.get(pr, c);
                    let b = self.get(row, c);
                    self.set(pr, c, b);
                    self.set(row, c, a);
                }
            }
            // normalize pivot row
            let inv = f.inv(self.get(pr, pc)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = self.get(pr, c);
                self.set(pr, c, f.mul(v, inv));
            }
            // eliminate all other rows
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, pc);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c);
                    self.set(r, c, f.sub(v, f.mul(factor, self.get(pr, c))));
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Dimension of the row (equivalently column) space.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = b`. Returns `None` when inconsistent. Free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &FVector) -> Result<Option<FVector>, MatError> {
        if b.len() != self.rows {
            return Err(MatError::DimensionMismatch(format!(
                "matrix has {} rows but rhs has length {}",
                self.rows,
                b.len()
            )));
        }
        let sols = self.solve_multi(&FMatrix::from_columns(
            &self.field,
            b.len(),
            std::slice::from_ref(b),
        ))?;
        Ok(sols.map(|m| m.column(0)))
    }

    /// Solves `self * X = B` column-wise with one shared elimination.
    /// Returns `None` when any column is inconsistent.
    pub fn solve_multi(&self, b: &FMatrix) -> Result<Option<FMatrix>, MatError> {
        if b.rows != self.rows {
            return Err(MatError::DimensionMismatch(format!(
                "matrix has {} rows but rhs has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (red, pivots) = aug.rref();
        // any pivot inside the rhs block marks an inconsistent column
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = FMatrix::zeros(&self.field, self.cols, b.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, red.get(pr, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Basis of `{x : self * x = 0}`, ordered by free-column index.
    pub fn null_space_basis(&self) -> Vec<FVector> {
        let f = &self.field;
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = FVector::zero(f, self.cols);
            v.set(free, f.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                v.set(pc, f.neg(red.get(pr, free)));
            }
            basis.push(v);
        }
        debug_assert_eq!(self.cols, pivots.len() + basis.len(), "rank-nullity");
        basis
    }
}

/// Incremental row-reduction state used to test membership and grow bases.
struct Eliminator {
    field: Field,
    // reduced rows together with their pivot positions, kept in pivot order
    rows: Vec<(usize, FVector)>,
}

impl Eliminator {
    fn new(field: &Field) -> Self {
        Eliminator {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    /// Reduces `v` against the current rows; returns the residual.
    fn reduce(&self, v: &FVector) -> FVector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            let c = v.get(*p);
            if !c.is_zero() {
                v = v.sub(&row.scale(c));
            }
        }
        v
    }

    /// Tries to insert `v`; returns true when it enlarged the span.
    fn insert(&mut self, v: &FVector) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.support().first().copied() else {
            return false;
        };
        let inv = f.inv(r.get(p)).expect("leading entry nonzero");
        r = r.scale(inv);
        // back-substitute into existing rows to keep reduction canonical
        for (_, row) in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.sub(&r.scale(c));
            }
        }
        self.rows.push((p, r));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}

/// Tests whether `target` lies in the span of `vectors`; on success returns
/// the witness coefficients (in the order of `vectors`).
pub fn in_span(vectors: &[FVector], target: &FVector) -> Result<Option<FVector>, MatError> {
    let field = target.field().clone();
    for v in vectors {
        if v.len() != target.len() {
            return Err(MatError::DimensionMismatch(format!(
                "vector of length {} vs target of length {}",
                v.len(),
                target.len()
            )));
        }
    }
    let m = FMatrix::from_columns(&field, target.len(), vectors);
    m.solve(target)
}

/// Extends `independent` to a basis of `span(independent ∪ spanning)` by a
/// deterministic lowest-index sweep of `spanning`; returns the vectors added.
pub fn extend_basis(
    independent: &[FVector],
    spanning: &[FVector],
) -> Result<Vec<FVector>, MatError> {
    let field = independent
        .first()
        .or(spanning.first())
        .map(|v| v.field().clone());
    let Some(field) = field else {
        return Ok(Vec::new());
    };
    let mut elim = Eliminator::new(&field);
    for v in independent {
        if !elim.insert(v) {
            return Err(MatError::DependentInput);
        }
    }
    let mut added = Vec::new();
    for v in spanning {
        if elim.insert(v) {
            added.push(v.clone());
        }
    }
    Ok(added)
}

/// Indices of a lowest-index maximal independent subset of `vectors`.
pub fn independent_subset_indices(vectors: &[FVector]) -> Vec<usize> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let mut elim = Eliminator::new(first.field());
    let mut keep = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if elim.insert(v) {
            keep.push(i);
        }
    }
    keep
}

/// Rank of a set of vectors.
pub fn span_rank(vectors: &[FVector]) -> usize {
    independent_subset_indices(vectors).len()
}

/// Serialized form of a matrix: row-major entries plus the field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub q: u64,
    #[serde(default)]
    pub poly: u32,
    pub entries: Vec<u64>,
}

impl From<&FMatrix> for FMatrixJson {
    fn from(m: &FMatrix) -> Self {
        FMatrixJson {
            rows: m.rows,
            cols: m.cols,
            q: m.field.order() as u64,
            poly: m.field.poly().unwrap_or(0),
            entries: m.entries.iter().map(|e| e.val() as u64).collect(),
        }
    }
}

impl TryFrom<&FMatrixJson> for FMatrix {
    type Error = MatError;
    fn try_from(j: &FMatrixJson) -> Result<FMatrix, MatError> {
        let field = Field::make(j.q, Some(j.poly))?;
        if j.entries.len() != j.rows * j.cols {
            return Err(MatError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                j.entries.len(),
                j.rows,
                j.cols
            )));
        }
        Ok(FMatrix::from_vals(&field, j.rows, j.cols, &j.entries))
    }
}
