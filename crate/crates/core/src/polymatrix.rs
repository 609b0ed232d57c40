//! Matrices of polynomials: symbolic determinants, minors, Jacobians.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::ScalarMatrix;
use crate::monomial::{Namespace, NVARS};
use crate::poly::MultiPoly;

/// Largest square size accepted by [`PolyMatrix::det`].
pub const MAX_DET_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    ns: Namespace,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let field = entries[0].field();
        let ns = entries[0].namespace();
        for e in &entries {
            field.check(e.field())?;
            if e.namespace() != ns {
                return Err(Error::NamespaceMismatch);
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            field,
            ns,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn namespace(&self) -> Namespace {
        self.ns
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// The submatrix made of rows `0..n`.
    pub fn top_rows(&self, n: usize) -> Result<PolyMatrix> {
        if n == 0 || n > self.rows {
            return Err(Error::IndexOutOfRange(format!("top {n} of {} rows", self.rows)));
        }
        PolyMatrix::new(n, self.cols, self.entries[..n * self.cols].to_vec())
    }

    /// True when every entry is a homogeneous form of degree at most one.
    pub fn is_linear(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.is_zero() || matches!(e.homogeneous_degree(), Some(0 | 1)))
    }

    pub fn evaluate(&self, point: &[FieldElem; NVARS]) -> Result<ScalarMatrix> {
        let vals = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        ScalarMatrix::new(self.field, self.rows, self.cols, vals)
    }

    /// Determinant by Laplace expansion along the last row, recursively,
    /// with minors of the leading rows memoized by column subset.
    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > MAX_DET_SIZE {
            return Err(Error::IndexOutOfRange(format!(
                "determinant size {} exceeds {MAX_DET_SIZE}",
                self.rows
            )));
        }
        let all = (1u32 << self.cols) - 1;
        let mut memo = HashMap::new();
        self.leading_minor(all, &mut memo)
    }

    /// Determinant of rows `0..|cols|` restricted to the column set `cols`.
    fn leading_minor(&self, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> Result<MultiPoly> {
        if let Some(m) = memo.get(&cols) {
            return Ok(m.clone());
        }
        let k = cols.count_ones() as usize;
        let result = if k == 0 {
            MultiPoly::one(self.field, self.ns)
        } else {
            let row = k - 1;
            let mut acc = MultiPoly::zero(self.field, self.ns);
            for (pos, c) in (0..self.cols).filter(|c| cols & (1 << c) != 0).enumerate() {
                let entry = self.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                let sub = self.leading_minor(cols & !(1 << c), memo)?;
                let term = entry.try_mul(&sub)?;
                acc = if (row + pos).is_multiple_of(2) {
                    acc.try_add(&term)?
                } else {
                    acc.try_sub(&term)?
                };
            }
            acc
        };
        memo.insert(cols, result.clone());
        Ok(result)
    }

    /// Submatrix with the given rows and columns removed.
    pub fn submatrix(&self, delete_rows: &[usize], delete_cols: &[usize]) -> Result<PolyMatrix> {
        for &r in delete_rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange(format!("row {r}")));
            }
        }
        for &c in delete_cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange(format!("column {c}")));
            }
        }
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !delete_rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !delete_cols.contains(c)).collect();
        let entries = keep_r
            .iter()
            .flat_map(|&r| keep_c.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        PolyMatrix::new(keep_r.len(), keep_c.len(), entries)
    }

    pub fn minor(&self, delete_rows: &[usize], delete_cols: &[usize]) -> Result<MultiPoly> {
        let sub = self.submatrix(delete_rows, delete_cols)?;
        if sub.rows != sub.cols {
            return Err(Error::NonSquare {
                rows: sub.rows,
                cols: sub.cols,
            });
        }
        sub.det()
    }

    /// `Σ_c m[r][c]·v[c]` for each row `r`, with `v` given as polynomials.
    pub fn mul_vec(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(MultiPoly::zero(self.field, self.ns), |acc, (a, b)| {
                        acc.try_add(&a.try_mul(b)?)
                    })
            })
            .collect()
    }
}

/// Matrix of formal partial derivatives `∂p_i/∂v_j`.
pub fn jacobian(polys: &[MultiPoly]) -> Result<PolyMatrix> {
    let entries = polys
        .iter()
        .flat_map(|p| (0..NVARS).map(move |j| p.derivative(j)))
        .collect();
    PolyMatrix::new(polys.len(), NVARS, entries)
}
