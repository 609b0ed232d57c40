//! Dense matrices over an exact field: rank, right kernel, determinant.
//!
//! Elimination pivots on the first nonzero entry of each column, scanning
//! rows top to bottom, so kernel bases are reproducible. Rational matrices
//! are eliminated fraction-free (Bareiss) over the integers after clearing
//! row denominators; prime field matrices on raw residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElem>,
}

impl ScalarMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            field.check(e.field())?;
        }
        Ok(ScalarMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::new(
            field,
            rows,
            cols,
            values.iter().map(|&v| field.from_i64(v)).collect(),
        )
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ScalarMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    /// Matrix-vector product `m · v`.
    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        for x in v {
            self.field.check(x.field())?;
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let mut rows = self.residue_rows();
                echelon_mod_p(&mut rows, self.cols, p).0
            }
            Field::Rational => bareiss(self.integer_rows(), self.cols).0,
        }
    }

    pub fn det(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        match self.field {
            Field::Prime(p) => {
                let mut rows = self.residue_rows();
                let (rank, sign_flip) = echelon_mod_p(&mut rows, n, p);
                if rank < n {
                    return Ok(self.field.zero());
                }
                let mut d = if sign_flip { p - 1 } else { 1 };
                for (i, row) in rows.iter().enumerate() {
                    d = d * row[i] % p;
                }
                Ok(FieldElem::Prime { value: d, p })
            }
            Field::Rational => {
                // det(m) = det(D·m) / prod(D) where D clears each row's denominators.
                let mut scale = BigInt::one();
                let mut rows = Vec::with_capacity(n);
                for r in 0..n {
                    let (row, l) = clear_denominators(self.row(r));
                    scale *= l;
                    rows.push(row);
                }
                let (rank, det) = bareiss(rows, n);
                if rank < n {
                    return Ok(self.field.zero());
                }
                Ok(FieldElem::Rational(num_rational::BigRational::new(det, scale)))
            }
        }
    }

    /// Basis of the right null space `{v : m·v = 0}`, one vector per
    /// non-pivot column of the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = rref[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form with pivot columns.
    fn rref(&self) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
        let mut rows: Vec<Vec<FieldElem>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(pr) = (next..self.rows).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, pr);
            let inv = rows[next][c].inv().expect("pivot is nonzero");
            for x in rows[next].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..self.rows {
                if r != next && !rows[r][c].is_zero() {
                    let factor = rows[r][c].clone();
                    for k in 0..self.cols {
                        let t = &factor * &rows[next][k];
                        rows[r][k] = &rows[r][k] - &t;
                    }
                }
            }
            pivots.push(c);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        (rows, pivots)
    }

    fn residue_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.residue().expect("prime field entry"))
                    .collect()
            })
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| clear_denominators(self.row(r)).0)
            .collect()
    }
}

/// Scales a row of rationals by the lcm of its denominators.
fn clear_denominators(row: &[FieldElem]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, e| {
        acc.lcm(e.as_rational().expect("rational entry").denom())
    });
    let ints = row
        .iter()
        .map(|e| {
            let q = e.as_rational().expect("rational entry");
            q.numer() * (&l / q.denom())
        })
        .collect();
    (ints, l)
}

/// Row echelon form in place over `F_p`. Returns the rank and whether an
/// odd number of row swaps occurred.
pub(crate) fn echelon_mod_p(rows: &mut [Vec<u64>], cols: usize, p: u64) -> (usize, bool) {
    let n = rows.len();
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(pr) = (rank..n).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        if pr != rank {
            rows.swap(pr, rank);
            odd = !odd;
        }
        let inv = FieldElem::Prime {
            value: rows[rank][c],
            p,
        }
        .inv()
        .expect("nonzero pivot")
        .residue()
        .unwrap();
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = row[c] * inv % p;
            for k in c..cols {
                row[k] = (row[k] + (p - factor) * pivot_row[k]) % p;
            }
        }
        rank += 1;
    }
    (rank, odd)
}

/// Fraction-free elimination. Returns the rank and, for square full-rank
/// input, the determinant.
pub(crate) fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let n = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(pr) = (rank..n).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        if pr != rank {
            rows.swap(pr, rank);
            sign = -sign;
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let v = pivot * &row[k] - &lead * &pivot_row[k];
                row[k] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    let det = if rank == n && n == cols {
        sign * prev
    } else {
        BigInt::zero()
    };
    (rank, det)
}
