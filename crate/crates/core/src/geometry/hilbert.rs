//! Graded dimensions of `R/I` by linear algebra on coefficient vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ScalarMatrix;
use crate::monomial::{Monomial, Namespace};
use crate::poly::MultiPoly;

pub const MAX_HILBERT_DEGREE: usize = 10;

/// A homogeneous ideal presented by generators.
#[derive(Clone, Debug)]
pub struct GradedIdealView {
    generators: Vec<MultiPoly>,
    field: Field,
    ns: Namespace,
}

impl GradedIdealView {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::IndexOutOfRange("ideal needs a generator".into()))?;
        let (field, ns) = (first.field(), first.namespace());
        for g in &generators {
            field.check(g.field())?;
            if g.namespace() != ns {
                return Err(Error::NamespaceMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneousImages);
            }
        }
        Ok(GradedIdealView {
            generators,
            field,
            ns,
        })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// `dim_k (R/I)_d`: the number of degree-`d` monomials minus the rank of
    /// the span of `m·g` over generators `g` and monomials `m` of the
    /// complementary degree.
    pub fn hilbert_dim(&self, d: usize) -> Result<usize> {
        if !(1..=MAX_HILBERT_DEGREE).contains(&d) {
            return Err(Error::DegreeCapExceeded(d));
        }
        let basis = Monomial::all_of_degree(d as u32);
        let column: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut entries = Vec::new();
        let mut rows = 0;
        for g in &self.generators {
            let Some(e) = g.homogeneous_degree() else {
                continue;
            };
            if e as usize > d {
                continue;
            }
            for m in Monomial::all_of_degree(d as u32 - e) {
                let shifted = g.try_mul(&MultiPoly::monomial(m, self.field.one(), self.ns))?;
                let mut row = vec![self.field.zero(); basis.len()];
                for (mono, c) in shifted.terms() {
                    row[column[mono]] = c.clone();
                }
                entries.extend(row);
                rows += 1;
            }
        }
        let rank = if rows == 0 {
            0
        } else {
            ScalarMatrix::new(self.field, rows, basis.len(), entries)?.rank()
        };
        Ok(basis.len() - rank)
    }

    pub fn curve_degree_genus(&self) -> Result<(i64, i64)> {
        let hf = [self.hilbert_dim(6)?, self.hilbert_dim(7)?, self.hilbert_dim(8)?];
        fit_degree_genus(hf)
    }
}

/// Fits `HF(d) = deg·d + 1 - g` through `d = 6, 7` and checks `d = 8`.
pub fn fit_degree_genus(hf: [usize; 3]) -> Result<(i64, i64)> {
    let [h6, h7, h8] = hf.map(|h| h as i64);
    let degree = h7 - h6;
    let genus = 1 - (h6 - 6 * degree);
    if h8 != 8 * degree + 1 - genus {
        return Err(Error::NotEventuallyLinear(hf));
    }
    Ok((degree, genus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || n < k {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn line_fit() {
        assert_eq!(fit_degree_genus([34, 40, 46]).unwrap(), (6, 3));
        assert!(matches!(fit_degree_genus([28, 36, 45]), Err(Error::NotEventuallyLinear(_))));
    }

    #[test]
    fn hyperplane_grows_quadratically() {
        let f = Field::prime(7).unwrap();
        let coeffs: [FieldElem; 4] = std::array::from_fn(|i| f.from_i64(i as i64 + 1));
        let ideal = GradedIdealView::new(vec![MultiPoly::linear(&coeffs, Namespace::X).unwrap()]).unwrap();
        for d in 1..=8 {
            assert_eq!(ideal.hilbert_dim(d).unwrap() as i64, binom(d as i64 + 2, 2));
        }
        assert!(matches!(ideal.curve_degree_genus(), Err(Error::NotEventuallyLinear(_))));
    }

    #[test]
    fn degree_range() {
        let f = Field::Rational;
        let ideal = GradedIdealView::new(vec![MultiPoly::var(f, Namespace::X, 0)]).unwrap();
        assert_eq!(ideal.hilbert_dim(0), Err(Error::DegreeCapExceeded(0)));
        assert_eq!(ideal.hilbert_dim(11), Err(Error::DegreeCapExceeded(11)));
    }

    #[test]
    fn two_skew_lines() {
        // (x1, x2) ∩ (x3, x4) = (x1x3, x1x4, x2x3, x2x4): HF(d) = 2(d+1)
        let f = Field::Rational;
        let v: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(f, Namespace::X, i)).collect();
        let gens = vec![&v[0] * &v[2], &v[0] * &v[3], &v[1] * &v[2], &v[1] * &v[3]];
        let ideal = GradedIdealView::new(gens).unwrap();
        for d in 1..=8 {
            assert_eq!(ideal.hilbert_dim(d).unwrap(), 2 * (d + 1));
        }
        assert_eq!(ideal.curve_degree_genus().unwrap(), (2, -1));
    }
}
