//! The 4×4×4 coefficient tensor `a[i][j][k]` and the bilinear forms
//! `Q_i(x, y) = Σ_{j,k} a[i][j][k]·x_k·y_j` it defines.
//!
//! Indices are zero-based: `i` is the equation (row of `M`), `j` the
//! y-index, `k` the x-index. Entries are stored as integers and mapped into
//! the tensor's field by reduction.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::ScalarMatrix;
use crate::monomial::{Monomial, Namespace, NVARS};
use crate::poly::MultiPoly;
use crate::rng::SplitMix64;

pub const DIM: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub seed: Option<u64>,
    /// Zero-based generation attempt that produced the tensor.
    pub attempt: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTensor {
    field: Field,
    ints: [i64; DIM * DIM * DIM],
    pub provenance: Provenance,
}

fn idx(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

impl CoefficientTensor {
    pub fn from_fn(field: Field, mut f: impl FnMut(usize, usize, usize) -> i64) -> Self {
        let mut ints = [0; DIM * DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    ints[idx(i, j, k)] = f(i, j, k);
                }
            }
        }
        CoefficientTensor {
            field,
            ints,
            provenance: Provenance::default(),
        }
    }

    pub fn zero(field: Field) -> Self {
        Self::from_fn(field, |_, _, _| 0)
    }

    /// Draws the 64 entries in `(i, j, k)` row-major order from `rng`.
    pub fn random(field: Field, rng: &mut SplitMix64, lo: i64, hi: i64) -> Self {
        Self::from_fn(field, |_, _, _| rng.next_in_range(lo, hi))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn int(&self, i: usize, j: usize, k: usize) -> i64 {
        self.ints[idx(i, j, k)]
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> FieldElem {
        self.field.from_i64(self.int(i, j, k))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        self.ints[idx(i, j, k)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.ints.iter().all(|e| self.field.from_i64(*e).is_zero())
    }

    /// The same integer tensor read in `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<CoefficientTensor> {
        let target = Field::prime(p)?;
        match self.field {
            Field::Rational => {}
            f if f == target => {}
            f => return Err(Error::FieldMismatch(f, target)),
        }
        Ok(CoefficientTensor {
            field: target,
            ints: self.ints,
            provenance: self.provenance,
        })
    }

    /// Exchanges the roles of `x` and `y`: `a'[i][j][k] = a[i][k][j]`, so
    /// that `M` of the result is `N` of `self` (renamed) and vice versa.
    pub fn swap_roles(&self) -> CoefficientTensor {
        let mut t = Self::from_fn(self.field, |i, j, k| self.int(i, k, j));
        t.provenance = self.provenance;
        t
    }

    /// `B_i` with `(B_i)[j][k] = a[i][j][k]`.
    pub fn bilinear_form_matrix(&self, i: usize) -> Result<ScalarMatrix> {
        if i >= DIM {
            return Err(Error::IndexOutOfRange(format!("bilinear form index {i}")));
        }
        let entries = (0..DIM)
            .flat_map(|j| (0..DIM).map(move |k| (j, k)))
            .map(|(j, k)| self.entry(i, j, k))
            .collect();
        ScalarMatrix::new(self.field, DIM, DIM, entries)
    }

    pub fn bilinear_form(&self, i: usize) -> Result<BilinearForm> {
        let b = self.bilinear_form_matrix(i)?;
        Ok(BilinearForm::from_fn(self.field, |k, j| b.get(j, k).clone()))
    }

    /// `m_ij(x) = Σ_k a[i][j][k]·x_k`.
    pub fn m_entry(&self, i: usize, j: usize) -> MultiPoly {
        let coeffs: [FieldElem; NVARS] = std::array::from_fn(|k| self.entry(i, j, k));
        MultiPoly::linear(&coeffs, Namespace::X).expect("single field")
    }

    /// `n_ik(y) = Σ_j a[i][j][k]·y_j`.
    pub fn n_entry(&self, i: usize, k: usize) -> MultiPoly {
        let coeffs: [FieldElem; NVARS] = std::array::from_fn(|j| self.entry(i, j, k));
        MultiPoly::linear(&coeffs, Namespace::Y).expect("single field")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TensorFile = serde_json::from_str(text)?;
        let field = match file.field {
            FieldSpec::Named(ref s) if s == "rational" => Field::Rational,
            FieldSpec::Named(s) => return Err(Error::Parse(format!("unknown field {s:?}"))),
            FieldSpec::Prime { prime } => Field::prime(prime)?,
        };
        if file.a.len() != DIM
            || file.a.iter().any(|s| s.len() != DIM || s.iter().any(|r| r.len() != DIM))
        {
            let count: usize = file.a.iter().flatten().map(Vec::len).sum();
            return Err(Error::Parse(format!(
                "tensor must be 4x4x4 nested arrays ({count} entries found)"
            )));
        }
        let mut t = Self::from_fn(field, |i, j, k| file.a[i][j][k]);
        t.provenance = Provenance {
            seed: file.seed,
            attempt: file.attempt,
        };
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Canonical JSON text: one `a[i][j]` row per line.
    pub fn to_json(&self) -> String {
        let field = match self.field {
            Field::Rational => "\"rational\"".to_string(),
            Field::Prime(p) => format!("{{\"prime\": {p}}}"),
        };
        let slices: Vec<String> = (0..DIM)
            .map(|i| {
                let rows: Vec<String> = (0..DIM)
                    .map(|j| {
                        let v: Vec<String> = (0..DIM).map(|k| self.int(i, j, k).to_string()).collect();
                        format!("[{}]", v.join(", "))
                    })
                    .collect();
                format!("    [\n      {}\n    ]", rows.join(",\n      "))
            })
            .collect();
        let mut out = format!("{{\n  \"field\": {field},\n  \"a\": [\n{}\n  ]", slices.join(",\n"));
        if let Some(seed) = self.provenance.seed {
            out.push_str(&format!(",\n  \"seed\": {seed}"));
        }
        if let Some(attempt) = self.provenance.attempt {
            out.push_str(&format!(",\n  \"attempt\": {attempt}"));
        }
        out.push_str("\n}\n");
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    field: FieldSpec,
    a: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    attempt: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

/// A polynomial of bidegree (1,1) in `x` and `y`, stored as its
/// coefficient matrix: `coeffs[k][j]` multiplies `x_k·y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    field: Field,
    coeffs: [[FieldElem; NVARS]; NVARS],
}

impl BilinearForm {
    pub fn from_fn(field: Field, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        BilinearForm {
            field,
            coeffs: std::array::from_fn(|k| std::array::from_fn(|j| f(k, j))),
        }
    }

    pub fn coeff(&self, k: usize, j: usize) -> &FieldElem {
        &self.coeffs[k][j]
    }

    /// Expands `Σ_j forms[j](x)·y_j` for linear forms in `x`.
    pub fn from_x_forms_times_y(forms: &[MultiPoly]) -> Result<Self> {
        Self::expand(forms, Namespace::X, false)
    }

    /// Expands `Σ_k forms[k](y)·x_k` for linear forms in `y`.
    pub fn from_y_forms_times_x(forms: &[MultiPoly]) -> Result<Self> {
        Self::expand(forms, Namespace::Y, true)
    }

    fn expand(forms: &[MultiPoly], ns: Namespace, outer_is_x: bool) -> Result<Self> {
        if forms.len() != NVARS {
            return Err(Error::ShapeMismatch {
                expected: NVARS,
                got: forms.len(),
            });
        }
        let field = forms[0].field();
        let mut coeffs: [[FieldElem; NVARS]; NVARS] =
            std::array::from_fn(|_| std::array::from_fn(|_| field.zero()));
        for (outer, form) in forms.iter().enumerate() {
            field.check(form.field())?;
            if form.namespace() != ns {
                return Err(Error::NamespaceMismatch);
            }
            for (m, c) in form.terms() {
                let inner = (0..NVARS)
                    .find(|&v| *m == Monomial::var(v))
                    .ok_or_else(|| Error::Parse(format!("{form} is not a linear form")))?;
                let (k, j) = if outer_is_x { (outer, inner) } else { (inner, outer) };
                coeffs[k][j] = &coeffs[k][j] + c;
            }
        }
        Ok(BilinearForm { field, coeffs })
    }

    pub fn evaluate(&self, x: &[FieldElem; NVARS], y: &[FieldElem; NVARS]) -> Result<FieldElem> {
        for v in x.iter().chain(y) {
            self.field.check(v.field())?;
        }
        let mut acc = self.field.zero();
        for k in 0..NVARS {
            for j in 0..NVARS {
                acc = &acc + &(&self.coeffs[k][j] * &(&x[k] * &y[j]));
            }
        }
        Ok(acc)
    }

    /// Text form, e.g. `x3*y2 - 2*x1*y4`.
    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for k in 0..NVARS {
            for j in 0..NVARS {
                let c = &self.coeffs[k][j];
                if c.is_zero() {
                    continue;
                }
                let mono = format!("x{}*y{}", k + 1, j + 1);
                terms.push((c.clone(), mono));
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (c, mono)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c };
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}
