//! The cubo-cubic transformation built from a coefficient tensor, the two
//! determinantal matrices, and the symbolic identities relating them.
//!
//! From the tensor `a[i][j][k]`:
//!
//! * `M(x)` has entries `m_ij = Σ_k a[i][j][k]·x_k`, `N(y)` has
//!   `n_ik = Σ_j a[i][j][k]·y_j`, so `M(x)·yᵗ = N(y)·xᵗ` row by row;
//! * `A(x)` is the top 3×4 block of `M`, `A'(y)` that of `N`;
//! * `φ = (f_1..f_4)` with `f_j = (-1)^(4+j)·det(A without column j)`
//!   (one-based `j`), i.e. the last-row cofactors of `M`; `ψ` is built the
//!   same way from `A'`.
//!
//! `A(x)·φ(x) = 0` since it is a Laplace expansion of a matrix with a repeated
//! row. By the swap identity that is `A'(φ(x))·x = 0`, which is why
//! `ψ(φ(x))` is a multiple of `x`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::{Namespace, NVARS};
use crate::poly::MultiPoly;
use crate::polymatrix::PolyMatrix;
use crate::report::CheckOutcome;
use crate::tensor::{BilinearForm, CoefficientTensor, DIM};

/// A rational map `P³ ⇢ P³` given by four forms of a common degree in the
/// source coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CremonaMap {
    components: [MultiPoly; NVARS],
    target: Namespace,
}

impl CremonaMap {
    pub fn new(components: [MultiPoly; NVARS], target: Namespace) -> Result<Self> {
        let field = components[0].field();
        let source = components[0].namespace();
        let mut degree = None;
        for c in &components {
            field.check(c.field())?;
            if c.namespace() != source {
                return Err(Error::NamespaceMismatch);
            }
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree().ok_or(Error::NonHomogeneousImages)?;
            if degree.is_some_and(|d0| d0 != d) {
                return Err(Error::NonHomogeneousImages);
            }
            degree = Some(d);
        }
        if degree.is_none() {
            return Err(Error::NotBirational("all components vanish identically".into()));
        }
        Ok(CremonaMap { components, target })
    }

    pub fn identity(field: Field, ns: Namespace) -> Self {
        CremonaMap {
            components: std::array::from_fn(|i| MultiPoly::var(field, ns, i)),
            target: ns,
        }
    }

    pub fn components(&self) -> &[MultiPoly; NVARS] {
        &self.components
    }

    pub fn source(&self) -> Namespace {
        self.components[0].namespace()
    }

    pub fn target(&self) -> Namespace {
        self.target
    }

    pub fn field(&self) -> Field {
        self.components[0].field()
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .find_map(MultiPoly::homogeneous_degree)
            .expect("some component is nonzero")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CremonaMap) -> Result<CremonaMap> {
        if self.source() != inner.target {
            return Err(Error::NamespaceMismatch);
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        CremonaMap::new(comps.try_into().expect("four components"), self.target)
    }

    pub fn evaluate(&self, point: &[FieldElem; NVARS]) -> Result<[FieldElem; NVARS]> {
        let vals = self
            .components
            .iter()
            .map(|c| c.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(vals.try_into().expect("four values"))
    }

    /// For a self-map of one coordinate space whose components are
    /// `λ·v_i`, returns `λ`. Fails with `NotBirational` otherwise.
    pub fn identity_multiplier(&self) -> Result<MultiPoly> {
        if self.source() != self.target {
            return Err(Error::NamespaceMismatch);
        }
        let ns = self.target;
        let mut lambda: Option<MultiPoly> = None;
        for (i, c) in self.components.iter().enumerate() {
            let v = MultiPoly::var(self.field(), ns, i);
            let q = c.exact_divide(&v).map_err(|e| match e {
                Error::NotDivisible => Error::NotBirational(format!(
                    "component {} is not divisible by {}{}",
                    i + 1,
                    ns.letter(),
                    i + 1
                )),
                other => other,
            })?;
            match &lambda {
                None => lambda = Some(q),
                Some(l) if *l != q => {
                    return Err(Error::NotBirational(format!(
                        "quotient of component {} differs from that of component 1",
                        i + 1
                    )))
                }
                _ => {}
            }
        }
        let lambda = lambda.expect("four components");
        if lambda.is_zero() {
            return Err(Error::NotBirational("composition vanishes identically".into()));
        }
        Ok(lambda)
    }
}

/// Signed maximal minors of a 3×4 matrix: `(-1)^(4+j)·det(A without column j)`
/// for one-based `j`, the last-row cofactors of any 4×4 extension of `A`.
pub fn signed_maximal_minors(a: &PolyMatrix) -> Result<[MultiPoly; NVARS]> {
    if a.rows() != 3 || a.cols() != NVARS {
        return Err(Error::ShapeMismatch {
            expected: 12,
            got: a.rows() * a.cols(),
        });
    }
    let mut out = Vec::with_capacity(NVARS);
    for j in 0..NVARS {
        let minor = a.minor(&[], &[j])?;
        // (4 + j + 1) even iff j is odd
        out.push(if j % 2 == 1 { minor } else { minor.neg() });
    }
    Ok(out.try_into().expect("four minors"))
}

/// Everything derived from one coefficient tensor.
#[derive(Clone, Debug)]
pub struct DeterminantalData {
    pub tensor: CoefficientTensor,
    /// 3×4 in `x`.
    pub a: PolyMatrix,
    /// 4×4 in `x`.
    pub m: PolyMatrix,
    /// 4×4 in `y`.
    pub n: PolyMatrix,
    /// 3×4 in `y`.
    pub a_prime: PolyMatrix,
    pub det_m: MultiPoly,
    pub det_n: MultiPoly,
    phi_components: [MultiPoly; NVARS],
    psi_components: [MultiPoly; NVARS],
}

impl DeterminantalData {
    /// Builds all matrices and maps without any genericity gate.
    pub fn assemble(t: &CoefficientTensor) -> DeterminantalData {
        let m_entries = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .map(|(i, j)| t.m_entry(i, j))
            .collect();
        let n_entries = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |k| (i, k)))
            .map(|(i, k)| t.n_entry(i, k))
            .collect();
        let m = PolyMatrix::new(DIM, DIM, m_entries).expect("16 entries");
        let n = PolyMatrix::new(DIM, DIM, n_entries).expect("16 entries");
        let a = m.top_rows(3).expect("3 rows");
        let a_prime = n.top_rows(3).expect("3 rows");
        let det_m = m.det().expect("4x4");
        let det_n = n.det().expect("4x4");
        let phi_components = signed_maximal_minors(&a).expect("3x4");
        let psi_components = signed_maximal_minors(&a_prime).expect("3x4");
        DeterminantalData {
            tensor: t.clone(),
            a,
            m,
            n,
            a_prime,
            det_m,
            det_n,
            phi_components,
            psi_components,
        }
    }

    /// [`assemble`](Self::assemble), rejecting tensors whose determinantal
    /// quartics vanish identically.
    pub fn build(t: &CoefficientTensor) -> Result<DeterminantalData> {
        let d = Self::assemble(t);
        d.require_surfaces()?;
        Ok(d)
    }

    pub fn require_surfaces(&self) -> Result<()> {
        if self.det_m.is_zero() {
            return Err(Error::DegenerateTensor("det M(x) vanishes identically".into()));
        }
        if self.det_n.is_zero() {
            return Err(Error::DegenerateTensor("det N(y) vanishes identically".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.tensor.field()
    }

    pub fn phi_components(&self) -> &[MultiPoly; NVARS] {
        &self.phi_components
    }

    pub fn psi_components(&self) -> &[MultiPoly; NVARS] {
        &self.psi_components
    }

    /// `φ: P³_x ⇢ P³_y`.
    pub fn phi(&self) -> Result<CremonaMap> {
        CremonaMap::new(self.phi_components.clone(), Namespace::Y)
    }

    /// `ψ: P³_y ⇢ P³_x`.
    pub fn psi(&self) -> Result<CremonaMap> {
        CremonaMap::new(self.psi_components.clone(), Namespace::X)
    }
}

/// `M(x)·yᵗ = N(y)·xᵗ`, compared row by row as bilinear polynomials.
pub fn check_swap_identity(d: &DeterminantalData) -> CheckOutcome {
    let mut bad = Vec::new();
    for i in 0..DIM {
        let lhs = BilinearForm::from_x_forms_times_y(d.m.row(i)).expect("linear x-forms");
        let rhs = BilinearForm::from_y_forms_times_x(d.n.row(i)).expect("linear y-forms");
        if lhs != rhs {
            bad.push(format!("row {}: {} != {}", i + 1, lhs.render(), rhs.render()));
        }
    }
    if bad.is_empty() {
        CheckOutcome::pass("M(x)*y^t = N(y)*x^t holds in all 4 rows")
    } else {
        CheckOutcome::fail("swap identity violated", bad)
    }
}

/// `det M = Σ_j m_4j·c_j` with `c_j` the last-row cofactors, and `c_j = f_j`.
pub fn check_laplace_containment(d: &DeterminantalData) -> CheckOutcome {
    let field = d.field();
    let mut witnesses = Vec::new();
    let mut expansion = MultiPoly::zero(field, Namespace::X);
    for j in 0..DIM {
        let minor = d.m.minor(&[3], &[j]).expect("3x3 minor");
        let cofactor = if (3 + j) % 2 == 0 { minor } else { minor.neg() };
        if cofactor != d.phi_components[j] {
            witnesses.push(format!(
                "cofactor {} = {} but f_{} = {}",
                j + 1,
                cofactor,
                j + 1,
                d.phi_components[j]
            ));
        }
        expansion = &expansion + &(d.m.get(3, j) * &cofactor);
    }
    if expansion != d.det_m {
        witnesses.push(format!("sum m_4j*c_j = {expansion} but det M = {}", d.det_m));
    }
    if witnesses.is_empty() {
        CheckOutcome::pass(format!(
            "det M = sum_j m_4j*f_j exactly (det M has {} terms), so det M lies in (f_1..f_4)",
            d.det_m.len()
        ))
    } else {
        CheckOutcome::fail("Laplace expansion does not match the map components", witnesses)
    }
}

/// `ψ∘φ = λ·id_x` and `φ∘ψ = μ·id_y`.
#[derive(Clone, Debug)]
pub struct InverseComposition {
    pub lambda: MultiPoly,
    pub mu: MultiPoly,
}

pub fn check_inverse_composition(d: &DeterminantalData) -> Result<InverseComposition> {
    let phi = d.phi()?;
    let psi = d.psi()?;
    for (name, map) in [("phi", &phi), ("psi", &psi)] {
        if map.degree() != 3 {
            return Err(Error::NotBirational(format!(
                "{name} has degree {} instead of 3",
                map.degree()
            )));
        }
    }
    let lambda = psi.compose(&phi)?.identity_multiplier()?;
    let mu = phi.compose(&psi)?.identity_multiplier()?;
    Ok(InverseComposition { lambda, mu })
}

/// `det N(φ(x)) = q·det M(x)` and the mirror `det M(ψ(y)) = q'·det N(y)`.
#[derive(Clone, Debug)]
pub struct SurfaceTransfer {
    pub q: MultiPoly,
    pub q_mirror: MultiPoly,
}

pub fn check_surface_transfer_symbolic(d: &DeterminantalData) -> Result<SurfaceTransfer> {
    d.require_surfaces()?;
    let pulled_n = d.det_n.substitute(&d.phi_components)?;
    let q = pulled_n.exact_divide(&d.det_m)?;
    let pulled_m = d.det_m.substitute(&d.psi_components)?;
    let q_mirror = pulled_m.exact_divide(&d.det_n)?;
    Ok(SurfaceTransfer { q, q_mirror })
}
