//! Enumeration of `P³(F_p)` and the pointwise scans built on it.
//!
//! Points are normalized so the first nonzero coordinate is 1 and visited
//! in lexicographic order of their normalized coordinates. Scans run in
//! parallel over that list; results are collected in list order.

use std::fmt;

use rayon::prelude::*;

use crate::cremona::DeterminantalData;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::ScalarMatrix;
use crate::monomial::NVARS;
use crate::poly::MultiPoly;
use crate::polymatrix::jacobian;
use crate::report::CheckOutcome;

/// Largest prime accepted for exhaustive enumeration.
pub const MAX_SCAN_PRIME: u64 = 101;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElem; NVARS],
}

impl ProjPoint {
    /// Scales `coords` so the first nonzero entry is 1; `None` for the zero vector.
    pub fn normalize(coords: &[FieldElem; NVARS]) -> Option<ProjPoint> {
        let lead = coords.iter().find(|c| !c.is_zero())?;
        let inv = lead.inv().ok()?;
        Some(ProjPoint {
            coords: std::array::from_fn(|i| &coords[i] * &inv),
        })
    }

    pub fn coords(&self) -> &[FieldElem; NVARS] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", c.join(":"))
    }
}

pub fn scan_field(p: u64) -> Result<Field> {
    let field = Field::prime(p)?;
    if p > MAX_SCAN_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(field)
}

fn prime_of(field: Field) -> Result<u64> {
    match field {
        Field::Prime(p) if p > MAX_SCAN_PRIME => Err(Error::PrimeTooLarge(p)),
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::FieldMismatch(Field::Rational, Field::Prime(0))),
    }
}

/// All `p³ + p² + p + 1` points of `P³(F_p)` in lexicographic order.
pub fn projective_points(p: u64) -> Result<Vec<ProjPoint>> {
    let field = scan_field(p)?;
    let mut out = Vec::with_capacity((p * p * p + p * p + p + 1) as usize);
    for lead in (0..NVARS).rev() {
        let free = NVARS - 1 - lead;
        let total = p.pow(free as u32);
        for code in 0..total {
            let mut coords: [FieldElem; NVARS] = std::array::from_fn(|_| field.zero());
            coords[lead] = field.one();
            let mut rest = code;
            for pos in (lead + 1..NVARS).rev() {
                coords[pos] = field.from_i64((rest % p) as i64);
                rest /= p;
            }
            out.push(ProjPoint { coords });
        }
    }
    Ok(out)
}

/// Points of `P³(F_p)` where every polynomial in `polys` vanishes.
pub fn common_zeros(polys: &[MultiPoly]) -> Result<Vec<ProjPoint>> {
    let field = polys
        .first()
        .map(MultiPoly::field)
        .ok_or_else(|| Error::IndexOutOfRange("no polynomials".into()))?;
    let p = prime_of(field)?;
    let points = projective_points(p)?;
    Ok(points
        .into_par_iter()
        .filter(|pt| {
            polys
                .iter()
                .all(|f| f.evaluate(pt.coords()).expect("same field").is_zero())
        })
        .collect())
}

/// `C(F_p)`: common zeros of the four map components.
pub fn enumerate_curve_points(d: &DeterminantalData) -> Result<Vec<ProjPoint>> {
    common_zeros(d.phi_components())
}

/// `C'(F_p)`, the base curve of `ψ`.
pub fn enumerate_mirror_curve_points(d: &DeterminantalData) -> Result<Vec<ProjPoint>> {
    common_zeros(d.psi_components())
}

pub fn enumerate_surface_points(quartic: &MultiPoly) -> Result<Vec<ProjPoint>> {
    common_zeros(std::slice::from_ref(quartic))
}

/// Inclusive interval `[p+1-⌊2g√p⌋, p+1+⌊2g√p⌋]`, clipped below at 0.
pub fn weil_interval(p: u64, genus: u64) -> (u64, u64) {
    let r = (4 * genus * genus * p).isqrt();
    ((p + 1).saturating_sub(r), p + 1 + r)
}

/// The minors of `A` vanish at `x` exactly when `rank A(x) ≤ 2`.
pub fn base_locus_consistency(d: &DeterminantalData) -> Result<CheckOutcome> {
    let p = prime_of(d.field())?;
    let points = projective_points(p)?;
    let mismatches: Vec<String> = points
        .into_par_iter()
        .filter_map(|pt| {
            let minors_vanish = d
                .phi_components()
                .iter()
                .all(|f| f.evaluate(pt.coords()).expect("same field").is_zero());
            let rank = d.a.evaluate(pt.coords()).expect("same field").rank();
            (minors_vanish != (rank <= 2)).then(|| format!("{pt}: minors vanish {minors_vanish}, rank {rank}"))
        })
        .collect();
    if mismatches.is_empty() {
        Ok(CheckOutcome::pass(format!(
            "p={p}: minor-vanishing locus equals rank(A)<=2 locus"
        )))
    } else {
        Ok(CheckOutcome::fail(format!("p={p}: loci differ"), mismatches))
    }
}

/// Every point of `C(F_p)` lies on `det M = 0`.
pub fn curve_on_surface(d: &DeterminantalData, curve: &[ProjPoint]) -> CheckOutcome {
    let off: Vec<String> = curve
        .iter()
        .filter(|pt| !d.det_m.evaluate(pt.coords()).expect("same field").is_zero())
        .map(ToString::to_string)
        .collect();
    if off.is_empty() {
        CheckOutcome::pass(format!("all {} curve points satisfy det M = 0", curve.len()))
    } else {
        CheckOutcome::fail("curve points off S1", off)
    }
}

/// Jacobian criterion at the rational points of the base curve: the 4×4
/// Jacobian of the minors must have rank exactly 2 at each point.
pub fn smooth_scan_curve(generators: &[MultiPoly], points: &[ProjPoint]) -> Result<CheckOutcome> {
    if points.is_empty() {
        return Ok(CheckOutcome::pass("no witnesses: curve has no rational points (vacuous)"));
    }
    let jac = jacobian(generators)?;
    let bad: Vec<String> = points
        .par_iter()
        .filter_map(|pt| {
            let rank = jac.evaluate(pt.coords()).expect("same field").rank();
            (rank != 2).then(|| format!("{pt}: jacobian rank {rank}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(CheckOutcome::pass(format!(
            "jacobian rank 2 at all {} rational curve points",
            points.len()
        )))
    } else {
        Ok(CheckOutcome::fail("singular curve points", bad))
    }
}

/// Points of `P³(F_p)` where all four partials of `quartic` vanish.
/// For odd `p` (so `p ∤ 4`) the Euler identity places them on the quartic.
pub fn quartic_singular_points(quartic: &MultiPoly) -> Result<Vec<ProjPoint>> {
    let p = prime_of(quartic.field())?;
    if p == 2 {
        return Err(Error::BadPrime(p));
    }
    let partials: Vec<MultiPoly> = (0..NVARS).map(|j| quartic.derivative(j)).collect();
    if partials.iter().all(MultiPoly::is_zero) {
        return projective_points(p);
    }
    common_zeros(&partials)
}

pub fn smooth_scan_quartic(quartic: &MultiPoly) -> Result<CheckOutcome> {
    let p = prime_of(quartic.field())?;
    let sing = quartic_singular_points(quartic)?;
    if sing.is_empty() {
        Ok(CheckOutcome::pass(format!("p={p}: no rational singular points")))
    } else {
        Ok(CheckOutcome::fail(
            format!("p={p}: {} rational singular points", sing.len()),
            sing.iter().map(ToString::to_string).collect(),
        ))
    }
}

/// Tallies from [`transfer_points`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransferSummary {
    pub surface_points: usize,
    pub on_curve: usize,
    pub transferred: usize,
    /// Transferred points whose image lies on the base curve of `ψ`; the
    /// round trip is then checked through the kernel of `N(y)`.
    pub via_kernel: usize,
    pub failures: Vec<String>,
}

impl TransferSummary {
    pub fn outcome(&self, p: u64) -> CheckOutcome {
        let summary = format!(
            "p={p}: {} points on S1, {} on C excluded, {} transferred to S2 and round-tripped ({} through ker N(y))",
            self.surface_points, self.on_curve, self.transferred, self.via_kernel
        );
        if self.failures.is_empty() {
            CheckOutcome::pass(summary)
        } else {
            CheckOutcome::fail(summary, self.failures.clone())
        }
    }
}

fn kernel_line(m: &ScalarMatrix) -> Option<ProjPoint> {
    let k = m.kernel_basis();
    if k.len() != 1 {
        return None;
    }
    ProjPoint::normalize(&k[0].clone().try_into().expect("four coordinates"))
}

/// For each `x0 ∈ S1(F_p) \ C`: `y0 = φ(x0)` lies on `S2`, spans
/// `ker M(x0)`, and maps back to `x0`. The way back is `ψ(y0)` when
/// defined, otherwise the kernel line of `N(y0)`.
pub fn transfer_points(d: &DeterminantalData) -> Result<TransferSummary> {
    let surface = enumerate_surface_points(&d.det_m)?;
    let phi = d.phi_components();
    let psi = d.psi_components();
    let results: Vec<(bool, bool, Option<String>)> = surface
        .par_iter()
        .map(|x0| {
            let img: [FieldElem; NVARS] =
                std::array::from_fn(|i| phi[i].evaluate(x0.coords()).expect("same field"));
            let Some(y0) = ProjPoint::normalize(&img) else {
                return (true, false, None);
            };
            let mut problems = Vec::new();
            if !d.det_n.evaluate(y0.coords()).expect("same field").is_zero() {
                problems.push("det N(y0) != 0".to_string());
            }
            let m0 = d.m.evaluate(x0.coords()).expect("same field");
            if kernel_line(&m0).as_ref() != Some(&y0) {
                problems.push(format!("ker M(x0) has dim {} and is not spanned by y0", m0.kernel_basis().len()));
            }
            let back: [FieldElem; NVARS] =
                std::array::from_fn(|i| psi[i].evaluate(y0.coords()).expect("same field"));
            let (back_pt, via_kernel) = match ProjPoint::normalize(&back) {
                Some(pt) => (Some(pt), false),
                None => (kernel_line(&d.n.evaluate(y0.coords()).expect("same field")), true),
            };
            if back_pt.as_ref() != Some(x0) {
                problems.push(format!(
                    "round trip gives {}",
                    back_pt.map_or("an undefined point".into(), |b| b.to_string())
                ));
            }
            let failure = (!problems.is_empty()).then(|| format!("x0={x0} y0={y0}: {}", problems.join("; ")));
            (false, via_kernel, failure)
        })
        .collect();
    let mut summary = TransferSummary {
        surface_points: surface.len(),
        ..Default::default()
    };
    for (on_curve, via_kernel, failure) in results {
        if on_curve {
            summary.on_curve += 1;
            continue;
        }
        match failure {
            Some(f) => summary.failures.push(f),
            None => {
                summary.transferred += 1;
                if via_kernel {
                    summary.via_kernel += 1;
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Namespace;

    fn var(f: Field, i: usize) -> MultiPoly {
        MultiPoly::var(f, Namespace::X, i)
    }

    #[test]
    fn enumeration_counts_and_order() {
        for p in [2u64, 3, 5, 7] {
            let pts = projective_points(p).unwrap();
            assert_eq!(pts.len() as u64, p * p * p + p * p + p + 1);
            let mut sorted = pts.clone();
            sorted.sort_by_key(|pt| pt.coords().iter().map(|c| c.residue().unwrap()).collect::<Vec<_>>());
            assert_eq!(sorted, pts);
            let mut dedup = pts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), pts.len());
        }
        assert_eq!(projective_points(103), Err(Error::PrimeTooLarge(103)));
        assert_eq!(projective_points(9), Err(Error::InvalidPrime(9)));
    }

    #[test]
    fn normalization() {
        let f = Field::prime(7).unwrap();
        let p = ProjPoint::normalize(&[f.zero(), f.from_i64(3), f.from_i64(6), f.one()]).unwrap();
        assert_eq!(p.to_string(), "(0:1:2:5)");
        assert!(ProjPoint::normalize(&[f.zero(), f.zero(), f.zero(), f.zero()]).is_none());
    }

    #[test]
    fn weil_intervals() {
        assert_eq!(weil_interval(7, 3), (0, 23));
        assert_eq!(weil_interval(11, 3), (0, 31));
        assert_eq!(weil_interval(13, 3), (0, 35));
        assert_eq!(weil_interval(101, 3), (42, 162));
    }

    #[test]
    fn fermat_quartic_is_smooth() {
        let f = Field::prime(5).unwrap();
        let q = (0..4).fold(MultiPoly::zero(f, Namespace::X), |acc, i| &acc + &var(f, i).pow(4).unwrap());
        assert!(quartic_singular_points(&q).unwrap().is_empty());
        assert!(smooth_scan_quartic(&q).unwrap().passed);
    }

    #[test]
    fn cone_quartic_is_singular_along_hyperplane() {
        let f = Field::prime(5).unwrap();
        let q = var(f, 0).pow(4).unwrap();
        let sing = quartic_singular_points(&q).unwrap();
        assert_eq!(sing.len(), 31);
        assert!(sing.iter().all(|pt| pt.coords()[0].is_zero()));
        assert!(!smooth_scan_quartic(&q).unwrap().passed);
    }

    #[test]
    fn bad_primes() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(quartic_singular_points(&var(f2, 0).pow(4).unwrap()), Err(Error::BadPrime(2)));
        let f = Field::prime(103).unwrap();
        assert_eq!(quartic_singular_points(&var(f, 0)), Err(Error::PrimeTooLarge(103)));
    }

    #[test]
    fn empty_curve_is_vacuous() {
        let f = Field::prime(3).unwrap();
        let out = smooth_scan_curve(&[var(f, 0)], &[]).unwrap();
        assert!(out.passed);
        assert!(out.summary.contains("no witnesses"));
    }
}
