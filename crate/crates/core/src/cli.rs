//! Command implementations behind the `cubocubic` binary: seeded tensor
//! generation, the verification pipeline, and point scans.

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::cremona::{
    check_inverse_composition, check_laplace_containment, check_surface_transfer_symbolic,
    check_swap_identity, DeterminantalData,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{self, GradedIdealView, ProjPoint};
use crate::report::{CheckOutcome, CheckRecord, Status, TensorProvenance, VerificationReport};
use crate::rng::SplitMix64;
use crate::tensor::{CoefficientTensor, Provenance};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CUBOCUBIC_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanTarget {
    Curve,
    S1,
    S2,
}

impl ScanTarget {
    pub fn name(self) -> &'static str {
        match self {
            ScanTarget::Curve => "curve",
            ScanTarget::S1 => "s1",
            ScanTarget::S2 => "s2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub field: Field,
    pub coeff_range: (i64, i64),
    pub primes: Vec<u64>,
    pub max_degree: usize,
    pub retries: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            field: Field::Rational,
            coeff_range: (-5, 5),
            primes: vec![7, 11, 13],
            max_degree: 8,
            retries: 5,
            format: OutputFormat::Text,
            out: None,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            Field::prime(p)?;
            if p < 3 {
                return Err(Error::BadPrime(p));
            }
            if p > geometry::points::MAX_SCAN_PRIME {
                return Err(Error::PrimeTooLarge(p));
            }
        }
        if let Field::Prime(p) = self.field {
            if p < 3 {
                return Err(Error::BadPrime(p));
            }
        }
        if self.retries == 0 {
            return Err(Error::Parse("retry limit must be at least 1".into()));
        }
        if self.coeff_range.0 > self.coeff_range.1 {
            return Err(Error::Parse(format!("empty coefficient range {:?}", self.coeff_range)));
        }
        if !(1..=geometry::hilbert::MAX_HILBERT_DEGREE).contains(&self.max_degree) {
            return Err(Error::DegreeCapExceeded(self.max_degree));
        }
        Ok(())
    }
}

/// Runs `f` on a pool of at most `threads` workers (all cores when `None`).
pub fn with_thread_cap<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    builder.build().expect("thread pool").install(f)
}

/// Draws tensors from `seed, seed+1, ...` until one passes the fast gates
/// (`det M ≠ 0`, `det N ≠ 0`, `ψ∘φ = λ·id` with `λ ≠ 0`).
pub fn generate(config: &RunConfig) -> Result<CoefficientTensor> {
    config.validate()?;
    let (lo, hi) = config.coeff_range;
    let mut last = String::new();
    for attempt in 0..config.retries {
        let subseed = config.seed.wrapping_add(attempt as u64);
        let mut rng = SplitMix64::new(subseed);
        let mut t = CoefficientTensor::random(config.field, &mut rng, lo, hi);
        t.provenance = Provenance {
            seed: Some(config.seed),
            attempt: Some(attempt),
        };
        match fast_gates(&t) {
            Ok(()) => return Ok(t),
            Err(e) => last = format!("attempt {attempt} (subseed {subseed}): {e}"),
        }
    }
    Err(Error::GenericityExhausted {
        attempts: config.retries,
        last,
    })
}

fn fast_gates(t: &CoefficientTensor) -> Result<()> {
    let d = DeterminantalData::build(t)?;
    let phi = d.phi()?;
    let psi = d.psi()?;
    psi.compose(&phi)?.identity_multiplier()?;
    Ok(())
}

fn timed(name: String, f: impl FnOnce() -> Result<CheckOutcome>) -> CheckRecord {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| CheckOutcome::fail(format!("error: {e}"), Vec::new()));
    CheckRecord::from_outcome(name, outcome, start.elapsed())
}

/// `dim I_d` for the ideal of a curve with Hilbert–Burch resolution
/// `0 → R(-4)³ → R(-3)⁴ → I → 0`.
pub fn hilbert_burch_ideal_dim(d: usize) -> usize {
    let c3 = |n: usize| if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
    4 * c3(d + 3 - 3) - 3 * c3(d + 3 - 4)
}

fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Runs every check on `tensor`. Symbolic checks use the tensor's own
/// field; enumerative checks use its reduction modulo each configured prime.
pub fn verify(tensor: &CoefficientTensor, config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    // a tensor already over F_p is scanned at p only
    let primes = match tensor.field() {
        Field::Rational => config.primes.clone(),
        Field::Prime(p) => vec![p],
    };
    for &p in &primes {
        geometry::points::scan_field(p)?;
        if p < 3 {
            return Err(Error::BadPrime(p));
        }
    }
    let reduced = primes
        .iter()
        .map(|&p| tensor.reduce_mod(p).map(|t| (p, DeterminantalData::assemble(&t))))
        .collect::<Result<Vec<_>>>()?;

    let d = DeterminantalData::assemble(tensor);
    let mut checks = Vec::new();

    checks.push(timed("swap_identity".into(), || Ok(check_swap_identity(&d))));

    checks.push(timed("laplace_containment".into(), || {
        let symbolic = check_laplace_containment(&d);
        if !symbolic.passed {
            return Ok(symbolic);
        }
        let mut witnesses = Vec::new();
        let mut counts = Vec::new();
        for (p, dp) in &reduced {
            let curve = geometry::enumerate_curve_points(dp)?;
            let on = geometry::points::curve_on_surface(dp, &curve);
            counts.push(format!("C(F_{p}) has {} points, all on S1", curve.len()));
            if !on.passed {
                witnesses.extend(on.witnesses.into_iter().map(|w| format!("p={p}: {w}")));
            }
        }
        let summary = format!("{}; {}", symbolic.summary, counts.join("; "));
        Ok(if witnesses.is_empty() {
            CheckOutcome::pass(summary)
        } else {
            CheckOutcome::fail("curve points off S1", witnesses)
        })
    }));

    let mut inverse_ok = false;
    checks.push(timed("inverse_composition".into(), || {
        let inv = check_inverse_composition(&d)?;
        let dl = inv.lambda.homogeneous_degree();
        let dm = inv.mu.homogeneous_degree();
        let summary = format!(
            "phi, psi cubic; psi o phi = lambda*x with deg lambda = {}, phi o psi = mu*y with deg mu = {}",
            dl.map_or("-".into(), |v| v.to_string()),
            dm.map_or("-".into(), |v| v.to_string()),
        );
        inverse_ok = dl == Some(8) && dm == Some(8);
        Ok(if inverse_ok {
            CheckOutcome::pass(summary)
        } else {
            CheckOutcome::fail(summary, Vec::new())
        })
    }));

    checks.push(if d.require_surfaces().is_ok() && !inverse_ok {
        CheckRecord::skipped("surface_transfer_symbolic", "requires inverse_composition to pass")
    } else {
        timed("surface_transfer_symbolic".into(), || {
            let st = check_surface_transfer_symbolic(&d)?;
            let dq = st.q.homogeneous_degree();
            let dq2 = st.q_mirror.homogeneous_degree();
            let summary = format!(
                "det N(phi(x)) = q*det M(x) with deg q = {}; det M(psi(y)) = q'*det N(y) with deg q' = {}",
                dq.map_or("-".into(), |v| v.to_string()),
                dq2.map_or("-".into(), |v| v.to_string()),
            );
            Ok(if dq == Some(8) && dq2 == Some(8) {
                CheckOutcome::pass(summary)
            } else {
                CheckOutcome::fail(summary, Vec::new())
            })
        })
    });

    let ideal = GradedIdealView::new(d.phi_components().to_vec());
    checks.push(timed("hilbert_function".into(), || {
        let ideal = ideal.clone()?;
        let mut values = Vec::new();
        let mut bad = Vec::new();
        for deg in 1..=config.max_degree {
            let hf = ideal.hilbert_dim(deg)?;
            let expected = monomial_count(deg) - hilbert_burch_ideal_dim(deg);
            values.push(hf.to_string());
            if hf != expected || hf as i64 != 6 * deg as i64 - 2 {
                bad.push(format!("HF({deg}) = {hf}, expected {expected}"));
            }
        }
        let summary = format!("HF(1..{}) = [{}]", config.max_degree, values.join(", "));
        Ok(if bad.is_empty() {
            CheckOutcome::pass(format!("{summary} = 6d-2"))
        } else {
            CheckOutcome::fail(summary, bad)
        })
    }));

    checks.push(timed("curve_degree_genus".into(), || {
        let (deg, genus) = ideal.clone()?.curve_degree_genus()?;
        let summary = format!("degree {deg}, genus {genus}");
        Ok(if (deg, genus) == (6, 3) {
            CheckOutcome::pass(summary)
        } else {
            CheckOutcome::fail(summary, Vec::new())
        })
    }));

    for (p, dp) in &reduced {
        let p = *p;
        let curve = geometry::enumerate_curve_points(dp);
        checks.push(timed(format!("curve_point_count[p={p}]"), || {
            let n = curve.clone()?.len() as u64;
            let (lo, hi) = geometry::weil_interval(p, 3);
            let summary = format!("#C(F_{p}) = {n}, Weil interval [{lo}, {hi}]");
            Ok(if (lo..=hi).contains(&n) {
                CheckOutcome::pass(summary)
            } else {
                CheckOutcome::fail(summary, Vec::new())
            })
        }));
        checks.push(timed(format!("curve_smooth_scan[p={p}]"), || {
            geometry::smooth_scan_curve(dp.phi_components(), &curve.clone()?)
        }));
        for (label, quartic) in [("S1", &dp.det_m), ("S2", &dp.det_n)] {
            checks.push(timed(format!("quartic_smooth_scan[{label},p={p}]"), || {
                if quartic.is_zero() {
                    return Err(Error::DegenerateTensor(format!("{label} vanishes identically mod {p}")));
                }
                geometry::smooth_scan_quartic(quartic)
            }));
        }
        checks.push(timed(format!("point_transfer[p={p}]"), || {
            dp.require_surfaces()?;
            Ok(geometry::transfer_points(dp)?.outcome(p))
        }));
    }

    checks.push(timed("base_locus_consistency".into(), || {
        let mut summaries = Vec::new();
        let mut witnesses = Vec::new();
        for (_, dp) in &reduced {
            let out = geometry::base_locus_consistency(dp)?;
            summaries.push(out.summary);
            witnesses.extend(out.witnesses);
        }
        Ok(CheckOutcome {
            passed: witnesses.is_empty(),
            summary: summaries.join("; "),
            witnesses,
        })
    }));

    checks.push(timed("intersection_matrix".into(), || {
        let m = geometry::intersection_matrix();
        let summary = format!("((h_i.h_j)) = (({}, {}), ({}, {}))", m[0][0], m[0][1], m[1][0], m[1][1]);
        Ok(if m == [[4, 6], [6, 4]] {
            CheckOutcome::pass(summary)
        } else {
            CheckOutcome::fail(summary, Vec::new())
        })
    }));

    let provenance = TensorProvenance {
        seed: tensor.provenance.seed,
        attempt: tensor.provenance.attempt,
        field: tensor.field().to_string(),
    };
    Ok(VerificationReport::new(provenance, checks))
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub target: String,
    pub prime: u64,
    pub count: usize,
    /// Weil interval and verdict, for curve scans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weil: Option<WeilVerdict>,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilVerdict {
    pub low: u64,
    pub high: u64,
    pub status: Status,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scan serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} over F_{}: {} points\n", self.target, self.prime, self.count);
        if let Some(w) = &self.weil {
            out.push_str(&format!("Weil interval [{}, {}]: {}\n", w.low, w.high, w.status));
        }
        for p in &self.points {
            out.push_str(p);
            out.push('\n');
        }
        out
    }
}

/// Rational points of `C`, `S1` or `S2` over `F_p`, in lexicographic order.
pub fn scan_points(tensor: &CoefficientTensor, p: u64, target: ScanTarget) -> Result<Vec<ProjPoint>> {
    geometry::points::scan_field(p)?;
    if p < 3 {
        return Err(Error::BadPrime(p));
    }
    let d = DeterminantalData::assemble(&tensor.reduce_mod(p)?);
    match target {
        ScanTarget::Curve => geometry::enumerate_curve_points(&d),
        ScanTarget::S1 => geometry::enumerate_surface_points(&d.det_m),
        ScanTarget::S2 => geometry::enumerate_surface_points(&d.det_n),
    }
}

pub fn scan(tensor: &CoefficientTensor, p: u64, target: ScanTarget) -> Result<ScanReport> {
    let points = scan_points(tensor, p, target)?;
    let weil = (target == ScanTarget::Curve).then(|| {
        let (low, high) = geometry::weil_interval(p, 3);
        let n = points.len() as u64;
        WeilVerdict {
            low,
            high,
            status: if (low..=high).contains(&n) { Status::Pass } else { Status::Fail },
        }
    });
    Ok(ScanReport {
        schema: VerificationReport::SCHEMA,
        target: target.name().into(),
        prime: p,
        count: points.len(),
        weil,
        points: points.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub schema: u32,
    pub field: String,
    pub values: Vec<HilbertValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertValue {
    pub d: usize,
    pub hf: usize,
}

impl HilbertReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("hilbert report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("Hilbert function of R/I(C) over {}\n", self.field);
        for v in &self.values {
            out.push_str(&format!("HF({}) = {}\n", v.d, v.hf));
        }
        match (self.degree, self.genus, &self.error) {
            (Some(d), Some(g), _) => out.push_str(&format!("degree {d}, genus {g}\n")),
            (_, _, Some(e)) => out.push_str(&format!("degree/genus unavailable: {e}\n")),
            _ => {}
        }
        out
    }
}

pub fn hilbert(tensor: &CoefficientTensor, config: &RunConfig) -> Result<HilbertReport> {
    config.validate()?;
    let d = DeterminantalData::assemble(tensor);
    let ideal = GradedIdealView::new(d.phi_components().to_vec())?;
    let values = (1..=config.max_degree)
        .map(|deg| ideal.hilbert_dim(deg).map(|hf| HilbertValue { d: deg, hf }))
        .collect::<Result<Vec<_>>>()?;
    let (degree, genus, error) = match ideal.curve_degree_genus() {
        Ok((deg, g)) => (Some(deg), Some(g), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    Ok(HilbertReport {
        schema: VerificationReport::SCHEMA,
        field: tensor.field().to_string(),
        values,
        degree,
        genus,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_burch_oracle() {
        for d in 1..=10 {
            assert_eq!(monomial_count(d) - hilbert_burch_ideal_dim(d), 6 * d - 2);
        }
        assert_eq!(hilbert_burch_ideal_dim(3), 4);
        assert_eq!(monomial_count(5) - hilbert_burch_ideal_dim(5), 28);
    }

    #[test]
    fn config_validation() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        let bad = RunConfig { primes: vec![2], ..RunConfig::default() };
        assert_eq!(bad.validate(), Err(Error::BadPrime(2)));
        let bad = RunConfig { primes: vec![9], ..RunConfig::default() };
        assert_eq!(bad.validate(), Err(Error::InvalidPrime(9)));
        let bad = RunConfig { primes: vec![103], ..RunConfig::default() };
        assert_eq!(bad.validate(), Err(Error::PrimeTooLarge(103)));
        let bad = RunConfig { retries: 0, ..RunConfig::default() };
        assert!(matches!(bad.validate(), Err(Error::Parse(_))));
    }

    #[test]
    fn zero_range_exhausts() {
        let config = RunConfig {
            coeff_range: (0, 0),
            retries: 3,
            ..RunConfig::default()
        };
        match generate(&config) {
            Err(Error::GenericityExhausted { attempts, last }) => {
                assert_eq!(attempts, 3);
                assert!(last.contains("degenerate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let config = RunConfig {
            field: Field::prime(101).unwrap(),
            seed: 42,
            ..RunConfig::default()
        };
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.provenance.seed, Some(42));
    }
}
