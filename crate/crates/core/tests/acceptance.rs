//! Acceptance gate, run without the libtest harness so the per-criterion
//! lines always reach the output. Criteria run in sequence so the wall-clock
//! budgets are measured without contention; the process exits nonzero if
//! any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cubocubic::cli::{self, RunConfig};
use cubocubic::cremona::{check_inverse_composition, check_laplace_containment, check_surface_transfer_symbolic, check_swap_identity};
use cubocubic::geometry::points::{enumerate_curve_points, projective_points, quartic_singular_points, smooth_scan_curve, weil_interval};
use cubocubic::geometry::{intersection_matrix, GradedIdealView};
use cubocubic::rng::SplitMix64;
use cubocubic::{CoefficientTensor, DeterminantalData, Error, Field, FieldElem};

const GENUS: u64 = 3;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden() -> CoefficientTensor {
    CoefficientTensor::load(data("golden_tensor.json")).unwrap()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

/// Deterministic small integer points, used where a property must hold
/// identically and a few evaluations give an independent spot check.
fn sample_points(field: Field, n: usize, seed: u64) -> Vec<[FieldElem; 4]> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| std::array::from_fn(|_| field.from_i64(rng.next_in_range(-7, 7))))
        .collect()
}

fn proportional(u: &[FieldElem], v: &[FieldElem]) -> bool {
    // u ∥ v iff every 2x2 minor vanishes
    (0..u.len()).all(|i| (0..u.len()).all(|j| (&(&u[i] * &v[j]) - &(&u[j] * &v[i])).is_zero()))
}

fn c1_swap_identity() -> Outcome {
    let f101 = Field::prime(101).unwrap();
    let mut count = 0;
    for seed in 0..100u64 {
        let t = CoefficientTensor::random(f101, &mut SplitMix64::new(seed), -50, 50);
        let out = check_swap_identity(&DeterminantalData::assemble(&t));
        ensure(out.passed, || format!("F_101 seed {seed}: {}", out.summary))?;
        count += 1;
    }
    let out = check_swap_identity(&DeterminantalData::assemble(&golden()));
    ensure(out.passed, || format!("golden: {}", out.summary))?;
    Ok(format!("{count} random tensors over F_101 and the golden tensor over Q"))
}

fn c2_laplace_containment() -> Outcome {
    let t = golden();
    let d = DeterminantalData::build(&t).map_err(err)?;
    let out = check_laplace_containment(&d);
    ensure(out.passed, || out.summary.clone())?;

    // pointwise corollary at p = 11, with det M evaluated numerically
    let dp = DeterminantalData::assemble(&t.reduce_mod(11).map_err(err)?);
    let curve = enumerate_curve_points(&dp).map_err(err)?;
    for x in &curve {
        let det = dp.m.evaluate(x.coords()).and_then(|m| m.det()).map_err(err)?;
        ensure(det.is_zero(), || format!("{x} on C but det M(x) = {det}"))?;
    }
    Ok(format!("symbolic identity holds; all {} points of C(F_11) lie on S1", curve.len()))
}

fn c3_multidegree() -> Outcome {
    let d = DeterminantalData::build(&golden()).map_err(err)?;
    let (phi, psi) = (d.phi().map_err(err)?, d.psi().map_err(err)?);
    ensure(phi.degree() == 3 && psi.degree() == 3, || {
        format!("degrees {} and {}", phi.degree(), psi.degree())
    })?;
    let inv = check_inverse_composition(&d).map_err(err)?;
    let (dl, dm) = (inv.lambda.homogeneous_degree(), inv.mu.homogeneous_degree());
    ensure(!inv.lambda.is_zero() && dl == Some(8), || format!("deg lambda = {dl:?}"))?;
    ensure(!inv.mu.is_zero() && dm == Some(8), || format!("deg mu = {dm:?}"))?;

    // numeric spot check: psi(phi(x)) = lambda(x) x at integer points
    for x in sample_points(Field::Rational, 5, 31) {
        let back = psi.evaluate(&phi.evaluate(&x).map_err(err)?).map_err(err)?;
        let l = inv.lambda.evaluate(&x).map_err(err)?;
        for i in 0..4 {
            ensure(back[i] == &l * &x[i], || format!("psi(phi(x)) != lambda(x)*x at coordinate {i}"))?;
        }
    }
    Ok("phi, psi cubic; deg lambda = deg mu = 8; 5 numeric spot checks agree".into())
}

fn c4_surface_transfer() -> Outcome {
    let d = DeterminantalData::build(&golden()).map_err(err)?;
    let st = check_surface_transfer_symbolic(&d).map_err(err)?;
    let pulled = d.det_n.substitute(d.phi_components()).map_err(err)?;
    ensure(pulled.homogeneous_degree() == Some(12), || "det N(phi) is not of degree 12".into())?;
    ensure(st.q.homogeneous_degree() == Some(8), || format!("deg q = {:?}", st.q.homogeneous_degree()))?;
    ensure(st.q_mirror.homogeneous_degree() == Some(8), || "deg q' != 8".into())?;
    let phi = d.phi().map_err(err)?;
    for x in sample_points(Field::Rational, 5, 47) {
        let y = phi.evaluate(&x).map_err(err)?;
        let lhs = d.n.evaluate(&y).and_then(|n| n.det()).map_err(err)?;
        let dm = d.m.evaluate(&x).and_then(|m| m.det()).map_err(err)?;
        let rhs = &st.q.evaluate(&x).map_err(err)? * &dm;
        ensure(lhs == rhs, || "det N(phi(x)) != q(x) det M(x) at a sample point".into())?;
    }
    Ok("det N(phi) = q det M with deg q = 8 (mirror deg 8); 5 numeric spot checks agree".into())
}

fn c5_hilbert() -> Outcome {
    let d = DeterminantalData::build(&golden()).map_err(err)?;
    let ideal = GradedIdealView::new(d.phi_components().to_vec()).map_err(err)?;
    let mut values = Vec::new();
    for deg in 1..=8usize {
        let h = ideal.hilbert_dim(deg).map_err(err)?;
        let monomials = (deg + 1) * (deg + 2) * (deg + 3) / 6;
        let expected = monomials - cli::hilbert_burch_ideal_dim(deg);
        ensure(h == expected && h == 6 * deg - 2, || format!("HF({deg}) = {h}, expected {expected}"))?;
        values.push(h);
    }
    let fit = cubocubic::geometry::fit_degree_genus([values[5], values[6], values[7]]).map_err(err)?;
    ensure(fit == (6, 3), || format!("fit gives {fit:?}"))?;
    Ok(format!("HF(1..8) = {values:?}; degree 6, genus 3"))
}

fn c6_weil() -> Outcome {
    let t = golden();
    let mut parts = Vec::new();
    for p in [7u64, 11, 13] {
        let dp = DeterminantalData::assemble(&t.reduce_mod(p).map_err(err)?);
        let curve = enumerate_curve_points(&dp).map_err(err)?;
        // independent count: rank A(x) < 3
        let mut by_rank = 0;
        for x in projective_points(p).map_err(err)? {
            if dp.a.evaluate(x.coords()).map_err(err)?.rank() < 3 {
                by_rank += 1;
            }
        }
        ensure(by_rank == curve.len(), || format!("p={p}: {} by minors, {by_rank} by rank", curve.len()))?;
        let (lo, hi) = weil_interval(p, GENUS);
        let n = curve.len() as u64;
        ensure((lo..=hi).contains(&n), || format!("p={p}: #C = {n} outside [{lo}, {hi}]"))?;
        parts.push(format!("#C(F_{p}) = {n} in [{lo}, {hi}]"));
    }
    Ok(parts.join("; "))
}

fn c7_smoothness() -> Outcome {
    let t = golden();
    let mut parts = Vec::new();
    for p in [11u64, 13] {
        let dp = DeterminantalData::assemble(&t.reduce_mod(p).map_err(err)?);
        let curve = enumerate_curve_points(&dp).map_err(err)?;
        let c = smooth_scan_curve(dp.phi_components(), &curve).map_err(err)?;
        ensure(c.passed, || format!("C over F_{p}: {}", c.summary))?;
        for (name, quartic) in [("S1", &dp.det_m), ("S2", &dp.det_n)] {
            let sing = quartic_singular_points(quartic).map_err(err)?;
            ensure(sing.is_empty(), || format!("{name} over F_{p} singular at {}", sing[0]))?;
        }
        parts.push(format!("p={p}: C, S1, S2 smooth"));
    }
    Ok(parts.join("; "))
}

fn c8_point_transfer() -> Outcome {
    let p = 11;
    let dp = DeterminantalData::assemble(&golden().reduce_mod(p).map_err(err)?);
    let phi = dp.phi().map_err(err)?;
    let psi = dp.psi().map_err(err)?;
    let lambda = check_inverse_composition(&dp).map_err(err)?.lambda;
    let (mut on_s1, mut moved, mut via_kernel) = (0, 0, 0);
    for x in projective_points(p).map_err(err)? {
        let m = dp.m.evaluate(x.coords()).map_err(err)?;
        if !m.det().map_err(err)?.is_zero() {
            continue;
        }
        on_s1 += 1;
        let y = phi.evaluate(x.coords()).map_err(err)?;
        if y.iter().all(FieldElem::is_zero) {
            continue; // base curve
        }
        let ker = m.kernel_basis();
        ensure(ker.len() == 1 && proportional(&ker[0], &y), || format!("ker M{x} not spanned by phi(x)"))?;
        let n = dp.n.evaluate(&y).map_err(err)?;
        ensure(n.det().map_err(err)?.is_zero(), || format!("phi{x} not on S2"))?;
        let back = psi.evaluate(&y).map_err(err)?;
        if back.iter().all(FieldElem::is_zero) {
            // psi(phi(x)) = lambda(x) x, so this happens exactly where lambda vanishes
            let l = lambda.evaluate(x.coords()).map_err(err)?;
            ensure(l.is_zero(), || format!("psi(phi{x}) = 0 but lambda{x} = {l}"))?;
            let nk = n.kernel_basis();
            ensure(nk.len() == 1 && proportional(&nk[0], x.coords()), || format!("ker N(phi{x}) is not x"))?;
            via_kernel += 1;
        } else {
            ensure(proportional(&back, x.coords()), || format!("psi(phi{x}) != {x}"))?;
        }
        moved += 1;
    }
    let summary = cubocubic::geometry::points::transfer_points(&dp).map_err(err)?;
    ensure(summary.failures.is_empty() && summary.transferred == moved, || {
        format!("library transfer disagrees: {:?}", summary.outcome(p).summary)
    })?;
    Ok(format!("{on_s1} points on S1(F_11), {moved} transferred and returned ({via_kernel} on lambda = 0, returned through ker N)"))
}

fn c9_intersection() -> Outcome {
    let binom = |n: i64, k: i64| (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
    // (h1^a h2^b (h1 + h2)^4) picks the h1^3 h2^3 coefficient of the fourth power
    let oracle = [[binom(4, 1), binom(4, 2)], [binom(4, 2), binom(4, 3)]];
    let m = intersection_matrix();
    ensure(m == oracle && m == [[4, 6], [6, 4]], || format!("{m:?}"))?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    ensure(det == -20, || format!("det = {det}"))?;
    Ok("[[4, 6], [6, 4]], det -20".into())
}

fn c10_determinism() -> Outcome {
    let t = golden();
    let config = RunConfig::default();
    let one = cli::with_thread_cap(Some(1), || cli::verify(&t, &config)).map_err(err)?.to_json();
    let four = cli::with_thread_cap(Some(4), || cli::verify(&t, &config)).map_err(err)?.to_json();
    ensure(one == four, || "library reports differ between 1 and 4 threads".into())?;
    let frozen = std::fs::read_to_string(data("golden_report.json")).map_err(|e| e.to_string())?;
    ensure(one == frozen, || "report differs from the frozen golden report".into())?;

    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cubocubic"))
            .args(["verify", "--format", "json"])
            .arg(data("golden_tensor.json"))
            .env(cli::THREADS_ENV, threads)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run("1")?, run("4")?);
    ensure(a.status.code() == Some(0) && b.status.code() == Some(0), || "binary did not exit 0".into())?;
    ensure(a.stdout == b.stdout && a.stdout == frozen.as_bytes(), || "binary output differs".into())?;
    Ok("JSON byte-identical across 1 and 4 threads, library and binary, and equal to the golden file".into())
}

fn c11_degenerate() -> Outcome {
    let zero = CoefficientTensor::zero(Field::Rational);
    let e = DeterminantalData::build(&zero).err();
    ensure(matches!(e, Some(Error::DegenerateTensor(_))), || format!("zero tensor gave {e:?}"))?;

    let mut dup = golden();
    for j in 0..4 {
        for k in 0..4 {
            let v = dup.int(0, j, k);
            dup.set(1, j, k, v);
        }
    }
    let e = check_inverse_composition(&DeterminantalData::assemble(&dup)).err();
    ensure(matches!(e, Some(Error::NotBirational(_))), || format!("duplicated rows gave {e:?}"))?;

    // the full pipeline records the failures instead of aborting
    let report = cli::verify(&dup, &RunConfig::default()).map_err(err)?;
    ensure(!report.passed(), || "verify passed a degenerate tensor".into())?;
    Ok("zero tensor -> DegenerateTensor; duplicated rows -> NotBirational; verify reports FAIL".into())
}

fn pipeline_budget() -> Outcome {
    let t = golden();
    let report = cli::verify(&t, &RunConfig::default()).map_err(err)?;
    ensure(report.passed(), || "golden verify failed".into())?;
    Ok(format!("{} checks, all pass", report.checks.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1  swap identity", c1_swap_identity, 1),
        ("2  Laplace containment", c2_laplace_containment, 5),
        ("3  multidegree (3,3)", c3_multidegree, 30),
        ("4  surface transfer", c4_surface_transfer, 30),
        ("5  Hilbert function", c5_hilbert, 10),
        ("6  Weil bounds", c6_weil, 10),
        ("7  smoothness", c7_smoothness, 30),
        ("8  point transfer", c8_point_transfer, 10),
        ("9  intersection matrix", c9_intersection, 1),
        ("10 thread determinism", c10_determinism, 120),
        ("11 degenerate inputs", c11_degenerate, 120),
        ("12 full pipeline", pipeline_budget, 120),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&result, over) {
            (Ok(s), false) => ("PASS", s.clone()),
            (Ok(s), true) => ("FAIL", format!("over budget: {s}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {name}: {status} ({:.2?} / {budget}s) {detail}", elapsed);
        if status == "FAIL" {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
