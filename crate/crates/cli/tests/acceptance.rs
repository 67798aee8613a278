//! End-to-end acceptance gate. Prints one line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use confhol::riemannian::CurvatureOperator;
use confhol::{
    analyze, catalog, torsion_residual, Analysis, AnalysisOptions, CausalType, ConnectionForm,
    Matrix,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIVE: [&str; 5] = ["so(3)", "so(4)", "so(5)", "su(3)", "so(3)+so(3)+so(3)"];

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, id: u32, title: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("PASS  criterion {id}: {title} ({detail})"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL  criterion {id}: {title} ({detail})");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(name: &str) -> Result<(Analysis, Duration), String> {
    let alg = catalog(name).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let a = analyze(&alg, &AnalysisOptions::default()).map_err(|e| format!("{name}: {e}"))?;
    Ok((a, t.elapsed()))
}

fn run(name: &str) -> Result<Analysis, String> {
    timed(name).map(|(a, _)| a)
}

fn cli_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = confhol_cli::run(
        std::iter::once("confhol").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn so3_golden() -> Result<String, String> {
    let (a, t) = timed("so(3)")?;
    let k = a.curvature.max_abs();
    ensure(k < 1e-12, || format!("max|κ| = {k:e}"))?;
    ensure(a.holonomy.dim() == 0, || {
        format!("hol dim {}", a.holonomy.dim())
    })?;
    let name = a.holonomy_report.candidate_name.clone();
    ensure(name.as_deref() == Some("trivial"), || {
        format!("candidate {name:?}")
    })?;
    for (i, g1) in a.connection.gamma1().iter().enumerate() {
        let c = g1[i];
        ensure((c + 1.0 / 16.0).abs() <= 1e-15, || {
            format!("γ_1 coefficient {c}")
        })?;
    }
    let v = cli_json(&["analyze", "--algebra", "so(3)", "--format", "json"])?;
    ensure(v["holonomy"]["candidate_name"] == "trivial", || {
        "CLI candidate".into()
    })?;
    ensure(t < Duration::from_millis(100), || format!("runtime {t:?}"))?;
    Ok(format!(
        "max|κ| = {k:.1e}, dim 0, trivial, γ_1 = -1/16, {t:.1?}"
    ))
}

fn so4_golden() -> Result<String, String> {
    let (a, t) = timed("so(3)+so(3)")?;
    for (i, g1) in a.connection.gamma1().iter().enumerate() {
        let c = g1[i];
        ensure((c + 1.0 / 40.0).abs() <= 1e-15, || {
            format!("γ_1 coefficient {c}")
        })?;
    }
    let h = &a.holonomy_report;
    ensure(a.curvature_summary.q_dim == 15, || {
        format!("dim q = {}", a.curvature_summary.q_dim)
    })?;
    ensure(h.algebra_dim == 21, || format!("hol dim {}", h.algebra_dim))?;
    ensure(h.closed_under_bracket, || "not bracket-closed".into())?;
    ensure(h.killing_signature == (0, 21, 0), || {
        format!("trace form {:?}", h.killing_signature)
    })?;
    ensure(
        h.stabilized_tractor_dim == 1 && h.tractor_causal_types == [CausalType::Timelike],
        || format!("tractors {:?}", h.tractor_causal_types),
    )?;
    ensure(h.candidate_name.as_deref() == Some("so(7)"), || {
        format!("candidate {:?}", h.candidate_name)
    })?;
    let v = cli_json(&["analyze", "--algebra", "so(3)+so(3)", "--format", "json"])?;
    ensure(v["holonomy"]["algebra_dim"] == 21, || "CLI hol dim".into())?;
    ensure(t < Duration::from_secs(1), || format!("runtime {t:?}"))?;
    Ok(format!(
        "q = 15, hol = 21, closed, negative definite, 1 timelike tractor, so(7), {t:.1?}"
    ))
}

fn scalar_identities() -> Result<String, String> {
    let mut worst = [0.0f64; 4];
    for name in FIVE {
        let a = run(name)?;
        let n = a.dim as f64;
        let vals = [
            (a.metric.scal - n / 4.0).abs(),
            a.metric.einstein_residual(),
            a.metric.cotton_york_max(),
            a.metric.weyl_trace_residual(),
        ];
        let lim = [1e-12, 1e-12, 1e-14, 1e-10];
        for t in 0..4 {
            ensure(vals[t] < lim[t], || {
                format!("{name}: value {t} = {:e}", vals[t])
            })?;
            worst[t] = worst[t].max(vals[t]);
        }
    }
    Ok(format!(
        "worst |scal-n/4| {:.1e}, Einstein {:.1e}, Cotton-York {:.1e}, Weyl trace {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn normalization() -> Result<String, String> {
    let mut worst = 0.0f64;
    for name in FIVE {
        let a = run(name)?;
        let r = &a.residuals;
        let vals = [
            ("torsion", r.torsion),
            ("trace_free", r.trace_free),
            ("gamma0_jacobi", r.gamma0_jacobi),
            ("normal_extension", r.normal_extension),
            ("kappa_minus1", a.curvature_summary.kappa_minus1_max),
            ("kappa1", a.curvature_summary.kappa1_max),
        ];
        for (k, v) in vals {
            ensure(v < 1e-10, || format!("{name}: {k} = {v:e}"))?;
            worst = worst.max(v);
        }
    }
    Ok(format!("worst residual {worst:.1e}"))
}

fn cross_pipeline() -> Result<String, String> {
    let mut worst = 0.0f64;
    for name in FIVE {
        let a = run(name)?;
        let w = a.residuals.weyl_cross_check;
        ensure(w < 1e-10, || format!("{name}: {w:e}"))?;
        worst = worst.max(w);
    }
    Ok(format!("worst |κ_0 - W| {worst:.1e}"))
}

fn uniqueness_of_torsion_free() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut min_ratio = f64::INFINITY;
    for name in FIVE {
        let a = run(name)?;
        let n = a.dim;
        for trial in 0..20 {
            let scale = 10f64.powf(rng.gen_range(-6.0..0.0));
            let mut norm2 = 0.0;
            let mut gamma0 = a.connection.gamma0().to_vec();
            for g in gamma0.iter_mut() {
                let mut pert = Matrix::zeros(n, n);
                for p in 0..n {
                    for q in p + 1..n {
                        let x = scale * rng.gen_range(-1.0..1.0);
                        pert[(p, q)] = x;
                        pert[(q, p)] = -x;
                        norm2 += 2.0 * x * x;
                    }
                }
                g.add_assign(&pert);
            }
            let norm = norm2.sqrt();
            let form = ConnectionForm::new(gamma0, a.connection.gamma1().to_vec())
                .map_err(|e| e.to_string())?;
            let t = torsion_residual(&form, &a.rho);
            ensure(t > 1e-6 * norm, || {
                format!("{name} trial {trial}: torsion {t:e} vs ‖A‖ {norm:e}")
            })?;
            min_ratio = min_ratio.min(t / norm);
        }
    }
    Ok(format!(
        "100 perturbations, min torsion/‖A‖ = {min_ratio:.2e}"
    ))
}

fn flat_iff_su2() -> Result<String, String> {
    let k3 = run("so(3)")?.curvature.max_abs();
    ensure(k3 < 1e-12, || format!("so(3): {k3:e}"))?;
    let mut parts = vec![format!("so(3) {k3:.1e}")];
    for name in ["so(4)", "so(5)", "su(3)"] {
        let k = run(name)?.curvature.max_abs();
        ensure(k > 1e-3, || format!("{name}: {k:e}"))?;
        parts.push(format!("{name} {k:.3}"));
    }
    Ok(parts.join(", "))
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = g.qr().q();
    let rows: Vec<Vec<f64>> = (0..n).map(|i| q.row(i).iter().copied().collect()).collect();
    Matrix::from_rows(&rows).expect("square")
}

fn frame_invariance() -> Result<String, String> {
    let alg = catalog("so(4)").map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for trial in 0..5 {
        let options = AnalysisOptions {
            frame_rotation: Some(random_orthogonal(6, &mut rng)),
            ..AnalysisOptions::default()
        };
        let a = analyze(&alg, &options).map_err(|e| e.to_string())?;
        let (d, t) = (a.holonomy.dim(), a.holonomy_report.stabilized_tractor_dim);
        ensure(d == 21 && t == 1, || {
            format!("trial {trial}: hol {d}, tractors {t}")
        })?;
    }
    Ok("5 reframings: hol 21, tractor dim 1".into())
}

fn svd_rank(mats: &[Matrix]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let len = mats[0].as_slice().len();
    let m = DMatrix::from_fn(mats.len(), len, |i, j| mats[i].as_slice()[j]);
    let sv = m.singular_values();
    let top = sv.max();
    sv.iter().filter(|&&s| s > 1e-9 * top).count()
}

/// Adds every pairwise bracket of the current basis until nothing new appears.
fn brute_force_dim(r: &CurvatureOperator) -> usize {
    let mut basis: Vec<Matrix> = Vec::new();
    let offer = |basis: &mut Vec<Matrix>, m: Matrix| {
        basis.push(m);
        if svd_rank(basis) < basis.len() {
            basis.pop();
        }
    };
    for v in r.values() {
        offer(&mut basis, v.clone());
    }
    loop {
        let before = basis.len();
        let snapshot = basis.clone();
        for x in &snapshot {
            for y in &snapshot {
                offer(&mut basis, x.commutator(y));
            }
        }
        if basis.len() == before {
            return before;
        }
    }
}

fn riemannian_sanity() -> Result<String, String> {
    let mut parts = Vec::new();
    for name in ["so(3)", "so(4)"] {
        let a = run(name)?;
        let (got, want) = (a.riemannian_holonomy.dim(), brute_force_dim(&a.riemann));
        ensure(got == want, || {
            format!("{name}: closure {got}, brute force {want}")
        })?;
        parts.push(format!("{name} {got} = {want}"));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut gate = Gate { failed: 0 };
    gate.check(
        1,
        "so(3) is conformally flat with trivial holonomy",
        so3_golden(),
    );
    gate.check(2, "so(3)+so(3) has holonomy so(7)", so4_golden());
    gate.check(3, "Einstein scalar identities", scalar_identities());
    gate.check(4, "normalization conditions", normalization());
    gate.check(
        5,
        "Cartan curvature matches the Weyl tensor",
        cross_pipeline(),
    );
    gate.check(
        6,
        "normal γ_0 is the unique torsion-free choice",
        uniqueness_of_torsion_free(),
    );
    gate.check(7, "curvature vanishes exactly for su(2)", flat_iff_su2());
    gate.check(8, "holonomy is frame invariant", frame_invariance());
    gate.check(
        9,
        "Riemannian holonomy matches brute-force closure",
        riemannian_sanity(),
    );
    let total = start.elapsed();
    println!("acceptance: {} of 9 passed in {total:.2?}", 9 - gate.failed);
    if gate.failed == 0 && total < Duration::from_secs(30) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
