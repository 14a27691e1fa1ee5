//! The acceptance battery: twelve numbered criteria, one verdict line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every
//! `criterion NN: PASS/FAIL — detail` line; a failing criterion also carries
//! its line in the panic message. Two criteria pin external reference
//! constants that both independent computational routes contradict; those
//! fail honestly rather than being weakened (the detail lines carry the
//! measured values and the cross-checks that certify them).

use std::f64::consts::FRAC_PI_4;
use std::path::Path;
use std::time::{Duration, Instant};

use restriction_core::circle::{Cap, CircleFunction};
use restriction_core::decompose::{decompose, default_depth};
use restriction_core::extension::circle_l6_certified;
use restriction_core::gamma::{enumerate_group, gamma, gamma_abc, orbit_terms, ThetaPoint};
use restriction_core::grid::PlaneGrid;
use restriction_core::perturbation::{antipodal_ratio_sweep, w_zero_residual};
use restriction_core::search::random_start;
use restriction_core::trilinear::trilinear_result;
use restriction_core::{tol, TWO_PI};

// ------------------------------------------------------------------ helpers

fn verdict(id: u8, pass: bool, detail: &str) {
    let line = format!(
        "criterion {id:02}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    assert!(pass, "{line}");
}

struct LabRun {
    status: i32,
    report: serde_json::Value,
    elapsed: Duration,
}

/// Runs the laboratory binary into a fresh temp directory and parses the
/// report it wrote.
fn run_lab(args: &[&str]) -> LabRun {
    let dir = tempfile::tempdir().expect("temp dir");
    let start = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_restriction-lab"))
        .args(args)
        .arg("--out")
        .arg(dir.path())
        .env_remove("RESTRICTION_LAB_OUT")
        .output()
        .expect("laboratory binary runs");
    let elapsed = start.elapsed();
    let text = std::fs::read_to_string(dir.path().join("results.json"))
        .unwrap_or_else(|e| panic!("results.json missing after {args:?}: {e}"));
    LabRun {
        status: out.status.code().unwrap_or(-1),
        report: serde_json::from_str(&text).expect("well-formed results.json"),
        elapsed,
    }
}

fn f(v: &serde_json::Value, path: &[&str]) -> f64 {
    let mut cur = v;
    for p in path {
        cur = &cur[p];
    }
    cur.as_f64()
        .unwrap_or_else(|| panic!("expected number at {path:?}, got {cur}"))
}

fn check_passed(report: &serde_json::Value, name: &str) -> bool {
    report["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .any(|c| c["name"] == name && c["pass"] == true)
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
}

// ----------------------------------------------------------------- criteria

#[test]
fn criterion_01_interaction_maximum() {
    let run = run_lab(&["gamma-max"]);
    let value_gap = (f(&run.report, &["results", "maximum", "value"]) - 2.5).abs();
    let argmax_gap = run.report["results"]["maximum"]["argmax"]
        .as_array()
        .expect("argmax array")
        .iter()
        .map(|t| (t.as_f64().unwrap() - FRAC_PI_4).abs())
        .fold(0.0f64, f64::max);
    let in_budget = run.elapsed < Duration::from_secs(60);
    verdict(
        1,
        run.status == 0 && value_gap < 1e-9 && argmax_gap < 1e-6 && in_budget,
        &format!(
            "max within {value_gap:.1e} of 5/2, argmax within {argmax_gap:.1e} of the diagonal, \
             exit {} in {:.1?}",
            run.status, run.elapsed
        ),
    );
}

#[test]
fn criterion_02_group_combinatorics() {
    let start = Instant::now();
    let elements = enumerate_group();
    let image: std::collections::HashSet<[u8; 6]> = elements.iter().map(|g| g.perm).collect();
    let kernel = elements
        .iter()
        .filter(|g| g.perm == [0, 1, 2, 3, 4, 5])
        .count();

    let generic: ThetaPoint = [0.31, 0.77, 1.13, 0.52, 0.95, 1.41];
    let (terms, _) = orbit_terms(&generic);
    let mut sorted = terms;
    sorted.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for &t in &sorted {
        match clusters.last_mut() {
            Some((v, count)) if (t - *v).abs() < 1e-9 => *count += 1,
            _ => clusters.push((t, 1)),
        }
    }
    let elapsed = start.elapsed();

    let pass = elements.len() == 1440
        && image.len() == 720
        && kernel == 2
        && clusters.len() == 20
        && clusters.iter().all(|&(_, c)| c == 72)
        && elapsed < Duration::from_secs(1);
    verdict(
        2,
        pass,
        &format!(
            "{} elements, image {}, kernel {}, {} collapsed terms (each ×72) in {:.1?}",
            elements.len(),
            image.len(),
            kernel,
            clusters.len(),
            elapsed
        ),
    );
}

#[test]
fn criterion_03_orbit_sum_oracle() {
    let mut state = 0x5EED_u64;
    let mut worst_orbit = 0.0f64;
    let mut worst_ab = 0.0f64;
    for _ in 0..1000 {
        let mut theta: ThetaPoint = [0.0; 6];
        for t in &mut theta {
            *t = splitmix(&mut state) * std::f64::consts::FRAC_PI_2;
        }
        let (_, collapsed) = orbit_terms(&theta);
        worst_orbit = worst_orbit.max((collapsed - gamma(&theta)).abs());

        // The two-slot sums collapse A + B to a closed two-factor form.
        let [t1, t2, t3, t4, _, _] = theta;
        let (a, b, _) = gamma_abc(&theta);
        let ab = (t1 - t2).cos() * (t3 - t4).cos() + (t1 + t2).sin() * (t3 + t4).sin();
        worst_ab = worst_ab.max((a + b - ab).abs());
    }
    verdict(
        3,
        worst_orbit < 1e-12 && worst_ab < 1e-12,
        &format!(
            "1000 random points: orbit-sum residual {worst_orbit:.1e}, A+B identity residual {worst_ab:.1e}"
        ),
    );
}

#[test]
fn criterion_04_first_variation_reference_constants() {
    let run = run_lab(&["perturbation"]);
    assert_eq!(
        run.status, 0,
        "internal consistency gates of the perturbation command must pass"
    );
    let report = &run.report["results"]["report"];
    let ratio = f(report, &["w6_derivative_ratio"]);
    let triple = f(report, &["g2_derivative_triple"]);
    let psi = f(report, &["psi_prime"]);
    let routes_agree = check_passed(&run.report, "derivative_routes_agree");
    let moments_ok = check_passed(&run.report, "gaussian_moments_reproduced");

    let ratio_ok = (ratio - 0.875).abs() < 1e-3;
    let triple_ok = (triple - 0.1875).abs() < 1e-6;
    let psi_ok = (psi - 0.6875).abs() < 2e-3;
    let in_budget = run.elapsed < Duration::from_secs(300);

    verdict(
        4,
        ratio_ok && triple_ok && psi_ok && routes_agree && moments_ok && in_budget,
        &format!(
            "measured ratio {ratio:.6} vs reference 7/8 = 0.875 (tol 1e-3): {}; \
             triple {triple:.6} vs 3/16 = 0.1875 (tol 1e-6): {}; \
             derivative of the quotient {psi:.6} vs reference 11/16 = 0.6875 (tol 2e-3): {}; \
             closed form vs finite differences within bars: {}; Gaussian moments to 1e-10: {}. \
             The measured ratio and quotient derivative are self-consistent across the \
             finite-difference and closed-form routes, which agree to {:.1e}; both sit at \
             exactly half the reference values, consistent with a factor-2 slip in the \
             reference normalization of the sixth-power integral.",
            if ratio_ok { "ok" } else { "MISMATCH" },
            if triple_ok { "ok" } else { "MISMATCH" },
            if psi_ok { "ok" } else { "MISMATCH" },
            if routes_agree { "ok" } else { "MISMATCH" },
            if moments_ok { "ok" } else { "MISMATCH" },
            (f(report, &["w6_derivative_fd"]) - f(report, &["w6_derivative_closed"])).abs(),
        ),
    );
}

#[test]
fn criterion_05_closed_form_field() {
    // Pointwise: quadrature field at ε = 0 against the closed-form Gaussian.
    let template = PlaneGrid::zeros(3.0, 3.0, 41, 41).unwrap();
    let pointwise = w_zero_residual(&template).unwrap();

    // Norm: the measured ‖w₀‖₆⁶ against the reference constant c₀⁶π√π/(2√3).
    let run = run_lab(&["perturbation"]);
    let c0 = f(&run.report, &["results", "report", "c0_measured"]);
    let norm6 = f(&run.report, &["results", "report", "w0_norm6"]);
    let reference = c0.powi(6) * std::f64::consts::PI * std::f64::consts::PI.sqrt()
        / (2.0 * 3.0f64.sqrt());
    let rel = (norm6 - reference).abs() / reference;

    let pointwise_ok = pointwise < 1e-10;
    let norm_ok = rel < 0.005;
    verdict(
        5,
        pointwise_ok && norm_ok,
        &format!(
            "pointwise field residual {pointwise:.1e} (tol 1e-10): {}; \
             ‖w₀‖₆⁶ measured {norm6:.4} vs reference c₀⁶π√π/(2√3) = {reference:.4} \
             (rel gap {rel:.3}, tol 0.005): {}. The measured norm equals \
             c₀⁶π√π/√3 = {:.4} to {:.1e} relative — twice the reference — and is \
             confirmed by two independent quadratures (adapted grid and the closed-form \
             density (1+t²)^{{-3/2}}e^{{-3x²/(1+t²)}}), so the factor 2 sits in the \
             reference constant, not the computation.",
            if pointwise_ok { "ok" } else { "MISMATCH" },
            if norm_ok { "ok" } else { "MISMATCH" },
            2.0 * reference,
            (norm6 - 2.0 * reference).abs() / (2.0 * reference),
        ),
    );
}

#[test]
fn criterion_06_plancherel_bridge() {
    let run = run_lab(&["plancherel"]);
    let spread = f(&run.report, &["results", "kappa", "spread"]);
    let families = run.report["results"]["families"].as_array().unwrap();
    let worst_gap = families
        .iter()
        .map(|fam| fam["relative_gap"].as_f64().unwrap())
        .fold(0.0f64, f64::max);
    let enough = families.len() >= 3;
    verdict(
        6,
        run.status == 0 && spread < 0.05 && worst_gap < 0.02 && enough,
        &format!(
            "kappa spread {spread:.4} over ≥3 samples; worst Fourier-vs-direct gap {worst_gap:.4} \
             across {} families (constant and two bump families)",
            families.len()
        ),
    );
}

#[test]
fn criterion_07_antipodal_factor() {
    let start = Instant::now();
    let sweep = antipodal_ratio_sweep(&[0.1, 0.05, 0.025]).unwrap();
    let elapsed = start.elapsed();
    let at_half = sweep[1].1;
    let in_band = (tol::ANTIPODAL_LOW..=tol::ANTIPODAL_HIGH).contains(&at_half);
    let gaps: Vec<f64> = sweep.iter().map(|&(_, g)| (g - 2.5).abs()).collect();
    let trending = gaps.windows(2).all(|w| w[1] < w[0]);
    let in_budget = elapsed < Duration::from_secs(300);
    verdict(
        7,
        in_band && trending && in_budget,
        &format!(
            "pairing gain at ε=0.05 is {at_half:.4} ∈ [2.4, 2.6]; distance to 5/2 over \
             ε = 0.1, 0.05, 0.025 is {gaps:?} (strictly decreasing) in {elapsed:.1?}"
        ),
    );
}

#[test]
fn criterion_08_symmetrization_monotonicity() {
    let n = 64;
    let window = 16.0;
    let axis = 129;
    let template = PlaneGrid::zeros(window, window, axis, axis).unwrap();

    let mut worst_q_drop = f64::NEG_INFINITY;
    let mut worst_tri_drop = f64::NEG_INFINITY;
    let mut worst_exact = 0.0f64;
    for case in 0..100u64 {
        let raw = random_start(n, 1000 + case).unwrap();
        let f = raw.scaled(1.0 / raw.l2_norm());
        let fs = f.symmetrize().unwrap();

        // Sixth-norm monotonicity within the paired certified bars.
        let q = circle_l6_certified(&f, window, axis).unwrap();
        let qs = circle_l6_certified(&fs, window, axis).unwrap();
        let slack = (q.total() - q.value) + (qs.total() - qs.value) + 1e-12;
        worst_q_drop = worst_q_drop.max(q.total() - qs.total() - slack);

        // Trilinear monotonicity through the independent binning route; both
        // sides share one pipeline, so a small relative slack covers its
        // discretization bias.
        let tri = trilinear_result(&f, &template).unwrap().direct_value;
        let tri_s = trilinear_result(&fs, &template).unwrap().direct_value;
        worst_tri_drop = worst_tri_drop.max(tri - tri_s - 0.025 * tri.abs() - 1e-12);

        // Idempotence, norm preservation, and evenness are exact.
        let fs2 = fs.symmetrize().unwrap();
        let idem = fs2
            .samples()
            .iter()
            .zip(fs.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        worst_exact = worst_exact
            .max(idem)
            .max((fs.l2_norm_sq() - f.l2_norm_sq()).abs())
            .max(fs.symmetry_residual());
    }

    verdict(
        8,
        worst_q_drop <= 0.0 && worst_tri_drop <= 0.0 && worst_exact < 1e-12,
        &format!(
            "100 random nonnegative densities: worst certified sixth-norm drop {worst_q_drop:.2e}, \
             worst trilinear drop beyond 2.5% slack {worst_tri_drop:.2e}, \
             worst idempotence/norm/evenness residual {worst_exact:.1e}"
        ),
    );
}

#[test]
fn criterion_09_cap_decomposition() {
    let n = 256;
    let template = PlaneGrid::zeros(40.0, 40.0, 201, 201).unwrap();
    let depth = default_depth(n);

    // Planted pair of equal bumps.
    let radius = 0.125;
    let planted = [TWO_PI * 16.0 / 256.0, TWO_PI * 100.0 / 256.0];
    let caps = [
        Cap::new(planted[0], radius).unwrap(),
        Cap::new(planted[1], radius).unwrap(),
    ];
    let height = 1.0 / caps[0].measure().sqrt();
    let two_bump = CircleFunction::from_real_fn(n, |th| {
        if caps.iter().any(|c| c.contains(th)) {
            height
        } else {
            0.0
        }
    })
    .unwrap();

    let inputs: Vec<(&str, CircleFunction)> = vec![
        ("two-bump", two_bump),
        ("random", random_start(n, 5).unwrap()),
        ("half-cap", Cap::new(1.0, 0.5).unwrap().indicator(n).unwrap()),
    ];

    let mut worst_parseval = 0.0f64;
    let mut all_disjoint = true;
    let mut levels_monotone = true;
    let mut recovery = false;
    let mut sandwich = false;
    for (name, input) in &inputs {
        let trace = decompose(input, 8, 1.54, depth, &template).unwrap();
        worst_parseval = worst_parseval.max(trace.parseval_residual());
        all_disjoint &= trace.supports_disjoint();
        let summary = trace.summary();
        levels_monotone &= summary
            .steps
            .windows(2)
            .all(|w| w[1].eps_star <= w[0].eps_star);

        if *name == "two-bump" {
            let centers: Vec<f64> = summary.steps.iter().map(|s| s.cap_center).collect();
            let gap = |a: f64, b: f64| {
                let d = (a - b).rem_euclid(TWO_PI);
                d.min(TWO_PI - d)
            };
            recovery = trace.terminated
                && summary.steps.len() == 2
                && planted
                    .iter()
                    .all(|&p| centers.iter().any(|&c| gap(p, c) < radius));
            // Equal bumps must exit at two-sidedly comparable extremality
            // levels: within a factor of four of each other.
            let e0 = summary.steps[0].eps_star;
            let e1 = summary.steps[1].eps_star;
            sandwich = e1 <= e0 && e1 >= e0 / 4.0;
        }
    }

    verdict(
        9,
        worst_parseval < 1e-8 && all_disjoint && levels_monotone && recovery && sandwich,
        &format!(
            "3 traces: worst Parseval residual {worst_parseval:.1e}, supports disjoint {all_disjoint}, \
             extremality levels non-increasing {levels_monotone}, two-bump recovery {recovery}, \
             two-sided level sandwich {sandwich}"
        ),
    );
}

#[test]
fn criterion_10_cap_interaction_decay() {
    let run = run_lab(&["cap-interaction"]);
    let sep: Vec<f64> = run.report["results"]["separated"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["ratio"].as_f64().unwrap())
        .collect();
    let nest: Vec<f64> = run.report["results"]["nested"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["ratio"].as_f64().unwrap())
        .collect();
    let sep_slope = f(&run.report, &["results", "separated_slope"]);
    let nest_slope = f(&run.report, &["results", "nested_slope"]);

    let sep_ok = sep.windows(2).all(|w| w[1] < w[0]) && sep_slope <= -0.25;
    // The scaling family is bounded above by envelopes with exponents in
    // [1/12, 1/6]; observed decay at least that fast is consistent.
    let nest_ok = nest.windows(2).all(|w| w[1] < w[0]) && nest_slope >= 1.0 / 12.0 - 0.02;
    verdict(
        10,
        run.status == 0 && sep_ok && nest_ok,
        &format!(
            "separated-cap ratios {sep:?} (log-log slope {sep_slope:.3} ≤ -0.25); \
             nested-cap ratios {nest:?} (slope {nest_slope:.3} ≥ 1/12 within fit tolerance, \
             decay no slower than the envelope family)"
        ),
    );
}

#[test]
fn criterion_11_small_cap_limit() {
    let run = run_lab(&["smallcap"]);
    let residual = f(&run.report, &["results", "rescaling_residual"]);
    let gaps: Vec<f64> = run.report["results"]["gaps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_f64().unwrap())
        .collect();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    verdict(
        11,
        run.status == 0 && residual < 1e-8 && gaps.len() == 4 && decreasing,
        &format!(
            "rescaling-identity residual {residual:.1e} at r=0.1; parabolic comparison gap \
             strictly decreasing along r = 0.2, 0.1, 0.05, 0.025: {gaps:?}"
        ),
    );
}

#[test]
fn criterion_12_strict_comparison() {
    let start = Instant::now();
    let base = run_lab(&["compare", "--max-iter", "100", "--tolerance", "1e-7"]);
    let doubled = run_lab(&[
        "compare",
        "--max-iter",
        "100",
        "--tolerance",
        "1e-7",
        "--grid-scale",
        "2",
    ]);
    let elapsed = start.elapsed();

    let comparison = &base.report["results"]["comparison"];
    let passes = comparison["passes"] == true;
    let gap = f(comparison, &["gap"]);
    let bars = f(comparison, &["combined_bar"]);
    let sym = f(comparison, &["symmetry_residual"]);

    let r1 = f(comparison, &["r", "value"]);
    let rp1 = f(comparison, &["rp", "value"]);
    let c2 = &doubled.report["results"]["comparison"];
    let r2 = f(c2, &["r", "value"]);
    let rp2 = f(c2, &["rp", "value"]);
    let r_shift = (r2 - r1).abs() / r1;
    let rp_shift = (rp2 - rp1).abs() / rp1;

    let stable = doubled.report["results"]["comparison"]["passes"] == true
        && r_shift < 0.01
        && rp_shift < 0.01;
    let in_budget = elapsed < Duration::from_secs(900);
    verdict(
        12,
        base.status == 0
            && doubled.status == 0
            && passes
            && gap > bars
            && sym < tol::SYMMETRY_RESIDUAL
            && stable
            && in_budget,
        &format!(
            "circle estimate beats the lifted parabola threshold by {gap:.4} with combined \
             bars {bars:.4}; doubling the grid moves the estimates by {r_shift:.2e} / \
             {rp_shift:.2e} (<1%) with the same verdict; converged symmetry residual \
             {sym:.1e} < 1e-4; total {elapsed:.1?}"
        ),
    );
}

// The binary path used by every criterion that drives the CLI.
#[allow(dead_code)]
fn binary_exists() {
    assert!(Path::new(env!("CARGO_BIN_EXE_restriction-lab")).exists());
}
