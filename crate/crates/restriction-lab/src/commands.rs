//! One function per subcommand.  Each runs its experiment, bundles the
//! payload for `results.json`, emits CSV plot data, and reports named
//! checks; the process exit code is 0 exactly when every check passes.

use std::collections::HashSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt::Write as _;

use anyhow::Context;
use serde_json::json;

use restriction_core::circle::{Cap, CircleFunction};
use restriction_core::decompose::{decompose, default_depth};
use restriction_core::extension::{
    circle_l6_certified, rescaling_identity_residual, smallcap_schrodinger_gap, CapProfile,
};
use restriction_core::gamma::{enumerate_group, gamma, maximize_gamma, orbit_terms, ThetaPoint};
use restriction_core::grid::PlaneGrid;
use restriction_core::perturbation::{moment_residuals, psi_prime_at_zero, AdaptedQuadrature};
use restriction_core::search::{estimate_r, random_start, strict_comparison};
use restriction_core::trilinear::{
    case_i_sweep, case_ii_sweep, default_kappa_samples, measure_kappa, trilinear_result,
    write_sweep_csv, SweepRow, CASE_II_LAMBDAS, CASE_I_SEPARATIONS,
};
use restriction_core::{tol, TWO_PI};

use crate::config::LabConfig;
use crate::output::{Check, Outcome};

/// The analytic value of `∫∫ |w₀|⁶`: `c₀⁶ π √π / √3` for the Gaussian
/// closed form `w₀ = c₀ (1+it)^{-1/2} e^{-x²/(2(1+it))}`.
fn w0_norm6_analytic(c0: f64) -> f64 {
    c0.powi(6) * std::f64::consts::PI * std::f64::consts::PI.sqrt() / 3.0f64.sqrt()
}

fn check_le(name: &'static str, value: f64, bound: f64) -> Check {
    Check::new(
        name,
        value <= bound,
        format!("{value:.3e} vs allowed {bound:.3e}"),
    )
}

// ---------------------------------------------------------------- gamma-max

pub fn gamma_max(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let starts = cfg.usize("gamma.starts")?;
    let seed = cfg.u64("search.seed")?;
    let gm = maximize_gamma(starts, seed);

    let argmax_distance = gm
        .argmax
        .iter()
        .map(|t| (t - FRAC_PI_4).abs())
        .fold(0.0f64, f64::max);
    let top_eigenvalue = gm.hessian_eigenvalues[5];

    let checks = vec![
        check_le(
            "maximum_is_five_halves",
            (gm.value - 2.5).abs(),
            tol::GAMMA_MAX,
        ),
        check_le("argmax_is_diagonal", argmax_distance, tol::GAMMA_ARGMAX),
        check_le("gradient_vanishes", gm.gradient_norm, tol::GRADIENT_NORM),
        check_le(
            "hessian_is_negative_definite",
            top_eigenvalue,
            -1e-6,
        ),
    ];

    let mut csv = String::from("t,gamma_diagonal\n");
    for k in 0..=180 {
        let t = FRAC_PI_2 * k as f64 / 180.0;
        let point: ThetaPoint = [t; 6];
        writeln!(csv, "{t},{}", gamma(&point))?;
    }

    Ok(Outcome {
        results: json!({
            "maximum": gm,
            "argmax_distance_to_diagonal": argmax_distance,
        }),
        checks,
        csv: vec![("gamma_diagonal.csv".into(), csv)],
    })
}

// -------------------------------------------------------------------- group

pub fn group(_cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let elements = enumerate_group();
    let image: HashSet<[u8; 6]> = elements.iter().map(|g| g.perm).collect();
    let kernel = elements
        .iter()
        .filter(|g| g.perm == [0, 1, 2, 3, 4, 5])
        .count();

    // Orbit terms at a generic point (away from every symmetry plane). The
    // 1440 per-element products collapse under the 72-element stabilizer to
    // exactly 20 distinct values, each taken 72 times.
    let generic: ThetaPoint = [0.31, 0.77, 1.13, 0.52, 0.95, 1.41];
    let (terms, sum) = orbit_terms(&generic);
    let direct = gamma(&generic);

    let mut sorted = terms.clone();
    sorted.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for &t in &sorted {
        match clusters.last_mut() {
            Some((v, count)) if (t - *v).abs() < 1e-9 => *count += 1,
            _ => clusters.push((t, 1)),
        }
    }
    let collapse_ok = clusters.len() == 20 && clusters.iter().all(|&(_, c)| c == 72);

    let checks = vec![
        Check::new(
            "group_order",
            elements.len() == 1440,
            format!("{} elements", elements.len()),
        ),
        Check::new(
            "permutation_image_order",
            image.len() == 720,
            format!("{} distinct permutations", image.len()),
        ),
        Check::new(
            "projection_kernel_order",
            kernel == 2,
            format!("{kernel} elements over the identity permutation"),
        ),
        Check::new(
            "stabilizer_collapse",
            collapse_ok,
            format!(
                "{} distinct orbit values, multiplicities {:?}",
                clusters.len(),
                clusters.iter().map(|&(_, c)| c).collect::<Vec<_>>()
            ),
        ),
        check_le(
            "orbit_sum_matches_direct_evaluation",
            (sum - direct).abs(),
            tol::ALGEBRAIC,
        ),
    ];

    let mut csv = String::from("term,value,multiplicity\n");
    for (k, (v, c)) in clusters.iter().enumerate() {
        writeln!(csv, "{k},{v},{c}")?;
    }

    Ok(Outcome {
        results: json!({
            "elements": elements.len(),
            "image": image.len(),
            "kernel": kernel,
            "distinct_orbit_values": clusters.len(),
            "orbit_sum_at_generic_point": sum,
        }),
        checks,
        csv: vec![("orbit_terms.csv".into(), csv)],
    })
}

// ------------------------------------------------------------- perturbation

pub fn perturbation(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let steps = cfg.f64_list("perturbation.steps")?;
    let grid = AdaptedQuadrature::default();
    let report = psi_prime_at_zero(&steps, &grid).context("first-variation measurement")?;
    let moments = moment_residuals();

    let worst_moment = moments
        .iter()
        .map(|m| (m.measured - m.reference).abs())
        .fold(0.0f64, f64::max);
    let w0_analytic = w0_norm6_analytic(report.c0_measured);

    // Reference constants carried by the derivation this laboratory checks.
    // Two of them disagree with both independent computational routes; the
    // mismatch is reported, not hidden, and does not fail the run because
    // the internal cross-checks below are what certify the computation.
    let references = [
        ("first_variation_ratio", 0.875, report.w6_derivative_ratio, 1e-3),
        ("norm_derivative_triple", 0.1875, report.g2_derivative_triple, 1e-6),
        ("psi_prime", 0.6875, report.psi_prime, 2e-3),
        ("w0_norm6", w0_norm6_analytic(report.c0_measured) / 2.0, report.w0_norm6, 0.005 * report.w0_norm6),
    ];
    let reference_rows: Vec<serde_json::Value> = references
        .iter()
        .map(|(name, reference, measured, tolerance)| {
            json!({
                "name": name,
                "reference": reference,
                "measured": measured,
                "tolerance": tolerance,
                "matches": (measured - reference).abs() <= *tolerance,
            })
        })
        .collect();

    let checks = vec![
        check_le("gaussian_moments_reproduced", worst_moment, tol::POINTWISE),
        check_le(
            "derivative_routes_agree",
            (report.w6_derivative_fd - report.w6_derivative_closed).abs(),
            report.error_bounds.w6_derivative + 1e-3 * report.w6_derivative_closed.abs(),
        ),
        check_le(
            "triple_is_three_sixteenths",
            (report.g2_derivative_triple - 0.1875).abs(),
            tol::G2_TRIPLE,
        ),
        Check::new(
            "psi_prime_is_ratio_minus_triple",
            report.psi_prime == report.w6_derivative_ratio - report.g2_derivative_triple,
            "identity holds bitwise by construction",
        ),
        check_le(
            "w0_norm_matches_gaussian_integral",
            (report.w0_norm6 - w0_analytic).abs() / w0_analytic,
            tol::W0_NORM_REL,
        ),
    ];

    let mut sweep = String::from("eps,w_norm6\n");
    for &eps in std::iter::once(&0.0).chain(steps.iter()) {
        let v = restriction_core::perturbation::w_eps_norm6(eps, &grid)?;
        writeln!(sweep, "{eps},{v}")?;
    }
    let mut moments_csv = String::from("label,measured,reference\n");
    for m in &moments {
        writeln!(moments_csv, "{},{},{}", m.label, m.measured, m.reference)?;
    }

    Ok(Outcome {
        results: json!({
            "report": report,
            "moments": moments,
            "references": reference_rows,
        }),
        checks,
        csv: vec![
            ("w_norm_sweep.csv".into(), sweep),
            ("moments.csv".into(), moments_csv),
        ],
    })
}

// --------------------------------------------------------------- plancherel

pub fn plancherel(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let n = cfg.usize("grid.n")?;
    let kappa_report = measure_kappa(&default_kappa_samples(n))?;

    let template = PlaneGrid::zeros(
        cfg.f64("grid.x")?,
        cfg.f64("grid.x")?,
        cfg.usize("grid.l6_axis")?,
        cfg.usize("grid.l6_axis")?,
    )?;
    let families = [
        ("constant", CircleFunction::constant(n, 1.0)?),
        (
            "polar-bump",
            CircleFunction::from_real_fn(n, |th| ((th.sin() - 1.0) / 0.3).exp())?,
        ),
        (
            "antipodal-pair",
            CircleFunction::from_real_fn(n, |th| {
                ((th.sin() - 1.0) / 0.3).exp() + ((-th.sin() - 1.0) / 0.3).exp()
            })?,
        ),
    ];

    let mut family_rows = Vec::new();
    let mut checks = vec![check_le(
        "kappa_spread",
        kappa_report.spread,
        tol::KAPPA_SPREAD,
    )];
    let mut csv = String::from("family,fourier,direct,relative_gap\n");
    for (name, f) in &families {
        let result = trilinear_result(f, &template)?;
        writeln!(
            csv,
            "{name},{},{},{}",
            result.fourier_value,
            result.direct_value,
            result.relative_gap()
        )?;
        checks.push(match *name {
            "constant" => check_le("routes_agree_constant", result.relative_gap(), tol::ROUTE_AGREEMENT),
            "polar-bump" => check_le("routes_agree_polar_bump", result.relative_gap(), tol::ROUTE_AGREEMENT),
            _ => check_le("routes_agree_antipodal_pair", result.relative_gap(), tol::ROUTE_AGREEMENT),
        });
        family_rows.push(json!({
            "name": name,
            "result": result,
            "relative_gap": result.relative_gap(),
        }));
    }

    let mut samples_csv = String::from("sample,ratio\n");
    for (k, r) in kappa_report.per_sample.iter().enumerate() {
        writeln!(samples_csv, "{k},{r}")?;
    }

    Ok(Outcome {
        results: json!({
            "kappa": kappa_report,
            "families": family_rows,
        }),
        checks,
        csv: vec![
            ("kappa_samples.csv".into(), samples_csv),
            ("trilinear_routes.csv".into(), csv),
        ],
    })
}

// --------------------------------------------------------------- symmetrize

pub fn symmetrize(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let n = cfg.usize("grid.n")?;
    let l = cfg.f64("grid.x")?;
    let axis = cfg.usize("grid.l6_axis")?;
    let seed = cfg.u64("search.seed")?;

    let battery: Vec<(&str, CircleFunction)> = vec![
        ("random", random_start(n, seed)?),
        (
            "two-bump",
            CircleFunction::from_real_fn(n, |th| {
                (((th - 0.4).cos() - 1.0) / 0.15).exp() + 0.6 * (((th - 3.6).cos() - 1.0) / 0.1).exp()
            })?,
        ),
        ("cap", Cap::new(1.0, 0.3)?.indicator(n)?),
    ];

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut profile_csv = String::from("theta,f_two_bump,f_star_two_bump\n");

    for (name, raw) in &battery {
        let f = raw.scaled(1.0 / raw.l2_norm());
        let fs = f.symmetrize()?;

        let q = circle_l6_certified(&f, l, axis)?;
        let qs = circle_l6_certified(&fs, l, axis)?;
        let q_bar = q.total() - q.value;
        let qs_bar = qs.total() - qs.value;
        let kappa = restriction_core::trilinear::kappa();
        let tri = q.total().powi(3) / kappa;
        let tri_s = qs.total().powi(3) / kappa;
        let tri_slack = (q.total().powi(3) - q.value.powi(3) + qs.total().powi(3)
            - qs.value.powi(3))
            / kappa;

        let fs2 = fs.symmetrize()?;
        let idem = fs2
            .samples()
            .iter()
            .zip(fs.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        let norm_drift = (fs.l2_norm_sq() - f.l2_norm_sq()).abs();

        let slug: &'static str = match *name {
            "random" => "random",
            "two-bump" => "two_bump",
            _ => "cap",
        };
        checks.push(Check::new(
            match slug {
                "random" => "q_monotone_random",
                "two_bump" => "q_monotone_two_bump",
                _ => "q_monotone_cap",
            },
            qs.total() >= q.total() - (q_bar + qs_bar + 1e-12),
            format!("{:.6} -> {:.6} (slack {:.2e})", q.total(), qs.total(), q_bar + qs_bar),
        ));
        checks.push(Check::new(
            match slug {
                "random" => "trilinear_monotone_random",
                "two_bump" => "trilinear_monotone_two_bump",
                _ => "trilinear_monotone_cap",
            },
            tri_s >= tri - (tri_slack + 1e-12),
            format!("{tri:.6} -> {tri_s:.6} (slack {tri_slack:.2e})"),
        ));
        checks.push(check_le(
            match slug {
                "random" => "idempotent_random",
                "two_bump" => "idempotent_two_bump",
                _ => "idempotent_cap",
            },
            idem.max(norm_drift).max(fs.symmetry_residual()),
            tol::ALGEBRAIC,
        ));

        if *name == "two-bump" {
            for i in 0..n {
                writeln!(
                    profile_csv,
                    "{},{},{}",
                    f.theta(i),
                    f.samples()[i].re,
                    fs.samples()[i].re
                )?;
            }
        }
        rows.push(json!({
            "name": name,
            "q": q.total(),
            "q_symmetrized": qs.total(),
            "q_bars": [q_bar, qs_bar],
            "trilinear": tri,
            "trilinear_symmetrized": tri_s,
            "idempotence_residual": idem,
            "norm_drift": norm_drift,
            "symmetry_residual": fs.symmetry_residual(),
        }));
    }

    Ok(Outcome {
        results: json!({ "battery": rows }),
        checks,
        csv: vec![("symmetrize_profiles.csv".into(), profile_csv)],
    })
}

// ---------------------------------------------------------------- decompose

pub fn decompose_cmd(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let n = cfg.usize("grid.n")?;
    let max_steps = cfg.usize("decompose.max_steps")?;
    let s_hat = cfg.f64("decompose.s_hat")?;
    let template = PlaneGrid::zeros(cfg.f64("grid.x")?, cfg.f64("grid.x")?, 201, 201)?;

    // Two equal indicator bumps planted at known grid nodes (scaled with n
    // so the centers stay on the grid for any circle size).
    let radius = 0.125;
    let planted = [
        TWO_PI * ((16 * n / 256) as f64) / n as f64,
        TWO_PI * ((100 * n / 256) as f64) / n as f64,
    ];
    let caps = [
        Cap::new(planted[0], radius)?,
        Cap::new(planted[1], radius)?,
    ];
    let height = 1.0 / caps[0].measure().sqrt();
    let f = CircleFunction::from_real_fn(n, |th| {
        if caps.iter().any(|c| c.contains(th)) {
            height
        } else {
            0.0
        }
    })?;

    let trace = decompose(&f, max_steps, s_hat, default_depth(n), &template)?;
    let summary = trace.summary();

    let circular_gap = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(TWO_PI);
        d.min(TWO_PI - d)
    };
    let recovered: Vec<f64> = summary.steps.iter().map(|s| s.cap_center).collect();
    let all_recovered = planted
        .iter()
        .all(|&p| recovered.iter().any(|&c| circular_gap(p, c) < radius));

    let checks = vec![
        Check::new(
            "loop_terminated",
            trace.terminated,
            format!("{} steps", summary.steps.len()),
        ),
        Check::new(
            "two_bumps_two_steps",
            summary.steps.len() == 2,
            format!("{} steps", summary.steps.len()),
        ),
        check_le(
            "parseval_bookkeeping",
            summary.parseval_residual,
            tol::PARSEVAL,
        ),
        Check::new(
            "supports_disjoint",
            trace.supports_disjoint(),
            "pairwise pointwise products vanish",
        ),
        Check::new(
            "planted_caps_recovered",
            all_recovered,
            format!("recovered centers {recovered:?}"),
        ),
    ];

    let mut csv = String::from("step,cap_center,cap_radius,eps_star,piece_norm,residual_norm\n");
    for (k, s) in summary.steps.iter().enumerate() {
        writeln!(
            csv,
            "{k},{},{},{},{},{}",
            s.cap_center, s.cap_radius, s.eps_star, s.piece_norm, s.residual_norm
        )?;
    }

    Ok(Outcome {
        results: json!({
            "summary": summary,
            "planted_centers": planted,
        }),
        checks,
        csv: vec![("trace_steps.csv".into(), csv)],
    })
}

// ---------------------------------------------------------- cap-interaction

fn sweep_csv(rows: &[SweepRow]) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    write_sweep_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

pub fn cap_interaction(_cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let rows_i = case_i_sweep(&CASE_I_SEPARATIONS)?;
    let rows_ii = case_ii_sweep(&CASE_II_LAMBDAS)?;

    let decreasing_i = rows_i.windows(2).all(|w| w[1].ratio < w[0].ratio);
    let decreasing_ii = rows_ii.windows(2).all(|w| w[1].ratio < w[0].ratio);
    let slope_i = rows_i[0].slope_fit;
    let slope_ii = rows_ii[0].slope_fit;

    let checks = vec![
        Check::new(
            "separated_caps_decay",
            decreasing_i,
            format!(
                "ratios {:?}",
                rows_i.iter().map(|r| r.ratio).collect::<Vec<_>>()
            ),
        ),
        check_le("separated_caps_slope", slope_i, tol::CASE_I_MAX_SLOPE),
        Check::new(
            "nested_caps_decay",
            decreasing_ii,
            format!(
                "ratios {:?}",
                rows_ii.iter().map(|r| r.ratio).collect::<Vec<_>>()
            ),
        ),
        Check::new(
            "nested_caps_slope",
            slope_ii >= tol::CASE_II_MIN_SLOPE,
            format!("{slope_ii:.4} vs floor {:.4}", tol::CASE_II_MIN_SLOPE),
        ),
    ];

    Ok(Outcome {
        results: json!({
            "separated": rows_i,
            "separated_slope": slope_i,
            "nested": rows_ii,
            "nested_slope": slope_ii,
        }),
        checks,
        csv: vec![
            ("case_separated.csv".into(), sweep_csv(&rows_i)?),
            ("case_nested.csv".into(), sweep_csv(&rows_ii)?),
        ],
    })
}

// ----------------------------------------------------------------- smallcap

pub fn smallcap(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let radii = cfg.f64_list("smallcap.radii")?;

    // Identity check at r = 0.1: two independent quadratures for the same
    // integral, in circle coordinates.
    let witness = CapProfile::gaussian(1601, 4.0, 0.1, FRAC_PI_2)?;
    let circle_template = PlaneGrid::zeros(20.0, 20.0, 81, 81)?;
    let residual = rescaling_identity_residual(&witness, &circle_template)?;

    // Gap sweep in profile coordinates: a fixed window for every radius so
    // the values are comparable.
    let profile_template = PlaneGrid::zeros(12.0, 12.0, 181, 181)?;
    let mut gaps = Vec::new();
    for &r in &radii {
        let p = CapProfile::gaussian(801, 4.0, r, FRAC_PI_2)?;
        gaps.push(smallcap_schrodinger_gap(&p, &profile_template)?);
    }
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);

    let checks = vec![
        check_le(
            "rescaling_identity",
            residual,
            tol::RESCALE_RESIDUAL,
        ),
        Check::new(
            "parabola_gap_decreasing",
            decreasing,
            format!("gaps {gaps:?} along radii {radii:?}"),
        ),
    ];

    let mut csv = String::from("radius,gap\n");
    for (r, g) in radii.iter().zip(&gaps) {
        writeln!(csv, "{r},{g}")?;
    }

    Ok(Outcome {
        results: json!({
            "rescaling_residual": residual,
            "radii": radii,
            "gaps": gaps,
        }),
        checks,
        csv: vec![("smallcap_gaps.csv".into(), csv)],
    })
}

// ------------------------------------------------------------------- search

pub fn search(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let rc = cfg.run_config("search")?;
    let report = estimate_r(&rc)?;

    let mut checks = Vec::new();
    let worst_residual = report
        .outcomes
        .iter()
        .map(|o| o.symmetry_residual)
        .fold(0.0f64, f64::max);
    checks.push(check_le(
        "converged_iterates_are_symmetric",
        worst_residual,
        tol::SYMMETRY_RESIDUAL,
    ));
    let monotone = report.outcomes.iter().all(|o| {
        o.q_history.windows(2).enumerate().all(|(k, w)| {
            w[1] >= w[0] - (o.q_bars[k] + o.q_bars[k + 1] + 1e-12)
        })
    });
    checks.push(Check::new(
        "trajectories_monotone_within_bars",
        monotone,
        "no functional drop beyond certified error",
    ));

    let constant_q = report
        .outcomes
        .iter()
        .find(|o| o.name == "constant")
        .map(|o| o.q)
        .unwrap_or(f64::NAN);
    let beats_constant = report.estimate.value > constant_q + report.estimate.bar;

    let mut csv = String::from("start,step,q,bar\n");
    for o in &report.outcomes {
        for (k, (q, b)) in o.q_history.iter().zip(&o.q_bars).enumerate() {
            writeln!(csv, "{},{k},{q},{b}", o.name)?;
        }
    }

    Ok(Outcome {
        results: json!({
            "search": report,
            "run_config": rc,
            // Open question deliberately reported, never asserted: does any
            // start beat the constant density?
            "any_start_beats_constant": beats_constant,
        }),
        checks,
        csv: vec![("trajectories.csv".into(), csv)],
    })
}

// ------------------------------------------------------------------ compare

pub fn compare(cfg: &LabConfig) -> anyhow::Result<Outcome> {
    let rc = cfg.run_config("compare")?;
    let report = strict_comparison(&rc)?;

    let checks = vec![
        Check::new(
            "circle_beats_lifted_parabola",
            report.passes,
            format!(
                "gap {:.4} vs combined bars {:.4}",
                report.gap, report.combined_bar
            ),
        ),
        Check::new(
            "estimates_are_consistent",
            report.r.value >= report.rp.value - report.r.bar - report.rp.bar,
            format!("R {:.4} vs R_P {:.4}", report.r.value, report.rp.value),
        ),
        check_le(
            "lift_factor_exact",
            (report.lift_factor - 2.5f64.powf(1.0 / 6.0)).abs(),
            0.0,
        ),
        check_le(
            "converged_symmetry",
            report.symmetry_residual,
            tol::SYMMETRY_RESIDUAL,
        ),
    ];

    let mut csv = String::from("r,r_bar,rp,rp_bar,lift_factor,threshold,gap,combined_bar,passes\n");
    writeln!(
        csv,
        "{},{},{},{},{},{},{},{},{}",
        report.r.value,
        report.r.bar,
        report.rp.value,
        report.rp.bar,
        report.lift_factor,
        report.threshold,
        report.gap,
        report.combined_bar,
        report.passes
    )?;

    Ok(Outcome {
        results: json!({
            "comparison": report,
            "run_config": rc,
        }),
        checks,
        csv: vec![("comparison.csv".into(), csv)],
    })
}
