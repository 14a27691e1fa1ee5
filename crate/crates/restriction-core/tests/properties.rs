//! Property suite: the algebraic invariants every routine must honor on
//! arbitrary inputs, not just the curated fixtures of the unit tests.

use num_complex::Complex64;
use proptest::prelude::*;

use restriction_core::circle::CircleFunction;
use restriction_core::decompose::{best_cap, cap_functional};
use restriction_core::extension::{circle_l6_certified, extend_circle};
use restriction_core::grid::PlaneGrid;
use restriction_core::trilinear::trilinear_result;
use restriction_core::TWO_PI;

const N: usize = 64;
const WINDOW: f64 = 16.0;
const AXIS: usize = 129;

fn nonneg_samples() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..1.0, N)
}

fn complex_samples() -> impl Strategy<Value = Vec<(f64, f64)>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), N)
}

fn to_circle(pairs: &[(f64, f64)]) -> CircleFunction {
    CircleFunction::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
}

/// Rejects the measure-zero all-zeros draw without biasing anything else.
fn nonzero(f: &CircleFunction) -> bool {
    f.max_abs() > 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certified_norm_is_homogeneous(vals in nonneg_samples(), c in 0.1f64..10.0) {
        let f = CircleFunction::from_real(vals).unwrap();
        prop_assume!(nonzero(&f));
        let base = circle_l6_certified(&f, WINDOW, AXIS).unwrap();
        let scaled = circle_l6_certified(&f.scaled(c), WINDOW, AXIS).unwrap();
        let expect = c * base.total();
        prop_assert!(
            (scaled.total() - expect).abs() <= 1e-12 * expect.max(1.0),
            "scaling by {c} moved the norm from {expect} to {}",
            scaled.total()
        );
    }

    #[test]
    fn certified_norm_ignores_global_phase(pairs in complex_samples(), phi in 0.0f64..TWO_PI) {
        let f = to_circle(&pairs);
        prop_assume!(nonzero(&f));
        let rotated = CircleFunction::new(
            f.samples().iter().map(|z| z * Complex64::from_polar(1.0, phi)).collect()
        ).unwrap();
        let a = circle_l6_certified(&f, WINDOW, AXIS).unwrap().total();
        let b = circle_l6_certified(&rotated, WINDOW, AXIS).unwrap().total();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn extension_is_linear(
        pairs_f in complex_samples(),
        pairs_g in complex_samples(),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        let template = PlaneGrid::zeros(8.0, 8.0, 33, 33).unwrap();
        let f = to_circle(&pairs_f);
        let g = to_circle(&pairs_g);
        let combo = CircleFunction::new(
            f.samples().iter().zip(g.samples()).map(|(zf, zg)| a * zf + b * zg).collect()
        ).unwrap();

        let uf = extend_circle(&f, &template);
        let ug = extend_circle(&g, &template);
        let uc = extend_circle(&combo, &template);

        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for (k, z) in uc.values().iter().enumerate() {
            let lin = a * uf.values()[k] + b * ug.values()[k];
            worst = worst.max((z - lin).norm());
            scale = scale.max(z.norm());
        }
        prop_assert!(worst <= 1e-11 * scale.max(1.0), "linearity residual {worst}");
    }

    #[test]
    fn symmetrization_is_monotone_idempotent_isometric(vals in nonneg_samples()) {
        let f = CircleFunction::from_real(vals).unwrap();
        prop_assume!(nonzero(&f));
        let fs = f.symmetrize().unwrap();

        // Monotone within the paired certified bars.
        let q = circle_l6_certified(&f, WINDOW, AXIS).unwrap();
        let qs = circle_l6_certified(&fs, WINDOW, AXIS).unwrap();
        let slack = (q.total() - q.value) + (qs.total() - qs.value) + 1e-12;
        prop_assert!(qs.total() >= q.total() - slack, "{} -> {}", q.total(), qs.total());

        // Exactly even, exactly isometric, exactly idempotent.
        prop_assert!(fs.symmetry_residual() <= 1e-12);
        prop_assert!((fs.l2_norm_sq() - f.l2_norm_sq()).abs() <= 1e-12 * f.l2_norm_sq().max(1.0));
        let fs2 = fs.symmetrize().unwrap();
        let idem = fs2.samples().iter().zip(fs.samples())
            .map(|(x, y)| (x - y).norm()).fold(0.0f64, f64::max);
        prop_assert!(idem <= 1e-12);
    }

    #[test]
    fn best_cap_ignores_sample_phases(vals in nonneg_samples(), phases in proptest::collection::vec(0.0f64..TWO_PI, N)) {
        let f = CircleFunction::from_real(vals.clone()).unwrap();
        prop_assume!(nonzero(&f));
        let dressed = CircleFunction::new(
            vals.iter().zip(&phases).map(|(&v, &p)| Complex64::from_polar(v, p)).collect()
        ).unwrap();

        let (cap_f, val_f) = best_cap(&f, 5).unwrap();
        let (cap_d, val_d) = best_cap(&dressed, 5).unwrap();
        // The cap functional reads only |samples|², so the selection must not
        // move at all and the values agree to rounding.
        prop_assert_eq!(cap_f.center().to_bits(), cap_d.center().to_bits());
        prop_assert_eq!(cap_f.radius().to_bits(), cap_d.radius().to_bits());
        prop_assert!((val_f - val_d).abs() <= 1e-12 * val_f.max(1.0));
    }

    #[test]
    fn best_cap_rotates_with_its_input(vals in nonneg_samples(), shift in 0usize..N) {
        let f = CircleFunction::from_real(vals.clone()).unwrap();
        prop_assume!(nonzero(&f));
        let rotated = CircleFunction::from_real(
            (0..N).map(|i| vals[(i + shift) % N]).collect()
        ).unwrap();

        let (cap, value) = best_cap(&f, 5).unwrap();
        let (_, value_r) = best_cap(&rotated, 5).unwrap();
        // Rotation permutes the candidate caps, so the maxima agree…
        prop_assert!((value - value_r).abs() <= 1e-12 * value.max(1.0));
        // …and the original winner, transported by the rotation, still
        // attains it on the rotated data.
        let moved = restriction_core::circle::Cap::new(
            cap.center() - TWO_PI * shift as f64 / N as f64,
            cap.radius(),
        ).unwrap();
        let attained = cap_functional(&rotated, &moved);
        prop_assert!(attained >= value_r - 1e-12 * value_r.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The Fourier route reports a certified interval: `fourier_value` is the
    /// tail-inflated upper end and `truncation_bound` its certified width, so
    /// the honest agreement statement is that the direct kernel-density value
    /// lands within `ROUTE_AGREEMENT` of that interval — not of its upper end,
    /// which embeds the certificate itself. The strategy draws smooth positive
    /// trigonometric exponentials: white noise has convolution structure below
    /// the kernel width and genuinely separates the routes.
    #[test]
    fn trilinear_routes_agree_on_random_smooth_densities(
        coeffs in proptest::collection::vec(-0.8f64..0.8, 6)
    ) {
        let f = CircleFunction::from_real_fn(N, |th| {
            let mut s = 0.0;
            for (k, pair) in coeffs.chunks(2).enumerate() {
                let m = (k + 1) as f64;
                s += pair[0] * (m * th).cos() + pair[1] * (m * th).sin();
            }
            s.exp()
        }).unwrap();
        let f = f.scaled(1.0 / f.l2_norm());
        let template = PlaneGrid::zeros(WINDOW, WINDOW, AXIS, AXIS).unwrap();
        let result = trilinear_result(&f, &template).unwrap();
        let lower = result.fourier_value - result.truncation_bound;
        let distance = (lower - result.direct_value)
            .max(result.direct_value - result.fourier_value)
            .max(0.0);
        prop_assert!(
            distance / result.direct_value < restriction_core::tol::ROUTE_AGREEMENT,
            "direct {} outside certified interval [{}, {}]",
            result.direct_value,
            lower,
            result.fourier_value
        );
        // The certificate must stay informative at this window, not swallow
        // the comparison: its width is a bounded fraction of the value.
        prop_assert!(
            result.truncation_bound < 0.15 * result.direct_value,
            "truncation width {} dwarfs direct value {}",
            result.truncation_bound,
            result.direct_value
        );
    }
}
