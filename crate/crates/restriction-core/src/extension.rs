//! Adjoint-restriction (extension) operators for the circle and the parabola.
//!
//! Everything here evaluates oscillatory integrals of the form
//! `∫ f(θ) e^{-i ξ·z(θ)} dθ` by trapezoid-on-a-periodic-grid quadrature, which
//! is spectrally accurate for smooth densities. The plane evaluation is
//! separable: the phase splits into an `x`-factor and a `t`-factor, so a full
//! grid costs one table of each plus an `O(N·nx·nt)` accumulation. Sums are
//! pairwise in a fixed order, so results are identical for any thread count.

use num_complex::Complex64;

use crate::circle::{Cap, CircleFunction};
use crate::error::{CoreError, Result};
use crate::fit::loglog_slope;
use crate::grid::{LpEstimate, PlaneGrid};
use crate::sum::{pairwise_sum, pairwise_sum_complex, tabulate};
use crate::TWO_PI;

/// Relative endpoint magnitude above which a line profile is considered
/// truncated too aggressively to extend.
const ENDPOINT_DECAY_TOL: f64 = 1e-6;

/// Circle resolution used internally when a cap profile has to be realised as
/// a function on the full circle.
const PROFILE_CIRCLE_N: usize = 4096;

/// Extension of `f dσ` from the unit circle, evaluated on the geometry of
/// `template` (its values are ignored):
///
/// `u(x, t) = Σ_k f(θ_k) · exp(-i(x cos θ_k + t sin θ_k)) · (2π/N)`.
pub fn extend_circle(f: &CircleFunction, template: &PlaneGrid) -> PlaneGrid {
    let w = f.weight();
    let (nx, nt) = (template.nx(), template.nt());

    // Compact away exactly-zero samples (cap indicators are mostly zero);
    // dropping exact zeros from the quadrature changes nothing.
    let zero = Complex64::new(0.0, 0.0);
    let support: Vec<usize> = (0..f.n()).filter(|&k| f.samples()[k] != zero).collect();
    let m = support.len();
    if m == 0 {
        return template.with_values(vec![zero; nx * nt]);
    }
    let vals: Vec<Complex64> = support.iter().map(|&k| f.samples()[k] * w).collect();
    let cos_k: Vec<f64> = support.iter().map(|&k| f.theta(k).cos()).collect();
    let sin_k: Vec<f64> = support.iter().map(|&k| f.theta(k).sin()).collect();

    // t-phase table, contiguous per row j: b[j*m + k] = exp(-i t_j sin θ_k).
    let t_phase: Vec<Complex64> = tabulate(nt, |j| {
        let t = template.t(j);
        (0..m)
            .map(|k| Complex64::from_polar(1.0, -t * sin_k[k]))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let rows = tabulate(nx, |i| {
        let x = template.x(i);
        let a: Vec<Complex64> = (0..m)
            .map(|k| vals[k] * Complex64::from_polar(1.0, -x * cos_k[k]))
            .collect();
        let mut buf = vec![zero; m];
        let mut row = Vec::with_capacity(nt);
        for j in 0..nt {
            let b = &t_phase[j * m..(j + 1) * m];
            for k in 0..m {
                buf[k] = a[k] * b[k];
            }
            row.push(pairwise_sum_complex(&buf));
        }
        row
    });

    template.with_values(rows.into_iter().flatten().collect())
}

/// Extension of `f dσ` evaluated at an arbitrary list of space-time points.
pub fn extend_circle_at_points(f: &CircleFunction, points: &[(f64, f64)]) -> Vec<Complex64> {
    let n = f.n();
    let w = f.weight();
    let cos_k: Vec<f64> = (0..n).map(|k| f.theta(k).cos()).collect();
    let sin_k: Vec<f64> = (0..n).map(|k| f.theta(k).sin()).collect();
    tabulate(points.len(), |p| {
        let (x, t) = points[p];
        let terms: Vec<Complex64> = (0..n)
            .map(|k| {
                f.samples()[k] * w * Complex64::from_polar(1.0, -(x * cos_k[k] + t * sin_k[k]))
            })
            .collect();
        pairwise_sum_complex(&terms)
    })
}

/// A function sampled uniformly on a symmetric interval `[-y_half, y_half]`.
///
/// Used both as a parabola density and as the profile of a small circular cap
/// in rescaled coordinates.
#[derive(Debug, Clone)]
pub struct LineProfile {
    y_half: f64,
    values: Vec<Complex64>,
}

impl LineProfile {
    pub fn new(y_half: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 8 {
            return Err(CoreError::Truncation(format!(
                "line profile needs at least 8 samples, got {}",
                values.len()
            )));
        }
        if !(y_half > 0.0) {
            return Err(CoreError::Truncation(format!(
                "line profile half-width must be positive, got {y_half}"
            )));
        }
        Ok(Self { y_half, values })
    }

    pub fn from_fn(m: usize, y_half: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = (0..m)
            .map(|k| f(-y_half + 2.0 * y_half * k as f64 / (m - 1) as f64))
            .collect();
        Self::new(y_half, values)
    }

    /// The standard Gaussian profile `exp(-y²)` on `[-y_half, y_half]`.
    pub fn gaussian(m: usize, y_half: f64) -> Self {
        Self::from_fn(m, y_half, |y| Complex64::new((-y * y).exp(), 0.0))
            .expect("static profile parameters are valid")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn y_half(&self) -> f64 {
        self.y_half
    }

    pub fn y(&self, k: usize) -> f64 {
        -self.y_half + 2.0 * self.y_half * k as f64 / (self.len() - 1) as f64
    }

    /// Trapezoid weight at sample `k`.
    pub fn weight(&self, k: usize) -> f64 {
        let h = 2.0 * self.y_half / (self.len() - 1) as f64;
        if k == 0 || k == self.len() - 1 {
            h / 2.0
        } else {
            h
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude at the two truncation endpoints.
    pub fn endpoint_abs(&self) -> f64 {
        self.values[0].norm().max(self.values[self.len() - 1].norm())
    }

    /// `(∫ |φ(y)|² dy)^{1/2}` by the trapezoid rule.
    pub fn l2_norm(&self) -> f64 {
        let sq: Vec<f64> = (0..self.len())
            .map(|k| self.values[k].norm_sqr() * self.weight(k))
            .collect();
        pairwise_sum(&sq).sqrt()
    }

    /// Cubic (4-point Lagrange) interpolation at an arbitrary `y` inside the
    /// interval; returns zero outside. Interpolation error is `O(h⁴)`, far
    /// below the quadrature tolerances this crate certifies.
    pub fn interp(&self, y: f64) -> Complex64 {
        if y < -self.y_half || y > self.y_half {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.len();
        let h = 2.0 * self.y_half / (m - 1) as f64;
        let s = (y + self.y_half) / h;
        let i1 = (s.floor() as usize).min(m - 2);
        let u = s - i1 as f64;
        // Clamp the stencil at the ends (falls back to the boundary cubic).
        let i0 = i1.saturating_sub(1);
        let i2 = i1 + 1;
        let i3 = (i1 + 2).min(m - 1);
        let (x0, x1, x2, x3) = (
            i0 as f64 - i1 as f64,
            0.0,
            i2 as f64 - i1 as f64,
            i3 as f64 - i1 as f64,
        );
        let l = |xa: f64, xb: f64, xc: f64, xd: f64| {
            ((u - xb) * (u - xc) * (u - xd)) / ((xa - xb) * (xa - xc) * (xa - xd))
        };
        if i0 == i1 || i3 == i2 {
            // Degenerate stencil at the boundary: linear between neighbours.
            return self.values[i1] * (1.0 - u) + self.values[i2] * u;
        }
        self.values[i0] * l(x0, x1, x2, x3)
            + self.values[i1] * l(x1, x0, x2, x3)
            + self.values[i2] * l(x2, x0, x1, x3)
            + self.values[i3] * l(x3, x0, x1, x2)
    }
}

fn check_endpoint_decay(p: &LineProfile) -> Result<()> {
    let max = p.max_abs();
    if max == 0.0 {
        return Err(CoreError::ZeroInput);
    }
    if p.endpoint_abs() > ENDPOINT_DECAY_TOL * max {
        return Err(CoreError::Truncation(format!(
            "profile endpoint magnitude {:.3e} exceeds {:.1e} of its peak; widen the interval",
            p.endpoint_abs(),
            ENDPOINT_DECAY_TOL
        )));
    }
    Ok(())
}

/// Extension of `φ` from the parabola `{(y, y²/2)}`, in the normalisation
///
/// `u(x, t) = Σ_k φ(y_k) · exp(i(x y_k - t y_k²/2)) · w_k`.
///
/// Fails if `φ` has not decayed at its truncation endpoints.
pub fn extend_parabola(phi: &LineProfile, template: &PlaneGrid) -> Result<PlaneGrid> {
    check_endpoint_decay(phi)?;
    let m = phi.len();
    let (nx, nt) = (template.nx(), template.nt());
    let ys: Vec<f64> = (0..m).map(|k| phi.y(k)).collect();

    let t_phase: Vec<Complex64> = tabulate(nt, |j| {
        let t = template.t(j);
        (0..m)
            .map(|k| Complex64::from_polar(1.0, -t * ys[k] * ys[k] / 2.0))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let rows = tabulate(nx, |i| {
        let x = template.x(i);
        let a: Vec<Complex64> = (0..m)
            .map(|k| phi.values()[k] * phi.weight(k) * Complex64::from_polar(1.0, x * ys[k]))
            .collect();
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let mut row = Vec::with_capacity(nt);
        for j in 0..nt {
            let b = &t_phase[j * m..(j + 1) * m];
            for k in 0..m {
                buf[k] = a[k] * b[k];
            }
            row.push(pairwise_sum_complex(&buf));
        }
        row
    });

    Ok(template.with_values(rows.into_iter().flatten().collect()))
}

/// A circular cap together with a smooth profile in rescaled coordinates:
/// the circle density is `f(θ) = r^{-1/2} g(y) (1 - r²y²)^{1/4}` with
/// `y = sin(c - θ)/r`.
#[derive(Debug, Clone)]
pub struct CapProfile {
    profile: LineProfile,
    cap: Cap,
}

impl CapProfile {
    /// `profile` must be real-analytic-smooth in practice and decayed at its
    /// endpoints, and the rescaled support must stay strictly inside the open
    /// half-circle: `r · y_half < 0.9`.
    pub fn new(profile: LineProfile, cap: Cap) -> Result<Self> {
        check_endpoint_decay(&profile)?;
        if cap.radius() * profile.y_half() >= 0.9 {
            return Err(CoreError::SupportViolation {
                leak: cap.radius() * profile.y_half(),
            });
        }
        Ok(Self { profile, cap })
    }

    pub fn gaussian(m: usize, y_half: f64, radius: f64, center: f64) -> Result<Self> {
        Self::new(LineProfile::gaussian(m, y_half), Cap::new(center, radius)?)
    }

    pub fn cap(&self) -> &Cap {
        &self.cap
    }

    pub fn profile(&self) -> &LineProfile {
        &self.profile
    }

    /// Realise the cap density as a function on the full circle (zero outside
    /// the cap's angular support).
    pub fn to_circle(&self, n: usize) -> Result<CircleFunction> {
        let r = self.cap.radius();
        let c = self.cap.center();
        let y_half = self.profile.y_half();
        CircleFunction::from_fn(n, |theta| {
            let rel = c - theta;
            let y = rel.sin() / r;
            if rel.cos() <= 0.0 || y.abs() > y_half {
                return Complex64::new(0.0, 0.0);
            }
            let amp = (1.0 - r * r * y * y).powf(0.25);
            self.profile.interp(y) * amp * r.powf(-0.5)
        })
    }

    /// `|u(x,t)|` of the cap density, computed in profile coordinates by a
    /// direct quadrature over `y`:
    ///
    /// `r^{1/2} |∫ e^{i(rx)y - i(r²t)y²/2} h(r²t, y) g(y) (1-r²y²)^{-1/4} dy|`
    ///
    /// with `h(τ, y) = exp(iτ[(√(1-r²y²)-1)/r² + y²/2])` carrying the exact
    /// circle curvature. This is the same integral as the circle-side
    /// extension after an exact change of variables, so any difference between
    /// the two is pure quadrature error.
    pub fn abs_extension_profile_route(&self, x: f64, t: f64) -> f64 {
        let r = self.cap.radius();
        let g = &self.profile;
        let tau = r * r * t;
        let terms: Vec<Complex64> = (0..g.len())
            .map(|k| {
                let y = g.y(k);
                let root = (1.0 - r * r * y * y).sqrt();
                let curvature = (root - 1.0) / (r * r) + y * y / 2.0;
                let phase = r * x * y - tau * y * y / 2.0 + tau * curvature;
                g.values()[k] * g.weight(k) * Complex64::from_polar(1.0, phase)
                    * (1.0 - r * r * y * y).powf(-0.25)
            })
            .collect();
        r.sqrt() * pairwise_sum_complex(&terms).norm()
    }
}

/// Maximum over the grid of the absolute difference between the two
/// independent quadratures for `|u|` of a cap density: the circle-side
/// trapezoid rule against the rescaled profile-side rule. Both converge to the
/// same integral, so the residual measures quadrature error only.
pub fn rescaling_identity_residual(p: &CapProfile, template: &PlaneGrid) -> Result<f64> {
    let f = p.to_circle(PROFILE_CIRCLE_N)?;
    let circle_side = extend_circle(&f, template);
    let (nx, nt) = (template.nx(), template.nt());
    let diffs = tabulate(nx, |i| {
        let mut worst = 0.0f64;
        for j in 0..nt {
            let lhs = circle_side.value(i, j).norm();
            let rhs = p.abs_extension_profile_route(template.x(i), template.t(j));
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    });
    Ok(diffs.into_iter().fold(0.0, f64::max))
}

/// `L⁶` distance, over the grid, between the cap extension written in profile
/// coordinates and the parabola extension of the same profile. The curvature
/// factor `h` and the amplitude `(1-r²y²)^{-1/4}` both tend to 1 as `r → 0`,
/// so this gap measures exactly the circle-to-parabola defect; it decays like
/// `r²` for smooth profiles.
pub fn smallcap_schrodinger_gap(p: &CapProfile, template: &PlaneGrid) -> Result<f64> {
    let parabola = extend_parabola(&self_profile(p), template)?;
    let r = p.cap().radius();
    let g = p.profile();
    let m = g.len();
    let ys: Vec<f64> = (0..m).map(|k| g.y(k)).collect();
    let amp: Vec<f64> = ys
        .iter()
        .map(|y| (1.0 - r * r * y * y).powf(-0.25))
        .collect();
    let curvature: Vec<f64> = ys
        .iter()
        .map(|y| ((1.0 - r * r * y * y).sqrt() - 1.0) / (r * r) + y * y / 2.0)
        .collect();

    let (nx, nt) = (template.nx(), template.nt());
    let t_phase: Vec<Complex64> = tabulate(nt, |j| {
        let t = template.t(j);
        (0..m)
            .map(|k| {
                Complex64::from_polar(1.0, -t * ys[k] * ys[k] / 2.0 + t * curvature[k]) * amp[k]
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let rows = tabulate(nx, |i| {
        let x = template.x(i);
        let a: Vec<Complex64> = (0..m)
            .map(|k| g.values()[k] * g.weight(k) * Complex64::from_polar(1.0, x * ys[k]))
            .collect();
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let mut row = Vec::with_capacity(nt);
        for j in 0..nt {
            let b = &t_phase[j * m..(j + 1) * m];
            for k in 0..m {
                buf[k] = a[k] * b[k];
            }
            row.push(pairwise_sum_complex(&buf));
        }
        row
    });
    let cap_field = template.with_values(rows.into_iter().flatten().collect());

    let mut diff = cap_field;
    for (d, p) in diff.values_mut().iter_mut().zip(parabola.values()) {
        *d -= p;
    }
    Ok(diff.lp_norm(6.0))
}

fn self_profile(p: &CapProfile) -> LineProfile {
    p.profile().clone()
}

/// Grid-truncated `L⁶` norm of the circle extension of `f`, certified by an
/// analytic bound on the mass outside the disk of radius `L`.
///
/// For `|ξ| = ρ ≥ L` large enough to resolve the density's features,
/// `|u(ρ, ·)|²` averages to `(2π/ρ)(|f(θ)|² + |f(θ+π)|²)` over directions, and
/// integrating the resulting sixth-power envelope over `ρ ∈ [L, ∞)` gives
///
/// `tail⁶ = (2π)³/L · Σ_k [2|f_k|⁶ + 18|f_k|⁴|f_{k+N/2}|²] · (2π/N)`.
///
/// The estimate is only meaningful when `L` is well beyond the last stationary
/// feature of `f` (i.e. `L ≫ 1/width²` for width-limited densities); callers
/// choose `L` accordingly.
pub fn circle_l6_certified(f: &CircleFunction, l: f64, n_axis: usize) -> Result<LpEstimate> {
    if !(l > 0.0) {
        return Err(CoreError::Truncation(format!(
            "disk radius must be positive, got {l}"
        )));
    }
    let template = PlaneGrid::zeros(l, l, n_axis, n_axis)?;
    let u = extend_circle(f, &template);

    // Disk-masked sixth-power integral.
    let row_sums = tabulate(n_axis, |i| {
        let x = template.x(i);
        let wx = u.weight_x(i);
        let terms: Vec<f64> = (0..n_axis)
            .map(|j| {
                let t = template.t(j);
                if x * x + t * t > l * l {
                    return 0.0;
                }
                let a = u.value(i, j).norm_sqr();
                a * a * a * wx * u.weight_t(j)
            })
            .collect();
        pairwise_sum(&terms)
    });
    let disk_sixth = pairwise_sum(&row_sums);

    // Analytic outside-the-disk envelope.
    let half = f.n() / 2;
    let terms: Vec<f64> = (0..f.n())
        .map(|k| {
            let a = f.samples()[k].norm_sqr();
            let b = f.samples()[(k + half) % f.n()].norm_sqr();
            (2.0 * a * a * a + 18.0 * a * a * b) * f.weight()
        })
        .collect();
    let tail_sixth = TWO_PI.powi(3) / l * pairwise_sum(&terms);

    Ok(LpEstimate {
        value: disk_sixth.powf(1.0 / 6.0),
        tail: tail_sixth.powf(1.0 / 6.0),
    })
}

/// Fitted decay exponent of `sup_x |u(x, t)|` against `t` over `t ∈ ts`, for
/// the circle extension of `f`. Stationary phase predicts `-1/2` for smooth
/// densities with non-degenerate tangencies.
pub fn sup_decay_slope(f: &CircleFunction, x_half: f64, nx: usize, ts: &[f64]) -> f64 {
    let sups: Vec<f64> = ts
        .iter()
        .map(|&t| {
            let points: Vec<(f64, f64)> = (0..nx)
                .map(|i| (-x_half + 2.0 * x_half * i as f64 / (nx - 1) as f64, t))
                .collect();
            extend_circle_at_points(f, &points)
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    loglog_slope(ts, &sups)
}
