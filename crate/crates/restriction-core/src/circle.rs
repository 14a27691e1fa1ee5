//! Functions on the unit circle, caps, and the antipodal symmetrization.
//!
//! A [`CircleFunction`] is a complex field sampled on the uniform angular grid
//! `θ_i = 2πi/N` with `N` even, so that the antipodal map `θ ↦ θ + π` and the
//! reflection `θ ↦ -θ` permute grid points exactly. Quadrature against the
//! arclength measure `dσ` is the uniform-weight sum `Σ (2π/N)·…`, which is the
//! trapezoidal rule on a closed curve and therefore spectrally accurate for
//! smooth integrands.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::{sum, TWO_PI};

/// Relative L² mass allowed outside a support precondition before the
/// operation refuses to proceed.
const SUPPORT_LEAK_TOL: f64 = 1e-10;

/// Complex samples on the uniform angular grid of S¹.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunction {
    samples: Vec<Complex64>,
}

impl CircleFunction {
    /// Wraps raw samples. The grid size must be even (antipodal exactness)
    /// and at least 8.
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        let n = samples.len();
        if n < 8 || n % 2 != 0 {
            return Err(CoreError::BadCircleSize(n));
        }
        Ok(Self { samples })
    }

    pub fn from_real(values: Vec<f64>) -> Result<Self> {
        Self::new(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples `f(θ_i)` for `θ_i = 2πi/n`.
    pub fn from_fn<F: Fn(f64) -> Complex64>(n: usize, f: F) -> Result<Self> {
        Self::new((0..n).map(|i| f(TWO_PI * i as f64 / n as f64)).collect())
    }

    pub fn from_real_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> Result<Self> {
        Self::from_fn(n, |t| Complex64::new(f(t), 0.0))
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::from_real(vec![value; n])
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn theta(&self, i: usize) -> f64 {
        TWO_PI * i as f64 / self.n() as f64
    }

    /// Quadrature weight of one grid point against `dσ`.
    pub fn weight(&self) -> f64 {
        TWO_PI / self.n() as f64
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn l2_norm_sq(&self) -> f64 {
        let w = self.weight();
        sum::sum_indexed(self.n(), |i| self.samples[i].norm_sqr() * w)
    }

    /// `(∫ |f|² dσ)^{1/2}` by the closed-curve trapezoidal rule.
    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Multiplies every sample by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|z| z * c).collect(),
        }
    }

    /// `f(θ + π)`: the antipodal translate (exact index roll).
    pub fn translate_pi(&self) -> Self {
        let n = self.n();
        Self {
            samples: (0..n).map(|i| self.samples[(i + n / 2) % n]).collect(),
        }
    }

    /// `f(-θ)`: reflection through the horizontal axis (exact index map).
    pub fn reflect(&self) -> Self {
        let n = self.n();
        Self {
            samples: (0..n).map(|i| self.samples[(n - i) % n]).collect(),
        }
    }

    /// `f(θ - 2πk/N)`: rotation by a whole number of grid steps.
    pub fn rotate_grid(&self, k: isize) -> Self {
        let n = self.n() as isize;
        Self {
            samples: (0..n)
                .map(|i| self.samples[(i - k).rem_euclid(n) as usize])
                .collect(),
        }
    }

    /// Interprets the samples as nonnegative reals for the symmetrization:
    /// genuinely complex samples are replaced by their modulus (extremality is
    /// preserved under `f ↦ |f|`), but negative real samples are rejected.
    fn symmetrization_input(&self) -> Result<Vec<f64>> {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if z.im != 0.0 {
                    Ok(z.norm())
                } else if z.re < 0.0 {
                    Err(CoreError::NegativeSample { index: i, value: z.re })
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    }

    /// Strictly nonnegative real samples, rejecting any imaginary part.
    pub fn nonneg_real_samples(&self) -> Result<Vec<f64>> {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if z.im != 0.0 {
                    Err(CoreError::NegativeSample { index: i, value: z.im })
                } else if z.re < 0.0 {
                    Err(CoreError::NegativeSample { index: i, value: z.re })
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    }

    /// Antipodal symmetrization `f⋆(θ) = sqrt((f(θ)² + f(θ+π)²)/2)`.
    ///
    /// The output is exactly even under `θ ↦ θ+π` on the grid and preserves
    /// the L² norm.
    pub fn symmetrize(&self) -> Result<Self> {
        let v = self.symmetrization_input()?;
        let n = v.len();
        let star: Vec<f64> = (0..n)
            .map(|i| {
                let a = v[i];
                let b = v[(i + n / 2) % n];
                ((a * a + b * b) / 2.0).sqrt()
            })
            .collect();
        Self::from_real(star)
    }

    /// `max_i | |f(θ_i)| - |f(θ_i+π)| |`: how far the function is from
    /// antipodal symmetry in modulus.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| (self.samples[i].norm() - self.samples[(i + n / 2) % n].norm()).abs())
            .fold(0.0, f64::max)
    }

    /// Writes `theta,re,im` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "theta,re,im")?;
        for (i, z) in self.samples.iter().enumerate() {
            writeln!(out, "{:.17e},{:.17e},{:.17e}", self.theta(i), z.re, z.im)?;
        }
        Ok(())
    }

    pub fn save_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        self.write_csv(BufWriter::new(File::create(path)?))
    }

    /// Reads the CSV layout produced by [`Self::write_csv`]. The `theta`
    /// column is present for plotting; samples are taken in row order.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut samples = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || (lineno == 0 && t.starts_with("theta")) {
                continue;
            }
            let cols: Vec<&str> = t.split(',').collect();
            if cols.len() != 3 {
                return Err(CoreError::Parse {
                    what: "circle csv",
                    detail: format!("line {}: expected 3 columns, got {}", lineno + 1, cols.len()),
                });
            }
            let re: f64 = cols[1].trim().parse().map_err(|e| CoreError::Parse {
                what: "circle csv",
                detail: format!("line {}: {e}", lineno + 1),
            })?;
            let im: f64 = cols[2].trim().parse().map_err(|e| CoreError::Parse {
                what: "circle csv",
                detail: format!("line {}: {e}", lineno + 1),
            })?;
            samples.push(Complex64::new(re, im));
        }
        Self::new(samples)
    }

    pub fn load_csv<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::read_csv(BufReader::new(File::open(path)?))
    }
}

/// A cap (arc) on S¹: the set of points `y` with `y·z > 0` whose projection
/// onto the line orthogonal to the center direction `z` is shorter than `r`.
/// Equivalently `cos(θ-c) > 0` and `|sin(θ-c)| < r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    center: f64,
    radius: f64,
}

impl Cap {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(CoreError::BadCapRadius(radius));
        }
        Ok(Self {
            center: center.rem_euclid(TWO_PI),
            radius,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The center as a point of S¹ ⊂ ℝ².
    pub fn center_point(&self) -> [f64; 2] {
        [self.center.cos(), self.center.sin()]
    }

    /// Arclength `|𝒞| = 2 arcsin(r)`.
    pub fn measure(&self) -> f64 {
        2.0 * self.radius.asin()
    }

    /// Exact membership test from the projection condition.
    pub fn contains(&self, theta: f64) -> bool {
        let rel = theta - self.center;
        rel.cos() > 0.0 && rel.sin().abs() < self.radius
    }

    /// The antipodal cap `-𝒞`.
    pub fn antipode(&self) -> Self {
        Self {
            center: (self.center + std::f64::consts::PI).rem_euclid(TWO_PI),
            radius: self.radius,
        }
    }

    /// Indices of the grid points of an `n`-point circle inside the cap.
    pub fn member_indices(&self, n: usize) -> Vec<usize> {
        (0..n)
            .filter(|&i| self.contains(TWO_PI * i as f64 / n as f64))
            .collect()
    }

    /// The indicator function of the cap on an `n`-point grid.
    pub fn indicator(&self, n: usize) -> Result<CircleFunction> {
        CircleFunction::from_real_fn(n, |t| if self.contains(t) { 1.0 } else { 0.0 })
    }
}

/// The cap distance `ρ(𝒞,𝒞') = r/r' + r'/r + |z-z'|/r`.
///
/// The formula is asymmetric — the center gap is measured against the first
/// cap's radius — and is implemented verbatim; the symmetric quantity used in
/// practice is [`cap_class_distance`].
pub fn cap_distance(a: &Cap, b: &Cap) -> f64 {
    let [ax, ay] = a.center_point();
    let [bx, by] = b.center_point();
    let center_gap = ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
    a.radius / b.radius + b.radius / a.radius + center_gap / a.radius
}

/// The unordered pair `{𝒞, -𝒞}`: caps are identified with their antipodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapClass {
    representative: Cap,
}

impl CapClass {
    pub fn new(representative: Cap) -> Self {
        Self { representative }
    }

    pub fn representative(&self) -> &Cap {
        &self.representative
    }
}

/// Distance between antipodal classes: `min(ρ(𝒞,𝒞'), ρ(-𝒞,𝒞'))`.
///
/// Because `ρ` only sees radii and the Euclidean center gap, and the gap is
/// invariant under negating both centers, this minimum does not depend on
/// which representative either class supplies.
pub fn cap_class_distance(a: &CapClass, b: &CapClass) -> f64 {
    let direct = cap_distance(&a.representative, &b.representative);
    let flipped = cap_distance(&a.representative.antipode(), &b.representative);
    direct.min(flipped)
}

/// Periodic linear interpolation of the samples at an arbitrary angle.
pub fn interp_linear(f: &CircleFunction, theta: f64) -> Complex64 {
    let n = f.n();
    let u = theta.rem_euclid(TWO_PI) / TWO_PI * n as f64;
    let i0 = u.floor() as usize % n;
    let frac = u - u.floor();
    f.samples()[i0] * (1.0 - frac) + f.samples()[(i0 + 1) % n] * frac
}

/// Pulls `f` back through the cap's rescaling map: `M` uniform samples of
/// `y ↦ r^{1/2} f(φ_𝒞(y))` on `[-1,1]`, where `φ_𝒞(y)` is the rotation
/// taking the north pole to the cap center applied to `(ry, sqrt(1-r²y²))`,
/// i.e. the point at angle `c - arcsin(ry)`.
///
/// Refuses inputs whose L² mass is not numerically confined to the radius-1
/// cap concentric with `c` (relative leak above `1e-10`).
pub fn pullback(f: &CircleFunction, c: &Cap, m: usize) -> Result<Vec<Complex64>> {
    let unit = Cap::new(c.center(), 1.0)?;
    let w = f.weight();
    let total = f.l2_norm_sq();
    if total > 0.0 {
        let outside = sum::sum_indexed(f.n(), |i| {
            if unit.contains(f.theta(i)) {
                0.0
            } else {
                f.samples()[i].norm_sqr() * w
            }
        });
        let leak = outside / total;
        if leak > SUPPORT_LEAK_TOL {
            return Err(CoreError::SupportViolation { leak });
        }
    }
    let r = c.radius();
    let scale = r.sqrt();
    Ok((0..m)
        .map(|j| {
            let y = -1.0 + 2.0 * j as f64 / (m - 1) as f64;
            let theta = c.center() - (r * y).asin();
            interp_linear(f, theta) * scale
        })
        .collect())
}

/// Trapezoidal L² norm of samples on a uniform grid over `[lo, hi]`.
pub fn interval_l2_norm(values: &[Complex64], lo: f64, hi: f64) -> f64 {
    let n = values.len();
    let h = (hi - lo) / (n - 1) as f64;
    sum::sum_indexed(n, |i| {
        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        values[i].norm_sqr() * w
    })
    .sqrt()
}
