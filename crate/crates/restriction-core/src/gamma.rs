//! The signed-permutation symmetry group on six slots, its orbit sums, and
//! the Γ functional with certified global maximization.
//!
//! Six angles `θ ∈ [0, π/2]⁶` encode a generic constrained 6-tuple through
//! `cos θᵢ` (the point) and `sin θᵢ` (its antipode). Group elements act by
//! permuting slots and flipping signs, which on the encoding swaps cos ↔ sin;
//! the orbit sum collapses, by the 72-element stabilizer, to a 20-term
//! trigonometric polynomial Γ whose global maximum 5/2 this module certifies
//! by a coarse grid plus multi-start ascent with Newton polish.

use rand::{Rng, SeedableRng};
use serde::Serialize;
use rand_chacha::ChaCha8Rng;

use crate::sum::tabulate;
use crate::tol;

/// Six angles, each in `[0, π/2]`.
pub type ThetaPoint = [f64; 6];

/// A permutation of six slots with a sign per slot: slot `j` of the image
/// receives `signs[j] · a[perm[j]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: [u8; 6],
    pub signs: [i8; 6],
}

impl SignedPermutation {
    pub const IDENTITY: Self = Self {
        perm: [0, 1, 2, 3, 4, 5],
        signs: [1; 6],
    };

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut perm = [0u8; 6];
        let mut signs = [1i8; 6];
        for j in 0..6 {
            perm[j] = other.perm[self.perm[j] as usize];
            signs[j] = self.signs[j] * other.signs[self.perm[j] as usize];
        }
        Self { perm, signs }
    }

    /// Action on a real 6-vector (or one coordinate of a vector tuple).
    pub fn apply(&self, a: &[f64; 6]) -> [f64; 6] {
        let mut out = [0.0; 6];
        for j in 0..6 {
            out[j] = self.signs[j] as f64 * a[self.perm[j] as usize];
        }
        out
    }

    /// The orbit term at `theta`: each slot contributes `cos` of the angle it
    /// received, except that a sign flip converts the factor to `sin`.
    pub fn orbit_factor(&self, cos_t: &[f64; 6], sin_t: &[f64; 6]) -> f64 {
        let mut prod = 1.0;
        for j in 0..6 {
            let k = self.perm[j] as usize;
            prod *= if self.signs[j] > 0 { cos_t[k] } else { sin_t[k] };
        }
        prod
    }

    /// Compact 24-bit key (3 bits per slot index + 6 sign bits) used for
    /// deterministic ordering.
    pub fn key(&self) -> u32 {
        let mut k = 0u32;
        for j in 0..6 {
            k |= (self.perm[j] as u32) << (3 * j);
        }
        for j in 0..6 {
            if self.signs[j] < 0 {
                k |= 1 << (18 + j);
            }
        }
        k
    }
}

/// The four generator families: half-swap, transposition and 3-cycle on the
/// first triple, and the two sign-transposition moves.
fn generators() -> Vec<SignedPermutation> {
    vec![
        SignedPermutation {
            perm: [3, 4, 5, 0, 1, 2],
            signs: [1; 6],
        },
        SignedPermutation {
            perm: [1, 0, 2, 3, 4, 5],
            signs: [1; 6],
        },
        SignedPermutation {
            perm: [1, 2, 0, 3, 4, 5],
            signs: [1; 6],
        },
        SignedPermutation {
            perm: [0, 1, 3, 2, 4, 5],
            signs: [1, 1, -1, -1, 1, 1],
        },
        SignedPermutation {
            perm: [0, 3, 4, 1, 2, 5],
            signs: [1, -1, -1, -1, -1, 1],
        },
    ]
}

/// Breadth-first closure of the generators; returned sorted by [`key`] so the
/// element order is reproducible.
///
/// [`key`]: SignedPermutation::key
pub fn enumerate_group() -> Vec<SignedPermutation> {
    let gens = generators();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let mut out = Vec::new();
    seen.insert(SignedPermutation::IDENTITY.key());
    queue.push_back(SignedPermutation::IDENTITY);
    while let Some(g) = queue.pop_front() {
        out.push(g);
        for gen in &gens {
            let next = gen.compose(&g);
            if seen.insert(next.key()) {
                queue.push_back(next);
            }
        }
    }
    out.sort_by_key(|g| g.key());
    out
}

/// All orbit products at `theta` (one per group element, in group order) and
/// the collapsed sum — the orbit total divided by the `2·3!·3!` stabilizer.
pub fn orbit_terms(theta: &ThetaPoint) -> (Vec<f64>, f64) {
    let group = enumerate_group();
    let mut cos_t = [0.0; 6];
    let mut sin_t = [0.0; 6];
    for j in 0..6 {
        cos_t[j] = theta[j].cos();
        sin_t[j] = theta[j].sin();
    }
    let terms: Vec<f64> = group
        .iter()
        .map(|g| g.orbit_factor(&cos_t, &sin_t))
        .collect();
    let total: f64 = crate::sum::pairwise_sum(&terms);
    (terms, total / 72.0)
}

/// The 20 sine-placement masks: bit `i` set means slot `i` carries `sin`;
/// each triple must carry the same number of sines.
const GAMMA_MASKS: [u8; 20] = {
    let mut out = [0u8; 20];
    let mut i = 0;
    let mut m = 0u8;
    while m < 64 {
        if (m & 7).count_ones() == (m >> 3).count_ones() {
            out[i] = m;
            i += 1;
        }
        m += 1;
    }
    out
};

/// The collapsed orbit sum as a closed 20-term formula:
/// all-cos, all-sin, the nine one-sine-per-triple products and the nine
/// two-sine-per-triple products.
pub fn gamma(theta: &ThetaPoint) -> f64 {
    let mut cos_t = [0.0; 6];
    let mut sin_t = [0.0; 6];
    for j in 0..6 {
        cos_t[j] = theta[j].cos();
        sin_t[j] = theta[j].sin();
    }
    let mut sum = 0.0;
    for &m in &GAMMA_MASKS {
        let mut prod = 1.0;
        for j in 0..6 {
            prod *= if m >> j & 1 == 1 { sin_t[j] } else { cos_t[j] };
        }
        sum += prod;
    }
    sum
}

/// Analytic gradient of [`gamma`].
pub fn gamma_grad(theta: &ThetaPoint) -> [f64; 6] {
    let mut cos_t = [0.0; 6];
    let mut sin_t = [0.0; 6];
    for j in 0..6 {
        cos_t[j] = theta[j].cos();
        sin_t[j] = theta[j].sin();
    }
    let mut grad = [0.0; 6];
    for &m in &GAMMA_MASKS {
        for (d, g) in grad.iter_mut().enumerate() {
            let mut prod = 1.0;
            for j in 0..6 {
                let s = m >> j & 1 == 1;
                prod *= if j == d {
                    // d/dθ sin = cos, d/dθ cos = -sin.
                    if s {
                        cos_t[j]
                    } else {
                        -sin_t[j]
                    }
                } else if s {
                    sin_t[j]
                } else {
                    cos_t[j]
                };
            }
            *g += prod;
        }
    }
    grad
}

/// Analytic Hessian of [`gamma`]. Each diagonal entry is `-Γ` (every factor
/// is its own negated second derivative); off-diagonal entries differentiate
/// two distinct factors.
pub fn gamma_hessian(theta: &ThetaPoint) -> [[f64; 6]; 6] {
    let mut cos_t = [0.0; 6];
    let mut sin_t = [0.0; 6];
    for j in 0..6 {
        cos_t[j] = theta[j].cos();
        sin_t[j] = theta[j].sin();
    }
    let g = gamma(theta);
    let mut h = [[0.0; 6]; 6];
    for (a, row) in h.iter_mut().enumerate() {
        row[a] = -g;
        for b in (a + 1)..6 {
            let mut sum = 0.0;
            for &m in &GAMMA_MASKS {
                let mut prod = 1.0;
                for j in 0..6 {
                    let s = m >> j & 1 == 1;
                    prod *= if j == a || j == b {
                        if s {
                            cos_t[j]
                        } else {
                            -sin_t[j]
                        }
                    } else if s {
                        sin_t[j]
                    } else {
                        cos_t[j]
                    };
                }
                sum += prod;
            }
            row[b] = sum;
        }
    }
    for a in 0..6 {
        for b in 0..a {
            h[a][b] = h[b][a];
        }
    }
    h
}

/// The three-piece split Γ = cosθ₅cosθ₆·A + sinθ₅sinθ₆·B + sin(θ₅+θ₆)·C.
///
/// `A` and `B` use their closed forms in `θ₁..θ₄`; `C` is recovered from Γ
/// when `sin(θ₅+θ₆)` is safely away from zero and otherwise collected
/// directly from its six terms.
pub fn gamma_abc(theta: &ThetaPoint) -> (f64, f64, f64) {
    let [t1, t2, t3, t4, t5, t6] = *theta;
    let a = t1.cos() * t2.cos() * (t3 - t4).cos() + (t1 + t2).sin() * t3.cos() * t4.sin();
    let b = t1.sin() * t2.sin() * (t3 - t4).cos() + (t1 + t2).sin() * t3.sin() * t4.cos();
    let denom = (t5 + t6).sin();
    let c = if denom.abs() > 1e-8 {
        (gamma(theta) - t5.cos() * t6.cos() * a - t5.sin() * t6.sin() * b) / denom
    } else {
        // One sine in the first triple with cos θ₄, or two sines with sin θ₄.
        let one = t1.cos() * t2.cos() * t3.sin()
            + t1.cos() * t2.sin() * t3.cos()
            + t1.sin() * t2.cos() * t3.cos();
        let two = t1.cos() * t2.sin() * t3.sin()
            + t1.sin() * t2.cos() * t3.sin()
            + t1.sin() * t2.sin() * t3.cos();
        one * t4.cos() + two * t4.sin()
    };
    (a, b, c)
}

/// Eigenvalues of a symmetric 6×6 matrix by cyclic Jacobi rotations,
/// ascending.
pub fn symmetric_eigenvalues(mat: &[[f64; 6]; 6]) -> [f64; 6] {
    let mut a = *mat;
    for _ in 0..64 {
        let mut off = 0.0;
        for p in 0..6 {
            for q in (p + 1)..6 {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-26 {
            break;
        }
        for p in 0..6 {
            for q in (p + 1)..6 {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..6 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..6 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs = [0.0; 6];
    for j in 0..6 {
        eigs[j] = a[j][j];
    }
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

fn solve6(mat: &[[f64; 6]; 6], rhs: &[f64; 6]) -> Option<[f64; 6]> {
    let mut a = *mat;
    let mut b = *rhs;
    for col in 0..6 {
        let mut piv = col;
        for r in (col + 1)..6 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..6 {
            let factor = a[r][col] / a[col][col];
            for k in col..6 {
                a[r][k] -= factor * a[col][k];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = [0.0; 6];
    for col in (0..6).rev() {
        let mut s = b[col];
        for k in (col + 1)..6 {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

fn clamp_box(theta: &mut ThetaPoint) {
    for t in theta.iter_mut() {
        *t = t.clamp(0.0, HALF_PI);
    }
}

/// KKT residual of the box-constrained maximization: gradient components are
/// zeroed where they push against an active bound.
fn projected_grad_norm(theta: &ThetaPoint, grad: &[f64; 6]) -> f64 {
    let mut sq = 0.0;
    for j in 0..6 {
        let mut g = grad[j];
        if theta[j] <= 0.0 {
            g = g.max(0.0);
        }
        if theta[j] >= HALF_PI {
            g = g.min(0.0);
        }
        sq += g * g;
    }
    sq.sqrt()
}

fn ascend(mut theta: ThetaPoint) -> (f64, ThetaPoint) {
    clamp_box(&mut theta);
    let mut value = gamma(&theta);
    let mut step = 0.1;
    for _ in 0..400 {
        let grad = gamma_grad(&theta);
        if projected_grad_norm(&theta, &grad) < 1e-12 {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = theta;
            for j in 0..6 {
                trial[j] += step * grad[j];
            }
            clamp_box(&mut trial);
            let tv = gamma(&trial);
            if tv > value {
                theta = trial;
                value = tv;
                step *= 1.3;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    // Newton polish when strictly interior: the Hessian at the maximum is
    // negative definite, so the pure Newton step contracts quadratically.
    if theta.iter().all(|&t| t > 1e-3 && t < HALF_PI - 1e-3) {
        for _ in 0..12 {
            let grad = gamma_grad(&theta);
            let hess = gamma_hessian(&theta);
            let Some(delta) = solve6(&hess, &grad) else {
                break;
            };
            let mut trial = theta;
            for j in 0..6 {
                trial[j] -= delta[j];
            }
            clamp_box(&mut trial);
            let tv = gamma(&trial);
            if !tv.is_finite() {
                break;
            }
            if (tv - value).abs() < 1e-16 {
                theta = trial;
                value = tv;
                break;
            }
            if tv >= value - 1e-13 {
                theta = trial;
                value = tv;
            } else {
                break;
            }
        }
    }
    (value, theta)
}

/// Outcome of the certified maximization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GammaMaximum {
    pub value: f64,
    pub argmax: ThetaPoint,
    /// Projected gradient norm at the argmax.
    pub gradient_norm: f64,
    /// Best value over the coarse 7⁶ scan alone.
    pub grid_value: f64,
    /// Hessian spectrum at the argmax, ascending.
    pub hessian_eigenvalues: [f64; 6],
}

/// Number of nodes per axis in the coarse global scan.
const GRID_NODES: usize = 7;

/// Best Γ value over the 7⁶ box grid.
pub fn grid_scan() -> (f64, ThetaPoint) {
    let total = GRID_NODES.pow(6);
    let decode = |flat: usize| -> ThetaPoint {
        let mut idx = flat;
        let mut theta = [0.0; 6];
        for t in theta.iter_mut() {
            *t = (idx % GRID_NODES) as f64 * HALF_PI / (GRID_NODES - 1) as f64;
            idx /= GRID_NODES;
        }
        theta
    };
    let values = tabulate(total, |flat| gamma(&decode(flat)));
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (flat, &v) in values.iter().enumerate() {
        if v > best.0 {
            best = (v, flat);
        }
    }
    (best.0, decode(best.1))
}

/// Global maximization of Γ over the box: a 7⁶ grid scan plus `starts`
/// random-start projected ascents (at least 64), each polished by Newton
/// steps. Panics if the winner's projected gradient norm is not below the
/// stationarity tolerance — a failed certificate, not a recoverable state.
pub fn maximize_gamma(starts: usize, seed: u64) -> GammaMaximum {
    let starts = starts.max(64);
    let (grid_value, grid_point) = grid_scan();

    let mut candidates = vec![ascend(grid_point)];
    let random: Vec<(f64, ThetaPoint)> = tabulate(starts, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
        let mut theta = [0.0; 6];
        for t in theta.iter_mut() {
            *t = rng.gen_range(0.0..HALF_PI);
        }
        ascend(theta)
    });
    candidates.extend(random);

    let mut best = candidates[0];
    for c in &candidates[1..] {
        if c.0 > best.0 {
            best = *c;
        }
    }
    let (value, argmax) = best;
    let gradient_norm = projected_grad_norm(&argmax, &gamma_grad(&argmax));
    assert!(
        gradient_norm < tol::GRADIENT_NORM,
        "maximizer failed stationarity: |grad| = {gradient_norm:.3e}"
    );
    GammaMaximum {
        value,
        argmax,
        gradient_norm,
        grid_value,
        hessian_eigenvalues: symmetric_eigenvalues(&gamma_hessian(&argmax)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_theta(rng: &mut ChaCha8Rng) -> ThetaPoint {
        let mut t = [0.0; 6];
        for x in t.iter_mut() {
            *x = rng.gen_range(0.0..HALF_PI);
        }
        t
    }

    #[test]
    fn group_has_order_1440() {
        let g = enumerate_group();
        assert_eq!(g.len(), 1440);
    }

    #[test]
    fn group_image_and_kernel() {
        let g = enumerate_group();
        let perms: std::collections::HashSet<[u8; 6]> = g.iter().map(|e| e.perm).collect();
        assert_eq!(perms.len(), 720);
        let kernel: Vec<_> = g.iter().filter(|e| e.perm == [0, 1, 2, 3, 4, 5]).collect();
        assert_eq!(kernel.len(), 2);
        assert!(kernel.iter().any(|e| e.signs == [1; 6]));
        assert!(kernel.iter().any(|e| e.signs == [-1; 6]));
    }

    #[test]
    fn group_preserves_triple_sum_constraint() {
        // Elements act on (ℝ²)⁶ coordinatewise; the defining constraint
        // a₁+a₂+a₃ = a₄+a₅+a₆ must be preserved by every element.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let group = enumerate_group();
        for _ in 0..5 {
            let mut coords = [[0.0f64; 6]; 2];
            for c in coords.iter_mut() {
                for j in 0..5 {
                    c[j] = rng.gen_range(-1.0..1.0);
                }
                // Solve the last slot so the constraint holds exactly.
                c[5] = c[0] + c[1] + c[2] - c[3] - c[4];
            }
            for g in &group {
                for c in &coords {
                    let im = g.apply(c);
                    let lhs = im[0] + im[1] + im[2];
                    let rhs = im[3] + im[4] + im[5];
                    assert!((lhs - rhs).abs() < 1e-12, "element {:?} breaks it", g);
                }
            }
        }
    }

    #[test]
    fn collapsed_orbit_sum_matches_gamma() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let theta = random_theta(&mut rng);
            let (terms, collapsed) = orbit_terms(&theta);
            assert_eq!(terms.len(), 1440);
            let g = gamma(&theta);
            assert!((collapsed - g).abs() < tol::ALGEBRAIC, "{collapsed} vs {g}");
        }
    }

    #[test]
    fn gamma_landmark_values() {
        assert!((gamma(&[std::f64::consts::FRAC_PI_4; 6]) - 2.5).abs() < 1e-14);
        assert!((gamma(&[0.0; 6]) - 1.0).abs() < 1e-15);
        // Degenerate face where Γ collapses to sin(θ₅+θ₆).
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t5 = rng.gen_range(0.0..HALF_PI);
            let t6 = rng.gen_range(0.0..HALF_PI);
            let g = gamma(&[HALF_PI, 0.0, 0.0, 0.0, t5, t6]);
            assert!((g - (t5 + t6).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn paired_diagonal_collapses_to_sine_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let alpha: f64 = rng.gen_range(0.0..HALF_PI);
            let beta = HALF_PI - alpha;
            let g = gamma(&[alpha, alpha, alpha, beta, beta, beta]);
            let expected = 2.5 * (2.0 * alpha).sin().powi(3);
            assert!((g - expected).abs() < 1e-13, "{g} vs {expected}");
        }
    }

    #[test]
    fn split_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let theta = random_theta(&mut rng);
            let [t1, t2, t3, t4, t5, t6] = theta;
            let (a, b, c) = gamma_abc(&theta);
            // A + B collapses to a two-factor expression.
            let ab = (t1 - t2).cos() * (t3 - t4).cos() + (t1 + t2).sin() * (t3 + t4).sin();
            assert!((a + b - ab).abs() < tol::ALGEBRAIC);
            // The three pieces reconstruct Γ.
            let rebuilt = t5.cos() * t6.cos() * a + t5.sin() * t6.sin() * b + (t5 + t6).sin() * c;
            assert!((rebuilt - gamma(&theta)).abs() < tol::ALGEBRAIC);
        }
    }

    #[test]
    fn c_direct_collection_matches_recovery() {
        // Force the fallback path by θ₅ = θ₆ = 0 and compare against the
        // recovered value at a nearby point where the denominator is healthy.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let mut theta = random_theta(&mut rng);
            theta[4] = 0.4;
            theta[5] = 0.3;
            let (_, _, c_recovered) = gamma_abc(&theta);
            theta[4] = 0.0;
            theta[5] = 0.0;
            let (_, _, c_direct) = gamma_abc(&theta);
            // C depends only on θ₁..θ₄, so the two must agree.
            assert!((c_recovered - c_direct).abs() < 1e-10);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let theta = random_theta(&mut rng);
            let grad = gamma_grad(&theta);
            for j in 0..6 {
                let h = 1e-5;
                let mut up = theta;
                up[j] += h;
                let mut dn = theta;
                dn[j] -= h;
                let fd = (gamma(&up) - gamma(&dn)) / (2.0 * h);
                assert!((grad[j] - fd).abs() < 1e-6, "slot {j}: {} vs {fd}", grad[j]);
            }
        }
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let theta = random_theta(&mut rng);
        let hess = gamma_hessian(&theta);
        let h = 1e-4;
        for a in 0..6 {
            for b in 0..6 {
                let mut pp = theta;
                pp[a] += h;
                pp[b] += h;
                let mut pm = theta;
                pm[a] += h;
                pm[b] -= h;
                let mut mp = theta;
                mp[a] -= h;
                mp[b] += h;
                let mut mm = theta;
                mm[a] -= h;
                mm[b] -= h;
                let fd = (gamma(&pp) - gamma(&pm) - gamma(&mp) + gamma(&mm)) / (4.0 * h * h);
                assert!((hess[a][b] - fd).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn symmetry_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let t = random_theta(&mut rng);
            let g = gamma(&t);
            // Triple swap.
            assert!((gamma(&[t[3], t[4], t[5], t[0], t[1], t[2]]) - g).abs() < tol::ALGEBRAIC);
            // Permutations within each triple.
            assert!((gamma(&[t[1], t[2], t[0], t[3], t[4], t[5]]) - g).abs() < tol::ALGEBRAIC);
            assert!((gamma(&[t[0], t[1], t[2], t[4], t[3], t[5]]) - g).abs() < tol::ALGEBRAIC);
            // The cos/sin exchange θ₃ ↦ π/2 − θ₄, θ₄ ↦ π/2 − θ₃.
            let swapped = [
                t[0],
                t[1],
                HALF_PI - t[3],
                HALF_PI - t[2],
                t[4],
                t[5],
            ];
            assert!((gamma(&swapped) - g).abs() < tol::ALGEBRAIC);
        }
    }

    #[test]
    fn grid_never_exceeds_the_claimed_max() {
        let (best, _) = grid_scan();
        assert!(best <= 2.5 + 1e-12, "grid found {best}");
    }

    #[test]
    fn maximizer_certifies_five_halves() {
        let result = maximize_gamma(64, 424242);
        assert!(
            (result.value - 2.5).abs() < tol::GAMMA_MAX,
            "max = {:.12}",
            result.value
        );
        for (j, &t) in result.argmax.iter().enumerate() {
            assert!(
                (t - std::f64::consts::FRAC_PI_4).abs() < tol::GAMMA_ARGMAX,
                "slot {j}: {t}"
            );
        }
        assert!(result.gradient_norm < tol::GRADIENT_NORM);
        // Strict local maximum: the whole spectrum is negative.
        assert!(result.hessian_eigenvalues[5] < -1e-6);
    }

    #[test]
    fn face_restriction_maximum_is_one() {
        // On the face θ₁ = π/2, θ₂ = θ₃ = θ₄ = 0 we have Γ = sin(θ₅+θ₆) ≤ 1.
        let mut best = f64::NEG_INFINITY;
        for i in 0..=40 {
            for j in 0..=40 {
                let t5 = i as f64 * HALF_PI / 40.0;
                let t6 = j as f64 * HALF_PI / 40.0;
                best = best.max(gamma(&[HALF_PI, 0.0, 0.0, 0.0, t5, t6]));
            }
        }
        assert!((best - 1.0).abs() < 1e-12);
    }
}
