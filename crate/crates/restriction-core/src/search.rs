//! Extremizer search and the circle-versus-parabola comparison.
//!
//! The functional under study is `Q(f) = ‖Ef‖₆ / ‖f‖₂` over densities on
//! the circle.  A power-type fixed-point iteration on the Euler–Lagrange
//! map ascends `Q` empirically: at a critical point `f` is proportional to
//! the adjoint image of `|Ef|⁴ Ef`, so the iteration replaces `f` by the
//! modulus of that image, renormalised.  Multi-start runs give a numerical
//! estimate of the sharp constant `ℛ = sup Q`, which is then compared with
//! the parabola constant `ℛ_P` (evaluated at the Gaussian, the known
//! extremizer there): the measured gap `ℛ > (5/2)^{1/6} ℛ_P` is the strict
//! inequality that prevents extremizing sequences from concentrating.
//!
//! Nothing here claims certified global optimality; the searches report the
//! best value found together with truncation-error bars, and every run is
//! deterministic given its seed and configuration.

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{Cap, CircleFunction};
use crate::error::{CoreError, Result};
use crate::extension::{circle_l6_certified, extend_circle, extend_parabola, LineProfile};
use crate::grid::PlaneGrid;
use crate::sum::tabulate;
use crate::TWO_PI;

/// `(5/2)^{1/6}`, the lift factor in the strict comparison.
pub fn antipodal_lift_factor() -> f64 {
    2.5f64.powf(1.0 / 6.0)
}

/// Window and profile resolution for the parabola-side estimate.  The
/// windows are fixed (they are set by the Gaussian's decay, not by the
/// circle grid); only node counts respond to `grid_scale`.
const RP_X_HALF: f64 = 40.0;
const RP_T_HALF: f64 = 60.0;
const RP_NX: usize = 801;
const RP_NT: usize = 801;
const RP_PROFILE_SAMPLES: usize = 1025;
const RP_PROFILE_HALF: f64 = 6.0;

/// Everything one search or comparison run needs to know.  Defaults are the
/// documented production values; tests shrink them.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Circle sample count for iterates.
    pub circle_n: usize,
    /// Adjoint-quadrature grid: nodes per axis.
    pub nx: usize,
    pub nt: usize,
    /// Adjoint-quadrature window `[-X, X] × [-T, T]`.
    pub x_half: f64,
    pub t_half: f64,
    /// Axis nodes for the certified `L⁶` evaluation (disk radius `x_half`).
    pub l6_axis: usize,
    /// Hard cap on iteration steps per start.
    pub max_iter: usize,
    /// Plateau threshold: the run settles once consecutive functional
    /// values move less than this for five steps.
    pub tolerance: f64,
    /// Seed for the random starts.
    pub seed: u64,
    /// Antipodal symmetrization is applied every this many steps...
    pub symmetrize_every: usize,
    /// ...but never during the final stretch, so the measured symmetry is
    /// self-sustaining rather than imposed.
    pub free_tail_steps: usize,
    /// How many random starts to include beside the deterministic ones.
    pub random_starts: usize,
    /// Multiplies every node count (not the windows); used for stability
    /// studies.
    pub grid_scale: f64,
    /// Experiment label echoed into reports.
    pub name: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            circle_n: 256,
            nx: 161,
            nt: 161,
            x_half: 40.0,
            t_half: 40.0,
            l6_axis: 321,
            max_iter: 500,
            tolerance: 1e-9,
            seed: 7,
            symmetrize_every: 5,
            free_tail_steps: 10,
            random_starts: 2,
            grid_scale: 1.0,
            name: "search".into(),
        }
    }
}

/// Scales an odd axis count, keeping it odd so grid centres stay on a node.
fn scaled_odd(base: usize, scale: f64) -> usize {
    let n = (base as f64 * scale).round() as usize;
    if n % 2 == 0 {
        n + 1
    } else {
        n
    }
}

fn scaled_even(base: usize, scale: f64) -> usize {
    let n = (base as f64 * scale).round() as usize;
    n + n % 2
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.circle_n < 8 || self.circle_n % 2 != 0 {
            return Err(CoreError::BadCircleSize(self.circle_n));
        }
        if self.nx < 16 || self.nt < 16 || self.l6_axis < 16 {
            return Err(CoreError::GridTooSmall {
                nx: self.nx.min(self.l6_axis),
                nt: self.nt,
            });
        }
        if !(self.x_half > 0.0 && self.t_half > 0.0) || !(self.tolerance > 0.0) {
            return Err(CoreError::Parse {
                what: "run config",
                detail: "window sizes and tolerance must be positive".into(),
            });
        }
        if self.max_iter == 0 || self.symmetrize_every == 0 {
            return Err(CoreError::Parse {
                what: "run config",
                detail: "iteration counts must be positive".into(),
            });
        }
        if !(0.25..=4.0).contains(&self.grid_scale) {
            return Err(CoreError::Parse {
                what: "run config",
                detail: format!("grid scale must lie in [0.25, 4], got {}", self.grid_scale),
            });
        }
        Ok(())
    }

    fn scaled_circle_n(&self) -> usize {
        scaled_even(self.circle_n, self.grid_scale)
    }

    fn adjoint_template(&self) -> Result<PlaneGrid> {
        PlaneGrid::zeros(
            self.x_half,
            self.t_half,
            scaled_odd(self.nx, self.grid_scale),
            scaled_odd(self.nt, self.grid_scale),
        )
    }

    fn l6_nodes(&self) -> usize {
        scaled_odd(self.l6_axis, self.grid_scale)
    }
}

/// One trajectory of the fixed-point iteration.
#[derive(Debug, Clone)]
pub struct SearchState {
    /// Current candidate, kept at `‖f‖₂ = 1`.
    pub iterate: CircleFunction,
    /// Certified functional values `Q = ‖Ef‖₆ / ‖f‖₂`, one per step
    /// (including the start).
    pub q_history: Vec<f64>,
    /// Certified error bars paired with `q_history`.
    pub q_bars: Vec<f64>,
    /// `max_θ | |f(θ)| − |f(θ+π)| |` of the current iterate.
    pub symmetry_residual: f64,
    /// Steps taken so far.
    pub step: usize,
    /// When set, the symmetrization schedule is suspended (the final
    /// stretch of every run, so symmetry must sustain itself).
    pub free_phase: bool,
}

/// Certified functional value: the disk-masked grid norm plus the analytic
/// outside-the-disk envelope, with the envelope share reported as the bar.
fn certified_q(f: &CircleFunction, config: &RunConfig) -> Result<(f64, f64)> {
    let est = circle_l6_certified(f, config.x_half, config.l6_nodes())?;
    let total = est.total();
    Ok((total, total - est.value))
}

impl SearchState {
    /// Normalises the start, measures its functional value, and opens the
    /// trajectory.
    pub fn new(start: &CircleFunction, config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let norm = start.l2_norm();
        if norm == 0.0 {
            return Err(CoreError::ZeroInput);
        }
        let iterate = start.scaled(1.0 / norm);
        let (q, bar) = certified_q(&iterate, config)?;
        let symmetry_residual = iterate.symmetry_residual();
        Ok(Self {
            iterate,
            q_history: vec![q],
            q_bars: vec![bar],
            symmetry_residual,
            step: 0,
            free_phase: false,
        })
    }

    /// Latest functional value.
    pub fn q(&self) -> f64 {
        *self
            .q_history
            .last()
            .expect("q_history is non-empty by construction")
    }

    /// Latest certified bar.
    pub fn q_bar(&self) -> f64 {
        *self
            .q_bars
            .last()
            .expect("q_bars is non-empty by construction")
    }
}

/// The adjoint image `(E*g)(θ) = ∫∫ g(x,t) e^{+i(x cos θ + t sin θ)} dx dt`
/// of `g = |u|⁴ u` over the truncated grid, evaluated at every circle node.
fn adjoint_quintic(u: &PlaneGrid, n: usize) -> Vec<Complex64> {
    let nx = u.nx();
    let nt = u.nt();
    // Fold the quadrature weights into |u|⁴u once.
    let weighted: Vec<Complex64> = (0..nx)
        .flat_map(|i| {
            let wx = u.weight_x(i);
            (0..nt).map(move |j| {
                let v = u.value(i, j);
                let m = v.norm_sqr();
                v * (m * m * wx * u.weight_t(j))
            })
        })
        .collect();
    let t0 = u.t(0);
    let ht = u.t(1) - t0;
    tabulate(n, |k| {
        let theta = TWO_PI * k as f64 / n as f64;
        let (s, c) = theta.sin_cos();
        // Unit phases along the t-axis, by rotation recurrence.
        let rot = Complex64::from_polar(1.0, ht * s);
        let mut tp = Vec::with_capacity(nt);
        let mut cur = Complex64::from_polar(1.0, t0 * s);
        for _ in 0..nt {
            tp.push(cur);
            cur *= rot;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..nx {
            let row = &weighted[i * nt..(i + 1) * nt];
            let mut inner = Complex64::new(0.0, 0.0);
            for (m, p) in row.iter().zip(&tp) {
                inner += m * p;
            }
            acc += inner * Complex64::from_polar(1.0, u.x(i) * c);
        }
        acc
    })
}

/// One step of the Euler–Lagrange fixed-point iteration.
///
/// Extends the iterate, pulls `|u|⁴u` back to the circle through the
/// adjoint quadrature, takes the modulus, renormalises, applies the
/// symmetrization schedule, and appends the certified functional value.
/// Fails with [`CoreError::Divergence`] if the functional drops by more
/// than the certified quadrature error — the iteration's empirical
/// monotonicity is a contract, not a hope.
pub fn el_iterate(state: &SearchState, config: &RunConfig) -> Result<SearchState> {
    if state.iterate.max_abs() == 0.0 {
        return Err(CoreError::ZeroInput);
    }
    let template = config.adjoint_template()?;
    let u = extend_circle(&state.iterate, &template);
    let image = adjoint_quintic(&u, state.iterate.n());

    let moduli: Vec<f64> = image.iter().map(|z| z.norm()).collect();
    let mut f_new = CircleFunction::from_real(moduli)?;
    let norm = f_new.l2_norm();
    if norm == 0.0 {
        return Err(CoreError::ZeroInput);
    }
    f_new = f_new.scaled(1.0 / norm);

    let symmetrize_now = !state.free_phase
        && config.symmetrize_every > 0
        && (state.step + 1) % config.symmetrize_every == 0;
    if symmetrize_now {
        f_new = f_new.symmetrize()?;
        let n2 = f_new.l2_norm();
        f_new = f_new.scaled(1.0 / n2);
    }

    let (q, bar) = certified_q(&f_new, config)?;
    let prev_q = state.q();
    let allowed = bar + state.q_bar() + 1e-12;
    if q < prev_q - allowed {
        return Err(CoreError::Divergence {
            drop: prev_q - q,
            allowed,
        });
    }

    let mut q_history = state.q_history.clone();
    let mut q_bars = state.q_bars.clone();
    q_history.push(q);
    q_bars.push(bar);
    Ok(SearchState {
        symmetry_residual: f_new.symmetry_residual(),
        iterate: f_new,
        q_history,
        q_bars,
        step: state.step + 1,
        free_phase: state.free_phase,
    })
}

/// Runs the iteration from one start to its plateau: a symmetrized phase
/// until the functional settles (or the budget minus the free tail runs
/// out), then `free_tail_steps` with symmetrization off.
pub fn run_search(start: &CircleFunction, config: &RunConfig) -> Result<SearchState> {
    let mut state = SearchState::new(start, config)?;
    let budget = config
        .max_iter
        .saturating_sub(config.free_tail_steps)
        .max(1);
    let mut plateau = 0usize;
    while state.step < budget {
        state = el_iterate(&state, config)?;
        let h = &state.q_history;
        if (h[h.len() - 1] - h[h.len() - 2]).abs() < config.tolerance {
            plateau += 1;
            if plateau >= 5 {
                break;
            }
        } else {
            plateau = 0;
        }
    }
    state.free_phase = true;
    for _ in 0..config.free_tail_steps {
        state = el_iterate(&state, config)?;
    }
    Ok(state)
}

/// The constant density with `‖f‖₂ = 1`.
pub fn constant_start(n: usize) -> Result<CircleFunction> {
    CircleFunction::constant(n, 1.0 / TWO_PI.sqrt())
}

/// Indicator bump of the given cap radius, centred at `θ = 0` (the search
/// normalises it).
pub fn cap_start(n: usize, radius: f64) -> Result<CircleFunction> {
    Cap::new(0.0, radius)?.indicator(n)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Nonnegative random density, uniform i.i.d. samples in `[0, 1)`,
/// reproducible from the seed alone.
pub fn random_start(n: usize, seed: u64) -> Result<CircleFunction> {
    let mut s = seed;
    let values: Vec<f64> = (0..n)
        .map(|_| (splitmix64(&mut s) >> 11) as f64 / (1u64 << 53) as f64)
        .collect();
    CircleFunction::from_real(values)
}

/// Outcome of one start in a multi-start search.
#[derive(Debug, Clone, Serialize)]
pub struct StartOutcome {
    pub name: String,
    pub q: f64,
    pub bar: f64,
    pub steps: usize,
    pub symmetry_residual: f64,
    /// Functional trajectory, one entry per step including the start.
    pub q_history: Vec<f64>,
    pub q_bars: Vec<f64>,
}

/// A value with a certified (truncation) error bar.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionalEstimate {
    pub value: f64,
    pub bar: f64,
}

/// Multi-start estimate of the circle constant `ℛ`.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub estimate: FunctionalEstimate,
    pub best_start: String,
    pub outcomes: Vec<StartOutcome>,
}

/// Best functional value over the standard battery of starts: the constant,
/// two cap bumps, and `random_starts` seeded random densities.  Starts run
/// concurrently, each trajectory confined to one task; the best-of merge is
/// sequential in start order, so the report is deterministic given
/// `(seed, config)`.
pub fn estimate_r(config: &RunConfig) -> Result<SearchReport> {
    config.validate()?;
    let n = config.scaled_circle_n();
    let mut starts: Vec<(String, CircleFunction)> = vec![
        ("constant".into(), constant_start(n)?),
        ("cap-half".into(), cap_start(n, 0.5)?),
        ("cap-eighth".into(), cap_start(n, 0.125)?),
    ];
    for k in 0..config.random_starts {
        let seed = config
            .seed
            .wrapping_add((k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        starts.push((format!("random-{k}"), random_start(n, seed)?));
    }

    let results: Vec<Result<SearchState>> =
        tabulate(starts.len(), |s| run_search(&starts[s].1, config));

    let mut outcomes: Vec<StartOutcome> = Vec::with_capacity(starts.len());
    let mut best: Option<usize> = None;
    for (idx, result) in results.into_iter().enumerate() {
        let state = result?;
        let outcome = StartOutcome {
            name: starts[idx].0.clone(),
            q: state.q(),
            bar: state.q_bar(),
            steps: state.step,
            symmetry_residual: state.symmetry_residual,
            q_history: state.q_history,
            q_bars: state.q_bars,
        };
        let better = match best {
            None => true,
            Some(b) => outcome.q > outcomes[b].q,
        };
        if better {
            best = Some(idx);
        }
        outcomes.push(outcome);
    }
    let best = best.expect("at least the constant start ran");
    Ok(SearchReport {
        estimate: FunctionalEstimate {
            value: outcomes[best].q,
            bar: outcomes[best].bar,
        },
        best_start: outcomes[best].name.clone(),
        outcomes,
    })
}

/// `‖extend_parabola(profile)‖₆ / ‖profile‖₂` on the standard window at the
/// given scale, using the envelope-extrapolated tail for the norm.  Returns
/// the ratio together with the envelope's own share of it (in ratio units),
/// which measures how much of the answer rests on extrapolation rather
/// than on quadrature.
fn parabola_ratio_at(profile: &LineProfile, node_scale: f64) -> Result<(f64, f64)> {
    let template = PlaneGrid::zeros(
        RP_X_HALF,
        RP_T_HALF,
        scaled_odd(RP_NX, node_scale),
        scaled_odd(RP_NT, node_scale),
    )?;
    let field = extend_parabola(profile, &template)?;
    let l2 = profile_l2(profile);
    let est = field.lp_norm_with_tail(6.0);
    Ok((est.total() / l2, (est.total() - est.value) / l2))
}

/// `(∫ |profile(y)|² dy)^{1/2}` by trapezoid over the profile's own nodes.
fn profile_l2(profile: &LineProfile) -> f64 {
    let m = profile.len();
    let h = 2.0 * profile.y_half() / (m - 1) as f64;
    let vals: Vec<f64> = profile
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let w = if k == 0 || k == m - 1 { 0.5 * h } else { h };
            w * v.norm_sqr()
        })
        .collect();
    crate::sum::pairwise_sum(&vals).sqrt()
}

/// Parabola-side functional ratio for an arbitrary profile.
///
/// The bar combines node refinement with the extrapolated-envelope share of
/// the norm: refinement alone would miss window truncation (the window is
/// the same at both node counts), and the envelope share is the honest
/// measure of how much mass lives outside the window.
pub fn parabola_ratio(profile: &LineProfile, config: &RunConfig) -> Result<FunctionalEstimate> {
    config.validate()?;
    let (coarse, _) = parabola_ratio_at(profile, config.grid_scale)?;
    let (fine, envelope) = parabola_ratio_at(profile, config.grid_scale * 1.5)?;
    // The envelope restores roughly half the true outside-window mass in
    // practice, so it is charged at a multiple: the bar has to dominate the
    // real error, not merely gesture at it.
    let bar = (fine - coarse).abs() * 2.0 + 2.5 * envelope + 1e-6 * fine.abs();
    Ok(FunctionalEstimate { value: fine, bar })
}

/// Estimate of the parabola constant `ℛ_P`, evaluated at the Gaussian — the
/// known extremizer for the parabola problem — rather than searched for, so
/// the comparison gap carries only one optimisation error.
pub fn estimate_rp(config: &RunConfig) -> Result<FunctionalEstimate> {
    let profile = LineProfile::gaussian(
        scaled_odd(RP_PROFILE_SAMPLES, config.grid_scale),
        RP_PROFILE_HALF,
    );
    parabola_ratio(&profile, config)
}

/// The strict-comparison verdict: `ℛ` versus `(5/2)^{1/6} ℛ_P`.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub r: FunctionalEstimate,
    pub rp: FunctionalEstimate,
    /// `(5/2)^{1/6}`.
    pub lift_factor: f64,
    /// `lift_factor · rp.value`.
    pub threshold: f64,
    /// `r.value − threshold`.
    pub gap: f64,
    /// `r.bar + lift_factor · rp.bar`.
    pub combined_bar: f64,
    /// True when the gap clears the combined bars.
    pub passes: bool,
    pub best_start: String,
    pub symmetry_residual: f64,
}

/// Runs both estimates and reports whether the measured gap
/// `ℛ − (5/2)^{1/6} ℛ_P` clears the combined error bars.
pub fn strict_comparison(config: &RunConfig) -> Result<ComparisonReport> {
    let search = estimate_r(config)?;
    let rp = estimate_rp(config)?;
    let lift = antipodal_lift_factor();
    let threshold = lift * rp.value;
    let gap = search.estimate.value - threshold;
    let combined_bar = search.estimate.bar + lift * rp.bar;
    let best = search
        .outcomes
        .iter()
        .find(|o| o.name == search.best_start)
        .expect("best start is one of the outcomes");
    Ok(ComparisonReport {
        r: search.estimate,
        rp,
        lift_factor: lift,
        threshold,
        gap,
        combined_bar,
        passes: gap > combined_bar,
        best_start: search.best_start.clone(),
        symmetry_residual: best.symmetry_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> RunConfig {
        RunConfig {
            circle_n: 64,
            nx: 65,
            nt: 65,
            x_half: 16.0,
            t_half: 16.0,
            l6_axis: 129,
            max_iter: 30,
            tolerance: 1e-7,
            random_starts: 1,
            name: "test".into(),
            ..RunConfig::default()
        }
    }

    fn assert_monotone_within_bars(state: &SearchState) {
        for w in 0..state.q_history.len() - 1 {
            let allowed = state.q_bars[w] + state.q_bars[w + 1] + 1e-12;
            assert!(
                state.q_history[w + 1] >= state.q_history[w] - allowed,
                "functional dropped at step {w}: {} -> {} (allowed {allowed:.3e})",
                state.q_history[w],
                state.q_history[w + 1]
            );
        }
    }

    #[test]
    fn constant_start_is_a_fixed_point() {
        let config = small_config();
        let state = run_search(&constant_start(64).unwrap(), &config).unwrap();
        assert_monotone_within_bars(&state);
        // The square window's corners break exact rotation invariance, so
        // the constant survives only up to a small angular ripple.
        let level = 1.0 / TWO_PI.sqrt();
        for v in state.iterate.samples() {
            assert!(
                (v.re - level).abs() < 5e-3 * level && v.im == 0.0,
                "iterate drifted from the constant: {v}"
            );
        }
        // The functional at the constant is the benchmark value ≈ 2.8402.
        assert!((state.q() - 2.8402).abs() < 0.02, "Q = {}", state.q());
    }

    #[test]
    fn random_start_converges_to_an_antipodally_symmetric_profile() {
        let config = small_config();
        let state = run_search(&random_start(64, 99).unwrap(), &config).unwrap();
        assert_monotone_within_bars(&state);
        assert!(state.free_phase);
        assert!(
            state.symmetry_residual < 1e-4,
            "residual {:.3e} after the free stretch",
            state.symmetry_residual
        );
    }

    #[test]
    fn cap_bump_gains_over_its_initial_value() {
        let config = small_config();
        let state = run_search(&cap_start(64, 0.125).unwrap(), &config).unwrap();
        // The initial bar is fat (a concentrated cap puts real mass outside
        // the disk), so the gain is judged against the final bar only.
        let first = state.q_history[0];
        let last = state.q();
        assert!(
            last > first + state.q_bar(),
            "no gain: {first} -> {last}"
        );
        assert!(last > 2.8, "cap start settled low: {last}");
    }

    #[test]
    fn iterates_stay_normalized() {
        let config = small_config();
        let mut state = SearchState::new(&random_start(64, 3).unwrap(), &config).unwrap();
        for _ in 0..4 {
            state = el_iterate(&state, &config).unwrap();
            assert!((state.iterate.l2_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_start_is_rejected() {
        let config = small_config();
        let zero = CircleFunction::zeros(64).unwrap();
        assert!(matches!(
            SearchState::new(&zero, &config),
            Err(CoreError::ZeroInput)
        ));
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut config = small_config();
        config.max_iter = 0;
        assert!(config.validate().is_err());
        let mut config = small_config();
        config.grid_scale = 10.0;
        assert!(config.validate().is_err());
        let mut config = small_config();
        config.circle_n = 63;
        assert!(config.validate().is_err());
    }

    #[test]
    fn multi_start_estimate_is_at_least_the_constant_value() {
        let config = small_config();
        let report = estimate_r(&config).unwrap();
        let constant = report
            .outcomes
            .iter()
            .find(|o| o.name == "constant")
            .unwrap();
        assert!(report.estimate.value >= constant.q);
        assert_eq!(report.outcomes.len(), 4);
    }

    #[test]
    fn search_is_deterministic_given_seed_and_config() {
        let config = small_config();
        let a = estimate_r(&config).unwrap();
        let b = estimate_r(&config).unwrap();
        assert_eq!(a.estimate.value.to_bits(), b.estimate.value.to_bits());
        assert_eq!(a.best_start, b.best_start);
        for (x, y) in a.outcomes.iter().zip(&b.outcomes) {
            assert_eq!(x.q.to_bits(), y.q.to_bits());
        }
    }

    #[test]
    fn parabola_estimate_matches_the_gaussian_truth() {
        // ℛ_P = √(2π) · 3^{-1/12}: the Gaussian is the parabola extremizer
        // and its ratio is computable in closed form.
        let truth = TWO_PI.sqrt() * 3.0f64.powf(-1.0 / 12.0);
        let config = RunConfig {
            grid_scale: 0.5,
            ..small_config()
        };
        let est = estimate_rp(&config).unwrap();
        let rel = (est.value - truth).abs() / truth;
        assert!(
            rel < 0.01,
            "parabola ratio {:.6} vs truth {truth:.6} (rel {rel:.2e})",
            est.value
        );
        assert!(est.bar < 0.01 * est.value);
        // The bar must dominate the actual distance to the truth, not just
        // estimate it — otherwise the comparison downstream is built on sand.
        assert!(
            est.bar >= (est.value - truth).abs(),
            "bar {:.2e} fails to cover the true error {:.2e}",
            est.bar,
            (est.value - truth).abs()
        );
    }

    #[test]
    fn parabola_ratio_is_scale_invariant() {
        let config = RunConfig {
            grid_scale: 0.5,
            ..small_config()
        };
        let base = estimate_rp(&config).unwrap();
        // λ^{1/2} f(λy) with λ < 1 keeps the profile inside the window.
        let lambda = 0.8f64;
        let rescaled = LineProfile::from_fn(513, RP_PROFILE_HALF, |y| {
            Complex64::new(lambda.sqrt() * (-(lambda * y) * (lambda * y)).exp(), 0.0)
        })
        .unwrap();
        let other = parabola_ratio(&rescaled, &config).unwrap();
        assert!(
            (other.value - base.value).abs() < 0.01 * base.value,
            "rescaled ratio {:.6} vs {:.6}",
            other.value,
            base.value
        );
    }

    #[test]
    fn perturbed_gaussian_does_not_beat_the_gaussian() {
        // Same grid for both profiles, so the window bias is common-mode
        // and the comparison resolves far below the individual bars.  The
        // bump is even and unmodulated (a modulated bump boosts the wave
        // packet out of the window and the comparison stops being fair);
        // its fourth-Hermite component is what the Gaussian must beat.
        let (base, _) = parabola_ratio_at(&LineProfile::gaussian(513, RP_PROFILE_HALF), 0.5)
            .unwrap();
        for sign in [1.0, -1.0] {
            let bumped = LineProfile::from_fn(513, RP_PROFILE_HALF, |y| {
                let quartic = y.powi(4) * (-0.5 * y * y).exp();
                Complex64::new((-y * y).exp() * (1.0 + sign * 0.05 * quartic), 0.0)
            })
            .unwrap();
            let (other, _) = parabola_ratio_at(&bumped, 0.5).unwrap();
            // 5e-4 is the differential bar: the envelope fit responds to the
            // bump at the few-1e-4 level even on a common grid, while the
            // individual bars are ~6e-3.
            assert!(
                other <= base + 5e-4,
                "perturbed ratio {other:.6} beats the Gaussian's {base:.6}"
            );
        }
    }

    #[test]
    fn comparison_gap_clears_the_bars() {
        let config = small_config();
        let report = strict_comparison(&config).unwrap();
        assert!(report.passes, "gap {} bar {}", report.gap, report.combined_bar);
        assert!(report.gap > 0.1, "gap suspiciously small: {}", report.gap);
        assert!(report.r.value >= report.rp.value - report.r.bar - report.rp.bar);
        assert_eq!(report.lift_factor, 2.5f64.powf(1.0 / 6.0));
        assert!((report.lift_factor - 1.1649931).abs() < 1e-7);
    }
}
