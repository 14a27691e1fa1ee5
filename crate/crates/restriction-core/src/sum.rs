//! Deterministic reductions.
//!
//! Every quadrature in the crate funnels through these helpers. Work is cut
//! into a fixed number of chunks that depends only on the problem size — never
//! on the worker pool — each chunk is reduced pairwise, and the per-chunk
//! partials are folded in index order. Consequently the parallel and serial
//! builds, and any two thread counts, produce bitwise-identical floating-point
//! results.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of independent chunks a reduction is cut into.
///
/// Fixed (rather than `num_threads`) so the reduction tree is part of the
/// algorithm, not of the runtime environment.
pub const FIXED_CHUNKS: usize = 64;

const PAIRWISE_BASE: usize = 32;

/// Pairwise (cascade) summation; O(log n) error growth.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BASE {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// Pairwise summation of complex values.
pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= PAIRWISE_BASE {
        let mut acc = Complex64::new(0.0, 0.0);
        for &x in xs {
            acc += x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
    }
}

pub(crate) fn chunk_bounds(n: usize) -> Vec<(usize, usize)> {
    let chunks = FIXED_CHUNKS.min(n.max(1));
    (0..chunks)
        .map(|c| (c * n / chunks, (c + 1) * n / chunks))
        .collect()
}

/// Deterministic `Σ_{i<n} term(i)`.
///
/// `term` must be pure. The index range is split into [`FIXED_CHUNKS`] chunks;
/// each chunk buffers its terms and reduces pairwise; chunk partials are
/// combined pairwise in index order.
pub fn sum_indexed<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let bounds = chunk_bounds(n);
    let partial = |&(lo, hi): &(usize, usize)| -> f64 {
        let buf: Vec<f64> = (lo..hi).map(&term).collect();
        pairwise_sum(&buf)
    };

    #[cfg(feature = "parallel")]
    let partials: Vec<f64> = bounds.par_iter().map(partial).collect();
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<f64> = bounds.iter().map(partial).collect();

    pairwise_sum(&partials)
}

/// Deterministic `Σ_{i<n} term(i)` for complex terms.
pub fn sum_indexed_complex<F>(n: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let bounds = chunk_bounds(n);
    let partial = |&(lo, hi): &(usize, usize)| -> Complex64 {
        let buf: Vec<Complex64> = (lo..hi).map(&term).collect();
        pairwise_sum_complex(&buf)
    };

    #[cfg(feature = "parallel")]
    let partials: Vec<Complex64> = bounds.par_iter().map(partial).collect();
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Complex64> = bounds.iter().map(partial).collect();

    pairwise_sum_complex(&partials)
}

/// Deterministic parallel tabulation: `(0..n).map(f).collect()`, computed
/// concurrently when the `parallel` feature is active. Each slot is written
/// exactly once, so scheduling cannot affect the result.
pub fn tabulate<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
