//! Bounds on `lambda1(L(S|S))` from the network topology, and the linear
//! feedback gain threshold.
//!
//! For a connected graph and a valid pin set:
//!
//! ```text
//! min_j w_j  <=  lambda1(L(S|S))  <=  min( lambda_{l+1}(L),  k_min,  mean_j w_j )
//! ```
//!
//! where `w` are the boundary weights and `k_min` is the smallest degree
//! among uncontrolled nodes. With a single pin `i` the mean bound reduces to
//! `k_i / (N - 1)`.

use nalgebra::{Cholesky, DMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, laplacian, Graph, PinSet};
use crate::spectra::{self, Spectrum};

/// All bounds for one `(graph, pin set)` pair next to the computed `lambda1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub lambda1: f64,
    pub upper_spectrum: f64,
    pub upper_kmin: f64,
    pub upper_avg_boundary: f64,
    pub lower_min_boundary: f64,
    /// Only set when exactly one node is pinned.
    pub upper_single_pin: Option<f64>,
    pub alpha_over_c: Option<f64>,
    pub satisfied: Option<bool>,
}

impl BoundReport {
    /// Smallest of the upper bounds that hold for every pin set.
    pub fn tightest_upper(&self) -> f64 {
        self.upper_spectrum
            .min(self.upper_kmin)
            .min(self.upper_avg_boundary)
    }
}

fn check_pin_count(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        return Err(Error::PinCountOutOfRange {
            l,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// `lambda_{l+1}(L_N)`: no choice of `l` pins can beat it.
pub fn upper_by_spectrum(g: &Graph, l: usize) -> Result<f64> {
    check_pin_count(g.node_count(), l)?;
    let spectrum = spectra::eig_sym(&laplacian(g))?;
    Ok(spectrum.lambda(l + 1))
}

/// Same as [`upper_by_spectrum`] with a precomputed Laplacian spectrum.
pub fn upper_by_spectrum_from(laplacian_spectrum: &Spectrum, l: usize) -> Result<f64> {
    check_pin_count(laplacian_spectrum.len(), l)?;
    Ok(laplacian_spectrum.lambda(l + 1))
}

/// Smallest degree among uncontrolled nodes.
pub fn upper_by_min_degree(g: &Graph, s: &PinSet) -> Result<f64> {
    graph::check_groundable(s, g.node_count())?;
    let kmin = s
        .complement(g.node_count())
        .into_iter()
        .map(|v| g.degree(v))
        .min()
        .unwrap_or(0);
    Ok(kmin as f64)
}

/// `(min w, mean w)` over the uncontrolled nodes.
pub fn boundary_bounds(g: &Graph, s: &PinSet) -> Result<(f64, f64)> {
    graph::check_groundable(s, g.node_count())?;
    let w = graph::boundary_weights(g, s);
    let lower = w.iter().copied().min().unwrap_or(0) as f64;
    let upper = w.iter().sum::<usize>() as f64 / w.len() as f64;
    Ok((lower, upper))
}

/// `k_i / (N - 1)` for the single pin `i`.
pub fn upper_single_pin(g: &Graph, i: usize) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::param("single-pin bound needs N >= 2"));
    }
    if i >= n {
        return Err(Error::NodeOutOfRange { node: i, n });
    }
    Ok(g.degree(i) as f64 / (n - 1) as f64)
}

/// `lambda_2(L_N) > alpha/c`. When this fails no single pin satisfies the
/// synchronization criterion.
pub fn necessary_lambda2(g: &Graph, alpha_over_c: f64) -> bool {
    if g.node_count() < 2 {
        return false;
    }
    match spectra::eig_sym(&laplacian(g)) {
        Ok(s) => s.lambda(2) > alpha_over_c,
        Err(_) => false,
    }
}

/// Threshold `d*` on the linear feedback gain: every `d > d*` makes
/// `-alpha I + c D + c L` positive definite, with `D = d` on the pinned
/// diagonal.
///
/// Computed as `(lambda_max(c^2 L12 (c L22 - alpha I)^-1 L21 - c L11) + alpha) / c`
/// from the block partition of `L` by (pinned, uncontrolled). The inverse is
/// never formed; `L21` is solved against a Cholesky factor.
pub fn feedback_gain_bound(g: &Graph, s: &PinSet, alpha: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::param(format!("coupling strength must be positive, got {c}")));
    }
    if !alpha.is_finite() {
        return Err(Error::param("alpha must be finite"));
    }
    let n = g.node_count();
    graph::check_groundable(s, n)?;
    let lap = laplacian(g);
    let pinned = s.nodes();
    let free = s.complement(n);

    let l11 = lap.select_rows(pinned).select_columns(pinned);
    let l12 = lap.select_rows(pinned).select_columns(&free);
    let l22 = lap.select_rows(&free).select_columns(&free);

    let lambda1 = spectra::lambda1(&l22)?;
    if c * lambda1 <= alpha {
        return Err(Error::CriterionNotMet {
            c_lambda1: c * lambda1,
            alpha,
        });
    }

    let mut inner = &l22 * c;
    for j in 0..inner.nrows() {
        inner[(j, j)] -= alpha;
    }
    let chol = Cholesky::new(inner).ok_or(Error::SingularInner)?;
    let solved = chol.solve(&l12.transpose());
    let schur = &l12 * solved * (c * c) - l11 * c;
    let schur = (&schur + schur.transpose()) * 0.5;
    let top = spectra::lambda_max(&schur)?;
    Ok((top + alpha) / c)
}

/// `-alpha I + c D + c L` for the linear controller with gain `d` on `s`.
pub fn closed_loop_matrix(g: &Graph, s: &PinSet, alpha: f64, c: f64, d: f64) -> DMatrix<f64> {
    let mut m = laplacian(g) * c;
    for v in 0..g.node_count() {
        m[(v, v)] -= alpha;
    }
    for &v in s.nodes() {
        m[(v, v)] += c * d;
    }
    m
}

/// Collects every bound for `(g, s)`. With a threshold, `satisfied` reports
/// `lambda1 > alpha_over_c`.
pub fn bound_report(g: &Graph, s: &PinSet, alpha_over_c: Option<f64>) -> Result<BoundReport> {
    let lap_spectrum = spectra::eig_sym(&laplacian(g))?;
    bound_report_with(g, s, &lap_spectrum, alpha_over_c)
}

pub(crate) fn bound_report_with(
    g: &Graph,
    s: &PinSet,
    lap_spectrum: &Spectrum,
    alpha_over_c: Option<f64>,
) -> Result<BoundReport> {
    let grounded = graph::ground(g, s)?;
    let lambda1 = spectra::lambda1(grounded.matrix())?;
    let w = grounded.boundary_weights();
    let lower_min_boundary = w.iter().copied().min().unwrap_or(0) as f64;
    let upper_avg_boundary = w.iter().sum::<usize>() as f64 / w.len() as f64;
    let upper_kmin = grounded
        .retained()
        .iter()
        .map(|&v| g.degree(v))
        .min()
        .unwrap_or(0) as f64;
    let upper_single_pin = if s.len() == 1 {
        Some(upper_single_pin(g, s.nodes()[0])?)
    } else {
        None
    };
    Ok(BoundReport {
        lambda1,
        upper_spectrum: upper_by_spectrum_from(lap_spectrum, s.len())?,
        upper_kmin,
        upper_avg_boundary,
        lower_min_boundary,
        upper_single_pin,
        alpha_over_c,
        satisfied: alpha_over_c.map(|t| lambda1 > t),
    })
}
