//! Fixed-step RK4 simulation of a pinned network of identical nodes
//!
//! ```text
//! x_i' = f(x_i) - c * sum_j l_ij P x_j + u_i,      s' = f(s)
//! ```
//!
//! with the inner coupling `P = I`. Pinned nodes get either the adaptive
//! controller `u_i = -d_i e_i, d_i' = h e_i.e_i` or the linear controller
//! `u_i = -c d e_i`, where `e_i = x_i - s`. Other nodes get `u_i = 0`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, Matrix3};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, laplacian, Graph, PinSet};
use crate::rng;
use crate::spectra;

/// Any state component beyond this magnitude counts as a blow-up.
pub const BLOWUP_LIMIT: f64 = 1e100;

/// Self-dynamics `f` of every node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeDynamics {
    /// Scalar `f(x) = a x`. Any `alpha > a` certifies the one-sided
    /// Lipschitz condition with `mu = alpha - a`.
    LinearUnstable { a: f64 },
    /// Piecewise-linear Chua circuit
    /// `x' = alpha (y - x - g(x)), y' = x - y + z, z' = -beta y`,
    /// `g(x) = m1 x + (m0 - m1)(|x + 1| - |x - 1|) / 2`.
    Chua { alpha: f64, beta: f64, m0: f64, m1: f64 },
}

impl NodeDynamics {
    /// Double-scroll parameters.
    pub fn chua() -> Self {
        NodeDynamics::Chua {
            alpha: 15.6,
            beta: 28.0,
            m0: -8.0 / 7.0,
            m1: -5.0 / 7.0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            NodeDynamics::LinearUnstable { .. } => 1,
            NodeDynamics::Chua { .. } => 3,
        }
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        match *self {
            NodeDynamics::LinearUnstable { a } => out[0] = a * x[0],
            NodeDynamics::Chua { alpha, beta, m0, m1 } => {
                let g = m1 * x[0] + 0.5 * (m0 - m1) * ((x[0] + 1.0).abs() - (x[0] - 1.0).abs());
                out[0] = alpha * (x[1] - x[0] - g);
                out[1] = x[0] - x[1] + x[2];
                out[2] = -beta * x[1];
            }
        }
    }

    /// Global Lipschitz constant of `f`. Any `alpha` above it certifies the
    /// synchronization criterion's assumption with `P = I`.
    pub fn lipschitz(&self) -> f64 {
        match *self {
            NodeDynamics::LinearUnstable { a } => a.abs(),
            NodeDynamics::Chua { alpha, beta, m0, m1 } => [m0, m1]
                .into_iter()
                .map(|m| {
                    let j = Matrix3::new(
                        -alpha * (1.0 + m), alpha, 0.0,
                        1.0, -1.0, 1.0,
                        0.0, -beta, 0.0,
                    );
                    j.singular_values().max()
                })
                .fold(0.0, f64::max),
        }
    }

    /// Initial target state `s(0)`.
    pub fn default_target(&self) -> Vec<f64> {
        match self {
            NodeDynamics::LinearUnstable { .. } => vec![0.0],
            NodeDynamics::Chua { .. } => vec![0.7, 0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Controller {
    /// Gains start at zero and grow as `d_i' = h e_i.e_i`.
    Adaptive { h: f64 },
    Linear { d: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub controller: Controller,
    pub c: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Node states start uniform in `[-init_radius, init_radius]^n`.
    pub init_radius: f64,
    pub seed: u64,
    /// `None` uses [`NodeDynamics::default_target`].
    pub target0: Option<Vec<f64>>,
    /// Store every `record_every`-th step; the last step is always stored.
    pub record_every: usize,
    pub sync_tol: f64,
}

impl SimConfig {
    pub fn new(controller: Controller, c: f64) -> Self {
        SimConfig {
            controller,
            c,
            dt: 1e-3,
            t_end: 50.0,
            init_radius: 1.0,
            seed: 0,
            target0: None,
            record_every: 100,
            sync_tol: 1e-6,
        }
    }

    fn validate(&self, dyn_dim: usize) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.dt) || !(self.t_end > self.dt) || !self.t_end.is_finite() {
            return Err(Error::param("need dt > 0 and T > dt"));
        }
        if !positive(self.c) {
            return Err(Error::param("coupling strength c must be positive"));
        }
        match self.controller {
            Controller::Adaptive { h } if !positive(h) => {
                return Err(Error::param("adaptive rate h must be positive"))
            }
            Controller::Linear { d } if !positive(d) => {
                return Err(Error::param("feedback gain d must be positive"))
            }
            _ => {}
        }
        if self.record_every == 0 {
            return Err(Error::param("record_every must be at least 1"));
        }
        if !(self.init_radius >= 0.0) {
            return Err(Error::param("init_radius must be nonnegative"));
        }
        if let Some(t) = &self.target0 {
            if t.len() != dyn_dim {
                return Err(Error::param(format!(
                    "target has {} components, dynamics need {dyn_dim}",
                    t.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub times: Vec<f64>,
    /// `error_norms[k][i] = |e_i(times[k])|`.
    pub error_norms: Vec<Vec<f64>>,
    /// Adaptive gains per record, in pin-set order; empty rows for the
    /// linear controller.
    pub gains: Vec<Vec<f64>>,
    pub pinned: Vec<usize>,
    pub converged: bool,
    pub final_error: f64,
    pub blowup_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    pub converged: bool,
    pub final_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_time: Option<f64>,
}

impl SimResult {
    pub fn summary(&self) -> SimSummary {
        SimSummary {
            converged: self.converged,
            final_error: self.final_error,
            blowup_time: self.blowup_time,
        }
    }

    /// `t, e_0..e_{N-1}, d_<node>...` with one line per record.
    pub fn to_csv(&self) -> String {
        let n = self.error_norms.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 0..n {
            let _ = write!(out, ",e_{i}");
        }
        if self.gains.first().is_some_and(|g| !g.is_empty()) {
            for v in &self.pinned {
                let _ = write!(out, ",d_{v}");
            }
        }
        out.push('\n');
        for (k, t) in self.times.iter().enumerate() {
            let _ = write!(out, "{t}");
            for e in &self.error_norms[k] {
                let _ = write!(out, ",{e}");
            }
            for d in &self.gains[k] {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }
}

struct System<'a> {
    g: &'a Graph,
    dynamics: NodeDynamics,
    pinned: &'a [usize],
    controller: Controller,
    c: f64,
    n: usize,
}

impl System<'_> {
    /// State layout: node states, then the target, then adaptive gains.
    fn derivative(&self, y: &[f64], dy: &mut [f64]) {
        let nodes = self.g.node_count();
        let dim = self.n;
        let target = &y[nodes * dim..(nodes + 1) * dim];
        for i in 0..nodes {
            let xi = &y[i * dim..(i + 1) * dim];
            let out = &mut dy[i * dim..(i + 1) * dim];
            self.dynamics.eval(xi, out);
            for &j in self.g.neighbors(i) {
                for k in 0..dim {
                    out[k] += self.c * (y[j * dim + k] - xi[k]);
                }
            }
        }
        let (head, tail) = dy.split_at_mut((nodes + 1) * dim);
        self.dynamics.eval(target, &mut head[nodes * dim..]);
        for (p, &i) in self.pinned.iter().enumerate() {
            let gain = match self.controller {
                Controller::Adaptive { .. } => y[(nodes + 1) * dim + p],
                Controller::Linear { d } => self.c * d,
            };
            let mut sq = 0.0;
            for k in 0..dim {
                let e = y[i * dim + k] - target[k];
                head[i * dim + k] -= gain * e;
                sq += e * e;
            }
            if let Controller::Adaptive { h } = self.controller {
                tail[p] = h * sq;
            }
        }
    }

    fn error_norms(&self, y: &[f64]) -> Vec<f64> {
        let nodes = self.g.node_count();
        let dim = self.n;
        let target = &y[nodes * dim..(nodes + 1) * dim];
        (0..nodes)
            .map(|i| {
                (0..dim)
                    .map(|k| (y[i * dim + k] - target[k]).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }
}

/// Integrates the pinned network from random initial states and reports
/// whether every node reached the target within `cfg.sync_tol` at `T`.
///
/// A non-finite or huge state stops the run early and is reported through
/// `blowup_time`, not as an error.
pub fn simulate(g: &Graph, s: &PinSet, dynamics: NodeDynamics, cfg: &SimConfig) -> Result<SimResult> {
    let dim = dynamics.dim();
    cfg.validate(dim)?;
    graph::check_groundable(s, g.node_count())?;
    let nodes = g.node_count();
    let pinned = s.nodes();
    let adaptive = matches!(cfg.controller, Controller::Adaptive { .. });
    let extra = if adaptive { pinned.len() } else { 0 };
    let size = (nodes + 1) * dim + extra;

    let mut rng = rng::stream(cfg.seed, 0);
    let mut y = vec![0.0; size];
    for v in &mut y[..nodes * dim] {
        *v = if cfg.init_radius > 0.0 {
            rng.random_range(-cfg.init_radius..=cfg.init_radius)
        } else {
            0.0
        };
    }
    let target0 = cfg.target0.clone().unwrap_or_else(|| dynamics.default_target());
    y[nodes * dim..(nodes + 1) * dim].copy_from_slice(&target0);

    let sys = System {
        g,
        dynamics,
        pinned,
        controller: cfg.controller,
        c: cfg.c,
        n: dim,
    };
    let gains_of = |y: &[f64]| -> Vec<f64> {
        if adaptive {
            y[(nodes + 1) * dim..].to_vec()
        } else {
            Vec::new()
        }
    };

    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let mut result = SimResult {
        times: vec![0.0],
        error_norms: vec![sys.error_norms(&y)],
        gains: vec![gains_of(&y)],
        pinned: pinned.to_vec(),
        converged: false,
        final_error: f64::NAN,
        blowup_time: None,
    };

    let mut k1 = vec![0.0; size];
    let mut k2 = vec![0.0; size];
    let mut k3 = vec![0.0; size];
    let mut k4 = vec![0.0; size];
    let mut tmp = vec![0.0; size];
    let h = cfg.dt;
    for step in 1..=steps {
        sys.derivative(&y, &mut k1);
        for i in 0..size {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        sys.derivative(&tmp, &mut k2);
        for i in 0..size {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        sys.derivative(&tmp, &mut k3);
        for i in 0..size {
            tmp[i] = y[i] + h * k3[i];
        }
        sys.derivative(&tmp, &mut k4);
        for i in 0..size {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = step as f64 * h;
        if y.iter().any(|v| !v.is_finite() || v.abs() > BLOWUP_LIMIT) {
            result.blowup_time = Some(t);
            result.final_error = f64::INFINITY;
            return Ok(result);
        }
        if step % cfg.record_every == 0 || step == steps {
            result.times.push(t);
            result.error_norms.push(sys.error_norms(&y));
            result.gains.push(gains_of(&y));
        }
    }
    let last = result.error_norms.last().expect("initial record");
    result.final_error = last.iter().copied().fold(0.0, f64::max);
    result.converged = result.final_error < cfg.sync_tol;
    Ok(result)
}

/// `lambda1(L(S|S)) > alpha / c`.
pub fn check_criterion(g: &Graph, s: &PinSet, alpha: f64, c: f64) -> Result<bool> {
    let grounded = graph::ground(g, s)?;
    Ok(spectra::lambda1(grounded.matrix())? > alpha / c)
}

/// Largest eigenvalue of `a I - c (L + D)`; for `f(x) = a x` the simulated
/// errors decay exponentially iff it is negative.
pub fn linear_stability_oracle(g: &Graph, s: &PinSet, a: f64, c: f64, d: f64) -> Result<f64> {
    graph::check_groundable(s, g.node_count())?;
    let mut m: DMatrix<f64> = laplacian(g) * -c;
    for &v in s.nodes() {
        m[(v, v)] -= c * d;
    }
    for v in 0..g.node_count() {
        m[(v, v)] += a;
    }
    spectra::lambda_max(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_path, gen_star};

    fn pins(nodes: &[usize], n: usize) -> PinSet {
        PinSet::new(nodes.iter().copied(), n).unwrap()
    }

    #[test]
    fn k4_linear_converges() {
        let g = gen_complete(4).unwrap();
        let s = pins(&[0], 4);
        assert!(check_criterion(&g, &s, 1.1, 2.0).unwrap());
        assert!(linear_stability_oracle(&g, &s, 1.0, 2.0, 10.0).unwrap() < 0.0);
        let cfg = SimConfig::new(Controller::Linear { d: 10.0 }, 2.0);
        let r = simulate(&g, &s, NodeDynamics::LinearUnstable { a: 1.0 }, &cfg).unwrap();
        assert!(r.converged, "final error {}", r.final_error);
        assert!(r.gains.iter().all(Vec::is_empty));
    }

    #[test]
    fn weak_coupling_diverges() {
        let g = gen_path(3).unwrap();
        let s = pins(&[0], 3);
        for d in [0.1, 1.0, 100.0] {
            assert!(linear_stability_oracle(&g, &s, 1.0, 0.1, d).unwrap() > 0.0);
        }
        let mut cfg = SimConfig::new(Controller::Linear { d: 5.0 }, 0.1);
        cfg.t_end = 20.0;
        let r = simulate(&g, &s, NodeDynamics::LinearUnstable { a: 1.0 }, &cfg).unwrap();
        assert!(!r.converged);
        assert!(r.final_error > 1.0);
    }

    #[test]
    fn adaptive_star_gains_plateau() {
        let g = gen_star(13).unwrap();
        let s = pins(&[0], 13);
        let mut cfg = SimConfig::new(Controller::Adaptive { h: 1.0 }, 2.0);
        cfg.t_end = 120.0;
        let r = simulate(&g, &s, NodeDynamics::LinearUnstable { a: 1.0 }, &cfg).unwrap();
        assert!(r.converged, "final error {}", r.final_error);
        let d: Vec<f64> = r.gains.iter().map(|g| g[0]).collect();
        assert!(d.windows(2).all(|w| w[1] >= w[0]));
        let last = d[d.len() - 1];
        let mid = d[d.len() / 2];
        assert!(last.is_finite() && last - mid < 1e-6);
    }

    #[test]
    fn blowup_is_flagged() {
        let g = gen_path(3).unwrap();
        let s = pins(&[0], 3);
        let mut cfg = SimConfig::new(Controller::Linear { d: 1.0 }, 0.1);
        cfg.dt = 0.5;
        cfg.t_end = 1e5;
        let r = simulate(&g, &s, NodeDynamics::LinearUnstable { a: 50.0 }, &cfg).unwrap();
        assert!(r.blowup_time.is_some());
        assert!(!r.converged);
        let json = serde_json::to_string(&r.summary()).unwrap();
        assert!(json.contains("blowup_time"));
    }

    #[test]
    fn chua_lipschitz_and_sync() {
        let chua = NodeDynamics::chua();
        let lf = chua.lipschitz();
        assert!(lf > 28.0 && lf < 40.0, "{lf}");
        // strong coupling well above alpha / lambda1 on a pinned star centre
        let g = gen_star(5).unwrap();
        let s = pins(&[0], 5);
        let alpha = lf + 1.0;
        let c = 2.0 * alpha;
        assert!(check_criterion(&g, &s, alpha, c).unwrap());
        let mut cfg = SimConfig::new(Controller::Linear { d: 50.0 }, c);
        cfg.dt = 1e-4;
        cfg.t_end = 5.0;
        cfg.record_every = 1000;
        let r = simulate(&g, &s, chua, &cfg).unwrap();
        assert!(r.converged, "final error {}", r.final_error);
    }

    #[test]
    fn csv_layout() {
        let g = gen_path(3).unwrap();
        let s = pins(&[1], 3);
        let mut cfg = SimConfig::new(Controller::Adaptive { h: 1.0 }, 1.0);
        cfg.t_end = 0.01;
        cfg.record_every = 5;
        let r = simulate(&g, &s, NodeDynamics::LinearUnstable { a: 0.5 }, &cfg).unwrap();
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,e_0,e_1,e_2,d_1"));
        assert_eq!(csv.lines().count(), 1 + 3);
        assert!(lines.all(|l| l.split(',').count() == 5));
    }

    #[test]
    fn rejects_bad_config() {
        let g = gen_path(3).unwrap();
        let s = pins(&[1], 3);
        let lin = NodeDynamics::LinearUnstable { a: 1.0 };
        let mut cfg = SimConfig::new(Controller::Linear { d: 0.0 }, 1.0);
        assert!(simulate(&g, &s, lin, &cfg).is_err());
        cfg.controller = Controller::Linear { d: 1.0 };
        cfg.dt = 0.0;
        assert!(simulate(&g, &s, lin, &cfg).is_err());
        cfg.dt = 1e-3;
        cfg.target0 = Some(vec![0.0, 0.0]);
        assert!(simulate(&g, &s, lin, &cfg).is_err());
    }
}
