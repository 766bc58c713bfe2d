//! Monte Carlo reliability estimation and the interval-wise stopping rule.
//!
//! Replications are split into blocks of `delta_n_sim`. After block `i` the
//! running success count `omega_i` is compared with
//! `lb_i = N_i (theta - delta_i)` and `ub_i = N_i (theta + delta_i)`, where
//! `N_i = i * delta_n_sim` and
//!
//! ```text
//! delta_i = z * ( sqrt(p(1-p) / N_i) - sqrt(p(1-p) / n_sim) )
//! ```
//!
//! Crossing `lb_i` decides class 0, crossing `ub_i` decides class 1. The last
//! block has `delta = 0`, so the decision there is forced.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ubcn::{ReliabilityAssignment, Sampler, Topology};

/// Upper 0.005 quantile of the standard normal, to four decimals.
pub const Z_99: f64 = 2.5758;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimParams {
    pub n_sim: usize,
    pub delta_n_sim: usize,
    pub alpha: f64,
    pub p_eps: f64,
    pub z_half_alpha: f64,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            n_sim: 2000,
            delta_n_sim: 100,
            alpha: 0.01,
            p_eps: 0.90,
            z_half_alpha: Z_99,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if self.delta_n_sim == 0 || self.n_sim == 0 {
            return bad("n_sim and delta_n_sim must be positive");
        }
        if !self.n_sim.is_multiple_of(self.delta_n_sim) {
            return bad("n_sim must be a multiple of delta_n_sim");
        }
        if !(self.p_eps > 0.0 && self.p_eps < 1.0) {
            return bad("p_eps must lie in (0, 1)");
        }
        if self.z_half_alpha.is_nan() || self.z_half_alpha <= 0.0 {
            return bad("z_half_alpha must be positive");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        Ok(())
    }

    pub fn n_intervals(&self) -> usize {
        self.n_sim / self.delta_n_sim
    }

    /// Smallest replication count whose half-width stays within `eps`:
    /// `z^2 p(1-p) / eps^2`, rounded up.
    pub fn min_replications(&self, eps: f64) -> usize {
        let v = self.z_half_alpha.powi(2) * self.p_eps * (1.0 - self.p_eps) / (eps * eps);
        v.ceil() as usize
    }
}

/// Whether a classification may stop early or always runs all `n_sim`
/// replications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionMode {
    #[default]
    Imcs,
    FullMcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub n_sim: usize,
    pub delta: f64,
    pub lb: f64,
    pub ub: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub theta: f64,
    pub delta_n_sim: usize,
    pub intervals: Vec<Interval>,
}

impl BoundsTable {
    pub fn n_sim(&self) -> usize {
        self.intervals.last().map_or(0, |iv| iv.n_sim)
    }

    pub fn last(&self) -> &Interval {
        self.intervals.last().expect("bounds table is never empty")
    }
}

pub fn build_bounds(theta: f64, params: &SimParams) -> Result<BoundsTable> {
    params.validate()?;
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!("theta {theta} outside [0, 1]")));
    }
    let var = params.p_eps * (1.0 - params.p_eps);
    let tail = (var / params.n_sim as f64).sqrt();
    let intervals = (1..=params.n_intervals())
        .map(|i| {
            let n_i = i * params.delta_n_sim;
            let delta = params.z_half_alpha * ((var / n_i as f64).sqrt() - tail);
            Interval {
                n_sim: n_i,
                delta,
                lb: n_i as f64 * (theta - delta),
                ub: n_i as f64 * (theta + delta),
            }
        })
        .collect();
    Ok(BoundsTable {
        theta,
        delta_n_sim: params.delta_n_sim,
        intervals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImcsOutcome {
    pub predicted_class: u8,
    pub sims_used: usize,
    pub omega_at_stop: usize,
    /// The forced final decision hit `omega == n_sim * theta` exactly.
    pub boundary_tie: bool,
}

/// Number of connected states among `n_sim` samples.
pub fn mcs_successes<R: Rng + ?Sized>(topology: &Topology, arc_rel: &[f64], node_rel: &[f64], n_sim: usize, rng: &mut R) -> usize {
    check_sizes(topology, arc_rel, node_rel);
    let mut sampler = Sampler::new(topology);
    (0..n_sim)
        .filter(|_| sampler.trial(arc_rel, node_rel, rng))
        .count()
}

/// Plain Monte Carlo estimate `R*`.
pub fn mcs_estimate<R: Rng + ?Sized>(topology: &Topology, assign: &ReliabilityAssignment, n_sim: usize, rng: &mut R) -> Result<f64> {
    if n_sim == 0 {
        return Err(Error::InvalidParameter("n_sim must be positive".into()));
    }
    let hits = mcs_successes(topology, &assign.arc_rel, &assign.node_rel, n_sim, rng);
    Ok(hits as f64 / n_sim as f64)
}

pub fn imcs_classify<R: Rng + ?Sized>(topology: &Topology, arc_rel: &[f64], node_rel: &[f64], bounds: &BoundsTable, rng: &mut R) -> ImcsOutcome {
    classify(DecisionMode::Imcs, topology, arc_rel, node_rel, bounds, rng)
}

/// Runs blocks of `delta_n_sim` replications. With [`DecisionMode::FullMcs`]
/// only the final comparison is made; both modes consume the stream
/// identically up to the point where the early rule stops.
pub fn classify<R: Rng + ?Sized>(
    mode: DecisionMode,
    topology: &Topology,
    arc_rel: &[f64],
    node_rel: &[f64],
    bounds: &BoundsTable,
    rng: &mut R,
) -> ImcsOutcome {
    check_sizes(topology, arc_rel, node_rel);
    let mut sampler = Sampler::new(topology);
    let mut omega = 0usize;
    let last = bounds.intervals.len() - 1;

    for (i, iv) in bounds.intervals.iter().enumerate() {
        omega += (0..bounds.delta_n_sim)
            .filter(|_| sampler.trial(arc_rel, node_rel, rng))
            .count();
        let w = omega as f64;
        if i == last {
            return ImcsOutcome {
                predicted_class: u8::from(w >= iv.ub),
                sims_used: iv.n_sim,
                omega_at_stop: omega,
                boundary_tie: w == iv.ub,
            };
        }
        if mode == DecisionMode::FullMcs {
            continue;
        }
        let decided = if w <= iv.lb {
            Some(0)
        } else if w >= iv.ub {
            Some(1)
        } else {
            None
        };
        if let Some(class) = decided {
            return ImcsOutcome {
                predicted_class: class,
                sims_used: iv.n_sim,
                omega_at_stop: omega,
                boundary_tie: false,
            };
        }
    }
    unreachable!("the final interval always decides")
}

fn check_sizes(topology: &Topology, arc_rel: &[f64], node_rel: &[f64]) {
    assert_eq!(arc_rel.len(), topology.n_var(), "arc reliability vector length");
    assert_eq!(node_rel.len(), topology.n(), "node reliability vector length");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ubcn::build_topology;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn defaults_validate() {
        SimParams::default().validate().unwrap();
        let bad = SimParams { n_sim: 2050, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SimParams { p_eps: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(build_bounds(1.2, &SimParams::default()).is_err());
    }

    #[test]
    fn first_interval_at_half() {
        // 2.5758 * (sqrt(0.09/100) - sqrt(0.09/2000)) = 2.5758 * (0.03 - 0.0067082039)
        let b = build_bounds(0.5, &SimParams::default()).unwrap();
        let iv = b.intervals[0];
        assert_eq!(iv.n_sim, 100);
        assert!((iv.delta - 0.059996).abs() < 1e-5, "{}", iv.delta);
        assert!((iv.lb - 44.0).abs() < 1e-3);
        assert!((iv.ub - 56.0).abs() < 1e-3);
    }

    #[test]
    fn fifth_interval_at_point_six() {
        // 2.5758 * (sqrt(0.09/500) - sqrt(0.09/2000)) = 2.5758 * 0.0067082039
        let b = build_bounds(0.6, &SimParams::default()).unwrap();
        let iv = b.intervals[4];
        assert_eq!(iv.n_sim, 500);
        assert!((iv.delta - 0.0172790).abs() < 1e-6, "{}", iv.delta);
        assert!((iv.lb - 291.3605).abs() < 1e-3, "{}", iv.lb);
        assert!((iv.ub - 308.6395).abs() < 1e-3, "{}", iv.ub);
    }

    #[test]
    fn last_interval_collapses() {
        for theta in [0.0, 0.37, 0.5, 0.6, 1.0] {
            let b = build_bounds(theta, &SimParams::default()).unwrap();
            assert_eq!(b.intervals.len(), 20);
            let last = b.last();
            assert_eq!(last.delta, 0.0);
            assert_eq!(last.lb, 2000.0 * theta);
            assert_eq!(last.ub, 2000.0 * theta);
            for w in b.intervals.windows(2) {
                assert!(w[0].delta > w[1].delta);
            }
            assert!(b.intervals.iter().all(|iv| iv.lb <= iv.ub));
        }
    }

    #[test]
    fn min_replications_matches_half_width() {
        let p = SimParams::default();
        // 2.5758^2 * 0.09 / 0.01^2 = 5971.3
        assert_eq!(p.min_replications(0.01), 5972);
    }

    #[test]
    fn degenerate_estimates() {
        let t = build_topology(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let ones = ReliabilityAssignment::uniform(&t, 1.0, 1.0).unwrap();
        assert_eq!(mcs_estimate(&t, &ones, 500, &mut rng).unwrap(), 1.0);
        let cut = ReliabilityAssignment::uniform(&t, 0.9, 0.0).unwrap();
        assert_eq!(mcs_estimate(&t, &cut, 500, &mut rng).unwrap(), 0.0);
        assert!(mcs_estimate(&t, &ones, 0, &mut rng).is_err());
    }

    #[test]
    fn full_mode_uses_every_replication() {
        let t = build_topology(2).unwrap();
        let b = build_bounds(0.6, &SimParams::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let out = classify(DecisionMode::FullMcs, &t, &[1.0; 5], &[1.0; 2], &b, &mut rng);
        assert_eq!(out.sims_used, 2000);
        assert_eq!(out.omega_at_stop, 2000);
        assert_eq!(out.predicted_class, 1);
    }

    #[test]
    fn exact_tie_resolves_to_one() {
        // theta = 0 makes the final bound 0; a dead network then ties exactly
        let t = build_topology(1).unwrap();
        let b = build_bounds(0.0, &SimParams { n_sim: 200, ..Default::default() }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let out = classify(DecisionMode::FullMcs, &t, &[0.0; 2], &[0.0], &b, &mut rng);
        assert_eq!(out.predicted_class, 1);
        assert!(out.boundary_tie);
    }
}
