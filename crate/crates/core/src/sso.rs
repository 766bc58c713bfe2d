//! Simplified swarm optimization over vectors in `[0, 1]^n_var`.
//!
//! Each variable of a solution is updated independently by a single uniform
//! draw `rho`: below `c_g` it copies the global best, below `c_g + c_p` the
//! personal best, below `c_g + c_p + c_w` it keeps its value, and otherwise it
//! is replaced by a fresh uniform value.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SsoParams {
    pub c_g: f64,
    pub c_p: f64,
    pub c_w: f64,
}

impl Default for SsoParams {
    fn default() -> Self {
        Self {
            c_g: 0.4,
            c_p: 0.2,
            c_w: 0.1,
        }
    }
}

impl SsoParams {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !(unit(self.c_g) && unit(self.c_p) && unit(self.c_w)) {
            return Err(Error::InvalidParameter("SSO probabilities must lie in [0, 1]".into()));
        }
        if self.c_g + self.c_p + self.c_w > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter("c_g + c_p + c_w must not exceed 1".into()));
        }
        Ok(())
    }

    /// Cumulative branch boundaries `(c_g, c_g + c_p, c_g + c_p + c_w)`.
    pub fn boundaries(&self) -> (f64, f64, f64) {
        let a = self.c_g;
        let b = a + self.c_p;
        (a, b, b + self.c_w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Global,
    Personal,
    Keep,
    Random,
}

pub fn branch_for(rho: f64, params: &SsoParams) -> Branch {
    let (g, p, w) = params.boundaries();
    if rho < g {
        Branch::Global
    } else if rho < p {
        Branch::Personal
    } else if rho < w {
        Branch::Keep
    } else {
        Branch::Random
    }
}

/// The step function for one variable given an explicit `rho`.
pub fn step_variable(rho: f64, current: f64, personal: f64, global: f64, params: &SsoParams, fresh: impl FnOnce() -> f64) -> f64 {
    match branch_for(rho, params) {
        Branch::Global => global,
        Branch::Personal => personal,
        Branch::Keep => current,
        Branch::Random => fresh(),
    }
}

pub fn update_solution<R: Rng + ?Sized>(x: &[f64], p: &[f64], g: &[f64], params: &SsoParams, rng: &mut R) -> Result<Vec<f64>> {
    for v in [p, g] {
        if v.len() != x.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                got: v.len(),
            });
        }
    }
    Ok(x.iter()
        .zip(p)
        .zip(g)
        .map(|((&xj, &pj), &gj)| {
            let rho: f64 = rng.random();
            step_variable(rho, xj, pj, gj, params, || rng.random())
        })
        .collect())
}

/// Solutions, personal bests and the global best with their recorded
/// fitness values.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub solutions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub personal: Vec<Vec<f64>>,
    pub personal_fitness: Vec<f64>,
    pub global: Vec<f64>,
    pub global_fitness: f64,
    pub global_index: usize,
}

impl Swarm {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Records the first evaluation: `P_i = X_i`, `G` = the first argmax.
    pub fn seed_bests(&mut self, fitness: Vec<f64>) {
        assert_eq!(fitness.len(), self.solutions.len());
        let best = fitness
            .iter()
            .enumerate()
            .fold(0, |best, (i, &f)| if f > fitness[best] { i } else { best });
        self.personal = self.solutions.clone();
        self.personal_fitness = fitness.clone();
        self.global = self.solutions[best].clone();
        self.global_fitness = fitness[best];
        self.global_index = best;
        self.fitness = fitness;
    }
}

/// Uniform random swarm; fitness fields are left at `NaN` until
/// [`Swarm::seed_bests`] is called.
pub fn init_swarm<R: Rng + ?Sized>(n_sol: usize, n_var: usize, rng: &mut R) -> Result<Swarm> {
    if n_sol == 0 || n_var == 0 {
        return Err(Error::InvalidParameter("swarm needs at least one solution and one variable".into()));
    }
    let solutions: Vec<Vec<f64>> = (0..n_sol)
        .map(|_| (0..n_var).map(|_| rng.random::<f64>()).collect())
        .collect();
    Ok(Swarm {
        personal: solutions.clone(),
        personal_fitness: vec![f64::NAN; n_sol],
        fitness: vec![f64::NAN; n_sol],
        global: solutions[0].clone(),
        global_fitness: f64::NAN,
        global_index: 0,
        solutions,
    })
}
