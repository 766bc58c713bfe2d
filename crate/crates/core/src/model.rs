//! Trained classifier and its JSON file format.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 4,
//!   "arc_ordering": "pairs-then-source-then-sink",
//!   "arc_rel": [0.91, ...],
//!   "transform": { "attributes": [{"min": .., "max": .., "flip": .., "spearman": ..}],
//!                  "class_map": {"label_for_one": .., "label_for_zero": .., "count_one": .., "total": .., "theta": ..} },
//!   "sim": {"n_sim": 2000, "delta_n_sim": 100, "alpha": 0.01, "p_eps": 0.9, "z_half_alpha": 2.5758},
//!   "decision": "imcs",
//!   "fitness": 0.97,
//!   "seed": 7,
//!   "fitness_stream": {"run": 0, "generation": 12, "solution": 3},
//!   "config_digest": "..."
//! }
//! ```
//!
//! Floats are written in shortest round-trip form, so loading restores every
//! stored number bit for bit. The bounds table is rebuilt from `theta` and
//! `sim` on load.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::TransformSpec;
use crate::error::{Error, Result};
use crate::reliability::{self, BoundsTable, DecisionMode, SimParams};
use crate::trainer::{TrainConfig, TrainedRun};
use crate::ubcn::{Topology, ARC_ORDERING};

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub topology: Topology,
    pub arc_rel: Vec<f64>,
    pub transform: TransformSpec,
    pub sim: SimParams,
    pub bounds: BoundsTable,
    pub decision: DecisionMode,
    /// Recorded training fitness of `arc_rel`.
    pub fitness: f64,
    pub seed: u64,
    pub fitness_run: usize,
    pub fitness_generation: usize,
    pub fitness_solution: usize,
    pub config_digest: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct FitnessStream {
    run: usize,
    generation: usize,
    solution: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    version: u32,
    n: usize,
    arc_ordering: String,
    arc_rel: Vec<f64>,
    transform: TransformSpec,
    sim: SimParams,
    decision: DecisionMode,
    fitness: f64,
    seed: u64,
    fitness_stream: FitnessStream,
    config_digest: String,
}

impl Model {
    pub fn new(transform: TransformSpec, arc_rel: Vec<f64>, sim: SimParams, decision: DecisionMode) -> Result<Self> {
        let topology = Topology::new(transform.n_attributes())?;
        if arc_rel.len() != topology.n_var() {
            return Err(Error::LengthMismatch {
                expected: topology.n_var(),
                got: arc_rel.len(),
            });
        }
        if let Some(p) = arc_rel.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Model(format!("arc reliability {p} outside [0, 1]")));
        }
        let bounds = reliability::build_bounds(transform.theta(), &sim)?;
        Ok(Self {
            topology,
            arc_rel,
            transform,
            sim,
            bounds,
            decision,
            fitness: f64::NAN,
            seed: 0,
            fitness_run: 0,
            fitness_generation: 0,
            fitness_solution: 0,
            config_digest: String::new(),
        })
    }

    pub fn from_run(transform: TransformSpec, run: &TrainedRun, config: &TrainConfig) -> Result<Self> {
        let mut model = Self::new(transform, run.best.clone(), config.sim, config.decision)?;
        model.fitness = run.best_fitness;
        model.seed = config.master_seed;
        model.fitness_run = run.run;
        (model.fitness_generation, model.fitness_solution) = run.best_found_at;
        model.config_digest = config.digest();
        Ok(model)
    }

    pub fn n_attributes(&self) -> usize {
        self.topology.n()
    }

    pub fn theta(&self) -> f64 {
        self.transform.theta()
    }

    /// Stream path under which [`Model::fitness`] was recorded.
    pub fn fitness_path(&self) -> [u64; 4] {
        crate::trainer::fitness_path(self.fitness_run, self.fitness_generation, self.fitness_solution)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            version: MODEL_VERSION,
            n: self.topology.n(),
            arc_ordering: ARC_ORDERING.to_string(),
            arc_rel: self.arc_rel.clone(),
            transform: self.transform.clone(),
            sim: self.sim,
            decision: self.decision,
            fitness: self.fitness,
            seed: self.seed,
            fitness_stream: FitnessStream {
                run: self.fitness_run,
                generation: self.fitness_generation,
                solution: self.fitness_solution,
            },
            config_digest: self.config_digest.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.version != MODEL_VERSION {
            return Err(Error::Model(format!("unsupported version {}", file.version)));
        }
        if file.arc_ordering != ARC_ORDERING {
            return Err(Error::Model(format!("unknown arc ordering {:?}", file.arc_ordering)));
        }
        if file.n != file.transform.n_attributes() {
            return Err(Error::Model(format!(
                "n = {} but the transform lists {} attributes",
                file.n,
                file.transform.n_attributes()
            )));
        }
        let mut model = Self::new(file.transform, file.arc_rel, file.sim, file.decision)?;
        model.fitness = file.fitness;
        model.seed = file.seed;
        model.fitness_run = file.fitness_stream.run;
        model.fitness_generation = file.fitness_stream.generation;
        model.fitness_solution = file.fitness_stream.solution;
        model.config_digest = file.config_digest;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}
