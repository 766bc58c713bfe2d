//! Fitness evaluation, the swarm training loop, prediction and
//! cross-validation.
//!
//! Random streams are derived from the master seed and a path naming the
//! work item (see [`crate::seed`]), so every result is reproducible and
//! independent of the rayon pool size.

use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{self, RawDataset, TransformedDataset};
use crate::error::{Error, Result};
use crate::model::Model;
use crate::reliability::{self, BoundsTable, DecisionMode, ImcsOutcome, SimParams};
use crate::seed::{self, domain, DEFAULT_SEED};
use crate::sso::{self, SsoParams, Swarm};
use crate::ubcn::Topology;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub n_run: usize,
    pub n_gen: usize,
    pub n_sol: usize,
    pub sim: SimParams,
    pub sso: SsoParams,
    pub master_seed: u64,
    pub folds: usize,
    pub decision: DecisionMode,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            n_run: 30,
            n_gen: 50,
            n_sol: 10,
            sim: SimParams::default(),
            sso: SsoParams::default(),
            master_seed: DEFAULT_SEED,
            folds: 10,
            decision: DecisionMode::Imcs,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_run == 0 || self.n_gen == 0 || self.n_sol == 0 || self.folds == 0 {
            return Err(Error::InvalidParameter(
                "n_run, n_gen, n_sol and folds must be at least 1".into(),
            ));
        }
        self.sim.validate()?;
        self.sso.validate()
    }

    /// FNV-1a over the JSON form of the config.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        let hash = text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        });
        format!("{hash:016x}")
    }
}

/// Outcome of evaluating one solution over a dataset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub correct: usize,
    pub total: usize,
    pub sims_used: usize,
}

impl Evaluation {
    pub fn accuracy(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }

    fn merge(self, other: Self) -> Self {
        Self {
            correct: self.correct + other.correct,
            total: self.total + other.total,
            sims_used: self.sims_used + other.sims_used,
        }
    }
}

/// Classifies every instance with its own stream `seed / path / index` and
/// counts matches with `y01`.
#[allow(clippy::too_many_arguments)]
pub fn evaluate(
    solution: &[f64],
    data: &TransformedDataset,
    topology: &Topology,
    bounds: &BoundsTable,
    mode: DecisionMode,
    seed: u64,
    path: &[u64],
) -> Result<Evaluation> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if solution.len() != topology.n_var() {
        return Err(Error::LengthMismatch {
            expected: topology.n_var(),
            got: solution.len(),
        });
    }
    if data.n_attributes() != topology.n() {
        return Err(Error::AttributeCount {
            expected: topology.n(),
            got: data.n_attributes(),
        });
    }
    let eval = data
        .node_rel
        .par_iter()
        .zip(data.y01.par_iter())
        .enumerate()
        .map(|(rec, (node_rel, &y))| {
            let mut rng = instance_stream(seed, path, rec);
            let out = reliability::classify(mode, topology, solution, node_rel, bounds, &mut rng);
            Evaluation {
                correct: usize::from(out.predicted_class == y),
                total: 1,
                sims_used: out.sims_used,
            }
        })
        .reduce(Evaluation::default, Evaluation::merge);
    Ok(eval)
}

fn instance_stream(seed: u64, path: &[u64], rec: usize) -> seed::Stream {
    let mut full = path.to_vec();
    full.push(rec as u64);
    seed::stream(seed, &full)
}

/// Fraction of instances classified correctly.
pub fn fitness(
    solution: &[f64],
    data: &TransformedDataset,
    topology: &Topology,
    bounds: &BoundsTable,
    mode: DecisionMode,
    seed: u64,
    path: &[u64],
) -> Result<f64> {
    evaluate(solution, data, topology, bounds, mode, seed, path).map(|e| e.accuracy())
}

/// Stream path under which solution `sol` of generation `gen` (1-based) in
/// run `run` is evaluated.
pub fn fitness_path(run: usize, gen: usize, sol: usize) -> [u64; 4] {
    [domain::FITNESS, run as u64, gen as u64, sol as u64]
}

/// Result of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedRun {
    pub run: usize,
    pub best: Vec<f64>,
    pub best_fitness: f64,
    /// `(gen, sol)` of the evaluation that produced `best_fitness`.
    pub best_found_at: (usize, usize),
    /// Recorded `F(G)` after each generation.
    pub global_history: Vec<f64>,
    /// Recorded `F(P_i)` after each generation, per solution index.
    pub personal_history: Vec<Vec<f64>>,
    /// Replications spent in fitness evaluations.
    pub sims_used: usize,
    pub evaluations: usize,
}

/// One swarm training run. Run `run` draws all of its streams from paths
/// prefixed with its index.
pub fn train(data: &TransformedDataset, topology: &Topology, config: &TrainConfig, run: usize) -> Result<TrainedRun> {
    config.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let bounds = reliability::build_bounds(data.theta, &config.sim)?;
    let seed = config.master_seed;
    let mut sims_used = 0usize;
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], gen: usize, sol: usize| -> Result<f64> {
        let e = evaluate(x, data, topology, &bounds, config.decision, seed, &fitness_path(run, gen, sol))?;
        sims_used += e.sims_used;
        evaluations += e.total;
        Ok(e.accuracy())
    };

    let mut init_rng = seed::stream(seed, &[domain::INIT, run as u64]);
    let mut swarm: Swarm = sso::init_swarm(config.n_sol, topology.n_var(), &mut init_rng)?;
    let first = swarm
        .solutions
        .iter()
        .enumerate()
        .map(|(sol, x)| eval(x, 1, sol))
        .collect::<Result<Vec<_>>>()?;
    swarm.seed_bests(first);
    let mut best_found_at = (1, swarm.global_index);
    let mut global_history = vec![swarm.global_fitness];
    let mut personal_history = vec![swarm.personal_fitness.clone()];

    for gen in 2..=config.n_gen {
        for sol in 0..config.n_sol {
            let mut rng = seed::stream(seed, &[domain::UPDATE, run as u64, gen as u64, sol as u64]);
            let x = sso::update_solution(&swarm.solutions[sol], &swarm.personal[sol], &swarm.global, &config.sso, &mut rng)?;
            let f = eval(&x, gen, sol)?;
            swarm.solutions[sol] = x;
            swarm.fitness[sol] = f;
            // G is only challenged when P improves
            if f > swarm.personal_fitness[sol] {
                swarm.personal[sol] = swarm.solutions[sol].clone();
                swarm.personal_fitness[sol] = f;
                if f > swarm.global_fitness {
                    swarm.global = swarm.solutions[sol].clone();
                    swarm.global_fitness = f;
                    swarm.global_index = sol;
                    best_found_at = (gen, sol);
                }
            }
        }
        global_history.push(swarm.global_fitness);
        personal_history.push(swarm.personal_fitness.clone());
    }

    Ok(TrainedRun {
        run,
        best: swarm.global,
        best_fitness: swarm.global_fitness,
        best_found_at,
        global_history,
        personal_history,
        sims_used,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub fitness: f64,
    pub found_at_generation: usize,
    /// Mean replications per fitness-evaluated instance.
    pub mean_sims: f64,
}

impl RunRecord {
    fn from_run(r: &TrainedRun) -> Self {
        Self {
            run: r.run,
            fitness: r.best_fitness,
            found_at_generation: r.best_found_at.0,
            mean_sims: r.sims_used as f64 / r.evaluations as f64,
        }
    }
}

/// `n_run` independent trainings; the best by training fitness wins, the
/// earliest run on ties.
pub fn run_many(data: &TransformedDataset, topology: &Topology, config: &TrainConfig) -> Result<(TrainedRun, Vec<RunRecord>)> {
    config.validate()?;
    let mut best: Option<TrainedRun> = None;
    let mut records = Vec::with_capacity(config.n_run);
    for run in 0..config.n_run {
        let r = train(data, topology, config, run)?;
        log::debug!("run {run}: fitness {:.6}", r.best_fitness);
        records.push(RunRecord::from_run(&r));
        if best.as_ref().is_none_or(|b| r.best_fitness > b.best_fitness) {
            best = Some(r);
        }
    }
    Ok((best.expect("n_run >= 1"), records))
}

/// Fits the class map and transform on `raw`, trains and packages a model.
pub fn fit(raw: &RawDataset, config: &TrainConfig) -> Result<(Model, Vec<RunRecord>)> {
    config.validate()?;
    let cmap = dataset::map_classes(raw)?;
    let (spec, data) = dataset::fit_transform(raw, &cmap)?;
    let topology = Topology::new(raw.n_attributes())?;
    let (best, records) = run_many(&data, &topology, config)?;
    let model = Model::from_run(spec, &best, config)?;
    Ok((model, records))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub label: String,
    pub outcome: ImcsOutcome,
}

pub fn predict<R: rand::Rng + ?Sized>(model: &Model, instance: &[f64], rng: &mut R) -> Result<Prediction> {
    predict_with(model, instance, model.decision, rng)
}

pub fn predict_with<R: rand::Rng + ?Sized>(model: &Model, instance: &[f64], mode: DecisionMode, rng: &mut R) -> Result<Prediction> {
    let node_rel = dataset::apply_transform(&model.transform, instance)?;
    let outcome = reliability::classify(mode, &model.topology, &model.arc_rel, &node_rel, &model.bounds, rng);
    let label = model
        .transform
        .class_map
        .label_of(outcome.predicted_class)
        .ok_or(Error::UnmappedClass(outcome.predicted_class))?
        .to_string();
    Ok(Prediction { label, outcome })
}

/// Stream used for instance `index` of a prediction batch.
pub fn predict_stream(seed: u64, batch: u64, index: usize) -> seed::Stream {
    seed::stream(seed, &[domain::PREDICT, batch, index as u64])
}

/// Predicts a batch in parallel; instance `i` uses [`predict_stream`].
pub fn predict_batch(model: &Model, instances: &[Vec<f64>], mode: DecisionMode, seed: u64, batch: u64) -> Result<Vec<Prediction>> {
    instances
        .par_iter()
        .enumerate()
        .map(|(i, x)| predict_with(model, x, mode, &mut predict_stream(seed, batch, i)))
        .collect()
}

/// Confusion counts indexed `[actual][predicted]` in the fold's {0,1} coding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub label_zero: Option<String>,
    pub label_one: String,
    pub counts: [[usize; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub fold: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub theta: f64,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    /// Mean replications per test instance.
    pub mean_sims: f64,
    /// `mean_sims / n_sim`.
    pub sims_fraction: f64,
    /// Mean replications per instance over all training fitness evaluations
    /// of the selected run.
    pub train_mean_sims: f64,
    pub confusion: Confusion,
    pub runs: Vec<RunRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_secs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub mean_sims: f64,
    pub sims_fraction: f64,
    pub train_mean_sims: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValReport {
    pub folds: Vec<FoldReport>,
    pub aggregate: Aggregate,
}

impl CrossValReport {
    fn aggregate(folds: &[FoldReport]) -> Aggregate {
        let mean = |f: fn(&FoldReport) -> f64| folds.iter().map(f).sum::<f64>() / folds.len() as f64;
        Aggregate {
            train_accuracy: mean(|r| r.train_accuracy),
            test_accuracy: mean(|r| r.test_accuracy),
            mean_sims: mean(|r| r.mean_sims),
            sims_fraction: mean(|r| r.sims_fraction),
            train_mean_sims: mean(|r| r.train_mean_sims),
        }
    }

    pub fn strip_timing(&mut self) {
        self.folds.iter_mut().for_each(|f| f.wall_time_secs = None);
    }
}

/// Stratified fold assignment: each class is shuffled with its own stream and
/// dealt round-robin, continuing the rotation across classes.
pub fn stratified_folds(labels: &[String], folds: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::CrossValidation("cross-validation needs at least 2 folds".into()));
    }
    if labels.len() < folds {
        return Err(Error::CrossValidation(format!(
            "{} instances cannot fill {folds} folds",
            labels.len()
        )));
    }
    let mut classes: Vec<&String> = labels.iter().collect();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::CrossValidation("cross-validation needs both classes present".into()));
    }
    let mut out = vec![Vec::new(); folds];
    let mut next = 0usize;
    for (c, class) in classes.iter().enumerate() {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| &labels[i] == *class).collect();
        idx.shuffle(&mut seed::stream(seed, &[domain::SHUFFLE, c as u64]));
        for i in idx {
            out[next % folds].push(i);
            next += 1;
        }
    }
    out.iter_mut().for_each(|f| f.sort_unstable());
    Ok(out)
}

/// Seed for fold `fold`; every fold trains as if it were a fresh experiment.
pub fn fold_seed(master: u64, fold: usize) -> u64 {
    seed::mix(master, &[domain::FOLD, fold as u64])
}

/// Cross-validation that also hands back the model selected in each fold.
pub fn cross_validate_models(raw: &RawDataset, config: &TrainConfig) -> Result<(CrossValReport, Vec<Model>)> {
    config.validate()?;
    let assignment = stratified_folds(raw.labels(), config.folds, config.master_seed)?;
    let mut reports = Vec::with_capacity(config.folds);
    let mut models = Vec::with_capacity(config.folds);

    for (fold, test_idx) in assignment.iter().enumerate() {
        let started = Instant::now();
        let train_idx: Vec<usize> = (0..raw.len()).filter(|i| test_idx.binary_search(i).is_err()).collect();
        let train_raw = raw.subset(&train_idx)?;
        let test_raw = raw.subset(test_idx)?;
        if train_raw.distinct_labels().len() < 2 {
            return Err(Error::CrossValidation(format!("fold {fold}: training portion holds a single class")));
        }

        let fold_config = TrainConfig {
            master_seed: fold_seed(config.master_seed, fold),
            ..config.clone()
        };
        let (model, runs) = fit(&train_raw, &fold_config)?;
        let selected = runs
            .iter()
            .find(|r| r.fitness == model.fitness && r.run == model.fitness_run)
            .expect("selected run is recorded");
        let train_mean_sims = selected.mean_sims;

        let predictions = predict_batch(&model, test_raw.instances(), config.decision, fold_config.master_seed, 0)?;
        let cmap = &model.transform.class_map;
        let mut confusion = Confusion {
            label_zero: cmap.label_for_zero.clone(),
            label_one: cmap.label_for_one.clone(),
            counts: [[0; 2]; 2],
        };
        let mut correct = 0usize;
        let mut sims = 0usize;
        for (p, actual) in predictions.iter().zip(test_raw.labels()) {
            let a = cmap.class_of(actual).expect("test labels occur in training data");
            confusion.counts[a as usize][p.outcome.predicted_class as usize] += 1;
            correct += usize::from(&p.label == actual);
            sims += p.outcome.sims_used;
        }
        let n_test = test_raw.len();
        let mean_sims = sims as f64 / n_test as f64;
        reports.push(FoldReport {
            fold: fold + 1,
            n_train: train_raw.len(),
            n_test,
            theta: cmap.theta,
            train_accuracy: model.fitness,
            test_accuracy: correct as f64 / n_test as f64,
            mean_sims,
            sims_fraction: mean_sims / config.sim.n_sim as f64,
            train_mean_sims,
            confusion,
            runs,
            wall_time_secs: Some(started.elapsed().as_secs_f64()),
        });
        log::info!(
            "fold {}: test accuracy {:.4}, mean sims {:.2}",
            fold + 1,
            reports.last().unwrap().test_accuracy,
            mean_sims
        );
        models.push(model);
    }

    let aggregate = CrossValReport::aggregate(&reports);
    Ok((CrossValReport { folds: reports, aggregate }, models))
}

pub fn cross_validate(raw: &RawDataset, config: &TrainConfig) -> Result<CrossValReport> {
    cross_validate_models(raw, config).map(|(r, _)| r)
}

/// Early-stopping versus full-replication comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub imcs: CrossValReport,
    pub full_mcs: CrossValReport,
    /// Fraction of test instances on which the early-stopping and the full
    /// decision agree when both classify with the iMCS-trained fold model on
    /// the same stream.
    pub decision_agreement: f64,
    pub compared_instances: usize,
}

impl BenchReport {
    pub fn strip_timing(&mut self) {
        self.imcs.strip_timing();
        self.full_mcs.strip_timing();
    }
}

pub fn bench_sims(raw: &RawDataset, config: &TrainConfig) -> Result<BenchReport> {
    let imcs_config = TrainConfig {
        decision: DecisionMode::Imcs,
        ..config.clone()
    };
    let full_config = TrainConfig {
        decision: DecisionMode::FullMcs,
        ..config.clone()
    };
    let (imcs, models) = cross_validate_models(raw, &imcs_config)?;
    let full_mcs = cross_validate(raw, &full_config)?;

    let assignment = stratified_folds(raw.labels(), config.folds, config.master_seed)?;
    let mut agree = 0usize;
    let mut total = 0usize;
    for (fold, (model, test_idx)) in models.iter().zip(&assignment).enumerate() {
        let seed = fold_seed(config.master_seed, fold);
        let test = raw.subset(test_idx)?;
        let early = predict_batch(model, test.instances(), DecisionMode::Imcs, seed, 1)?;
        let full = predict_batch(model, test.instances(), DecisionMode::FullMcs, seed, 1)?;
        agree += early
            .iter()
            .zip(&full)
            .filter(|(a, b)| a.outcome.predicted_class == b.outcome.predicted_class)
            .count();
        total += test.len();
    }
    Ok(BenchReport {
        imcs,
        full_mcs,
        decision_agreement: agree as f64 / total as f64,
        compared_instances: total,
    })
}
