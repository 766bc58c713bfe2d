//! Human-readable tables and JSON report documents.
//!
//! JSON carries raw fractions; percentages only appear in the tables.

use std::fmt::Write;

use relnet::dataset::{RawDataset, TransformSpec};
use relnet::trainer::{Aggregate, BenchReport, CrossValReport, FoldReport, RunRecord, TrainConfig};
use relnet::Model;
use serde::Serialize;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: u32,
    pub dataset: String,
    pub seed: u64,
    pub config: TrainConfig,
    pub folds: Vec<FoldReport>,
    pub aggregate: Aggregate,
}

impl RunReport {
    pub fn new(dataset: String, config: TrainConfig, cv: CrossValReport) -> Self {
        Self {
            version: REPORT_VERSION,
            dataset,
            seed: config.master_seed,
            config,
            folds: cv.folds,
            aggregate: cv.aggregate,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self).map(|s| s + "\n")
    }
}

#[derive(Debug, Serialize)]
pub struct BenchDocument {
    pub version: u32,
    pub dataset: String,
    pub seed: u64,
    pub config: TrainConfig,
    #[serde(flatten)]
    pub bench: BenchReport,
}

impl BenchDocument {
    pub fn new(dataset: String, config: TrainConfig, bench: BenchReport) -> Self {
        Self {
            version: REPORT_VERSION,
            dataset,
            seed: config.master_seed,
            config,
            bench,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self).map(|s| s + "\n")
    }
}

fn pct(v: f64) -> String {
    format!("{:.6}%", v * 100.0)
}

pub fn inspect_table(name: &str, raw: &RawDataset, spec: &TransformSpec) -> String {
    let c = &spec.class_map;
    let mut s = String::new();
    writeln!(s, "dataset: {name} ({} instances, {} attributes)", raw.len(), raw.n_attributes()).unwrap();
    writeln!(s, "class 1: {:?} ({} instances)", c.label_for_one, c.count_one).unwrap();
    match &c.label_for_zero {
        Some(l) => writeln!(s, "class 0: {l:?} ({} instances)", c.total - c.count_one).unwrap(),
        None => writeln!(s, "class 0: (absent)").unwrap(),
    }
    writeln!(s, "theta: {} ({}/{})", c.theta, c.count_one, c.total).unwrap();
    writeln!(s, "{:>5} {:>14} {:>14} {:>10} {:>5}", "attr", "min", "max", "r_s", "flip").unwrap();
    for (j, a) in spec.attributes.iter().enumerate() {
        writeln!(s, "{:>5} {:>14.6} {:>14.6} {:>10.6} {:>5}", j + 1, a.min, a.max, a.spearman, if a.flip { "yes" } else { "no" }).unwrap();
    }
    s
}

pub fn train_summary(name: &str, model: &Model, runs: &[RunRecord]) -> String {
    let mut s = String::new();
    writeln!(s, "dataset: {name}; theta = {}; {} arcs", model.theta(), model.topology.n_var()).unwrap();
    writeln!(s, "{:>5} {:>14} {:>12} {:>10}", "run", "fitness", "found@gen", "sims/inst").unwrap();
    for r in runs {
        writeln!(s, "{:>5} {:>14} {:>12} {:>10.2}", r.run + 1, pct(r.fitness), r.found_at_generation, r.mean_sims).unwrap();
    }
    writeln!(s, "best: run {} with training accuracy {}", model.fitness_run + 1, pct(model.fitness)).unwrap();
    s
}

pub fn fold_table(name: &str, config: &TrainConfig, cv: &CrossValReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "dataset: {name}; folds = {}, runs = {}, gens = {}, sols = {}, n_sim = {}, seed = {}",
        config.folds, config.n_run, config.n_gen, config.n_sol, config.sim.n_sim, config.master_seed
    )
    .unwrap();
    writeln!(s, "{:>5} {:>14} {:>14} {:>20}", "Fold", "Train", "Test", "Sims (test)").unwrap();
    let sims = |mean: f64, frac: f64| format!("{mean:.2} ({:.2}%)", frac * 100.0);
    for f in &cv.folds {
        writeln!(s, "{:>5} {:>14} {:>14} {:>20}", f.fold, pct(f.train_accuracy), pct(f.test_accuracy), sims(f.mean_sims, f.sims_fraction)).unwrap();
    }
    let a = &cv.aggregate;
    writeln!(s, "{:>5} {:>14} {:>14} {:>20}", "Avg.", pct(a.train_accuracy), pct(a.test_accuracy), sims(a.mean_sims, a.sims_fraction)).unwrap();
    s
}

pub fn bench_table(name: &str, config: &TrainConfig, b: &BenchReport) -> String {
    let mut s = String::new();
    writeln!(s, "dataset: {name}; folds = {}, n_sim = {}, seed = {}", config.folds, config.sim.n_sim, config.master_seed).unwrap();
    writeln!(s, "{:>10} {:>14} {:>14} {:>20}", "mode", "Test", "Train sims", "Test sims").unwrap();
    for (mode, cv) in [("iMCS", &b.imcs), ("full MCS", &b.full_mcs)] {
        let a = &cv.aggregate;
        writeln!(
            s,
            "{:>10} {:>14} {:>14.2} {:>20}",
            mode,
            pct(a.test_accuracy),
            a.train_mean_sims,
            format!("{:.2} ({:.2}%)", a.mean_sims, a.sims_fraction * 100.0)
        )
        .unwrap();
    }
    writeln!(s, "decision agreement: {} over {} test instances", pct(b.decision_agreement), b.compared_instances).unwrap();
    s
}
