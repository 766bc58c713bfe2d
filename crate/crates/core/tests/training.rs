mod common;

use relnet::dataset::{fit_transform, map_classes};
use relnet::reliability::{DecisionMode, SimParams};
use relnet::trainer::{self, predict, predict_stream, TrainConfig};
use relnet::{Error, Model, Topology};

fn quick(seed: u64) -> TrainConfig {
    TrainConfig {
        n_run: 2,
        n_gen: 8,
        n_sol: 5,
        folds: 5,
        master_seed: seed,
        ..Default::default()
    }
}

#[test]
fn recorded_bests_never_decrease() {
    let raw = common::separable(80, 3, 0.6, 0.45, 1);
    let (_, data) = fit_transform(&raw, &map_classes(&raw).unwrap()).unwrap();
    let t = Topology::new(3).unwrap();
    let run = trainer::train(&data, &t, &quick(1), 0).unwrap();
    assert_eq!(run.global_history.len(), 8);
    for w in run.global_history.windows(2) {
        assert!(w[1] >= w[0]);
    }
    for w in run.personal_history.windows(2) {
        for (a, b) in w[0].iter().zip(&w[1]) {
            assert!(b >= a);
        }
    }
    let last_p = run.personal_history.last().unwrap();
    assert!(last_p.iter().all(|&p| p <= run.best_fitness));
}

#[test]
fn final_fitness_replays_exactly() {
    let raw = common::separable(60, 3, 0.6, 0.4, 2);
    let (model, _) = trainer::fit(&raw, &quick(2)).unwrap();
    let (_, data) = fit_transform(&raw, &map_classes(&raw).unwrap()).unwrap();
    let replay = trainer::fitness(
        &model.arc_rel,
        &data,
        &model.topology,
        &model.bounds,
        model.decision,
        model.seed,
        &model.fitness_path(),
    )
    .unwrap();
    assert_eq!(replay, model.fitness);
}

#[test]
fn same_seed_same_model_different_runs_differ() {
    let raw = common::separable(50, 3, 0.6, 0.4, 3);
    let (a, ra) = trainer::fit(&raw, &quick(3)).unwrap();
    let (b, rb) = trainer::fit(&raw, &quick(3)).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(ra, rb);

    let (_, data) = fit_transform(&raw, &map_classes(&raw).unwrap()).unwrap();
    let t = Topology::new(3).unwrap();
    let r0 = trainer::train(&data, &t, &quick(3), 0).unwrap();
    let r1 = trainer::train(&data, &t, &quick(3), 1).unwrap();
    assert_ne!(r0.best, r1.best);
}

#[test]
fn predictions_map_back_to_labels() {
    let raw = common::separable(80, 3, 0.6, 0.2, 4);
    let (model, _) = trainer::fit(&raw, &quick(4)).unwrap();
    assert!(model.fitness > model.theta());

    // a clean majority instance
    let p = predict(&model, &[1.0, 1.0, 1.0], &mut predict_stream(4, 0, 0)).unwrap();
    assert_eq!(p.label, "pos");
    let p = predict(&model, &[0.0, 0.0, 0.0], &mut predict_stream(4, 0, 1)).unwrap();
    assert_eq!(p.label, "neg");

    let err = predict(&model, &[1.0, 1.0], &mut predict_stream(4, 0, 2)).unwrap_err();
    assert!(matches!(err, Error::AttributeCount { expected: 3, got: 2 }));

    // a dead network reports class 0 after the first block
    let dead = Model::new(model.transform.clone(), vec![0.0; model.topology.n_var()], SimParams::default(), DecisionMode::Imcs).unwrap();
    let p = predict(&dead, &[1.0, 1.0, 1.0], &mut predict_stream(4, 0, 3)).unwrap();
    assert_eq!(p.label, "neg");
    assert_eq!(p.outcome.sims_used, 100);
    assert_eq!(p.outcome.omega_at_stop, 0);
}

#[test]
fn cross_validation_report_shape() {
    let raw = common::separable(100, 2, 0.6, 0.3, 5);
    let config = TrainConfig {
        n_run: 1,
        n_gen: 3,
        n_sol: 3,
        folds: 10,
        master_seed: 5,
        sim: SimParams { n_sim: 1000, ..Default::default() },
        ..Default::default()
    };
    let report = trainer::cross_validate(&raw, &config).unwrap();
    assert_eq!(report.folds.len(), 10);
    for f in &report.folds {
        assert_eq!(f.n_test, 10);
        assert_eq!(f.n_train, 90);
        assert!((0.0..=1.0).contains(&f.test_accuracy));
        assert!(f.sims_fraction > 0.0 && f.sims_fraction <= 1.0);
        assert_eq!(f.sims_fraction, f.mean_sims / 1000.0);
        assert_eq!(f.confusion.counts.iter().flatten().sum::<usize>(), 10);
        assert_eq!(f.runs.len(), 1);
        assert!(f.wall_time_secs.is_some());
    }
    let mean = report.folds.iter().map(|f| f.test_accuracy).sum::<f64>() / 10.0;
    assert_eq!(report.aggregate.test_accuracy, mean);
}

#[test]
fn cross_validation_rejects_degenerate_inputs() {
    let raw = common::separable(30, 2, 0.6, 0.3, 6);
    let mut config = quick(6);
    config.folds = 1;
    assert!(matches!(trainer::cross_validate(&raw, &config), Err(Error::CrossValidation(_))));
    config.folds = 40;
    assert!(matches!(trainer::cross_validate(&raw, &config), Err(Error::CrossValidation(_))));

    let one_class = common::separable(30, 2, 1.0, 0.3, 6);
    config.folds = 3;
    assert!(matches!(trainer::cross_validate(&one_class, &config), Err(Error::CrossValidation(_))));
}

#[test]
fn bench_compares_both_modes() {
    let raw = common::separable(40, 2, 0.6, 0.2, 8);
    let config = TrainConfig {
        n_run: 1,
        n_gen: 3,
        n_sol: 3,
        folds: 4,
        master_seed: 8,
        ..Default::default()
    };
    let bench = trainer::bench_sims(&raw, &config).unwrap();
    assert_eq!(bench.compared_instances, 40);
    assert!(bench.full_mcs.folds.iter().all(|f| f.sims_fraction == 1.0));
    assert!(bench.imcs.aggregate.sims_fraction < 1.0);
    assert!((0.0..=1.0).contains(&bench.decision_agreement));
}

#[test]
fn model_file_round_trip() {
    let raw = common::separable(40, 2, 0.6, 0.3, 9);
    let (model, _) = trainer::fit(&raw, &quick(9)).unwrap();
    let dir = std::env::temp_dir().join(format!("relnet-model-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    model.save(&path).unwrap();
    let back = Model::load(&path).unwrap();
    assert_eq!(back, model);
    assert_eq!(back.to_json().unwrap(), std::fs::read_to_string(&path).unwrap());
    std::fs::remove_dir_all(dir).ok();
}
