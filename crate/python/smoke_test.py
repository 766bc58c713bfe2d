"""Smoke test for the relnet_py extension module.

Build and run:
    cargo build --release -p relnet-py --features extension-module
    cp target/release/librelnet_py.so python/relnet_py.so
    python3 python/smoke_test.py
"""

import json
import math
import os
import random
import sys
import tempfile

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import relnet_py as rn  # noqa: E402


def separable(n, seed):
    rng = random.Random(seed)
    xs, ys = [], []
    for i in range(n):
        pos = i % 5 < 3
        base = 0.8 if pos else 0.2
        xs.append([base + rng.uniform(-0.15, 0.15) for _ in range(3)])
        ys.append("pos" if pos else "neg")
    return xs, ys


def main():
    t = rn.Topology(2)
    assert t.n_var == 5 and t.source == 0 and t.sink == 3
    assert rn.ARC_ORDERING == "pairs-then-source-then-sink"

    # one attribute: source -> node -> sink in series
    exact = rn.Topology(1).exact_reliability([0.8, 0.5], [0.9])
    assert math.isclose(exact, 0.36, abs_tol=1e-12), exact
    est = rn.Topology(1).mcs_estimate([0.8, 0.5], [0.9], n_sim=20000, seed=1)
    assert abs(est - 0.36) < 0.03, est

    bounds = rn.build_bounds(0.5)
    first = bounds["intervals"][0]
    assert first["n_sim"] == 100 and abs(first["delta"] - 0.059995) < 1e-5
    last = bounds["intervals"][-1]
    assert last["lb"] == last["ub"] == 1000.0

    out = t.classify([1.0] * 5, [1.0, 1.0], 0.6, seed=3)
    assert out["predicted_class"] == 1 and out["sims_used"] == 100

    xs, ys = separable(60, 5)
    data = rn.Dataset(xs, ys)
    assert len(data) == 60 and data.n_attributes == 3
    assert data.transform()["class_map"]["label_for_one"] == "pos"

    config = rn.default_config()
    config.update(n_run=1, n_gen=5, n_sol=4, folds=3, master_seed=11)
    model, runs = rn.fit(data, config)
    assert len(runs) == 1 and model.n_attributes == 3
    preds = model.predict(xs, seed=2)
    acc = sum(p == y for p, y in zip(preds, ys)) / len(ys)
    assert acc > 0.6, acc
    assert preds == model.predict(xs, seed=2)

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "m.json")
        model.save(path)
        again = rn.Model.load(path)
        assert again.to_json() == model.to_json()
        assert again.arc_rel == model.arc_rel

        csv = os.path.join(d, "d.csv")
        with open(csv, "w") as f:
            for x, y in zip(xs, ys):
                f.write(",".join(map(str, x)) + f",{y}\n")
        assert len(rn.Dataset.load(csv)) == 60

    report = rn.cross_validate(data, config)
    assert len(report["folds"]) == 3
    assert 0.0 <= report["aggregate"]["test_accuracy"] <= 1.0
    assert json.dumps(report) == json.dumps(rn.cross_validate(data, config))

    try:
        rn.Dataset([[1.0], [2.0], [3.0]], ["a", "b", "c"])
    except ValueError as e:
        assert "more than two classes" in str(e)
    else:
        raise AssertionError("three labels accepted")

    print("smoke test passed: train accuracy %.3f, cv test accuracy %.3f" % (acc, report["aggregate"]["test_accuracy"]))


if __name__ == "__main__":
    main()
