import numpy as np
import pytest

from dirclust import (
    DataFormatError,
    ExperimentPlan,
    Target,
    TransportError,
    compute_curves,
    embed_all,
    emit_plot_data,
    kmeans,
    load_run_log,
    run_bruteforce,
    run_experiment,
    save_report,
    tokenize_all,
    wordlist_from_paths,
)
from dirclust.bench import parse_plot_data
from synthcorpus import family_corpus


def small_experiment(tmp_path=None, repetitions=3):
    wl, families = family_corpus(sizes=(12, 12, 12), seed=1)
    target = Target.simulated(families["fam0"])
    emb = embed_all(tokenize_all(wl), dim=128, seed=0)
    model = kmeans(emb, 3, seed=0)
    return ExperimentPlan(
        target=target, wordlist=wl, model=model, repetitions=repetitions,
        base_seed=100, output_dir=tmp_path,
    )


def test_single_log_mean_is_curve_std_zero():
    wl = wordlist_from_paths(["/a", "/b", "/c"])
    target = Target.simulated(["/a", "/b"])
    log = run_bruteforce(target, wl, seed=0)
    report = compute_curves({"bruteforce": [log]})
    assert np.array_equal(report.curves["bruteforce"].mean_curve, log.cumulative_valid)
    assert np.all(report.curves["bruteforce"].std_curve == 0.0)


def test_identical_logs_zero_std():
    wl = wordlist_from_paths(["/a", "/b"])
    target = Target.simulated(["/a", "/b"])
    logs = [run_bruteforce(target, wl, seed=1), run_bruteforce(target, wl, seed=1)]
    report = compute_curves({"bruteforce": logs})
    assert np.all(report.curves["bruteforce"].std_curve == 0.0)
    assert list(report.curves["bruteforce"].mean_curve) == [1.0, 2.0]


def test_mismatched_lengths_rejected():
    short = run_bruteforce(Target.simulated(["/a"]), wordlist_from_paths(["/a", "/b"]), 0)
    long = run_bruteforce(Target.simulated(["/a"]), wordlist_from_paths(["/a", "/b", "/c"]), 0)
    with pytest.raises(DataFormatError):
        compute_curves({"bruteforce": [short, long]})


def test_auc_analytic_oracle():
    # E[cum(t)] = V*t/n gives E[auc] = sum(V*t/n)/(n*V) = (n+1)/(2n)
    n, v, reps = 100, 50, 1000
    wl = wordlist_from_paths([f"/p{i}" for i in range(n)])
    target = Target.simulated([f"/p{i}" for i in range(v)])
    logs = [run_bruteforce(target, wl, seed=s) for s in range(reps)]
    report = compute_curves({"bruteforce": logs})
    expected = (n + 1) / (2 * n)
    assert report.curves["bruteforce"].auc == pytest.approx(expected, abs=0.01)


def test_all_valid_no_information_to_exploit():
    wl, families = family_corpus(sizes=(8, 8), seed=2)
    all_paths = [e.raw for e in wl]
    target = Target.simulated(all_paths)
    emb = embed_all(tokenize_all(wl), dim=64, seed=0)
    model = kmeans(emb, 2, seed=0)
    plan = ExperimentPlan(target=target, wordlist=wl, model=model, repetitions=3, base_seed=0)
    report = run_experiment(plan)
    n = len(wl)
    for curves in report.curves.values():
        assert list(curves.mean_curve) == [float(i + 1) for i in range(n)]
    assert report.improvement == pytest.approx(0.0, abs=1e-12)


def test_requests_to_full_and_95():
    wl = wordlist_from_paths(["/a", "/b", "/c", "/d"])
    target = Target.simulated(["/a", "/b"])
    logs = [run_bruteforce(target, wl, seed=s) for s in range(5)]
    report = compute_curves({"bruteforce": logs})
    for log, full in zip(logs, report.curves["bruteforce"].requests_to_full_discovery):
        cum = log.cumulative_valid
        assert cum[full - 1] == 2
        assert full == 1 or cum[full - 2] < 2


def test_repetitions_one_both_strategies():
    plan = small_experiment(repetitions=1)
    report = run_experiment(plan)
    assert set(report.curves) == {"bruteforce", "clustered"}
    n = len(plan.wordlist)
    for curves in report.curves.values():
        assert len(curves.mean_curve) == n == len(curves.std_curve)


def test_mean_curves_end_exactly_at_total_valid():
    report = run_experiment(small_experiment())
    for curves in report.curves.values():
        assert curves.mean_curve[-1] == float(report.total_valid)


def test_plot_data_shape_and_round_trip(tmp_path):
    wl = wordlist_from_paths(["/a", "/b", "/c"])
    target = Target.simulated(["/a"])
    logs = {
        "bruteforce": [run_bruteforce(target, wl, seed=0)],
        "clustered": [run_bruteforce(target, wl, seed=1)],
    }
    logs["clustered"][0].strategy = "clustered"
    report = compute_curves(logs)
    f = tmp_path / "plot.tsv"
    emit_plot_data(report, f)
    lines = f.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "index\tstrategy\tmean\tstd"
    assert len(lines) == 1 + 2 * 3
    parsed = parse_plot_data(f)
    for strategy, curves in report.curves.items():
        mean, std = parsed[strategy]
        assert np.array_equal(mean, np.round(curves.mean_curve, 6))
        assert np.array_equal(std, np.round(curves.std_curve, 6))


def test_report_file_summary_block(tmp_path):
    report = run_experiment(small_experiment())
    f = tmp_path / "report.tsv"
    save_report(report, f)
    text = f.read_text(encoding="utf-8")
    assert f"# total_valid={report.total_valid}" in text
    assert "# improvement_full=" in text
    assert "# improvement_95pct=" in text
    parsed = parse_plot_data(f)
    assert set(parsed) == {"bruteforce", "clustered"}


def test_report_pure_function_of_persisted_logs(tmp_path):
    plan = small_experiment(tmp_path=tmp_path / "exp")
    report = run_experiment(plan)
    reloaded = {
        strategy: [
            load_run_log(tmp_path / "exp" / f"run_{strategy}_seed{plan.base_seed + r}.csv")
            for r in range(plan.repetitions)
        ]
        for strategy in plan.strategies
    }
    recomputed = compute_curves(reloaded)
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    emit_plot_data(report, a)
    emit_plot_data(recomputed, b)
    assert a.read_bytes() == b.read_bytes()


def test_experiment_persists_artifacts(tmp_path):
    out = tmp_path / "exp"
    plan = small_experiment(tmp_path=out, repetitions=2)
    run_experiment(plan)
    names = sorted(p.name for p in out.iterdir())
    assert "plot.tsv" in names and "report.tsv" in names
    for strategy in ("bruteforce", "clustered"):
        for seed in (100, 101):
            assert f"run_{strategy}_seed{seed}.csv" in names


def test_brute_force_mean_deviation_shrinks_with_repetitions():
    n, v = 100, 20
    wl = wordlist_from_paths([f"/p{i}" for i in range(n)])
    target = Target.simulated([f"/p{i}" for i in range(v)])
    t = np.arange(1, n + 1)
    line = v * t / n

    def max_dev(reps, base_seed):
        curves = np.stack([
            run_bruteforce(target, wl, seed=base_seed + s).cumulative_valid
            for s in range(reps)
        ])
        return float(np.abs(curves.mean(axis=0) - line).max())

    assert max_dev(300, base_seed=0) < max_dev(30, base_seed=5000)


def test_transport_abort_keeps_partial_artifacts(tmp_path):
    wl = wordlist_from_paths(["/a", "/b"])
    target = Target.http("http://127.0.0.1:9", retries=0, timeout=0.5)
    out = tmp_path / "exp"
    plan = ExperimentPlan(
        target=target, wordlist=wl, repetitions=1, base_seed=0,
        strategies=("bruteforce",), output_dir=out,
    )
    with pytest.raises(TransportError):
        run_experiment(plan)
    assert (out / "run_bruteforce_seed0_partial.csv").exists()


def test_plan_validation():
    wl = wordlist_from_paths(["/a"])
    target = Target.simulated(["/a"])
    with pytest.raises(ValueError):
        ExperimentPlan(target=target, wordlist=wl, repetitions=0, strategies=("bruteforce",))
    with pytest.raises(ValueError):
        ExperimentPlan(target=target, wordlist=wl, strategies=("nonsense",))
    with pytest.raises(DataFormatError):
        ExperimentPlan(target=target, wordlist=wl, strategies=("clustered",))  # no model
