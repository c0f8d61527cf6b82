import pytest

from netsiege.experiment import (
    CSV_HEADER,
    ConfigError,
    build_experiment_config,
    build_game_config,
    emit_csv,
    expand_jobs,
    parse_config_text,
    run_experiment,
    run_traces,
    summarize,
)

TINY = """
generator.m0 = 5
generator.edges_per_node = 2
generator.target_n = 40
attack.kind = vertex_order
attack.budget = 3
defense.replenish = random
defense.adapt = none
rounds = 2
seeds = 1,2
output = out.csv
"""


def tiny_values(**overrides):
    values = parse_config_text(TINY)
    values.update({k: str(v) for k, v in overrides.items()})
    return values


def test_parse_config_text_roundtrip():
    values = parse_config_text("attack.kind = centrality\n# note\n\nrounds = 3\n")
    assert values == {"attack.kind": "centrality", "rounds": "3"}


def test_parse_config_rejects_unknown_keys_and_bad_lines():
    with pytest.raises(ConfigError) as err:
        parse_config_text("attack.kid = centrality\nrounds 3\n")
    assert len(err.value.problems) == 2


def test_build_game_config_collects_all_problems():
    values = tiny_values(**{"attack.budget": "lots", "rounds": "-2"})
    with pytest.raises(ConfigError) as err:
        build_game_config(values, seed=1)
    joined = " ".join(err.value.problems)
    assert "attack.budget" in joined and "rounds" in joined


def test_default_seed_batch_is_twenty():
    cfg = build_experiment_config({"rounds": "0"})
    assert cfg.seeds == list(range(1, 21))


def test_seed_range_form():
    cfg = build_experiment_config({"seeds.start": "100", "seeds.count": "3"})
    assert cfg.seeds == [100, 101, 102]


def test_sweep_validation():
    with pytest.raises(ConfigError):
        build_experiment_config({"sweep.param": "defense.group_size"})
    with pytest.raises(ConfigError):
        build_experiment_config({"sweep.values": "8,12"})
    with pytest.raises(ConfigError):
        build_experiment_config({"sweep.param": "output", "sweep.values": "a,b"})
    cfg = build_experiment_config(
        {"sweep.param": "defense.group_size", "sweep.values": "8,12",
         "defense.adapt": "clique"}
    )
    assert cfg.sweep_values == ["8", "12"]


def test_jobs_ordered_sweep_outer_seeds_inner():
    cfg = build_experiment_config(
        tiny_values(**{"sweep.param": "attack.budget", "sweep.values": "1,2"})
    )
    jobs = expand_jobs(cfg)
    assert [(j.run_id, j.sweep_value, j.seed) for j in jobs] == [
        (0, "1", 1), (1, "1", 2), (2, "2", 1), (3, "2", 2),
    ]
    assert jobs[0].config.attack.budget_r == 1
    assert jobs[2].config.attack.budget_r == 2


def test_emit_csv_shape(tmp_path):
    cfg = build_experiment_config(tiny_values(seeds="5"))
    jobs = expand_jobs(cfg)
    traces = run_traces([j.config for j in jobs], workers=1)
    out = tmp_path / "r.csv"
    rows = emit_csv(list(zip(jobs, traces)), out)
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert rows == 3 and len(lines) == 4  # rounds+1 data rows
    first = lines[1].split(",")
    assert first[:5] == ["0", "5", "", "", "0"]
    # connected initial graph with no adaptation: round-0 lcc equals nodes
    assert first[5] == first[7]
    aigl = first[8]
    assert len(aigl.split(".")[1]) == 6
    assert 0.0 <= float(aigl) <= 1.0


def test_single_seed_zero_rounds_single_row(tmp_path):
    cfg = build_experiment_config(tiny_values(seeds="9", rounds="0"))
    jobs = expand_jobs(cfg)
    traces = run_traces([j.config for j in jobs], workers=1)
    rows = emit_csv(list(zip(jobs, traces)), tmp_path / "one.csv")
    assert rows == 1


def test_run_experiment_deterministic_bytes(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        cfg = build_experiment_config(tiny_values(output=str(out)))
        run_experiment(cfg)
    assert out1.read_bytes() == out2.read_bytes()


def test_parallel_equals_serial(tmp_path):
    serial = build_experiment_config(tiny_values(output=str(tmp_path / "s.csv")))
    serial.workers = 1
    parallel = build_experiment_config(tiny_values(output=str(tmp_path / "p.csv")))
    parallel.workers = 2
    run_experiment(serial)
    run_experiment(parallel)
    assert (tmp_path / "s.csv").read_bytes() == (tmp_path / "p.csv").read_bytes()


def test_summary_per_round_stats():
    cfg = build_experiment_config(tiny_values())
    jobs = expand_jobs(cfg)
    traces = run_traces([j.config for j in jobs], workers=1)
    summary = summarize(list(zip(jobs, traces)))
    (group,) = summary.groups
    assert len(group.per_round) == 3
    by_round = {rs.round for rs in group.per_round}
    assert by_round == {0, 1, 2}
    lccs = [t.records[0].lcc_size for t in traces]
    assert group.per_round[0].lcc_mean == pytest.approx(sum(lccs) / len(lccs))
    assert group.per_round[0].lcc_std >= 0.0


def test_summary_equilibrium_uses_last_window():
    cfg = build_experiment_config(tiny_values(seeds="3", rounds="1"))
    jobs = expand_jobs(cfg)
    traces = run_traces([j.config for j in jobs], workers=1)
    summary = summarize(list(zip(jobs, traces)))
    recs = traces[0].records
    want = (recs[0].lcc_size + recs[1].lcc_size) / 2
    assert summary.groups[0].equilibrium_lcc == pytest.approx(want)
