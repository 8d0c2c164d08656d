"""Text format and command-line surface."""

import random

import pytest

import trifactor as tf
from trifactor.cli import run_command
from trifactor.sweep import run_sweep


def test_parse_examples():
    m = tf.parse_graph("m 3\ne 0 1 2\ne 0 2 2\ne 1 2 1")
    assert tf.classify_triangle(m, (0, 1, 2)) == 5
    d = tf.parse_graph("d 2\na 0 1\na 1 0")
    assert tf.underlying_multigraph(d).mu(0, 1) == 2


def test_parse_errors_carry_positions():
    with pytest.raises(tf.ParseError) as err:
        tf.parse_graph("m 3\ne 0 0 1")
    assert err.value.line == 2
    with pytest.raises(tf.KindMismatchError):
        tf.parse_graph("d 3\ne 0 1 2")
    with pytest.raises(tf.KindMismatchError):
        tf.parse_graph("m 3\na 0 1")
    with pytest.raises(tf.ParseError):
        tf.parse_graph("m 3\nz 0 1")
    with pytest.raises(tf.ParseError):
        tf.parse_graph("")
    with pytest.raises(tf.ParseError):
        tf.parse_graph("m 3\ne 0 5 1")
    with pytest.raises(tf.ParseError):
        tf.parse_graph("m 3\ne 0 1 7")


def test_comments_and_blanks_ignored():
    text = "# heading\n\nm 3\n# middle\ne 0 1 2\n\n"
    assert tf.parse_graph(text).mu(0, 1) == 2


def test_roundtrip_random():
    rng = random.Random(8)
    for _ in range(100):
        m = tf.random_multigraph(rng.randint(0, 9), rng, 0.4, 0.3)
        assert tf.parse_graph(tf.format_graph(m)) == m
        d = tf.random_digraph(rng.randint(0, 7), rng, 0.5)
        assert tf.parse_graph(tf.format_graph(d)) == d
    # canonical text is a fixed point
    m = tf.random_multigraph(7, rng, 0.5, 0.3)
    text = tf.format_graph(m)
    assert tf.format_graph(tf.parse_graph(text)) == text


def test_masked_graph_not_serializable():
    m = tf.build_multigraph(4, [(0, 1, 2)]).delete(3)
    with pytest.raises(ValueError):
        tf.format_graph(m)


def test_gen_command(tmp_path):
    code, text = run_command(["gen", "--kind", "cyclic-tight", "--k", "4"])
    assert code == 0
    g = tf.parse_graph(text)
    assert g.n == 9 and g.min_total_degree() == 11
    code, text = run_command(["gen", "--kind", "split-tight", "--k", "4"])
    assert code == 0
    m = tf.parse_graph(text)
    assert m.min_degree() == 11
    code, text = run_command(
        ["gen", "--kind", "factor-tight", "--k", "3", "--variant", "literal"]
    )
    assert tf.parse_graph(text).min_total_degree() == 0


def test_tile_command_below_threshold_exits_zero(tmp_path):
    k33 = tf.build_simple_graph(6, [(u, v) for u in range(3) for v in range(3, 6)])
    path = tmp_path / "k33.txt"
    path.write_text(tf.format_graph(k33.to_multigraph()))
    code, text = run_command(["tile", "--spec", "c3", "--in", str(path)])
    assert code == 0
    assert "status=absent" in text


def test_tile_command_found(tmp_path):
    m = tf.build_multigraph(3, [(0, 1, 2), (0, 2, 2), (1, 2, 1)])
    path = tmp_path / "t.txt"
    path.write_text(tf.format_graph(m))
    code, text = run_command(["tile", "--spec", "t4", "--in", str(path)])
    assert code == 0
    assert "status=found" in text and "tile 0 1 2" in text


def test_cyclic_and_mixed_commands(tmp_path):
    k6 = tf.build_digraph(6, [(u, v) for u in range(6) for v in range(6) if u != v])
    path = tmp_path / "k6.txt"
    path.write_text(tf.format_graph(k6))
    code, text = run_command(["cyclic", "--in", str(path)])
    assert code == 0 and text.splitlines()[0] == "found=2 target=2"
    code, text = run_command(
        ["mixed", "--cyclic", "1", "--transitive", "1", "--in", str(path)]
    )
    assert code == 0
    kinds = sorted(line.split()[0] for line in text.splitlines()[1:])
    assert kinds == ["cyclic", "transitive"]
    code, text = run_command(
        ["mixed", "--cyclic", "2", "--transitive", "0", "--in", str(path)]
    )
    assert code == 2 and "error" in text


def test_oracle_command(tmp_path):
    inst = tf.cyclic_tiling_extremal(4)
    path = tmp_path / "ex1.txt"
    path.write_text(tf.format_graph(inst.graph))
    code, text = run_command(
        ["oracle", "--spec", "cyclic", "--factor", "--in", str(path)]
    )
    assert code == 0 and text.startswith("absent")


def test_sweep_exit_codes():
    code, text = run_command(
        ["sweep", "--spec", "t4", "--n", "4", "--delta-min", "5", "--workers", "1"]
    )
    assert code == 0 and "failures=0" in text
    code2, text2 = run_command(
        ["sweep", "--spec", "t4", "--kind", "multigraph", "--n", "4",
         "--delta-min", "5", "--workers", "1"]
    )
    assert (code2, text2.splitlines()[1]) == (code, text.splitlines()[1])
    # below-threshold space contains genuine misses: nonzero exit
    code, text = run_command(
        ["sweep", "--spec", "t5", "--n", "3", "--delta-min", "2", "--workers", "1"]
    )
    assert code == 1 and "failure:" in text


def test_sweep_shard_union():
    full = run_sweep("t4", 4, delta_min=4, workers=1)
    shards = [
        run_sweep("t4", 4, delta_min=4, shard_index=i, shard_count=4, workers=1)
        for i in range(4)
    ]
    assert full.scanned == sum(s.scanned for s in shards)
    assert full.successes == sum(s.successes for s in shards)
    merged = []
    for s in shards:
        merged.extend(s.failures)
    assert merged == full.failures


def test_sweep_digraph_kind():
    # cyclic-tiling sweep over all 64 labelled digraphs on 3 vertices with
    # total degree >= 3: a cyclic triangle always exists there
    rep = run_sweep("cyclic", 3, delta_min=3, workers=1)
    assert rep.failures == [] and rep.scanned > 0
    # one notch below the threshold there are genuine misses
    rep2 = run_sweep("cyclic", 3, delta_min=2, workers=1)
    assert rep2.failures


def test_sweep_parallel_matches_serial():
    serial = run_sweep("t5", 5, delta_min=6, workers=1)
    parallel = run_sweep("t5", 5, delta_min=6, workers=2)
    assert serial.scanned == parallel.scanned
    assert serial.successes == parallel.successes
    assert serial.failures == parallel.failures


def test_conjecture_command(tmp_path):
    out = tmp_path / "probe.txt"
    code, text = run_command(
        [
            "conjecture",
            "--n", "9",
            "--samples", "50",
            "--seed", "3",
            "--out", str(out),
        ]
    )
    assert code == 0
    assert "samples=50" in text
    assert out.read_text().startswith("probe n=9")


def test_stability_command(tmp_path):
    inst = tf.heavy_split_extremal(7)
    gpath = tmp_path / "split.txt"
    gpath.write_text(tf.format_graph(inst.graph))
    cfg = tmp_path / "params.cfg"
    cfg.write_text("epsilon=0.1\nalpha=0.01\nseed=1\n")
    code, text = run_command(
        ["stability", "--in", str(gpath), "--config", str(cfg)]
    )
    assert code == 0
    assert "status=absent stage=splittability" in text


def test_sweep_report_golden():
    rep = run_sweep("t4", 3, delta_min=3, workers=1)
    lines = rep.lines()
    assert lines[0] == "sweep kind=multigraph n=3 spec=t4 filter=delta>=3 shard=-"
    assert lines[1].split(" elapsed=")[0] == "scanned=4 successes=4 failures=0"


def test_gen_golden():
    code, text = run_command(["gen", "--kind", "cyclic-tight", "--k", "1"])
    assert code == 0
    assert text == "d 3\na 0 1\na 0 2\na 1 2\na 2 1"


def test_stability_command_flags_path(tmp_path):
    import random

    m = tf.random_multigraph_min_degree(60, random.Random(40), 89, p2=0.8)
    gpath = tmp_path / "dense.txt"
    gpath.write_text(tf.format_graph(m))
    code, text = run_command(
        ["stability", "--in", str(gpath), "--epsilon", "0.1",
         "--alpha", "0.02", "--seed", "5"]
    )
    assert code == 0
    assert "status=found" in text and "tiles=20" in text
    code, text = run_command(["stability", "--in", str(gpath)])
    assert code == 2  # neither config nor flags


def test_usage_error_exit_code():
    code, _ = run_command(["tile"])  # missing --spec
    assert code == 2
    code, _ = run_command(["nonsense"])
    assert code == 2
