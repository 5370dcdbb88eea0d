"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL ...`` line.
"""

import hashlib
import time
from fractions import Fraction
from math import prod

import numpy as np
import pytest

from cycleturan import cli
from cycleturan.constructions import polarity_graph
from cycleturan.counting import contains_cycle_of_length, count_path_copies
from cycleturan.extremal.checks import check_consecutive_odd_constant
from cycleturan.extremal.search import brute_force_ex
from cycleturan.extremal.suites import run_suite
from cycleturan.graph import Graph, blow_up
from cycleturan.testing.maxcut import bipartite_distance
from cycleturan.testing.testers import TesterConfig, separation_experiment

TARGETS = ["C3", "C4", "C5", "P2", "P3"]
FORBIDDEN = [3, 4, 5, 6, 7]
RANDOM_SUITES = ["consecutive-odd", "lambda-path", "forbidden-cycles", "p2", "triangle", "erdos-gallai", "zarankiewicz"]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def exact_cells():
    """brute_force_ex for every (n <= 8, target, forbidden) cell with its time."""
    cells = {}
    for n in range(1, 9):
        for t in TARGETS:
            for ell in FORBIDDEN:
                cells[(n, t, ell)] = _timed(lambda: brute_force_ex(n, t, ell))
    return cells


def test_criterion_1_polarity(report):
    t0 = time.perf_counter()
    problems = []
    for p in (3, 5, 7, 11, 13):
        g, loops = polarity_graph(p, return_loops=True)
        n = g.n
        if contains_cycle_of_length(g, 4):
            problems.append(f"p={p}: C4 found")
        if not set(g.degrees().tolist()) <= {p - 1, p}:
            problems.append(f"p={p}: degrees {sorted(set(g.degrees().tolist()))}")
        if loops > 2 * p:
            problems.append(f"p={p}: {loops} loops")
        a = g.adjacency_matrix().astype(np.int64)
        no_common = int(np.triu((a @ a) == 0, 1).sum())
        if no_common > 3 * n * p:
            problems.append(f"p={p}: {no_common} pairs without common neighbour")
        for k in range(1, 5):
            bound = Fraction(n * prod(p - i for i in range(1, k + 1)), 2)
            if count_path_copies(g, k) < bound:
                problems.append(f"p={p}: P{k} count below bound")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 60
    report(1, ok, f"polarity p in 3,5,7,11,13 exact checks in {elapsed:.1f}s {problems}")


def test_criterion_2_partition_identity(report):
    summary, elapsed = _timed(lambda: run_suite("partition-identity", "all", seed=1))
    ok = summary.failed == 0 and summary.applicable == 209 * 4 and elapsed < 600
    report(2, ok, f"{summary.applicable} identities over all graphs n<=6, k in 3,4, {summary.failed} failures, {elapsed:.1f}s")


def test_criterion_3_exact_values(report, exact_cells, ex_oracle, ex_n8):
    mismatches = [
        key for key, (rec, _) in exact_cells.items() if key[0] <= 7 and rec.value != ex_oracle["%d,%s,%d" % key]
    ]
    n8_mismatch = [key for key, (rec, _) in exact_cells.items() if key[0] == 8 and rec.value != ex_n8["%d,%s,%d" % key]]
    bad_witness = [key for key, (rec, _) in exact_cells.items() if not rec.verify()]
    spot = (brute_force_ex(5, "C3", {5}).value, brute_force_ex(6, "C4", {3}).value)
    t7 = max(dt for (n, _, _), (_, dt) in exact_cells.items() if n == 7)
    t8 = max(dt for (n, _, _), (_, dt) in exact_cells.items() if n == 8)
    ok = not mismatches and not n8_mismatch and not bad_witness and spot == (4, 9) and t7 < 60 and t8 < 3600
    report(
        3,
        ok,
        f"oracle cells n<=7 mismatches={mismatches} n=8 mismatches={n8_mismatch} spot={spot} "
        f"slowest n=7 cell {t7:.2f}s, slowest n=8 cell {t8:.2f}s",
    )


def test_criterion_4_explicit_constant(report, exact_cells):
    values = {n: exact_cells[(n, "C5", 7)][0].value for n in range(1, 9)}
    ok = all(v <= 20000 * n * n and check_consecutive_odd_constant(n, v, 2) for n, v in values.items())
    report(4, ok, f"ex(n,C5,C7) for n=1..8: {list(values.values())} all <= 20000 n^2")


def test_criterion_5_random_suites(report):
    t0 = time.perf_counter()
    lines = []
    ok = True
    for name in RANDOM_SUITES:
        s = run_suite(name, 10_000, seed=1)
        ok &= s.failed == 0 and s.applicable >= 10_000
        lines.append(f"{name}:{s.applicable}/{s.failed}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1800
    report(5, ok, f"applicable/failures {' '.join(lines)} in {elapsed:.1f}s")


def test_criterion_6_blowup_distance(report):
    results = {}
    for m in range(1, 6):
        g, _ = blow_up(Graph.cycle(5), [m] * 5)
        results[m] = bipartite_distance(g, "exact")
    ok = all(d == m * m and far == Fraction(1, 25) for m, (d, far) in results.items())
    report(6, ok, f"distances {[d for d, _ in results.values()]} = m^2, farness 1/25 >= 1/50")


def test_criterion_7_separation(report):
    cfg = TesterConfig(epsilon=Fraction(1, 50), trials=200, seed=7)
    out, elapsed = _timed(lambda: separation_experiment([101, 501, 1001], cfg))
    rows = out["rows"]
    floors = [r["one_sided_floor"] for r in rows]
    zero_below = all(r["one_sided_zero_below_floor"] for r in rows)
    one_q = [r["one_sided"]["minimal_q"] for r in rows]
    ivals = [tuple(r["two_sided"]["minimal_q_interval"]) for r in rows]
    ok = (
        floors == [101, 501, 1001]
        and zero_below
        and all(q >= l2 for q, l2 in zip(one_q, floors))
        and out["two_sided_intervals_overlap"]
        and out["two_sided_max_upper"] < 1000
        and elapsed < 7200
    )
    report(
        7,
        ok,
        f"one-sided floors {floors} (zero below floor: {zero_below}), one-sided minimal q {one_q}, "
        f"two-sided minimal-q intervals {ivals} overlap={out['two_sided_intervals_overlap']}, {elapsed:.0f}s",
    )


def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_criterion_8_reproducibility(report, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runs = [
        (["construct", "polarity", "--p", "11", "--out", "pol.g6"], "pol.manifest.json", ["pol.g6", "pol.json"]),
        (["ex-search", "--target", "C5", "--forbid", "3", "--n", "5..7", "--exact", "--out", "ex.csv"], "ex.manifest.json", ["ex.csv"]),
        (["ex-search", "--target", "C5", "--forbid", "3", "--n", "9..12", "--hill", "--seed", "4", "--out", "hill.csv"], "hill.manifest.json", ["hill.csv"]),
        (["verify", "zarankiewicz", "--trials", "300", "--seed", "2", "--out", "z.json"], "z.manifest.json", ["z.json"]),
        (["experiment", "separation", "--l2", "11", "--seed", "3", "--trials", "40", "--out", "sep.json"], "sep.manifest.json", ["sep.json", "sep.csv"]),
    ]
    differing = []
    for argv, manifest, outputs in runs:
        assert cli.main(argv) == 0
        first = {name: _digest(tmp_path / name) for name in outputs}
        assert cli.main(["replay", manifest, "--out-dir", "replay"]) == 0
        assert cli.main(["replay", manifest]) == 0
        for name in outputs:
            if _digest(tmp_path / "replay" / name) != first[name] or _digest(tmp_path / name) != first[name]:
                differing.append(name)
    report(8, not differing, f"{len(runs)} CLI runs replayed from manifests, differing outputs: {differing}")
