"""Command-line front end: constructions, extremal search, verification
suites and the separation experiment.

Every run writes a manifest next to its primary output; ``replay`` re-runs
a manifest and reproduces the outputs byte for byte. Outputs carry no
timings. Exit codes: 0 success, 1 verification failure, 2 usage error or
invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__, graph6
from .constructions import FAMILIES, ConstructionSpec
from .seeding import default_seed, stream, tag

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# output helpers ---------------------------------------------------------

def _write_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _manifest_path(primary: str) -> str:
    root, _ = os.path.splitext(primary)
    return root + ".manifest.json"


def _write_manifest(command: str, params: dict, outputs: dict) -> None:
    primary = next(iter(outputs.values()))
    if primary == "-":
        return
    manifest = {
        "artifact_version": __version__,
        "subcommand": command,
        "params": params,
        "seed": params.get("seed"),
        "outputs": outputs,
    }
    _write_atomic(_manifest_path(primary), _json_text(manifest))


def _parse_range(text: str) -> list[int]:
    """'4..8' -> [4..8]; '7' -> [7]; '5..4' -> []; '4,6,8' -> [4, 6, 8]."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use A..B or a comma list")


def _int_list(values) -> list[int]:
    out = []
    for v in values or []:
        for part in str(v).split(","):
            if part.strip():
                try:
                    out.append(int(part))
                except ValueError:
                    raise UsageError(f"not an integer: {part!r}")
    return out


# construct --------------------------------------------------------------

_CONSTRUCT_KEYS = ("p", "k", "l", "m", "target", "h", "n", "a", "graph6", "isolated")


def run_construct(params: dict, outputs: dict) -> int:
    spec_params = {k: params[k] for k in _CONSTRUCT_KEYS if params.get(k) is not None}
    if params["family"] == "hard-L-free":
        spec_params.setdefault("isolated", False)
    try:
        spec = ConstructionSpec(params["family"], spec_params)
        g = spec.build()
    except ValueError as exc:
        raise UsageError(str(exc))
    facts = spec.verify(g)
    sidecar = {
        "artifact_version": __version__,
        "family": spec.family,
        "params": spec.params,
        "seed": params.get("seed"),
        "graph6_file": os.path.basename(outputs["graph6"]),
        "verified": facts,
    }
    graph6.write_file(outputs["graph6"], [g])
    _write_atomic(outputs["sidecar"], _json_text(sidecar))
    print(f"wrote {outputs['graph6']} (n={g.n}, m={g.num_edges}) and {outputs['sidecar']}")
    return EXIT_OK


# ex-search --------------------------------------------------------------

EX_HEADER = ["n", "target", "forbidden", "value", "exact", "method", "trend", "witness_g6", "witness_file"]


def run_ex_search(params: dict, outputs: dict) -> int:
    from .extremal import BRUTE_FORCE_LIMIT, brute_force_ex, hill_climb_ex

    ns = _parse_range(params["n"])
    forbidden = _int_list(params["forbid"])
    if not forbidden:
        raise UsageError("give at least one --forbid length")
    limit = params.get("limit") or BRUTE_FORCE_LIMIT
    rows = []
    wdir = params.get("witness_dir")
    for n in ns:
        try:
            if params["mode"] == "exact":
                rec = brute_force_ex(n, params["target"], forbidden, limit=limit)
            else:
                rng = stream(params["seed"], tag("hill"), n)
                rec = hill_climb_ex(n, params["target"], forbidden, params["steps"], params["restarts"], rng)
        except ValueError as exc:
            raise UsageError(str(exc))
        trend = rec.trend()
        wfile = ""
        if wdir:
            os.makedirs(wdir, exist_ok=True)
            wfile = os.path.join(wdir, f"ex_{rec.target}_{'-'.join(map(str, rec.forbidden))}_n{n}.g6")
            graph6.write_file(wfile, [rec.witness])
        rows.append(
            [
                n,
                rec.target,
                " ".join(map(str, rec.forbidden)),
                rec.value,
                str(rec.exact).lower(),
                rec.method,
                "" if trend is None else f"{trend:.9g}",
                graph6.encode(rec.witness),
                wfile,
            ]
        )
    _write_atomic(outputs["csv"], _csv_text(EX_HEADER, rows))
    return EXIT_OK


# verify -----------------------------------------------------------------

def run_verify(params: dict, outputs: dict) -> int:
    from .extremal.suites import run_suite

    trials = params["trials"]
    if trials not in (None, "all"):
        try:
            trials = int(trials)
        except ValueError:
            raise UsageError("--trials must be an integer or 'all'")
        if trials < 0:
            raise UsageError("--trials must be nonnegative")
    summary = run_suite(params["suite"], trials, params["seed"])
    d = summary.to_dict()
    for f in summary.failures:
        print(f"FAIL {summary.name} {json.dumps(f['instance'], sort_keys=True)} counterexample={f['counterexample']}")
    print(
        f"{summary.name}: applicable={summary.applicable} passed={summary.passed} "
        f"failed={summary.failed} not_applicable={summary.not_applicable} -> {'PASS' if summary.ok else 'FAIL'}"
    )
    if outputs.get("json"):
        _write_atomic(outputs["json"], _json_text(d))
    return EXIT_OK if summary.ok else EXIT_FAIL


# experiment -------------------------------------------------------------

CURVE_HEADER = ["l2", "n", "tester", "q", "trials", "rejections", "rate", "ci_low", "ci_high"]


def run_experiment(params: dict, outputs: dict) -> int:
    from .testing.testers import TesterConfig, separation_experiment

    l2s = _int_list(params["l2"])
    if not l2s:
        raise UsageError("give at least one --l2")
    for l2 in l2s:
        if l2 % 2 == 0 or l2 < 5:
            raise UsageError(f"--l2 {l2}: L must consist of odd integers, with l2 >= 5")
    ns = _int_list(params.get("n")) or None
    if ns is not None and len(ns) != len(l2s):
        raise UsageError("give one --n per --l2 (or none)")
    scale = params["scale"]
    sizes = ns or [scale * (l2 - 1) for l2 in l2s]
    if max(sizes) > params["max_vertices"]:
        raise UsageError(f"instance with {max(sizes)} vertices exceeds --max-vertices {params['max_vertices']}")
    try:
        cfg = TesterConfig(
            epsilon=Fraction(params["epsilon"]),
            trials=params["trials"],
            seed=params["seed"],
            restarts=params["restarts"],
            tolerance=Fraction(params["tolerance"]),
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))
    report = separation_experiment(l2s, cfg, scale=scale, n_values=ns)
    report["artifact_version"] = __version__
    rows = []
    for r in report["rows"]:
        for e in r["one_sided_below_floor"] + r["one_sided"]["entries"]:
            rows.append([r["l2"], r["n"], "one-sided", e["q"], e["trials"], e["rejections"], e["rate"], e["ci_low"], e["ci_high"]])
        for e in r["two_sided"]["entries"]:
            rows.append([r["l2"], r["n"], "two-sided", e["q"], e["trials"], e["rejections"], e["rate"], e["ci_low"], e["ci_high"]])
    rows = sorted({tuple(x) for x in rows}, key=lambda x: (x[0], x[2], x[3]))
    _write_atomic(outputs["json"], _json_text(report))
    _write_atomic(outputs["csv"], _csv_text(CURVE_HEADER, rows))
    for r in report["rows"]:
        print(
            f"l2={r['l2']} n={r['n']}: one-sided floor {r['one_sided_floor']}, "
            f"one-sided minimal q {r['one_sided']['minimal_q']}, "
            f"two-sided minimal q {r['two_sided']['minimal_q']} interval {r['two_sided']['minimal_q_interval']}"
        )
    return EXIT_OK


# replay -----------------------------------------------------------------

RUNNERS = {
    "construct": run_construct,
    "ex-search": run_ex_search,
    "verify": run_verify,
    "experiment": run_experiment,
}


def run_replay(manifest_path: str, out_dir: str | None) -> int:
    try:
        with open(manifest_path, encoding="utf-8") as fh:
            manifest = json.load(fh)
        command = manifest["subcommand"]
        params = manifest["params"]
        outputs = dict(manifest["outputs"])
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read manifest {manifest_path}: {exc}")
    if command not in RUNNERS:
        raise UsageError(f"manifest names unknown subcommand {command!r}")
    if manifest.get("artifact_version") != __version__:
        print(f"warning: manifest from version {manifest.get('artifact_version')}, running {__version__}", file=sys.stderr)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        outputs = {k: (os.path.join(out_dir, os.path.basename(v)) if v and v != "-" else v) for k, v in outputs.items()}
        if params.get("witness_dir"):
            params = {**params, "witness_dir": os.path.join(out_dir, os.path.basename(os.path.normpath(params["witness_dir"])))}
    code = RUNNERS[command](params, outputs)
    _write_manifest(command, params, outputs)
    return code


# argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .extremal.suites import SUITE_NAMES

    p = argparse.ArgumentParser(prog="cycleturan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a construction, write graph6 + JSON sidecar")
    c.add_argument("family", choices=FAMILIES)
    c.add_argument("--p", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--l", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--target")
    c.add_argument("--h", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--a", type=int, help="side-A size of the triangle-booster input")
    c.add_argument("--graph6", help="triangle-booster input graph (side A first)")
    c.add_argument("--isolated", action="store_true", default=None)
    c.add_argument("--out", help="graph6 output path (default: <family>.g6)")
    c.add_argument("--seed", type=int, default=None)

    e = sub.add_parser("ex-search", help="extremal numbers ex(n, target, forbidden cycles)")
    e.add_argument("--target", required=True, help="C<k> or P<k>")
    e.add_argument("--forbid", action="append", required=True, help="forbidden cycle length(s); repeat or comma-separate")
    e.add_argument("--n", required=True, help="A..B, a single n, or a comma list")
    mode = e.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--hill", dest="mode", action="store_const", const="hill")
    e.add_argument("--steps", type=int, default=2000)
    e.add_argument("--restarts", type=int, default=4)
    e.add_argument("--limit", type=int, default=None, help="largest n for exact mode")
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--witness-dir", default=None)
    e.add_argument("--out", default="ex_search.csv")

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--trials", default=None, help="applicable instances, or 'all'")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--out", default=None, help="JSON summary path")

    x = sub.add_parser("experiment", help="testing experiments")
    x.add_argument("name", choices=("separation",))
    x.add_argument("--l2", action="append", required=True, help="odd cycle length(s) l2 >= 5")
    x.add_argument("--n", action="append", default=None, help="instance order per l2 (default scale*(l2-1))")
    x.add_argument("--scale", type=int, default=5)
    x.add_argument("--epsilon", default="1/50")
    x.add_argument("--trials", type=int, default=200)
    x.add_argument("--restarts", type=int, default=128)
    x.add_argument("--tolerance", default="0")
    x.add_argument("--max-vertices", type=int, default=20000)
    x.add_argument("--seed", type=int, default=None)
    x.add_argument("--out", default="separation.json", help="JSON report path (CSV curves alongside)")

    r = sub.add_parser("replay", help="re-run a manifest")
    r.add_argument("manifest")
    r.add_argument("--out-dir", default=None, help="write outputs here instead of the recorded paths")
    return p


def _params_and_outputs(args) -> tuple[str, dict, dict]:
    seed = args.seed if args.seed is not None else default_seed()
    if args.command == "construct":
        out = args.out or f"{args.family}.g6"
        root, _ = os.path.splitext(out)
        params = {k: getattr(args, k) for k in ("family",) + _CONSTRUCT_KEYS}
        params["seed"] = seed
        return "construct", params, {"graph6": out, "sidecar": root + ".json"}
    if args.command == "ex-search":
        params = {
            "target": args.target,
            "forbid": args.forbid,
            "n": args.n,
            "mode": args.mode or "exact",
            "steps": args.steps,
            "restarts": args.restarts,
            "limit": args.limit,
            "seed": seed,
            "witness_dir": args.witness_dir,
        }
        return "ex-search", params, {"csv": args.out}
    if args.command == "verify":
        params = {"suite": args.suite, "trials": args.trials, "seed": seed}
        return "verify", params, {"json": args.out}
    params = {
        "name": args.name,
        "l2": args.l2,
        "n": args.n,
        "scale": args.scale,
        "epsilon": args.epsilon,
        "trials": args.trials,
        "restarts": args.restarts,
        "tolerance": args.tolerance,
        "max_vertices": args.max_vertices,
        "seed": seed,
    }
    root, _ = os.path.splitext(args.out)
    return "experiment", params, {"json": args.out, "csv": root + ".csv"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return run_replay(args.manifest, args.out_dir)
        command, params, outputs = _params_and_outputs(args)
        code = RUNNERS[command](params, outputs)
        if outputs.get(next(iter(outputs))):
            _write_manifest(command, params, outputs)
        return code
    except UsageError as exc:
        print(f"cycleturan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
