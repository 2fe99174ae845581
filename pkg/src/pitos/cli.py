"""Command-line entry point.

Subcommands: test, pairs, sample, scenarios, power, calibrate, study.
Single verdicts print as one-line JSON on stdout; tabular outputs are CSV
files with a header row plus a JSON sidecar (<out>.meta.json) recording the
configuration and seeds.  Identical invocations are byte-identical,
including under different --threads values (threads only schedule work and
are deliberately left out of the sidecar).

Input files hold one decimal value per line; blank lines and '#' comments
(full-line or trailing) are ignored.  Parse failures name the line number.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .classic import CLASSIC_TESTS, classic_test
from .classic import DEFAULT_NULL_B as CLASSIC_NULL_B
from .core import OrderedSample, pitos_p_value
from .distributions import SCENARIOS, ScenarioSampler, zoo_lookup
from .harness import (
    DEFAULT_NULL_B,
    DEFAULT_REPLICATES,
    null_pvalue_cdf,
    power_curve,
    scenario_study,
)

PAPER_SCALE = 100_000


def _resolve_counts(args):
    """Replicates and null draws: explicit flags win, then --paper-scale,
    then the desk-scale defaults."""
    reps = args.reps
    if reps is None:
        reps = PAPER_SCALE if args.paper_scale else DEFAULT_REPLICATES
    null_b = args.null_b
    if null_b is None:
        null_b = PAPER_SCALE if args.paper_scale else DEFAULT_NULL_B
    return reps, null_b
from .pairs import generate_pairs
from .rosenblatt import randomized_pit
from .streams import stream

__all__ = ["main", "entrypoint"]

log = logging.getLogger(__name__)

CALIBRATION_GRID = (
    [round(0.001 * k, 3) for k in range(1, 10)]
    + [round(0.01 * k, 2) for k in range(1, 20)]
    + [round(0.05 * k, 2) for k in range(4, 21)]
)


class CliError(Exception):
    """Validation or runtime failure that should become a one-line diagnostic."""


def read_values(path):
    """Numeric values from a text file, one per line, '#' starts a comment."""
    values = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    values.append(float(text))
                except ValueError:
                    raise CliError(
                        f"{path}: line {lineno}: could not parse value {text!r}"
                    ) from None
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    if not values:
        raise CliError(f"{path}: no data values found")
    return np.array(values)


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write_sidecar(out_path, config):
    sidecar = Path(str(out_path) + ".meta.json")
    sidecar.write_text(json.dumps(config, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_test(args):
    values = read_values(args.input)
    seed = args.seed
    if args.null_cdf is not None:
        spec = zoo_lookup(args.null_cdf)
        rng = stream(seed, 0, 0, 0) if spec.is_discrete else None
        values = randomized_pit(values, spec, rng=rng)
        values = np.clip(values, 0.0, 1.0)
    sample = OrderedSample(values)

    if args.method == "pitos":
        warp = tuple(args.warp) if args.warp else None
        if warp is not None:
            print(
                "warning: custom warp; the 1.15 correction is calibrated "
                "for the default pair sequence",
                file=sys.stderr,
            )
            pairs = generate_pairs(sample.n, warp=warp)
        else:
            pairs = generate_pairs(sample.n)
        verdict = pitos_p_value(sample, pairs, detail=args.emit_detail is not None)
        if args.emit_detail is not None:
            det = verdict.detail
            rows = zip(
                range(1, verdict.m + 1),
                det.i.tolist(),
                det.j.tolist(),
                (repr(v) for v in det.u.tolist()),
                (repr(v) for v in det.p.tolist()),
            )
            _write_text(args.emit_detail, _csv_text(["k", "i", "j", "u", "p"], rows))
        payload = {
            "test": "PITOS",
            "n": verdict.n,
            "m": verdict.m,
            "p_value": verdict.p_uncorrected,
            "p_star": verdict.p_value,
        }
    else:
        verdict = classic_test(
            args.method, sample, null_b=args.null_b, seed=seed, cache_dir=args.cache_dir
        )
        payload = {
            "test": verdict.test_name,
            "n": verdict.n,
            "b": verdict.b,
            "seed": verdict.seed,
            "statistic": verdict.statistic,
            "p_value": verdict.p_value,
        }
    print(json.dumps(payload))
    return 0


def _cmd_pairs(args):
    seq = generate_pairs(args.n)
    rows = zip(range(1, seq.m + 1), seq.i.tolist(), seq.j.tolist())
    _write_text(args.out, _csv_text(["k", "i", "j"], rows))
    return 0


def _cmd_sample(args):
    spec = zoo_lookup(args.dist)
    values = spec.sample(args.n, stream(args.seed, 0, 0, 1))
    _write_text(args.out, "".join(repr(float(v)) + "\n" for v in values))
    return 0


def _cmd_scenarios(args):
    sampler = ScenarioSampler(args.name, args.seed)
    rows = []
    for idx, spec in enumerate(sampler.draw_many(args.count)):
        params = json.dumps(spec.parameters, sort_keys=True)
        rows.append((idx, args.name, spec.name, params))
    text = _csv_text(["index", "scenario", "distribution", "parameters"], rows)
    _write_text(args.out, text)
    return 0


def _parse_tests(raw):
    tests = tuple(t.strip() for t in raw.split(",") if t.strip())
    if not tests:
        raise CliError("empty test roster")
    return tests


def _cmd_power(args):
    tests = _parse_tests(args.tests)
    n_grid = [int(v) for v in args.n.split(",")]
    reps, null_b = _resolve_counts(args)
    if args.dist in SCENARIOS:
        dist = ScenarioSampler(args.dist, args.seed).draw(0)
    else:
        dist = zoo_lookup(args.dist)
    if args.random_pair_seed is not None:
        print(
            "warning: random-uniform pair source; the 1.15 correction is "
            "calibrated for the default sequence",
            file=sys.stderr,
        )
    reports = power_curve(
        dist, tests, n_grid, args.alpha, reps, args.seed,
        null_b=null_b, cache_dir=args.cache_dir, threads=args.threads,
        pair_seed=args.random_pair_seed,
    )
    rows = [
        (rep.distribution["name"], rep.n, test, rep.alpha, rep.replicates,
         repr(rep.rejection_rate[test]), repr(rep.mc_std_err[test]), rep.seed)
        for rep in reports
        for test in tests
    ]
    header = ["distribution", "n", "test", "alpha", "replicates",
              "rejection_rate", "mc_std_err", "seed"]
    _write_text(args.out, _csv_text(header, rows))
    if args.out is not None:
        _write_sidecar(args.out, {
            "subcommand": "power",
            "distribution": reports[0].distribution,
            "tests": list(tests),
            "n_grid": n_grid,
            "alpha": args.alpha,
            "replicates": reps,
            "null_b": null_b,
            "random_pair_seed": args.random_pair_seed,
            "seed": args.seed,
        })
    return 0


def _cmd_calibrate(args):
    grid = [float(v) for v in args.grid.split(",")] if args.grid else list(CALIBRATION_GRID)
    reps, null_b = _resolve_counts(args)
    result = null_pvalue_cdf(
        args.test, args.n, reps, args.seed, grid,
        null_b=null_b, cache_dir=args.cache_dir,
        pair_seed=args.random_pair_seed,
    )
    if args.test == "pitos":
        header = ["threshold", "cdf_p", "cdf_p_star"]
        rows = [
            (repr(t), repr(a), repr(b))
            for t, a, b in zip(grid, result.series["p"].tolist(), result.series["p_star"].tolist())
        ]
    else:
        header = ["threshold", "cdf_p"]
        rows = [(repr(t), repr(a)) for t, a in zip(grid, result.series["p"].tolist())]
    _write_text(args.out, _csv_text(header, rows))
    if args.out is not None:
        _write_sidecar(args.out, {
            "subcommand": "calibrate",
            "test": args.test,
            "n": args.n,
            "replicates": reps,
            "null_b": null_b,
            "random_pair_seed": args.random_pair_seed,
            "seed": args.seed,
            "grid": grid,
        })
    return 0


def _cmd_study(args):
    tests = _parse_tests(args.tests)
    _, null_b = _resolve_counts(args)
    summary = scenario_study(
        args.scenario, args.dists, args.reps, args.n, args.alpha, args.seed,
        tests=tests, null_b=null_b, cache_dir=args.cache_dir, threads=args.threads,
        pair_seed=args.random_pair_seed,
    )
    header = ["test", "avg_power"] + [f"rank{r}_freq" for r in range(1, len(tests) + 1)]
    rows = [
        [test, repr(summary.avg_power[test])]
        + [repr(float(v)) for v in summary.rank_freq[k]]
        for k, test in enumerate(tests)
    ]
    _write_text(args.out, _csv_text(header, rows))
    if args.out is not None:
        _write_sidecar(args.out, {
            "subcommand": "study",
            "scenario": args.scenario,
            "tests": list(tests),
            "num_distributions": args.dists,
            "replicates_per_distribution": args.reps,
            "n": args.n,
            "alpha": args.alpha,
            "null_b": null_b,
            "random_pair_seed": args.random_pair_seed,
            "seed": args.seed,
            "distributions": [rep.distribution for rep in summary.reports],
        })
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pitos",
        description="Goodness-of-fit testing against a Uniform(0,1) null "
        "(or any named null via its probability integral transform).",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, *, threads=False):
        p.add_argument("--seed", type=int, default=0, help="seed controlling all randomness")
        p.add_argument("--cache-dir", default=None,
                       help="empirical-null cache directory (default $PITOS_CACHE_DIR or ~/.cache/pitos)")
        if threads:
            p.add_argument("--threads", type=int, default=1,
                           help="worker threads; outputs are identical for any value")

    p = sub.add_parser("test", help="run one test on a data file")
    p.add_argument("--input", required=True, help="one numeric value per line")
    p.add_argument("--method", default="pitos", choices=("pitos",) + CLASSIC_TESTS)
    p.add_argument("--null-cdf", default=None,
                   help="map data through this zoo distribution's PIT before testing")
    p.add_argument("--emit-detail", default=None, metavar="PATH",
                   help="write per-pair detail CSV (pitos only)")
    p.add_argument("--warp", default=None, type=lambda s: [float(v) for v in s.split(",")],
                   metavar="A,B", help="custom Beta warp shapes for the pair sequence (pitos only)")
    p.add_argument("--null-b", type=int, default=CLASSIC_NULL_B,
                   help="null replicates behind classical p-values")
    add_common(p)
    p.set_defaults(handler=_cmd_test)

    p = sub.add_parser("pairs", help="emit the pair sequence for a sample size as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_pairs)

    p = sub.add_parser("sample", help="draw from a zoo distribution, one value per line")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    add_common(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("scenarios", help="draw distributions from a scenario, emit parameters as CSV")
    p.add_argument("--name", required=True, choices=SCENARIOS)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", default=None)
    add_common(p)
    p.set_defaults(handler=_cmd_scenarios)

    p = sub.add_parser("power", help="rejection rates over an n grid")
    p.add_argument("--dist", required=True, help="zoo distribution or scenario name")
    p.add_argument("--tests", default="pitos,ad,nb,ks,cvm", help="comma-separated roster")
    p.add_argument("--n", required=True, help="comma-separated sample sizes")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=None,
                   help=f"replicates (default {DEFAULT_REPLICATES}, or 100000 with --paper-scale)")
    p.add_argument("--null-b", type=int, default=None,
                   help=f"null draws (default {DEFAULT_NULL_B}, or 100000 with --paper-scale)")
    p.add_argument("--paper-scale", action="store_true",
                   help="full-size counts: 100000 replicates and null draws")
    p.add_argument("--random-pair-seed", type=int, default=None,
                   help="experiment: seeded uniform pair source instead of the default sequence")
    p.add_argument("--out", default=None)
    add_common(p, threads=True)
    p.set_defaults(handler=_cmd_power)

    p = sub.add_parser("calibrate", help="null p-value CDF on a threshold grid")
    p.add_argument("--test", default="pitos", choices=("pitos",) + CLASSIC_TESTS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=None,
                   help=f"replicates (default {DEFAULT_REPLICATES}, or 100000 with --paper-scale)")
    p.add_argument("--null-b", type=int, default=None,
                   help=f"null draws (default {DEFAULT_NULL_B}, or 100000 with --paper-scale)")
    p.add_argument("--paper-scale", action="store_true",
                   help="full-size counts: 100000 replicates and null draws")
    p.add_argument("--random-pair-seed", type=int, default=None,
                   help="experiment: seeded uniform pair source instead of the default sequence")
    p.add_argument("--grid", default=None, help="comma-separated thresholds in [0, 1]")
    p.add_argument("--out", default=None)
    add_common(p)
    p.set_defaults(handler=_cmd_calibrate)

    p = sub.add_parser("study", help="randomized-scenario rank and average-power study")
    p.add_argument("--scenario", required=True, choices=SCENARIOS)
    p.add_argument("--dists", type=int, required=True, help="number of distributions to draw")
    p.add_argument("--reps", type=int, required=True, help="replicates per distribution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--tests", default="pitos,ad,nb,ks,cvm")
    p.add_argument("--null-b", type=int, default=None,
                   help=f"null draws (default {DEFAULT_NULL_B}, or 100000 with --paper-scale)")
    p.add_argument("--paper-scale", action="store_true",
                   help="full-size null draws: 100000")
    p.add_argument("--random-pair-seed", type=int, default=None,
                   help="experiment: seeded uniform pair source instead of the default sequence")
    p.add_argument("--out", default=None)
    add_common(p, threads=True)
    p.set_defaults(handler=_cmd_study)

    return parser


def main(argv=None):
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (CliError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    raise SystemExit(main())
