"""Command line entry point: ``midi-index {compute,generate,power,screen,bench}``.

Exit codes: 0 success, 2 input error, 3 degenerate data.
Option defaults can come from ``--config FILE`` (flat ``key = value`` lines,
keys named like the long options with ``_`` for ``-``); explicit flags win.
``MIDI_INDEX_SEED`` and ``MIDI_INDEX_JOBS`` set the default seed and worker
count.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import os
import sys

import numpy as np

from . import _backend, bench
from .baselines import DCOR_MAX_N, distance_correlation, pearson, spearman
from .datagen import FunctionKind, NoiseKind, NoiseSpec, add_noise, generate
from .estimator import DEFAULT_C, DegenerateAxis, EstimatorConfig, midi
from .power import MEASURES, power_curve
from .screen import SCREEN_MEASURES, screen
from .tables import InputError, read_table, write_xy

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

JSON_SCHEMA = 1


def _env_int(name, fallback):
    v = os.environ.get(name)
    if v is None or v.strip() == "":
        return fallback
    try:
        return int(v)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {v!r}") from None


def _csv_list(text, allowed=None):
    items = [t.strip() for t in str(text).split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    if allowed is not None:
        bad = [t for t in items if t not in allowed]
        if bad:
            raise argparse.ArgumentTypeError(f"unknown {bad}; choose from {list(allowed)}")
    return items


def _sizes(text):
    try:
        return [int(float(t)) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def _measure_list(allowed):
    return lambda text: _csv_list(text, allowed)


def _bool(text):
    if isinstance(text, bool):
        return text
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def load_config(path):
    """Read a flat key/value file into a dict of strings."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[midi]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise InputError(f"bad config file {path}: {exc}") from None
    return {k.replace("-", "_"): v for k, v in cp["midi"].items()}


def build_parser(seed_default=0, jobs_default=None):
    p = argparse.ArgumentParser(prog="midi-index", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="flat key = value file supplying option defaults")
    p.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="dependence of two columns of a CSV file")
    c.add_argument("input")
    c.add_argument("--x-col", default="0")
    c.add_argument("--y-col", default="1")
    c.add_argument("--measure", type=_measure_list(MEASURES), default=["midi"])
    c.add_argument("--c", type=float, default=DEFAULT_C, help="bin length exponent, 0 < c < 1")
    c.add_argument("--seed", type=int, default=seed_default)
    c.add_argument("--out", choices=("json", "text"), default="json")
    c.add_argument("--force", action="store_true", help=f"allow dcor above n={DCOR_MAX_N}")

    g = sub.add_parser("generate", help="write a synthetic x,y dataset")
    g.add_argument("kind")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--seed", type=int, default=seed_default)
    g.add_argument("--rho", type=float, default=0.0, help="correlation for normal_bivariate")
    noise = g.add_mutually_exclusive_group()
    noise.add_argument("--noise-uniform-var", type=float)
    noise.add_argument("--noise-gaussian-sigma", type=float)
    g.add_argument("-o", "--output", default="-")

    w = sub.add_parser("power", help="power curve over 30 noise levels")
    w.add_argument("--measure", choices=MEASURES, default="midi")
    w.add_argument("--function", required=True)
    w.add_argument("--reps", type=int, default=500)
    w.add_argument("-n", type=int, default=1000)
    w.add_argument("--seed", type=int, default=seed_default)
    w.add_argument("--jobs", type=int, default=jobs_default)
    w.add_argument("--format", choices=("csv", "json"), default=None, help="default: from file suffix, else csv")
    w.add_argument("-o", "--output", default="-")

    s = sub.add_parser("screen", help="rank columns by dependence on a reference column")
    s.add_argument("input")
    s.add_argument("--ref", required=True)
    s.add_argument("--measures", type=_measure_list(SCREEN_MEASURES), default=["midi"])
    s.add_argument("--c", type=float, default=DEFAULT_C)
    s.add_argument("--jobs", type=int, default=jobs_default)
    s.add_argument("-o", "--output", default="-")

    b = sub.add_parser("bench", help="time measures on generated line data")
    b.add_argument("--sizes", type=_sizes, default=[10_000, 100_000, 1_000_000])
    b.add_argument("--measures", type=_measure_list(MEASURES), default=["midi"])
    b.add_argument("--backends", type=_measure_list(_backend.available()), default=None)
    b.add_argument("--seed", type=int, default=seed_default)
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--force", action="store_true", help=f"allow dcor above n={DCOR_MAX_N}")
    b.add_argument("-o", "--output", default="-")
    return p, sub.choices


def _open_out(path):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline="", encoding="utf-8"), True
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _emit_rows(path, header, rows):
    fh, close = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


def cmd_compute(args):
    table = read_table(args.input)
    xi, yi = table.column_index(args.x_col), table.column_index(args.y_col)
    x, y = table.data[:, xi], table.data[:, yi]
    holes = np.flatnonzero(np.isnan(x) | np.isnan(y))
    if holes.size:
        raise InputError(f"missing value in row {int(holes[0]) + 1} of the data (compute needs complete pairs)")
    if x.size < 2:
        raise InputError("need at least 2 rows")
    if "dcor" in args.measure:
        bench.check_dcor_size(x.size, args.force)

    out = {"schema": JSON_SCHEMA, "n": int(x.size), "x_col": table.names[xi], "y_col": table.names[yi]}
    for m in args.measure:
        if m == "midi":
            rep = midi(x, y, EstimatorConfig(args.c))
            out["midi"] = rep.midi
            out["midi_report"] = rep.as_dict()
        elif m == "dcor":
            rep = distance_correlation(x, y)
            out["dcor"] = rep.dcor
            out["dcor_report"] = rep.as_dict()
        elif m == "pearson":
            out["pearson"] = pearson(x, y)
        elif m == "spearman":
            out["spearman"] = spearman(x, y)

    if args.out == "json":
        print(json.dumps(out, indent=2))
    else:
        flat = {k: v for k, v in out.items() if not isinstance(v, dict)}
        for key in ("midi_report", "dcor_report"):
            for k, v in out.get(key, {}).items():
                flat.setdefault(k, v)
        width = max(len(k) for k in flat)
        for k, v in flat.items():
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_generate(args):
    if args.n < 2:
        raise InputError("-n must be >= 2")
    s = generate(FunctionKind.parse(args.kind), args.n, args.seed, rho=args.rho)
    y = s.ys
    if args.noise_uniform_var is not None:
        y = add_noise(y, NoiseSpec(NoiseKind.UNIFORM_VARIANCE, args.noise_uniform_var, args.seed))
    elif args.noise_gaussian_sigma is not None:
        y = add_noise(y, NoiseSpec(NoiseKind.GAUSSIAN_SIGMA, args.noise_gaussian_sigma, args.seed))
    if args.output == "-":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "y"])
        w.writerows((repr(float(a)), repr(float(b))) for a, b in zip(s.xs, y))
    else:
        write_xy(args.output, s.xs, y)
    return EXIT_OK


def cmd_power(args):
    function = FunctionKind.parse(args.function)
    if args.reps < 20:
        raise InputError("--reps must be >= 20")
    curve = power_curve(args.measure, function, args.reps, args.n, args.seed, args.jobs)
    fmt = args.format or ("json" if args.output.endswith(".json") else "csv")
    if fmt == "json":
        fh, close = _open_out(args.output)
        try:
            fh.write(curve.to_json() + "\n")
        finally:
            if close:
                fh.close()
    else:
        _emit_rows(args.output, ["measure", "function", "sigma", "power"], (
            (m, f, repr(s), repr(p)) for m, f, s, p in curve.csv_rows()))
    return EXIT_OK


def cmd_screen(args):
    table = read_table(args.input)
    try:
        ref = table.column_index(args.ref)
    except InputError as exc:
        print(f"error: reference column: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    results = screen(table.names, table.data, ref, args.measures, EstimatorConfig(args.c), args.jobs)
    header = ["column_id", "n_used", *args.measures, "degenerate"]
    _emit_rows(args.output, header, (r.row(args.measures) for r in results))
    return EXIT_OK


def cmd_bench(args):
    rows = bench.run(args.sizes, args.measures, args.seed, args.backends, args.force, args.repeat)
    _emit_rows(args.output, bench.HEADER, (r.row() for r in rows))
    return EXIT_OK


_COMMANDS = {
    "compute": cmd_compute,
    "generate": cmd_generate,
    "power": cmd_power,
    "screen": cmd_screen,
    "bench": cmd_bench,
}


def _apply_config(parser, subparsers, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = load_config(known.config)
    for sp in subparsers.values():
        dests = {a.dest: a for a in sp._actions}
        defaults = {}
        for k, v in cfg.items():
            action = dests.get(k)
            if action is None:
                continue
            if isinstance(action, argparse._StoreTrueAction):
                defaults[k] = _bool(v)
            elif action.type is not None:
                try:
                    defaults[k] = action.type(v)
                except (ValueError, argparse.ArgumentTypeError) as exc:
                    raise InputError(f"config key {k}: {exc}") from None
            else:
                defaults[k] = v
            # a config value satisfies a required option
            action.required = False
        sp.set_defaults(**defaults)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        seed = _env_int("MIDI_INDEX_SEED", 0)
        jobs = _env_int("MIDI_INDEX_JOBS", None)
        parser, subparsers = build_parser(seed, jobs)
        _apply_config(parser, subparsers, argv)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except bench.SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateAxis as exc:
        print(f"error: degenerate data: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
