"""Command-line front end.

    rectfit fit       [FILE] --algorithm linear
    rectfit stream    [FILE]
    rectfit calibrate [FILE] --alpha 2 [--apply]
    rectfit bench     --n 1000 --repeats 3 --algorithm linear,streaming

Input is CSV with a header (``x,z`` or ``x,y`` or ``x,y,w``) or JSONL with
the same keys. Scores accept ``inf``/``-inf``. Infinite thresholds are
written as the strings ``"inf"``/``"-inf"`` in JSON output.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field

from .core import FitConfig, OpCounter, losses_from_labels, make_samples, apply_transform
from .linear import linear_fit
from .oracle import brute_force_fit, iterative_fit
from .streaming import EXACT, REAL, StreamEngine

ALGORITHMS = ("brute", "iterative", "linear", "streaming")
EXIT_INPUT = 1
EXIT_VERIFY = 2


class InputError(Exception):
    pass


@dataclass
class Table:
    xs: list
    zs: list
    ys: list = None
    ws: list = None
    lines: list = field(default_factory=list)


def _number(text, line, name):
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise InputError(f"line {line}: bad value for {name!r}: {text!r}") from None
    if math.isnan(v):
        raise InputError(f"line {line}: {name!r} is NaN")
    return v


def _loss_number(v, exact, line):
    if not math.isfinite(v):
        raise InputError(f"line {line}: loss must be finite")
    if exact:
        if not v.is_integer():
            raise InputError(f"line {line}: --exact needs integral losses, got {v}")
        return int(v)
    return v


def _rows(stream, fmt):
    """Yield (line number, dict) pairs."""
    if fmt == "jsonl":
        for line, text in enumerate(stream, start=1):
            if not text.strip():
                continue
            try:
                row = json.loads(text)
            except json.JSONDecodeError as err:
                raise InputError(f"line {line}: {err.msg}") from None
            if not isinstance(row, dict):
                raise InputError(f"line {line}: expected a JSON object")
            yield line, row
        return
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return
    header = [h.strip() for h in header]
    if header not in (["x", "z"], ["x", "y"], ["x", "y", "w"]):
        raise InputError(f"line 1: header must be x,z or x,y or x,y,w; got {','.join(header)}")
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise InputError(f"line {line}: expected {len(header)} fields, got {len(row)}")
        yield line, dict(zip(header, (c.strip() for c in row)))


def read_table(stream, fmt) -> Table:
    table = Table([], [])
    kind = None
    for line, row in _rows(stream, fmt):
        keys = set(row)
        this = "z" if keys == {"x", "z"} else "y" if keys in ({"x", "y"}, {"x", "y", "w"}) else None
        if this is None:
            raise InputError(f"line {line}: expected keys x,z or x,y[,w]; got {sorted(keys)}")
        if kind is None:
            kind = this
            if kind == "y":
                table.ys, table.ws = [], []
        elif kind != this:
            raise InputError(f"line {line}: mixes loss and label columns")
        table.lines.append(line)
        table.xs.append(_number(row["x"], line, "x"))
        if kind == "z":
            table.zs.append(_number(row["z"], line, "z"))
        else:
            y = _number(row["y"], line, "y")
            if y not in (0.0, 1.0):
                raise InputError(f"line {line}: label must be 0 or 1, got {row['y']!r}")
            table.ys.append(int(y))
            if "w" in row:
                table.ws.append(_number(row["w"], line, "w"))
            elif table.ws:
                raise InputError(f"line {line}: missing weight")
    if not table.xs:
        raise InputError("empty input: no data rows")
    if table.ws is not None and table.ws and len(table.ws) != len(table.xs):
        raise InputError("weights present on some rows only")
    return table


def _intlike(v):
    return int(v) if isinstance(v, float) and v.is_integer() else v


def _losses(table: Table, args):
    exact = args.exact
    if table.ys is None:
        return [_loss_number(z, exact, line) for line, z in zip(table.lines, table.zs)], None
    alpha = _intlike(args.alpha) if exact else args.alpha
    weights = None
    if table.ws:
        weights = [_intlike(w) if exact else w for w in table.ws]
    try:
        res = losses_from_labels(table.ys, alpha, weights)
    except ValueError as err:
        raise InputError(str(err)) from None
    zs = res.losses
    if exact and not all(isinstance(z, int) for z in zs):
        raise InputError("--exact needs integral alpha and weights")
    return zs, res


def _config(args) -> FitConfig:
    q0, q1 = args.q0, args.q1
    if args.exact:
        q0, q1 = _intlike(q0), _intlike(q1)
    try:
        return FitConfig(q0, q1)
    except ValueError as err:
        raise InputError(str(err)) from None


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _emit(records, fmt, out):
    if fmt == "csv":
        writer = None
        for rec in records:
            if writer is None:
                writer = csv.DictWriter(out, fieldnames=list(rec), lineterminator="\n")
                writer.writeheader()
            writer.writerow(rec)
    else:
        for rec in records:
            out.write(json.dumps({k: _json_value(v) for k, v in rec.items()}) + "\n")


def solve(algorithm, xs, zs, config, exact=True, counter=None):
    mode = EXACT if exact else REAL
    if algorithm == "streaming":
        eng = StreamEngine(config, mode)
        eng.extend(xs, zs)
        if counter is not None:
            counter.add(eng.merge_count)
        return eng.current_fit()
    samples = make_samples(xs, zs)
    if algorithm == "brute":
        if counter is not None:
            n = len(samples)
            counter.add(n * (n + 1) // 2)
        return brute_force_fit(samples, config)
    if algorithm == "iterative":
        return iterative_fit(samples, config, counter)
    if algorithm == "linear":
        return linear_fit(samples, config, counter)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _open_input(args):
    if args.input in (None, "-"):
        return contextlib.nullcontext(sys.stdin)
    return open(args.input, newline="", encoding="utf-8")


def _input_format(args):
    if args.input_format:
        return args.input_format
    if args.input and args.input.endswith((".jsonl", ".ndjson")):
        return "jsonl"
    return "csv"


def run_fit(args, out) -> int:
    with _open_input(args) as stream:
        table = read_table(stream, _input_format(args))
    config = _config(args)
    zs, labels = _losses(table, args)
    if args.command == "calibrate" and labels is None:
        raise InputError("calibrate needs label columns x,y[,w]")
    (algorithm,) = _algorithms(args, default="linear", single=True)

    if args.command == "stream":
        eng = StreamEngine(config, EXACT if args.exact else REAL)
        records = (eng.insert(x, z).as_record() for x, z in zip(table.xs, zs))
        _emit(records, args.format, out)
        return 0

    report = solve(algorithm, table.xs, zs, config, args.exact)
    if args.command == "calibrate" and args.apply:
        rows = ({"x": x, "y": y, "q": apply_transform(report.fit, config, x)}
                for x, y in zip(table.xs, table.ys))
        _emit(rows, args.format, out)
        return 0
    rec = report.as_record()
    if labels is not None:
        rec["zl"], rec["zu"] = labels.zl, labels.zu
    _emit([rec], args.format, out)
    return 0


def _algorithms(args, default, single=False):
    names = [a.strip() for a in (args.algorithm or default).split(",") if a.strip()]
    for a in names:
        if a not in ALGORITHMS:
            raise InputError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    if single and len(names) != 1:
        raise InputError("this command takes exactly one algorithm")
    return names


def _agree(a, b, exact):
    if exact:
        return a == b
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)


def run_bench(args, out, err) -> int:
    if args.n is None or args.n < 1:
        raise InputError("--n must be >= 1")
    if args.repeats < 1:
        raise InputError("--repeats must be >= 1")
    config = _config(args)
    algorithms = _algorithms(args, default="linear,streaming")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["algorithm", "n", "seed", "repeat", "seconds", "ops", "loss", "agree"])
    failed = []
    for rep in range(args.repeats):
        seed = args.seed + rep
        rng = random.Random(seed)
        xs = [rng.random() for _ in range(args.n)]
        if args.exact:
            zs = [rng.randint(-10, 10) for _ in range(args.n)]
        else:
            zs = [rng.uniform(-1.0, 1.0) for _ in range(args.n)]
        results = []
        for name in algorithms:
            counter = OpCounter()
            t0 = time.perf_counter()
            report = solve(name, xs, zs, config, args.exact, counter)
            results.append((name, time.perf_counter() - t0, counter.count, report.loss))
        ref = results[0][3]
        ok = all(_agree(r[3], ref, args.exact) for r in results)
        if not ok:
            failed.append(seed)
        for name, secs, ops, loss in results:
            writer.writerow([name, args.n, seed, rep, f"{secs:.6f}", ops, loss, str(ok).lower()])
    if failed:
        err.write(f"verification failed: algorithms disagree for seed(s) {', '.join(map(str, failed))}\n")
        return EXIT_VERIFY
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q0", type=float, default=0.0, help="level outside the rectangle")
    common.add_argument("--q1", type=float, default=1.0, help="level inside the rectangle")
    common.add_argument("--alpha", type=float, default=1.0, help="class weight for label input")
    common.add_argument("--algorithm", default=None,
                        help="brute, iterative, linear or streaming (bench: comma-separated list)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--exact", action="store_true", help="integer loss arithmetic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--repeats", type=int, default=1)

    parser = _Parser(prog="rectfit", description="Optimal rectangular fits under linear losses.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("fit", "stream", "calibrate"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", nargs="?", default=None, help="input file (default stdin)")
        p.add_argument("--input-format", choices=("csv", "jsonl"), default=None)
        if name == "calibrate":
            p.add_argument("--apply", action="store_true", help="emit x,y,q per input row")
    sub.add_parser("bench", parents=[common])
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return run_bench(args, out, err)
        return run_fit(args, out)
    except InputError as exc:
        err.write(f"rectfit: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"rectfit: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
