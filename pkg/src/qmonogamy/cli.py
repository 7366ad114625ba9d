"""Command-line front end: ``qmonogamy analyze | sweep | selftest | classify``.

Exit codes: 0 success, 1 input or usage error, 2 an equality constraint
(analyze) or a self-test property failed.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings

import numpy as np

from .errors import OptimizerDidNotImprove, QMonogamyError
from .qstate import PureState, load_state
from .tangles import DEFAULT_ITERATIONS, DEFAULT_RESTARTS

EXIT_OK, EXIT_INPUT, EXIT_CONSTRAINT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# JSON with 17 significant digits and insertion-ordered keys

def _num(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag], indent, _level)
    return json.dumps(str(obj))


# ---------------------------------------------------------------------------
# input helpers

def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = complex(v.replace("i", "j")) if "j" in v or "i" in v else float(v)
        except ValueError:
            raise UsageError(f"--param {k}: cannot parse {v!r} as a number") from None
    return out


def _load_input(args) -> tuple[PureState, dict]:
    from .zoo import make

    if bool(args.state) == bool(args.zoo):
        raise UsageError("give exactly one of --state FILE or --zoo NAME")
    if args.state:
        state = load_state(args.state)
        echo = {"source": "file", "path": args.state}
    else:
        params = _parse_params(args.param)
        named = make(args.zoo, params)
        state = named.state
        echo = {"source": "zoo", "name": named.name,
                "params": {k: v for k, v in sorted(params.items())}}
    echo["state"] = state.to_json_dict()
    echo["renormalized"] = state.renormalized
    return state, echo


def _pair_dict(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


def _triple_dict(d: dict, focus: int) -> dict:
    return {f"{focus}|{j}|{k}": v for (j, k), v in sorted(d.items())}


# ---------------------------------------------------------------------------
# commands

def cmd_analyze(args) -> int:
    from .monogamy import evaluate_constraints
    from .tangles import tangle_report
    from .zoo import classify

    state, echo = _load_input(args)
    if state.n_qubits != 4:
        raise UsageError(f"analyze needs a four-qubit state, got {state.n_qubits} qubits")
    kw = dict(restarts=args.restarts, iterations=args.iterations, seed=args.seed,
              threads=args.threads)
    rep = tangle_report(state, args.focus, **kw)
    cons = evaluate_constraints(state, rep, args.focus)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OptimizerDidNotImprove)
        group = classify(state, args.tol, **kw)
    f = rep.focus_qubit
    doc = {
        "input": echo,
        "focus_qubit": f,
        "seed": args.seed,
        "tangles": {
            "one_tangle": rep.one_tangle,
            "two_tangles": _pair_dict(rep.two_tangles),
            "C": _pair_dict(rep.c_values),
            "three_tangles": _triple_dict(rep.three_tangles, f),
            "three_tangle_upper_bounds": _triple_dict(rep.upper_bounds, f),
            "tau0": rep.tau0,
            "tau1": rep.tau1,
            "tau2": _pair_dict(rep.tau2),
            "tau3": _pair_dict(rep.tau3),
            "delta": _pair_dict(rep.delta),
            "Delta": _pair_dict(rep.Delta),
            "delta_lower_bound": _pair_dict(rep.delta_lower_bound),
        },
        "poly_coeffs": {
            str(j): {"n4": c.n4, "n8": c.n8, "n12": c.n12, "n16": c.n16, "f16": c.f16,
                     "chi_plus": c.chi_plus, "chi_minus": c.chi_minus, "C": c.c_value}
            for j, c in sorted(rep.coeffs.items())
        },
        "constraints": [r.as_dict() for r in cons.records],
        "group": {"label": group.group, "predicates": group.predicates,
                  "zero_tol": group.zero_tol, "evidence": group.evidence},
    }
    _emit(dumps(doc) + "\n", args.json)
    return EXIT_OK if cons.equalities_pass else EXIT_CONSTRAINT


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _grid(lo, hi, points, what) -> np.ndarray:
    if points is None or points < 1:
        raise UsageError("--points must be at least 1")
    if lo is None or hi is None or not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise UsageError(f"invalid {what} range [{lo}, {hi}]")
    if points == 1 and lo != hi:
        raise UsageError("a single point needs equal range ends")
    return np.linspace(lo, hi, points)


def cmd_sweep(args) -> int:
    import csv

    if bool(args.family) == bool(args.transfer):
        raise UsageError("give exactly one of --family L_AIA or --transfer")
    buf = io.StringIO()
    if args.family:
        from .monogamy import sweep_L_family

        if args.family.upper() != "L_AIA":
            raise UsageError(f"unknown family {args.family!r}; only L_AIA is supported")
        grid = _grid(args.a_min, args.a_max, args.points, "a")
        if grid[0] < 0:
            raise UsageError("the L_AIA family needs a >= 0")
        rows = sweep_L_family(grid, restarts=args.restarts, iterations=args.iterations,
                              seed=args.seed, threads=args.threads)
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["a", "one_tangle", "S1", "S", "R"])
        for r in rows:
            w.writerow([_num(v) for v in (r.a, r.one_tangle, r.S1, r.S, r.R)])
    else:
        from .transfer import run_transfer, write_csv

        grid = _grid(args.x_min, args.x_max, args.points, "x")
        if grid[0] <= 1:
            raise UsageError("the transfer model needs x > 1")
        n_env = args.n_env if args.n_env is not None else max(args.M, 1)
        if not 1 <= args.M <= n_env:
            raise UsageError(f"--M must be in 1..{n_env}")
        rows = []
        for x in grid:
            rows.extend(run_transfer(float(x), n_env, args.M).rows())
        write_csv(rows, buf)
    _emit(buf.getvalue(), args.csv)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    if args.n_random < 0:
        raise UsageError("--n-random must be >= 0")
    results = run_selftest(args.n_random, args.seed)
    ok = True
    for r in results:
        print(r.line())
        ok &= r.ok
    return EXIT_OK if ok else EXIT_CONSTRAINT


def cmd_classify(args) -> int:
    from .zoo import classify

    state, _ = _load_input(args)
    if state.n_qubits != 4:
        raise UsageError(f"classify needs a four-qubit state, got {state.n_qubits} qubits")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OptimizerDidNotImprove)
        g = classify(state, args.tol, restarts=args.restarts, iterations=args.iterations,
                     seed=args.seed, threads=args.threads)
    print(f"Group {g.group}" if g.group in ("I", "II", "III", "IV") else g.group)
    for k, v in g.predicates.items():
        print(f"  {k:<26} {v}")
    print(f"  {'quantity':<14} {'value':>24}  verdict (tol {g.zero_tol:g})")
    for k, v in g.evidence.items():
        print(f"  {k:<14} {_num(v):>24}  {'nonzero' if v > g.zero_tol else 'zero'}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def _add_optimizer_flags(p) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
    p.add_argument("--threads", type=int, default=1)


def _add_input_flags(p) -> None:
    p.add_argument("--state", metavar="FILE")
    p.add_argument("--zoo", metavar="NAME")
    p.add_argument("--param", action="append", metavar="K=V")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qmonogamy", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    a = sub.add_parser("analyze", help="all tangles and constraint residuals as JSON")
    _add_input_flags(a)
    a.add_argument("--focus", type=int, default=1)
    a.add_argument("--tol", type=float, default=1e-6, help="zero threshold for the group label")
    a.add_argument("--json", metavar="OUT")
    _add_optimizer_flags(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="L family or transfer-model sweep as CSV")
    s.add_argument("--family")
    s.add_argument("--transfer", action="store_true")
    s.add_argument("--a-min", type=float)
    s.add_argument("--a-max", type=float)
    s.add_argument("--x-min", type=float)
    s.add_argument("--x-max", type=float)
    s.add_argument("--points", type=int)
    s.add_argument("--M", type=int, default=8)
    s.add_argument("--n-env", type=int)
    s.add_argument("--csv", metavar="OUT")
    _add_optimizer_flags(s)
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("selftest", help="identity checks on seeded random states")
    t.add_argument("--n-random", type=int, default=200)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_selftest)

    c = sub.add_parser("classify", help="group label with its evidence table")
    _add_input_flags(c)
    c.add_argument("--tol", type=float, default=1e-6)
    _add_optimizer_flags(c)
    c.set_defaults(func=cmd_classify)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("qmonogamy: choose a command (analyze, sweep, selftest, classify)")
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (QMonogamyError, OSError, ValueError) as exc:
        print(f"qmonogamy: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
