"""Command-line front end.

    derhall indec    --quiver Q.json
    derhall hom      --quiver Q.json --q 2 X Y
    derhall hallnum  --quiver Q.json --q 2 X Y L [--verify]
    derhall table    --quiver Q.json --q 2 --window 1 --weight-cap 2 [--format csv]
    derhall verify   --quiver Q.json --q 2 --suite all [--seed 0]

``--linear N`` may replace ``--quiver`` for the linearly oriented A_N.
Exit codes: 0 success, 1 verification failure, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import ffla
from .dcat import DerivedCategory
from .ffla import CapExceeded
from .hall import MethodMismatch, hall_number, hall_number_all, structure_table, table_to_csv, table_to_json
from .objects import ParseError, parse_object, universe
from .quiver import QuiverError, indecomposables, linear_quiver, load_quiver
from .verify import SUITES, run_instances, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

VERIFY_DEFAULT_CAP = 2**12


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    quiver_arg: str  # "--quiver PATH" or "--linear N", reused in repro commands
    q: int
    window: int
    weight_cap: int
    enum_cap: int | None
    fmt: str
    seed: int


def _config(args) -> RunConfig:
    if not ffla.is_prime(args.q) or args.q > 65536:
        raise InputError(f"--q must be a prime at most 65536, got {args.q}")
    if args.window < 0:
        raise InputError("--window must be nonnegative")
    if args.weight_cap < 0:
        raise InputError("--weight-cap must be nonnegative")
    if args.enum_cap is not None and args.enum_cap <= 0:
        raise InputError("--enum-cap must be positive")
    if args.quiver:
        qa = f"--quiver {shlex.quote(args.quiver)}"
    else:
        qa = f"--linear {args.linear}"
    return RunConfig(qa, args.q, args.window, args.weight_cap, args.enum_cap, args.format, args.seed)


def _quiver(args):
    if args.quiver:
        return load_quiver(args.quiver)
    if args.linear is None:
        raise InputError("one of --quiver FILE or --linear N is required")
    if args.linear < 1:
        raise InputError("--linear must be at least 1")
    return linear_quiver(args.linear)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(records: list[dict], fmt: str, fields: list[str]) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in records:
        w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


def cmd_indec(args, cfg, Q) -> tuple[str, int]:
    rows = [{"id": str(ind), "dims": list(M.dims)} for ind, M in indecomposables(Q, cfg.q)]
    return _emit(rows, cfg.fmt, ["id", "dims"]), EXIT_OK


def cmd_hom(args, cfg, Q) -> tuple[str, int]:
    cat = DerivedCategory(Q, cfg.q)
    X, Y = (parse_object(s, Q) for s in (args.x, args.y))
    d = cat.derived_hom_dim(X, Y)
    c = cat.curly(X, Y)
    rec = {"x": str(X), "y": str(Y), "dim": d, "order": cfg.q**d, "curly": _frac(c)}
    return _emit([rec], cfg.fmt, list(rec)), EXIT_OK


def cmd_hallnum(args, cfg, Q) -> tuple[str, int]:
    cat = DerivedCategory(Q, cfg.q)
    X, Y, L = (parse_object(s, Q) for s in (args.x, args.y, args.l))
    rec = {"x": str(X), "y": str(Y), "l": str(L)}
    if args.verify:
        vals = hall_number_all(cat, X, Y, L)
        rec.update({m: _frac(v) for m, v in vals.items()})
        if len(set(vals.values())) != 1:
            rec["f"] = None
            return _emit([rec], cfg.fmt, list(rec)), EXIT_FAIL
        F = vals["via_f"]
    else:
        F = hall_number(cat, X, Y, L, "via_f")
    rec["f"] = _frac(F)
    rec["f_num"], rec["f_den"] = F.numerator, F.denominator
    return _emit([rec], cfg.fmt, list(rec)), EXIT_OK


def _universe(args, cfg, Q):
    if args.universe:
        return [parse_object(s, Q) for s in args.universe.split(";")]
    return universe(Q, cfg.window, cfg.weight_cap)


def cmd_table(args, cfg, Q) -> tuple[str, int]:
    cat = DerivedCategory(Q, cfg.q)
    objs = _universe(args, cfg, Q)
    rows = structure_table(cat, objs, "verify" if args.verify else "via_f")
    text = table_to_json(rows) if cfg.fmt == "json" else table_to_csv(rows)
    return text, EXIT_OK


def _repro(cfg: RunConfig, suite: str, inst) -> str:
    lits = " ".join(shlex.quote(str(o)) for o in inst)
    return f"derhall verify {cfg.quiver_arg} --q {cfg.q} --suite {suite} --instance {lits}"


def cmd_verify(args, cfg, Q) -> tuple[str, int]:
    cat = DerivedCategory(Q, cfg.q)
    cap = cfg.enum_cap if cfg.enum_cap is not None else VERIFY_DEFAULT_CAP
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    if args.instance:
        if len(suites) != 1:
            raise InputError("--instance needs a single --suite")
        inst = tuple(parse_object(s, Q) for s in args.instance)
        reports.append(run_instances(cat, suites[0], [inst], cap))
    else:
        objs = _universe(args, cfg, Q)
        for s in suites:
            reports.append(run_suite(cat, s, objs, samples=args.samples, seed=cfg.seed, cap=cap))
    out = {
        "q": cfg.q,
        "quiver": cfg.quiver_arg,
        "enum_cap": cap,
        "passed": all(r.passed for r in reports),
        "suites": [r.as_dict(lambda s, i: _repro(cfg, s, i)) for r in reports],
    }
    if cfg.fmt == "json":
        text = json.dumps(out, indent=1) + "\n"
    else:
        recs = []
        for r in out["suites"]:
            recs.append({k: r[k] for k in ("suite", "passed", "instances", "checks", "skipped_cap", "sampled", "seed")})
            recs[-1]["failures"] = len(r["failures"])
        text = _emit(recs, "csv", list(recs[0]) if recs else ["suite"])
        for r in out["suites"]:
            for f in r["failures"]:
                text += f"# {f['command']}\n"
    return text, EXIT_OK if out["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--quiver", metavar="FILE", help='JSON {"vertices": n, "arrows": [[s, t], ...]}')
    src.add_argument("--linear", metavar="N", type=int, help="use the linearly oriented A_N")
    common.add_argument("--q", metavar="P", type=int, default=2, help="prime field size (default 2)")
    common.add_argument("--window", metavar="W", type=int, default=2, help="shift window for universes (default 2)")
    common.add_argument("--weight-cap", metavar="K", type=int, default=4, help="max summands in universes (default 4)")
    common.add_argument("--enum-cap", metavar="N", type=int, default=None, help="max elements per enumeration")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", metavar="S", type=int, default=0)
    common.add_argument("-o", "--output", metavar="FILE", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="derhall", description="Derived Hall numbers over type A quivers.")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("indec", parents=[common], help="list indecomposables with dimension vectors")

    p = sub.add_parser("hom", parents=[common], help="dim Hom, |Hom| and {X,Y}")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("hallnum", parents=[common], help="the structure constant F_{XY}^L")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("l")
    p.add_argument("--verify", action="store_true", help="evaluate all three methods and compare")

    p = sub.add_parser("table", parents=[common], help="all nonzero F_{XY}^L over a universe")
    p.add_argument("--universe", metavar="LITS", help="';'-separated object literals (default: window/weight-cap)")
    p.add_argument("--verify", action="store_true", help="cross-check every entry across methods")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", metavar="N", type=int, default=300, help="sample size for large instance spaces")
    p.add_argument("--universe", metavar="LITS", help="';'-separated object literals")
    p.add_argument("--instance", metavar="LIT", nargs="+", help="check a single instance")
    return ap


COMMANDS = {"indec": cmd_indec, "hom": cmd_hom, "hallnum": cmd_hallnum, "table": cmd_table, "verify": cmd_verify}


def run(argv: list[str] | None = None) -> tuple[str, str, int]:
    """(stdout text, stderr text, exit code) without touching sys streams."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return "", "", int(e.code or 0) and EXIT_INPUT
    old_cap = ffla.get_enum_cap()
    try:
        cfg = _config(args)
        Q = _quiver(args)
        if cfg.enum_cap is not None:
            ffla.set_enum_cap(cfg.enum_cap)
        text, code = COMMANDS[args.command](args, cfg, Q)
    except ParseError as e:
        return "", f"error: {e}\n", EXIT_INPUT
    except (QuiverError, InputError, OSError) as e:
        return "", f"error: {type(e).__name__}: {e}\n", EXIT_INPUT
    except CapExceeded as e:
        return "", f"error: cap exceeded: {e}\n", EXIT_CAP
    except MethodMismatch as e:
        return "", f"error: {e}\n", EXIT_FAIL
    except ValueError as e:
        return "", f"error: {e}\n", EXIT_INPUT
    finally:
        ffla.set_enum_cap(old_cap)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return "", "", code
    return text, "", code


def main(argv: list[str] | None = None) -> int:
    out, err, code = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
