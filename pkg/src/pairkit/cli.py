"""``pairkit`` command line.

Exit codes: 0 success, 1 bad arguments or oversized grid, 2 point outside the
domain or value outside the image, 3 singular fit, 4 verification failure.
Failures print a one-line JSON record ``{"error": ..., "message": ...}`` on
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import diophantine, fitter, oracle, storage
from .inverses import invert_p3d, invert_pkd, invert_result
from .lattice import DomainError, NotInImage, SingularSystem
from .mappings import (
    PiecewiseMapping,
    builtin,
    eval_p3d,
    eval_pkd,
    format_rational,
    parse_map_id,
    with_coefficient,
)

DEFAULT_MAX_GRID = 10_000


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(1, "UsageError", message)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CliError(1, "ParseError", f"bad {what} {text!r}; expected comma-separated integers")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise CliError(1, "ParseError", f"bad range {text!r}; expected a:b")
    if lo > hi:
        raise CliError(1, "ParseError", f"empty range {text!r}")
    return lo, hi


def _map_id(args) -> tuple[str, int | None]:
    try:
        name, param = parse_map_id(args.map)
    except ValueError as exc:
        raise CliError(1, "ParseError", str(exc))
    k = getattr(args, "k", None)
    if k is not None:
        if param is not None and param != k:
            raise CliError(1, "ParseError", f"--k {k} conflicts with {args.map}")
        param = k
    return name, param


def _mapping(name: str, param: int | None) -> PiecewiseMapping:
    try:
        return builtin(name, param)
    except KeyError as exc:
        raise CliError(1, "UnknownMap", str(exc.args[0]))
    except ValueError as exc:
        raise CliError(1, "ParseError", str(exc))


def _value(v):
    return v if isinstance(v, int) else format_rational(v)


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj) if as_json else text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    name, param = _map_id(args)
    point = _ints(args.point, "point")
    rec = {"map": args.map if args.k is None else f"{name}({param})", "point": list(point)}
    if name in ("p3d", "pkd"):
        if name == "p3d" and len(point) != 3:
            raise CliError(1, "ParseError", "p3d takes a point x,y,z")
        if name == "pkd" and param is not None and len(point) != param:
            raise CliError(1, "ParseError", f"pkd({param}) takes {param} coordinates")
        v = eval_p3d(point) if name == "p3d" else eval_pkd(point)
    else:
        if len(point) != 2:
            raise CliError(1, "ParseError", "planar maps take a point x,y")
        m = _mapping(name, param)
        v = m(*point)
        idx = m.region_of(point)
        rec["region"] = None if point in m.exceptional else idx
        if rec["region"] is not None:
            rec["form"] = [format_rational(c) for c in m.regions[idx][1].coeffs]
    rec["value"] = _value(v)
    _emit(rec, args.json, str(rec["value"]))
    return 0


def cmd_invert(args) -> int:
    name, param = _map_id(args)
    if name == "p3d":
        point, method = invert_p3d(args.z), "shell_arithmetic"
    elif name == "pkd":
        if param is None:
            raise CliError(1, "ParseError", "pkd needs a dimension, e.g. pkd(3) or --k 3")
        point, method = invert_pkd(args.z, param), "shell_arithmetic"
    else:
        res = invert_result(_mapping(name, param), args.z)
        point, method = res.point, res.method
    rec = {"map": args.map, "value": args.z, "point": list(point), "method": method}
    _emit(rec, args.json, ",".join(map(str, point)))
    return 0


def _window(text: str | None):
    if text is None:
        return None
    try:
        xs, ys = text.split(",")
    except ValueError:
        raise CliError(1, "ParseError", f"bad window {text!r}; expected xmin:xmax,ymin:ymax")
    return (*_range(xs), *_range(ys))


def cmd_fit(args) -> int:
    try:
        samples = fitter.read_samples(Path(args.points).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(1, "ParseError", str(exc))
    dims = {len(s.point) for s in samples}
    if dims == {3}:
        if len(samples) != 20:
            raise CliError(1, "ParseError", f"a 3D fit needs 20 rows, got {len(samples)}")
        try:
            form = fitter.fit3d(samples)
        except SingularSystem as exc:
            raise CliError(3, "SingularSystem", str(exc))
        out = {"form": fitter.cubic_report(form), "validation": "unchecked"}
        summary = "FITTED " + " ".join(f"{k}={v}" for k, v in out["form"].items())
    else:
        if dims != {2} or len(samples) != 6:
            raise CliError(1, "ParseError", f"a 2D fit needs 6 rows of x,y,value, got {len(samples)}")
        if args.reference:
            ref = _mapping(*_map_id(argparse.Namespace(map=args.reference, k=None)))
            try:
                report = fitter.fit_and_validate(samples, ref, _window(args.window), region_index=args.region)
            except ValueError as exc:
                raise CliError(1, "ParseError", str(exc))
            out = report.to_json()
        else:
            a, b = fitter.build_system(samples)
            d = fitter.det(a)
            report = fitter.FitReport(None if d == 0 else fitter.QuadForm(*fitter.solve_exact(a, b)),
                                      d, "singular" if d == 0 else "unchecked", samples)
            out = report.to_json()
        summary = out["validation"].upper()
        if out["form"]:
            summary += " " + " ".join(f"{k}={v}" for k, v in out["form"].items())
        summary += f" det={out['determinant']}"
        if out["mismatches"]:
            m0 = out["mismatches"][0]
            summary += f" first mismatch at {tuple(m0['point'])}: expected {m0['expected']}, got {m0['got']}"
    if args.out:
        Path(args.out).write_text(json.dumps(out, indent=2) + "\n")
    print(summary)
    if out["validation"] == "singular":
        raise CliError(3, "SingularSystem", "zero determinant: the sample pattern does not fix a polynomial")
    return 0


def cmd_verify(args) -> int:
    name, param = _map_id(args)
    if name in ("p3d", "pkd"):
        if args.corrupt:
            raise CliError(1, "ParseError", "--corrupt applies to planar maps only")
        target = name if param is None else f"{name}({param})"
        report = oracle.verify_bijection(target, args.count)
    else:
        m = _mapping(name, param)
        if args.corrupt:
            region, coef, delta = args.corrupt.split(",")
            m = with_coefficient(m, int(region), int(coef), delta)
        report = oracle.verify_bijection(m, args.count, walk_id=args.map)
    print(report.summary())
    return 0 if report.passed else 4


def cmd_enumerate(args) -> int:
    try:
        trace = oracle.enumerate_map(args.map, args.count)
    except KeyError as exc:
        raise CliError(1, "UnknownMap", str(exc.args[0]))
    text = trace.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def render_grid(m: PiecewiseMapping, xrange: tuple[int, int], yrange: tuple[int, int],
                width: int = 0, brackets: bool = False, region: int = 0) -> str:
    """ASCII picture of ``m``: top row is the largest y, cells right-aligned.

    Out-of-domain cells are blank, or with ``brackets`` show the raw value of
    region ``region``'s polynomial in brackets; excluded points show ``×``.
    """
    xs = range(xrange[0], xrange[1] + 1)
    ys = range(yrange[1], yrange[0] - 1, -1)
    raw = m.regions[region][1]
    cells = {}
    for y in ys:
        for x in xs:
            p = (x, y)
            if p in m.excluded:
                cells[p] = "×"
            elif m.in_domain(p):
                cells[p] = str(_value(m(x, y)))
            elif brackets:
                cells[p] = f"[{_value(raw(x, y))}]"
            else:
                cells[p] = ""
    w = max([width, *(len(c) for c in cells.values()), *(len(str(x)) for x in xs)])
    lw = max(len(str(y)) for y in ys)
    lines = [f"{y:>{lw}} |" + "".join(f" {cells[(x, y)]:>{w}}" for x in xs) for y in ys]
    lines.append(" " * lw + " +" + "-" * ((w + 1) * len(xs)))
    lines.append(" " * lw + "  " + "".join(f" {x:>{w}}" for x in xs))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_render(args) -> int:
    m = _mapping(*_map_id(args))
    xr, yr = _range(args.xrange), _range(args.yrange)
    cells = (xr[1] - xr[0] + 1) * (yr[1] - yr[0] + 1)
    limit = int(os.environ.get("PAIRKIT_MAX_GRID", DEFAULT_MAX_GRID))
    if cells > limit:
        raise CliError(1, "GridTooLarge", f"{cells} cells exceeds PAIRKIT_MAX_GRID={limit}")
    if not 0 <= args.region < len(m.regions):
        raise CliError(1, "ParseError", f"{m.name} has regions 0..{len(m.regions) - 1}")
    sys.stdout.write(render_grid(m, xr, yr, args.width, args.brackets, args.region))
    return 0


def cmd_dioph(args) -> int:
    if args.scan is not None:
        try:
            report = diophantine.uniqueness_scan(args.eq, args.scan)
        except KeyError as exc:
            raise CliError(1, "ParseError", str(exc.args[0]))
        print(json.dumps(report.to_json()))
        return 0
    if args.z is None:
        raise CliError(1, "UsageError", "dioph needs --z or --scan")
    if args.eq == "cantor":
        res = diophantine.solve_cantor_dioph(args.z, a=args.a, brute=args.brute)
    elif args.eq == "triangular":
        if args.a is not None:
            raise CliError(1, "UsageError", "--a applies to the cantor equation")
        res = diophantine.solve_triangular_dioph(args.z, brute=args.brute)
    else:
        raise CliError(1, "UsageError", f"no solver for {args.eq!r}; use --scan")
    print(res.dumps())
    return 0


def cmd_bench(args) -> int:
    print(json.dumps(storage.bench(args.order, args.reads, args.seed)))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pairkit", description="Exact pairing polynomials on integer lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def mapped(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--map", required=True, help="map id, e.g. cantor1, saw(5), p3d, pkd(3)")
        s.add_argument("--k", type=int, help="parameter for saw/comb/sheared, or pkd dimension")
        return s

    s = mapped("eval", "evaluate a mapping at a point")
    s.add_argument("--point", required=True, help='"x,y" or "x,y,z"')
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_eval)

    s = mapped("invert", "find the point carrying a value")
    s.add_argument("--z", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_invert)

    s = sub.add_parser("fit", help="fit a polynomial through 6 (2D) or 20 (3D) samples")
    s.add_argument("--points", required=True, help="CSV of x,y,value or x,y,z,value")
    s.add_argument("--reference", help="mapping to validate against")
    s.add_argument("--window", help="validation window xmin:xmax,ymin:ymax")
    s.add_argument("--region", type=int, help="validate only on this region of the reference")
    s.add_argument("--out", help="write the fit report JSON here")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("verify", help="compare a mapping with its geometric walk")
    s.add_argument("--map", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--count", type=int, default=100_000)
    s.add_argument("--corrupt", help="region,coefficient,delta: nudge one coefficient first")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="list the walk order as CSV")
    s.add_argument("--map", required=True)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = mapped("render", "draw the values on a window as an ASCII grid")
    s.add_argument("--xrange", default="0:5")
    s.add_argument("--yrange", default="0:5")
    s.add_argument("--width", type=int, default=0, help="minimum cell width")
    s.add_argument("--brackets", action="store_true", help="show raw values outside the domain")
    s.add_argument("--region", type=int, default=0, help="region whose raw values --brackets shows")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("dioph", help="solve or scan the pairing Diophantine equations")
    s.add_argument("--z", type=int, help="query value (z or c)")
    s.add_argument("--eq", default="cantor", help="cantor | triangular | degraded")
    s.add_argument("--a", type=int, help="force a (cantor only)")
    s.add_argument("--brute", action="store_true")
    s.add_argument("--scan", type=int, metavar="BOUND", help="uniqueness scan up to BOUND")
    s.set_defaults(func=cmd_dioph)

    s = sub.add_parser("bench", help="packed vs padded triangular storage timings")
    s.add_argument("--order", type=int, default=400)
    s.add_argument("--reads", type=int, default=200_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


_VALUE_FLAGS = ("--xrange", "--yrange", "--point", "--window", "--corrupt")


def _glue_negatives(argv: list[str]) -> list[str]:
    # "--xrange -4:4" would otherwise read "-4:4" as an option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negatives(argv))
        return args.func(args)
    except CliError as exc:
        err = {"error": exc.kind, "message": str(exc)}
        code = exc.code
    except DomainError as exc:
        err, code = {"error": "DomainError", "message": str(exc)}, 2
    except NotInImage as exc:
        err, code = {"error": "NotInImage", "message": str(exc)}, 2
    except ValueError as exc:
        err, code = {"error": "ValueError", "message": str(exc)}, 1
    print(json.dumps(err), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
