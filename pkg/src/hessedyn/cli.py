"""Command-line interface: ``hessedyn <subcommand> [options]``.

Exit codes: 0 success, 1 check failure, 2 resource exhaustion, 3 bad input.
"""

import argparse
import ast
import csv
import io
import json
import math
import operator
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .dynamics import (basin_labels, complex_periodic_points, inverse_iteration_sample,
                       superattracting_cycles, UNRESOLVED)
from .errors import CheckFailure, HesseError, ResourceBoundError, budget
from .exactnum import EPS, CycloRat
from .maps import BY_NAME
from .ratmap import ProjPoint
from .words import (Word, all_words, collision_scan, ends_with_h, map_digest,
                    measured_leading, predicted_leading, psi, to_hi)

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_INPUT = 0, 1, 2, 3

_NAMES = {"hessian": "h", "cayleyan": "c", "iota": "i"}


class BadInput(HesseError, ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing and formatting


def parse_map(name):
    """A named map (``h``, ``c``, ``i``, ``phi``, ``gamma``) or a word over ``{h, c}``."""
    key = _NAMES.get(name, name)
    if key in BY_NAME:
        return BY_NAME[key]
    try:
        return psi(Word(key))
    except ValueError:
        raise BadInput(f"unknown map {name!r}") from None


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_exact(node):
    if isinstance(node, ast.Expression):
        return _eval_exact(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id == "eps":
        return EPS
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_exact(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_exact(node.left), _eval_exact(node.right))
    raise ValueError("unsupported expression")


def parse_point(text):
    """``inf``, a rational (``-1/2``, ``0.25``), an element of Q(eps) such as
    ``1/4 - eps/2``, or a floating complex (``0.3-1.2i``)."""
    t = text.strip().lower().replace(" ", "")
    if t in ("inf", "oo", "infinity"):
        return ProjPoint(0, 1)
    try:
        return ProjPoint(1, Fraction(t))
    except (ValueError, ZeroDivisionError):
        pass
    if "eps" in t:
        try:
            v = _eval_exact(ast.parse(t, mode="eval"))
        except (SyntaxError, ValueError, ZeroDivisionError):
            raise BadInput(f"cannot parse point {text!r}") from None
        if isinstance(v, CycloRat) and v.is_rational():
            v = Fraction(v.a)
        return ProjPoint(1, v)
    try:
        return ProjPoint.of(complex(t.replace("i", "j")))
    except ValueError:
        raise BadInput(f"cannot parse point {text!r}") from None


def fmt_complex(z):
    z = complex(z)
    if math.isinf(z.real) or math.isinf(z.imag):
        return "inf"
    re_, im = z.real + 0.0, z.imag + 0.0
    return f"{re_:.17g}{im:+.17g}i"


def fmt_point(p):
    if p.is_inf():
        return "inf"
    if p.is_exact():
        return str(p.value())
    return fmt_complex(p.to_complex())


@contextmanager
def _open_out(path, binary=False):
    if path in (None, "-"):
        yield sys.stdout.buffer if binary else sys.stdout
    else:
        with open(path, "wb" if binary else "w", newline="" if not binary else None) as fh:
            yield fh


def _write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    with _open_out(path) as fh:
        fh.write(buf.getvalue())


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args):
    from .hesse import DEFAULT_SUITES, SUITES, run_suites
    names = args.suite or DEFAULT_SUITES
    for n in names:
        if n not in SUITES:
            raise BadInput(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    options = {"julia-dichotomy": {"max_word_len": args.max_word_len},
               "s-numbers": {"seed": args.seed}, "geometry": {"seed": args.seed},
               "basin-bounds": {"seed": args.seed}}
    results = run_suites(names, threads=args.threads, options=options)
    lines = []
    for r in results:
        d = r.as_dict()
        d.pop("seconds")
        lines.append(json.dumps(d, sort_keys=True, default=str))
    with _open_out(args.out) as fh:
        fh.write("\n".join(lines) + "\n")
    failed = [r.id for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=sys.stderr)
    for f in failed:
        print(f"FAILED {f}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_words(args):
    if args.max_len > args.bound:
        raise ResourceBoundError(f"max_len {args.max_len} exceeds the bound {args.bound}")
    if args.max_len < 1:
        raise BadInput("max_len must be >= 1")
    do_all = not (args.collisions or args.leading or args.ends_with_h)
    collided = set()
    if do_all or args.collisions:
        rep = collision_scan(args.max_len, bound=args.bound)
        for a, b in rep.collisions:
            collided.update((a, b))
    rows = []
    bad = bool(collided)
    for w in all_words(args.max_len):
        f = psi(w)
        order, mag = predicted_leading(w)
        row = [w, f.degree, w.ec, "", str(mag), "", map_digest(f), "", ""]
        if do_all or args.leading:
            o2, b = measured_leading(w)
            row[3] = o2
            row[5] = str(b)
            bad |= o2 != order or abs(b) != mag
        if do_all or args.collisions:
            row[7] = str(w in collided).lower()
        if do_all or args.ends_with_h:
            e = ends_with_h(to_hi(w))
            row[8] = str(e).lower()
            bad |= e != (w[-1] == "h")
        rows.append(row)
    _write_csv(args.out, ["word", "degree", "e_c", "order_at_inf", "predicted_abs_leading",
                          "measured_leading", "map_hash", "collision", "ends_with_h"], rows)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_periodic(args):
    f = parse_map(args.map)
    if args.n < 1:
        raise BadInput("--n must be >= 1")
    recs = complex_periodic_points(f, args.n)
    rows = [[r.period, fmt_point(r.representative), fmt_complex(r.multiplier), r.cls,
             str(r.is_real).lower()] for r in recs]
    _write_csv(args.out, ["period", "point", "multiplier", "class", "is_real"], rows)
    return EXIT_OK


def cmd_orbit(args):
    f = parse_map(args.map)
    p = parse_point(args.start)
    if args.steps < 0:
        raise BadInput("--steps must be >= 0")
    rows = [[0, fmt_point(p)]]
    for k in range(1, args.steps + 1):
        p = f.apply_point(p)
        rows.append([k, fmt_point(p)])
    _write_csv(args.out, ["step", "point"], rows)
    return EXIT_OK


@dataclass
class RenderConfig:
    map_name: str
    width: int = 400
    height: int = 400
    window: tuple = (-3.0, 3.0, -3.0, 3.0)
    chart: str = "v"
    max_iter: int = 200
    capture_radius: float = 1e-3
    out: str = "basin.ppm"

    def validate(self):
        if self.width < 1 or self.height < 1:
            raise BadInput("width and height must be >= 1")
        x0, x1, y0, y1 = self.window
        if not (x1 > x0 and y1 > y0):
            raise BadInput("degenerate window")
        if self.max_iter < 1:
            raise BadInput("max_iter must be >= 1")
        if self.chart not in ("v", "lambda"):
            raise BadInput("chart must be 'v' or 'lambda'")


PALETTE = [(230, 159, 0), (86, 180, 233), (0, 158, 115), (240, 228, 66),
           (0, 114, 178), (213, 94, 0), (204, 121, 167)]
UNRESOLVED_COLOR = (0, 0, 0)


def render_grid(cfg):
    """Pixel centres as ``l`` values (rows from top), shape ``(height, width)``."""
    x0, x1, y0, y1 = cfg.window
    xs = x0 + (np.arange(cfg.width) + 0.5) * (x1 - x0) / cfg.width
    ys = y1 - (np.arange(cfg.height) + 0.5) * (y1 - y0) / cfg.height
    z = xs[None, :] + 1j * ys[:, None]
    return z - 0.5 if cfg.chart == "v" else z


def render(cfg, threads=1):
    """Returns ``(rgb array, labels, attractor cycles)``."""
    cfg.validate()
    f = parse_map(cfg.map_name)
    cycles = superattracting_cycles(f)
    lam = render_grid(cfg)
    if cycles:
        labels, iters = basin_labels(f, lam, cycles, cfg.max_iter, cfg.capture_radius, threads)
    else:
        labels = np.full(lam.shape, UNRESOLVED, dtype=np.int32)
        iters = np.full(lam.shape, cfg.max_iter, dtype=np.int32)
    rgb = np.zeros(lam.shape + (3,), dtype=np.uint8)
    shade = 1.0 - 0.55 * np.minimum(iters, 30) / 30.0
    for j in range(len(cycles)):
        col = np.array(PALETTE[j % len(PALETTE)], dtype=np.float64)
        mask = labels == j
        rgb[mask] = (col[None, :] * shade[mask][:, None]).astype(np.uint8)
    rgb[labels == UNRESOLVED] = UNRESOLVED_COLOR
    return rgb, labels, cycles


def write_ppm(path, rgb, comments=()):
    h, w, _ = rgb.shape
    head = "P6\n" + "".join(f"# {c}\n" for c in comments) + f"{w} {h}\n255\n"
    with _open_out(path, binary=True) as fh:
        fh.write(head.encode("ascii"))
        fh.write(np.ascontiguousarray(rgb, dtype=np.uint8).tobytes())


def cmd_render(args):
    cfg = RenderConfig(args.map, args.width, args.height, tuple(args.window), args.chart,
                       args.max_iter, args.capture_radius, args.out or "basin.ppm")
    rgb, labels, cycles = render(cfg, threads=args.threads)
    names = ["{" + " ".join(fmt_point(p) for p in c) + "}" for c in cycles]
    unresolved = int((labels == UNRESOLVED).sum())
    comments = [f"map {cfg.map_name} chart {cfg.chart} window {' '.join(map(str, cfg.window))}"]
    comments += [f"attractor {j} {n} color {PALETTE[j % len(PALETTE)]}" for j, n in enumerate(names)]
    comments.append(f"unresolved {unresolved}")
    write_ppm(cfg.out, rgb, comments)
    footer = [f"attractor {j} {n}: {int((labels == j).sum())} pixels" for j, n in enumerate(names)]
    footer.append(f"unresolved: {unresolved} pixels")
    print("\n".join(footer), file=sys.stderr)
    return EXIT_OK


def cmd_julia(args):
    f = parse_map(args.map)
    if args.samples < 1:
        raise BadInput("--samples must be >= 1")
    pts = inverse_iteration_sample(f, args.samples, args.seed, burn_in=args.burn_in)
    rows = [[k, fmt_complex(z)] for k, z in enumerate(pts)]
    _write_csv(args.out, ["index", "point"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _global_flags(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--out", default=d(None), help="output path (default: stdout)")
    p.add_argument("--threads", type=int, default=d(1))
    p.add_argument("--budget-seconds", type=float, default=d(None))
    p.add_argument("--seed", type=int, default=d(0), help="unsigned 64-bit seed")


def build_parser():
    ap = argparse.ArgumentParser(prog="hessedyn", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    _global_flags(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the theorem checks")
    p.add_argument("--suite", action="append", help="suite name (repeatable)")
    p.add_argument("--max-word-len", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("words", help="word table")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--collisions", action="store_true")
    p.add_argument("--leading", action="store_true")
    p.add_argument("--ends-with-h", action="store_true")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("periodic", help="points of period dividing n")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("orbit", help="forward orbit")
    p.add_argument("--map", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("render", help="basin picture (binary PPM)")
    p.add_argument("--map", required=True)
    p.add_argument("--width", type=int, default=400)
    p.add_argument("--height", type=int, default=400)
    p.add_argument("--window", type=float, nargs=4, default=[-3.0, 3.0, -3.0, 3.0],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--chart", choices=["v", "lambda"], default="v",
                   help="window coordinates: v = l + 1/2 or l itself")
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--capture-radius", type=float, default=1e-3)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("julia", help="inverse-iteration sample")
    p.add_argument("--map", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--burn-in", type=int, default=64)
    p.set_defaults(func=cmd_julia)

    for sp in sub.choices.values():
        _global_flags(sp, suppress=True)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code == 0 else EXIT_INPUT
    if args.threads < 1 or not (0 <= args.seed < 2 ** 64):
        print("error: --threads must be >= 1 and --seed in [0, 2^64)", file=sys.stderr)
        return EXIT_INPUT
    try:
        with budget(args.budget_seconds):
            return args.func(args)
    except ResourceBoundError as ex:
        print(f"resource bound: {ex}", file=sys.stderr)
        return EXIT_RESOURCE
    except CheckFailure as ex:
        print(f"check failed: {ex}", file=sys.stderr)
        return EXIT_FAIL
    except (BadInput, ValueError, KeyError) as ex:
        print(f"bad input: {ex}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
