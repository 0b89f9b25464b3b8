"""Command-line front end.

Exit codes: 0 pass, 1 input/validation error, 2 verification failure.
Floats are written with 17 significant digits so output is byte-stable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import gauss_sum as gs
from . import heisenberg_weil as hw
from . import optics
from . import talbot
from . import theta as th
from .exact_core import is_prime

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
DEFAULT_TOL = 1e-9
OUTDIR_ENV = "TALBOT_GAUSS_OUTDIR"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _cjson(z: complex) -> list[float]:
    return [float(fmt(z.real)), float(fmt(z.imag))]


@dataclass
class RunConfig:
    """Sweep bounds and tolerances, from flags or a key=value file."""

    p_max: int = 40
    q_max: int = 40
    d_max: int = 5
    tol: float = DEFAULT_TOL


def read_config(path: str | os.PathLike) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


def resolve_output(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(text: str, output: str | None):
    dest = resolve_output(output)
    if dest is None:
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _parse_frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"not a rational number: {s!r}") from e


def _parse_range(s: str) -> tuple[int, int]:
    try:
        lo, hi = s.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as e:
        raise InputError(f"range must look like a..b, got {s!r}") from e
    if lo > hi:
        raise InputError(f"empty range {s!r}")
    return lo, hi


def _parse_matrix(s: str) -> list[Fraction]:
    parts = s.split(",")
    if len(parts) != 4:
        raise InputError(f"matrix needs four comma-separated entries, got {s!r}")
    return [_parse_frac(x) for x in parts]


def _parse_element(s: str) -> optics.Rational2x2:
    if s.startswith("prop:"):
        return optics.free_prop(_parse_frac(s[5:]))
    if s.startswith("lens:"):
        return optics.thin_lens(_parse_frac(s[5:]))
    return optics.Rational2x2(*_parse_matrix(s))


def _matrix_json(g: optics.Rational2x2) -> dict:
    return {k: str(v) for k, v in zip("ABCD", g.entries())}


# --- subcommands -----------------------------------------------------------

def cmd_gauss_sum(args) -> int:
    if args.q < 1 or math.gcd(args.p, args.q) != 1:
        raise InputError("need q >= 1 and gcd(p, q) = 1")
    d = _parse_frac(args.d)
    val = gs.evaluate(args.p, args.q, d, args.variant)
    closed = None
    if args.variant == gs.FULL and d == 0 and args.q >= 3 and is_prime(args.q):
        closed = abs(val.value - gs.legendre_reduction(args.p, args.q))
    report = {
        "p": args.p, "q": args.q, "d": str(d), "variant": args.variant,
        "re": float(fmt(val.value.real)), "im": float(fmt(val.value.imag)),
        "abs2": float(fmt(val.abs2)),
        "closed_form_residual": None if closed is None else float(fmt(closed)),
    }
    _emit(_dumps(report), args.output)
    return EXIT_OK


def cmd_reciprocity(args) -> int:
    cfg = RunConfig()
    if args.config:
        for k, v in read_config(args.config).items():
            if k not in ("p_max", "q_max", "d_max", "tol"):
                raise InputError(f"unknown config key {k!r}")
            setattr(cfg, k, float(v) if k == "tol" else int(v))
    if args.max is not None:
        cfg.p_max = cfg.q_max = args.max
    for name in ("p_max", "q_max", "d_max", "tol"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if cfg.p_max < 1 or cfg.q_max < 1 or cfg.d_max < 0 or cfg.tol <= 0:
        raise InputError("sweep bounds must be positive")

    reports = gs.reciprocity_sweep(cfg.p_max, cfg.q_max, cfg.d_max)
    asserted = [r.residual for r in reports if r.asserted]
    worst = max(asserted, default=0.0)
    failed = worst >= cfg.tol

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "d", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                "residual", "status"])
    for r in reports:
        status = ("pass" if r.residual < cfg.tol else "FAIL") if r.asserted else "unasserted"
        w.writerow([r.p, r.q, r.d, fmt(r.lhs.real), fmt(r.lhs.imag),
                    fmt(r.rhs.real), fmt(r.rhs.imag), fmt(r.residual), status])
    if args.output:
        _emit(buf.getvalue(), args.output)
    elif args.table:
        sys.stdout.write(buf.getvalue())
    n_odd = sum(not r.asserted for r in reports)
    print(f"reciprocity: {len(asserted)} asserted cases, max residual {fmt(worst)} "
          f"(tol {cfg.tol:g}); {n_odd} odd-odd cases unasserted -> "
          f"{'FAIL' if failed else 'pass'}", file=sys.stderr if not args.output else sys.stdout)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_talbot(args) -> int:
    if args.p < 1 or args.q < 1 or math.gcd(args.p, args.q) != 1:
        raise InputError("need coprime p, q >= 1")
    lo, hi = _parse_range(args.n)
    params = optics.standard_params(args.p, args.q)
    pat = talbot.pattern(params, lo, hi, args.variant)
    gap = talbot.reciprocity_gap(params, lo, hi)

    if args.format == "json":
        text = _dumps([{"n": s.n, "position": str(s.position),
                        "position_decimal": float(fmt(float(s.position))),
                        "re": float(fmt(s.amplitude.real)),
                        "im": float(fmt(s.amplitude.imag)),
                        "intensity": float(fmt(s.intensity))} for s in pat.spots])
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "position", "re", "im", "intensity"])
        for s in pat.spots:
            w.writerow([s.n, fmt(float(s.position)), fmt(s.amplitude.real),
                        fmt(s.amplitude.imag), fmt(s.intensity)])
        text = buf.getvalue()
    _emit(text, args.output)
    summary = sys.stdout if args.output else sys.stderr
    print(f"talbot p={args.p} q={args.q} n={lo}..{hi}: "
          f"max |A_I - A_II| = {fmt(gap)}", file=summary)
    if args.check and gap >= args.tol:
        print(f"reciprocity check FAILED (tol {args.tol:g})", file=summary)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_optics(args) -> int:
    if args.action == "compose":
        if not args.elements:
            raise InputError("compose needs at least one element")
        g = optics.Rational2x2.identity()
        for s in args.elements:
            g = optics.compose(g, _parse_element(s))
        report = {"product": _matrix_json(g), "det": str(g.det)}
    elif args.action == "decompose":
        if args.p is None or args.q is None:
            raise InputError("decompose needs --p and --q")
        if args.p < 1 or args.q < 1 or math.gcd(args.p, args.q) != 1:
            raise InputError("need coprime p, q >= 1")
        m1, m2 = optics.talbot_decomposition(args.p, args.q)
        prod = m1 @ m2
        report = {"M1": _matrix_json(m1), "M2": _matrix_json(m2),
                  "product": _matrix_json(prod), "det_M2": str(m2.det),
                  "exact": prod == optics.standard_talbot_matrix(args.p, args.q)}
    else:  # hat
        if not args.elements or len(args.elements) != 1:
            raise InputError("hat needs exactly one matrix element")
        g = _parse_element(args.elements[0])
        ghat = optics.scale_to_hat(g, _parse_frac(args.a), _parse_frac(args.lam))
        report = {"hat": _matrix_json(ghat.matrix)}
        if ghat.A != 0 and ghat.B != 0:
            fp = optics.fractional_params(ghat)
            report["fractional"] = {
                "p": fp.p, "q": fp.q, "kappa1": str(fp.kappa1), "kappa2": str(fp.kappa2),
                "kappa3": str(fp.kappa3), "kappa1_hat": str(fp.kappa1_hat),
                "kappa3_hat": str(fp.kappa3_hat)}
    _emit(_dumps(report), args.output)
    return EXIT_OK


def cmd_theta(args) -> int:
    try:
        u, tau = complex(args.u.replace("i", "j")), complex(args.tau.replace("i", "j"))
    except ValueError as e:
        raise InputError(str(e)) from e
    if tau.imag <= 0:
        raise InputError("theta needs Im tau > 0")
    val = th.theta(u, tau)
    res = th.jacobi_transform_residual(u, tau)
    _emit(_dumps({"u": _cjson(u), "tau": _cjson(tau), "theta": _cjson(val),
                  "jacobi_transform_residual": float(fmt(res))}), args.output)
    return EXIT_VERIFY if res >= args.tol else EXIT_OK


def cmd_weil(args) -> int:
    b = args.b
    if b < 1 or b % 2 == 0:
        raise InputError(f"modulus must be odd and positive, got {b}")
    entries = _parse_matrix(args.g)
    if any(e.denominator != 1 for e in entries):
        raise InputError("matrix entries must be integers")
    g = [int(e) for e in entries]
    try:
        chi = hw.CharacterParam(args.p, b)
        w = hw.weil_matrix(g, chi)
    except ValueError as e:
        raise InputError(str(e)) from e

    unit = w.unitarity_residual()
    inter = {str(h.key()): hw.intertwine_residual(g, h, chi)
             for h in hw.generator_elements(b)}
    cocycles = []
    for name, gen in hw.GENERATORS_SL2.items():
        rep = hw.kernel_composition(g, gen, chi)
        cocycles.append({"with": name, "factor": _cjson(rep.factor),
                         "residual": float(fmt(rep.residual)),
                         "modulus_error": float(fmt(rep.modulus_error))})
    report = {
        "b": b, "g": [x % b for x in g], "branch": w.notes.get("branch"),
        "entries": [[_cjson(z) for z in row] for row in w.entries],
        "unitarity_residual": float(fmt(unit)),
        "intertwining_residuals": {k: float(fmt(v)) for k, v in inter.items()},
        "cocycles": cocycles,
    }
    _emit(_dumps(report), args.output)
    if args.verify:
        worst = max([unit, *inter.values()]
                    + [c["residual"] for c in cocycles]
                    + [c["modulus_error"] for c in cocycles])
        if worst >= args.tol:
            print(f"weil verification FAILED: worst residual {fmt(worst)}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def cmd_heisenberg(args) -> int:
    if args.b < 1 or args.b % 2 == 0:
        raise InputError("modulus must be odd and positive")
    if args.b > 7:
        raise InputError("cayley tables are limited to b <= 7")
    elems, table = hw.cayley_table(args.b)
    if args.format == "json":
        text = _dumps({"b": args.b, "elements": [list(e) for e in elems], "table": table})
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "x", "u", "z", *range(len(elems))])
        for i, (e, row) in enumerate(zip(elems, table)):
            w.writerow([i, *e, *row])
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="talbot-gauss",
                 description="Gauss sums, fractional Talbot amplitudes and the finite Weil representation.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gauss-sum", help="evaluate G(p, q, d)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--d", default="0")
    s.add_argument("--variant", choices=[gs.FULL, gs.HALF], default=gs.FULL)
    s.add_argument("--output")
    s.set_defaults(func=cmd_gauss_sum)

    s = sub.add_parser("reciprocity", help="sweep the Hecke reciprocity residual")
    s.add_argument("--max", type=int, help="sets both p_max and q_max")
    s.add_argument("--p-max", dest="p_max", type=int)
    s.add_argument("--q-max", dest="q_max", type=int)
    s.add_argument("--d-max", dest="d_max", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--config", help="key=value file with p_max, q_max, d_max, tol")
    s.add_argument("--table", action="store_true", help="print the CSV table to stdout")
    s.add_argument("--output")
    s.set_defaults(func=cmd_reciprocity)

    s = sub.add_parser("talbot", help="fractional Talbot spot pattern")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", default="0..0", help="spot index range a..b")
    s.add_argument("--variant", choices=talbot.VARIANTS, default=talbot.DIRECT_I)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--check", action="store_true")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--output")
    s.set_defaults(func=cmd_talbot)

    s = sub.add_parser("optics", help="compose, decompose or rescale ABCD systems")
    s.add_argument("action", choices=["compose", "decompose", "hat"])
    s.add_argument("elements", nargs="*",
                   help="prop:DZ, lens:P or A,B,C,D (product in the order given)")
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--a", default="1")
    s.add_argument("--lam", default="1")
    s.add_argument("--output")
    s.set_defaults(func=cmd_optics)

    s = sub.add_parser("theta", help="theta(u, tau) and its Jacobi-transform residual")
    s.add_argument("--u", default="0")
    s.add_argument("--tau", default="1j")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--output")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("weil", help="Weil representation matrix over Z/bZ")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--g", required=True, help="A,B,C,D")
    s.add_argument("--p", type=int, default=1, help="character chi(z) = exp(2 pi i p z / b)")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--output")
    s.set_defaults(func=cmd_weil)

    s = sub.add_parser("heisenberg", help="Cayley table of the finite Heisenberg group")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_heisenberg)
    return ap


def _glue_negative_values(argv: list[str]) -> list[str]:
    # lets "--n -3..3" and "--g -1,0,0,-1" through argparse's option sniffing
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--n", "--g", "--u", "--tau", "--d") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
