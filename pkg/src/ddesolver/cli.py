"""Command-line front end: ``ddesolver solve | expand | guess | check``.

Exit codes: 0 ok, 1 uncertified result, 2 parse or input error,
3 assumption violated, 4 budget exhausted, 5 unsupported.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .groebner import BudgetExceeded
from .hermite_pade import Bidegree, GuessProblem, guess_algebraic, prove_guess
from .numeric import QQ
from .parser import DdeSpec, ParseError, load_dde, parse_poly, print_poly, shipped_example
from .series import SeriesError, UniSeries, check_annihilation, expand_specialized
from .solvers import ALGORITHMS, SolveOptions, Unsupported, annihilating_polynomial
from .systems import AssumptionViolated

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_PARSE = 2
EXIT_ASSUMPTION = 3
EXIT_BUDGET = 4
EXIT_UNSUPPORTED = 5


@dataclass
class CliConfig:
    subcommand: str
    input: str | None = None
    algorithm: str = "elimination"
    variable: str = "t"
    seed: int = 0
    prime_bits: int = 31
    max_primes: int = 12
    max_points: int = 400
    threads: int = 1
    format: str = "text"
    extra_saturation: str | None = None
    fiber: int | None = None
    order: int = 10
    deriv: int = 0
    series: str | None = None
    bt: int = 0
    bz0: int = 0
    annihilator: str | None = None
    trace: str | None = None


def _load(path: str | None) -> DdeSpec:
    """A DDE file, or the name of a bundled example when no such file exists."""
    if not path:
        raise ParseError("no input file given")
    if os.path.exists(path):
        return load_dde(path)
    try:
        return shipped_example(os.path.basename(path))
    except FileNotFoundError:
        raise ParseError(f"cannot read {path}") from None


def _read_series(path: str) -> list[Fraction]:
    """Coefficients as a JSON array or one rational per line."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [line for line in text.split() if line]
    if isinstance(data, dict):
        data = data.get("coefficients", [])
    try:
        return [Fraction(str(c)) for c in data]
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad coefficient in {path}: {e}") from None


def _emit(cfg: CliConfig, text: str, record: dict):
    if cfg.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def run_solve(cfg: CliConfig) -> int:
    dde = _load(cfg.input)
    extra = None
    if cfg.extra_saturation:
        extra = parse_poly(cfg.extra_saturation, (dde.t, dde.zvars[0]))
    trace = open(cfg.trace, "w") if cfg.trace else None
    try:
        opts = SolveOptions(
            algorithm=cfg.algorithm,
            eval_variable=cfg.variable,
            prime_bits=cfg.prime_bits,
            seed=cfg.seed,
            max_primes=cfg.max_primes,
            max_points=cfg.max_points,
            fiber=cfg.fiber,
            extra_saturation=extra,
            threads=cfg.threads,
            trace=trace,
        )
        res = annihilating_polynomial(dde, opts)
    finally:
        if trace:
            trace.close()
    _emit(cfg, print_poly(res.R), res.as_dict())
    return EXIT_OK if res.certified_order is not None else EXIT_UNCERTIFIED


def run_expand(cfg: CliConfig) -> int:
    if cfg.order < 0:
        raise ParseError("order must be non-negative")
    dde = _load(cfg.input)
    s = expand_specialized(dde, cfg.order, cfg.deriv)
    coeffs = [str(Fraction(c)) for c in s.coeffs]
    if cfg.format == "json":
        print(json.dumps(coeffs))
    else:
        print("\n".join(coeffs))
    return EXIT_OK


def run_guess(cfg: CliConfig) -> int:
    coeffs = _read_series(cfg.series)
    bd = Bidegree(cfg.bt, cfg.bz0)
    s = UniSeries(coeffs, QQ)
    M = guess_algebraic(GuessProblem(s, bd))
    if M is None:
        _emit(cfg, "no relation", {"R": None, "bidegree": [bd.b_t, bd.b_z0]})
        return EXIT_UNCERTIFIED
    record = {"R": print_poly(M), "bidegree": [bd.b_t, bd.b_z0], "certified_order": None}
    if len(coeffs) >= bd.threshold:
        ok, order = prove_guess(M, s, bd.threshold)
        record["certified_order"] = order if ok else None
    _emit(cfg, record["R"], record)
    return EXIT_OK


def run_check(cfg: CliConfig) -> int:
    dde = _load(cfg.input)
    with open(cfg.annihilator) as fh:
        text = fh.read().strip()
    try:
        text = json.loads(text)["R"]
    except (json.JSONDecodeError, TypeError, KeyError):
        pass
    R = parse_poly(text, (dde.t, dde.zvars[0]))
    if R.is_zero():
        raise ParseError("the annihilator is zero")
    s = expand_specialized(dde, cfg.order)
    order = check_annihilation(R, UniSeries(s.coeffs[: cfg.order], s.K), dde.t, dde.zvars[0])
    order = min(order, cfg.order)
    _emit(cfg, str(order), {"verified_order": order, "requested_order": cfg.order})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ddesolver", description="Polynomial equations for solutions of discrete differential equations.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add_input(p):
        p.add_argument("path", nargs="?", help="DDE file (or a bundled example name)")
        p.add_argument("--input", help="DDE file (same as the positional argument)")

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("solve", help="compute an annihilating polynomial R(t, z0)")
    add_input(s)
    s.add_argument("--algorithm", choices=ALGORITHMS, default="elimination")
    s.add_argument("--variable", choices=("t", "z0"), default="t", help="variable specialized at the evaluation points")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--prime-bits", type=int, default=31)
    s.add_argument("--max-primes", type=int, default=12)
    s.add_argument("--max-points", type=int, default=400)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--extra-saturation", metavar="EXPR", help="polynomial in t, z0 that must not vanish")
    s.add_argument("--fiber", type=int, help="number of distinct u-roots required")
    s.add_argument("--trace", metavar="FILE", help="write JSON-lines progress records")
    add_format(s)

    e = sub.add_parser("expand", help="coefficients of the u-derivative of F(t, a)")
    add_input(e)
    e.add_argument("--order", type=int, default=10, help="last power of t")
    e.add_argument("--deriv", type=int, default=0)
    add_format(e)

    g = sub.add_parser("guess", help="guess M(t, s) = 0 from series coefficients")
    g.add_argument("--series", required=True, help="JSON array or one rational per line")
    g.add_argument("--bt", type=int, required=True)
    g.add_argument("--bz0", type=int, required=True)
    add_format(g)

    c = sub.add_parser("check", help="order to which R(t, F(t, a)) vanishes")
    add_input(c)
    c.add_argument("--annihilator", required=True, help="file with R in t and z0")
    c.add_argument("--order", type=int, required=True)
    add_format(c)
    return ap


def config_from_args(argv=None) -> tuple[CliConfig, bool]:
    ns = build_parser().parse_args(argv)
    d = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__ and v is not None}
    path = getattr(ns, "path", None)
    if path and not d.get("input"):
        d["input"] = path
    return CliConfig(**d), ns.verbose


RUNNERS = {"solve": run_solve, "expand": run_expand, "guess": run_guess, "check": run_check}


def main(argv=None) -> int:
    try:
        cfg, verbose = config_from_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    if verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    try:
        return RUNNERS[cfg.subcommand](cfg)
    except (ParseError, OSError, SeriesError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except AssumptionViolated as e:
        print(f"assumption violated: {e}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except Unsupported as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
