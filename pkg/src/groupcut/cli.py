"""Command-line entry point: ``groupcut <command> (--builtin NAME | --input FILE) ...``.

Exit status: 0 when a verdict or report was produced (any verdict), 2 for
bad input, 3 when the closure budget ran out, 4 when the grid oracle and the
grid-free test disagree.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import svg
from .closure import NotMinimalError, closure_of
from .complex2d import check_minimality
from .corpus import generate
from .exactnum import format_rat, rat
from .gridoracle import grid_extremality_oracle, grid_perturbation_dimension, oracle_grid_size, restrict_to_grid
from .perturbation import (
    UnsupportedInput,
    epsilon_for,
    equivariant_sample,
    extremality_test,
    finite_dim_space,
    refine,
    uncovered_components,
)
from .pwl import CATALOG_NAMES, PwlFunction, catalog

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE = 0, 2, 3, 4

log = logging.getLogger("groupcut")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    builtin: Optional[str] = None
    input: Optional[str] = None
    f: Optional[Fraction] = None
    s: Optional[Fraction] = None
    json_path: Optional[str] = None
    svg_path: Optional[str] = None
    closure_svg: Optional[str] = None
    budget: Optional[int] = None
    oversample: int = 4
    what: str = "function"
    seed: int = 0
    count: int = 100


def load_function(cfg: RunConfig) -> PwlFunction:
    if (cfg.builtin is None) == (cfg.input is None):
        raise InputError("give exactly one of --builtin and --input")
    if cfg.builtin is not None:
        params = {k: v for k, v in (("f", cfg.f), ("s", cfg.s)) if v is not None}
        try:
            return catalog(cfg.builtin, **params)
        except KeyError as exc:
            raise InputError(exc.args[0]) from exc
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    try:
        with open(cfg.input, encoding="utf-8") as fh:  # type: ignore[arg-type]
            data = json.load(fh)
        fn = PwlFunction.from_json(data)
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc}") from exc
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"malformed input {cfg.input}: {exc}") from exc
    if cfg.f is not None:
        fn = fn.with_f(cfg.f)
    if fn.f is None:
        raise InputError("the input function needs an f (in the file or via --f)")
    return fn


def dump_json(obj: object) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(cfg: RunConfig, obj: object) -> None:
    text = dump_json(obj)
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# commands


def cmd_minimality(cfg: RunConfig) -> int:
    fn = load_function(cfg)
    _emit(cfg, check_minimality(fn).to_json())
    return EXIT_OK


def cmd_closure(cfg: RunConfig) -> int:
    fn = load_function(cfg)
    try:
        result = closure_of(fn, budget=cfg.budget)
    except NotMinimalError as exc:
        raise InputError(str(exc)) from exc
    _emit(cfg, result.to_json())
    _write(cfg.svg_path, svg.closure_svg(result.presentation))
    return EXIT_BUDGET if result.budget_exhausted else EXIT_OK


def cmd_extremality(cfg: RunConfig) -> int:
    fn = load_function(cfg)
    report = extremality_test(fn, budget=cfg.budget)
    _emit(cfg, report.to_json())
    _write(cfg.svg_path, svg.function_svg(fn.canonical(), report.witness))
    if report.presentation is not None:
        _write(cfg.closure_svg, svg.closure_svg(report.presentation))
    if report.closure is not None and report.closure.budget_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_perturbations(cfg: RunConfig) -> int:
    fn = load_function(cfg).canonical()
    try:
        result = closure_of(fn, budget=cfg.budget)
    except NotMinimalError as exc:
        raise InputError(str(exc)) from exc
    if result.budget_exhausted:
        _emit(cfg, {"error": "closure budget exhausted"})
        return EXIT_BUDGET
    pres = result.presentation
    ref = refine(fn, pres)
    comps = uncovered_components(pres, ref)
    out: dict = {"Bprime": [format_rat(b) for b in ref.Bprime]}
    try:
        space = finite_dim_space(fn, ref, pres, comps)
    except UnsupportedInput as exc:
        out["unsupported"] = str(exc)
        space = None
    if space is not None:
        out["finite_basis"] = [
            {"function": b.to_json(), "epsilon": format_rat(epsilon_for(fn, b).epsilon)} for b in space.finite_basis
        ]
    samples = []
    for comp in comps:
        entry: dict = {"component": comp.to_json()}
        sample = equivariant_sample(comp)
        entry["sample"] = sample.to_json()
        if space is not None:
            entry["epsilon"] = format_rat(epsilon_for(fn, sample).epsilon)
        samples.append(entry)
    out["equivariant_samples"] = samples
    _emit(cfg, out)
    return EXIT_OK


def cmd_grid_check(cfg: RunConfig) -> int:
    fn = load_function(cfg).canonical()
    try:
        n = oracle_grid_size(fn, cfg.oversample)
        g = restrict_to_grid(fn, n)
        oracle = grid_extremality_oracle(fn, cfg.oversample)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = extremality_test(fn, budget=cfg.budget)
    agree = report.verdict == oracle
    out = {
        "grid": n,
        "grid_values": g.to_json()["values"],
        "grid_dimension": grid_perturbation_dimension(g),
        "oracle_verdict": oracle,
        "grid_free_verdict": report.verdict,
        "agree": agree,
    }
    _emit(cfg, out)
    if not agree:
        log.error("grid oracle says %s but the grid-free test says %s", oracle, report.verdict)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_plot(cfg: RunConfig) -> int:
    if not cfg.svg_path:
        raise InputError("plot needs --svg PATH")
    fn = load_function(cfg).canonical()
    if cfg.what == "function":
        text = svg.function_svg(fn)
    elif cfg.what == "complex":
        text = svg.complex_svg(fn)
    else:
        try:
            result = closure_of(fn, budget=cfg.budget)
        except NotMinimalError as exc:
            raise InputError(str(exc)) from exc
        text = svg.closure_svg(result.presentation)
    _write(cfg.svg_path, text)
    return EXIT_OK


def cmd_corpus(cfg: RunConfig) -> int:
    entries = [{"name": e.name, "q": e.q, "function": e.fn.to_json()} for e in generate(cfg.count, seed=cfg.seed)]
    _emit(cfg, entries)
    return EXIT_OK


COMMANDS = {
    "minimality": cmd_minimality,
    "closure": cmd_closure,
    "extremality": cmd_extremality,
    "perturbations": cmd_perturbations,
    "grid-check": cmd_grid_check,
    "plot": cmd_plot,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupcut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "corpus":
            p.add_argument("--builtin", choices=CATALOG_NAMES)
            p.add_argument("--input", metavar="FILE", help="function JSON")
            p.add_argument("--f", type=rat, help="f as p/q")
            p.add_argument("--s", type=rat, help="first slope for two_slope")
            p.add_argument("--budget", type=int, help="maximum completion rounds")
        p.add_argument("--json", dest="json_path", metavar="PATH", help="write JSON here instead of stdout")
        if name in ("closure", "extremality", "plot"):
            p.add_argument("--svg", dest="svg_path", metavar="PATH")
        if name == "extremality":
            p.add_argument("--closure-svg", metavar="PATH")
        if name == "grid-check":
            p.add_argument("--oversample", type=int, default=4)
        if name == "plot":
            p.add_argument("--what", choices=("function", "complex", "closure"), default="function")
        if name == "corpus":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--count", type=int, default=100)
    return parser


def _setup_logging() -> None:
    level = os.environ.get("GROUPCUT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[list[str]] = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"groupcut: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
