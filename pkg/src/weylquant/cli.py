"""Command line: ``weylquant <command> [options]``.

Exit codes: 0 success, 2 bad input, 3 an exact identity failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Sequence

from . import fileio
from .charring import decompose_into_k, weyl_character
from .diagram import render_svg
from .errors import ConfigurationError, InconsistencyError, InputError, WeylQuantError
from .fixedpoint import FixedPointSet, coadjoint_fixture, ingest
from .fixtures import BUILTIN, builtin_fixture
from .multiplicity import (
    default_window,
    gp_diff_table,
    kostant_branching,
    multiplicity_spectrum,
    multiplicity_theorem,
)
from .quantize import gkrs_multiplet, lie_algebra_form, main_formula_character
from .rootsys import SubgroupPair, build_root_system, dominant_chamber_test, make_pair
from .verification import SCOPES, run_verification

COMMANDS = ("branch", "character", "multiplicity", "spectrum", "gkrs", "verify", "diagram")

# formats each command can emit; the first is the default
FORMATS = {
    "branch": ("json", "csv"),
    "character": ("json",),
    "multiplicity": ("json", "csv"),
    "spectrum": ("json", "csv"),
    "gkrs": ("json",),
    "verify": ("json",),
    "diagram": ("svg",),
}


def parse_weight(text: str) -> tuple[int, ...]:
    """``0,6`` or ``[0, 6]`` -> (0, 6)."""
    body = text.strip().strip("[]() ")
    if not body:
        raise InputError(f"empty weight {text!r}")
    try:
        return tuple(int(v) for v in body.split(","))
    except ValueError:
        raise InputError(f"cannot parse weight {text!r}; expected integers like 0,6") from None


def parse_roots(text: str) -> list[tuple[int, ...]]:
    """JSON list of weights, e.g. ``[[4,-2]]``; ``[]`` for K = T."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"--k-roots must be a JSON list of weights, got {text!r}") from None
    if not isinstance(data, list) or not all(
        isinstance(r, list) and all(isinstance(v, int) for v in r) for r in data
    ):
        raise InputError("--k-roots must be a JSON list of integer lists")
    return [tuple(r) for r in data]


def parse_window(text: str) -> list[tuple[int, int]]:
    """``lo:hi,lo:hi`` -> [(lo, hi), (lo, hi)]; ``lo > hi`` gives an empty range."""
    out = []
    for part in text.split(","):
        bits = part.split(":")
        if len(bits) != 2:
            raise InputError(f"window entries look like lo:hi, got {part!r}")
        try:
            out.append((int(bits[0]), int(bits[1])))
        except ValueError:
            raise InputError(f"window bounds must be integers, got {part!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weylquant",
        description="Exact characters and K-multiplicities of quantizations from torus fixed-point data.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--type", help="Cartan type of G, e.g. A2, B2, G2, A1xA1")
    p.add_argument(
        "--k-roots", default=None,
        help="JSON list of simple roots of K in doubled coordinates, e.g. '[[4,-2]]'; '[]' for K = T",
    )
    p.add_argument("--lambda", dest="lam", help="weight in doubled coordinates, e.g. 0,6")
    p.add_argument(
        "--input",
        help="fixed-point JSON file, or builtin:NAME (" + ", ".join(sorted(BUILTIN)) + ")",
    )
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "svg"))
    p.add_argument("--window", help="doubled-coordinate bounds lo:hi,lo:hi")
    p.add_argument("--scope", choices=SCOPES, default="quick", help="verify scope")
    p.add_argument("--gp-diff", action="store_true", help="spectrum: add the comparison columns")
    return p


class RunConfig:
    """Validated arguments; all checks happen before any computation."""

    def __init__(self, ns: argparse.Namespace):
        self.command = ns.command
        self.format = ns.format or FORMATS[ns.command][0]
        if self.format not in FORMATS[self.command]:
            raise ConfigurationError(
                f"{self.command} writes {'/'.join(FORMATS[self.command])}, not {self.format}"
            )
        self.input = ns.input
        self.type = ns.type
        self.k_roots = parse_roots(ns.k_roots) if ns.k_roots is not None else None
        self.lam = parse_weight(ns.lam) if ns.lam is not None else None
        self.window = parse_window(ns.window) if ns.window is not None else None
        self.output = ns.output
        self.scope = ns.scope
        self.gp_diff = ns.gp_diff
        needs_group = {"branch", "gkrs"}
        needs_space = {"character", "multiplicity", "spectrum", "diagram"}
        if self.command in needs_group:
            if self.input:
                raise ConfigurationError(f"{self.command} takes --type/--k-roots/--lambda, not --input")
            self._need_group()
            if self.lam is None:
                raise ConfigurationError(f"{self.command} needs --lambda")
        elif self.command in needs_space:
            if self.input and (self.type or self.k_roots is not None):
                raise ConfigurationError("give either --input or --type/--k-roots, not both")
            if not self.input:
                self._need_group()
                if self.command != "multiplicity" and self.lam is None:
                    raise ConfigurationError(f"{self.command} without --input needs --lambda (a coadjoint orbit)")
            if self.command == "multiplicity" and self.lam is None:
                raise ConfigurationError("multiplicity needs --lambda (the K highest weight)")
            if self.command == "multiplicity" and not self.input:
                raise ConfigurationError("multiplicity needs --input; use branch for coadjoint orbits")
        if self.gp_diff and self.command != "spectrum":
            raise ConfigurationError("--gp-diff only applies to spectrum")

    def _need_group(self):
        if not self.type:
            raise ConfigurationError(f"{self.command} needs --type")
        if self.k_roots is None:
            self.k_roots = []

    def pair(self) -> SubgroupPair:
        return make_pair(build_root_system(self.type), self.k_roots)


def load_space(cfg: RunConfig) -> FixedPointSet:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if cfg.input and cfg.input.startswith("builtin:"):
            fps = builtin_fixture(cfg.input.split(":", 1)[1]).ingest()
        elif cfg.input:
            fps = fileio.load_fixture(cfg.input)
        else:
            pair = cfg.pair()
            fps = ingest(pair, coadjoint_fixture(pair, cfg.lam))
            fps.meta["coadjoint_lambda"] = cfg.lam
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return fps


def cmd_branch(cfg: RunConfig) -> tuple[object, list[dict] | None]:
    pair = cfg.pair()
    nu = cfg.lam
    decomposition = decompose_into_k(pair, weyl_character(pair, nu, "G"))
    rows = fileio.spectrum_rows(pair.g, decomposition)
    if dominant_chamber_test(pair, nu, "G").kind == "interior":
        for r in rows:
            r["kostant"] = kostant_branching(pair, nu, r["lambda"])
            if r["kostant"] != r["multiplicity"]:
                raise InconsistencyError(
                    f"Kostant branching gives {r['kostant']} at {r['lambda']}, "
                    f"the character gives {r['multiplicity']}"
                )
    return rows, rows


def cmd_character(cfg: RunConfig):
    fps = load_space(cfg)
    report = main_formula_character(fps)
    lie_algebra_form(fps, report)
    doc = fileio.report_to_dict(fps, report)
    if "coadjoint_lambda" in fps.meta:
        lam = fps.meta["coadjoint_lambda"]
        if weyl_character(fps.pair, lam, "G") != report.character:
            raise InconsistencyError("character differs from the Weyl character of the orbit's weight")
        doc["coadjoint_lambda"] = list(lam)
    return doc, None


def cmd_multiplicity(cfg: RunConfig):
    fps = load_space(cfg)
    value = multiplicity_theorem(fps, cfg.lam)
    row = {"lambda": list(cfg.lam), "multiplicity": value}
    return row, [row]


def cmd_spectrum(cfg: RunConfig):
    fps = load_space(cfg)
    window = cfg.window if cfg.window is not None else default_window(fps)
    if len(window) != fps.pair.rank:
        raise InputError(f"--window needs {fps.pair.rank} ranges")
    if cfg.gp_diff:
        multiplicity_spectrum(fps, window)
        rows = gp_diff_table(fps, window)
    else:
        rows = fileio.spectrum_rows(fps.pair.g, multiplicity_spectrum(fps, window))
    return rows, rows


def cmd_gkrs(cfg: RunConfig):
    pair = cfg.pair()
    m = gkrs_multiplet(pair, cfg.lam)
    doc = {
        "group": fileio.group_spec_of(pair),
        "lambda": list(cfg.lam),
        "size": len(m.C),
        "multiplet": [
            {"sign": sign, "highest_weight": list(mu), "element": [list(r) for r in c.matrix]}
            for (sign, mu), c in zip(m.multiplet, m.C)
        ],
        "identity_holds": True,
    }
    return doc, None


def cmd_diagram(cfg: RunConfig):
    fps = load_space(cfg)
    window = cfg.window if cfg.window is not None else default_window(fps)
    spectrum = multiplicity_spectrum(fps, window)
    return render_svg(fps, spectrum), None


def cmd_verify(cfg: RunConfig):
    return run_verification(cfg.scope), None


HANDLERS = {
    "branch": cmd_branch,
    "character": cmd_character,
    "multiplicity": cmd_multiplicity,
    "spectrum": cmd_spectrum,
    "gkrs": cmd_gkrs,
    "verify": cmd_verify,
    "diagram": cmd_diagram,
}


def render(cfg: RunConfig, doc, rows) -> str:
    if cfg.format == "svg":
        return doc
    if cfg.format == "csv":
        return fileio.rows_to_csv(rows or [])
    return fileio.dumps(doc)


def emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        try:
            Path(cfg.output).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {cfg.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(ns)
        doc, rows = HANDLERS[cfg.command](cfg)
        emit(cfg, render(cfg, doc, rows))
    except WeylQuantError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.command == "verify" and not doc["passed"]:
        return InconsistencyError.exit_code
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
