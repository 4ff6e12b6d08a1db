"""K-multiplicities from vector partition functions."""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from .charring import decompose_into_k, sorted_terms
from .errors import DomainError, InconsistencyError, NonPointedConeError
from .fixedpoint import FixedPointSet
from .quantize import CharacterReport, main_formula_character
from .rootsys import SubgroupPair, Weight, add, dominant_chamber_test, dot, is_integral, neg, sub


@dataclass
class PartitionProblem:
    """Count expressions of a weight as non-negative integer combinations of generators."""

    generators: tuple[Weight, ...]
    pointedness_functional: tuple
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.generators = tuple(tuple(g) for g in self.generators)
        # A positive rescaling keeps every sign and lets the recursion use ints.
        f = [Fraction(v) for v in self.pointedness_functional]
        den = lcm(*(v.denominator for v in f)) if f else 1
        self.pointedness_functional = tuple(int(v * den) for v in f)
        if any(not any(g) for g in self.generators):
            raise DomainError("zero generator")
        if any(dot(g, self.pointedness_functional) <= 0 for g in self.generators):
            raise NonPointedConeError("functional is not positive on every generator")

    def count(self, zeta: Sequence[int]) -> int:
        return self._count(len(self.generators), tuple(zeta))

    def _count(self, k: int, zeta: Weight) -> int:
        if dot(zeta, self.pointedness_functional) < 0:
            return 0
        if k == 0:
            return 1 if not any(zeta) else 0
        key = (k, zeta)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        # Either generator k-1 is unused, or it is used at least once.
        total = 0
        z = zeta
        while dot(z, self.pointedness_functional) >= 0:
            total += self._count(k - 1, z)
            z = sub(z, self.generators[k - 1])
        self._memo[key] = total
        return total

    def clear(self) -> None:
        self._memo.clear()


def partition_count(pp: PartitionProblem, zeta: Sequence[int]) -> int:
    return pp.count(zeta)


def brute_force_partition_count(
    generators: Sequence[Sequence[int]], functional: Sequence, zeta: Sequence[int]
) -> int:
    """Enumerate all bounded coefficient vectors; independent of the recursion."""
    level = dot(zeta, functional)
    if level < 0:
        return 0
    bounds = [int(Fraction(level) / Fraction(dot(g, functional))) for g in generators]
    count = 0
    for cs in product(*(range(b + 1) for b in bounds)):
        s = tuple(sum(c * g[i] for c, g in zip(cs, generators)) for i in range(len(zeta)))
        if s == tuple(zeta):
            count += 1
    return count


def pointedness_functional(fps: FixedPointSet) -> tuple:
    """xi + t rho_K with t small enough to keep every xi-positive generator positive."""
    pair = fps.pair
    xi = tuple(Fraction(v) for v in fps.xi)
    rk = tuple(Fraction(v) for v in pair.g.covector(pair.rho_k))
    gens = {g for d in fps.data.values() for g in d.B_plus}
    t = Fraction(1)
    for g in gens:
        a, b = dot(g, xi), dot(g, rk)
        if a < 0 or (a == 0 and b <= 0):
            raise NonPointedConeError(
                f"generator {g} cannot be made positive; the partition function is infinite"
            )
        if a > 0 and b < 0:
            t = min(t, a / (-b) / 2)
    return tuple(x + t * y for x, y in zip(xi, rk))


class _Problems:
    """Per-call cache of partition problems keyed by point id."""

    def __init__(self, fps: FixedPointSet):
        self.fps = fps
        self.functional = pointedness_functional(fps)
        self.problems: dict[str, PartitionProblem] = {}

    def __call__(self, pid: str) -> PartitionProblem:
        pp = self.problems.get(pid)
        if pp is None:
            pp = PartitionProblem(self.fps.data[pid].B_plus, self.functional)
            self.problems[pid] = pp
        return pp


def _check_k_weight(pair: SubgroupPair, lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    if len(lam) != pair.rank or not is_integral(lam):
        raise DomainError(f"{lam} is not an integral weight")
    if dominant_chamber_test(pair, lam, "K").kind == "outside":
        raise DomainError(f"{lam} is not K-dominant")
    return lam


def _signed_sum(fps: FixedPointSet, lam: Weight, problems: _Problems, gp: bool) -> int:
    pair = fps.pair
    total = 0
    for z in fps.z_set:
        d = fps.data[z.point.id]
        rho_shift = sub(z.w(pair.rho_k), pair.rho_k)
        if gp:
            # lambda + w.rho_K + beta+ - beta - rho_K - mu, counted with the opposite
            # polarization: P_gp(zeta) = P(-zeta)
            arg = neg(sub(sub(add(lam, rho_shift), d.beta_bar), d.point.mu))
        else:
            # mu + w.rho_K + beta - lambda - rho_K - beta+
            arg = sub(add(add(d.point.mu, rho_shift), d.beta_bar), lam)
        if not is_integral(arg):
            warnings.warn(f"non-integral partition argument {arg} at {d.point.id}; term skipped")
            continue
        sign = (-1) ** d.s * z.w.sign
        total += sign * problems(d.point.id).count(arg)
    return total


def multiplicity_theorem(fps: FixedPointSet, lam: Sequence[int]) -> int:
    """Multiplicity of V^K_lam as a signed sum of partition counts over Z."""
    lam = _check_k_weight(fps.pair, lam)
    return _signed_sum(fps, lam, _Problems(fps), gp=False)


def guillemin_prato_variant(fps: FixedPointSet, lam: Sequence[int]) -> int:
    """The earlier literature's form of the sum.

    Its partition function counts with the opposite polarization, so the
    argument is negated before counting with our generators.
    """
    lam = _check_k_weight(fps.pair, lam)
    return _signed_sum(fps, lam, _Problems(fps), gp=True)


def kostant_branching(pair: SubgroupPair, nu: Sequence[int], lam: Sequence[int]) -> int:
    """sum_u sign(u) P(u(nu + rho_G) - lam - rho_G), P over positive roots of G not in K."""
    nu, lam = tuple(nu), tuple(lam)
    if dominant_chamber_test(pair, nu, "G").kind != "interior":
        raise DomainError(f"{nu} is not G-dominant regular")
    _check_k_weight(pair, lam)
    pp = PartitionProblem(pair.g_over_k_positive, pair.g.rho_functional)
    shifted = add(nu, pair.rho_g)
    target = add(lam, pair.rho_g)
    return sum(u.sign * pp.count(sub(u(shifted), target)) for u in pair.g.weyl_group)


def window_weights(pair: SubgroupPair, window: Sequence[tuple[int, int]]) -> list[Weight]:
    """K-dominant integral weights with each doubled coordinate in [lo, hi]."""
    if len(window) != pair.rank:
        raise DomainError(f"window needs {pair.rank} coordinate ranges")
    ranges = []
    for lo, hi in window:
        start = lo + (lo % 2)
        ranges.append(range(start, hi + 1, 2))
    return [
        lam for lam in product(*ranges)
        if dominant_chamber_test(pair, lam, "K").kind != "outside"
    ]


def default_window(fps: FixedPointSet, pad: int = 0) -> list[tuple[int, int]]:
    mus = [p.mu for p in fps.points]
    return [
        (min(m[i] for m in mus) - pad, max(m[i] for m in mus) + pad) for i in range(fps.pair.rank)
    ]


def worker_count() -> int:
    """Worker cap from WEYLQUANT_THREADS; 1 (serial) when unset or invalid."""
    raw = os.environ.get("WEYLQUANT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        warnings.warn(f"ignoring WEYLQUANT_THREADS={raw!r}")
        return 1


def _sweep_chunk(fps: FixedPointSet, weights: list[Weight]) -> list[tuple[Weight, int]]:
    problems = _Problems(fps)
    return [(lam, _signed_sum(fps, lam, problems, gp=False)) for lam in weights]


def _sweep(fps: FixedPointSet, weights: list[Weight]) -> list[tuple[Weight, int]]:
    """Evaluate the theorem at each weight; parallel over weights, private caches per worker."""
    n = min(worker_count(), len(weights))
    if n <= 1:
        return _sweep_chunk(fps, weights)
    chunks = [weights[i::n] for i in range(n)]
    with ProcessPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(_sweep_chunk, [fps] * n, chunks))
    return [r for part in parts for r in part]


def multiplicity_spectrum(
    fps: FixedPointSet,
    window: Sequence[tuple[int, int]] | None = None,
    check: bool = True,
    report: CharacterReport | None = None,
) -> dict[Weight, int]:
    """Nonzero multiplicities over a window, checked against the character decomposition."""
    window = default_window(fps) if window is None else window
    pair = fps.pair
    weights = window_weights(pair, window)
    out = {}
    for lam, v in _sweep(fps, weights):
        if v:
            out[lam] = v
    if check:
        report = report if report is not None else main_formula_character(fps)
        inside = set(weights)
        expected = {k: v for k, v in report.k_decomposition.items() if k in inside}
        if expected != out:
            raise InconsistencyError("multiplicity theorem disagrees with the character decomposition")
    return dict(sorted_terms(pair.g, out))


def gp_diff_table(
    fps: FixedPointSet, window: Sequence[tuple[int, int]] | None = None
) -> list[dict]:
    """Per-weight comparison of the two partition-function formulas."""
    window = default_window(fps) if window is None else window
    pair = fps.pair
    problems = _Problems(fps)
    rows = []
    for lam in window_weights(pair, window):
        ours = _signed_sum(fps, lam, problems, gp=False)
        gp = _signed_sum(fps, lam, problems, gp=True)
        if ours or gp:
            rows.append({"lambda": list(lam), "multiplicity": ours, "gp_value": gp, "delta": gp - ours})
    key = lambda r: tuple(r["lambda"])
    order = [k for k, _ in sorted_terms(pair.g, {key(r): 1 for r in rows})]
    by_key = {key(r): r for r in rows}
    return [by_key[k] for k in order]
