"""Characters of quantizations from fixed-point data.

Three independent assemblies of the same character:

* the raw localization sum over fixed points,
* the orbit-by-orbit quotient of K-characters,
* the same quotient written with half-weight denominators (Lie algebra form),

plus the GKRS multiplet identity for coadjoint orbits.  Every quotient is
evaluated by exact cross-multiplication and division, never by truncation.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Sequence

from .charring import (
    FormalCharacter,
    character_of_label,
    decompose_into_k,
    divide_by_factors,
    half_difference,
    one_minus,
    product_of,
    recompose,
    weyl_character,
)
from .errors import DomainError, InconsistencyError, InexactDivisionError, WeylQuantError
from .fixedpoint import FixedPointSet, OrbitData
from .rootsys import SubgroupPair, Weight, WeylElement, add, dominant_chamber_test, dot, neg


@dataclass
class CharacterReport:
    character: FormalCharacter
    numerator: FormalCharacter
    denominator_factors: tuple[Weight, ...]
    k_decomposition: dict[Weight, int]
    per_orbit_terms: list[tuple[str, FormalCharacter]]
    # orbit id -> [(coefficient, K-highest-weight label)]
    per_orbit_labels: dict[str, list[tuple[int, Weight]]] = field(default_factory=dict)
    per_orbit_denominators: dict[str, tuple[Weight, ...]] = field(default_factory=dict)
    half_weight: bool = False


def _functional_for(weights, pair: SubgroupPair):
    """A covector nonzero on every weight, used to orient localization denominators."""
    base = pair.g.rho_functional
    targets = {tuple(w) for w in weights}
    if all(dot(t, base) != 0 for t in targets):
        return base
    rank = pair.rank
    for k in range(1, 200):
        cand = tuple(b * 1000 + (k * (i + 1) ** 2) for i, b in enumerate(base))
        if all(dot(t, cand) != 0 for t in targets):
            return cand
    raise InconsistencyError("could not orient the tangent weights")  # pragma: no cover


def _divide(num: FormalCharacter, factors, pair: SubgroupPair, what: str) -> FormalCharacter:
    try:
        return divide_by_factors(num, factors, pair.g.rho_functional)
    except InexactDivisionError as exc:
        raise InexactDivisionError(
            f"{what}: the assembled numerator is not divisible by the denominator "
            "(the fixed-point data does not come from a quantization)"
        ) from exc


def localization_character(fps: FixedPointSet) -> FormalCharacter:
    """sum_p e^{mu(p)} / prod_j (1 - e^{-w_j}), reduced to a finite character."""
    pair = fps.pair
    rank = pair.rank
    f = _functional_for((t for p in fps.points for t in p.tangent_weights), pair)
    per_point = []
    common: Counter = Counter()
    for p in fps.points:
        shift = p.mu
        sign = 1
        plus = []
        for t in p.tangent_weights:
            if dot(t, f) < 0:
                # 1/(1 - e^{t+}) = -e^{-t+}/(1 - e^{-t+})
                sign = -sign
                shift = add(shift, t)
                plus.append(neg(t))
            else:
                plus.append(t)
        c = Counter(plus)
        per_point.append((FormalCharacter.monomial(shift, sign), c))
        common |= c
    num = FormalCharacter()
    for term, c in per_point:
        pad = product_of((one_minus(g) for g in (common - c).elements()), rank)
        num = num + term * pad
    return _divide(num, (one_minus(g) for g in common.elements()), pair, "localization")


def _orbit_labels(orbit: OrbitData) -> list[tuple[int, Weight]]:
    sign = -1 if orbit.s % 2 else 1
    base = add(orbit.representative.mu, orbit.beta_bar)
    return [(sign * c, add(base, eta)) for eta, c in sorted(orbit.m.items())]


def _orbit_labels_half(orbit: OrbitData) -> list[tuple[int, Weight]]:
    sign = -1 if orbit.s % 2 else 1
    base = add(orbit.representative.mu, orbit.beta_half_sum)
    return [(sign * c, add(base, eta)) for eta, c in sorted(orbit.m_tilde.items())]


def _labels_character(pair: SubgroupPair, labels) -> FormalCharacter:
    out = FormalCharacter()
    for c, lab in labels:
        out = out + character_of_label(pair, lab, "K") * c
    return out


def _assemble(
    fps: FixedPointSet, half: bool
) -> tuple[FormalCharacter, FormalCharacter, Counter, list, dict, dict]:
    pair = fps.pair
    rank = pair.rank
    factor = half_difference if half else one_minus
    common: Counter = Counter()
    for o in fps.orbits:
        common |= Counter(o.B_plus_orbit)
    numerator = FormalCharacter()
    per_orbit = []
    labels_by_orbit = {}
    dens = {}
    for o in fps.orbits:
        labels = _orbit_labels_half(o) if half else _orbit_labels(o)
        contrib = _labels_character(pair, labels)
        per_orbit.append((o.id, contrib))
        labels_by_orbit[o.id] = labels
        dens[o.id] = o.B_plus_orbit
        pad = product_of((factor(g) for g in (common - Counter(o.B_plus_orbit)).elements()), rank)
        numerator = numerator + contrib * pad
    factors = [factor(g) for g in common.elements()]
    character = _divide(numerator, factors, pair, "orbit formula")
    return character, numerator, common, per_orbit, labels_by_orbit, dens


def main_formula_character(fps: FixedPointSet, cross_check: bool = True) -> CharacterReport:
    """Orbit sum of (-1)^s m(eta) chi^K_{mu + beta_bar + eta} over prod_{B+}(1 - e^{-gamma})."""
    pair = fps.pair
    character, numerator, common, per_orbit, labels, dens = _assemble(fps, half=False)
    if cross_check:
        loc = localization_character(fps)
        if loc != character:
            raise InconsistencyError("orbit formula and localization sum disagree")
    decomposition = decompose_into_k(pair, character)
    if recompose(pair, decomposition) != character:
        raise InconsistencyError("K-decomposition does not rebuild the character")
    return CharacterReport(
        character=character,
        numerator=numerator,
        denominator_factors=tuple(sorted(common.elements())),
        k_decomposition=decomposition,
        per_orbit_terms=per_orbit,
        per_orbit_labels=labels,
        per_orbit_denominators=dens,
    )


def lie_algebra_form(fps: FixedPointSet, reference: CharacterReport | None = None) -> CharacterReport:
    """Half-weight variant: shifts by beta_i and denominators e^{g/2} - e^{-g/2}."""
    pair = fps.pair
    character, numerator, common, per_orbit, labels, dens = _assemble(fps, half=True)
    ref = reference if reference is not None else main_formula_character(fps, cross_check=False)
    if character != ref.character:
        raise InconsistencyError("half-weight form and integral form give different characters")
    main_terms = dict(ref.per_orbit_terms)
    for oid, contrib in per_orbit:
        o = next(o for o in fps.orbits if o.id == oid)
        shift = tuple(sum(g[i] for g in o.B_plus_orbit) // 2 for i in range(pair.rank))
        if contrib != main_terms[oid].shift(shift):
            raise InconsistencyError(f"orbit {oid}: half-weight numerator mismatch")
    return CharacterReport(
        character=character,
        numerator=numerator,
        denominator_factors=tuple(sorted(common.elements())),
        k_decomposition=ref.k_decomposition,
        per_orbit_terms=per_orbit,
        per_orbit_labels=labels,
        per_orbit_denominators=dens,
        half_weight=True,
    )


@dataclass
class GKRSMultiplet:
    C: list[WeylElement]
    multiplet: list[tuple[int, Weight]]


def gkrs_multiplet(pair: SubgroupPair, lam: Sequence[int]) -> GKRSMultiplet:
    """Multiplet c(lam + rho_G) - rho_K over the c in W(G) sending the G-chamber into the K-chamber."""
    lam = tuple(lam)
    if dominant_chamber_test(pair, lam, "G").kind == "outside":
        raise DomainError(f"{lam} is not G-dominant")
    rank = pair.rank
    C = [
        w for w in pair.g.weyl_group
        if dominant_chamber_test(pair, w(pair.rho_g), "K").kind == "interior"
    ]
    if len(C) * len(pair.weyl_k) != len(pair.g.weyl_group):
        raise InconsistencyError("|C| differs from |W(G)|/|W(K)|")
    shifted = add(lam, pair.rho_g)
    multiplet = [(c.sign, add(c(shifted), neg(pair.rho_k))) for c in C]
    lhs = FormalCharacter()
    for sign, mu in multiplet:
        lhs = lhs + weyl_character(pair, mu, "K") * sign
    rhs = weyl_character(pair, lam, "G") * product_of(
        (half_difference(phi) for phi in pair.g_over_k_positive), rank
    )
    if lhs != rhs:
        raise InconsistencyError("GKRS multiplet identity fails")
    return GKRSMultiplet(C, multiplet)


def verify_fixture(fps: FixedPointSet, lam: Sequence[int] | None = None) -> dict[str, Any]:
    """Run every available route and report which agree; never raises."""
    results: dict[str, FormalCharacter | None] = {}
    errors: dict[str, str] = {}
    timings: dict[str, float] = {}

    def run(name, fn):
        t0 = time.perf_counter()
        try:
            results[name] = fn()
        except WeylQuantError as exc:
            results[name] = None
            errors[name] = f"{type(exc).__name__}: {exc}"
        timings[name] = time.perf_counter() - t0

    main_report: dict[str, CharacterReport] = {}

    def main():
        main_report["r"] = main_formula_character(fps, cross_check=False)
        return main_report["r"].character

    run("localization", lambda: localization_character(fps))
    run("main_formula", main)
    run(
        "lie_algebra_form",
        lambda: lie_algebra_form(fps, main_report.get("r")).character,
    )
    if lam is not None:
        run("weyl_character", lambda: weyl_character(fps.pair, lam, "G"))

        def gkrs():
            gkrs_multiplet(fps.pair, lam)
            return weyl_character(fps.pair, lam, "G")

        run("gkrs", gkrs)
    names = list(results)
    matrix = {
        a: {
            b: results[a] is not None and results[b] is not None and results[a] == results[b]
            for b in names
        }
        for a in names
    }
    ok = not errors and all(all(row.values()) for row in matrix.values())
    return {"ok": ok, "routes": names, "agree": matrix, "errors": errors, "timings": timings}
