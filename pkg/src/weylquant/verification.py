"""The acceptance checks as a library: ``weylquant verify --scope quick|full``.

Each check returns a JSON-ready dict with a ``passed`` flag and exact
evidence.  No timings are recorded, so two runs give identical output.
"""

from __future__ import annotations

import random
import warnings
from itertools import product
from typing import Callable

from .charring import (
    denominator_identity_check,
    freudenthal_multiplicities,
    weyl_character,
)
from .errors import InconsistencyError, InexactDivisionError, WeylQuantError
from .fixedpoint import FixedPoint, FixedPointSet, ingest
from .fixtures import BUILTIN, Fixture, builtin_fixture, coadjoint, su3_example
from .multiplicity import (
    _Problems,
    brute_force_partition_count,
    gp_diff_table,
    kostant_branching,
    multiplicity_spectrum,
)
from .quantize import gkrs_multiplet, main_formula_character
from .rootsys import SubgroupPair, build_root_system, dominant_chamber_test, dot, make_pair

SCOPES = ("quick", "full")

FIG1 = {(6, -6): 1, (4, -2): 1, (2, 2): 1, (0, 6): 1}


def _lists(pairs):
    return [[list(k), v] for k, v in sorted(pairs.items())]


def _dominant_box(pair: SubgroupPair, top: int, group: str = "G") -> list:
    """G-dominant integral weights with every doubled coordinate in [0, top]."""
    return [
        lam for lam in product(range(0, top + 1, 2), repeat=pair.rank)
        if dominant_chamber_test(pair, lam, group).kind != "outside"
    ]


def gkrs_pairs() -> list[tuple[str, SubgroupPair]]:
    a2 = make_pair(build_root_system("A2"), [(4, -2)])
    b2rs = build_root_system("B2")
    b2 = make_pair(b2rs, [b2rs.simple_roots[0]])
    return [("A2", a2), ("B2", b2)]


def check_su3_example() -> dict:
    fx = su3_example()
    fps = fx.ingest()
    report = main_formula_character(fps)
    nu = fx.coadjoint_lambda
    labels = sorted((c, lab) for ls in report.per_orbit_labels.values() for c, lab in ls)
    # nu, w+nu - gamma, w+nu - beta - gamma with beta = (2,2), gamma = (-2,4), w+nu = (6,-6)
    expected_labels = sorted([(1, (0, 6)), (-1, (8, -10)), (1, (6, -12))])
    expected_den = sorted([(2, 2), (-2, 4)])
    target = weyl_character(fps.pair, nu, "G")
    ok = (
        labels == expected_labels
        and sorted(report.denominator_factors) == expected_den
        and report.character == target
        and report.character.total() == 10
    )
    return {
        "passed": ok,
        "labels": [[c, list(lab)] for c, lab in labels],
        "denominator": [list(g) for g in sorted(report.denominator_factors)],
        "dimension": report.character.total(),
    }


def check_figure_one() -> dict:
    fps = su3_example().ingest()
    spectrum = multiplicity_spectrum(fps)
    return {"passed": spectrum == FIG1, "spectrum": _lists(spectrum)}


def check_gkrs(scope: str) -> dict:
    top = 6 if scope == "full" else 4
    cases = []
    ok = True
    for name, pair in gkrs_pairs():
        expected_c = len(pair.g.weyl_group) // len(pair.weyl_k)
        for lam in _dominant_box(pair, top):
            try:
                m = gkrs_multiplet(pair, lam)
                good = len(m.C) == expected_c
            except InconsistencyError:
                good = False
            ok &= good
            cases.append({"pair": name, "lambda": list(lam), "passed": good})
    return {"passed": ok, "cases": len(cases), "failures": [c for c in cases if not c["passed"]]}


def check_torus_degeneration(scope: str) -> dict:
    types = ("A2", "B2", "G2") if scope == "full" else ("A2", "B2")
    ok = True
    failures = []
    n = 0
    for t in types:
        pair = make_pair(build_root_system(t), [])
        for lam in _dominant_box(pair, 4):
            if not any(lam):
                continue
            n += 1
            fps = coadjoint(t, [], lam).ingest()
            report = main_formula_character(fps)
            fr = freudenthal_multiplicities(pair, lam)
            spectrum = multiplicity_spectrum(fps, report=report)
            good = report.character == weyl_character(pair, lam, "G") and spectrum == dict(fr.items())
            if good and dominant_chamber_test(pair, lam, "G").kind == "interior":
                good = all(kostant_branching(pair, lam, mu) == m for mu, m in fr.items())
            if not good:
                ok = False
                failures.append({"type": t, "lambda": list(lam)})
    return {"passed": ok, "cases": n, "failures": failures}


def consistency_fixtures(scope: str) -> list[Fixture]:
    fixtures = [builtin_fixture(n) for n in BUILTIN]
    singular = [("A2", [(4, -2)], (2, 0)), ("A2", [], (4, 0)), ("B2", [(4, -4)], (0, 2))]
    generic = [("A2", [(4, -2)], (2, 2)), ("B2", [(4, -4)], (2, 2))]
    if scope == "full":
        singular += [("G2", [], (0, 2)), ("B2", [(-2, 4)], (2, 0))]
        generic += [("G2", [], (2, 2)), ("A2", [(4, -2)], (4, 2))]
    fixtures += [coadjoint(t, k, lam) for t, k, lam in singular + generic]
    return fixtures


def check_consistency(scope: str) -> dict:
    results = []
    for fx in consistency_fixtures(scope):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                fps = fx.ingest()
            # multiplicity_spectrum raises if it disagrees with the decomposition
            spectrum = multiplicity_spectrum(fps)
            results.append({"fixture": fx.name, "passed": True, "nonzero": len(spectrum)})
        except WeylQuantError as exc:
            results.append({"fixture": fx.name, "passed": False, "error": str(exc)})
    return {"passed": all(r["passed"] for r in results), "fixtures": results}


def check_oracles(scope: str) -> dict:
    rng = random.Random(20240601)
    types = ["A2", "B2", "G2", "A3", "B3", "C3"] if scope == "full" else ["A2", "B2", "G2"]
    n_weyl = 50 if scope == "full" else 20
    weyl_ok = True
    for i in range(n_weyl):
        pair = make_pair(build_root_system(types[i % len(types)]), [])
        top = 6 if pair.rank == 2 else 4
        lam = tuple(2 * rng.randint(0, top // 2) for _ in range(pair.rank))
        if weyl_character(pair, lam) != freudenthal_multiplicities(pair, lam):
            weyl_ok = False
    level_cap = 40
    pcount = 0
    part_ok = True
    walls_ok = True
    walls_checked = 0
    fixtures = consistency_fixtures(scope)
    for fx in fixtures:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fps = fx.ingest()
        problems = _Problems(fps)
        # the cap applies to the unscaled functional; counts use the problem's own
        f = problems.functional
        seen_walls = set()
        for pid, d in fps.data.items():
            pp = problems(pid)
            for zeta in product(range(-12, 13, 2), repeat=fps.pair.rank):
                level = dot(zeta, f)
                if 0 <= level <= level_cap:
                    pcount += 1
                    if pp.count(zeta) != brute_force_partition_count(pp.generators, pp.pointedness_functional, zeta):
                        part_ok = False
            seen_walls.add(tuple(sorted(d.walls)))
        for walls in sorted(seen_walls):
            walls_checked += 1
            walls_ok &= denominator_identity_check(fps.pair, list(walls))
    return {
        "passed": weyl_ok and part_ok and walls_ok,
        "weyl_vs_freudenthal": {"cases": n_weyl, "passed": weyl_ok},
        "partition_vs_brute_force": {"cases": pcount, "level_cap": level_cap, "passed": part_ok},
        "denominator_identity": {"wall_sets": walls_checked, "passed": walls_ok},
    }


def check_gp_comparison(scope: str) -> dict:
    cases = [
        ("su3", su3_example(), False),
        ("a2_product", builtin_fixture("a2_product"), False),
        ("A2 k=[] lambda=[2, 2]", coadjoint("A2", [], (2, 2)), True),
        ("B2 k=[] lambda=[2, 2]", coadjoint("B2", [], (2, 2)), True),
    ]
    if scope == "full":
        cases.append(("G2 k=[] lambda=[2, 2]", coadjoint("G2", [], (2, 2)), True))
        cases.append(("B2 k=[[4, -4]] lambda=[2, 2]", coadjoint("B2", [(4, -4)], (2, 2)), False))
    tables = []
    for name, fx, generic in cases:
        rows = gp_diff_table(fx.ingest())
        tables.append(
            {
                "fixture": name,
                "generic_torus": generic,
                "rows": len(rows),
                "disagreements": sum(1 for r in rows if r["delta"]),
            }
        )
    generic_agree = all(t["disagreements"] == 0 for t in tables if t["generic_torus"])
    # only report generation is required; agreement is recorded, never asserted
    return {
        "passed": all(t["rows"] > 0 for t in tables),
        "generic_torus_fixtures_agree": generic_agree,
        "tables": tables,
    }


def flipped(points: list[FixedPoint], index: int, j: int) -> list[FixedPoint]:
    p = points[index]
    tw = list(p.tangent_weights)
    tw[j] = tuple(-c for c in tw[j])
    out = list(points)
    out[index] = FixedPoint(p.id, p.mu, tuple(tw), p.component)
    return out


def check_negative_control() -> dict:
    cases = [("cp1", builtin_fixture("cp1"), 0, 0), ("a2_product", builtin_fixture("a2_product"), 4, 1)]
    cases.append(("A2 K=T (2,2)", coadjoint("A2", [], (2, 2)), 0, 0))
    out = []
    for name, fx, i, j in cases:
        try:
            fps = ingest(fx.pair, flipped(fx.points, i, j))
            main_formula_character(fps)
            result = "accepted"
        except InexactDivisionError:
            result = "inexact_division"
        except WeylQuantError as exc:
            result = type(exc).__name__
        out.append({"fixture": name, "point": fx.points[i].id, "weight": j, "result": result})
    return {"passed": all(c["result"] == "inexact_division" for c in out), "cases": out}


CRITERIA: list[tuple[int, str, Callable[[str], dict]]] = [
    (1, "su3 worked example", lambda s: check_su3_example()),
    (2, "figure one multiplicities", lambda s: check_figure_one()),
    (3, "gkrs identity", check_gkrs),
    (4, "weyl and kostant degeneration", check_torus_degeneration),
    (5, "theorem vs character", check_consistency),
    (6, "oracle equivalences", check_oracles),
    (7, "gp comparison report", check_gp_comparison),
    (8, "negative control", lambda s: check_negative_control()),
]


def run_verification(scope: str = "quick") -> dict:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    results = []
    for cid, name, fn in CRITERIA:
        try:
            res = fn(scope)
        except WeylQuantError as exc:
            res = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        results.append({"id": cid, "name": name, **res})
    return {"scope": scope, "passed": all(r["passed"] for r in results), "criteria": results}
