"""Acceptance criteria, exact (tolerance 0), each checked against an independent oracle.

Every test prints one ``criterion N: PASS|FAIL`` line.
"""

import contextlib
import io
import json
import random
import time
import warnings
from itertools import product

import pytest

from weylquant.charring import (
    decompose_into_k,
    denominator_identity_check,
    freudenthal_multiplicities,
    weyl_character,
)
from weylquant.cli import main
from weylquant.errors import InexactDivisionError
from weylquant.fileio import fixture_to_dict
from weylquant.fixedpoint import ingest
from weylquant.fixtures import builtin_fixture, coadjoint, su3_example
from weylquant.multiplicity import (
    _Problems,
    default_window,
    gp_diff_table,
    kostant_branching,
    multiplicity_spectrum,
)
from weylquant.quantize import gkrs_multiplet, localization_character, main_formula_character
from weylquant.rootsys import build_root_system, dominant_chamber_test, dot, make_pair
from weylquant.verification import consistency_fixtures, flipped
from oracles import (
    ALPHA,
    BETA,
    GAMMA,
    NU,
    SAMPLE_POINTS,
    W_PLUS_NU,
    count_combinations,
    evaluate,
    localization_value,
    monomial_value,
    type_a_character,
    u3_branching,
)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}{' (' + detail + ')' if detail else ''}")
        assert ok

    return emit


def _quiet_ingest(fx):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fx.ingest()


def test_criterion_1_su3_worked_example(report):
    t0 = time.perf_counter()
    fps = su3_example().ingest()
    r = main_formula_character(fps)
    labels = sorted(lab for ls in r.per_orbit_labels.values() for lab in ls)
    # nu, w+nu - gamma (with sign -1), w+nu - beta - gamma
    expected = sorted([
        (1, NU),
        (-1, (W_PLUS_NU[0] - GAMMA[0], W_PLUS_NU[1] - GAMMA[1])),
        (1, (W_PLUS_NU[0] - BETA[0] - GAMMA[0], W_PLUS_NU[1] - BETA[1] - GAMMA[1])),
    ])
    ok = (
        labels == expected
        and sorted(r.denominator_factors) == sorted([BETA, GAMMA])
        and r.character.terms == dict(type_a_character(2, NU))
        and r.character.total() == 10
    )
    elapsed = time.perf_counter() - t0
    report(1, ok and elapsed < 1, f"{elapsed:.2f}s")


def test_criterion_2_figure_one(report):
    t0 = time.perf_counter()
    spectrum = multiplicity_spectrum(su3_example().ingest())
    expected = dict(u3_branching(NU))
    ok = spectrum == expected == {(6, -6): 1, (4, -2): 1, (2, 2): 1, (0, 6): 1}
    elapsed = time.perf_counter() - t0
    report(2, ok and elapsed < 1, f"{elapsed:.2f}s")


def _u2_character(mu):
    """Character of the U(2) irreducible with doubled highest weight mu: the alpha-string down from mu."""
    # pairing with the coroot of alpha = (4,-2) in doubled coordinates is mu[0] / 2
    n = mu[0] // 2
    out = {}
    if mu[0] < 0 or mu[0] % 2:
        return None
    for k in range(n + 1):
        w = (mu[0] - k * ALPHA[0], mu[1] - k * ALPHA[1])
        out[w] = out.get(w, 0) + 1
    return out


def _half_difference_product(roots, point):
    # prod (e^{phi/2} - e^{-phi/2}) with doubled coordinates: the half weight is phi // 2
    v = 1
    for phi in roots:
        h = tuple(c // 2 for c in phi)
        v *= monomial_value(h, point) - monomial_value(tuple(-c for c in h), point)
    return v


def test_criterion_3_gkrs(report):
    t0 = time.perf_counter()
    ok = True
    n = 0
    a2 = make_pair(build_root_system("A2"), [ALPHA])
    b2rs = build_root_system("B2")
    b2 = make_pair(b2rs, [b2rs.simple_roots[0]])
    for pair in (a2, b2):
        for lam in product(range(0, 7, 2), repeat=2):
            m = gkrs_multiplet(pair, lam)
            ok &= len(m.C) * len(pair.weyl_k) == len(pair.g.weyl_group)
            n += 1
            if pair is a2:
                # independent evaluation at rational points with the type A oracles
                g_char = dict(type_a_character(2, lam))
                for pt in SAMPLE_POINTS[2]:
                    lhs = 0
                    for sign, mu in m.multiplet:
                        chi = _u2_character(mu)
                        ok &= chi is not None
                        lhs += sign * evaluate(chi or {}, pt)
                    rhs = evaluate(g_char, pt) * _half_difference_product([BETA, GAMMA], pt)
                    ok &= lhs == rhs
    elapsed = time.perf_counter() - t0
    report(3, ok and elapsed < 30, f"{n} weights, {elapsed:.2f}s")


def _weyl_dimension(rs, lam):
    num = den = 1
    shifted = tuple(a + b for a, b in zip(lam, rs.rho))
    for phi in rs.positive_roots:
        num *= rs.form(shifted, phi)
        den *= rs.form(rs.rho, phi)
    return num // den


def test_criterion_4_torus_degeneration(report):
    t0 = time.perf_counter()
    ok = True
    n = 0
    for t in ("A2", "B2", "G2"):
        pair = make_pair(build_root_system(t), [])
        for lam in product(range(0, 5, 2), repeat=2):
            if not any(lam):
                continue  # the orbit of 0 is a point with no tangent weights
            n += 1
            fps = coadjoint(t, [], lam).ingest()
            spectrum = multiplicity_spectrum(fps)
            fr = freudenthal_multiplicities(pair, lam)
            ok &= spectrum == fr.terms
            ok &= sum(spectrum.values()) == _weyl_dimension(pair.g, lam)
            if t == "A2":
                ok &= spectrum == dict(type_a_character(2, lam))
            if dominant_chamber_test(pair, lam, "G").kind == "interior":
                ok &= all(kostant_branching(pair, lam, mu) == m for mu, m in spectrum.items())
    elapsed = time.perf_counter() - t0
    report(4, ok and elapsed < 60, f"{n} weights, {elapsed:.2f}s")


def test_criterion_5_theorem_vs_character(report):
    ok = True
    names = []
    for fx in consistency_fixtures("full"):
        fps = _quiet_ingest(fx)
        chi = main_formula_character(fps).character
        raw = [(p.mu, p.tangent_weights) for p in fx.points]
        ok &= all(evaluate(chi.terms, pt) == localization_value(raw, pt) for pt in SAMPLE_POINTS[fps.pair.rank])
        window = default_window(fps, pad=2)
        spectrum = multiplicity_spectrum(fps, window, check=False)
        dec = {k: v for k, v in decompose_into_k(fps.pair, chi).items() if v}
        inside = {k: v for k, v in dec.items() if all(lo <= c <= hi for c, (lo, hi) in zip(k, window))}
        ok &= spectrum == inside
        if fx.coadjoint_lambda is not None and fps.pair.g.cartan_type == "A2" and fps.pair.k_simple_roots:
            ok &= spectrum == dict(u3_branching(fx.coadjoint_lambda))
        names.append(fx.name)
    report(5, ok, f"{len(names)} fixtures")


LEVEL_CAP = 40


def _level_box(gens, f, cap):
    """Even lattice points of a box holding every sum of generators with level <= cap."""
    # each coefficient is at most cap / level(g), so coordinate i stays within +-steps * max|g_i|
    steps = max(int(cap / dot(g, f)) for g in gens) if gens else 0
    reach = [steps * max(abs(g[i]) for g in gens) if gens else 0 for i in range(len(f))]
    reach = [r + 2 for r in reach]  # a margin of zeros outside the cone
    return product(*(range(-r - r % 2, r + 1, 2) for r in reach))


def test_criterion_6_oracle_equivalences(report):
    rng = random.Random(11)
    ok = True
    types = ["A2", "B2", "G2", "A3", "B3", "C3"]
    for i in range(50):
        pair = make_pair(build_root_system(types[i % len(types)]), [])
        lam = tuple(2 * rng.randint(0, 2) for _ in range(pair.rank))
        ok &= weyl_character(pair, lam) == freudenthal_multiplicities(pair, lam)
        if pair.g.cartan_type in ("A2", "A3"):
            ok &= weyl_character(pair, lam).terms == dict(type_a_character(pair.rank, lam))
    cases = 0
    for fx in consistency_fixtures("full"):
        fps = _quiet_ingest(fx)
        problems = _Problems(fps)
        f = problems.functional  # unscaled, so the level cap is the stated one
        for pid, d in fps.data.items():
            pp = problems(pid)
            for zeta in _level_box(d.B_plus, f, LEVEL_CAP):
                if 0 <= dot(zeta, f) <= LEVEL_CAP:
                    cases += 1
                    ok &= pp.count(zeta) == count_combinations(d.B_plus, zeta, f)
            ok &= denominator_identity_check(fps.pair, list(d.walls))
    report(6, ok, f"{cases} partition counts")


def test_criterion_7_gp_comparison(report):
    fixtures = [su3_example(), builtin_fixture("a2_product"), coadjoint("A2", [], (2, 2)), coadjoint("B2", [], (2, 2))]
    lines = []
    ok = True
    for fx in fixtures:
        rows = gp_diff_table(fx.ingest())
        ok &= bool(rows) and all(r["delta"] == r["gp_value"] - r["multiplicity"] for r in rows)
        lines.append(f"{fx.name}: {sum(1 for r in rows if r['delta'])}/{len(rows)} differ")
    # the report is the deliverable; agreement is recorded, not required
    report(7, ok, "; ".join(lines))


def test_criterion_8_negative_control(report, tmp_path):
    ok = True
    for fx, i, j in [(builtin_fixture("cp1"), 0, 0), (coadjoint("A2", [], (2, 2)), 0, 0), (builtin_fixture("a2_product"), 4, 1)]:
        pts = flipped(fx.points, i, j)
        try:
            main_formula_character(ingest(fx.pair, pts))
            ok = False
        except InexactDivisionError:
            pass
        try:
            localization_character(ingest(fx.pair, pts))
            ok = False
        except InexactDivisionError:
            pass
        # and through the command line
        path = tmp_path / f"{fx.name.replace(' ', '_')}.json"
        path.write_text(json.dumps(fixture_to_dict(fx.pair, pts)))
        with contextlib.redirect_stderr(io.StringIO()), contextlib.redirect_stdout(io.StringIO()):
            ok &= main(["character", "--input", str(path)]) == 3
    report(8, ok, "3 flipped fixtures rejected")
