from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylquant.charring import decompose_into_k, freudenthal_multiplicities, weyl_character
from weylquant.errors import DomainError, NonPointedConeError
from weylquant.fixtures import builtin_fixture, coadjoint, su3_example, su3_pair
from weylquant.multiplicity import (
    PartitionProblem,
    brute_force_partition_count,
    default_window,
    gp_diff_table,
    guillemin_prato_variant,
    kostant_branching,
    multiplicity_spectrum,
    multiplicity_theorem,
    partition_count,
    window_weights,
    worker_count,
)
from weylquant.quantize import main_formula_character
from weylquant.rootsys import build_root_system, make_pair
from oracles import (
    A2_POSITIVE,
    ALPHA,
    BETA,
    GAMMA,
    a2_weyl_matrices,
    count_combinations,
    kostant_multiplicity,
    u3_branching,
)

RHO_F = (1, 1)  # pairs positively with alpha, beta, gamma in doubled coordinates
FIG1 = {(6, -6): 1, (4, -2): 1, (2, 2): 1, (0, 6): 1}


def test_partition_examples():
    pp = PartitionProblem(tuple(A2_POSITIVE), RHO_F)
    assert partition_count(pp, (0, 0)) == 1
    assert partition_count(pp, ALPHA) == 1
    assert partition_count(pp, BETA) == 2  # beta, alpha + gamma
    assert partition_count(pp, (4, 4)) == 3  # 2beta, beta+alpha+gamma, 2alpha+2gamma
    assert partition_count(pp, (-4, 2)) == 0


def test_partition_rejects_bad_cones():
    with pytest.raises(NonPointedConeError):
        PartitionProblem((ALPHA, (-4, 2)), RHO_F)
    with pytest.raises(DomainError):
        PartitionProblem(((0, 0),), RHO_F)


@settings(max_examples=60, deadline=None)
@given(
    gens=st.lists(st.sampled_from([ALPHA, BETA, GAMMA, (2, 0), (0, 2), (6, -2)]), min_size=1, max_size=4),
    a=st.integers(-6, 10),
    b=st.integers(-6, 10),
)
def test_partition_matches_recursion_oracle(gens, a, b):
    zeta = (2 * a, 2 * b)
    pp = PartitionProblem(tuple(gens), RHO_F)
    expected = count_combinations(gens, zeta, RHO_F)
    assert pp.count(zeta) == expected == brute_force_partition_count(gens, RHO_F, zeta)


def test_fractional_functional_is_rescaled():
    pp = PartitionProblem((ALPHA, GAMMA), (Fraction(1, 3), Fraction(1, 2)))
    assert all(isinstance(v, int) for v in pp.pointedness_functional)
    assert pp.count(BETA) == 1


@pytest.mark.parametrize("lam,m", sorted(FIG1.items()))
def test_su3_theorem_values(lam, m):
    assert multiplicity_theorem(su3_example().ingest(), lam) == m


def test_su3_theorem_zero_outside():
    fps = su3_example().ingest()
    for lam in [(4, 4), (6, 0), (2, -6), (0, 0)]:
        assert multiplicity_theorem(fps, lam) == 0


def test_su3_spectrum_is_figure():
    assert multiplicity_spectrum(su3_example().ingest()) == FIG1
    assert FIG1 == dict(u3_branching((0, 6)))


def test_theorem_rejects_non_dominant():
    with pytest.raises(DomainError):
        multiplicity_theorem(su3_example().ingest(), (-4, 2))
    with pytest.raises(DomainError):
        multiplicity_theorem(su3_example().ingest(), (1, 2))


@pytest.mark.parametrize("lam", [(2, 2), (4, 2), (2, 4), (4, 4)])
def test_spectrum_matches_interlacing(lam):
    fps = coadjoint("A2", [ALPHA], lam).ingest()
    spectrum = multiplicity_spectrum(fps, default_window(fps, pad=2))
    assert spectrum == dict(u3_branching(lam))


@pytest.mark.parametrize("name", ["a2_product", "a1_torus_product", "b2_product", "cp1"])
def test_builtin_spectrum_matches_decomposition(name):
    fps = builtin_fixture(name).ingest()
    spectrum = multiplicity_spectrum(fps, default_window(fps, pad=2), check=False)
    dec = decompose_into_k(fps.pair, main_formula_character(fps).character)
    assert spectrum == {k: v for k, v in dec.items() if v}


def test_cp1_window():
    fps = builtin_fixture("cp1").ingest()
    assert multiplicity_spectrum(fps, [(-4, 4)]) == {(2,): 1, (0,): 1, (-2,): 1}


def test_empty_window():
    fps = su3_example().ingest()
    assert window_weights(fps.pair, [(4, 2), (0, 6)]) == []
    assert multiplicity_spectrum(fps, [(4, 2), (0, 6)]) == {}


@pytest.mark.parametrize("lam", [(2, 2), (4, 2), (2, 4), (4, 4), (6, 2)])
def test_kostant_matches_oracle(lam):
    torus = make_pair(build_root_system("A2"), [])
    fr = freudenthal_multiplicities(torus, lam)
    for mu in fr.terms:
        ours = kostant_branching(torus, lam, mu)
        assert ours == kostant_multiplicity(A2_POSITIVE, RHO_F, a2_weyl_matrices(), lam, mu, (2, 2))
        assert ours == fr.coefficient(mu)


@pytest.mark.parametrize("lam", [(2, 2), (4, 2), (2, 4), (4, 4)])
def test_kostant_branching_to_u2(lam):
    for mu, m in u3_branching(lam).items():
        assert kostant_branching(su3_pair(), lam, mu) == m


def test_kostant_requires_regular():
    with pytest.raises(DomainError):
        kostant_branching(su3_pair(), (0, 6), (0, 6))


@pytest.mark.parametrize("lam", [(2, 2), (4, 2), (2, 4)])
def test_gp_agrees_on_torus_coadjoint(lam):
    fps = coadjoint("A2", [], lam).ingest()
    for mu, m in weyl_character(fps.pair, lam).items():
        assert guillemin_prato_variant(fps, mu) == m == multiplicity_theorem(fps, mu)


def test_gp_table_shape():
    rows = gp_diff_table(su3_example().ingest())
    assert rows and all(r["delta"] == r["gp_value"] - r["multiplicity"] for r in rows)
    ours = {tuple(r["lambda"]): r["multiplicity"] for r in rows if r["multiplicity"]}
    assert ours == FIG1


def test_spectrum_with_workers(monkeypatch):
    fps = coadjoint("A2", [ALPHA], (4, 2)).ingest()
    serial = multiplicity_spectrum(fps)
    monkeypatch.setenv("WEYLQUANT_THREADS", "3")
    assert multiplicity_spectrum(fps) == serial


def test_bad_thread_setting_warns(monkeypatch):
    monkeypatch.setenv("WEYLQUANT_THREADS", "many")
    with pytest.warns(UserWarning):
        assert worker_count() == 1


def test_kostant_examples():
    torus = make_pair(build_root_system("A2"), [])
    assert kostant_branching(torus, (2, 2), (0, 0)) == 2
    assert kostant_branching(su3_pair(), (2, 2), (2, 2)) == 1
    assert kostant_branching(su3_pair(), (2, 2), (20, 20)) == 0
