"""Named fixed-point fixtures used by the verifier, the tests and the examples."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .fixedpoint import FixedPoint, FixedPointSet, coadjoint_fixture, ingest, product_fixture
from .rootsys import SubgroupPair, Weight, build_root_system, make_pair


@dataclass
class Fixture:
    name: str
    pair: SubgroupPair
    points: list[FixedPoint]
    coadjoint_lambda: Weight | None = None

    def ingest(self) -> FixedPointSet:
        fps = ingest(self.pair, self.points)
        if self.coadjoint_lambda is not None:
            fps.meta["coadjoint_lambda"] = self.coadjoint_lambda
        return fps


def su3_pair() -> SubgroupPair:
    """SU(3) with K = S(U(2) x U(1)), K generated by the first simple root."""
    return make_pair(build_root_system("A2"), [(4, -2)])


def su3_example() -> Fixture:
    """The non-generic orbit through nu = beta + gamma = 3 omega_2."""
    pair = su3_pair()
    return Fixture("su3", pair, coadjoint_fixture(pair, (0, 6)), (0, 6))


def cp1() -> Fixture:
    """CP^1 with the circle acting with weight omega; K = T in A1."""
    pair = make_pair(build_root_system("A1"), [])
    pts = [FixedPoint("north", (2,), ((2,),)), FixedPoint("south", (-2,), ((-2,),))]
    return Fixture("cp1", pair, pts)


def coadjoint(cartan_type: str, k_roots, lam) -> Fixture:
    pair = make_pair(build_root_system(cartan_type), k_roots)
    lam = tuple(lam)
    name = f"{cartan_type} k={[list(r) for r in k_roots]} lambda={list(lam)}"
    return Fixture(name, pair, coadjoint_fixture(pair, lam), lam)


def circle_factor(chi) -> list[FixedPoint]:
    """CP^1 on which the torus acts through the character chi, with poles at +-chi.

    When chi is orthogonal to every root of K this is a K-space on which [K, K]
    acts trivially, so products with it stay admissible.
    """
    chi = tuple(chi)
    minus = tuple(-c for c in chi)
    return [FixedPoint("n", chi, (chi,)), FixedPoint("s", minus, (minus,))]


def a2_product() -> Fixture:
    """G.omega_1 x CP^1 in A2 with the SU(3) pair, the circle acting through omega_2."""
    pair = su3_pair()
    pts = product_fixture(pair, coadjoint_fixture(pair, (2, 0)), circle_factor((0, 2)))
    return Fixture("a2_product", pair, pts)


def a1_torus_product() -> Fixture:
    """CP^1 x CP^1 with moment scales alpha and 2 alpha, K = T."""
    pair = make_pair(build_root_system("A1"), [])
    pts = product_fixture(pair, coadjoint_fixture(pair, (4,)), coadjoint_fixture(pair, (8,)))
    return Fixture("a1_torus_product", pair, pts)


def b2_product() -> Fixture:
    """G.rho x CP^1 in B2 with K generated by the long simple root."""
    rs = build_root_system("B2")
    pair = make_pair(rs, [rs.simple_roots[0]])
    pts = product_fixture(pair, coadjoint_fixture(pair, (2, 2)), circle_factor((0, 2)))
    return Fixture("b2_product", pair, pts)


BUILTIN = {
    "su3": su3_example,
    "cp1": cp1,
    "a2_product": a2_product,
    "a1_torus_product": a1_torus_product,
    "b2_product": b2_product,
}


def builtin_fixture(name: str) -> Fixture:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise InputError(f"unknown builtin fixture {name!r}; choose from {sorted(BUILTIN)}") from None
