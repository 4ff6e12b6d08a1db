"""Torus fixed-point data and everything derived from it.

A fixture is a list of isolated fixed points, each carrying its moment image
and the multiset of torus weights on the tangent space.  Ingesting it
partitions the points into W(K)-orbits and computes, per point and per orbit,
the split into orbit directions and transverse weights, their polarization,
and the correction polynomial used by the character formula.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .charring import FormalCharacter, expand_half_product, expand_one_minus_product
from .errors import AmbiguousDataError, DomainError, EmptyInputError, MalformedPointError
from .rootsys import (
    SubgroupPair,
    Weight,
    WeylElement,
    dominant_chamber_test,
    dot,
    generate_group,
    is_integral,
    neg,
    reflection_element,
)


@dataclass(frozen=True)
class FixedPoint:
    id: str
    mu: Weight
    tangent_weights: tuple[Weight, ...]
    component: str | None = None

    def key(self) -> tuple[Weight, tuple[Weight, ...]]:
        return self.mu, tuple(sorted(self.tangent_weights))


@dataclass(frozen=True)
class PointData:
    """Per-point quantities; ``beta_half`` and ``beta_plus_half`` are half-sums."""

    point: FixedPoint
    walls: tuple[Weight, ...]
    orbit_weights: tuple[Weight, ...]
    B: tuple[Weight, ...]
    B_plus: tuple[Weight, ...]
    s: int
    beta_bar: Weight
    beta_half: Weight
    beta_plus_half: Weight


@dataclass(frozen=True)
class OrbitData:
    id: str
    representative: FixedPoint
    members: dict[str, WeylElement]  # point id -> w in W(K) with w(rep) = point
    A: tuple[Weight, ...]
    stabilizer: tuple[WeylElement, ...]
    orbit_tangent_weights: tuple[Weight, ...]
    B: tuple[Weight, ...]
    B_plus_orbit: tuple[Weight, ...]
    C: tuple[Weight, ...]
    s: int
    beta_half_sum: Weight
    beta_bar: Weight
    m: FormalCharacter
    m_tilde: FormalCharacter

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ZElement:
    point: FixedPoint
    w: WeylElement
    orbit_id: str


@dataclass
class FixedPointSet:
    pair: SubgroupPair
    points: list[FixedPoint]
    orbits: list[OrbitData]
    z_set: list[ZElement]
    data: dict[str, PointData]
    xi: tuple
    warnings: list[str] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def point(self, pid: str) -> FixedPoint:
        return self.data[pid].point

    def orbit_of(self, pid: str) -> OrbitData:
        for o in self.orbits:
            if pid in o.members:
                return o
        raise KeyError(pid)


def _as_point(raw: Any, index: int, rank: int) -> FixedPoint:
    if isinstance(raw, FixedPoint):
        p = raw
    elif isinstance(raw, Mapping):
        try:
            mu = tuple(int(v) for v in raw["mu"])
            tw = tuple(tuple(int(v) for v in t) for t in raw["tangent_weights"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedPointError(f"point #{index}: {exc}") from exc
        p = FixedPoint(
            id=str(raw.get("id", f"p{index + 1}")),
            mu=mu,
            tangent_weights=tw,
            component=raw.get("component"),
        )
    else:
        mu, tw, *rest = raw
        p = FixedPoint(
            id=f"p{index + 1}",
            mu=tuple(mu),
            tangent_weights=tuple(tuple(t) for t in tw),
            component=rest[0] if rest else None,
        )
    if len(p.mu) != rank or any(len(t) != rank for t in p.tangent_weights):
        raise MalformedPointError(f"point {p.id}: weights must have length {rank}")
    if not p.tangent_weights:
        raise MalformedPointError(f"point {p.id}: empty tangent weight multiset")
    if any(not any(t) for t in p.tangent_weights):
        raise MalformedPointError(f"point {p.id}: zero tangent weight (fixed point not isolated)")
    if not is_integral(p.mu):
        raise MalformedPointError(f"point {p.id}: moment image {p.mu} is not integral")
    if any(not is_integral(t) for t in p.tangent_weights):
        raise MalformedPointError(f"point {p.id}: tangent weights must be integral")
    return FixedPoint(p.id, p.mu, tuple(sorted(p.tangent_weights)), p.component)


def wall_roots(pair: SubgroupPair, mu: Sequence[int]) -> tuple[Weight, ...]:
    """A = positive roots of K orthogonal to mu."""
    return tuple(a for a in pair.k_positive_roots if pair.g.form(mu, a) == 0)


def split_orbit_weights(
    pair: SubgroupPair, p: FixedPoint
) -> tuple[tuple[Weight, ...], tuple[Weight, ...]]:
    """Separate the K-orbit directions alpha_ij from the remaining weights B_i."""
    remaining = Counter(p.tangent_weights)
    taken = []
    for a in pair.k_positive_roots:
        if pair.g.form(p.mu, a) == 0:
            continue
        na = neg(a)
        has_pos, has_neg = remaining[a] > 0, remaining[na] > 0
        if has_pos and has_neg:
            raise MalformedPointError(
                f"point {p.id}: both {a} and {na} occur; the K-orbit direction is ambiguous"
            )
        if not (has_pos or has_neg):
            raise MalformedPointError(f"point {p.id}: neither {a} nor {na} is a tangent weight")
        r = a if has_pos else na
        remaining[r] -= 1
        taken.append(r)
    B = tuple(sorted(remaining.elements()))
    return tuple(taken), B


def polarize(
    pair: SubgroupPair, B: Iterable[Sequence[int]], xi: Sequence | None = None
) -> tuple[tuple[Weight, ...], int, Weight, Weight]:
    """Return (B+, s, beta_bar, beta_half) for a multiset of transverse weights."""
    xi = pair.xi if xi is None else xi
    B = [tuple(b) for b in B]
    rank = pair.rank
    plus, s = [], 0
    beta_bar = [0] * rank
    for b in B:
        if dot(b, xi) < 0:
            s += 1
            plus.append(neg(b))
            beta_bar = [x + y for x, y in zip(beta_bar, b)]
        else:
            plus.append(b)
    total = [sum(b[i] for b in B) for i in range(rank)]
    beta_half = tuple(v // 2 for v in total)
    return tuple(sorted(plus)), s, tuple(beta_bar), beta_half


def _point_data(pair: SubgroupPair, p: FixedPoint, xi) -> PointData:
    alphas, B = split_orbit_weights(pair, p)
    B_plus, s, beta_bar, beta_half = polarize(pair, B, xi)
    rank = pair.rank
    plus_half = tuple(sum(b[i] for b in B_plus) // 2 for i in range(rank))
    return PointData(
        point=p,
        walls=wall_roots(pair, p.mu),
        orbit_weights=alphas,
        B=B,
        B_plus=B_plus,
        s=s,
        beta_bar=beta_bar,
        beta_half=beta_half,
        beta_plus_half=plus_half,
    )


def _image_key(w: WeylElement, p: FixedPoint):
    return w(p.mu), tuple(sorted(w(t) for t in p.tangent_weights))


def orbit_polarized_set(
    pair: SubgroupPair, rep: PointData
) -> tuple[Counter, Counter, FormalCharacter, FormalCharacter, list[str]]:
    """B+ of the whole orbit, C, and the expansions m and m~.

    The orbit set keeps, for each weight, the largest multiplicity it has at a
    single point, so it is W(K)-stable and contains the representative's B+.
    """
    notes = []
    swept: Counter = Counter()
    for w in pair.weyl_k:
        swept |= Counter(w(b) for b in rep.B_plus)
    here = Counter(rep.B_plus)
    # Multiset-vs-set is only in doubt when a repeated weight is also a
    # nontrivial W(K)-translate of a different weight at the same point.
    clash = [
        g for g, v in here.items()
        if v > 1 and any(w(b) == g for w in pair.weyl_k for b in here if b != g)
    ]
    if clash:
        notes.append(
            f"point {rep.point.id}: repeated transverse weight {clash[0]} is a W(K)-translate "
            "of another; orbit set keeps the largest single-point multiplicity"
        )
    C = swept - here
    rank = pair.rank
    m = expand_one_minus_product(C.elements(), rank)
    m_tilde = expand_half_product(C.elements(), rank)
    return swept, C, m, m_tilde, notes


def ingest(pair: SubgroupPair, raw_points: Sequence[Any]) -> FixedPointSet:
    """Validate raw fixed-point data and derive orbit structure, polarization and Z."""
    if not raw_points:
        raise EmptyInputError("no fixed points supplied")
    rank = pair.rank
    points = [_as_point(r, i, rank) for i, r in enumerate(raw_points)]
    ids = [p.id for p in points]
    if len(set(ids)) != len(ids):
        raise MalformedPointError("duplicate point ids")

    splits = {p.id: split_orbit_weights(pair, p) for p in points}
    xi = pair.generic_functional(b for _, B in splits.values() for b in B)
    data = {p.id: _point_data(pair, p, xi) for p in points}

    index: dict = {}
    for p in points:
        index.setdefault(p.key(), []).append(p)
    for k, ps in index.items():
        if len(ps) > 1:
            raise AmbiguousDataError(
                f"points {[p.id for p in ps]} carry identical data; "
                "supply distinguishable points or explicit orbit labels"
            )

    def image(w: WeylElement, p: FixedPoint) -> FixedPoint:
        hits = index.get(_image_key(w, p))
        if not hits:
            raise MalformedPointError(
                f"the W(K)-image of point {p.id} with moment {w(p.mu)} is missing"
            )
        return hits[0]

    notes: list[str] = []
    orbits: list[OrbitData] = []
    z_set: list[ZElement] = []
    assigned: set[str] = set()
    for p in points:
        if p.id in assigned:
            continue
        members = {image(w, p).id for w in pair.weyl_k}
        reps = [
            q for q in points
            if q.id in members and dominant_chamber_test(pair, q.mu, "K").kind != "outside"
        ]
        if len(reps) != 1:
            raise MalformedPointError(
                f"orbit of {p.id} has {len(reps)} points in the closed K-dominant chamber"
            )
        rep = reps[0]
        rd = data[rep.id]
        member_map: dict[str, WeylElement] = {}
        stab = []
        for w in pair.weyl_k:
            q = image(w, rep)
            member_map.setdefault(q.id, w)
            if q.id == rep.id:
                stab.append(w)
        walls_group = generate_group((reflection_element(pair.g, a) for a in rd.walls), rank)
        if {w.matrix for w in stab} != {w.matrix for w in walls_group}:
            raise MalformedPointError(
                f"point {rep.id}: its W(K)-stabilizer differs from the group generated by its walls"
            )
        swept, C, m, m_tilde, orbit_notes = orbit_polarized_set(pair, rd)
        notes.extend(orbit_notes)
        oid = f"O{len(orbits) + 1}"
        orbits.append(
            OrbitData(
                id=oid,
                representative=rep,
                members=member_map,
                A=rd.walls,
                stabilizer=tuple(walls_group),
                orbit_tangent_weights=rd.orbit_weights,
                B=rd.B,
                B_plus_orbit=tuple(sorted(swept.elements())),
                C=tuple(sorted(C.elements())),
                s=rd.s,
                beta_half_sum=rd.beta_half,
                beta_bar=rd.beta_bar,
                m=m,
                m_tilde=m_tilde,
            )
        )
        for w in pair.weyl_k:
            z_set.append(ZElement(image(w, rep), w, oid))
        assigned |= set(member_map)

    for n in notes:
        warnings.warn(n, stacklevel=2)
    return FixedPointSet(
        pair=pair, points=points, orbits=orbits, z_set=z_set, data=data, xi=xi, warnings=notes
    )


def coadjoint_fixture(
    pair: SubgroupPair, lam: Sequence[int], complex_structure_sign: int = 1
) -> list[FixedPoint]:
    """Fixed points of the coadjoint orbit G.lam with its Borel-Weil complex structure.

    The tangent weights at w.lam are sign * w.phi over positive roots phi not
    orthogonal to lam; sign +1 reproduces the character of V_lam.
    """
    lam = tuple(lam)
    rs = pair.g
    if len(lam) != rs.rank or not is_integral(lam):
        raise DomainError(f"{lam} is not an integral weight of {rs.cartan_type}")
    if dominant_chamber_test(pair, lam, "G").kind == "outside":
        raise DomainError(f"{lam} is not G-dominant")
    if complex_structure_sign not in (1, -1):
        raise DomainError("complex_structure_sign must be +1 or -1")
    active = [phi for phi in rs.positive_roots if rs.form(lam, phi) != 0]
    if not active:
        raise MalformedPointError("the orbit of 0 is a point: no tangent weights")
    seen: dict[Weight, FixedPoint] = {}
    for w in rs.weyl_group:
        x = w(lam)
        if x in seen:
            continue
        tw = tuple(sorted(tuple(complex_structure_sign * c for c in w(phi)) for phi in active))
        seen[x] = FixedPoint(f"p{len(seen) + 1}", x, tw)
    return list(seen.values())


def product_fixture(pair: SubgroupPair, *factors: Sequence[FixedPoint]) -> list[FixedPoint]:
    """Fixed points of a product of Hamiltonian spaces (moments add, tangent weights concatenate)."""
    combos: list[tuple[Weight, tuple[Weight, ...]]] = [((0,) * pair.rank, ())]
    for pts in factors:
        combos = [
            (tuple(a + b for a, b in zip(mu, p.mu)), tw + p.tangent_weights)
            for mu, tw in combos
            for p in pts
        ]
    return [
        FixedPoint(f"p{i + 1}", mu, tuple(sorted(tw))) for i, (mu, tw) in enumerate(combos)
    ]
