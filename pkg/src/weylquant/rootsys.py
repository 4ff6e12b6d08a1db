"""Root systems, Weyl groups and equal-rank subgroup pairs.

Weights are plain integer tuples in the *doubled* fundamental-weight basis:
coordinate ``i`` of a weight ``lam`` is ``2 <lam, alpha_i^vee>``.  Half-sums
such as rho_K and the shifts used by the half-weight formulas are therefore
exact integers.  A weight is integral iff every coordinate is even.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import ConfigurationError, DegeneratePairError, DomainError

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

MAX_RANK = 8

_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
    "F": lambda n: 24,
}


def add(x: Sequence[int], y: Sequence[int]) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> Weight:
    return tuple(a - b for a, b in zip(x, y))


def neg(x: Sequence[int]) -> Weight:
    return tuple(-a for a in x)


def scale(c: int, x: Sequence[int]) -> Weight:
    return tuple(c * a for a in x)


def is_integral(x: Sequence[int]) -> bool:
    return all(a % 2 == 0 for a in x)


def half(x: Sequence[int]) -> Weight:
    """Exact half of a weight whose doubled coordinates are all even."""
    if not is_integral(x):
        raise DomainError(f"{tuple(x)} is not divisible by two in the doubled lattice")
    return tuple(a // 2 for a in x)


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def _simple_cartan(family: str, n: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_i, alpha_j^vee> (Bourbaki labels)."""
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if family == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif family == "B":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)  # alpha_n short
    elif family == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)  # alpha_n long
    elif family == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif family == "G":
        bond(0, 1, -1, -3)  # alpha_1 short
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_1, alpha_2 long
        bond(2, 3)
    return c


def _parse_factor(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"([ABCDFG])(\d+)", label.strip())
    if not m:
        raise ConfigurationError(f"unknown Cartan type {label!r}")
    family, n = m.group(1), int(m.group(2))
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 3,
        "G": n == 2,
        "F": n == 4,
    }[family]
    if not ok or n > MAX_RANK:
        raise ConfigurationError(f"unsupported Cartan type {label!r}")
    return family, n


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on doubled coordinates, with its determinant."""

    matrix: Matrix
    sign: int

    def __call__(self, lam: Sequence[int]) -> Weight:
        return tuple(dot(row, lam) for row in self.matrix)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        cols = list(zip(*other.matrix))
        m = tuple(tuple(dot(row, col) for col in cols) for row in self.matrix)
        return WeylElement(m, self.sign * other.sign)

    @property
    def is_identity(self) -> bool:
        return all(
            v == (1 if i == j else 0)
            for i, row in enumerate(self.matrix)
            for j, v in enumerate(row)
        )


def identity_element(rank: int) -> WeylElement:
    return WeylElement(
        tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)), 1
    )


def generate_group(generators: Iterable[WeylElement], rank: int) -> tuple[WeylElement, ...]:
    """Breadth-first closure of a set of reflections, identity first."""
    gens = list(generators)
    ident = identity_element(rank)
    seen = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                v = s @ w
                if v.matrix not in seen:
                    seen[v.matrix] = v
                    nxt.append(v)
        frontier = nxt
    return tuple(seen.values())


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: str
    cartan_matrix: tuple[tuple[int, ...], ...]
    # Gram matrix of the invariant form on the fundamental-weight basis,
    # normalised so that short roots of every simple factor have length^2 = 2.
    symmetrized_form: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @cached_property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Weight]:
        return frozenset(self.roots)

    @cached_property
    def _int_form(self) -> tuple[tuple[int, ...], ...]:
        den = lcm(*(v.denominator for row in self.symmetrized_form for v in row))
        return tuple(tuple(int(v * den) for v in row) for row in self.symmetrized_form)

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Inner product of two doubled-coordinate vectors, up to a fixed positive scale."""
        g = self._int_form
        return sum(x[i] * sum(g[i][j] * y[j] for j in range(len(y))) for i in range(len(x)))

    def covector(self, v: Sequence) -> tuple:
        """Covector c with dot(x, c) proportional to form(x, v) (same fixed scale)."""
        g = self._int_form
        return tuple(sum(g[i][j] * v[j] for j in range(len(v))) for i in range(len(g)))

    def coroot_pairing(self, lam: Sequence[int], alpha: Sequence[int]) -> Fraction:
        """<lam, alpha^vee>; a half-integer for doubled-lattice inputs."""
        return Fraction(2 * self.form(lam, alpha), self.form(alpha, alpha))

    @cached_property
    def rho(self) -> Weight:
        return tuple(2 for _ in range(self.rank))

    def is_root(self, alpha: Sequence[int]) -> bool:
        return tuple(alpha) in self.root_set

    def reflect(self, alpha: Sequence[int], lam: Sequence[int]) -> Weight:
        return reflect(self, alpha, lam)

    @cached_property
    def simple_reflections(self) -> tuple[WeylElement, ...]:
        return tuple(reflection_element(self, a) for a in self.simple_roots)

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return generate_group(self.simple_reflections, self.rank)

    @cached_property
    def rho_functional(self) -> tuple[int, ...]:
        return self.covector(self.rho)

    def __repr__(self) -> str:
        return f"RootSystem({self.cartan_type})"


def build_root_system(cartan_type: str) -> RootSystem:
    """Root system for a label such as ``A2``, ``G2`` or ``A1xA1``."""
    import sympy

    factors = [_parse_factor(f) for f in re.split(r"[x×]", cartan_type)]
    n = sum(r for _, r in factors)
    if n > MAX_RANK:
        raise ConfigurationError(f"rank {n} exceeds {MAX_RANK}")
    cartan = [[0] * n for _ in range(n)]
    sym = [Fraction(0)] * n
    off = 0
    for family, r in factors:
        c = _simple_cartan(family, r)
        for i in range(r):
            for j in range(r):
                cartan[off + i][off + j] = c[i][j]
        # (alpha_i, alpha_j) = C[i][j] d_j must be symmetric; propagate d along the chain.
        d = [Fraction(0)] * r
        d[0] = Fraction(1)
        todo = [0]
        while todo:
            i = todo.pop()
            for j in range(r):
                if j != i and c[i][j] != 0 and d[j] == 0:
                    d[j] = Fraction(c[j][i]) * d[i] / c[i][j]
                    todo.append(j)
        dmin = min(d)
        for i in range(r):
            sym[off + i] = d[i] / dmin
        off += r

    cinv = sympy.Matrix(cartan).inv()
    form = tuple(
        tuple(Fraction(str(cinv[k, i])) * sym[i] for k in range(n)) for i in range(n)
    )

    simple = tuple(tuple(2 * v for v in row) for row in cartan)
    # Close the simple roots under simple reflections, tracking simple-root coordinates.
    start = [(simple[i], tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    found = dict(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for r, c in frontier:
            for i in range(n):
                k = r[i] // 2
                if k == 0:
                    continue
                r2 = sub(r, scale(k, simple[i]))
                if r2 not in found:
                    c2 = tuple(cj - (k if j == i else 0) for j, cj in enumerate(c))
                    found[r2] = c2
                    nxt.append((r2, c2))
        frontier = nxt
    positive = sorted(
        (r for r, c in found.items() if all(v >= 0 for v in c)),
        key=lambda r: (sum(found[r]), tuple(-v for v in found[r])),
    )
    expected = sum(_ROOT_COUNTS[f](r) for f, r in factors)
    if len(positive) != expected:
        raise ConfigurationError(
            f"{cartan_type}: generated {len(positive)} positive roots, expected {expected}"
        )
    return RootSystem(
        cartan_type=cartan_type,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        symmetrized_form=form,
        positive_roots=tuple(positive),
        simple_roots=simple,
    )


def reflect(rs: RootSystem, alpha: Sequence[int], lam: Sequence[int]) -> Weight:
    """s_alpha(lam) = lam - <lam, alpha^vee> alpha, exact in doubled coordinates."""
    if not rs.is_root(alpha):
        raise DomainError(f"{tuple(alpha)} is not a root of {rs.cartan_type}")
    k = rs.coroot_pairing(lam, alpha)
    return tuple(l - int(k * a) for l, a in zip(lam, alpha))


def reflection_element(rs: RootSystem, alpha: Sequence[int]) -> WeylElement:
    n = rs.rank
    cols = [reflect(rs, alpha, tuple(2 if j == k else 0 for j in range(n))) for k in range(n)]
    m = tuple(tuple(cols[k][j] // 2 for k in range(n)) for j in range(n))
    return WeylElement(m, -1)


def weyl_group(rs: RootSystem) -> tuple[WeylElement, ...]:
    return rs.weyl_group


def simple_system(rs: RootSystem, positive: Sequence[Weight]) -> tuple[Weight, ...]:
    """Indecomposable elements of a positive system."""
    pos = set(positive)
    return tuple(
        a for a in positive if not any(sub(a, b) in pos for b in positive if b != a)
    )


def close_subsystem(rs: RootSystem, roots: Iterable[Sequence[int]]) -> frozenset[Weight]:
    """Smallest reflection-closed set of roots containing +-roots."""
    current = set()
    for r in roots:
        current.add(tuple(r))
        current.add(neg(r))
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in list(current):
                c = reflect(rs, a, b)
                if c not in current:
                    current.add(c)
                    changed = True
    return frozenset(current)


def dominant_conjugate(
    rs: RootSystem, simple: Sequence[Weight], lam: Sequence[int]
) -> tuple[Weight, int, bool]:
    """Move lam into the closed chamber of ``simple`` by simple reflections.

    Returns (dominant weight, sign of the element used, whether it lies on a wall).
    """
    x = tuple(lam)
    sign = 1
    while True:
        for a in simple:
            if rs.coroot_pairing(x, a) < 0:
                x = reflect(rs, a, x)
                sign = -sign
                break
        else:
            break
    on_wall = any(rs.coroot_pairing(x, a) == 0 for a in simple)
    return x, sign, on_wall


class ChamberTest(NamedTuple):
    kind: str  # "interior", "boundary" or "outside"
    walls: tuple[Weight, ...] = ()


@dataclass(frozen=True, eq=False)
class SubgroupPair:
    g: RootSystem
    k_positive_roots: tuple[Weight, ...]
    k_simple_roots: tuple[Weight, ...]
    weyl_k: tuple[WeylElement, ...]
    rho_g: Weight
    rho_k: Weight
    # Covector c with dot(beta, c) having the sign of <beta, xi>; zero when
    # Phi(K) spans t* (K of full semisimple rank).
    xi: tuple[Fraction, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.g.rank

    @cached_property
    def k_roots(self) -> frozenset[Weight]:
        return frozenset(self.k_positive_roots) | frozenset(neg(a) for a in self.k_positive_roots)

    @cached_property
    def g_over_k_positive(self) -> tuple[Weight, ...]:
        kp = set(self.k_positive_roots)
        return tuple(a for a in self.g.positive_roots if a not in kp)

    @cached_property
    def k_order_functional(self) -> tuple[int, ...]:
        return self.g.covector(self.rho_k)

    def positive_roots_of(self, group: str) -> tuple[Weight, ...]:
        return self.g.positive_roots if _group(group) == "G" else self.k_positive_roots

    def simple_roots_of(self, group: str) -> tuple[Weight, ...]:
        return self.g.simple_roots if _group(group) == "G" else self.k_simple_roots

    def weyl_of(self, group: str) -> tuple[WeylElement, ...]:
        return self.g.weyl_group if _group(group) == "G" else self.weyl_k

    def rho_of(self, group: str) -> Weight:
        return self.rho_g if _group(group) == "G" else self.rho_k

    def xi_pairing(self, beta: Sequence[int]) -> Fraction:
        return dot(beta, self.xi)

    def generic_functional(
        self, weights: Iterable[Sequence[int]], attempts: int = 64, seed: int = 0
    ) -> tuple[Fraction, ...]:
        """A polarization covector vanishing on Phi(K) and nonzero on every other weight given."""
        targets = {tuple(b) for b in weights if tuple(b) not in self.k_roots}
        if not targets:
            return self.xi
        if all(dot(b, self.xi) != 0 for b in targets):
            return self.xi
        rng = random.Random(seed)
        for _ in range(attempts):
            shift = tuple(2 * rng.randint(0, 3) for _ in range(self.rank))
            cand = _annihilator_projection(self.g, self.k_simple_roots, add(self.rho_g, shift))
            if all(dot(b, cand) != 0 for b in targets):
                return cand
        raise DegeneratePairError(
            "no polarization functional orthogonal to Phi(K) separates the tangent weights"
        )


def _group(group: str) -> str:
    g = group.upper()
    if g not in ("G", "K"):
        raise DomainError(f"group flag must be 'G' or 'K', got {group!r}")
    return g


def _annihilator_projection(
    rs: RootSystem, basis: Sequence[Weight], v: Sequence[int]
) -> tuple[Fraction, ...]:
    """Covector of the orthogonal projection of v onto the annihilator of span(basis)."""
    import sympy

    v = tuple(Fraction(a) for a in v)
    if basis:
        gram = sympy.Matrix([[rs.form(a, b) for b in basis] for a in basis])
        rhs = sympy.Matrix([rs.form(a, v) for a in basis])
        coeffs = [Fraction(str(c)) for c in gram.LUsolve(rhs)]
        for c, a in zip(coeffs, basis):
            v = tuple(x - c * y for x, y in zip(v, a))
    return tuple(Fraction(c) for c in rs.covector(v))


def make_pair(rs: RootSystem, k_simple_roots: Sequence[Sequence[int]]) -> SubgroupPair:
    """Equal-rank pair K in G from roots generating Phi(K)."""
    for r in k_simple_roots:
        if len(r) != rs.rank or not rs.is_root(r):
            raise DomainError(f"{tuple(r)} is not a root of {rs.cartan_type}")
    closed = close_subsystem(rs, k_simple_roots)
    positive = set(rs.positive_roots)
    k_pos = tuple(r for r in rs.positive_roots if r in closed and r in positive)
    k_simple = simple_system(rs, k_pos)
    weyl_k = generate_group((reflection_element(rs, a) for a in k_simple), rs.rank)
    rho_k = tuple(sum(a[i] for a in k_pos) // 2 for i in range(rs.rank))
    xi = _annihilator_projection(rs, k_simple, rs.rho)
    return SubgroupPair(
        g=rs,
        k_positive_roots=k_pos,
        k_simple_roots=k_simple,
        weyl_k=weyl_k,
        rho_g=rs.rho,
        rho_k=rho_k,
        xi=xi,
    )


def dominant_chamber_test(pair: SubgroupPair, lam: Sequence[int], group: str = "K") -> ChamberTest:
    pos = pair.positive_roots_of(group)
    values = [(a, pair.g.coroot_pairing(lam, a)) for a in pos]
    if any(v < 0 for _, v in values):
        return ChamberTest("outside")
    walls = tuple(a for a, v in values if v == 0)
    if walls:
        return ChamberTest("boundary", walls)
    return ChamberTest("interior")


def is_dominant(pair: SubgroupPair, lam: Sequence[int], group: str) -> bool:
    return dominant_chamber_test(pair, lam, group).kind != "outside"


def orbit(elements: Iterable[WeylElement], lam: Sequence[int]) -> set[Weight]:
    return {w(lam) for w in elements}
