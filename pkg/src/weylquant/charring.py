"""Formal characters: sparse Laurent polynomials on the doubled weight lattice."""

from __future__ import annotations

import heapq
from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InexactDivisionError, NotAKCharacterError
from .rootsys import (
    RootSystem,
    SubgroupPair,
    Weight,
    WeylElement,
    add,
    dominant_conjugate,
    generate_group,
    neg,
    reflection_element,
    sub,
)


class FormalCharacter:
    """Finite map weight -> nonzero integer, with ring operations.

    Instances are treated as immutable values.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], int] | Iterable = ()):
        acc: dict[Weight, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, v in items:
            k = tuple(k)
            acc[k] = acc.get(k, 0) + v
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff: int = 1) -> "FormalCharacter":
        return cls({tuple(weight): coeff})

    @classmethod
    def one(cls, rank: int) -> "FormalCharacter":
        return cls.monomial((0,) * rank)

    @property
    def terms(self) -> dict[Weight, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> set[Weight]:
        return set(self._terms)

    def coefficient(self, weight: Sequence[int]) -> int:
        return self._terms.get(tuple(weight), 0)

    def total(self) -> int:
        return sum(self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return FormalCharacter(out)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def __mul__(self, other) -> "FormalCharacter":
        if isinstance(other, int):
            return FormalCharacter({k: other * v for k, v in self._terms.items()})
        out: dict[Weight, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = add(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return FormalCharacter(out)

    __rmul__ = __mul__

    def shift(self, weight: Sequence[int]) -> "FormalCharacter":
        """Multiply by e^weight."""
        return FormalCharacter({add(k, weight): v for k, v in self._terms.items()})

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self._terms.items()))
        return f"FormalCharacter({{{inner}}})"


def char_add(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    return a + b


def char_mul(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    return a * b


def one_minus(gamma: Sequence[int]) -> FormalCharacter:
    """1 - e^{-gamma}."""
    rank = len(gamma)
    return FormalCharacter({(0,) * rank: 1, neg(gamma): -1})


def half_difference(gamma: Sequence[int]) -> FormalCharacter:
    """e^{gamma/2} - e^{-gamma/2}; in doubled coordinates gamma/2 is exact."""
    h = tuple(g // 2 for g in gamma)
    if any(g % 2 for g in gamma):
        raise DomainError(f"{tuple(gamma)} is not an integral weight")
    return FormalCharacter({h: 1, neg(h): -1})


def product_of(factors: Iterable[FormalCharacter], rank: int) -> FormalCharacter:
    out = FormalCharacter.one(rank)
    for f in factors:
        out = out * f
    return out


def weyl_action(w: WeylElement, x: FormalCharacter) -> FormalCharacter:
    return FormalCharacter({w(k): v for k, v in x.items()})


def _int_functional(functional: Sequence | None, rank: int) -> tuple[int, ...]:
    if functional is None:
        return (0,) * rank
    fr = [Fraction(f) for f in functional]
    den = 1
    for f in fr:
        den = den * f.denominator // _gcd(den, f.denominator)
    return tuple(int(f * den) for f in fr)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def exact_divide(
    num: FormalCharacter,
    den: FormalCharacter,
    order_functional: Sequence | None = None,
    max_steps: int = 2_000_000,
) -> FormalCharacter:
    """Quotient q with q * den == num, by leading-term elimination.

    Terms are ordered by (pairing with ``order_functional``, coordinates).  A
    quotient term below the lowest possible one, or more than ``max_steps``
    eliminations, means the division is not exact.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero character")
    if num.is_zero():
        return FormalCharacter()
    rank = len(next(iter(den.items()))[0])
    f = _int_functional(order_functional, rank)

    def key(x):
        return (sum(a * b for a, b in zip(x, f)), x)

    den_terms = sorted(den.items(), key=lambda kv: key(kv[0]), reverse=True)
    lead, lead_c = den_terms[0]
    rest = den_terms[1:]
    floor_key = key(sub(min(num.support(), key=key), min(den.support(), key=key)))

    rem = dict(num.items())
    heap = [(_neg_key(key(x)), x) for x in rem]
    heapq.heapify(heap)
    quotient: dict[Weight, int] = {}
    steps = 0
    while rem:
        _, x = heapq.heappop(heap)
        c = rem.get(x)
        if not c:
            continue
        q, r = divmod(c, lead_c)
        t = sub(x, lead)
        if r or key(t) < floor_key:
            raise InexactDivisionError("division leaves a nonzero remainder")
        steps += 1
        if steps > max_steps:
            raise InexactDivisionError("division did not terminate within the step bound")
        quotient[t] = quotient.get(t, 0) + q
        del rem[x]
        for y, d in rest:
            z = add(t, y)
            v = rem.get(z, 0) - q * d
            if v:
                if z not in rem:
                    heapq.heappush(heap, (_neg_key(key(z)), z))
                rem[z] = v
            else:
                rem.pop(z, None)
    return FormalCharacter(quotient)


def _neg_key(k):
    value, coords = k
    return (-value, tuple(-c for c in coords))


def divide_by_factors(
    num: FormalCharacter, factors: Iterable[FormalCharacter], order_functional=None
) -> FormalCharacter:
    """Divide successively by each factor; exact iff num is divisible by their product."""
    out = num
    for fac in factors:
        out = exact_divide(out, fac, order_functional)
    return out


# ---------------------------------------------------------------------------
# Irreducible characters


def _check_label(pair: SubgroupPair, lam: Sequence[int], group: str, dominant: bool) -> None:
    if len(lam) != pair.rank:
        raise DomainError(f"weight {tuple(lam)} has wrong length for rank {pair.rank}")
    rs = pair.g
    for a in pair.positive_roots_of(group):
        v = rs.coroot_pairing(lam, a)
        if v.denominator != 1:
            raise DomainError(f"{tuple(lam)} is not integral for the roots of {group}")
        if dominant and v < 0:
            raise DomainError(f"{tuple(lam)} is not dominant for {group}")


def alternating_sum(pair: SubgroupPair, x: Sequence[int], group: str) -> FormalCharacter:
    """sum_w sign(w) e^{w x} over the Weyl group of ``group``."""
    return FormalCharacter((w(x), w.sign) for w in pair.weyl_of(group))


def weyl_character(pair: SubgroupPair, lam: Sequence[int], group: str = "G") -> FormalCharacter:
    """Character of the irreducible representation of highest weight lam.

    Computed as e^{-rho} sum_w sign(w) e^{w(lam + rho)} divided exactly by
    prod_{alpha > 0} (1 - e^{-alpha}).
    """
    lam = tuple(lam)
    group = group.upper()
    cache = pair._cache.setdefault(("weyl", group), {})
    if lam in cache:
        return cache[lam]
    _check_label(pair, lam, group, dominant=True)
    rho = pair.rho_of(group)
    num = alternating_sum(pair, add(lam, rho), group).shift(neg(rho))
    chi = divide_by_factors(
        num, (one_minus(a) for a in pair.positive_roots_of(group)), pair.g.rho_functional
    )
    cache[lam] = chi
    return chi


def character_of_label(pair: SubgroupPair, label: Sequence[int], group: str = "K") -> FormalCharacter:
    """Alternating-sum extension of the irreducible character to any label.

    Zero when label + rho is singular, otherwise sign(w) times the character of
    the dominant weight w(label + rho) - rho.
    """
    _check_label(pair, label, group, dominant=False)
    rho = pair.rho_of(group)
    x, sign, on_wall = dominant_conjugate(pair.g, pair.simple_roots_of(group), add(label, rho))
    if on_wall:
        return FormalCharacter()
    chi = weyl_character(pair, sub(x, rho), group)
    return chi if sign == 1 else -chi


def weyl_dimension(pair: SubgroupPair, lam: Sequence[int], group: str = "G") -> int:
    rs = pair.g
    rho = pair.rho_of(group)
    out = Fraction(1)
    for a in pair.positive_roots_of(group):
        out *= Fraction(rs.form(add(lam, rho), a), rs.form(rho, a))
    assert out.denominator == 1
    return int(out)


def freudenthal_multiplicities(
    pair: SubgroupPair, lam: Sequence[int], group: str = "G"
) -> FormalCharacter:
    """Weight multiplicities of the irreducible of highest weight lam, by Freudenthal's recursion."""
    lam = tuple(lam)
    _check_label(pair, lam, group, dominant=True)
    rs = pair.g
    pos = pair.positive_roots_of(group)
    simple = pair.simple_roots_of(group)
    rho = pair.rho_of(group)

    def dom(x):
        return dominant_conjugate(rs, simple, x)[0]

    # Dominant weights below lam are connected to lam by single positive-root steps.
    depth = {lam: 0}
    order = [lam]
    i = 0
    while i < len(order):
        mu = order[i]
        i += 1
        for a in pos:
            nu = sub(mu, a)
            if nu not in depth and all(rs.coroot_pairing(nu, s) >= 0 for s in simple):
                depth[nu] = None
                order.append(nu)
    height_fn = rs.rho_functional
    order.sort(key=lambda x: -sum(p * q for p, q in zip(x, height_fn)))

    norm_top = rs.form(add(lam, rho), add(lam, rho))
    mult: dict[Weight, int] = {lam: 1}
    for mu in order[1:]:
        total = 0
        for a in pos:
            k = 1
            while True:
                nu = add(mu, tuple(k * c for c in a))
                m = mult.get(dom(nu), 0)
                if not m:
                    break
                total += m * rs.form(nu, a)
                k += 1
        denom = norm_top - rs.form(add(mu, rho), add(mu, rho))
        value = Fraction(2 * total, denom)
        assert value.denominator == 1, "Freudenthal recursion produced a fraction"
        if value:
            mult[mu] = int(value)

    weyl = pair.weyl_of(group)
    out: dict[Weight, int] = {}
    for mu, m in mult.items():
        for x in {w(mu) for w in weyl}:
            out[x] = m
    return FormalCharacter(out)


def is_invariant(pair: SubgroupPair, x: FormalCharacter, group: str = "K") -> bool:
    for a in pair.simple_roots_of(group):
        s = reflection_element(pair.g, a)
        if weyl_action(s, x) != x:
            return False
    return True


def decompose_into_k(
    pair: SubgroupPair, x: FormalCharacter, max_steps: int = 1_000_000
) -> dict[Weight, int]:
    """Multiplicities of irreducible K-characters in a W(K)-invariant character."""
    if not is_invariant(pair, x, "K"):
        raise NotAKCharacterError("character is not W(K)-invariant")
    f = pair.k_order_functional
    rs = pair.g
    rem = x
    out: dict[Weight, int] = {}
    steps = 0
    while rem:
        steps += 1
        if steps > max_steps:
            raise NotAKCharacterError("decomposition did not terminate")
        top = max(rem.support(), key=lambda y: (sum(a * b for a, b in zip(y, f)), y))
        if any(rs.coroot_pairing(top, a) < 0 for a in pair.k_positive_roots):
            raise NotAKCharacterError(f"maximal weight {top} is not K-dominant")
        c = rem.coefficient(top)
        out[top] = out.get(top, 0) + c
        rem = rem - weyl_character(pair, top, "K") * c
    return {k: v for k, v in out.items() if v}


def recompose(pair: SubgroupPair, decomposition: Mapping[Weight, int]) -> FormalCharacter:
    out = FormalCharacter()
    for lam, m in decomposition.items():
        out = out + weyl_character(pair, lam, "K") * m
    return out


def denominator_identity_check(pair: SubgroupPair, walls: Sequence[Weight]) -> bool:
    """Alternating sum over the reflection group of ``walls`` against the half-root product."""
    rs = pair.g
    walls = [tuple(a) for a in walls]
    rank = pair.rank
    group = generate_group((reflection_element(rs, a) for a in walls), rank)
    rho_a = tuple(sum(a[i] for a in walls) // 2 for i in range(rank))
    wall_set = set(walls)
    lhs = FormalCharacter()
    for w in group:
        s_w = sum(1 for a in walls if w(a) not in wall_set)
        lhs = lhs + FormalCharacter.monomial(w(rho_a), (-1) ** s_w)
    rhs = product_of((half_difference(a) for a in walls), rank)
    return lhs == rhs


def expand_one_minus_product(gammas: Iterable[Sequence[int]], rank: int) -> FormalCharacter:
    """prod (1 - e^{-gamma}) as a character."""
    return product_of((one_minus(g) for g in gammas), rank)


def expand_half_product(gammas: Iterable[Sequence[int]], rank: int) -> FormalCharacter:
    """prod (e^{gamma/2} - e^{-gamma/2}) as a character."""
    return product_of((half_difference(g) for g in gammas), rank)


def term_key(rs: RootSystem):
    """Sort key for serialization: pairing with rho_G, then coordinates."""
    f = rs.rho_functional

    def key(x):
        return (sum(a * b for a, b in zip(x, f)), tuple(x))

    return key


def sorted_terms(rs: RootSystem, x: FormalCharacter | Mapping) -> list[tuple[Weight, int]]:
    items = x.items()
    return sorted(items, key=lambda kv: term_key(rs)(kv[0]), reverse=True)


def multiset_union(*multisets: Counter) -> Counter:
    out: Counter = Counter()
    for m in multisets:
        out |= m
    return out
