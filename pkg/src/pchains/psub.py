"""Counting p-subgroups and chains of p-subgroups.

Order-p subgroups come from elements of order p.  Every larger
p-subgroup is reached by lifting: the subgroups of order ``p*|P|``
containing ``P`` are exactly the pullbacks of the order-p subgroups of
``N(P)/P``.  Chain counts are depth-first sums over these lifts.

Every function takes an *ambient* that is either the whole group or a
subgroup of it; lifting then happens inside that subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BaseOrderMismatch,
    ChainNotSupported,
    InvalidChainSpec,
    NextPowerDoesNotDivide,
    NotContained,
    NotPPower,
    PrimeDoesNotDivideOrder,
)
from .group import Group, p_valuation, require_prime
from .quotient import pullback, quotient_group
from .subgroup import Ambient, Subgroup, normalizer, trivial


@dataclass(frozen=True)
class ChainSpec:
    """Prime and strictly increasing exponents ``b0 < b1 < ... < br``."""

    prime_p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.prime_p)
        exps = tuple(int(b) for b in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not exps:
            raise InvalidChainSpec("a chain needs at least the base exponent")
        if exps[0] < 0:
            raise InvalidChainSpec("exponents must be nonnegative")
        if any(a >= b for a, b in zip(exps, exps[1:])):
            raise InvalidChainSpec(f"exponents must strictly increase: {list(exps)}")

    @property
    def r(self) -> int:
        return len(self.exponents) - 1


@dataclass(frozen=True)
class ChainCount:
    exact: int
    residue_mod_p: int


def _ambient(P: Subgroup, ambient: Ambient) -> tuple[Group, Subgroup | None, int]:
    """Parent group, restricting subgroup (None for the whole group), ambient order."""
    G = P.parent
    if isinstance(ambient, Group):
        if ambient is not G:
            raise NotContained("subgroup belongs to a different group")
        return G, None, G.order
    if ambient.parent is not G:
        raise NotContained("subgroup belongs to a different group")
    if ambient.order == G.order:
        return G, None, G.order
    if not P.issubset(ambient):
        raise NotContained("subgroup is not contained in the ambient subgroup")
    return G, ambient, ambient.order


def _memo(G: Group, *key) -> dict:
    box = G._memo.get(key)
    if box is None:
        box = G._memo.setdefault(key, {})
    return box


def log_p(m: int, p: int) -> int:
    """Exponent ``i`` with ``m == p**i``; raises NotPPower otherwise."""
    i = 0
    while m % p == 0:
        m //= p
        i += 1
    if m != 1:
        raise NotPPower(f"order is not a power of {p}")
    return i


def count_elements_of_order_p(G: Group, p: int) -> int:
    require_prime(p)
    return int((G.element_orders() == p).sum())


def tuple_count_T(G: Group, p: int) -> int:
    """Number of p-tuples of elements whose product is the identity.

    Iterated convolution of the all-ones function: ``f[x]`` counts the
    k-tuples with product ``x`` and one more factor ``h`` sends it to
    ``sum_h f[x * h^-1]``.
    """
    require_prime(p)
    shift = G.mul[:, G.inv]
    f = np.ones(G.order, dtype=object)
    for _ in range(p - 1):
        f = f[shift].sum(axis=1)
    return int(f[0])


def _order_p_subgroups(G: Group, p: int) -> list[Subgroup]:
    orders = G.element_orders()
    rows = G.rows
    found = set()
    for x in np.nonzero(orders == p)[0].tolist():
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = rows[y][x]
        found.add(tuple(sorted(powers)))
    return [Subgroup(G, e) for e in sorted(found)]


def subgroups_of_order_p(G: Group, p: int) -> list[Subgroup]:
    """All order-p subgroups, sorted by canonical form."""
    require_prime(p)
    if G.order % p:
        raise PrimeDoesNotDivideOrder(f"{p} does not divide {G.order}")
    return _order_p_subgroups(G, p)


def overgroups_index_p(ambient: Ambient, P: Subgroup, p: int) -> list[Subgroup]:
    """Subgroups of order ``p*|P|`` containing the p-subgroup ``P``.

    Each one is the pullback of an order-p subgroup of ``N(P)/P``, where
    the normalizer is taken inside the ambient.
    """
    require_prime(p)
    G, within, amb_order = _ambient(P, ambient)
    i = log_p(P.order, p)
    if amb_order % p ** (i + 1):
        raise NextPowerDoesNotDivide(f"{p}^{i + 1} does not divide {amb_order}")
    memo = _memo(G, "over", p, within.elems if within is not None else None)
    hit = memo.get(P.elems)
    if hit is not None:
        return hit
    N = normalizer(G, P, within)
    Q, cm = quotient_group(N, P, check=False)
    result = sorted(pullback(cm, Qbar) for Qbar in _order_p_subgroups(Q, p))
    memo[P.elems] = result
    return result


def subgroups_of_order_containing(ambient: Ambient, P: Subgroup, target_exp: int,
                                  p: int) -> list[Subgroup]:
    """Subgroups of order ``p**target_exp`` containing ``P``, lifted layer by layer."""
    require_prime(p)
    G, within, amb_order = _ambient(P, ambient)
    j = log_p(P.order, p)
    if target_exp < j:
        raise BaseOrderMismatch(f"target exponent {target_exp} is below the base exponent {j}")
    if amb_order % p**target_exp:
        raise NextPowerDoesNotDivide(f"{p}^{target_exp} does not divide {amb_order}")
    memo = _memo(G, "contain", p, within.elems if within is not None else None)
    key = (P.elems, target_exp)
    hit = memo.get(key)
    if hit is not None:
        return hit
    amb = within if within is not None else G
    layer = [P]
    for _ in range(target_exp - j):
        nxt: set[Subgroup] = set()
        for X in layer:
            nxt.update(overgroups_index_p(amb, X, p))
        layer = sorted(nxt)
    memo[key] = layer
    return layer


def p_subgroup_levels(ambient: Ambient, p: int) -> list[list[Subgroup]]:
    """``levels[i]`` holds every subgroup of order ``p**i``, lifted from the trivial group."""
    G = ambient if isinstance(ambient, Group) else ambient.parent
    amb_order = ambient.order
    n = p_valuation(amb_order, p)
    levels = [[trivial(G)]]
    for i in range(n):
        nxt: set[Subgroup] = set()
        for X in levels[-1]:
            nxt.update(overgroups_index_p(ambient, X, p))
        levels.append(sorted(nxt))
    return levels


def _check_chain(ambient: Ambient, P_base: Subgroup, spec: ChainSpec):
    p = spec.prime_p
    G, within, amb_order = _ambient(P_base, ambient)
    if P_base.order != p ** spec.exponents[0]:
        raise BaseOrderMismatch(
            f"base subgroup has order {P_base.order}, expected {p}^{spec.exponents[0]}")
    if amb_order % p ** spec.exponents[-1]:
        raise ChainNotSupported(f"{p}^{spec.exponents[-1]} does not divide {amb_order}")
    return G, within


def chain_count(ambient: Ambient, P_base: Subgroup, spec: ChainSpec) -> ChainCount:
    """Number of tuples ``P_base < P_b1 < ... < P_br`` with ``|P_bi| = p**bi``."""
    G, within = _check_chain(ambient, P_base, spec)
    p = spec.prime_p
    amb = within if within is not None else G
    memo = _memo(G, "chain", p, within.elems if within is not None else None)

    def count(P: Subgroup, suffix: tuple[int, ...]) -> tuple[int, int]:
        if not suffix:
            return 1, 1 % p
        key = (P.elems, suffix)
        hit = memo.get(key)
        if hit is not None:
            return hit
        exact = residue = 0
        for Q in subgroups_of_order_containing(amb, P, suffix[0], p):
            e, r = count(Q, suffix[1:])
            exact += e
            residue = (residue + r) % p
        memo[key] = (exact, residue)
        return exact, residue

    exact, residue = count(P_base, spec.exponents[1:])
    if exact % p != residue:
        raise ArithmeticError("incremental residue disagrees with exact count")
    return ChainCount(exact, residue)


def full_chain_count(ambient: Ambient, P_base: Subgroup, p: int) -> ChainCount:
    """Number of complete chains from ``P_base`` up to a Sylow p-subgroup of the ambient."""
    require_prime(p)
    G, within, amb_order = _ambient(P_base, ambient)
    memo = _memo(G, "full", p, within.elems if within is not None else None)
    hit = memo.get(P_base.elems)
    if hit is not None:
        return hit
    j = log_p(P_base.order, p)
    n = p_valuation(amb_order, p)
    if j > n:
        raise ChainNotSupported(f"{p}^{j} does not divide {amb_order}")
    result = chain_count(ambient, P_base, ChainSpec(p, tuple(range(j, n + 1))))
    memo[P_base.elems] = result
    return result


def enumerate_chains(ambient: Ambient, P_base: Subgroup,
                     spec: ChainSpec) -> Iterator[tuple[Subgroup, ...]]:
    """Yield every tuple ``(P_b1, ..., P_br)`` counted by :func:`chain_count`."""
    G, within = _check_chain(ambient, P_base, spec)
    amb = within if within is not None else G
    p = spec.prime_p

    def walk(P: Subgroup, suffix: Sequence[int], prefix: tuple[Subgroup, ...]):
        if not suffix:
            yield prefix
            return
        for Q in subgroups_of_order_containing(amb, P, suffix[0], p):
            yield from walk(Q, suffix[1:], prefix + (Q,))

    yield from walk(P_base, spec.exponents[1:], ())


def refinement_sides(G: Group, P_base: Subgroup, spec: ChainSpec) -> tuple[int, int]:
    """Both sides of the exact refinement identity.

    Left: complete chains from ``P_base`` to a Sylow subgroup of ``G``.
    Right: sum over the tuples of ``spec`` of the product of the numbers of
    complete refinements inside each interval ``[P_bi, P_b(i+1)]`` and
    above the top term.
    """
    p = spec.prime_p
    lhs = full_chain_count(G, P_base, p).exact
    rhs = 0
    for tup in enumerate_chains(G, P_base, spec):
        term = 1
        lower = P_base
        for upper in tup:
            term *= full_chain_count(upper, lower, p).exact
            lower = upper
        term *= full_chain_count(G, lower, p).exact
        rhs += term
    return lhs, rhs


def refinement_identity_check(G: Group, P_base: Subgroup, spec: ChainSpec) -> bool:
    lhs, rhs = refinement_sides(G, P_base, spec)
    return lhs == rhs


def default_base(G: Group, p: int, b0: int) -> Subgroup:
    """First subgroup of order ``p**b0`` in lifting order from the trivial subgroup."""
    level = subgroups_of_order_containing(G, trivial(G), b0, p)
    return level[0]
