"""Brute-force ground truth, independent of normalizers and quotients.

Subgroups are found as closures of small generating sets and chains are
counted by walking containment between the resulting level sets.  Nothing
here is memoized or shares code with the lifting pipeline beyond
:func:`~pchains.subgroup.closure`.
"""

from __future__ import annotations

from .errors import BaseOrderMismatch, ChainNotSupported, OrderDoesNotDivide
from .group import Group
from .psub import ChainCount, ChainSpec
from .subgroup import Subgroup, closure, trivial


def _prime_power_exponent(m: int) -> int | None:
    for p in range(2, m + 1):
        if m % p == 0:
            i = 0
            while m % p == 0:
                m //= p
                i += 1
            return i if m == 1 else None
    return 0


def default_max_gens(m: int) -> int:
    """``i`` for ``m = p**i``; otherwise ``floor(log2 m)``, which bounds any minimal generating set."""
    i = _prime_power_exponent(m)
    if i is not None:
        return max(i, 1)
    return max(m.bit_length() - 1, 1)


def brute_force_subgroups_of_order(G: Group, m: int, max_gens: int | None = None) -> list[Subgroup]:
    """Subgroups of order ``m`` that are closures of at most ``max_gens`` elements.

    Generating sets are increasing index sequences; an element already in
    the running closure is skipped, as is any closure whose order does not
    divide ``m``.
    """
    if m < 1 or G.order % m:
        raise OrderDoesNotDivide(f"{m} does not divide {G.order}")
    if max_gens is None:
        max_gens = default_max_gens(m)
    if m == 1:
        return [trivial(G)]
    orders = G.element_orders()
    candidates = [g for g in range(1, G.order) if m % int(orders[g]) == 0]
    found: set[tuple[int, ...]] = set()

    def extend(gens: list[int], current: Subgroup, start: int) -> None:
        if current.order == m:
            found.add(current.elems)
            return
        if len(gens) == max_gens:
            return
        for pos in range(start, len(candidates)):
            g = candidates[pos]
            if g in current:
                continue
            H = closure(G, gens + [g])
            if m % H.order:
                continue
            extend(gens + [g], H, pos + 1)

    extend([], trivial(G), 0)
    return [Subgroup(G, e) for e in sorted(found)]


def brute_force_levels(G: Group, p: int, exponents) -> dict[int, list[Subgroup]]:
    return {b: brute_force_subgroups_of_order(G, p**b) for b in exponents}


def brute_force_chain_count(G: Group, P_base: Subgroup, spec: ChainSpec,
                            levels: dict[int, list[Subgroup]] | None = None) -> ChainCount:
    """Count chain tuples by explicit enumeration over oracle level sets.

    ``levels`` may carry level sets already produced by
    :func:`brute_force_levels` for the same group and prime.
    """
    p = spec.prime_p
    if P_base.order != p ** spec.exponents[0]:
        raise BaseOrderMismatch(
            f"base subgroup has order {P_base.order}, expected {p}^{spec.exponents[0]}")
    if G.order % p ** spec.exponents[-1]:
        raise ChainNotSupported(f"{p}^{spec.exponents[-1]} does not divide {G.order}")
    if levels is None:
        levels = brute_force_levels(G, p, spec.exponents[1:])
    layers = [levels[b] for b in spec.exponents[1:]]

    def walk(lower: Subgroup, depth: int) -> int:
        if depth == len(layers):
            return 1
        return sum(walk(Q, depth + 1) for Q in layers[depth] if lower.issubset(Q))

    exact = walk(P_base, 0)
    return ChainCount(exact, exact % p)
