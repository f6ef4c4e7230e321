"""Finite groups as dense multiplication tables.

Elements are the integers ``0..N-1`` and the identity is always index 0.
``mul[g, h]`` is the index of ``g*h`` and ``inv[g]`` the index of ``g**-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DegreeMismatch,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotPrime,
)

DEFAULT_CAP = 20000
VALIDATE_MAX_ORDER = 512


class Group:
    """An immutable finite group given by its Cayley table.

    Use :func:`group_from_table` or :func:`group_from_generators` for
    untrusted input; calling the constructor directly skips all checks.
    """

    def __init__(
        self,
        mul: np.ndarray,
        name: str = "group",
        inv: np.ndarray | None = None,
        element_labels: Sequence[str] | None = None,
    ):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        if inv is None:
            inv = _inverse_table(mul)
        else:
            inv = np.ascontiguousarray(inv, dtype=np.int32)
        mul.setflags(write=False)
        inv.setflags(write=False)
        self.mul = mul
        self.inv = inv
        self.order = int(mul.shape[0])
        self.name = name
        self.element_labels = list(element_labels) if element_labels is not None else None
        # cache of derived, pure results (element orders, lifted overgroups, ...)
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def label(self, g: int) -> str:
        if self.element_labels is None:
            return str(g)
        return self.element_labels[g]

    @property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for scalar-heavy loops."""
        rows = self._memo.get("rows")
        if rows is None:
            rows = self._memo["rows"] = self.mul.tolist()
        return rows

    def element_orders(self) -> np.ndarray:
        """Order of every element, computed by iterated multiplication."""
        orders = self._memo.get("orders")
        if orders is not None:
            return orders
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        power = idx.copy()
        k = 1
        while True:
            hit = (power == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            power = self.mul[power, idx]
            k += 1
        orders.setflags(write=False)
        self._memo["orders"] = orders
        return orders

    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def validate(self) -> None:
        """Full check of closure, identity, inverses and associativity."""
        check_table(self.mul, associativity=True)


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..degree-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)


def _inverse_table(mul: np.ndarray) -> np.ndarray:
    rows, cols = np.nonzero(mul == 0)
    inv = np.full(mul.shape[0], -1, dtype=np.int32)
    inv[rows] = cols
    return inv


def check_table(mul: np.ndarray, associativity: bool = True) -> None:
    """Validate a table whose identity is already at index 0."""
    n = mul.shape[0]
    if mul.shape != (n, n) or n == 0:
        raise NotClosed(f"table must be square and nonempty, got shape {mul.shape}")
    if mul.min() < 0 or mul.max() >= n:
        raise NotClosed("table entry out of range")
    idx = np.arange(n)
    if not ((mul[0] == idx).all() and (mul[:, 0] == idx).all()):
        raise NoIdentity("index 0 is not a two-sided identity")
    left = mul == 0
    for g in range(n):
        hs = np.nonzero(left[g])[0]
        if not any(mul[h, g] == 0 for h in hs):
            raise NoInverse(f"element {g} has no two-sided inverse")
    if associativity:
        for a in range(n):
            # (a*b)*c versus a*(b*c) for all b, c at once
            if not (mul[mul[a]] == mul[a][mul]).all():
                raise NotAssociative(f"associativity fails with left factor {a}")


def group_from_table(
    mul: Sequence[Sequence[int]] | np.ndarray,
    order: int | None = None,
    name: str = "table",
    validate: bool | None = None,
    element_labels: Sequence[str] | None = None,
) -> Group:
    """Build a validated group from a raw Cayley table.

    If the identity is not at index 0 it is swapped into place.  The cubic
    associativity check runs when ``validate`` is true, or by default when
    the order is at most 512.
    """
    try:
        table = np.array(mul, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotClosed(f"table is not a rectangular integer array: {exc}") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotClosed(f"table must be square and nonempty, got shape {table.shape}")
    n = table.shape[0]
    if order is not None and order != n:
        raise NotClosed(f"declared order {order} but table has {n} rows")
    if table.min() < 0 or table.max() >= n:
        raise NotClosed("table entry out of range")
    idx = np.arange(n)
    ids = [e for e in range(n) if (table[e] == idx).all() and (table[:, e] == idx).all()]
    if not ids:
        raise NoIdentity("no element acts as a two-sided identity")
    e = ids[0]
    labels = list(element_labels) if element_labels is not None else None
    if e != 0:
        perm = idx.copy()
        perm[[0, e]] = perm[[e, 0]]
        # perm is an involution, so it relabels both indices and entries
        table = perm[table[np.ix_(perm, perm)]]
        if labels is not None:
            labels[0], labels[e] = labels[e], labels[0]
    if validate is None:
        validate = n <= VALIDATE_MAX_ORDER
    check_table(table, associativity=validate)
    return Group(table, name=name, element_labels=labels)


def _perm_codes(perms: np.ndarray) -> np.ndarray:
    degree = perms.shape[1]
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    return perms.astype(np.int64) @ weights


def group_from_permutation_list(perms: Sequence[Sequence[int]], name: str) -> Group:
    """Cayley table of an explicit list of permutations closed under composition.

    ``perms[0]`` must be the identity.  The product ``g*h`` is the
    permutation ``x -> g[h[x]]`` (apply ``h`` first).
    """
    arr = np.array(perms, dtype=np.int64)
    n, degree = arr.shape
    codes = _perm_codes(arr) if degree else np.zeros(n, dtype=np.int64)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    mul = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        composed = arr[g][arr] if degree else arr
        c = _perm_codes(composed) if degree else np.zeros(n, dtype=np.int64)
        pos = np.searchsorted(sorted_codes, c)
        if (pos >= n).any() or (sorted_codes[np.minimum(pos, n - 1)] != c).any():
            raise NotClosed("permutation list is not closed under composition")
        mul[g] = order[pos]
    return Group(mul, name=name)


def group_from_generators(
    degree: int,
    gens: Sequence[Permutation | Sequence[int]],
    cap: int = DEFAULT_CAP,
    name: str | None = None,
) -> Group:
    """Close a set of permutations under composition.

    Elements are numbered in breadth-first discovery order starting from the
    identity.
    """
    perms = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    for g in perms:
        if g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree}, expected {degree}")
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in perms:
            y = tuple(x[i] for i in g.images)  # x*g: apply g first
            if y not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"closure exceeds element cap {cap}")
                seen[y] = len(elements)
                elements.append(y)
    if name is None:
        name = f"perm:{degree}"
    return group_from_permutation_list(elements, name=name)


def element_order(G: Group, g: int) -> int:
    """Smallest ``k >= 1`` with ``g**k`` the identity."""
    if not 0 <= g < G.order:
        raise IndexError(f"element {g} out of range for order {G.order}")
    cached = G._memo.get("orders")
    if cached is not None:
        return int(cached[g])
    row = G.rows[g]
    k, x = 1, g
    while x != 0:
        x = row[x]
        k += 1
    return k


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def p_valuation(N: int, p: int) -> int:
    """Largest ``n`` with ``p**n`` dividing ``N``."""
    require_prime(p)
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    n = 0
    while N % p == 0:
        N //= p
        n += 1
    return n


def prime_divisors(N: int) -> list[int]:
    out = []
    f = 2
    while f * f <= N:
        if N % f == 0:
            out.append(f)
            while N % f == 0:
                N //= f
        f += 1
    if N > 1:
        out.append(N)
    return out
