"""Subgroups as sorted element-index tuples, with closure and normalizers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import NotContained
from .group import Group


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` in canonical form (strictly increasing indices).

    Two subgroups are equal iff they share a parent and their element
    tuples are identical.  The constructor trusts its input; use
    :func:`closure` to build one from generators.
    """

    parent: Group = field(repr=False)
    elems: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __lt__(self, other: "Subgroup") -> bool:
        return self.elems < other.elems

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, g: int) -> bool:
        return g in self.elem_set

    @property
    def order(self) -> int:
        return len(self.elems)

    @cached_property
    def elem_set(self) -> frozenset[int]:
        return frozenset(self.elems)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elems, dtype=np.int64)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.array] = True
        return m

    def issubset(self, other: "Subgroup") -> bool:
        return self.elem_set <= other.elem_set

    def is_valid(self) -> bool:
        """Check identity, closure under products and inverses."""
        if not self.elems or self.elems[0] != 0:
            return False
        G, a = self.parent, self.array
        return bool(self.mask[G.mul[np.ix_(a, a)]].all() and self.mask[G.inv[a]].all())


Ambient = Union[Group, Subgroup]


def whole(G: Group) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial(G: Group) -> Subgroup:
    return Subgroup(G, (0,))


def as_subgroup(X: Ambient) -> Subgroup:
    return whole(X) if isinstance(X, Group) else X


def closure(G: Group, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``gens``.

    Breadth-first right multiplication by the generators starting at the
    identity; in a finite group this already yields inverses.
    """
    gens = sorted({int(g) for g in gens if g != 0})
    for g in gens:
        if not 0 <= g < G.order:
            raise IndexError(f"element {g} out of range for order {G.order}")
    if not gens:
        return trivial(G)
    rows = G.rows
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(seen)))


def join(H: Subgroup, g: int) -> Subgroup:
    """Closure of ``H`` together with one extra element."""
    if g in H:
        return H
    return closure(H.parent, H.elems + (g,))


def conjugate_subgroup(G: Group, H: Subgroup, g: int) -> Subgroup:
    """``g H g^-1`` in canonical form."""
    conj = G.mul[G.mul[g, H.array], G.inv[g]]
    return Subgroup(G, tuple(sorted(int(x) for x in conj)))


def normalizer(G: Group, H: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """``{g : g H g^-1 = H}``, optionally restricted to ``within``.

    Brute force over every candidate conjugator, vectorised over H.
    """
    cands = np.arange(G.order) if within is None else within.array
    h = H.array
    conj = G.mul[G.mul[cands[:, None], h[None, :]], G.inv[cands][:, None]]
    # conjugation is injective, so landing inside H means equality
    keep = H.mask[conj].all(axis=1)
    return Subgroup(G, tuple(int(x) for x in cands[keep]))


def index(ambient: Ambient, H: Subgroup) -> int:
    """``[ambient : H]``."""
    K = as_subgroup(ambient)
    if not H.issubset(K):
        raise NotContained("subgroup is not contained in the ambient group")
    return K.order // H.order


def is_normal_in(H: Subgroup, K: Subgroup) -> bool:
    """True iff ``k H k^-1 = H`` for every ``k`` in ``K``."""
    if not H.issubset(K):
        raise NotContained("H is not a subset of K")
    G = H.parent
    k = K.array
    conj = G.mul[G.mul[k[:, None], H.array[None, :]], G.inv[k][:, None]]
    return bool(H.mask[conj].all())
