"""Quotients K/H by a normal subgroup, and the pullback back into K."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotASubgroupOfQuotient, NotContained, NotNormal
from .group import Group
from .subgroup import Subgroup, is_normal_in


@dataclass(frozen=True, eq=False)
class CosetMap:
    """Projection data from ``subgroup_K`` onto the quotient group.

    ``coset_of`` has one entry per element of the ambient group; it is -1
    outside K.  ``representatives[c]`` is the smallest index in coset c.
    """

    ambient: Group = field(repr=False)
    subgroup_K: Subgroup = field(repr=False)
    kernel_H: Subgroup = field(repr=False)
    coset_of: np.ndarray = field(repr=False)
    representatives: tuple[int, ...]
    quotient: Group = field(repr=False, compare=False)

    @property
    def num_cosets(self) -> int:
        return len(self.representatives)


def quotient_group(K: Subgroup, H: Subgroup, check: bool = True) -> tuple[Group, CosetMap]:
    """Build ``K/H``; cosets are numbered by increasing minimal representative."""
    G = K.parent
    if check:
        if not H.issubset(K):
            raise NotContained("kernel is not contained in K")
        if not is_normal_in(H, K):
            raise NotNormal("kernel is not normal in K")
    k = K.array
    # the minimum of k*H identifies the coset kH
    mins = G.mul[k[:, None], H.array[None, :]].min(axis=1)
    reps, which = np.unique(mins, return_inverse=True)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    coset_of[k] = which.reshape(-1)
    table = coset_of[G.mul[reps[:, None], reps[None, :]]]
    name = f"{G.name}[{K.order}]/[{H.order}]"
    Q = Group(table, name=name)
    coset_of.setflags(write=False)
    cm = CosetMap(
        ambient=G,
        subgroup_K=K,
        kernel_H=H,
        coset_of=coset_of,
        representatives=tuple(int(r) for r in reps),
        quotient=Q,
    )
    return Q, cm


def pullback(cm: CosetMap, Qbar: Subgroup) -> Subgroup:
    """All elements of K whose coset lies in ``Qbar``."""
    if Qbar.parent is not cm.quotient:
        raise NotASubgroupOfQuotient("subgroup does not belong to this quotient")
    k = cm.subgroup_K.array
    keep = Qbar.mask[cm.coset_of[k]]
    return Subgroup(cm.ambient, tuple(int(x) for x in k[keep]))


def project(cm: CosetMap, Q: Subgroup) -> Subgroup:
    """Image of a subgroup of K in the quotient."""
    if not Q.issubset(cm.subgroup_K):
        raise NotContained("subgroup is not contained in K")
    cosets = np.unique(cm.coset_of[Q.array])
    return Subgroup(cm.quotient, tuple(int(c) for c in cosets))
