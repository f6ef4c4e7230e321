"""Built-in group families, the group-file reader, and group-spec parsing.

Spec strings::

    cyclic:n        cyclic group of order n
    dihedral:n      symmetries of the n-gon, order 2n (n >= 3)
    sym:k, alt:k    symmetric / alternating group on k <= 7 points
    q8              quaternion group
    elem:p,k        elementary abelian group of order p**k
    prod:A+B        direct product, (a, b) -> a*|B| + b
    file:path       group file (see :func:`load_group_file`)
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .errors import GroupFileError, NotClosed, ParameterOutOfRange, UnknownSpec
from .group import (
    DEFAULT_CAP,
    Group,
    Permutation,
    group_from_generators,
    group_from_permutation_list,
    group_from_table,
    is_prime,
)

MAX_DEGREE = 7

FAMILIES = [
    ("cyclic:n", "cyclic group of order n", "n >= 1"),
    ("dihedral:n", "dihedral group of the n-gon, order 2n", "n >= 3"),
    ("sym:k", "symmetric group on k points, order k!", "1 <= k <= 7"),
    ("alt:k", "alternating group on k points, order k!/2", "1 <= k <= 7"),
    ("q8", "quaternion group, order 8", ""),
    ("elem:p,k", "elementary abelian group, order p^k", "p prime, k >= 1"),
    ("prod:A+B", "direct product of two specs, order |A||B|", ""),
]


def cyclic(n: int, cap: int = DEFAULT_CAP) -> Group:
    if n < 1:
        raise ParameterOutOfRange(f"cyclic:n needs n >= 1, got {n}")
    _check_cap(n, cap)
    idx = np.arange(n)
    return Group((idx[:, None] + idx[None, :]) % n, name=f"cyclic:{n}")


def dihedral(n: int, cap: int = DEFAULT_CAP) -> Group:
    """r^a s^e is stored at index a + n*e, with s r s = r^-1."""
    if n < 3:
        raise ParameterOutOfRange(f"dihedral:n needs n >= 3, got {n}")
    _check_cap(2 * n, cap)
    a = np.tile(np.arange(n), 2)
    e = np.repeat([0, 1], n)
    sign = np.where(e == 1, -1, 1)
    rot = (a[:, None] + sign[:, None] * a[None, :]) % n
    ref = (e[:, None] + e[None, :]) % 2
    return Group(rot + n * ref, name=f"dihedral:{n}")


def _parity(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    transpositions = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        transpositions += length - 1
    return transpositions % 2


def symmetric(k: int, cap: int = DEFAULT_CAP) -> Group:
    if not 1 <= k <= MAX_DEGREE:
        raise ParameterOutOfRange(f"sym:k needs 1 <= k <= {MAX_DEGREE}, got {k}")
    perms = list(itertools.permutations(range(k)))
    _check_cap(len(perms), cap)
    return group_from_permutation_list(perms, name=f"sym:{k}")


def alternating(k: int, cap: int = DEFAULT_CAP) -> Group:
    if not 1 <= k <= MAX_DEGREE:
        raise ParameterOutOfRange(f"alt:k needs 1 <= k <= {MAX_DEGREE}, got {k}")
    perms = [p for p in itertools.permutations(range(k)) if _parity(p) == 0]
    _check_cap(len(perms), cap)
    return group_from_permutation_list(perms, name=f"alt:{k}")


_UNIT_PRODUCT = {
    # (x, y) -> (sign, z) with x*y = sign*z over units 1, i, j, k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion() -> Group:
    """Elements 1, i, j, k, -1, -i, -j, -k at indices 0..7."""
    names = ["1", "i", "j", "k"]
    labels = names + ["-" + s for s in names]
    mul = np.empty((8, 8), dtype=np.int32)
    for a in range(8):
        for b in range(8):
            sign, unit = _UNIT_PRODUCT[a % 4, b % 4]
            if (a >= 4) != (b >= 4):
                sign = -sign
            mul[a, b] = unit + (4 if sign < 0 else 0)
    return Group(mul, name="q8", element_labels=labels)


def elementary_abelian(p: int, k: int, cap: int = DEFAULT_CAP) -> Group:
    """Vectors of (Z/p)^k indexed by their base-p digits, most significant first."""
    if not is_prime(p):
        raise ParameterOutOfRange(f"elem:p,k needs p prime, got {p}")
    if k < 1:
        raise ParameterOutOfRange(f"elem:p,k needs k >= 1, got {k}")
    _check_cap(p**k, cap)
    G = cyclic(p)
    for _ in range(k - 1):
        G = direct_product(G, cyclic(p))
    G.name = f"elem:{p},{k}"
    return G


def direct_product(A: Group, B: Group, name: str | None = None) -> Group:
    nb = B.order
    mul = A.mul[:, None, :, None].astype(np.int64) * nb + B.mul[None, :, None, :]
    n = A.order * nb
    return Group(mul.reshape(n, n), name=name or f"prod:{A.name}+{B.name}")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ParameterOutOfRange(f"group order {n} exceeds element cap {cap}")


def _ints(text: str, count: int, spec: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise UnknownSpec(f"malformed parameters in {spec!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UnknownSpec(f"non-integer parameter in {spec!r}") from None


def catalog(spec: str, cap: int = DEFAULT_CAP, trust: bool = False) -> Group:
    """Return the group named by ``spec`` (see module docstring)."""
    spec = spec.strip()
    if spec == "q8":
        return quaternion()
    family, sep, rest = spec.partition(":")
    if not sep:
        raise UnknownSpec(f"unknown group spec {spec!r}")
    if family == "cyclic":
        return cyclic(*_ints(rest, 1, spec), cap=cap)
    if family == "dihedral":
        return dihedral(*_ints(rest, 1, spec), cap=cap)
    if family == "sym":
        return symmetric(*_ints(rest, 1, spec), cap=cap)
    if family == "alt":
        return alternating(*_ints(rest, 1, spec), cap=cap)
    if family == "elem":
        return elementary_abelian(*_ints(rest, 2, spec), cap=cap)
    if family == "prod":
        # nested products make '+' ambiguous; take the first split where both halves parse
        positions = [i for i, ch in enumerate(rest) if ch == "+"]
        last_error: Exception | None = None
        for i in positions:
            try:
                A = catalog(rest[:i], cap=cap, trust=trust)
                B = catalog(rest[i + 1:], cap=cap, trust=trust)
            except UnknownSpec as exc:
                last_error = exc
                continue
            _check_cap(A.order * B.order, cap)
            return direct_product(A, B, name=spec)
        raise UnknownSpec(f"cannot split product spec {spec!r}") from last_error
    if family == "file":
        return load_group_file(rest, cap=cap, trust=trust)
    raise UnknownSpec(f"unknown group family {family!r}")


def load_group_file(path: str | Path, cap: int = DEFAULT_CAP, trust: bool = False) -> Group:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise GroupFileError(f"cannot read group file {path}: {exc}") from None
    return parse_group_file(text, name=f"file:{path}", cap=cap, trust=trust)


def parse_group_file(text: str, name: str = "file", cap: int = DEFAULT_CAP,
                     trust: bool = False) -> Group:
    """Parse the line-oriented group file format.

    ``format perm`` files give ``degree d`` and one ``gen`` line per
    generator; ``format table`` files give ``order n`` and ``n`` ``row``
    lines.  ``#`` starts a comment line.
    """
    fmt = None
    header: dict[str, int] = {}
    gens: list[list[int]] = []
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *values = line.split()
        if key == "format":
            if len(values) != 1 or values[0] not in ("perm", "table"):
                raise GroupFileError(f"line {lineno}: format must be 'perm' or 'table'")
            if fmt is not None:
                raise GroupFileError(f"line {lineno}: duplicate format line")
            fmt = values[0]
            continue
        if fmt is None:
            raise GroupFileError(f"line {lineno}: expected 'format' before {key!r}")
        allowed = ("degree", "gen") if fmt == "perm" else ("order", "row")
        if key not in allowed:
            raise GroupFileError(f"line {lineno}: unknown key {key!r} for format {fmt}")
        try:
            ints = [int(v) for v in values]
        except ValueError:
            raise GroupFileError(f"line {lineno}: non-integer value") from None
        if key in ("degree", "order"):
            if len(ints) != 1 or ints[0] < 1 or key in header:
                raise GroupFileError(f"line {lineno}: bad {key} line")
            header[key] = ints[0]
        elif key == "gen":
            gens.append(ints)
        else:
            rows.append(ints)
    if fmt is None:
        raise GroupFileError("missing format line")
    if fmt == "perm":
        if "degree" not in header:
            raise GroupFileError("missing degree line")
        degree = header["degree"]
        perms = []
        for g in gens:
            if len(g) != degree:
                raise GroupFileError(f"gen line has {len(g)} images, expected {degree}")
            try:
                perms.append(Permutation(g))
            except ValueError as exc:
                raise GroupFileError(str(exc)) from None
        return group_from_generators(degree, perms, cap=cap, name=name)
    if "order" not in header:
        raise GroupFileError("missing order line")
    n = header["order"]
    if n > cap:
        raise ParameterOutOfRange(f"order {n} exceeds element cap {cap}")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NotClosed(f"expected {n} rows of {n} entries")
    return group_from_table(rows, order=n, name=name, validate=None if not trust else False)


def _alias_free_base_specs(max_order: int, max_degree: int) -> list[tuple[str, int]]:
    """Catalog specs up to ``max_order`` with obvious aliases removed.

    Dropped: elem:p,1 (= cyclic:p), sym:1, sym:2, alt:1..3 (cyclic).
    """
    out: list[tuple[str, int]] = []
    for n in range(1, max_order + 1):
        out.append((f"cyclic:{n}", n))
    for n in range(3, max_order // 2 + 1):
        out.append((f"dihedral:{n}", 2 * n))
    fact = 1
    for k in range(1, max_degree + 1):
        fact *= k
        if k >= 3 and fact <= max_order:
            out.append((f"sym:{k}", fact))
        if k >= 4 and fact // 2 <= max_order:
            out.append((f"alt:{k}", fact // 2))
    if max_order >= 8:
        out.append(("q8", 8))
    for p in range(2, max_order + 1):
        if not is_prime(p):
            continue
        k = 2
        while p**k <= max_order:
            out.append((f"elem:{p},{k}", p**k))
            k += 1
    return out


def sweep_specs(max_order: int, products: bool = True, max_degree: int = 5) -> list[tuple[str, int]]:
    """Every catalog group of order at most ``max_order`` used by sweeps.

    Includes the base families (sym/alt up to ``max_degree`` points) and,
    when ``products`` is set, each unordered pair of nontrivial base groups
    whose product order stays within the bound.
    """
    base = _alias_free_base_specs(max_order, max_degree)
    out = list(base)
    if products:
        nontrivial = [(s, n) for s, n in base if n > 1]
        for i, (sa, na) in enumerate(nontrivial):
            for sb, nb in nontrivial[i:]:
                if na * nb <= max_order:
                    out.append((f"prod:{sa}+{sb}", na * nb))
    out.sort(key=lambda sn: (sn[1], sn[0]))
    return out


def family_examples(max_order: int | None = None) -> list[dict]:
    """Catalog listing used by the ``catalog`` command."""
    bound = max_order if max_order is not None else 10**9
    examples = {
        "cyclic:n": [f"cyclic:{n}" for n in range(1, min(bound, 6) + 1)],
        "dihedral:n": [f"dihedral:{n}" for n in range(3, 6) if 2 * n <= bound],
        "sym:k": [f"sym:{k}" for k, o in ((1, 1), (2, 2), (3, 6), (4, 24), (5, 120))
                  if o <= bound],
        "alt:k": [f"alt:{k}" for k, o in ((3, 3), (4, 12), (5, 60)) if o <= bound],
        "q8": ["q8"] if 8 <= bound else [],
        "elem:p,k": [s for s, o in (("elem:2,2", 4), ("elem:3,2", 9), ("elem:2,3", 8))
                     if o <= bound],
        "prod:A+B": [s for s, o in (("prod:cyclic:2+cyclic:2", 4),
                                    ("prod:cyclic:2+sym:3", 12)) if o <= bound],
    }
    out = []
    for syntax, description, params in FAMILIES:
        ex = examples[syntax]
        if max_order is not None and not ex:
            continue
        out.append({"syntax": syntax, "description": description,
                    "parameters": params, "examples": ex})
    return out
