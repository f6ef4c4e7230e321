import itertools

import numpy as np
import pytest

from conftest import FIXTURES
from pchains.catalog import (
    catalog,
    family_examples,
    load_group_file,
    parse_group_file,
    sweep_specs,
)
from pchains.errors import GroupError, GroupFileError, ParameterOutOfRange, UnknownSpec
from pchains.group import element_order


@pytest.mark.parametrize("spec, order", [
    ("cyclic:1", 1), ("cyclic:6", 6), ("dihedral:3", 6), ("dihedral:10", 20),
    ("sym:1", 1), ("sym:4", 24), ("sym:5", 120), ("alt:4", 12), ("alt:5", 60),
    ("q8", 8), ("elem:2,3", 8), ("elem:5,2", 25),
    ("prod:cyclic:2+cyclic:2", 4), ("prod:sym:3+q8", 48),
    ("prod:prod:cyclic:2+cyclic:2+cyclic:3", 12),
    ("prod:cyclic:3+prod:cyclic:2+cyclic:2", 12),
])
def test_catalog_orders_and_validation(spec, order):
    G = catalog(spec)
    assert G.order == order
    G.validate()


def test_q8_has_one_involution():
    G = catalog("q8")
    assert sum(element_order(G, g) == 2 for g in range(8)) == 1
    assert G.label(4) == "-1"


def test_product_is_elementary_abelian():
    G = catalog("prod:cyclic:2+cyclic:2")
    assert G.is_abelian()
    assert [element_order(G, g) for g in range(4)] == [1, 2, 2, 2]


def test_product_indexing_is_lexicographic():
    A, B = catalog("cyclic:3"), catalog("sym:3")
    G = catalog("prod:cyclic:3+sym:3")
    for a, b, c, d in itertools.product(range(3), range(6), range(3), range(6)):
        assert G.mul[a * 6 + b, c * 6 + d] == A.mul[a, c] * 6 + B.mul[b, d]


def test_dihedral_relations():
    n = 7
    G = catalog(f"dihedral:{n}")
    r, s = 1, n
    assert element_order(G, r) == n
    assert element_order(G, s) == 2
    # s r s^-1 = r^-1
    assert G.mul[G.mul[s, r], G.inv[s]] == G.inv[r]


def test_alt_is_even_half_of_sym():
    assert catalog("alt:5").order * 2 == catalog("sym:5").order
    assert not catalog("alt:4").is_abelian()


@pytest.mark.parametrize("spec, err", [
    ("cyclic:0", ParameterOutOfRange), ("dihedral:2", ParameterOutOfRange),
    ("sym:8", ParameterOutOfRange), ("elem:4,2", ParameterOutOfRange),
    ("elem:2,0", ParameterOutOfRange), ("foo:3", UnknownSpec), ("cyclic", UnknownSpec),
    ("cyclic:x", UnknownSpec), ("prod:cyclic:2", UnknownSpec), ("elem:2", UnknownSpec),
])
def test_bad_specs(spec, err):
    with pytest.raises(err):
        catalog(spec)


def test_cap_applies_to_products():
    with pytest.raises(ParameterOutOfRange):
        catalog("prod:cyclic:100+cyclic:100", cap=5000)


def test_perm_file_matches_catalog_order():
    G = load_group_file(FIXTURES / "sym3.group")
    assert G.order == 6
    assert not G.is_abelian()


def test_table_file_relabels_identity():
    G = load_group_file(FIXTURES / "q8_table.group")
    assert G.order == 8
    assert (G.mul[0] == np.arange(8)).all()
    assert sum(element_order(G, g) == 2 for g in range(8)) == 1


def test_file_spec_through_catalog():
    G = catalog(f"file:{FIXTURES / 'sym3_table.group'}")
    assert G.order == 6


@pytest.mark.parametrize("text", [
    "",
    "degree 3\n",
    "format perm\nfoo 1\n",
    "format perm\ndegree 3\ngen 0 1\n",
    "format perm\ndegree 3\ngen 0 0 1\n",
    "format perm\ngen 0 1 2\n",
    "format table\norder 2\nrow 0 1\n",
    "format table\norder 2\nrow 0 1\nrow 1 x\n",
    "format table\norder 2\nrow 0 1\nrow 1 2\n",
    "format table\ndegree 2\n",
    "format matrix\n",
])
def test_malformed_group_files(text):
    with pytest.raises(GroupError):
        parse_group_file(text)


def test_missing_file():
    with pytest.raises(GroupFileError):
        load_group_file(FIXTURES / "nope.group")


def test_comments_and_trailing_whitespace():
    G = parse_group_file("# c\nformat table   \norder 2\n# mid\nrow 0 1  \nrow 1 0\t\n")
    assert G.order == 2


def test_sweep_specs_bounds():
    specs = sweep_specs(24)
    assert all(order <= 24 for _, order in specs)
    names = [s for s, _ in specs]
    assert len(names) == len(set(names))
    assert {"cyclic:1", "sym:4", "alt:4", "q8", "elem:2,3", "prod:cyclic:2+sym:3"} <= set(names)
    assert "sym:5" not in names
    for spec, order in specs:
        assert catalog(spec).order == order


def test_family_listing():
    syntaxes = [e["syntax"] for e in family_examples()]
    assert syntaxes == ["cyclic:n", "dihedral:n", "sym:k", "alt:k", "q8", "elem:p,k", "prod:A+B"]
    for entry in family_examples(10):
        for spec in entry["examples"]:
            assert catalog(spec).order <= 10
