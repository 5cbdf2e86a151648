import itertools

import numpy as np
import pytest

from chromcong.groups import (CATALOG_NAMES, FiniteGroup, catalog, cyclic, dihedral,
                              elements_of, group_from_name, mask_of, symmetric)

ORDERS = {"C1": 1, "C9": 9, "C5xC5": 25, "S3": 6, "D8": 8, "Q8": 8, "D10": 10,
          "D12": 12, "C3xS3": 18, "Q8xC2": 16, "S4": 24, "S4xC2": 48, "C2xC2xC2": 8}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_builds_valid_groups(name):
    G = catalog(name)
    assert G.name == name
    assert G.order <= 48
    if name in ORDERS:
        assert G.order == ORDERS[name]


def test_involution_counts():
    inv = lambda G: sum(1 for o in G.element_orders if o == 2)
    assert inv(catalog("Q8")) == 1
    assert inv(catalog("D8")) == 5
    assert inv(catalog("S4")) == 9
    assert inv(catalog("S3")) == 3


def test_abelian_flags():
    assert catalog("C4xC2").is_abelian()
    assert not catalog("Q8").is_abelian()
    assert not dihedral(3).is_abelian()


@pytest.mark.parametrize("name", ["S3", "Q8", "D12", "S4"])
def test_conjugation_table(name):
    G = catalog(name)
    for g in range(G.order):
        gi = G.inverse[g]
        for x in range(G.order):
            assert G.conj[g, x] == G.mul(G.mul(g, x), gi)


@pytest.mark.parametrize("name", ["S3", "D8", "Q8xC2"])
def test_centralizers_by_brute_force(name):
    G = catalog(name)
    for x in range(G.order):
        expect = {g for g in range(G.order) if G.mul(g, x) == G.mul(x, g)}
        assert set(elements_of(G.centralizer_masks[x])) == expect


def test_closure():
    G = symmetric(3)
    whole = mask_of(range(6))
    orders = G.element_orders
    r = orders.index(3)
    s = orders.index(2)
    assert elements_of(G.closure([r])).__len__() == 3
    assert G.closure([r, s]) == whole


def test_power_and_inverse():
    G = cyclic(7)
    assert G.power(3, 5) == 1
    assert G.power(3, -1) == G.inverse[3] == 4


def test_rejects_non_associative():
    # Latin square of order 3 with identity 0 that is not a group
    bad = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    FiniteGroup(bad)  # this one is Z/3
    bad5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ValueError):
        FiniteGroup(bad5)


def test_rejects_missing_identity_and_inverses():
    with pytest.raises(ValueError):
        FiniteGroup([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])


def test_order_bound():
    with pytest.raises(ValueError):
        cyclic(257)


def test_name_parsing():
    assert group_from_name("C4xC2").order == 8
    assert group_from_name("D8xC2").order == 16
    for bad in ["X3", "D7", "Q16", "S6", ""]:
        with pytest.raises(ValueError):
            group_from_name(bad)


def test_table_is_consistent_with_permutations():
    G = symmetric(3)
    perms = list(itertools.permutations(range(3)))
    for a, b in itertools.product(range(6), repeat=2):
        composed = tuple(perms[a][i] for i in perms[b])
        assert perms[G.mul(a, b)] == composed
    assert np.array_equal(np.sort(G.table, axis=1), np.tile(np.arange(6), (6, 1)))
