import pytest

from oracles import (
    brute_force_simply_laced_roots,
    layer_sizes_from_exponents,
    oracle_cartan,
    positive_root_count,
)
from orbitclass.root_system import (
    RootSystemType,
    bad_primes,
    build_root_system,
    cartan_determinant,
    cartan_matrix,
    is_good,
    is_very_good,
    layers_by_height,
    parse_types,
)


def all_types(max_rank=8):
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        for n in range(lo, max_rank + 1):
            yield RootSystemType(fam, n)
    for label in ("E6", "E7", "E8", "F4", "G2"):
        yield RootSystemType.parse(label)


TYPES = list(all_types())


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_cartan_matches_dynkin_diagram(t):
    assert cartan_matrix(t).tolist() == oracle_cartan(t.family, t.rank)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_layer_sizes_follow_exponents(t):
    rs = build_root_system(t)
    sizes = [len(v) for v in layers_by_height(rs).values()]
    assert sizes == layer_sizes_from_exponents(t.family, t.rank)
    assert len(rs.positive_roots) == positive_root_count(t.family, t.rank)


@pytest.mark.parametrize("label,bound", [("A4", 1), ("D5", 2), ("E6", 3), ("E7", 4)])
def test_simply_laced_roots_by_norm(label, bound):
    t = RootSystemType.parse(label)
    rs = build_root_system(t)
    assert sorted(rs.positive_roots) == sorted(
        brute_force_simply_laced_roots(t.family, t.rank, bound)
    )


def test_e8_shape():
    rs = build_root_system("E8")
    assert len(rs.positive_roots) == 120
    assert rs.max_height == 29
    assert max(rs.positive_roots, key=sum) == (2, 3, 4, 6, 5, 4, 3, 2)


def test_simple_roots_come_first():
    rs = build_root_system("F4")
    assert rs.simple_roots == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


def test_products_are_block_diagonal():
    rs = build_root_system("A2xB2")
    assert rs.rank == 4
    assert len(rs.positive_roots) == 3 + 4
    assert rs.cartan[1, 2] == 0 and rs.cartan[2, 1] == 0
    assert rs.component_of(3) == RootSystemType("B", 2)
    assert rs.label == "A2xB2"


@pytest.mark.parametrize(
    "text,expected",
    [("E8", ("E", 8)), ("b_3", ("B", 3)), (" G2 ", ("G", 2))],
)
def test_parse(text, expected):
    assert RootSystemType.parse(text) == RootSystemType(*expected)


@pytest.mark.parametrize("bad", ["E5", "F3", "B1", "D2", "X4", "A0", "E"])
def test_invalid_types(bad):
    with pytest.raises(ValueError):
        RootSystemType.parse(bad)


def test_parse_types():
    assert parse_types("A3xB2") == [RootSystemType("A", 3), RootSystemType("B", 2)]


def test_d3_is_a3():
    assert RootSystemType("D", 3).isomorphism_class == RootSystemType("A", 3)
    rs = build_root_system("D3")
    assert bad_primes(rs) == set()
    assert not is_very_good(rs, 2)  # 2 | 4 as for A_3


@pytest.mark.parametrize(
    "label,bad",
    [("A5", set()), ("B3", {2}), ("C4", {2}), ("D5", {2}),
     ("E6", {2, 3}), ("E7", {2, 3}), ("E8", {2, 3, 5}), ("F4", {2, 3}), ("G2", {2, 3})],
)
def test_bad_primes(label, bad):
    assert bad_primes(build_root_system(label)) == bad


def test_very_good():
    a4 = build_root_system("A4")
    assert is_good(a4, 5) and not is_very_good(a4, 5)
    assert is_very_good(a4, 3)
    assert not is_very_good(build_root_system("A2xB2"), 3)
    with pytest.raises(ValueError):
        is_good(a4, 4)


DETERMINANTS = {"E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}


@pytest.mark.parametrize("n", range(1, 13))
def test_classical_determinants(n):
    assert cartan_determinant(build_root_system(RootSystemType("A", n))) == n + 1
    if n >= 2:
        assert cartan_determinant(build_root_system(RootSystemType("B", n))) == 2
        assert cartan_determinant(build_root_system(RootSystemType("C", n))) == 2
    if n >= 3:
        assert cartan_determinant(build_root_system(RootSystemType("D", n))) == 4


@pytest.mark.parametrize("label", sorted(DETERMINANTS))
def test_exceptional_determinants(label):
    assert cartan_determinant(build_root_system(label)) == DETERMINANTS[label]
