import json
import pathlib

import pytest

from corpus import PRIMES, standard_data
from orbitclass.root_datum import parse_group_spec
from orbitclass.root_system import RootSystemType, bad_primes, build_root_system
from orbitclass.verifier import (
    SWEEP_CELLS,
    appendix_json,
    appendix_sweep,
    format_appendix_table,
    good_prime_surjectivity,
    pgl_commutator_is_scalar,
    pgl_coroot_relation,
    verify_appendix_theorem,
    verify_companion_block,
    verify_pgl_relation,
    verify_phi_bracket_identity,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.mark.parametrize("cell", SWEEP_CELLS, ids=lambda c: f"{c[0]}-p{c[1]}")
def test_sweep_cell_passes(cell):
    r = verify_appendix_theorem(*cell)
    assert r.applicable
    assert r.surjective_below_p
    assert r.coker_dim_at_p == 1
    assert r.dim_identity
    assert r.passed and r.status == "pass"


def test_sweep_covers_every_bad_pair():
    expected = set()
    for fam, ranks in (("B", range(2, 9)), ("C", range(2, 9)), ("D", range(4, 9))):
        for n in ranks:
            expected |= {(f"{fam}{n}", p) for p in bad_primes(build_root_system(f"{fam}{n}"))}
    for label in ("E6", "E7", "E8", "F4", "G2"):
        expected |= {(label, p) for p in bad_primes(build_root_system(label))}
    assert set(SWEEP_CELLS) == expected


GOOD = [
    (label, p)
    for label in [f"B{n}" for n in range(2, 9)] + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8", "F4", "G2"]
    for p in (5, 7, 11)
    if p not in bad_primes(build_root_system(label))
]


@pytest.mark.parametrize("cell", GOOD, ids=lambda c: f"{c[0]}-p{c[1]}")
def test_good_primes_surjective_everywhere(cell):
    assert good_prime_surjectivity(*cell)


def test_bad_prime_breaks_surjectivity():
    assert not good_prime_surjectivity("E8", 5)
    assert not good_prime_surjectivity("G2", 3)


@pytest.mark.parametrize("label,p", [("D4", 3), ("B3", 5), ("E8", 7)])
def test_not_applicable(label, p):
    r = verify_appendix_theorem(label, p)
    assert not r.applicable and r.status == "n/a"
    assert not r.passed
    assert r.coker_dim_at_p is None


def test_report_layer_lookup():
    r = verify_appendix_theorem(RootSystemType("E", 6), 3)
    assert r.layer(3).snf == (1, 1, 1, 1, 3)
    assert r.layer(3).rank_mod_p == 4


def test_appendix_golden():
    reports = appendix_sweep()
    assert appendix_json(reports) + "\n" == (GOLDEN / "appendix_sweep.json").read_text()


def test_appendix_json_round_trip():
    text = appendix_json(appendix_sweep([("G2", 2), ("D4", 3)]))
    assert json.dumps(json.loads(text), indent=2) == text


def test_table_marks():
    text = format_appendix_table(appendix_sweep([("G2", 3), ("B3", 3)]))
    lines = text.splitlines()
    assert "✓" in lines[1] and lines[1].endswith("pass")
    assert "n/a" in lines[2]


@pytest.mark.parametrize("n", range(2, 13))
def test_pgl_relation(n):
    rel = pgl_coroot_relation(n)
    assert rel == (0,) * (n - 2) + (n,)
    for p in (2, 3, 5, 7, 11):
        vanishes = all(v % p == 0 for v in rel)
        assert vanishes == (n % p == 0)
        assert pgl_commutator_is_scalar(n, p) == vanishes
        if n % p == 0:
            assert verify_pgl_relation(n, p)
        else:
            with pytest.raises(ValueError):
                verify_pgl_relation(n, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_companion_block(p):
    assert verify_companion_block(p)


def test_companion_block_limits():
    with pytest.raises(ValueError):
        verify_companion_block(4)
    with pytest.raises(ValueError):
        verify_companion_block(17)


@pytest.mark.parametrize("rd", standard_data(), ids=str)
def test_phi_bracket_identity(rd):
    assert verify_phi_bracket_identity(rd, PRIMES)


@pytest.mark.parametrize(
    "group,drops",
    [("SL:2", {2}), ("GL:3", set()), ("SOeven:8", {2}), ("sc:E6", {3})],
)
def test_rank_drop_primes(group, drops):
    from orbitclass.chevalley import torus_ad_X_matrix
    from orbitclass.intlinalg import rank_mod_p

    rd = parse_group_spec(group)
    M = torus_ad_X_matrix(rd)
    assert {p for p in PRIMES if rank_mod_p(M, p) < rd.semisimple_rank} == drops
