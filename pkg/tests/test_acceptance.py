"""Acceptance criteria, one test each.

Every check prints a single ``[PASS]`` / ``[FAIL]`` line; the lines are
repeated in the pytest terminal summary.  All comparisons are exact integer
equality; the only tolerances are the wall-clock limits below.  Caches are
cleared before each timed step so the limits measure cold runs.

Run directly with ``python3 tests/test_acceptance.py`` to get just the lines.
"""

import math
import random
import time

from corpus import PRIMES, standard_data
from orbitclass import chevalley, root_system
from orbitclass.chevalley import (
    ad_X_matrix,
    build_folding,
    build_simply_laced,
    folding_for,
    graded_algebra,
    torus_ad_X_matrix,
)
from orbitclass.classifier import WITNESSES, implication_audit, intro_table
from orbitclass.intlinalg import IntMatrix, determinant, rank_mod_p, smith_normal_form
from orbitclass.root_datum import (
    coroots_dependent_mod_p,
    kappa_v,
    parse_group_spec,
    phi_matrix,
    regular_orbit_exponents,
    rho_v,
    standard_datum,
    StandardGroupSpec,
)
from orbitclass.root_system import RootSystemType, build_root_system, cartan_determinant
from orbitclass.verifier import (
    SWEEP_CELLS,
    appendix_sweep,
    good_prime_surjectivity,
    pgl_coroot_relation,
    verify_companion_block,
)

TABLE_LIMIT_S = 5.0
CARTAN_LIMIT_S = 1.0
SWEEP_LIMIT_S = 10.0

RESULTS: list[str] = []


def report(k, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {k}. {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def cold():
    for fn in (
        root_system.cartan_matrix,
        root_system._build,
        chevalley._simply_laced,
        chevalley._folding,
        chevalley._graded,
    ):
        fn.cache_clear()


EXPECTED_TABLE = [
    ("GL_n", "-", "1", "1", "-", "-"),
    ("SL_n", "-", "n", "1", "p|n", "p|n"),
    ("PGL_n", "-", "1", "n", "-", "p|n"),
    ("SO_{2n+1}", "2", "1", "2", "2", "2"),
    ("SO_{2n}", "2", "2", "2", "2", "2"),
    ("Sp_{2n}", "2", "2", "1", "2", "2"),
    ("F_4", "2,3", "1", "1", "2,3", "2,3"),
    ("G_2", "2,3", "1", "1", "2,3", "2,3"),
    ("E_8", "2,3,5", "1", "1", "2,3,5", "2,3,5"),
]


def test_1_intro_table():
    cold()
    t0 = time.perf_counter()
    rows = intro_table(range(2, 10), PRIMES)
    dt = time.perf_counter() - t0
    got = [tuple(r.cells()) for r in rows]
    matched = sum(a == b for a, b in zip(got, EXPECTED_TABLE))
    ok = got == EXPECTED_TABLE and dt < TABLE_LIMIT_S
    report(1, "intro table", ok, f"{matched}/9 rows exact, {dt:.2f} s (limit {TABLE_LIMIT_S} s)")


def _expected_det(t):
    return {"A": t.rank + 1, "B": 2, "C": 2, "D": 4}.get(
        t.family, {"E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}.get(t.label)
    )


def test_2_cartan_determinants():
    cold()
    types = [RootSystemType(f, n) for f, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)) for n in range(lo, 13)]
    types += [RootSystemType.parse(s) for s in ("E6", "E7", "E8", "F4", "G2")]
    t0 = time.perf_counter()
    bad = [t.label for t in types if determinant(root_system.cartan_matrix(t)) != _expected_det(t)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < CARTAN_LIMIT_S
    report(2, "Cartan determinants", ok,
           f"{len(types) - len(bad)}/{len(types)} types exact, {dt:.3f} s (limit {CARTAN_LIMIT_S} s)"
           + (f", wrong: {bad}" if bad else ""))


# (type, height, expected Smith form, prime, expected rank mod p)
APPENDIX_MAPS = [
    ("D4", 2, (1, 1, 2), 2, 2),
    ("B3", 2, (1, 2), 2, 1),
    ("C3", 2, (1, 2), 2, 1),
    ("G2", 2, (2,), 2, 0),
    ("G2", 3, (3,), 3, 0),
    ("E6", 3, (1, 1, 1, 1, 3), 3, 4),
    ("E8", 5, (1, 1, 1, 1, 1, 1, 5), 5, 6),
    ("F4", 2, (1, 1, 2), 2, 2),
    ("F4", 3, (1, 1, 3), 3, 2),
]


def test_3_appendix_bracket_invariants():
    failures = []
    for label, h, snf, p, rank in APPENDIX_MAPS:
        M = ad_X_matrix(graded_algebra(label), h)
        got = (smith_normal_form(M).diag, abs(determinant(M)), rank_mod_p(M, p))
        if got != (snf, snf[-1], rank):
            failures.append(f"{label}@{h}: {got}")
    ok = not failures
    report(3, "appendix bracket invariants", ok,
           f"{len(APPENDIX_MAPS) - len(failures)}/{len(APPENDIX_MAPS)} maps match SNF, |det| and rank mod p"
           + (f", failing {failures}" if failures else ""))


def test_4_appendix_sweep():
    cold()
    t0 = time.perf_counter()
    reports = appendix_sweep(SWEEP_CELLS)
    good_cells = [
        (label, p)
        for label in sorted({c[0] for c in SWEEP_CELLS})
        for p in (5, 7, 11)
        if p not in root_system.bad_primes(build_root_system(label))
    ]
    contrast = [c for c in good_cells if not good_prime_surjectivity(*c)]
    dt = time.perf_counter() - t0
    failed = [f"{r.type_label}/p={r.prime}" for r in reports if not r.passed]
    ok = not failed and not contrast and dt < SWEEP_LIMIT_S
    report(4, "appendix theorem sweep", ok,
           f"{len(reports) - len(failed)}/{len(reports)} bad-prime cells pass, "
           f"{len(good_cells) - len(contrast)}/{len(good_cells)} good-prime cells surjective, "
           f"{dt:.2f} s (limit {SWEEP_LIMIT_S} s)")


def test_5_rho_and_coroot_rank():
    data = standard_data()
    bad = [(rd.label, p) for rd in data for p in PRIMES
           if (rho_v(rd) % p == 0) != coroots_dependent_mod_p(rd, p)]
    report(5, "p | rho_v iff coroots drop rank mod p", not bad,
           f"{len(data) * len(PRIMES)} (datum, p) pairs, {len(bad)} counterexamples")


def test_6_torus_bracket_is_phi():
    data = standard_data()
    bad = []
    for rd in data:
        M = torus_ad_X_matrix(rd)
        if M != phi_matrix(rd):
            bad.append(f"{rd.label}: matrix")
            continue
        for p in PRIMES:
            if (rank_mod_p(M, p) < rd.semisimple_rank) != (kappa_v(rd) % p == 0):
                bad.append(f"{rd.label}, p={p}")
    report(6, "[H, X] on the torus equals Phi", not bad,
           f"{len(data)} data entry-wise equal, rank drop iff p | kappa_v, {len(bad)} counterexamples")


def test_7_pgl_relation():
    bad = []
    plain_zero = pairs = 0
    for n in range(2, 13):
        rel = pgl_coroot_relation(n)  # sum_i i * H_{alpha_i}
        cor = standard_datum(StandardGroupSpec("PGL", n)).coroot_coords
        plain = [sum(cor[i, j] for i in range(n - 1)) for j in range(n - 1)]
        for p in (2, 3, 5, 7, 11):
            if all(v % p == 0 for v in rel) != (n % p == 0):
                bad.append((n, p))
            plain_zero += all(v % p == 0 for v in plain)
            pairs += 1
    report(7, "PGL_n coroot relation", not bad,
           f"sum_i i*H_i vanishes mod p iff p | n for n <= 12, p <= 11 ({len(bad)} mismatches); "
           f"the unweighted sum vanishes for {plain_zero} of {pairs} (n, p) pairs")


def test_8_companion_block():
    primes = (2, 3, 5, 7, 11, 13)
    bad = [p for p in primes if not verify_companion_block(p)]
    report(8, "companion block M_x^p = x I", not bad, f"{len(primes) - len(bad)}/{len(primes)} primes")


def _random_matrix(rng, m, n):
    return IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], n)


def _random_unimodular(rng, n):
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(8):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            k = rng.randint(-3, 3)
            a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        else:
            a[i] = [-x for x in a[i]]
    return IntMatrix.from_rows(a, n)


def test_9_property_suites():
    rng = random.Random(20240611)
    problems = []

    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = _random_matrix(rng, m, n)
        sf = smith_normal_form(M)
        if sf.U @ M @ sf.V != sf.diagonal_matrix():
            problems.append("snf round trip")
        U, V = _random_unimodular(rng, m), _random_unimodular(rng, n)
        if smith_normal_form(U @ M @ V).diag != sf.diag:
            problems.append("unimodular invariance")

    laced = [RootSystemType("A", n) for n in range(1, 9)] + [RootSystemType("D", n) for n in range(4, 9)]
    laced += [RootSystemType("E", n) for n in (6, 7, 8)]
    triples = 0
    for t in laced:
        triples += build_simply_laced(build_root_system(t)).check_jacobi()

    folded = [RootSystemType(f, n) for f in "BC" for n in range(2, 9)] + [RootSystemType("F", 4), RootSystemType("G", 2)]
    for t in folded:
        build_folding(folding_for(t)[0], t).verify()

    data = standard_data()
    for rd in data:
        if rd.semisimple_rank and math.prod(regular_orbit_exponents(rd)) != kappa_v(rd):
            problems.append(f"prod d_i != kappa_v for {rd.label}")
        if rd.is_semisimple and rd.semisimple_rank and cartan_determinant(rd.root_system) % kappa_v(rd):
            problems.append(f"kappa_v does not divide det for {rd.label}")

    corpus = [(parse_group_spec(g), p) for g, p in (("SL:3", 3), ("GL:3", 3), ("PGL:3", 3), ("ad:E8", 5))]
    audit = implication_audit(corpus)
    missing = [w for w in WITNESSES if not audit.witnessed(w)]
    if missing or not audit.ok:
        problems.append(f"audit: missing {missing}, violations {audit.violations}")

    report(9, "property suites", not problems,
           f"300 random SNF cases, Jacobi on {len(laced)} algebras ({triples} triples), "
           f"{len(folded)} foldings, {len(data)} data, {4 - len(missing)}/4 witnesses"
           + (f"; problems: {sorted(set(problems))}" if problems else ""))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
