"""Mechanical checks of the bracket computations for adjoint simple types,
plus the PGL_n coroot relation, the companion-block identity and the
agreement of Phi with [X, .] on the torus.

For an adjoint simple type with bad prime p and X the sum of the simple root
vectors, the checked statements are

    1. [X, .] : n_i -> n_{i+1} is onto mod p for 1 <= i <= p-1,
    2. dim n_{p+1} / [X, n_p] = 1 over F_p,
    3. |Delta| = dim n_1 = dim n_i + 1 for 2 <= i <= p+1.

Matrices are compared through basis-independent data only (Smith form,
rank mod p, |det|).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .chevalley import ad_X_matrix, graded_algebra, torus_ad_X_matrix
from .intlinalg import rank_mod_p, require_prime, smith_normal_form
from .root_datum import (
    RootDatum,
    StandardGroupSpec,
    kappa_v,
    phi_matrix,
    standard_datum,
)
from .root_system import RootSystemType, bad_primes, build_root_system

__all__ = [
    "LayerRecord",
    "AppendixReport",
    "verify_appendix_theorem",
    "appendix_sweep",
    "SWEEP_CELLS",
    "good_prime_surjectivity",
    "verify_pgl_relation",
    "pgl_coroot_relation",
    "pgl_commutator_is_scalar",
    "verify_companion_block",
    "verify_phi_bracket_identity",
    "format_appendix_table",
    "appendix_json",
]


@dataclass(frozen=True)
class LayerRecord:
    height: int
    dim: int
    next_dim: int
    snf: tuple[int, ...]
    rank_mod_p: int


@dataclass(frozen=True)
class AppendixReport:
    type_label: str
    prime: int
    applicable: bool
    layers: tuple[LayerRecord, ...] = ()
    surjective_below_p: bool | None = None
    coker_dim_at_p: int | None = None
    dim_identity: bool | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        """False for cells that are not applicable; check ``applicable`` first."""
        return bool(
            self.applicable
            and self.surjective_below_p
            and self.coker_dim_at_p == 1
            and self.dim_identity
        )

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "FAIL"

    def layer(self, h: int) -> LayerRecord:
        return next(r for r in self.layers if r.height == h)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["layers"] = [
            {**asdict(r), "snf": list(r.snf)} for r in self.layers
        ]
        d["status"] = self.status
        return d


def verify_appendix_theorem(t: RootSystemType | str, p: int) -> AppendixReport:
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    require_prime(p)
    rs = build_root_system(t)
    if p not in bad_primes(rs):
        return AppendixReport(t.label, p, False, reason=f"{p} is not bad for {t.label}")
    if rs.max_height < p + 1:
        return AppendixReport(t.label, p, False, reason=f"no roots of height {p + 1}")

    alg = graded_algebra(t)
    layers = []
    for h in alg.heights[:-1]:
        m = ad_X_matrix(alg, h)
        layers.append(
            LayerRecord(
                height=h,
                dim=alg.dim(h),
                next_dim=alg.dim(h + 1),
                snf=smith_normal_form(m).diag,
                rank_mod_p=rank_mod_p(m, p),
            )
        )
    by_h = {r.height: r for r in layers}
    surj = all(by_h[h].rank_mod_p == by_h[h].next_dim for h in range(1, p))
    coker = by_h[p].next_dim - by_h[p].rank_mod_p
    n1 = alg.dim(1)
    dims_ok = n1 == rs.rank and all(alg.dim(i) + 1 == n1 for i in range(2, p + 2))
    return AppendixReport(
        type_label=t.label,
        prime=p,
        applicable=True,
        layers=tuple(layers),
        surjective_below_p=surj,
        coker_dim_at_p=coker,
        dim_identity=dims_ok,
    )


def _sweep_cells() -> list[tuple[str, int]]:
    cells = []
    cells += [(f"B{n}", 2) for n in range(2, 9)]
    cells += [(f"C{n}", 2) for n in range(2, 9)]
    cells += [(f"D{n}", 2) for n in range(4, 9)]
    cells += [("E6", 2), ("E6", 3), ("E7", 2), ("E7", 3), ("E8", 2), ("E8", 3), ("E8", 5)]
    cells += [("F4", 2), ("F4", 3), ("G2", 2), ("G2", 3)]
    return cells


SWEEP_CELLS: tuple[tuple[str, int], ...] = tuple(_sweep_cells())


def appendix_sweep(cells: Iterable[tuple[str, int]] = SWEEP_CELLS) -> list[AppendixReport]:
    return [verify_appendix_theorem(t, p) for t, p in cells]


def good_prime_surjectivity(t: RootSystemType | str, p: int) -> bool:
    """[X, .] : n_h -> n_{h+1} is onto mod p at every height."""
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    alg = graded_algebra(t)
    return all(
        rank_mod_p(ad_X_matrix(alg, h), p) == alg.dim(h + 1) for h in alg.heights[:-1]
    )


def format_appendix_table(reports: Sequence[AppendixReport]) -> str:
    mark = {True: "✓", False: "✗", None: "-"}
    lines = ["type  p  surj<p  coker@p  dims  status"]
    for r in reports:
        coker = "-" if r.coker_dim_at_p is None else str(r.coker_dim_at_p)
        lines.append(
            f"{r.type_label:<5} {r.prime:<2} {mark[r.surjective_below_p]:^6}  "
            f"{coker:^7}  {mark[r.dim_identity]:^4}  {r.status}"
        )
        if not r.applicable:
            lines[-1] += f" ({r.reason})"
    return "\n".join(lines)


def appendix_json(reports: Sequence[AppendixReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# --- PGL_n --------------------------------------------------------------------


def pgl_coroot_relation(n: int) -> tuple[int, ...]:
    """sum_i i * H_{alpha_i} for PGL_n, as a vector in X_*(T).

    With x the regular nilpotent Jordan block and x' the subdiagonal matrix
    with entries 1, ..., n-1 (and n), [x, x'] = sum_i i H_i; its coordinates
    are (0, ..., 0, n), so the relation vanishes mod p exactly when p | n.
    """
    rd = standard_datum(StandardGroupSpec("PGL", n))
    cor = rd.coroot_coords
    return tuple(
        sum((i + 1) * cor[i, j] for i in range(cor.rows)) for j in range(cor.cols)
    )


def pgl_commutator_is_scalar(n: int, p: int) -> bool:
    """Whether [x, x'] in gl_n is a multiple of the identity mod p, i.e. zero
    in pgl_n.  The commutator is diag(1, ..., 1, 1 - n), so this holds exactly
    when p | n."""
    x = [[int(j == i + 1) for j in range(n)] for i in range(n)]
    xp = [[(j + 1) if i == j + 1 else 0 for j in range(n)] for i in range(n)]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    ab, ba = mul(x, xp), mul(xp, x)
    comm = [[(ab[i][j] - ba[i][j]) % p for j in range(n)] for i in range(n)]
    c = comm[0][0]
    return all(comm[i][j] == (c if i == j else 0) for i in range(n) for j in range(n))


def verify_pgl_relation(n: int, p: int) -> bool:
    require_prime(p)
    if n % p:
        raise ValueError(f"the relation needs p | n, got n={n}, p={p}")
    return all(v % p == 0 for v in pgl_coroot_relation(n)) and pgl_commutator_is_scalar(n, p)


# --- companion block ------------------------------------------------------------


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _polyadd(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def companion_block(p: int) -> list[list[list[int]]]:
    """p x p matrix over F_p[x]: ones below the diagonal, x in the top-right
    corner.  Polynomials are coefficient lists, lowest degree first."""
    M = [[[] for _ in range(p)] for _ in range(p)]
    for i in range(1, p):
        M[i][i - 1] = [1]
    M[0][p - 1] = [0, 1]
    return M


def verify_companion_block(p: int) -> bool:
    require_prime(p)
    if p > 13:
        raise ValueError("companion block check is limited to p <= 13")
    M = companion_block(p)

    def mul(A, B):
        out = [[[] for _ in range(p)] for _ in range(p)]
        for i in range(p):
            for j in range(p):
                acc: list[int] = []
                for k in range(p):
                    acc = _polyadd(acc, _polymul(A[i][k], B[k][j], p), p)
                out[i][j] = acc
        return out

    P = M
    for _ in range(p - 1):
        P = mul(P, M)
    return all(P[i][j] == ([0, 1] if i == j else []) for i in range(p) for j in range(p))


# --- Phi versus [X, .] on the torus ----------------------------------------------------


def verify_phi_bracket_identity(rd: RootDatum, primes: Sequence[int] = (2, 3, 5, 7)) -> bool:
    M = torus_ad_X_matrix(rd)
    if M != phi_matrix(rd):
        return False
    kap = kappa_v(rd)
    n = rd.semisimple_rank
    return all((rank_mod_p(M, p) < n) == (kap % p == 0) for p in primes)
