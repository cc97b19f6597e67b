"""Root data of split reductive groups and the invariants kappa_v, rho_v.

A datum stores its simple roots as rows of ``root_coords`` (coordinates in
a basis of the character lattice X^*) and its simple coroots as rows of
``coroot_coords`` (coordinates in the dual basis of the cocharacter lattice
X_*).  With that choice the matrix of

    Phi : X_* -> Hom(Z Delta, Z),   gamma -> (alpha -> <gamma, alpha>)

in the dual basis of Delta is ``root_coords`` itself, and likewise the
matrix of Phi^vee is ``coroot_coords``.  Hom(Z R, Z) is identified with
Hom(Z Delta, Z) since Delta spans the root lattice.

Group strings (CLI grammar)::

    spec    := factor ("x" factor)*
    factor  := FAMILY ":" ARG
    FAMILY  := GL | SL | PGL | SOodd | SOeven | Sp | sc | ad | T
    ARG     := integer (matrix size, or torus rank for T)
             | simple type such as E6 (for sc / ad)

Examples: ``SL:5``, ``SOodd:7`` (SO_7), ``Sp:6``, ``ad:D4``,
``SL:2xPGL:3xT:1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .intlinalg import (
    IntMatrix,
    rank_mod_p,
    require_prime,
    smith_normal_form,
    torsion_cokernel_order,
)
from .root_system import RootSystem, RootSystemType, build_root_system

__all__ = [
    "RootDatum",
    "StandardGroupSpec",
    "GroupSpecError",
    "standard_datum",
    "product",
    "phi_matrix",
    "phi_vee_matrix",
    "kappa_v",
    "rho_v",
    "regular_orbit_exponents",
    "coroots_dependent_mod_p",
    "parse_group_spec",
    "FAMILIES",
]


class GroupSpecError(ValueError):
    """Unparseable group string; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


@dataclass(frozen=True)
class RootDatum:
    lattice_rank: int
    root_system: RootSystem
    root_coords: IntMatrix
    coroot_coords: IntMatrix
    label: str

    def __post_init__(self) -> None:
        n = self.root_system.rank
        for name, m in (("root", self.root_coords), ("coroot", self.coroot_coords)):
            if m.shape != (n, self.lattice_rank):
                raise ValueError(
                    f"{name} coordinates have shape {m.shape}, "
                    f"expected {(n, self.lattice_rank)}"
                )
        if n:
            pairing = self.root_coords @ self.coroot_coords.T
            if pairing != self.root_system.cartan.T:
                raise ValueError(f"{self.label}: root/coroot pairing is not the Cartan matrix")
            for m in (self.root_coords, self.coroot_coords):
                if smith_normal_form(m).rank != n:
                    raise ValueError(f"{self.label}: simple (co)roots are not independent")

    @property
    def semisimple_rank(self) -> int:
        return self.root_system.rank

    @property
    def is_semisimple(self) -> bool:
        return self.lattice_rank == self.root_system.rank

    def __str__(self) -> str:
        return self.label


FAMILIES = ("GL", "SL", "PGL", "SOodd", "SOeven", "Sp", "sc", "ad", "T")


@dataclass(frozen=True)
class StandardGroupSpec:
    """One standard group.  ``size`` is the matrix size (``Sp:6`` is Sp_6),
    the torus rank for ``T``; ``root_type`` is used by ``sc`` / ``ad``."""

    family: str
    size: int | None = None
    root_type: RootSystemType | None = None

    def __post_init__(self) -> None:
        f, n = self.family, self.size
        if f not in FAMILIES:
            raise ValueError(f"unknown group family {f!r}")
        if f in ("sc", "ad"):
            if self.root_type is None:
                raise ValueError(f"{f} needs a root system type")
            return
        if n is None:
            raise ValueError(f"{f} needs a size")
        if f == "GL" and n < 1:
            raise ValueError("GL_n needs n >= 1")
        if f in ("SL", "PGL") and n < 2:
            raise ValueError(f"{f}_n needs n >= 2")
        if f == "SOodd" and (n < 3 or n % 2 == 0):
            raise ValueError("SOodd size must be odd and >= 3")
        if f in ("SOeven", "Sp") and (n < 2 or n % 2):
            raise ValueError(f"{f} size must be even and >= 2")
        if f == "T" and n < 0:
            raise ValueError("torus rank must be >= 0")


def _root_system_or_empty(types: Sequence[RootSystemType]) -> RootSystem:
    return build_root_system(list(types))


def _e(i: int, n: int) -> list[int]:
    v = [0] * n
    v[i] = 1
    return v


def _chain(n: int) -> list[list[int]]:
    """e_i - e_{i+1} for i < n-1, in Z^n."""
    return [[a - b for a, b in zip(_e(i, n), _e(i + 1, n))] for i in range(n - 1)]


def _from_vectors(label, n, types, roots, coroots) -> RootDatum:
    rs = _root_system_or_empty(types)
    return RootDatum(
        lattice_rank=n,
        root_system=rs,
        root_coords=IntMatrix.from_rows(roots, n),
        coroot_coords=IntMatrix.from_rows(coroots, n),
        label=label,
    )


def _torus(r: int, label: str | None = None) -> RootDatum:
    return _from_vectors(label or f"T_{r}", r, [], [], [])


def standard_datum(spec: StandardGroupSpec) -> RootDatum:
    f, n = spec.family, spec.size
    if f == "T":
        return _torus(n)
    if f == "GL":
        if n == 1:
            return _torus(1, "GL_1")
        ch = _chain(n)
        return _from_vectors(f"GL_{n}", n, [RootSystemType("A", n - 1)], ch, ch)
    if f == "SL":
        return _simply_connected(RootSystemType("A", n - 1), f"SL_{n}")
    if f == "PGL":
        return _adjoint(RootSystemType("A", n - 1), f"PGL_{n}")
    if f == "sc":
        return _simply_connected(spec.root_type, f"sc_{spec.root_type.label}")
    if f == "ad":
        return _adjoint(spec.root_type, f"ad_{spec.root_type.label}")

    m = n // 2
    if f == "SOodd":
        # roots e_i - e_{i+1}, e_m ; coroots e_i - e_{i+1}, 2 e_m
        ch = _chain(m)
        t = RootSystemType("A", 1) if m == 1 else RootSystemType("B", m)
        return _from_vectors(
            f"SO_{n}", m, [t], ch + [_e(m - 1, m)], ch + [[2 * x for x in _e(m - 1, m)]]
        )
    if f == "Sp":
        ch = _chain(m)
        t = RootSystemType("A", 1) if m == 1 else RootSystemType("C", m)
        return _from_vectors(
            f"Sp_{n}", m, [t], ch + [[2 * x for x in _e(m - 1, m)]], ch + [_e(m - 1, m)]
        )
    # SOeven
    if m == 1:
        return _torus(1, "SO_2")
    if m == 2:
        v = [[1, -1], [1, 1]]
        return _from_vectors(
            "SO_4", 2, [RootSystemType("A", 1), RootSystemType("A", 1)], v, v
        )
    v = _chain(m) + [[a + b for a, b in zip(_e(m - 2, m), _e(m - 1, m))]]
    return _from_vectors(f"SO_{n}", m, [RootSystemType("D", m)], v, v)


def _simply_connected(t: RootSystemType, label: str) -> RootDatum:
    # X_* = coroot lattice, basis the simple coroots; X^* = weight lattice
    rs = build_root_system(t)
    return RootDatum(rs.rank, rs, rs.cartan.T, IntMatrix.identity(rs.rank), label)


def _adjoint(t: RootSystemType, label: str) -> RootDatum:
    # X^* = root lattice, basis the simple roots; X_* = coweight lattice
    rs = build_root_system(t)
    return RootDatum(rs.rank, rs, IntMatrix.identity(rs.rank), rs.cartan, label)


def product(d1: RootDatum, d2: RootDatum) -> RootDatum:
    rs = build_root_system(list(d1.root_system.components) + list(d2.root_system.components))
    return RootDatum(
        lattice_rank=d1.lattice_rank + d2.lattice_rank,
        root_system=rs,
        root_coords=IntMatrix.block_diagonal([d1.root_coords, d2.root_coords]),
        coroot_coords=IntMatrix.block_diagonal([d1.coroot_coords, d2.coroot_coords]),
        label=f"{d1.label} x {d2.label}",
    )


def phi_matrix(rd: RootDatum) -> IntMatrix:
    """Entry (i, j) is <gamma_j, alpha_i> for the basis gamma_j of X_*."""
    return rd.root_coords


def phi_vee_matrix(rd: RootDatum) -> IntMatrix:
    """Entry (i, j) is <chi_j, alpha_i^vee> for the basis chi_j of X^*."""
    return rd.coroot_coords


def kappa_v(rd: RootDatum) -> int:
    return torsion_cokernel_order(phi_matrix(rd))


def rho_v(rd: RootDatum) -> int:
    return torsion_cokernel_order(phi_vee_matrix(rd))


def regular_orbit_exponents(rd: RootDatum) -> list[int]:
    """Invariant factors d_1 | ... | d_l of Phi.

    Over a field of characteristic p there are infinitely many regular
    nilpotent orbits exactly when p divides the last one.
    """
    if rd.semisimple_rank == 0:
        raise ValueError(f"{rd.label} has no roots")
    return list(smith_normal_form(phi_matrix(rd)).diag)


def coroots_dependent_mod_p(rd: RootDatum, p: int) -> bool:
    """Whether the H_alpha (alpha simple) are linearly dependent in t over F_p."""
    require_prime(p)
    return rank_mod_p(rd.coroot_coords, p) < rd.semisimple_rank


_FACTOR = re.compile(r"([A-Za-z]+)(:)?([A-Za-z0-9_]*)")


def parse_group_spec(text: str) -> RootDatum:
    """Parse a group string such as ``SL:2xPGL:3xT:1`` into a root datum."""
    data: RootDatum | None = None
    pos = 0
    n = len(text)
    if not text.strip():
        raise GroupSpecError("empty group spec", text, 0)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        start = pos
        m = _FACTOR.match(text, pos)
        if not m or not m.group(0):
            raise GroupSpecError("expected FAMILY:ARG", text, pos)
        fam, colon, arg = m.group(1), m.group(2), m.group(3)
        if fam not in FAMILIES:
            raise GroupSpecError(f"unknown family {fam!r}", text, start)
        if not colon:
            raise GroupSpecError("expected ':'", text, start + len(fam))
        arg_pos = start + len(fam) + 1
        if fam in ("sc", "ad"):
            am = re.match(r"[A-Ga-g]_?\d+", text[arg_pos:])
            if not am:
                raise GroupSpecError("expected a simple type like E6", text, arg_pos)
            try:
                t = RootSystemType.parse(am.group(0))
            except ValueError as exc:
                raise GroupSpecError(str(exc), text, arg_pos) from None
            spec = StandardGroupSpec(fam, root_type=t)
            pos = arg_pos + am.end()
        else:
            am = re.match(r"\d+", text[arg_pos:])
            if not am:
                raise GroupSpecError("expected an integer", text, arg_pos)
            try:
                spec = StandardGroupSpec(fam, int(am.group(0)))
            except ValueError as exc:
                raise GroupSpecError(str(exc), text, arg_pos) from None
            pos = arg_pos + am.end()
        d = standard_datum(spec)
        data = d if data is None else product(data, d)
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            return data
        if text[pos] != "x":
            raise GroupSpecError("expected 'x' between factors", text, pos)
        pos += 1

