"""Irreducible root systems A_n ... G_2, their products, heights and primes.

Cartan convention, used by every module in the package::

    cartan[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)

Simple roots are numbered as in Bourbaki.  Roots are tuples of
coefficients with respect to the simple roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .intlinalg import IntMatrix, determinant, require_prime

Root = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        f, n = self.family, self.rank
        if f in _MIN_RANK:
            ok = n >= _MIN_RANK[f]
        elif f in _FIXED_RANKS:
            ok = n in _FIXED_RANKS[f]
        else:
            raise ValueError(f"unknown root system family {f!r}")
        if not ok:
            raise ValueError(f"invalid rank {n} for type {f}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def isomorphism_class(self) -> "RootSystemType":
        """D_3 is A_3; every other allowed label is already canonical."""
        if self.family == "D" and self.rank == 3:
            return RootSystemType("A", 3)
        return self

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self) -> str:
        return self.label


def parse_types(text: str) -> list[RootSystemType]:
    """``"A3xB2"`` -> [A3, B2]."""
    parts = [p for p in re.split(r"[x×*]", text.strip()) if p.strip()]
    if not parts:
        raise ValueError("empty root system type")
    return [RootSystemType.parse(p) for p in parts]


def _simple_root_vectors(t: RootSystemType) -> list[list[int]]:
    # Bourbaki realisations, scaled by 2 to stay integral
    f, n = t.family, t.rank

    def e(i, dim):
        v = [0] * dim
        v[i] = 2
        return v

    def sub(u, v):
        return [a - b for a, b in zip(u, v)]

    def add(u, v):
        return [a + b for a, b in zip(u, v)]

    if f == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if f in "BCD":
        chain = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        if f == "B":
            return chain + [e(n - 1, n)]
        if f == "C":
            return chain + [[2 * x for x in e(n - 1, n)]]
        return chain + [add(e(n - 2, n), e(n - 1, n))]
    if f == "G":
        return [[2, -2, 0], [-4, 2, 2]]
    if f == "F":
        return [
            sub(e(1, 4), e(2, 4)),
            sub(e(2, 4), e(3, 4)),
            e(3, 4),
            [1, -1, -1, -1],
        ]
    # E_8 in Bourbaki's coordinates; E_6 and E_7 are the first nodes
    e8 = [
        [1, -1, -1, -1, -1, -1, -1, 1],
        add(e(0, 8), e(1, 8)),
        sub(e(1, 8), e(0, 8)),
        sub(e(2, 8), e(1, 8)),
        sub(e(3, 8), e(2, 8)),
        sub(e(4, 8), e(3, 8)),
        sub(e(5, 8), e(4, 8)),
        sub(e(6, 8), e(5, 8)),
    ]
    return e8[:n]


@lru_cache(maxsize=None)
def cartan_matrix(t: RootSystemType) -> IntMatrix:
    vecs = _simple_root_vectors(t)

    def ip(u, v):
        return sum(a * b for a, b in zip(u, v))

    rows = []
    for i, ai in enumerate(vecs):
        row = []
        for aj in vecs:
            val = Fraction(2 * ip(ai, aj), ip(ai, ai))
            assert val.denominator == 1
            row.append(int(val))
        rows.append(row)
    return IntMatrix.from_rows(rows)


def _generate_positive_roots(cartan: IntMatrix) -> list[Root]:
    n = cartan.rows
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        seen = set()
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - r a_i .. beta + q a_i, r - q = <beta, a_i^vee>
                pairing = sum(beta[j] * cartan[i, j] for j in range(n))
                r = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        r += 1
                    else:
                        break
                q = r - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in seen:
                        seen.add(up)
                        nxt.append(up)
        nxt.sort()
        known.update(nxt)
        out.extend(nxt)
        layer = nxt
    return out


@dataclass(frozen=True)
class RootSystem:
    components: tuple[RootSystemType, ...]
    cartan: IntMatrix
    positive_roots: tuple[Root, ...]
    offsets: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan.rows

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def node_order(self) -> tuple[int, ...]:
        return tuple(range(self.rank))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        n = self.rank
        return tuple(
            (i, j) for i in range(n) for j in range(i + 1, n) if self.cartan[i, j] != 0
        )

    @property
    def label(self) -> str:
        return "x".join(c.label for c in self.components) or "0"

    @property
    def max_height(self) -> int:
        return max((sum(r) for r in self.positive_roots), default=0)

    def component_of(self, node: int) -> RootSystemType:
        for c, off in zip(self.components, self.offsets):
            if off <= node < off + c.rank:
                return c
        raise IndexError(node)

    def __contains__(self, root: Root) -> bool:
        return tuple(root) in self._root_set

    @property
    def _root_set(self) -> frozenset[Root]:
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_rs"]
        except KeyError:
            s = frozenset(self.positive_roots)
            object.__setattr__(self, "_rs", s)
            return s

    def __str__(self) -> str:
        return self.label


def build_root_system(types: Iterable[RootSystemType] | RootSystemType | str) -> RootSystem:
    if isinstance(types, str):
        types = parse_types(types)
    elif isinstance(types, RootSystemType):
        types = [types]
    types = tuple(types)
    return _build(types)


@lru_cache(maxsize=None)
def _build(types: tuple[RootSystemType, ...]) -> RootSystem:
    cartan = IntMatrix.block_diagonal([cartan_matrix(t) for t in types])
    offsets = []
    off = 0
    for t in types:
        offsets.append(off)
        off += t.rank
    roots = _generate_positive_roots(cartan)
    return RootSystem(types, cartan, tuple(roots), tuple(offsets))


def height(root: Sequence[int]) -> int:
    return sum(root)


def layers_by_height(rs: RootSystem) -> dict[int, list[Root]]:
    out: dict[int, list[Root]] = {}
    for r in rs.positive_roots:
        out.setdefault(sum(r), []).append(r)
    return {h: sorted(v) for h, v in sorted(out.items())}


def cartan_determinant(rs: RootSystem) -> int:
    return determinant(rs.cartan)


def _component_bad_primes(t: RootSystemType) -> set[int]:
    f = t.isomorphism_class.family
    if f == "A":
        return set()
    bad = {2}
    if f in "EFG":
        bad.add(3)
    if t.family == "E" and t.rank == 8:
        bad.add(5)
    return bad


def bad_primes(rs: RootSystem) -> set[int]:
    out: set[int] = set()
    for c in rs.components:
        out |= _component_bad_primes(c)
    return out


def is_good(rs: RootSystem, p: int) -> bool:
    require_prime(p)
    return p not in bad_primes(rs)


def is_very_good(rs: RootSystem, p: int) -> bool:
    if not is_good(rs, p):
        return False
    for c in rs.components:
        c = c.isomorphism_class
        if c.family == "A" and (c.rank + 1) % p == 0:
            return False
    return True
