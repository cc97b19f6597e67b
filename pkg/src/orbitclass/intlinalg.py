"""Exact integer matrices: Smith normal form, determinants, rank over F_p.

Everything here works on Python ints, so intermediate growth during
elimination never overflows.  Matrices in this package are small
(at most a couple of hundred rows), which is why none of the modular
or blocked SNF machinery is used.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "torsion_cokernel_order",
    "rank_mod_p",
    "determinant",
    "is_prime",
    "require_prime",
    "parse_matrix_literal",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"expected a prime, got {p!r}")
    return p


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = [[int(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        R = sum(b.rows for b in blocks)
        C = sum(b.cols for b in blocks)
        out = [[0] * C for _ in range(R)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, C)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a = self.tolist()
        bt = other.transpose().tolist()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(sum(x * y for x, y in zip(ra, cb)) for ra in a for cb in bt),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __str__(self) -> str:
        return json.dumps(self.tolist(), separators=(",", ":"))


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors with transforms satisfying ``U @ M @ V == D``."""

    diag: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    source_shape: tuple[int, int]

    def diagonal_matrix(self) -> IntMatrix:
        m, n = self.source_shape
        out = [[0] * n for _ in range(m)]
        for k, d in enumerate(self.diag):
            out[k][k] = d
        return IntMatrix.from_rows(out, n)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, src, dst, k):
    # row[dst] += k * row[src]
    if k:
        rs, rd = a[src], a[dst]
        for c in range(len(rd)):
            rd[c] += k * rs[c]


def _add_col(a, src, dst, k):
    if k:
        for r in a:
            r[dst] += k * r[src]


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form of ``M`` with unimodular ``U``, ``V``.

    The diagonal is non-negative, divisibility ordered, zeros last.
    """
    m, n = M.shape
    a = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        _swap_rows(a, t, pi)
        _swap_rows(U, t, pi)
        _swap_cols(a, t, pj)
        _swap_cols(V, t, pj)

        while True:
            piv = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    _add_row(a, t, i, -q)
                    _add_row(U, t, i, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // piv
                    _add_col(a, t, j, -q)
                    _add_col(V, t, j, -q)
                    if a[t][j]:
                        done = False
            if not done:
                # a remainder smaller than the pivot survived; move it up
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, "r")
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), j, "c")
                _, k, kind = best
                if kind == "r":
                    _swap_rows(a, t, k)
                    _swap_rows(U, t, k)
                else:
                    _swap_cols(a, t, k)
                    _swap_cols(V, t, k)
                continue
            # row and column t are clear; enforce divisibility of the rest
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(a, bad, t, 1)
            _add_row(U, bad, t, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    diag = tuple(a[k][k] for k in range(min(m, n)))
    return SmithForm(
        diag=diag,
        U=IntMatrix.from_rows(U, m),
        V=IntMatrix.from_rows(V, n),
        source_shape=(m, n),
    )


def torsion_cokernel_order(M: IntMatrix) -> int:
    """Order of the torsion subgroup of ``Z^rows / M Z^cols``."""
    return math.prod(d for d in smith_normal_form(M).diag if d != 0)


def rank_mod_p(M: IntMatrix, p: int) -> int:
    require_prime(p)
    a = [[x % p for x in r] for r in M.tolist()]
    m, n = M.shape
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def determinant(M: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if M.rows != M.cols:
        raise ValueError(f"determinant needs a square matrix, got {M.shape}")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def parse_matrix_literal(text: str) -> IntMatrix:
    """Parse ``[[1,1,0],[1,0,1]]`` style literals."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad matrix literal at position {exc.pos}: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix literal must be a list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in data for x in r):
        raise ValueError("matrix entries must be integers")
    return IntMatrix.from_rows(data)
