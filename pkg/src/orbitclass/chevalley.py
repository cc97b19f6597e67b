"""Positive nilradicals with explicit structure constants.

Simply-laced types use the sign-function construction: with

    f(i, j) = -1 if i, j are joined and i < j;  1 if i == j;  0 otherwise,

extended bi-additively to the root lattice, the bracket of positive root
vectors is ``[E_a, E_b] = (-1)^f(a, b) E_{a+b}`` when ``a + b`` is a root
and zero otherwise.  Types B, C, F_4 and G_2 are obtained as fixed points of
a diagram automorphism of a simply-laced algebra:

    B_n <- D_{n+1},  C_n <- A_{2n-1},  F_4 <- E_6,  G_2 <- D_4.

Elements of the nilradical are dicts ``{root: coefficient}`` over the
ambient root vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping

from .intlinalg import IntMatrix, rank_mod_p
from .root_datum import RootDatum
from .root_system import (
    Root,
    RootSystem,
    RootSystemType,
    build_root_system,
    layers_by_height,
)

Vector = dict[Root, int]

__all__ = [
    "ChevalleyError",
    "SimplyLacedAlgebra",
    "FoldingAutomorphism",
    "GradedNilAlgebra",
    "build_simply_laced",
    "build_folding",
    "folding_for",
    "graded_algebra",
    "ad_X_matrix",
    "torus_ad_X_matrix",
    "stacked_ad_X_rank",
    "format_vector",
]


class ChevalleyError(RuntimeError):
    """A structure-constant or folding check failed (a convention bug)."""


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def format_vector(v: Mapping[Root, int]) -> str:
    """``+E[1,1,0,1] -E[0,1,1,1]``; coefficients other than 1 are written out."""
    parts = []
    for r in sorted(v):
        c = v[r]
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{'+' if c > 0 else '-'}{mag}E[{','.join(map(str, r))}]")
    return " ".join(parts) or "0"


@dataclass(frozen=True, eq=False)
class SimplyLacedAlgebra:
    root_system: RootSystem
    sign_fn_table: tuple[tuple[int, ...], ...]

    def f(self, a: Root, b: Root) -> int:
        t = self.sign_fn_table
        return sum(
            ai * bj * t[i][j]
            for i, ai in enumerate(a) if ai
            for j, bj in enumerate(b) if bj
        )

    @cached_property
    def constants(self) -> dict[tuple[Root, Root], int]:
        """Nonzero N_{a,b}, keyed by pairs of positive roots."""
        rs = self.root_system
        out = {}
        for a in rs.positive_roots:
            for b in rs.positive_roots:
                if _add(a, b) in rs:
                    out[a, b] = -1 if self.f(a, b) % 2 else 1
        return out

    @cached_property
    def _partners(self) -> dict[Root, list[Root]]:
        out: dict[Root, list[Root]] = {r: [] for r in self.root_system.positive_roots}
        for a, b in self.constants:
            out[a].append(b)
        return out

    def c(self, a: Root, b: Root) -> int:
        """Structure constant N_{a,b} with [E_a, E_b] = N_{a,b} E_{a+b}."""
        return self.constants.get((a, b), 0)

    def bracket(self, u: Mapping[Root, int], v: Mapping[Root, int]) -> Vector:
        out: Vector = {}
        for a, x in u.items():
            for b, y in v.items():
                k = self.c(a, b)
                if k:
                    s = _add(a, b)
                    out[s] = out.get(s, 0) + k * x * y
        return {r: x for r, x in out.items() if x}

    def check_antisymmetry(self) -> None:
        roots = self.root_system.positive_roots
        for a, b in itertools.combinations(roots, 2):
            if self.c(a, b) != -self.c(b, a):
                raise ChevalleyError(f"antisymmetry fails for {a}, {b}")

    def check_jacobi(self) -> int:
        """Check Jacobi on every triple of positive roots with a root sum.

        Triples without a root sum contribute zero.  When a + b + g is a
        root some pair among them already sums to a root (their inner
        products add up to -2), so enumerating a, then b with a + b a root,
        then g reaches every relevant triple up to order.  Returns the
        number of triples checked.
        """
        c = self.c
        partners = self._partners
        checked = 0
        for a in self.root_system.positive_roots:
            for b in partners[a]:
                ab = _add(a, b)
                for g in partners[ab]:
                    bg = _add(b, g)
                    ga = _add(g, a)
                    total = c(a, b) * c(ab, g) + c(b, g) * c(bg, a) + c(g, a) * c(ga, b)
                    if total:
                        raise ChevalleyError(f"Jacobi fails for {a}, {b}, {g}")
                    checked += 1
        return checked


def _sign_table(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    n = rs.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(1)
            elif i < j and rs.cartan[i, j] != 0:
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


def build_simply_laced(rs: RootSystem) -> SimplyLacedAlgebra:
    if not all(t.simply_laced for t in rs.components):
        raise ValueError(f"{rs.label} is not simply laced")
    return _simply_laced(rs)


@lru_cache(maxsize=None)
def _simply_laced(rs: RootSystem) -> SimplyLacedAlgebra:
    alg = SimplyLacedAlgebra(rs, _sign_table(rs))
    alg.check_antisymmetry()
    alg.check_jacobi()
    return alg


# --- foldings --------------------------------------------------------------


def folding_for(target: RootSystemType) -> tuple[RootSystemType, tuple[int, ...]]:
    """Ambient type and node permutation (0-based, Bourbaki) folding onto ``target``."""
    f, n = target.family, target.rank
    if f == "B":
        amb = RootSystemType("D", n + 1)
        perm = list(range(n + 1))
        perm[n - 1], perm[n] = n, n - 1
    elif f == "C":
        amb = RootSystemType("A", 2 * n - 1)
        perm = [2 * n - 2 - i for i in range(2 * n - 1)]
    elif f == "G":
        amb = RootSystemType("D", 4)
        perm = [2, 1, 3, 0]  # outer nodes 1 -> 3 -> 4 -> 1
    elif f == "F":
        amb = RootSystemType("E", 6)
        perm = [5, 1, 4, 3, 2, 0]
    else:
        raise ValueError(f"type {target} is not obtained by folding")
    return amb, tuple(perm)


def _permutation_order(perm: tuple[int, ...]) -> int:
    order = 1
    cur = list(perm)
    while cur != list(range(len(perm))):
        cur = [perm[i] for i in cur]
        order += 1
    return order


@dataclass(frozen=True, eq=False)
class FoldingAutomorphism:
    ambient: SimplyLacedAlgebra
    node_permutation: tuple[int, ...]
    order: int
    generator_signs: tuple[int, ...]
    signed_action: Mapping[Root, tuple[Root, int]] = field(repr=False)

    def permute(self, root: Root) -> Root:
        out = [0] * len(root)
        for i, a in enumerate(root):
            out[self.node_permutation[i]] = a
        return tuple(out)

    def apply(self, v: Mapping[Root, int]) -> Vector:
        out: Vector = {}
        for r, x in v.items():
            img, s = self.signed_action[r]
            out[img] = out.get(img, 0) + s * x
        return {r: x for r, x in out.items() if x}

    def verify(self) -> None:
        alg = self.ambient
        cartan = alg.root_system.cartan
        n = cartan.rows
        pi = self.node_permutation
        for i in range(n):
            for j in range(n):
                if cartan[pi[i], pi[j]] != cartan[i, j]:
                    raise ChevalleyError("node permutation is not a diagram automorphism")
        roots = alg.root_system.positive_roots
        act = self.signed_action
        for a in roots:
            for b in roots:
                k = alg.c(a, b)
                if not k:
                    continue
                ia, sa = act[a]
                ib, sb = act[b]
                img, s = act[_add(a, b)]
                # sigma[E_a, E_b] == [sigma E_a, sigma E_b]
                if img != _add(ia, ib) or k * s != sa * sb * alg.c(ia, ib):
                    raise ChevalleyError(f"sigma is not an automorphism on {a}, {b}")
        for a in roots:
            r, sign = a, 1
            for _ in range(self.order):
                r, s = act[r]
                sign *= s
            if r != a or sign != 1:
                raise ChevalleyError(f"sigma^{self.order} != id on E_{a}")


def _signed_action(alg: SimplyLacedAlgebra, perm, gen_signs) -> dict[Root, tuple[Root, int]]:
    rs = alg.root_system
    n = rs.rank

    def permute(root):
        out = [0] * n
        for i, a in enumerate(root):
            out[perm[i]] = a
        return tuple(out)

    act: dict[Root, tuple[Root, int]] = {}
    for k, a in enumerate(rs.positive_roots):
        if k < n:
            act[a] = (permute(a), gen_signs[k])
            continue
        # E_a = c(a_i, a')^{-1} [E_i, E_a'] along the lowest-index simple root i
        i = next(i for i in range(n) if a[i] and _sub(a, rs.simple_roots[i]) in rs)
        ai = rs.simple_roots[i]
        rest = _sub(a, ai)
        img_i, s_i = act[ai]
        img_r, s_r = act[rest]
        sign = alg.c(ai, rest) * s_i * s_r * alg.c(img_i, img_r)
        act[a] = (permute(a), sign)
    return act


def build_folding(ambient_type: RootSystemType, target: RootSystemType) -> FoldingAutomorphism:
    amb, perm = folding_for(target)
    if amb != ambient_type:
        raise ValueError(f"{target} is folded from {amb}, not {ambient_type}")
    return _folding(target)


@lru_cache(maxsize=None)
def _folding(target: RootSystemType) -> FoldingAutomorphism:
    amb, perm = folding_for(target)
    alg = build_simply_laced(build_root_system(amb))
    order = _permutation_order(perm)
    n = len(perm)
    last_error = None
    # all-plus on generators first, then the remaining sign patterns
    for signs in itertools.product((1, -1), repeat=n):
        sigma = FoldingAutomorphism(
            ambient=alg,
            node_permutation=perm,
            order=order,
            generator_signs=signs,
            signed_action=_signed_action(alg, perm, signs),
        )
        try:
            sigma.verify()
        except ChevalleyError as exc:
            last_error = exc
            continue
        return sigma
    raise ChevalleyError(f"no consistent sign choice for folding onto {target}: {last_error}")


# --- graded algebras --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedNilAlgebra:
    """Height-graded positive nilradical with a fixed basis per layer.

    For folded algebras each basis vector is the sum over a sigma-orbit,
    sum_k sigma^k(E_r), with r the lexicographically smallest root of
    the orbit, so every basis vector has coefficient +1 on its representative.
    """

    kind: str
    target: RootSystemType
    ambient: SimplyLacedAlgebra
    folding: FoldingAutomorphism | None
    layers: Mapping[int, tuple[Vector, ...]]

    @property
    def heights(self) -> list[int]:
        return sorted(self.layers)

    @property
    def max_height(self) -> int:
        return max(self.layers)

    def dim(self, h: int) -> int:
        return len(self.layers.get(h, ()))

    @property
    def dims(self) -> list[int]:
        return [self.dim(h) for h in self.heights]

    @property
    def X(self) -> Vector:
        out: Vector = {}
        for v in self.layers[1]:
            for r, x in v.items():
                out[r] = out.get(r, 0) + x
        return out

    def basis_strings(self, h: int) -> list[str]:
        return [format_vector(v) for v in self.layers[h]]

    def coordinates(self, h: int, w: Mapping[Root, int]) -> list[int]:
        """Coordinates of ``w`` in the layer-``h`` basis; raises if ``w`` is
        not in the span."""
        basis = self.layers.get(h, ())
        coords = []
        rebuilt: Vector = {}
        for b in basis:
            rep = min(b)
            k = w.get(rep, 0) * b[rep]  # b[rep] is +-1
            coords.append(k)
            for r, x in b.items():
                rebuilt[r] = rebuilt.get(r, 0) + k * x
        rebuilt = {r: x for r, x in rebuilt.items() if x}
        w = {r: x for r, x in w.items() if x}
        if rebuilt != w:
            raise ChevalleyError(f"vector {format_vector(w)} is not in layer {h}")
        return coords


def _plain_layers(rs: RootSystem) -> dict[int, tuple[Vector, ...]]:
    return {h: tuple({r: 1} for r in roots) for h, roots in layers_by_height(rs).items()}


def _fixed_layers(sigma: FoldingAutomorphism) -> dict[int, tuple[Vector, ...]]:
    out: dict[int, tuple[Vector, ...]] = {}
    for h, roots in layers_by_height(sigma.ambient.root_system).items():
        covered: set[Root] = set()
        basis = []
        for r in roots:
            if r in covered:
                continue
            v: Vector = {r: 1}
            cur, sign = sigma.signed_action[r]
            orbit = [r]
            while cur != r:
                v[cur] = sign
                orbit.append(cur)
                nxt, s = sigma.signed_action[cur]
                cur, sign = nxt, sign * s
            covered.update(orbit)
            if sign == 1:
                basis.append(v)
            # sign == -1: sigma^m E_r = -E_r, the orbit has no fixed vector
        if basis:
            out[h] = tuple(basis)
    return out


def graded_algebra(target: RootSystemType | str) -> GradedNilAlgebra:
    if isinstance(target, str):
        target = RootSystemType.parse(target)
    return _graded(target)


@lru_cache(maxsize=None)
def _graded(target: RootSystemType) -> GradedNilAlgebra:
    if target.simply_laced:
        rs = build_root_system(target)
        alg = build_simply_laced(rs)
        return GradedNilAlgebra("plain", target, alg, None, _plain_layers(rs))
    amb, _ = folding_for(target)
    sigma = build_folding(amb, target)
    layers = _fixed_layers(sigma)
    expected = {h: len(v) for h, v in layers_by_height(build_root_system(target)).items()}
    got = {h: len(v) for h, v in layers.items()}
    if got != expected:
        raise ChevalleyError(f"fixed layers of {amb} have dims {got}, {target} needs {expected}")
    alg = GradedNilAlgebra("folded", target, sigma.ambient, sigma, layers)
    # X is sigma-fixed, so [X, .] must map fixed layers into fixed layers
    for h in alg.heights[:-1]:
        ad_X_matrix(alg, h)
    return alg


def ad_X_matrix(alg: GradedNilAlgebra, h: int) -> IntMatrix:
    """Matrix of [X, .] : layer h -> layer h+1; rows index the target basis."""
    if not 1 <= h < alg.max_height:
        raise ValueError(f"height {h} out of range 1..{alg.max_height - 1}")
    X = alg.X
    cols = [alg.coordinates(h + 1, alg.ambient.bracket(X, v)) for v in alg.layers[h]]
    return IntMatrix.from_rows(cols, alg.dim(h + 1)).T


def stacked_ad_X_rank(alg: GradedNilAlgebra, p: int) -> tuple[int, int]:
    """(rank over F_p, dim n_{>=2}) for [X, .] : n -> n_{>=2}.

    The map is block-diagonal in the height grading, so its rank is the sum
    of the layer ranks.
    """
    rank = sum(rank_mod_p(ad_X_matrix(alg, h), p) for h in alg.heights[:-1])
    return rank, sum(alg.dim(h) for h in alg.heights if h >= 2)


def torus_ad_X_matrix(rd: RootDatum) -> IntMatrix:
    """Matrix of t -> n_1, H -> [H, X], in the basis of X_*(T) (tensor F) and
    the simple root vectors E_alpha.

    [H, E_alpha] = <alpha, H> E_alpha, so column j holds the values of the
    simple roots on the j-th basis cocharacter.  The map H -> [X, H] is the
    negative of this one and has the same rank and invariant factors.
    """
    n, r = rd.semisimple_rank, rd.lattice_rank
    chars = rd.root_coords
    cols = []
    for j in range(r):
        H = [int(k == j) for k in range(r)]
        bracket = {i: sum(x * y for x, y in zip(chars.row(i), H)) for i in range(n)}
        cols.append([bracket[i] for i in range(n)])
    return IntMatrix.from_rows(cols, n).T if r else IntMatrix.zeros(n, 0)
