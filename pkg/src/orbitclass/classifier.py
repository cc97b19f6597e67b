"""Verdicts on the eight statements for split groups, the intro table, and
an audit of the implications between them.

Statements, for a split group G over a local field of characteristic p:

    (1) p is good                 (5) all nilpotent orbits are separable
    (2) p is very good            (6) the regular nilpotent orbit is separable
    (3) p does not divide kappa_v (7) there are finitely many nilpotent orbits
    (4) p does not divide rho_v   (8) Howe's conjecture holds

For split G, (5) <=> (6) <=> (7) <=> (1)+(3)+(4) and (8) <=> (1)+(3).
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .intlinalg import is_prime, require_prime
from .root_datum import (
    RootDatum,
    StandardGroupSpec,
    kappa_v,
    regular_orbit_exponents,
    rho_v,
    standard_datum,
)
from .root_system import RootSystemType, bad_primes, cartan_determinant, is_good, is_very_good

__all__ = [
    "ClassificationReport",
    "IntroTableRow",
    "AuditReport",
    "classify",
    "intro_table",
    "implication_audit",
    "sample_range",
    "table_csv",
    "table_text",
    "format_report",
    "SCOPE_NOTE",
]

SCOPE_NOTE = (
    "Verdicts assume G is split over F; the separability criterion is not "
    "evaluated for non-split forms."
)

REPORT_FIELDS = (
    "group_label",
    "p",
    "s1_good",
    "s2_very_good",
    "s3_p_not_div_kappa",
    "s4_p_not_div_rho",
    "s5_all_separable",
    "s6_regular_separable",
    "s7_finitely_many_orbits",
    "s8_howe_holds",
    "kappa_v",
    "rho_v",
    "bad_primes",
    "exponents",
)


@dataclass(frozen=True)
class ClassificationReport:
    group_label: str
    p: int
    s1_good: bool
    s2_very_good: bool
    s3_p_not_div_kappa: bool
    s4_p_not_div_rho: bool
    s5_all_separable: bool
    s6_regular_separable: bool
    s7_finitely_many_orbits: bool
    s8_howe_holds: bool
    kappa_v: int
    rho_v: int
    bad_primes: tuple[int, ...]
    exponents: tuple[int, ...]

    def statements(self) -> dict[int, bool]:
        return {
            1: self.s1_good,
            2: self.s2_very_good,
            3: self.s3_p_not_div_kappa,
            4: self.s4_p_not_div_rho,
            5: self.s5_all_separable,
            6: self.s6_regular_separable,
            7: self.s7_finitely_many_orbits,
            8: self.s8_howe_holds,
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bad_primes"] = list(self.bad_primes)
        d["exponents"] = list(self.exponents)
        return {k: d[k] for k in REPORT_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationReport":
        kw = {k: d[k] for k in REPORT_FIELDS}
        kw["bad_primes"] = tuple(kw["bad_primes"])
        kw["exponents"] = tuple(kw["exponents"])
        return cls(**kw)


_STATEMENT_TEXT = {
    1: "p is good",
    2: "p is very good",
    3: "p does not divide kappa_v",
    4: "p does not divide rho_v",
    5: "all nilpotent orbits are separable",
    6: "the regular nilpotent orbit is separable",
    7: "finitely many nilpotent orbits",
    8: "Howe's conjecture holds",
}


def format_report(r: ClassificationReport) -> str:
    bad = ",".join(map(str, r.bad_primes)) or "-"
    lines = [
        f"group      {r.group_label}",
        f"p          {r.p}",
        f"bad primes {bad}",
        f"kappa_v    {r.kappa_v}",
        f"rho_v      {r.rho_v}",
        f"exponents  {list(r.exponents)}",
    ]
    for k, v in r.statements().items():
        lines.append(f"({k}) {'yes' if v else 'no ':3}  {_STATEMENT_TEXT[k]}")
    lines.append("")
    lines.append(SCOPE_NOTE)
    return "\n".join(lines)


def classify(rd: RootDatum, p: int) -> ClassificationReport:
    require_prime(p)
    rs = rd.root_system
    kap, rho = kappa_v(rd), rho_v(rd)
    s1 = is_good(rs, p)
    s3 = kap % p != 0
    s4 = rho % p != 0
    separable = s1 and s3 and s4
    return ClassificationReport(
        group_label=rd.label,
        p=p,
        s1_good=s1,
        s2_very_good=is_very_good(rs, p),
        s3_p_not_div_kappa=s3,
        s4_p_not_div_rho=s4,
        s5_all_separable=separable,
        s6_regular_separable=separable,
        s7_finitely_many_orbits=separable,
        s8_howe_holds=s1 and s3,
        kappa_v=kap,
        rho_v=rho,
        bad_primes=tuple(sorted(bad_primes(rs))),
        exponents=tuple(regular_orbit_exponents(rd)) if rs.rank else (),
    )


# --- intro table -------------------------------------------------------------

SAMPLE_PRIMES = (2, 3, 5, 7)


def sample_range(text: str | None = None) -> range:
    """Parse ``"2..9"`` (inclusive); defaults to $ORBITCLASS_SAMPLE_RANGE or 2..9."""
    if text is None:
        text = os.environ.get("ORBITCLASS_SAMPLE_RANGE", "2..9")
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"bad sample range {text!r}, expected like 2..9")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1 or hi < lo:
        raise ValueError(f"empty or invalid sample range {text!r}")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class _RowFamily:
    label: str
    make: Callable[[int], RootDatum] | None
    min_n: int = 2
    fixed: RootDatum | None = None


def _families() -> list[_RowFamily]:
    sd = standard_datum
    return [
        _RowFamily("GL_n", lambda n: sd(StandardGroupSpec("GL", n))),
        _RowFamily("SL_n", lambda n: sd(StandardGroupSpec("SL", n))),
        _RowFamily("PGL_n", lambda n: sd(StandardGroupSpec("PGL", n))),
        _RowFamily("SO_{2n+1}", lambda n: sd(StandardGroupSpec("SOodd", 2 * n + 1))),
        # D_3 = A_3 has no bad primes, so the SO_{2n} row starts at n = 4
        _RowFamily("SO_{2n}", lambda n: sd(StandardGroupSpec("SOeven", 2 * n)), min_n=4),
        _RowFamily("Sp_{2n}", lambda n: sd(StandardGroupSpec("Sp", 2 * n))),
        _RowFamily("F_4", None, fixed=sd(StandardGroupSpec("ad", root_type=RootSystemType("F", 4)))),
        _RowFamily("G_2", None, fixed=sd(StandardGroupSpec("ad", root_type=RootSystemType("G", 2)))),
        _RowFamily("E_8", None, fixed=sd(StandardGroupSpec("ad", root_type=RootSystemType("E", 8)))),
    ]


@dataclass(frozen=True)
class IntroTableRow:
    group_label: str
    bad_primes: str
    kappa_v: str
    rho_v: str
    nHwC: str
    INO: str
    sampled_n: tuple[int, ...] = ()
    sampled_primes: tuple[int, ...] = SAMPLE_PRIMES

    COLUMNS = ("G", "bad p", "kappa_v(G)", "rho_v(G)", "nHwC", "INO")

    def cells(self) -> list[str]:
        return [self.group_label, self.bad_primes, self.kappa_v, self.rho_v, self.nHwC, self.INO]

    def to_dict(self) -> dict:
        return {
            "group_label": self.group_label,
            "bad_primes": self.bad_primes,
            "kappa_v": self.kappa_v,
            "rho_v": self.rho_v,
            "nHwC": self.nHwC,
            "INO": self.INO,
            "sampled_n": list(self.sampled_n),
            "sampled_primes": list(self.sampled_primes),
        }


def _set_text(s: Iterable[int]) -> str:
    s = sorted(s)
    return ",".join(map(str, s)) if s else "-"


def _describe_int(values: dict[int, int]) -> str:
    vals = set(values.values())
    if len(vals) == 1:
        return str(vals.pop())
    if all(v == n for n, v in values.items()):
        return "n"
    raise ValueError(f"no pattern for integer column: {values}")


def _describe_primes(sets: dict[int, frozenset[int]], primes: Sequence[int]) -> str:
    distinct = set(sets.values())
    if len(distinct) == 1:
        return _set_text(distinct.pop())
    if all(s == frozenset(p for p in primes if n % p == 0) for n, s in sets.items()):
        return "p|n"
    raise ValueError(f"no pattern for prime column: {sets}")


def _row(label: str, data: dict[int, RootDatum], primes: Sequence[int], sampled) -> IntroTableRow:
    bad, kap, rho, nhwc, ino = {}, {}, {}, {}, {}
    for n, rd in data.items():
        reports = [classify(rd, p) for p in primes]
        bad[n] = frozenset(bad_primes(rd.root_system))
        kap[n] = reports[0].kappa_v
        rho[n] = reports[0].rho_v
        nhwc[n] = frozenset(r.p for r in reports if not r.s8_howe_holds)
        ino[n] = frozenset(r.p for r in reports if not r.s7_finitely_many_orbits)
    return IntroTableRow(
        group_label=label,
        bad_primes=_describe_primes(bad, primes),
        kappa_v=_describe_int(kap),
        rho_v=_describe_int(rho),
        nHwC=_describe_primes(nhwc, primes),
        INO=_describe_primes(ino, primes),
        sampled_n=tuple(sampled),
        sampled_primes=tuple(primes),
    )


def intro_table(ns: Iterable[int] | None = None, primes: Sequence[int] = SAMPLE_PRIMES) -> list[IntroTableRow]:
    """The nine rows GL_n ... E_8.  Symbolic entries ("n", "p|n") are read
    off from concrete data for every sampled n and p."""
    ns = list(sample_range() if ns is None else ns)
    if not all(is_prime(p) for p in primes):
        raise ValueError("sample primes must be prime")
    rows = []
    for fam in _families():
        if fam.fixed is not None:
            rows.append(_row(fam.label, {0: fam.fixed}, primes, ()))
            continue
        used = [n for n in ns if n >= fam.min_n]
        if not used:
            raise ValueError(f"sample range has no n >= {fam.min_n} for {fam.label}")
        rows.append(_row(fam.label, {n: fam.make(n) for n in used}, primes, used))
    return rows


def table_csv(rows: Sequence[IntroTableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(IntroTableRow.COLUMNS)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def table_text(rows: Sequence[IntroTableRow]) -> str:
    grid = [list(IntroTableRow.COLUMNS)] + [r.cells() for r in rows]
    widths = [max(len(row[k]) for row in grid) for k in range(len(grid[0]))]
    lines = []
    for i, row in enumerate(grid):
        lines.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


# --- implication audit ---------------------------------------------------------

WITNESSES = {
    "(1)+(3) does not imply (4)": lambda s: s[1] and s[3] and not s[4],
    "(1)+(3)+(4) does not imply (2)": lambda s: s[1] and s[3] and s[4] and not s[2],
    "(1)+(4) does not imply (3)": lambda s: s[1] and s[4] and not s[3],
    "(3)+(4) does not imply (1)": lambda s: s[3] and s[4] and not s[1],
}


@dataclass
class AuditReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    witnesses: dict[str, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def witnessed(self, name: str) -> bool:
        return bool(self.witnesses.get(name))


def implication_audit(corpus: Iterable[tuple[RootDatum, int]]) -> AuditReport:
    """Check the general implications on ``corpus`` and collect examples of
    the non-implications."""
    audit = AuditReport()
    for rd, p in corpus:
        r = classify(rd, p)
        s = r.statements()
        tag = f"({rd.label}, p={p})"
        audit.checked += 1
        if s[2] and not (s[1] and s[3] and s[4]):
            audit.violations.append(f"{tag}: very good but not (1)+(3)+(4)")
        if rd.semisimple_rank:
            det = cartan_determinant(rd.root_system)
            if not s[3] and det % p:
                audit.violations.append(f"{tag}: p | kappa_v but p does not divide det Cartan = {det}")
        if s[5] != s[6] or s[6] != (s[1] and s[3] and s[4]) or s[7] != s[5]:
            audit.violations.append(f"{tag}: separability equivalences broken")
        if s[8] != (s[1] and s[3]):
            audit.violations.append(f"{tag}: Howe equivalence broken")
        if not s[8] and s[7]:
            audit.violations.append(f"{tag}: Howe fails but orbits finite")
        for name, pred in WITNESSES.items():
            if pred(s):
                audit.witnesses.setdefault(name, []).append(tag)
    return audit
