"""orbitclass command line.

    orbitclass classify --group SL:5 --prime 5 [--format text|json]
    orbitclass table [--format text|csv|json]
    orbitclass verify-appendix [--type E8 --prime 5] [--format text|json]
    orbitclass snf --matrix "[[1,1,0],[1,0,1],[0,1,1]]" [--format text|json]
    orbitclass roots --type E8 [--format text|json]

Exit status: 0 on success, 1 when an applicable verification fails, 2 on a
usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .classifier import classify, intro_table, sample_range, table_csv, table_text, format_report
from .intlinalg import is_prime, parse_matrix_literal, smith_normal_form
from .root_datum import GroupSpecError, parse_group_spec
from .root_system import RootSystemType, build_root_system, layers_by_height
from .verifier import (
    SWEEP_CELLS,
    appendix_json,
    appendix_sweep,
    format_appendix_table,
    verify_appendix_theorem,
)

COMMANDS = ("classify", "table", "verify-appendix", "snf", "roots")
FORMATS = {
    "classify": ("text", "json"),
    "table": ("text", "csv", "json"),
    "verify-appendix": ("text", "json"),
    "snf": ("text", "json"),
    "roots": ("text", "json"),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    group_spec: str | None = None
    prime: int | None = None
    type_label: str | None = None
    matrix: str | None = None
    format: str = "text"
    output: str | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS[self.command]:
            allowed = ", ".join(FORMATS[self.command])
            raise UsageError(f"{self.command} supports --format {allowed}")
        if self.prime is not None and not is_prime(self.prime):
            raise UsageError(f"--prime {self.prime} is not prime")
        if self.command == "classify" and (self.group_spec is None or self.prime is None):
            raise UsageError("classify needs --group and --prime")
        if self.command == "snf" and self.matrix is None:
            raise UsageError("snf needs --matrix")
        if self.command == "roots" and self.type_label is None:
            raise UsageError("roots needs --type")
        if self.command == "verify-appendix" and (self.type_label is None) != (self.prime is None):
            raise UsageError("verify-appendix takes both --type and --prime, or neither")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitclass",
        description="Nilpotent-orbit invariants of split reductive groups.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--group", dest="group_spec", help="group string, e.g. SL:2xPGL:3xT:1")
    parser.add_argument("--prime", type=int)
    parser.add_argument("--type", dest="type_label", help="root system type, e.g. E8")
    parser.add_argument("--matrix", help="integer matrix literal, e.g. [[2,1],[0,3]]")
    parser.add_argument("--format", default="text", choices=("text", "json", "csv"))
    parser.add_argument("--output", help="write to this file instead of stdout")
    return parser


def _cmd_classify(cfg: CliConfig) -> tuple[int, str]:
    try:
        rd = parse_group_spec(cfg.group_spec)
    except GroupSpecError as exc:
        raise UsageError(str(exc)) from None
    report = classify(rd, cfg.prime)
    text = report.to_json() if cfg.format == "json" else format_report(report)
    return 0, text


def _cmd_table(cfg: CliConfig) -> tuple[int, str]:
    try:
        ns = sample_range()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = intro_table(ns)
    if cfg.format == "csv":
        return 0, table_csv(rows).rstrip("\n")
    if cfg.format == "json":
        return 0, json.dumps([r.to_dict() for r in rows], indent=2)
    return 0, table_text(rows) + f"\n\nsampled n in {ns.start}..{ns.stop - 1}, p in 2,3,5,7"


def _cmd_verify(cfg: CliConfig) -> tuple[int, str]:
    if cfg.type_label is None:
        reports = appendix_sweep(SWEEP_CELLS)
    else:
        try:
            t = RootSystemType.parse(cfg.type_label)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if t.isomorphism_class.family == "A":
            raise UsageError("type A has no bad primes; the appendix check does not apply")
        reports = [verify_appendix_theorem(t, cfg.prime)]
    failed = any(r.applicable and not r.passed for r in reports)
    text = appendix_json(reports) if cfg.format == "json" else format_appendix_table(reports)
    return (1 if failed else 0), text


def _cmd_snf(cfg: CliConfig) -> tuple[int, str]:
    try:
        m = parse_matrix_literal(cfg.matrix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = list(smith_normal_form(m).diag)
    if cfg.format == "json":
        return 0, json.dumps({"d": d})
    return 0, f"d = {json.dumps(d)}"


def _cmd_roots(cfg: CliConfig) -> tuple[int, str]:
    try:
        rs = build_root_system(cfg.type_label)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    layers = {h: len(v) for h, v in layers_by_height(rs).items()}
    if cfg.format == "json":
        return 0, json.dumps(
            {"type": rs.label, "positive_roots": len(rs.positive_roots),
             "layers": [[h, n] for h, n in layers.items()]},
            indent=2,
        )
    lines = [f"{rs.label}: {len(rs.positive_roots)} positive roots, max height {rs.max_height}",
             "height  dim"]
    lines += [f"{h:>6}  {n}" for h, n in layers.items()]
    return 0, "\n".join(lines)


_DISPATCH = {
    "classify": _cmd_classify,
    "table": _cmd_table,
    "verify-appendix": _cmd_verify,
    "snf": _cmd_snf,
    "roots": _cmd_roots,
}


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        # argparse has already printed usage
        return 0 if exc.code == 0 else 2
    try:
        cfg = CliConfig(**vars(ns))
        code, text = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"orbitclass: error: {exc}", file=stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    if code:
        print("orbitclass: verification failed", file=stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
