"""Matrix files, JSON reports and DOT export.

Matrix file format: a first line ``rank n`` followed by n lines of n
whitespace-separated tokens, each a positive integer or ``inf``.
Generators are 1-indexed on every textual surface (words, pairs, DOT
labels) and 0-indexed internally.  All emitters are deterministic:
identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Sequence

from .braid_graph import BraidGraph, PairClassPartition
from .core import CoxeterMatrix, Element, INFINITY, Word, validate_matrix
from .verify import CycleParityReport, StepResult, Verdict


class MatrixFileError(ValueError):
    pass


def parse_matrix_text(text: str) -> CoxeterMatrix:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MatrixFileError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "rank":
        raise MatrixFileError(f"expected 'rank n' header, got {lines[0]!r}")
    try:
        rank = int(header[1])
    except ValueError as exc:
        raise MatrixFileError(f"bad rank {header[1]!r}") from exc
    if rank < 0:
        raise MatrixFileError("rank must be >= 0")
    if len(lines) != rank + 1:
        raise MatrixFileError(f"expected {rank} matrix rows, got {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        tokens = line.split()
        if len(tokens) != rank:
            raise MatrixFileError(f"expected {rank} entries in row {line!r}")
        row: list[int | float] = []
        for token in tokens:
            if token == "inf":
                row.append(INFINITY)
            else:
                try:
                    row.append(int(token))
                except ValueError as exc:
                    raise MatrixFileError(f"bad entry {token!r}") from exc
        rows.append(row)
    return validate_matrix(rows)


def matrix_to_text(matrix: CoxeterMatrix) -> str:
    lines = [f"rank {matrix.rank}"]
    for row in matrix.entries:
        lines.append(" ".join("inf" if v == INFINITY else str(v) for v in row))
    return "\n".join(lines) + "\n"


def entry_token(value: int | float) -> int | str:
    return "inf" if value == INFINITY else int(value)


def matrix_to_json(matrix: CoxeterMatrix) -> dict:
    return {
        "rank": matrix.rank,
        "entries": [[entry_token(v) for v in row] for row in matrix.entries],
    }


def surface_word(word: Word) -> list[int]:
    """0-indexed internal word -> 1-indexed surface word."""
    return [letter + 1 for letter in word]


def parse_surface_word(text: str, matrix: CoxeterMatrix) -> Word:
    """Parse a 1-indexed word like '2 1 2 4' (empty string = identity)."""
    tokens = text.split()
    word = []
    for token in tokens:
        try:
            letter = int(token)
        except ValueError as exc:
            raise ValueError(f"bad word letter {token!r}") from exc
        if not 1 <= letter <= matrix.rank:
            raise ValueError(f"letter {letter} out of range 1..{matrix.rank}")
        word.append(letter - 1)
    return tuple(word)


def element_to_json(element: Element, source: Word | None = None) -> dict:
    out = {}
    if source is not None:
        out["word"] = surface_word(source)
    out["canonical"] = surface_word(element.word)
    out["length"] = element.length
    return out


def partition_to_json(partition: PairClassPartition) -> dict:
    classes = []
    for cls in partition.classes:
        classes.append(
            {
                "id": cls.index,
                "pairs": [[s + 1, t + 1] for (s, t) in cls.pairs],
                "status": "exact" if cls.exact else f"provisional_radius_{cls.radius}",
                "witnesses": {
                    f"{s + 1},{t + 1}": surface_word(q.word)
                    for (s, t), q in sorted(cls.witnesses.items())
                },
            }
        )
    return {"classes": classes, "exact": partition.exact}


def graph_to_json(graph: BraidGraph, partition: PairClassPartition) -> dict:
    return {
        "matrix": matrix_to_json(graph.matrix),
        "element": element_to_json(graph.element),
        "mode": graph.mode,
        "expression_length": graph.expression_length,
        "vertices": [surface_word(w) for w in graph.vertices],
        "arcs": [
            {
                "from": arc.source,
                "to": arc.target,
                "pair": [arc.pair[0] + 1, arc.pair[1] + 1],
                "position": arc.position,
                "class": arc.color,
            }
            for arc in graph.arcs
        ],
        "classes": partition_to_json(partition)["classes"],
    }


def parity_report_to_json(report: CycleParityReport) -> dict:
    cycles = []
    for index, cycle in enumerate(report.cycles):
        checks = [
            {
                "class": check.class_id,
                "op_class": check.op_class_id,
                "count": check.count,
                "op_count": check.op_count,
                "verdict": check.verdict.value,
            }
            for check in report.checks
            if check.cycle_index == index
        ]
        cycles.append(
            {
                "index": index,
                "arcs": list(cycle),
                "length": len(cycle),
                "checks": checks,
                "verdict": max(
                    (c.verdict for c in report.checks if c.cycle_index == index),
                    key=_verdict_rank,
                    default=Verdict.PASS,
                ).value,
            }
        )
    return {
        "mode": report.graph_mode,
        "exploratory": report.exploratory,
        "exact_partition": report.exact_partition,
        "cycles": cycles,
        "verdict": report.verdict.value,
    }


def _verdict_rank(verdict: Verdict) -> int:
    return {Verdict.PASS: 0, Verdict.INCONCLUSIVE: 1, Verdict.FAIL: 2}[verdict]


def step_results_to_json(results: Sequence[tuple[int, StepResult]]) -> dict:
    failures = [
        {"arc": i, "verdict": res.verdict.value, "details": res.details}
        for i, res in results
        if res.verdict is not Verdict.PASS
    ]
    return {"checked": len(results), "failures": failures}


_DOT_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def graph_to_dot(graph: BraidGraph, name: str = "braid_graph") -> str:
    """DOT digraph; arc labels carry the fine pair, colors the class id."""
    lines = [f"digraph {name} {{"]
    lines.append("  rankdir=LR;")
    for i, word in enumerate(graph.vertices):
        label = " ".join(str(letter) for letter in surface_word(word)) or "e"
        lines.append(f'  v{i} [label="{label}"];')
    for arc in graph.arcs:
        color = _DOT_PALETTE[arc.color % len(_DOT_PALETTE)]
        label = f"({arc.pair[0] + 1},{arc.pair[1] + 1})"
        lines.append(
            f'  v{arc.source} -> v{arc.target} '
            f'[label="{label}" color="{color}" fontcolor="{color}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"
