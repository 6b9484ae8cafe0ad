"""Edge-list CSV ingestion and report/export writers.

Input CSVs carry one `src,dst` pair per line, an optional header, and an
optional third timestamp column.  Node labels may be arbitrary strings;
they are mapped to dense integer ids in first-appearance order and the
mapping is written next to the outputs so reports stay human-readable.

All floats in emitted reports are rounded to 6 significant digits and JSON
keys are sorted, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from .errors import MalformedInputError
from .evaluation import ScoredPair

_HEADER_FIRST = {"src", "source", "u", "from", "node1"}
_HEADER_SECOND = {"dst", "target", "v", "to", "node2"}


def read_edge_csv(path: Union[str, Path]) -> tuple[
        list[tuple[int, int]], list[Optional[float]], dict[str, int]]:
    """Parse an edge CSV into (edges, timestamps, label-to-id mapping).

    timestamps[i] is None when the row had no third column.
    """
    edges: list[tuple[int, int]] = []
    timestamps: list[Optional[float]] = []
    ids: dict[str, int] = {}

    def node_id(label: str) -> int:
        if label not in ids:
            ids[label] = len(ids)
        return ids[label]

    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise MalformedInputError(f"empty edge file: {path}")
    start = 0
    first = [f.strip().lower() for f in rows[0]]
    if (len(first) >= 2 and first[0] in _HEADER_FIRST
            and first[1] in _HEADER_SECOND):
        start = 1
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) < 2:
            raise MalformedInputError(f"{path}:{lineno}: need at least 2 columns")
        edges.append((node_id(row[0].strip()), node_id(row[1].strip())))
        if len(row) >= 3 and row[2].strip():
            try:
                timestamps.append(float(row[2]))
            except ValueError as exc:
                raise MalformedInputError(
                    f"{path}:{lineno}: bad timestamp {row[2]!r}") from exc
        else:
            timestamps.append(None)
    return edges, timestamps, ids


def write_edge_csv(path: Union[str, Path],
                   edges: Sequence[tuple[int, int]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst"])
        writer.writerows(edges)


def round_sig(value: float, digits: int = 6) -> float:
    """Round to `digits` significant digits (report formatting contract)."""
    return float(f"{value:.{digits}g}")


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def write_report_json(path: Union[str, Path], report: dict) -> None:
    Path(path).write_text(
        json.dumps(_round_floats(report), sort_keys=True, indent=1) + "\n")


def write_scored_tsv(path: Union[str, Path],
                     scored: Sequence[ScoredPair]) -> None:
    """One `u<TAB>v<TAB>score<TAB>label` row per pair."""
    with open(path, "w") as fh:
        for s in scored:
            fh.write(f"{s.u}\t{s.v}\t{round_sig(s.score)!r}\t{s.label}\n")


def write_roc_csv(path: Union[str, Path],
                  points: Sequence[tuple[float, float]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fpr", "tpr"])
        for fpr, tpr in points:
            writer.writerow([repr(round_sig(fpr)), repr(round_sig(tpr))])


def write_id_map(path: Union[str, Path], ids: dict[str, int]) -> None:
    Path(path).write_text(json.dumps(ids, sort_keys=True, indent=1) + "\n")
