"""Readers and writers for ``.gtab`` group tables and ``.gens`` generator files.

``.gtab``::

    n
    <n rows of n space-separated indices>
    [labels <n labels>]          # optional

``.gens``::

    degree k
    <one generator per line: k space-separated images of 0..k-1>

Anything else (extra rows, extra tokens) is rejected.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .group import FiniteGroup, from_permutations, from_table


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok, 10) for tok in line.split()]
    except ValueError:
        raise ParseError(f"line {lineno}: expected base-10 integers, got {line.strip()!r}") from None


def _lines(text: str) -> list[str]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def parse_gtab(text: str, name: str = "") -> FiniteGroup:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty table file")
    head = _ints(lines[0], 1)
    if len(head) != 1 or head[0] < 1:
        raise ParseError("line 1: expected a single positive order n")
    n = head[0]
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for k in range(n):
        row = _ints(lines[k + 1], k + 2)
        if len(row) != n:
            raise ParseError(f"line {k + 2}: expected {n} entries, found {len(row)}")
        rows.append(row)
    labels = None
    extra = lines[n + 1:]
    if extra:
        toks = extra[0].split()
        if len(extra) > 1 or not toks or toks[0] != "labels":
            raise ParseError(f"line {n + 2}: trailing garbage after table")
        labels = toks[1:]
        if len(labels) != n or len(set(labels)) != n:
            raise ParseError(f"line {n + 2}: need {n} distinct labels")
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            if not 0 <= x < n:
                raise ParseError(f"line {r + 2}: index {x} out of range [0, {n})")
    return from_table(rows, labels=labels, name=name)


def parse_gens(text: str, cap=None, name: str = "") -> FiniteGroup:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty generator file")
    head = lines[0].split()
    if head and head[0] == "degree":
        head = head[1:]
    if len(head) != 1:
        raise ParseError("line 1: expected 'degree k'")
    try:
        k = int(head[0], 10)
    except ValueError:
        raise ParseError("line 1: degree must be an integer") from None
    if k < 1:
        raise ParseError("line 1: degree must be positive")
    gens = []
    for lineno, line in enumerate(lines[1:], start=2):
        images = _ints(line, lineno)
        if len(images) != k:
            raise ParseError(f"line {lineno}: expected {k} images, found {len(images)}")
        gens.append(images)
    return from_permutations(k, gens, cap=cap, name=name)


def load_gtab(path, name: str = "") -> FiniteGroup:
    path = Path(path)
    return parse_gtab(path.read_text(encoding="utf-8"), name=name or path.stem)


def load_gens(path, cap=None, name: str = "") -> FiniteGroup:
    path = Path(path)
    return parse_gens(path.read_text(encoding="utf-8"), cap=cap, name=name or path.stem)


def format_gtab(G: FiniteGroup, with_labels: bool = True) -> str:
    out = [str(G.order)]
    out += [" ".join(str(int(x)) for x in row) for row in G.table]
    if with_labels and G.labels is not None and all(" " not in s for s in G.labels):
        out.append("labels " + " ".join(G.labels))
    return "\n".join(out) + "\n"
