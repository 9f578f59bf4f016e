"""Persistent genus-number table.

One line per discriminant, ``d<TAB>g<TAB>h<TAB>h2``, UTF-8 with LF endings.
The file is append-only and may be deleted at any time; malformed lines are
ignored and a later line for the same d wins.
"""
from __future__ import annotations

import os
from pathlib import Path

from .classgroup import class_group

ENV_VAR = "CNUM_CACHE"
DEFAULT_PATH = Path(".cnum") / "gcache.tsv"


def default_path() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_PATH)


def parse_lines(text: str) -> dict[int, tuple[int, int, int]]:
    table: dict[int, tuple[int, int, int]] = {}
    for line in text.splitlines():
        parts = line.split("\t")
        if len(parts) != 4:
            continue
        try:
            d, g, h, h2 = (int(p) for p in parts)
        except ValueError:
            continue
        table[d] = (g, h, h2)
    return table


def format_line(d: int, entry: tuple[int, int, int]) -> str:
    g, h, h2 = entry
    return f"{d}\t{g}\t{h}\t{h2}\n"


class GenusCache:
    """In-memory view of the table plus pending entries to append."""

    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else default_path()
        self.table: dict[int, tuple[int, int, int]] = {}
        self.pending: dict[int, tuple[int, int, int]] = {}
        if self.path.exists():
            self.table = parse_lines(self.path.read_text(encoding="utf-8"))

    def get(self, d: int) -> tuple[int, int, int]:
        """(g, h, h2) for Q(sqrt(-d))."""
        hit = self.table.get(d)
        if hit is None:
            cg = class_group(d)
            hit = (cg.g, cg.h, cg.h2)
            self.table[d] = hit
            self.pending[d] = hit
        return hit

    def merge(self, entries: dict[int, tuple[int, int, int]]) -> None:
        for d, entry in entries.items():
            if d not in self.table:
                self.pending[d] = entry
            self.table[d] = entry

    def flush(self) -> None:
        if not self.pending:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            for d in sorted(self.pending):
                fh.write(format_line(d, self.pending[d]))
        self.pending.clear()
