"""Persistence diagrams: multisets of (birth, death, degree) triples.

Deaths are either a cell index or None for never-dying classes; a sentinel
integer is never used.  Indices are 1-based filtration steps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional


def _pair_key(pair):
    b, d, q = pair
    return (q, b, d is None, 0 if d is None else d)


@dataclass(frozen=True)
class Diagram:
    """Multiset of birth-death pairs, canonically ordered."""

    field: str  # "Q", "Zp:<p>", or "Z" for the integer pass
    n_cells: int
    pairs: tuple[tuple[int, Optional[int], int], ...]

    @classmethod
    def build(cls, field: str, n_cells: int, pairs: Iterable[tuple]) -> "Diagram":
        norm = []
        for b, d, q in pairs:
            if not 1 <= b <= n_cells:
                raise ValueError(f"birth {b} outside 1..{n_cells}")
            if d is not None and not b < d <= n_cells:
                raise ValueError(f"death {d} must satisfy birth {b} < death <= {n_cells}")
            if q < 0:
                raise ValueError(f"negative degree {q}")
            norm.append((b, d, q))
        norm.sort(key=_pair_key)
        return cls(field=field, n_cells=n_cells, pairs=tuple(norm))

    def degree_pairs(self, q: int) -> tuple[tuple[int, Optional[int]], ...]:
        return tuple((b, d) for b, d, qq in self.pairs if qq == q)

    def restrict(self, q: int) -> "Diagram":
        return Diagram(
            field=self.field,
            n_cells=self.n_cells,
            pairs=tuple(p for p in self.pairs if p[2] == q),
        )

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({q for _, _, q in self.pairs}))

    def check_cell_level(self) -> None:
        """Assert the invariants of diagrams computed from a one-cell-per-step
        filtration: distinct births, distinct finite deaths, and no index
        playing both roles.  Coarsened diagrams may legitimately violate
        these, so they are not enforced at construction."""
        births = [b for b, _, _ in self.pairs]
        deaths = [d for _, d, _ in self.pairs if d is not None]
        if len(set(births)) != len(births):
            raise ValueError("duplicate birth index")
        if len(set(deaths)) != len(deaths):
            raise ValueError("duplicate death index")
        if set(births) & set(deaths):
            raise ValueError("an index is both a birth and a death")

    def to_json_dict(self) -> dict:
        return {
            "field": self.field,
            "pairs": [
                {"birth": b, "death": d, "degree": q} for b, d, q in self.pairs
            ],
            "n_cells": self.n_cells,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Diagram":
        return cls.build(
            field=obj["field"],
            n_cells=obj["n_cells"],
            pairs=[(p["birth"], p["death"], p["degree"]) for p in obj["pairs"]],
        )

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_json_dict(json.loads(text))

    def to_tsv(self) -> str:
        lines = ["degree\tbirth\tdeath"]
        for b, d, q in self.pairs:
            lines.append(f"{q}\t{b}\t{'inf' if d is None else d}")
        return "\n".join(lines) + "\n"
