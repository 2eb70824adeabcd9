"""Filtered complexes: one cell per step, each prefix a subcomplex.

Cells are indexed 1..N throughout the public API.  A cell is either
simplicial (a sorted tuple of vertex ids; facets must appear earlier) or
carries an explicit signed boundary chain over earlier cells.  Explicit
chains are verified against the boundary-of-boundary-is-zero identity,
since their signs are user-supplied.

Two line-oriented text formats are provided, one per cell kind.  Written
files re-parse to the same filtration and re-write byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import FiltrationError, ParseError

Label = Union[Fraction, float, None]


@dataclass(frozen=True)
class Cell:
    """One filtration step: a simplex or an explicit-boundary cell."""

    dim: int
    vertices: Optional[tuple[int, ...]] = None
    chain: Optional[tuple[tuple[int, int], ...]] = None  # 1-based (cell, coeff)
    label: Label = None

    @property
    def is_simplicial(self) -> bool:
        return self.vertices is not None


def simplex(vertices: Iterable[int], label: Label = None) -> Cell:
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise FiltrationError(f"simplex with repeated vertices: {vs}")
    if any(v < 0 for v in vs):
        raise FiltrationError(f"negative vertex id in simplex {vs}")
    if not vs:
        raise FiltrationError("empty vertex list")
    return Cell(dim=len(vs) - 1, vertices=vs, label=label)


def explicit_cell(dim: int, chain: Iterable[tuple[int, int]], label: Label = None) -> Cell:
    entries = sorted(chain)
    if any(c == 0 for _, c in entries):
        raise FiltrationError("explicit boundary chain contains a zero coefficient")
    idxs = [i for i, _ in entries]
    if len(set(idxs)) != len(idxs):
        raise FiltrationError("explicit boundary chain references a cell twice")
    if dim < 0:
        raise FiltrationError("negative cell dimension")
    return Cell(dim=dim, chain=tuple(entries), label=label)


def signed_facets(vertices: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Facets of a simplex with alternating signs: omit vertex i, sign (-1)^i."""
    out = []
    for i in range(len(vertices)):
        facet = vertices[:i] + vertices[i + 1 :]
        out.append((tuple(facet), -1 if i % 2 else 1))
    return out


class Filtration:
    """An ordered finite complex; cell j's boundary lies in cells 1..j-1."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Cell], validate: bool = True):
        self.cells = tuple(cells)
        if validate:
            self._validate()

    def _validate(self) -> None:
        simplex_index: dict[tuple[int, ...], int] = {}
        for j, cell in enumerate(self.cells, start=1):
            if cell.is_simplicial:
                vs = cell.vertices
                if len(vs) != cell.dim + 1:
                    raise FiltrationError(
                        f"cell {j}: dim {cell.dim} simplex must list {cell.dim + 1} vertices",
                        cell=j,
                    )
                if cell.dim > 0:
                    for facet, _ in signed_facets(vs):
                        if facet not in simplex_index:
                            raise FiltrationError(
                                f"cell {j}: facet {facet} of simplex {vs} not added earlier",
                                cell=j,
                            )
                simplex_index[vs] = j
            else:
                for i, _ in cell.chain:
                    if not 1 <= i < j:
                        raise FiltrationError(
                            f"cell {j}: boundary reference {i} is not an earlier cell",
                            cell=j,
                        )
                    if self.cells[i - 1].dim != cell.dim - 1:
                        raise FiltrationError(
                            f"cell {j}: boundary reference {i} has dimension "
                            f"{self.cells[i - 1].dim}, expected {cell.dim - 1}",
                            cell=j,
                        )
        self._check_explicit_boundaries(simplex_index)

    def _check_explicit_boundaries(self, simplex_index) -> None:
        # d(d(cell)) = 0 over Z, checked only where signs are user-supplied.
        explicit = [j for j, c in enumerate(self.cells, 1) if not c.is_simplicial]
        if not explicit:
            return
        for j in explicit:
            acc: dict[int, int] = {}
            for i, c in self.cells[j - 1].chain:
                for k, ck in self._integer_boundary(i, simplex_index):
                    v = acc.get(k, 0) + c * ck
                    if v:
                        acc[k] = v
                    else:
                        acc.pop(k, None)
            if acc:
                raise FiltrationError(
                    f"cell {j}: explicit boundary chain violates d(d(x)) = 0",
                    cell=j,
                )

    def _integer_boundary(self, j: int, simplex_index) -> list[tuple[int, int]]:
        cell = self.cells[j - 1]
        if cell.is_simplicial:
            if cell.dim == 0:
                return []
            return [(simplex_index[f], s) for f, s in signed_facets(cell.vertices)]
        return list(cell.chain)

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, Filtration) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"Filtration({len(self.cells)} cells, max dim {self.max_dim})"

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    @property
    def labels(self) -> Optional[tuple[Label, ...]]:
        """Per-cell labels, or None when no cell is labelled."""
        if all(c.label is None for c in self.cells):
            return None
        return tuple(c.label for c in self.cells)

    def dims(self) -> list[int]:
        return [c.dim for c in self.cells]

    def truncate(self, k: int) -> "Filtration":
        """First k cells; every prefix of a filtration is a filtration."""
        if not 0 <= k <= len(self.cells):
            raise FiltrationError(f"cannot truncate to {k} of {len(self.cells)} cells")
        return Filtration(self.cells[:k], validate=False)

    def without_dims_above(self, dim: int) -> tuple["Filtration", list[int]]:
        """Drop cells of dimension > dim; returns the new filtration and the
        1-based original index of each kept cell."""
        kept = [j for j, c in enumerate(self.cells, 1) if c.dim <= dim]
        remap = {orig: k + 1 for k, orig in enumerate(kept)}
        cells = []
        for orig in kept:
            c = self.cells[orig - 1]
            if c.is_simplicial:
                cells.append(c)
            else:
                chain = tuple((remap[i], coef) for i, coef in c.chain)
                cells.append(Cell(dim=c.dim, chain=chain, label=c.label))
        return Filtration(cells, validate=False), kept


# ---------------------------------------------------------------------------
# Text formats


def _format_label(label: Label) -> str:
    if isinstance(label, Fraction):
        return f"{label.numerator}/{label.denominator}"
    return repr(label)


def _parse_label(text: str, lineno: int) -> Label:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad label {text!r}") from None


def _split_line(raw: str, lineno: int):
    """Strip a trailing comment, returning (tokens, label-or-None)."""
    label = None
    if "#" in raw:
        raw, comment = raw.split("#", 1)
        comment = comment.strip()
        if comment.startswith("label:"):
            label = _parse_label(comment[len("label:") :].strip(), lineno)
    toks = raw.split()
    return toks, label


def _build_parsed(cells, cell_lines):
    try:
        return Filtration(cells)
    except FiltrationError as e:
        line = cell_lines[e.cell - 1] if e.cell is not None else 0
        raise ParseError(line, str(e)) from None


def parse_simplicial(text: str) -> Filtration:
    """Parse the one-simplex-per-line format: ``q v_0 v_1 ... v_q``."""
    cells = []
    cell_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks, label = _split_line(raw, lineno)
        if not toks:
            continue
        try:
            q = int(toks[0])
            verts = [int(t) for t in toks[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {raw.strip()!r}") from None
        if q < 0:
            raise ParseError(lineno, "negative dimension")
        if len(verts) != q + 1:
            raise ParseError(lineno, f"dim {q} simplex needs {q + 1} vertices, got {len(verts)}")
        if any(v < 0 for v in verts):
            raise ParseError(lineno, "negative vertex id")
        try:
            cells.append(simplex(verts, label))
        except FiltrationError as e:
            raise ParseError(lineno, str(e)) from None
        cell_lines.append(lineno)
    return _build_parsed(cells, cell_lines)


def write_simplicial(f: Filtration) -> str:
    lines = []
    for j, cell in enumerate(f.cells, 1):
        if not cell.is_simplicial:
            raise FiltrationError(f"cell {j} has an explicit boundary; use the explicit format")
        line = f"{cell.dim} " + " ".join(str(v) for v in cell.vertices)
        if cell.label is not None:
            line += f"  # label: {_format_label(cell.label)}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


def parse_explicit(text: str) -> Filtration:
    """Parse the explicit-boundary format: ``q k i_1 c_1 ... i_k c_k``."""
    cells = []
    cell_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks, label = _split_line(raw, lineno)
        if not toks:
            continue
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {raw.strip()!r}") from None
        if len(vals) < 2:
            raise ParseError(lineno, "expected at least dimension and entry count")
        q, k = vals[0], vals[1]
        if q < 0 or k < 0:
            raise ParseError(lineno, "negative dimension or entry count")
        if len(vals) != 2 + 2 * k:
            raise ParseError(lineno, f"expected {2 + 2 * k} tokens for k={k}, got {len(vals)}")
        chain = [(vals[2 + 2 * t], vals[3 + 2 * t]) for t in range(k)]
        try:
            cells.append(explicit_cell(q, chain, label))
        except FiltrationError as e:
            raise ParseError(lineno, str(e)) from None
        cell_lines.append(lineno)
    return _build_parsed(cells, cell_lines)


def write_explicit(f: Filtration) -> str:
    """Write any filtration in the explicit format.

    Simplicial cells are converted using the alternating sign convention,
    so a round trip through this writer preserves the chain complex even
    when the original cells were simplicial.
    """
    simplex_index: dict[tuple[int, ...], int] = {}
    lines = []
    for j, cell in enumerate(f.cells, 1):
        if cell.is_simplicial:
            if cell.dim == 0:
                chain = []
            else:
                chain = sorted(
                    (simplex_index[facet], sign)
                    for facet, sign in signed_facets(cell.vertices)
                )
            simplex_index[cell.vertices] = j
        else:
            chain = list(cell.chain)
        toks = [str(cell.dim), str(len(chain))]
        for i, c in chain:
            toks.append(str(i))
            toks.append(str(c))
        line = " ".join(toks)
        if cell.label is not None:
            line += f"  # label: {_format_label(cell.label)}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


FORMATS = ("simplicial", "explicit")


def parse_filtration(text: str, format: str = "simplicial") -> Filtration:
    if format == "simplicial":
        return parse_simplicial(text)
    if format == "explicit":
        return parse_explicit(text)
    raise ValueError(f"unknown filtration format {format!r}")


def write_filtration(f: Filtration, format: str = "simplicial") -> str:
    if format == "simplicial":
        return write_simplicial(f)
    if format == "explicit":
        return write_explicit(f)
    raise ValueError(f"unknown filtration format {format!r}")
