"""Left-to-right column reduction and diagram extraction.

The same driver serves field reduction and the integer unit-pivot check
(see torsion.py): it eliminates colliding column lows left to right,
optionally processes columns by descending cell dimension with clearing of
paired birth columns ("twist"), and reports a pivot to an optional hook
after each column settles.  The hook is how the integer pass exits early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .boundary import SparseBoundaryMatrix, build_boundary_matrix
from .diagram import Diagram
from .domains import Domain, parse_field_spec
from .errors import DomainError
from .filtration import Filtration

# Recorded column operations: ("add", src, dst, factor) means factor*src was
# added to dst; ("clear", col) zeroes a column paired as a birth under twist.
Op = tuple


@dataclass
class ReductionResult:
    columns: list
    ops: Optional[tuple[Op, ...]]
    n_column_additions: int
    stopped: Optional[object]  # value returned by the pivot hook, if any


def run_reduction(
    matrix: SparseBoundaryMatrix,
    twist: bool = False,
    record_ops: bool = False,
    pivot_hook: Optional[Callable[[int, int, object], object]] = None,
) -> ReductionResult:
    """Reduce a copy of the matrix; the input is never mutated.

    ``pivot_hook(j, low, coeff)`` is called once per settled nonzero column;
    a non-None return stops the reduction immediately (columns after j in
    processing order are never read).
    """
    columns = matrix.copy_columns()
    dims = matrix.dims
    dom = matrix.domain
    axpy = dom.axpy
    div = dom.div
    neg = dom.neg
    # mod 2 every multiplier is 1; skip the per-addition division
    trivial_quotients = getattr(dom, "p", 0) == 2
    one = dom.one
    n = len(columns)
    if twist:
        order = sorted(range(1, n + 1), key=lambda j: (-dims[j - 1], j))
    else:
        order = range(1, n + 1)
    low_to_col: dict[int, int] = {}
    cleared: set[int] = set()
    ops: Optional[list[Op]] = [] if record_ops else None
    adds = 0
    stopped = None
    for j in order:
        if j in cleared:
            columns[j - 1] = []
            if ops is not None:
                ops.append(("clear", j))
            continue
        col = columns[j - 1]
        while col:
            top_row, top_coeff = col[-1]
            i = low_to_col.get(top_row)
            if i is None:
                break
            src = columns[i - 1]
            if trivial_quotients:
                t = one
            else:
                t = neg(div(top_coeff, src[-1][1]))
            col = axpy(t, src, col)
            adds += 1
            if ops is not None:
                ops.append(("add", i, j, t))
        columns[j - 1] = col
        if col:
            top_row = col[-1][0]
            if pivot_hook is not None:
                stopped = pivot_hook(j, top_row, col[-1][1])
                if stopped is not None:
                    break
            low_to_col[top_row] = j
            if twist:
                cleared.add(top_row)
    return ReductionResult(columns=columns, ops=tuple(ops) if ops is not None else None,
                           n_column_additions=adds, stopped=stopped)


@dataclass
class ReducedMatrix:
    """Output of the field reduction: reduced columns plus the operation log
    sufficient to rebuild the unit upper-triangular transformation."""

    matrix: SparseBoundaryMatrix
    ops: Optional[tuple[Op, ...]]
    n_column_additions: int
    twist: bool

    def lows(self) -> dict[int, int]:
        """Map low -> column over nonzero columns (lows are pairwise distinct)."""
        out = {}
        for j in range(1, self.matrix.n_cols + 1):
            l = self.matrix.low(j)
            if l is not None:
                assert l not in out, "reduced matrix has colliding lows"
                out[l] = j
        return out


def reduce(m: SparseBoundaryMatrix, twist: bool = False,
           record_ops: bool = True) -> ReducedMatrix:
    """Column-reduce a boundary matrix over a field."""
    if not m.domain.is_field:
        raise DomainError(f"reduction requires a field, got {m.domain.name}")
    res = run_reduction(m, twist=twist, record_ops=record_ops)
    reduced = SparseBoundaryMatrix(domain=m.domain, columns=res.columns, dims=list(m.dims))
    return ReducedMatrix(matrix=reduced, ops=res.ops,
                         n_column_additions=res.n_column_additions, twist=twist)


def replay_ops(m: SparseBoundaryMatrix, ops: tuple[Op, ...]) -> list:
    """Apply a recorded operation sequence to a fresh copy of the columns."""
    columns = m.copy_columns()
    dom = m.domain
    for op in ops:
        if op[0] == "add":
            _, i, j, t = op
            columns[j - 1] = dom.axpy(t, columns[i - 1], columns[j - 1])
        else:
            _, j = op
            columns[j - 1] = []
    return columns


def extract_diagram(r: ReducedMatrix) -> Diagram:
    """Birth-death pairs of a reduced matrix.

    A nonzero column j kills the class born at its low; a zero column that
    is nobody's low is born and never dies.  The degree of a pair is the
    dimension of its birth cell.
    """
    m = r.matrix
    dims = m.dims
    pairs = []
    lowset = set()
    for j in range(1, m.n_cols + 1):
        col = m.columns[j - 1]
        if col:
            l = col[-1][0]
            pairs.append((l, j, dims[l - 1]))
            lowset.add(l)
    for j in range(1, m.n_cols + 1):
        if not m.columns[j - 1] and j not in lowset:
            pairs.append((j, None, dims[j - 1]))
    d = Diagram.build(field=m.domain.name, n_cells=m.n_cols, pairs=pairs)
    d.check_cell_level()
    return d


def compute_diagram(f: Filtration, field, twist: bool = True) -> Diagram:
    """Build, reduce, extract: the whole pipeline for one field."""
    domain = parse_field_spec(field)
    matrix = build_boundary_matrix(f, domain)
    return extract_diagram(reduce(matrix, twist=twist, record_ops=False))
