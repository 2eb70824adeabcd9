"""Sparse boundary matrices over an exact coefficient domain."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .domains import Domain
from .errors import FiltrationError
from .filtration import Filtration, signed_facets


@dataclass
class SparseBoundaryMatrix:
    """Strictly upper-triangular sparse matrix, one column per cell.

    ``columns[j-1]`` holds column j as a sorted list of ``(row, coeff)``
    pairs with 1-based rows and no explicit zeros.
    """

    domain: Domain
    columns: list[list[tuple[int, object]]]
    dims: list[int] = field(repr=False)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def low(self, j: int) -> Optional[int]:
        """Largest row with a nonzero entry in column j, or None if zero."""
        col = self.columns[j - 1]
        return col[-1][0] if col else None

    def column(self, j: int) -> list[tuple[int, object]]:
        return self.columns[j - 1]

    def copy_columns(self) -> list[list[tuple[int, object]]]:
        return [list(c) for c in self.columns]


def low(m: SparseBoundaryMatrix, j: int) -> Optional[int]:
    if not 1 <= j <= m.n_cols:
        raise IndexError(f"column {j} out of range 1..{m.n_cols}")
    return m.low(j)


def build_boundary_matrix(f: Filtration, domain: Domain) -> SparseBoundaryMatrix:
    """Boundary matrix of the filtration-ordered cell basis.

    Simplicial cells get the alternating sign convention on their sorted
    vertex lists; explicit cells carry their own coefficients.  Entries that
    vanish in the target domain (e.g. even coefficients mod 2) are dropped.
    """
    simplex_index: dict[tuple[int, ...], int] = {}
    columns: list[list[tuple[int, object]]] = []
    from_int = domain.from_int
    zero = domain.zero
    for j, cell in enumerate(f.cells, start=1):
        entries: list[tuple[int, object]] = []
        if cell.is_simplicial:
            if cell.dim > 0:
                for facet, sign in signed_facets(cell.vertices):
                    i = simplex_index.get(facet)
                    if i is None:
                        raise FiltrationError(
                            f"cell {j}: facet {facet} missing from earlier cells"
                        )
                    c = from_int(sign)
                    if c != zero:
                        entries.append((i, c))
            simplex_index[cell.vertices] = j
        else:
            for i, coef in cell.chain:
                if not 1 <= i < j:
                    raise FiltrationError(
                        f"cell {j}: boundary reference {i} is not an earlier cell"
                    )
                c = from_int(coef)
                if c != zero:
                    entries.append((i, c))
        entries.sort()
        columns.append(entries)
    return SparseBoundaryMatrix(domain=domain, columns=columns, dims=f.dims())


def boundary_of_boundary_is_zero(m: SparseBoundaryMatrix) -> bool:
    """Check that applying the matrix twice annihilates every column."""
    dom = m.domain
    for col in m.columns:
        acc: dict[int, object] = {}
        for i, c in col:
            for k, ck in m.columns[i - 1]:
                v = dom.add(acc.get(k, dom.zero), dom.mul(c, ck))
                if v != dom.zero:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        if acc:
            return False
    return True
