"""One-pass integer test for coefficient-field dependence.

The boundary matrix is reduced left to right over the integers.  While all
settled pivots are +-1, every division performed by the elimination is
exact; the first non-unit pivot certifies a torsion subgroup Z_p' (for each
prime p' dividing the pivot) in the relative homology of some pair of
filtration steps, which is exactly the condition under which persistence
diagrams depend on the coefficient field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .boundary import build_boundary_matrix
from .domains import Z
from .filtration import Filtration
from .reduction import run_reduction


@dataclass(frozen=True)
class FieldVerdict:
    """Outcome of the integer pass.

    For a dependent verdict, ``pivot_magnitude`` is the absolute value of
    the offending pivot, ``witness_column`` the column n at which it
    settled and ``witness_low`` its low; the pair (witness_low - 1, n)
    names relative homology with torsion of order dividing the pivot.
    """

    kind: str  # "independent" | "dependent"
    pivot_magnitude: Optional[int] = None
    witness_column: Optional[int] = None
    witness_low: Optional[int] = None
    max_degree: Optional[int] = None

    def __post_init__(self):
        if self.kind == "dependent":
            assert self.pivot_magnitude is not None and self.pivot_magnitude >= 2
            assert self.witness_low < self.witness_column
        else:
            assert self.kind == "independent"

    @property
    def independent(self) -> bool:
        return self.kind == "independent"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "pivot": None if self.pivot_magnitude is None else str(self.pivot_magnitude),
            "witness_column": self.witness_column,
            "witness_low": self.witness_low,
            "max_degree": self.max_degree,
        }


class _Instrumented:
    """Counts column additions of the integer pass (for cost comparisons)."""

    def __init__(self):
        self.n_column_additions = 0


def check_field_independence(f: Filtration, twist: bool = False,
                             stats: Optional[_Instrumented] = None) -> FieldVerdict:
    """Decide whether the diagram of f depends on the coefficient field.

    Processes columns left to right by default, so a dependent verdict
    never reads a column beyond the witness.  ``twist=True`` processes by
    descending dimension with clearing; the verdict kind is unchanged but
    the witness may differ.
    """
    matrix = build_boundary_matrix(f, Z)

    def hook(j, low, coeff):
        if coeff != 1 and coeff != -1:
            return FieldVerdict(
                kind="dependent",
                pivot_magnitude=-coeff if coeff < 0 else coeff,
                witness_column=j,
                witness_low=low,
            )
        return None

    res = run_reduction(matrix, twist=twist, pivot_hook=hook)
    if stats is not None:
        stats.n_column_additions = res.n_column_additions
    if res.stopped is not None:
        return res.stopped
    return FieldVerdict(kind="independent")


def check_field_independence_upto(f: Filtration, max_degree: int,
                                  twist: bool = False) -> FieldVerdict:
    """Verdict for degrees 0..max_degree only.

    Cells of dimension above max_degree + 1 cannot affect those degrees and
    are dropped before the pass.  Witness indices refer to the original
    filtration.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    sub, kept = f.without_dims_above(max_degree + 1)
    verdict = check_field_independence(sub, twist=twist)
    if verdict.independent:
        return FieldVerdict(kind="independent", max_degree=max_degree)
    return FieldVerdict(
        kind="dependent",
        pivot_magnitude=verdict.pivot_magnitude,
        witness_column=kept[verdict.witness_column - 1],
        witness_low=kept[verdict.witness_low - 1],
        max_degree=max_degree,
    )


def pivot_prime_factors(pivot: int) -> tuple[int, ...]:
    """Prime divisors of a reported pivot, ascending.

    Convenience only: each divisor admits a torsion witness at the point of
    the reduction where the pivot appeared, but no claim is made that every
    divisor changes the diagram elsewhere in the filtration.
    """
    n = abs(pivot)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)
