"""Persistent Betti numbers, multiplicities, diagram comparison, and
convex lifetime functionals.

The central identity: the Betti table determines the diagram and vice
versa, via the inclusion-exclusion multiplicity formulas.  Diagram
comparison cross-checks both characterizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .diagram import Diagram
from .errors import InfiniteLifetimeError

Number = Union[int, Fraction, float]


@dataclass(frozen=True)
class PersistentBettiTable:
    """Triangular table of beta(m, n) = number of degree-q pairs alive
    from step m through step n, for 0 <= m <= n <= n_cells."""

    degree: int
    n_cells: int
    rows: tuple[tuple[int, ...], ...]  # rows[m][n - m]

    @classmethod
    def from_diagram(cls, d: Diagram, q: int) -> "PersistentBettiTable":
        N = d.n_cells
        # row-wise interval increments: pair (b, d) adds 1 on n in [m, d-1]
        # of every row b <= m <= d-1
        diffs = [[0] * (N - m + 2) for m in range(N + 1)]
        for b, death, qq in d.pairs:
            if qq != q:
                continue
            last = N if death is None else death - 1
            for m in range(b, last + 1):
                diffs[m][0] += 1
                diffs[m][last - m + 1] -= 1
        rows = []
        for m in range(N + 1):
            acc = 0
            row = []
            for delta in diffs[m][:-1]:
                acc += delta
                row.append(acc)
            rows.append(tuple(row))
        return cls(degree=q, n_cells=N, rows=tuple(rows))

    def beta(self, m: int, n: int) -> int:
        """beta(m, n), with out-of-range arguments reading as 0."""
        if m < 0 or n > self.n_cells or m > n:
            return 0
        return self.rows[m][n - m]

    def to_tsv(self) -> str:
        lines = ["m\tn\tbeta"]
        for m in range(self.n_cells + 1):
            for n in range(m, self.n_cells + 1):
                lines.append(f"{m}\t{n}\t{self.beta(m, n)}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, PersistentBettiTable)
            and self.degree == other.degree
            and self.n_cells == other.n_cells
            and self.rows == other.rows
        )


def betti_table(d: Diagram, q: int) -> PersistentBettiTable:
    return PersistentBettiTable.from_diagram(d, q)


def multiplicity(t: PersistentBettiTable, b: int, d: Optional[int]) -> int:
    """Multiplicity of the pair (b, d) recovered from the Betti table;
    d is None for infinite deaths."""
    if d is None:
        return t.beta(b, t.n_cells) - t.beta(b - 1, t.n_cells)
    return (
        t.beta(b, d - 1)
        - t.beta(b - 1, d - 1)
        - t.beta(b, d)
        + t.beta(b - 1, d)
    )


def reconstruct_pairs(t: PersistentBettiTable) -> tuple[tuple[int, Optional[int], int], ...]:
    """Invert a Betti table back into the degree-q pair multiset."""
    N = t.n_cells
    pairs = []
    for b in range(1, N + 1):
        for d in range(b + 1, N + 1):
            k = multiplicity(t, b, d)
            pairs.extend([(b, d, t.degree)] * k)
        k = multiplicity(t, b, None)
        pairs.extend([(b, None, t.degree)] * k)
    return tuple(pairs)


@dataclass(frozen=True)
class DiagramDifference:
    """Witness of inequality: a pair with differing multiplicity together
    with a Betti-table entry that differs (the two views must agree)."""

    degree: int
    birth: int
    death: Optional[int]
    multiplicity_a: int
    multiplicity_b: int
    beta_m: int
    beta_n: int
    beta_a: int
    beta_b: int


@dataclass(frozen=True)
class ComparisonResult:
    equal: bool
    witness: Optional[DiagramDifference] = None

    def to_json_dict(self) -> dict:
        out: dict = {"equal": self.equal, "witness": None}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "degree": w.degree,
                "birth": w.birth,
                "death": w.death,
                "multiplicity_a": w.multiplicity_a,
                "multiplicity_b": w.multiplicity_b,
                "beta_m": w.beta_m,
                "beta_n": w.beta_n,
                "beta_a": w.beta_a,
                "beta_b": w.beta_b,
            }
        return out


def diagrams_equal(a: Diagram, b: Diagram, check_tables: bool = True) -> ComparisonResult:
    """Multiset equality per degree, with a two-sided witness on inequality.

    Diagrams are equal exactly when all their Betti tables agree entrywise;
    with check_tables the table view is verified against the multiset view
    in both directions.
    """
    if a.n_cells != b.n_cells:
        raise ValueError(
            f"diagrams over different filtration lengths: {a.n_cells} vs {b.n_cells}"
        )
    if a.pairs == b.pairs:
        if check_tables:
            for q in set(a.degrees()) | set(b.degrees()):
                assert betti_table(a, q) == betti_table(b, q)
        return ComparisonResult(equal=True)

    from collections import Counter

    ca = Counter(a.pairs)
    cb = Counter(b.pairs)
    diff = sorted(
        (key for key in set(ca) | set(cb) if ca[key] != cb[key]),
        key=lambda p: (p[2], p[0], p[1] is None, p[1] or 0),
    )
    birth, death, q = diff[0]
    ta = betti_table(a, q)
    tb = betti_table(b, q)
    assert ta != tb, "unequal diagrams must have unequal Betti tables"
    beta_witness = None
    for m in range(a.n_cells + 1):
        for n in range(m, a.n_cells + 1):
            if ta.beta(m, n) != tb.beta(m, n):
                beta_witness = (m, n)
                break
        if beta_witness:
            break
    wm, wn = beta_witness
    return ComparisonResult(
        equal=False,
        witness=DiagramDifference(
            degree=q,
            birth=birth,
            death=death,
            multiplicity_a=ca[(birth, death, q)],
            multiplicity_b=cb[(birth, death, q)],
            beta_m=wm,
            beta_n=wn,
            beta_a=ta.beta(wm, wn),
            beta_b=tb.beta(wm, wn),
        ),
    )


def coarsen_diagram(d: Diagram, stage_of, n_stages: int, field: Optional[str] = None) -> Diagram:
    """Collapse a cell-level diagram onto coarser filtration stages.

    ``stage_of(index)`` maps a cell index to its stage; pairs born and dead
    within one stage vanish.  The result may repeat pairs and reuse an
    index as both birth and death: those are legal for stage diagrams.
    """
    pairs = []
    for b, death, q in d.pairs:
        sb = stage_of(b)
        sd = None if death is None else stage_of(death)
        if sd is not None and sb == sd:
            continue
        pairs.append((sb, sd, q))
    return Diagram.build(field=field or d.field, n_cells=n_stages, pairs=pairs)


# ---------------------------------------------------------------------------
# Convex lifetime functionals


class PowerFunctional:
    """f(x) = x**r with rational r >= 1; convex on [0, inf), f(0) = 0."""

    def __init__(self, r: Union[int, Fraction, str]):
        r = Fraction(r)
        if r < 1:
            raise ValueError(f"exponent {r} < 1 is not convex with f(0) = 0")
        self.r = r

    @property
    def is_strictly_convex(self) -> bool:
        return self.r > 1

    def evaluate(self, x: Number) -> Number:
        if x < 0:
            raise ValueError(f"lifetime {x} < 0")
        if self.r.denominator == 1 and not isinstance(x, float):
            return Fraction(x) ** self.r.numerator
        return float(x) ** float(self.r)

    def __repr__(self):
        return f"PowerFunctional(x^{self.r})"


class TableFunctional:
    """Piecewise-linear functional through given knots.

    Knots must start at (0, 0) and have non-decreasing slopes (convexity is
    checked).  Past the last knot the final slope extends linearly.  The
    strict flag requires strictly increasing slopes, which makes values at
    the knots strictly convex as a sequence.
    """

    def __init__(self, knots: Sequence[tuple[Number, Number]]):
        pts = [(Fraction(x), Fraction(y)) for x, y in knots]
        if len(pts) < 2:
            raise ValueError("need at least two knots")
        if pts[0] != (0, 0):
            raise ValueError("first knot must be (0, 0)")
        xs = [x for x, _ in pts]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("knot abscissae must increase strictly")
        slopes = [
            (y2 - y1) / (x2 - x1)
            for (x1, y1), (x2, y2) in zip(pts, pts[1:])
        ]
        if any(s2 < s1 for s1, s2 in zip(slopes, slopes[1:])):
            raise ValueError("knots are not convex (slopes decrease)")
        self.knots = pts
        self.slopes = slopes
        self.is_strictly_convex = all(s2 > s1 for s1, s2 in zip(slopes, slopes[1:]))

    def evaluate(self, x: Number) -> Number:
        if x < 0:
            raise ValueError(f"lifetime {x} < 0")
        xf = Fraction(x) if not isinstance(x, float) else x
        pts = self.knots
        if not isinstance(xf, float):
            for (x1, y1), (x2, y2), s in zip(pts, pts[1:], self.slopes):
                if xf <= x2:
                    return y1 + s * (xf - x1)
            xl, yl = pts[-1]
            return yl + self.slopes[-1] * (xf - xl)
        return float(self.evaluate(Fraction(xf)))

    def __repr__(self):
        return f"TableFunctional({len(self.knots)} knots)"


ConvexFunctional = Union[PowerFunctional, TableFunctional]


def parse_functional(spec: str) -> ConvexFunctional:
    """Parse 'x^2', 'power:3/2', or 'table:0=0,1=1,2=4'."""
    s = spec.strip()
    if s.startswith("x^"):
        return PowerFunctional(s[2:])
    if s.startswith("power:"):
        return PowerFunctional(s[len("power:") :])
    if s.startswith("table:"):
        knots = []
        for part in s[len("table:") :].split(","):
            x, y = part.split("=")
            knots.append((Fraction(x), Fraction(y)))
        return TableFunctional(knots)
    raise ValueError(f"bad functional spec {spec!r}")


def _lifetimes(d: Diagram, q: int, labels: Optional[Sequence[Number]]) -> list[Number]:
    out = []
    for b, death, qq in d.pairs:
        if qq != q:
            continue
        if death is None:
            raise InfiniteLifetimeError(
                f"degree-{q} pair ({b}, inf) has no finite lifetime"
            )
        if labels is None:
            out.append(death - b)
        else:
            out.append(labels[death - 1] - labels[b - 1])
    return out


def convex_sum(d: Diagram, q: int, f: ConvexFunctional,
               labels: Optional[Sequence[Number]] = None) -> Number:
    """Sum of f(lifetime) over the degree-q pairs.

    Lifetimes are index differences, or label differences when per-cell
    labels (e.g. appearance radii) are supplied.  The result is an exact
    Fraction whenever f and the lifetimes are rational.
    """
    total: Number = Fraction(0)
    for life in _lifetimes(d, q, labels):
        total = total + f.evaluate(life)
    return total


def wasserstein_to_empty(d: Diagram, q: int, r: Number) -> float:
    """Distance to the empty diagram: each pair matches the diagonal at
    cost lifetime/2, aggregated in the r-norm."""
    r = Fraction(r)
    if r < 1:
        raise ValueError("order r must be >= 1")
    total = Fraction(0)
    power = PowerFunctional(r)
    for life in _lifetimes(d, q, None):
        total = total + power.evaluate(Fraction(life, 2))
    if total == 0:
        return 0.0
    return float(total) ** (1.0 / float(r))
