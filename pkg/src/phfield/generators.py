"""Filtration and pointcloud constructors used by experiments and tests.

All randomness flows through the seeded portable generator in rng.py, so
every constructor is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import FiltrationError
from .filtration import Cell, Filtration, simplex
from .rng import SplitMix64


# ---------------------------------------------------------------------------
# Twisted and wound bands


def mobius_filtration(segments: int) -> Filtration:
    """Triangulated Mobius band whose boundary circle fills in first.

    The band has 2*segments vertices; the first 4*segments cells are the
    boundary circle (see mobius_circle_index), after which rungs, diagonals
    and triangles complete the band.  The boundary winds twice around the
    core circle, so degree-1 diagrams over Z_2 and over Q differ.
    """
    n = segments
    if n < 3:
        raise ValueError("need at least 3 segments")
    t = list(range(n))           # "top" rim vertices
    b = [n + i for i in range(n)]  # "bottom" rim vertices

    cells: list[Cell] = []
    for v in t + b:
        cells.append(simplex([v]))
    # boundary circle: top path, cross to bottom at the half twist, back
    for i in range(n - 1):
        cells.append(simplex([t[i], t[i + 1]]))
    cells.append(simplex([t[n - 1], b[0]]))
    for i in range(n - 1):
        cells.append(simplex([b[i], b[i + 1]]))
    cells.append(simplex([b[n - 1], t[0]]))
    # interior: rungs, then diagonals, then triangles
    for i in range(n):
        cells.append(simplex([t[i], b[i]]))
    for i in range(n):
        ti1 = b[0] if i == n - 1 else t[i + 1]
        cells.append(simplex([ti1, b[i]]))
    for i in range(n):
        ti1 = b[0] if i == n - 1 else t[i + 1]
        bi1 = t[0] if i == n - 1 else b[i + 1]
        cells.append(simplex([t[i], ti1, b[i]]))
        cells.append(simplex([ti1, b[i], bi1]))
    return Filtration(cells)


def mobius_circle_index(segments: int) -> int:
    """Index at which the boundary circle of mobius_filtration is complete."""
    return 4 * segments


def p_fold_annulus(p: int, segments: int) -> Filtration:
    """Mapping cylinder of the circle self-map of winding number p.

    A rim circle with p*segments vertices appears first; the band then
    projects it p times around a core circle with ``segments`` vertices.
    Relative homology of (whole band, rim circle) contains Z_p, so the
    field check reports a pivot divisible by p.
    """
    if p < 2:
        raise ValueError("winding number p must be >= 2")
    n = segments
    if n < 2 * p + 1:
        raise ValueError(f"need at least {2 * p + 1} segments for p = {p}")
    pn = p * n
    rim = list(range(pn))
    core = [pn + i for i in range(n)]

    cells: list[Cell] = []
    for v in rim:
        cells.append(simplex([v]))
    for j in range(pn):
        cells.append(simplex([rim[j], rim[(j + 1) % pn]]))
    for v in core:
        cells.append(simplex([v]))
    for i in range(n):
        cells.append(simplex([core[i], core[(i + 1) % n]]))
    for j in range(pn):
        cells.append(simplex([rim[j], core[j % n]]))          # spokes
    for j in range(pn):
        cells.append(simplex([rim[(j + 1) % pn], core[j % n]]))  # diagonals
    for j in range(pn):
        j1 = (j + 1) % pn
        c0 = core[j % n]
        c1 = core[(j + 1) % n]
        cells.append(simplex([rim[j], rim[j1], c0]))
        cells.append(simplex([rim[j1], c0, c1]))
    return Filtration(cells)


def annulus_circle_index(p: int, segments: int) -> int:
    """Index at which the rim circle of p_fold_annulus is complete."""
    return 2 * p * segments


def cap(f: Filtration) -> Filtration:
    """Cone off the final complex: append an apex vertex and the cone of
    every cell, killing all positive-degree homology of the end result.
    The original filtration order is preserved as a prefix.

    Cone cells are added by (dimension, reverse original order): coning the
    late interior cells before the early ones keeps the intermediate
    complexes free of torsion in the cases of interest.  Coning a band's
    boundary circle first, by contrast, passes through a projective-plane
    stage whose first homology has 2-torsion.
    """
    max_vertex = -1
    for cell in f.cells:
        if not cell.is_simplicial:
            raise FiltrationError("can only cap a simplicial filtration")
        max_vertex = max(max_vertex, cell.vertices[-1])
    apex = max_vertex + 1
    cells = list(f.cells)
    cells.append(simplex([apex]))
    order = sorted(range(len(f.cells)), key=lambda i: (f.cells[i].dim, -i))
    for i in order:
        cells.append(simplex(list(f.cells[i].vertices) + [apex]))
    return Filtration(cells)


# ---------------------------------------------------------------------------
# Random processes


@dataclass(frozen=True)
class RandomProcessSpec:
    """Skeleton-plus-random-top-cells process: n vertices, full (d-1)-
    skeleton, then m uniformly sampled distinct d-simplices."""

    n: int
    d: int
    m: int
    seed: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.n < self.d + 1:
            raise ValueError("need at least d + 1 vertices")
        if self.m < 0 or self.m > math.comb(self.n, self.d + 1):
            raise ValueError(
                f"m must lie in 0..C({self.n}, {self.d + 1}) = "
                f"{math.comb(self.n, self.d + 1)}"
            )


def _unrank_combination(rank: int, n: int, k: int) -> tuple[int, ...]:
    """rank -> k-subset of {0..n-1} in lexicographic order."""
    out = []
    x = 0
    for i in range(k, 0, -1):
        while True:
            c = math.comb(n - x - 1, i - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def linial_meshulam_process(spec: RandomProcessSpec) -> Filtration:
    """Full (d-1)-skeleton in (dimension, lexicographic) order, followed by
    m uniformly sampled distinct d-simplices in sampled order.

    Sampling uses a partial Fisher-Yates shuffle over combination ranks
    held in a dictionary, so memory is O(m) rather than O(C(n, d+1)).
    """
    rng = SplitMix64(spec.seed)
    cells: list[Cell] = []
    for q in range(spec.d):
        for vs in combinations(range(spec.n), q + 1):
            cells.append(simplex(vs))
    total = math.comb(spec.n, spec.d + 1)
    swapped: dict[int, int] = {}
    for i in range(spec.m):
        j = rng.randrange(i, total)
        pick = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
        cells.append(simplex(_unrank_combination(pick, spec.n, spec.d + 1)))
    return Filtration(cells, validate=False)


# ---------------------------------------------------------------------------
# Pointclouds


@dataclass(frozen=True)
class Pointcloud:
    points: tuple[tuple[float, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    @property
    def n_points(self) -> int:
        return len(self.points)

    def __post_init__(self):
        if any(len(p) != self.dim for p in self.points):
            raise ValueError("points have mixed dimensions")


def parse_pointcloud(text: str) -> Pointcloud:
    points = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        points.append(tuple(float(t) for t in line.split()))
    return Pointcloud(points=tuple(points))


def write_pointcloud(pc: Pointcloud) -> str:
    lines = (" ".join(repr(x) for x in p) for p in pc.points)
    out = "\n".join(lines)
    return out + "\n" if out else ""


_WINDINGS = {"double": 2, "triple": 3}


def loop_pointcloud(kind: str, n_points: int, noise_amplitude: float,
                    seed: int) -> Pointcloud:
    """Points on a closed curve in R^3 winding p times around a circle.

    The curve is the rim of a band of half-width 0.3 around the unit
    circle: ((1 + 0.3 cos t) cos pt, (1 + 0.3 cos t) sin pt, 0.3 sin t)
    for t in [0, 2 pi), p = 2 (double) or 3 (triple).  Uniform coordinate
    noise of the given amplitude is added.
    """
    if kind not in _WINDINGS:
        raise ValueError(f"kind must be one of {sorted(_WINDINGS)}")
    p = _WINDINGS[kind]
    if n_points < 3 * p:
        raise ValueError(f"need at least {3 * p} points")
    rng = SplitMix64(seed)
    w = 0.3
    pts = []
    for k in range(n_points):
        t = 2.0 * math.pi * k / n_points
        r = 1.0 + w * math.cos(t)
        x = r * math.cos(p * t)
        y = r * math.sin(p * t)
        z = w * math.sin(t)
        if noise_amplitude:
            x += noise_amplitude * (2.0 * rng.uniform() - 1.0)
            y += noise_amplitude * (2.0 * rng.uniform() - 1.0)
            z += noise_amplitude * (2.0 * rng.uniform() - 1.0)
        pts.append((x, y, z))
    return Pointcloud(points=tuple(pts))


def uniform_pointcloud(n_points: int, dim: int, seed: int) -> Pointcloud:
    """n uniform points in the unit cube [0, 1]^dim."""
    rng = SplitMix64(seed)
    return Pointcloud(
        points=tuple(
            tuple(rng.uniform() for _ in range(dim)) for _ in range(n_points)
        )
    )


# ---------------------------------------------------------------------------
# Vietoris-Rips


def rips_filtration(pc: Pointcloud, max_dim: int, max_radius: float) -> Filtration:
    """All simplices of dimension <= max_dim with diameter <= 2*max_radius,
    ordered by (appearance diameter, dimension, vertex order); each cell is
    labelled with its appearance radius.

    Comparisons use squared diameters, so the order is exact; the
    lower-dimension-first tie-break keeps every prefix closed.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    n = pc.n_points
    pts = np.asarray(pc.points, dtype=float)
    if n == 0:
        return Filtration([])
    diff = pts[:, None, :] - pts[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    thr = 4.0 * max_radius * max_radius

    simplices: list[tuple[float, int, tuple[int, ...]]] = []
    for i in range(n):
        simplices.append((0.0, 0, (i,)))
    if max_dim >= 1:
        adj = (sq <= thr) & ~np.eye(n, dtype=bool)
        ii, jj = np.nonzero(np.triu(adj, 1))
        edges = list(zip(ii.tolist(), jj.tolist()))
        for i, j in edges:
            simplices.append((float(sq[i, j]), 1, (i, j)))
        frontier = edges
        for q in range(2, max_dim + 1):
            nxt = []
            for vs in frontier:
                common = adj[vs[0]]
                for v in vs[1:]:
                    common = common & adj[v]
                for k in np.nonzero(common)[0].tolist():
                    if k <= vs[-1]:
                        continue
                    cand = vs + (k,)
                    diam = max(float(sq[a, b]) for a, b in combinations(cand, 2))
                    simplices.append((diam, q, cand))
                    nxt.append(cand)
            frontier = nxt

    simplices.sort(key=lambda s: (s[0], s[1], s[2]))
    cells = [
        simplex(vs, label=math.sqrt(d) / 2.0) for d, _, vs in simplices
    ]
    return Filtration(cells, validate=False)
