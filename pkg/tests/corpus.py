"""Deterministic filtration corpora shared by the test modules.

Everything is seeded through the package's portable RNG, so the corpus is
identical on every run and platform.
"""

from __future__ import annotations

import math

from phfield.filtration import Filtration, parse_explicit, write_explicit
from phfield.generators import (
    RandomProcessSpec,
    cap,
    linial_meshulam_process,
    mobius_filtration,
    p_fold_annulus,
    rips_filtration,
    uniform_pointcloud,
)
from phfield.rng import SplitMix64


def filled_triangle() -> Filtration:
    from phfield.filtration import simplex

    return Filtration([
        simplex([0]), simplex([1]), simplex([2]),
        simplex([0, 1]), simplex([0, 2]), simplex([1, 2]),
        simplex([0, 1, 2]),
    ])


def circle(n: int = 4) -> Filtration:
    from phfield.filtration import simplex

    cells = [simplex([i]) for i in range(n)]
    for i in range(n - 1):
        cells.append(simplex([i, i + 1]))
    cells.append(simplex([0, n - 1]))
    return Filtration(cells)


def _random_rips(rng: SplitMix64, max_cells: int) -> Filtration:
    n_points = rng.randrange(5, 13 if max_cells <= 60 else 18)
    dim = rng.randrange(2, 4)
    max_dim = rng.randrange(1, 4)
    radius = 0.25 + 0.45 * rng.uniform()
    pc = uniform_pointcloud(n_points, dim, rng.next_u64())
    f = rips_filtration(pc, max_dim, radius)
    if f.n_cells > max_cells:
        f = f.truncate(max_cells)
    return f


def _random_lm(rng: SplitMix64, max_cells: int) -> Filtration:
    n = rng.randrange(5, 8)
    d = 2
    skeleton = n + math.comb(n, 2)
    m_max = min(math.comb(n, 3), max(0, max_cells - skeleton))
    m = rng.randrange(0, m_max + 1)
    return linial_meshulam_process(RandomProcessSpec(n=n, d=d, m=m, seed=rng.next_u64()))


def _as_explicit(f: Filtration) -> Filtration:
    return parse_explicit(write_explicit(f))


def annulus_with_core_disk(p: int, segments: int) -> Filtration:
    """p-fold band whose core circle is filled by a disk fan at the end.

    Unlike cap(), only the core is killed, so every step has free absolute
    homology while the band's relative torsion (hence the field dependence
    of the degree-1 diagram) survives.
    """
    from phfield.filtration import simplex

    base = p_fold_annulus(p, segments)
    pn = p * segments
    core = [pn + i for i in range(segments)]
    center = pn + segments
    cells = list(base.cells)
    cells.append(simplex([center]))
    for i in range(segments):
        cells.append(simplex([core[i], center]))
    for i in range(segments):
        cells.append(simplex([core[i], core[(i + 1) % segments], center]))
    return Filtration(cells)


def random_filtrations(count: int, max_cells: int, seed: int) -> list[tuple[str, Filtration]]:
    """Mixed random corpus; includes torsion witnesses, capped complexes,
    and a sprinkling of explicit-boundary encodings."""
    rng = SplitMix64(seed)
    out: list[tuple[str, Filtration]] = []
    i = 0
    while len(out) < count:
        i += 1
        roll = rng.below(100)
        name = f"corpus[{seed}:{i}]"
        if roll < 45:
            f = _random_rips(rng, max_cells)
            name += "-rips"
        elif roll < 60:
            f = _random_lm(rng, max_cells)
            name += "-lm"
        elif roll < 72:
            segs = rng.randrange(3, 8)
            f = mobius_filtration(segs)
            if f.n_cells > max_cells:
                f = mobius_filtration(3)
            name += "-mobius"
        elif roll < 80:
            base = mobius_filtration(3)
            f = cap(base)
            if f.n_cells > max_cells:
                f = base
            name += "-capped-mobius"
        elif roll < 90 and max_cells >= 70:
            p = 2 if rng.below(2) else 3
            segs = 2 * p + 1 + rng.below(2)
            f = p_fold_annulus(p, segs)
            if f.n_cells > max_cells:
                f = f.truncate(max_cells)
            name += f"-annulus{p}"
        else:
            base = _random_rips(rng, max_cells)
            k = rng.randrange(1, base.n_cells + 1)
            f = base.truncate(k)
            name += "-truncated-rips"
        if rng.below(10) == 0 and all(c.is_simplicial for c in f.cells):
            f = _as_explicit(f)
            name += "-explicit"
        out.append((name, f))
    return out


def fixture_filtrations(include_large: bool = True) -> list[tuple[str, Filtration]]:
    """Hand-picked named fixtures used across the suite."""
    out = [
        ("filled-triangle", filled_triangle()),
        ("circle", circle()),
        ("capped-circle", cap(circle())),
        ("mobius-3", mobius_filtration(3)),
        ("capped-mobius-3", cap(mobius_filtration(3))),
    ]
    if include_large:
        out += [
            ("mobius-8", mobius_filtration(8)),
            ("annulus-2-5", p_fold_annulus(2, 5)),
            ("annulus-3-7", p_fold_annulus(3, 7)),
            ("capped-annulus-2-5", cap(p_fold_annulus(2, 5))),
            ("core-disk-annulus-2-5", annulus_with_core_disk(2, 5)),
            ("core-disk-annulus-3-7", annulus_with_core_disk(3, 7)),
        ]
    return out
