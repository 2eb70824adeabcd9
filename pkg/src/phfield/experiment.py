"""Seeded experiment batches: generate a filtration per seed, run the
field-dependence check, aggregate verdict counts.

Trials are pure functions of (generator spec, seed), so results are
deterministic regardless of the level of process parallelism; rows are
always merged in seed order.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .filtration import Filtration
from .generators import (
    RandomProcessSpec,
    cap,
    linial_meshulam_process,
    loop_pointcloud,
    mobius_filtration,
    p_fold_annulus,
    rips_filtration,
    uniform_pointcloud,
)
from .reduction import compute_diagram
from .torsion import check_field_independence

PARALLELISM_ENV = "PHFIELD_PARALLELISM"

GENERATOR_KINDS = ("mobius", "annulus", "lm", "loop_rips", "uniform_rips")


@dataclass(frozen=True)
class GeneratorSpec:
    """A named filtration generator plus its parameters (seed excluded)."""

    kind: str
    params: dict

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def build(self, seed: int) -> Filtration:
        p = self.params
        if self.kind == "mobius":
            f = mobius_filtration(int(p.get("segments", 6)))
        elif self.kind == "annulus":
            f = p_fold_annulus(int(p["p"]), int(p["segments"]))
        elif self.kind == "lm":
            f = linial_meshulam_process(
                RandomProcessSpec(n=int(p["n"]), d=int(p["d"]), m=int(p["m"]), seed=seed)
            )
        elif self.kind == "loop_rips":
            pc = loop_pointcloud(
                p.get("loop", "double"),
                int(p.get("n_points", 120)),
                float(p.get("noise", 0.05)),
                seed,
            )
            f = rips_filtration(pc, int(p.get("max_dim", 2)), float(p["max_radius"]))
        elif self.kind == "uniform_rips":
            pc = uniform_pointcloud(int(p.get("n_points", 100)), int(p.get("dim", 3)), seed)
            f = rips_filtration(pc, int(p.get("max_dim", 3)), float(p["max_radius"]))
        else:
            raise AssertionError(self.kind)
        if p.get("cap"):
            f = cap(f)
        return f


@dataclass(frozen=True)
class TrialRow:
    seed: int
    n_cells: Optional[int] = None
    verdict: Optional[str] = None
    pivot: Optional[str] = None
    witness_column: Optional[int] = None
    wall_time_s: Optional[float] = None
    diagram_digest: Optional[str] = None
    error: Optional[str] = None


@dataclass
class ExperimentReport:
    spec: GeneratorSpec
    seed_start: int
    seed_end: int
    trials: list[TrialRow] = field(default_factory=list)

    @property
    def aggregate(self) -> dict:
        done = [t for t in self.trials if t.error is None]
        dep = sum(1 for t in done if t.verdict == "dependent")
        ind = sum(1 for t in done if t.verdict == "independent")
        return {
            "trials": len(self.trials),
            "completed": len(done),
            "dependent": dep,
            "independent": ind,
            "errors": len(self.trials) - len(done),
            "dependent_fraction": (dep / len(done)) if done else None,
        }

    def to_json_dict(self) -> dict:
        return {
            "version": __version__,
            "spec": {"kind": self.spec.kind, "params": self.spec.params},
            "seed_start": self.seed_start,
            "seed_end": self.seed_end,
            "trials": [
                {
                    "seed": t.seed,
                    "n_cells": t.n_cells,
                    "verdict": t.verdict,
                    "pivot": t.pivot,
                    "witness_column": t.witness_column,
                    "wall_time_s": t.wall_time_s,
                    "diagram_digest": t.diagram_digest,
                    "error": t.error,
                }
                for t in self.trials
            ],
            "aggregate": self.aggregate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def run_trial(spec: GeneratorSpec, seed: int, digest: bool = False) -> TrialRow:
    """One seeded trial; failures are captured, not raised."""
    t0 = time.perf_counter()
    try:
        f = spec.build(seed)
        verdict = check_field_independence(f)
        dg = None
        if digest:
            payload = compute_diagram(f, "zp:2").to_json()
            dg = hashlib.sha256(payload.encode()).hexdigest()
        return TrialRow(
            seed=seed,
            n_cells=f.n_cells,
            verdict=verdict.kind,
            pivot=None if verdict.pivot_magnitude is None else str(verdict.pivot_magnitude),
            witness_column=verdict.witness_column,
            wall_time_s=time.perf_counter() - t0,
            diagram_digest=dg,
        )
    except Exception as e:  # per-trial isolation: record and continue
        return TrialRow(seed=seed, wall_time_s=time.perf_counter() - t0,
                        error=f"{type(e).__name__}: {e}")


def default_parallelism() -> int:
    try:
        return max(1, int(os.environ.get(PARALLELISM_ENV, "1")))
    except ValueError:
        return 1


def run_experiment(spec: GeneratorSpec, seed_start: int, seed_end: int,
                   parallelism: Optional[int] = None,
                   digest: bool = False) -> ExperimentReport:
    """Run one trial per seed in [seed_start, seed_end]; rows in seed order."""
    if seed_end < seed_start:
        raise ValueError("empty seed range")
    seeds = list(range(seed_start, seed_end + 1))
    workers = parallelism if parallelism is not None else default_parallelism()
    report = ExperimentReport(spec=spec, seed_start=seed_start, seed_end=seed_end)
    if workers <= 1 or len(seeds) == 1:
        report.trials = [run_trial(spec, s, digest) for s in seeds]
        return report
    with ProcessPoolExecutor(max_workers=workers) as pool:
        report.trials = list(pool.map(run_trial, [spec] * len(seeds), seeds,
                                      [digest] * len(seeds)))
    return report
