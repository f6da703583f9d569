"""Benchmark harness comparing the frame router against the grid baselines.

For each net count a batch of random environments is generated and routed by
all three algorithms.  Per-net detour ratios use a common Manhattan reference
distance, and aggregate statistics are two-level: first a mean per
environment, then mean and standard deviation across the environments every
algorithm completed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

from .forest import ForestConstructionError, build_forest
from .frame import cut
from .geometry import (
    Environment,
    EnvironmentGenerationError,
    derive_environment_seed,
    generate_environment,
    manhattan_distance,
)
from .gridastar import route_env_astar
from .router import extract_all_classes, route_all
from .sketch import SketchConfig, path_length, sketch_all

ALGORITHMS = ("CF", "AS1", "AS2")
CSV_HEADER = ("n", "h", "algo", "net", "l", "d", "r", "time_env_ms", "completed")


@dataclass(frozen=True)
class ExperimentConfig:
    net_counts: tuple[int, ...] = (2, 4, 6, 8, 10)
    envs_per_count: int = 100
    master_seed: int = 20240901
    height_interval: float = 0.5


@dataclass
class NetRecord:
    n: int
    h: int
    algo: str
    net: int
    length: float | None   # None when this net failed to route
    reference: float
    time_env_ms: float
    completed: bool

    @property
    def ratio(self) -> float | None:
        if self.length is None or self.reference == 0:
            return None
        return self.length / self.reference


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[NetRecord] = field(default_factory=list)
    generation_failures: list[tuple[int, int]] = field(default_factory=list)

    def common_envs(self, n: int) -> list[int]:
        """Environments of size n that every algorithm fully completed."""
        status: dict[int, dict[str, bool]] = {}
        for rec in self.records:
            if rec.n != n:
                continue
            status.setdefault(rec.h, {})[rec.algo] = (
                status.get(rec.h, {}).get(rec.algo, True) and rec.completed)
        return sorted(h for h, per in status.items()
                      if all(per.get(a, False) for a in ALGORITHMS))

    def env_mean_ratio(self, n: int, h: int, algo: str) -> float:
        rs = [rec.ratio for rec in self.records
              if rec.n == n and rec.h == h and rec.algo == algo
              and rec.ratio is not None]
        if not rs:
            raise ValueError(f"no completed nets for n={n} h={h} {algo}")
        return sum(rs) / len(rs)

    def aggregate(self) -> dict:
        """Two-level statistics over the common completed environments."""
        out: dict = {"by_n": {}}
        for n in self.config.net_counts:
            common = self.common_envs(n)
            entry: dict = {"n_common": len(common), "algos": {}}
            for algo in ALGORITHMS:
                if common:
                    means = [self.env_mean_ratio(n, h, algo) for h in common]
                    mu = sum(means) / len(means)
                    var = (sum((m - mu) ** 2 for m in means) / len(means)
                           if len(means) > 1 else 0.0)
                    times = sorted(
                        {(rec.h, rec.time_env_ms) for rec in self.records
                         if rec.n == n and rec.algo == algo and rec.h in common})
                    t_mu = sum(t for _, t in times) / len(times)
                else:
                    mu = var = t_mu = float("nan")
                completed_envs = len(
                    {rec.h for rec in self.records
                     if rec.n == n and rec.algo == algo and rec.completed})
                entry["algos"][algo] = {
                    "mean_ratio": mu,
                    "std_ratio": math.sqrt(var) if not math.isnan(var) else var,
                    "mean_time_ms": t_mu,
                    "completed_envs": completed_envs,
                }
            out["by_n"][n] = entry
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_HEADER)
        for rec in self.records:
            writer.writerow([
                rec.n, rec.h, rec.algo, rec.net,
                f"{rec.length:.6f}" if rec.length is not None else "",
                f"{rec.reference:.6f}",
                f"{rec.ratio:.6f}" if rec.ratio is not None else "",
                f"{rec.time_env_ms:.3f}",
                int(rec.completed),
            ])
        return buf.getvalue()

    def to_report_json(self) -> str:
        return json.dumps({
            "config": {
                "net_counts": list(self.config.net_counts),
                "envs_per_count": self.config.envs_per_count,
                "master_seed": self.config.master_seed,
                "height_interval": self.config.height_interval,
            },
            "generation_failures": self.generation_failures,
            "aggregate": self.aggregate(),
        }, indent=2)


def reference_distances(env: Environment) -> dict[int, float]:
    """Algorithm-independent Manhattan distance per net, between centers."""
    return {net.index: manhattan_distance(env.entity(net.start_id).center,
                                          env.entity(net.end_id).center)
            for net in env.nets}


def run_frame_pipeline(env: Environment,
                       height_interval: float = 0.5) -> tuple[dict[int, float], float]:
    """Forest, cut, route, extract, sketch; returns lengths and time in ms."""
    t0 = time.perf_counter()
    forest = build_forest(env)
    frame = cut(env, forest)
    rf = route_all(frame, list(env.nets))
    classes = extract_all_classes(rf, forest, list(env.nets))
    paths = sketch_all(classes, env, SketchConfig(height_interval=height_interval))
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return {p.net_index: path_length_of(p) for p in paths}, elapsed_ms


def path_length_of(path) -> float:
    return path_length(path)


def _bench_env(result: ExperimentResult, env: Environment, n: int, h: int,
               cfg: ExperimentConfig) -> None:
    refs = reference_distances(env)

    try:
        cf_lengths, cf_ms = run_frame_pipeline(env, cfg.height_interval)
        cf_completed = len(cf_lengths) == n
    except ForestConstructionError:
        cf_lengths, cf_ms, cf_completed = {}, 0.0, False
    for net in env.nets:
        result.records.append(NetRecord(
            n, h, "CF", net.index, cf_lengths.get(net.index),
            refs[net.index], cf_ms, cf_completed))

    for variant in ("AS1", "AS2"):
        t0 = time.perf_counter()
        grid = route_env_astar(env, variant)
        ms = (time.perf_counter() - t0) * 1000.0
        for net in env.nets:
            result.records.append(NetRecord(
                n, h, variant, net.index, grid.lengths.get(net.index),
                refs[net.index], ms, grid.completed))


def run_experiment(cfg: ExperimentConfig = ExperimentConfig(),
                   progress=None) -> ExperimentResult:
    """Run the full benchmark batch described by the configuration."""
    result = ExperimentResult(cfg)
    for n in cfg.net_counts:
        for h in range(1, cfg.envs_per_count + 1):
            seed = derive_environment_seed(cfg.master_seed, n, h)
            try:
                env = generate_environment(n, seed)
            except EnvironmentGenerationError:
                result.generation_failures.append((n, h))
                continue
            _bench_env(result, env, n, h, cfg)
            if progress is not None:
                progress(n, h)
    return result
