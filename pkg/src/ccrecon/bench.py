"""Experiment harness: sweep instance sizes, run algorithms over seeded
trials, verify every output against ground truth, and emit CSV or JSON.

Per-trial seeds are derived by hashing (base seed, sweep index, trial
index), so extending a sweep never reshuffles existing trials. The harness
never trusts an algorithm's self-report: correctness is always checked by
comparing edge sets with the hidden graph it generated.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import dataclass, field

from .errors import (BudgetExceededError, InvalidInputError,
                     ParameterTooSmallError)
from .families import generate
from .graphs import Graph, graph_equal
from .oracles import OracleSession
from .params import (degeneracy, exact_treewidth, pairwise_connectivity,
                     quick_treewidth)
from .recon_degeneracy import reconstruct_degeneracy, reconstruct_unknown_degeneracy
from .recon_edges import reconstruct_edge_bounded
from .recon_maxdeg import (reconstruct_bounded_connectivity,
                           reconstruct_bounded_degree, reconstruct_unknown_degree)
from .recon_treewidth import reconstruct_treewidth, reconstruct_unknown_treewidth
from .schemes import build_splitter, scheme_from_splitter

ALGORITHMS = (
    "maxdeg",
    "maxdeg-unknown",
    "connectivity",
    "treewidth",
    "treewidth-unknown",
    "degeneracy",
    "degeneracy-unknown",
    "edge-bounded",
)

MODES = ("randomized", "deterministic")

CSV_COLUMNS = ("algorithm", "family", "n", "delta", "k", "d", "m", "lambda",
               "guess_final", "seed", "queries", "rounds", "correct", "wall_ms")

CSV_VERSION_LINE = "# ccrecon-results v1"

LAMBDA_RECORD_MAX_N = 32
TREEWIDTH_RECORD_MAX_N = 60


@dataclass
class ExperimentConfig:
    algorithm: str
    family: str
    family_params: dict = field(default_factory=dict)
    sweep: tuple[int, ...] = ()
    trials: int = 1
    base_seed: int = 0
    mode: str = "randomized"
    oracle: str = "cc"
    budget: int | None = None
    param: int | None = None
    include_timing: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InvalidInputError(
                f"unknown algorithm {self.algorithm!r}; known: {', '.join(ALGORITHMS)}")
        if self.mode not in MODES:
            raise InvalidInputError(f"unknown mode {self.mode!r}")
        if self.oracle != "cc":
            raise InvalidInputError("experiments drive the CC oracle only")
        if self.trials < 1:
            raise InvalidInputError("trials must be at least 1")
        if not self.sweep:
            raise InvalidInputError("sweep must contain at least one size")


@dataclass
class ExperimentRecord:
    algorithm: str
    family: str
    n: int
    delta: int
    k: int | None
    d: int
    m: int
    lam: int | None
    guess_final: int | None
    seed: int
    queries: int
    rounds: int | None
    correct: bool
    wall_ms: float | None

    def row(self) -> list[str]:
        def cell(x):
            if x is None:
                return ""
            if isinstance(x, bool):
                return "true" if x else "false"
            if isinstance(x, float):
                return f"{x:.3f}"
            return str(x)
        return [cell(getattr(self, name)) for name in
                ("algorithm", "family", "n", "delta", "k", "d", "m", "lam",
                 "guess_final", "seed", "queries", "rounds", "correct", "wall_ms")]


def trial_seed(base_seed: int, point_index: int, trial_index: int) -> int:
    digest = hashlib.sha256(
        f"{base_seed}:{point_index}:{trial_index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def point_params(family: str, family_params: dict, n: int) -> dict:
    """Per-sweep-point generator parameters for a target vertex count."""
    params = dict(family_params)
    if family == "grid":
        if "rows" not in params or "cols" not in params:
            side = math.isqrt(n)
            if side * side != n:
                raise InvalidInputError(
                    f"grid sweep needs square n or explicit rows/cols, got n={n}")
            params.setdefault("rows", side)
            params.setdefault("cols", side)
    elif family == "clique_pair":
        params.setdefault("n", n)
    else:
        params.setdefault("n", n)
    return params


def _resolve_param(config: ExperimentConfig, hidden: Graph) -> int | None:
    if config.param is not None:
        return config.param
    algorithm = config.algorithm
    if algorithm == "maxdeg":
        return hidden.max_degree()
    if algorithm == "connectivity":
        return pairwise_connectivity(hidden)
    if algorithm == "degeneracy":
        return degeneracy(hidden)
    if algorithm == "treewidth":
        if "k" in config.family_params:
            return int(config.family_params["k"])
        value = quick_treewidth(hidden)
        if value is not None:
            return value
        return exact_treewidth(hidden)
    return None


_SCHEME_CACHE: dict[tuple[int, int], object] = {}


def _cached_scheme(n: int, p: int):
    key = (n, p)
    if key not in _SCHEME_CACHE:
        _SCHEME_CACHE[key] = scheme_from_splitter(build_splitter(n, p + 2), p)
    return _SCHEME_CACHE[key]


def _run_algorithm(config: ExperimentConfig, session: OracleSession,
                   param: int | None, rng: random.Random, stats: dict) -> Graph:
    algorithm = config.algorithm
    deterministic = config.mode == "deterministic"
    if algorithm in ("maxdeg", "connectivity", "treewidth", "degeneracy") and param is None:
        raise InvalidInputError(f"algorithm {algorithm} needs a parameter")
    if algorithm == "maxdeg":
        if deterministic:
            return reconstruct_bounded_degree(
                session, param, scheme=_cached_scheme(session.n, param), stats=stats)
        return reconstruct_bounded_degree(session, param, rng=rng, stats=stats)
    if algorithm == "connectivity":
        if deterministic:
            return reconstruct_bounded_connectivity(
                session, param, scheme=_cached_scheme(session.n, param), stats=stats)
        return reconstruct_bounded_connectivity(session, param, rng=rng, stats=stats)
    if algorithm == "treewidth":
        if deterministic:
            return reconstruct_treewidth(
                session, param, scheme=_cached_scheme(session.n, param), stats=stats)
        return reconstruct_treewidth(session, param, rng=rng, stats=stats)
    if algorithm == "degeneracy":
        if deterministic:
            return reconstruct_degeneracy(
                session, param, scheme=_cached_scheme(session.n, 4 * param), stats=stats)
        return reconstruct_degeneracy(session, param, rng=rng, stats=stats)
    if algorithm == "maxdeg-unknown":
        if deterministic:
            return reconstruct_unknown_degree(session, deterministic=True, stats=stats)
        return reconstruct_unknown_degree(session, rng=rng, stats=stats)
    if algorithm == "treewidth-unknown":
        if deterministic:
            return reconstruct_unknown_treewidth(session, deterministic=True, stats=stats)
        return reconstruct_unknown_treewidth(session, rng=rng, stats=stats)
    if algorithm == "degeneracy-unknown":
        if deterministic:
            return reconstruct_unknown_degeneracy(session, deterministic=True, stats=stats)
        return reconstruct_unknown_degeneracy(session, rng=rng, stats=stats)
    if algorithm == "edge-bounded":
        return reconstruct_edge_bounded(session, stats=stats)
    raise InvalidInputError(f"unknown algorithm {algorithm!r}")


def _record_treewidth(hidden: Graph, config: ExperimentConfig) -> int | None:
    """Treewidth for the record's k column: only when cheaply certain, else
    the generator's width bound for partial k-trees, else blank."""
    if hidden.n <= TREEWIDTH_RECORD_MAX_N:
        value = quick_treewidth(hidden)
        if value is not None:
            return value
    if config.family == "partial_ktree":
        return int(config.family_params.get("k"))
    return None


def run_experiment(config: ExperimentConfig) -> list[ExperimentRecord]:
    """All sweep points and trials, in deterministic order."""
    records: list[ExperimentRecord] = []
    for point_index, n in enumerate(config.sweep):
        params = point_params(config.family, config.family_params, n)
        for trial_index in range(config.trials):
            seed = trial_seed(config.base_seed, point_index, trial_index)
            hidden = generate(config.family, params, seed)
            param = _resolve_param(config, hidden)
            session = OracleSession(hidden, budget=config.budget)
            rng = random.Random(trial_seed(config.base_seed, point_index,
                                           trial_index) ^ 0x5EED)
            stats: dict = {}
            start = time.perf_counter() if config.include_timing else None
            correct = False
            try:
                output = _run_algorithm(config, session, param, rng, stats)
                correct = graph_equal(output, hidden)
            except (BudgetExceededError, ParameterTooSmallError):
                correct = False
            wall_ms = ((time.perf_counter() - start) * 1000.0
                       if start is not None else None)
            lam = (pairwise_connectivity(hidden)
                   if hidden.n <= LAMBDA_RECORD_MAX_N else None)
            guess_final = stats.get("guess_final", param)
            records.append(ExperimentRecord(
                algorithm=config.algorithm,
                family=config.family,
                n=hidden.n,
                delta=hidden.max_degree(),
                k=_record_treewidth(hidden, config),
                d=degeneracy(hidden),
                m=hidden.m,
                lam=lam,
                guess_final=guess_final,
                seed=seed,
                queries=session.query_count,
                rounds=stats.get("rounds"),
                correct=correct,
                wall_ms=wall_ms,
            ))
    return records


def write_csv(records: list[ExperimentRecord], fh) -> None:
    """Fixed, versioned column order; deterministic bytes unless timing is on."""
    fh.write(CSV_VERSION_LINE + "\n")
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for rec in records:
        fh.write(",".join(rec.row()) + "\n")


def write_json(records: list[ExperimentRecord], fh) -> None:
    payload = [dict(zip(CSV_COLUMNS, rec.row())) for rec in records]
    fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _slope(xs: list[float], ys: list[float]) -> float:
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    var = sum((x - mean_x) ** 2 for x in xs)
    if var == 0:
        raise InvalidInputError("cannot fit a slope to identical x values")
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return cov / var


@dataclass
class ScalingFit:
    """Mean queries per (parameter, n) point plus log-log exponents.

    The parameter axis is fitted against parameter+1, matching the sampling
    formulas, whose inclusion probabilities all use parameter+1.
    """

    mean_queries: dict[tuple[int, int], float]
    param_exponents: dict[int, float]
    logn_exponents: dict[int, float]


def fit_scaling(records: list[ExperimentRecord], param_field: str = "delta") -> ScalingFit:
    """Least-squares exponents of the parameter (at fixed n) and of log n
    (at fixed parameter) against mean query counts."""
    if param_field not in ("delta", "k", "d", "lam", "guess_final"):
        raise InvalidInputError(f"unknown parameter field {param_field!r}")
    points: dict[tuple[int, int], list[int]] = {}
    for rec in records:
        value = getattr(rec, param_field)
        if value is None:
            raise InvalidInputError(f"record missing {param_field}")
        points.setdefault((value, rec.n), []).append(rec.queries)
    mean_queries = {key: sum(qs) / len(qs) for key, qs in points.items()}
    by_n: dict[int, list[tuple[int, float]]] = {}
    by_param: dict[int, list[tuple[int, float]]] = {}
    for (value, n), mean in mean_queries.items():
        by_n.setdefault(n, []).append((value, mean))
        by_param.setdefault(value, []).append((n, mean))
    param_exponents = {
        n: _slope([math.log(v + 1) for v, _ in data], [math.log(q) for _, q in data])
        for n, data in by_n.items() if len(data) >= 3
    }
    logn_exponents = {
        value: _slope([math.log(math.log(n)) for n, _ in data],
                      [math.log(q) for _, q in data])
        for value, data in by_param.items() if len(data) >= 3
    }
    if not param_exponents and not logn_exponents:
        raise InvalidInputError("need at least 3 sweep points along some axis")
    return ScalingFit(mean_queries=mean_queries,
                      param_exponents=param_exponents,
                      logn_exponents=logn_exponents)
