"""Round-robin race between reconstruction algorithms.

Each contender is a program driven one query at a time against its own
session over the same hidden graph; the first to finish wins. With c
contenders and a winner needing t queries, the race spends between
c*t - (c-1) and c*t queries in total.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import (BudgetExceededError, CapacityError, InvalidInputError,
                     ParameterTooSmallError, RaceExhaustedError)
from .graphs import Graph
from .oracles import OracleSession
from .recon_edges import edge_bounded_program
from .recon_maxdeg import unknown_degree_program
from .recon_treewidth import unknown_treewidth_program

_RUN_ERRORS = (BudgetExceededError, CapacityError, ParameterTooSmallError)


class SteppableRun:
    """One contender: a program, its private session, and its progress."""

    def __init__(self, algorithm_id: str, program, session: OracleSession):
        self.algorithm_id = algorithm_id
        self.program = program
        self.session = session
        self.finished = False
        self.failed = False
        self.result: Graph | None = None
        self.stats: dict = {}
        self.error: Exception | None = None
        self._pending = None
        self._advance(prime=True)

    @property
    def queries(self) -> int:
        return self.session.query_count

    def _advance(self, answer=None, prime: bool = False) -> None:
        try:
            if prime:
                self._pending = next(self.program)
            else:
                self._pending = self.program.send(answer)
        except StopIteration as stop:
            self.finished = True
            self._pending = None
            value = stop.value
            if isinstance(value, tuple):
                self.result, self.stats = value
            else:
                self.result = value
        except _RUN_ERRORS as exc:
            self.failed = True
            self._pending = None
            self.error = exc

    def step(self) -> None:
        """Perform exactly one query; a no-op once finished or failed."""
        if self.finished or self.failed:
            return
        try:
            answer = self.session.cc_query(self._pending)
        except BudgetExceededError as exc:
            self.failed = True
            self.error = exc
            return
        self._advance(answer)


@dataclass
class RaceReport:
    winner: str
    counts: dict[str, int]
    rounds: int
    total_queries: int

    def to_json(self) -> str:
        return json.dumps({
            "winner": self.winner,
            "counts": self.counts,
            "rounds": self.rounds,
            "total_queries": self.total_queries,
        }, sort_keys=True)


def contender_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def default_contenders(n: int, seed: int):
    """The standard three-way field: edge-bounded search plus the two
    unknown-parameter randomized wrappers, each with its own seeded stream.

    The treewidth contender's stopping rule gets a vertex guard covering the
    instance; its state guard still applies, and a guarded-out contender
    just drops from the race.
    """
    return [
        ("edge-bounded", lambda: edge_bounded_program(n)),
        ("unknown-maxdeg", lambda: unknown_degree_program(
            n, rng=random.Random(contender_seed(seed, 1)))),
        ("unknown-treewidth", lambda: unknown_treewidth_program(
            n, rng=random.Random(contender_seed(seed, 2)),
            decision_max_n=max(64, n))),
    ]


def race(hidden: Graph, contenders=None, *, budget: int | None = None,
         seed: int = 0) -> tuple[Graph, RaceReport]:
    """Run contenders in lockstep; return the first finisher's graph.

    Contenders are (name, factory) pairs where the factory builds a fresh
    program; each gets its own session over the hidden graph. Stepping stops
    the moment a contender finishes, so a final round may be partial; ties
    inside a round go to the earlier-listed contender.
    """
    if contenders is None:
        contenders = default_contenders(hidden.n, seed)
    if not contenders:
        raise InvalidInputError("race needs at least one contender")
    runs = [
        SteppableRun(name, factory(), OracleSession(hidden, budget=budget))
        for name, factory in contenders
    ]
    rounds = 0
    winner = next((r for r in runs if r.finished and not r.failed), None)
    while winner is None:
        live = [r for r in runs if not r.finished and not r.failed]
        if not live:
            raise RaceExhaustedError({r.algorithm_id: r.queries for r in runs})
        rounds += 1
        for run in live:
            run.step()
            if run.finished and not run.failed:
                winner = run
                break
    counts = {r.algorithm_id: r.queries for r in runs}
    report = RaceReport(
        winner=winner.algorithm_id,
        counts=counts,
        rounds=rounds,
        total_queries=sum(counts.values()),
    )
    return winner.result, report
