"""Stateful query sessions over a hidden graph.

A session is the only gate between a reconstruction algorithm and the hidden
graph: it answers CC / #CC / MIS / Sep queries, counts every query, keeps a
replayable transcript, and enforces an optional budget. One session has a
single owner; concurrent runs need one session each.
"""

from __future__ import annotations

import json
from typing import Generator, Iterable

from .errors import BudgetExceededError, InvalidInputError
from .graphs import Graph, Partition, components_bruteforce

MIS_STRATEGIES = ("greedy-lex", "adversary-avoid-center")


def greedy_lex_mis(g: Graph, q: Iterable[int]) -> frozenset[int]:
    """Maximal independent set of g[q] built greedily by ascending vertex id."""
    chosen_mask = 0
    chosen: list[int] = []
    for v in sorted(q):
        if not (g.adjacency_mask(v) & chosen_mask):
            chosen.append(v)
            chosen_mask |= 1 << v
    return frozenset(chosen)


class OracleSession:
    """Query gatekeeper around a hidden graph.

    Algorithms must never touch ``hidden`` directly; they see only the
    vertex count and the answers to the four query operations. The
    transcript is a list of (kind, inputs..., output) tuples with inputs as
    sorted tuples; its length always equals query_count.
    """

    def __init__(self, hidden: Graph, budget: int | None = None,
                 mis_strategy: str = "greedy-lex", mis_center: int | None = None):
        if budget is not None and budget <= 0:
            raise InvalidInputError(f"budget must be positive, got {budget}")
        if mis_strategy not in MIS_STRATEGIES:
            raise InvalidInputError(f"unknown MIS strategy {mis_strategy!r}")
        if mis_strategy == "adversary-avoid-center":
            if mis_center is None:
                raise InvalidInputError("adversary-avoid-center needs a designated vertex")
            hidden._check_vertex(mis_center)
        self._hidden = hidden
        self.n = hidden.n
        self.budget = budget
        self.mis_strategy = mis_strategy
        self.mis_center = mis_center
        self.query_count = 0
        self.transcript: list[tuple] = []

    def _charge(self) -> None:
        if self.budget is not None and self.query_count >= self.budget:
            raise BudgetExceededError(self.query_count)
        self.query_count += 1

    def _check_subset(self, q: Iterable[int]) -> frozenset[int]:
        qs = frozenset(q)
        for v in qs:
            if not (0 <= v < self.n):
                raise InvalidInputError(f"vertex {v} out of range for n={self.n}")
        return qs

    def cc_query(self, q: Iterable[int]) -> Partition:
        """Connected components of the hidden graph induced by q."""
        qs = self._check_subset(q)
        self._charge()
        out = components_bruteforce(self._hidden, qs)
        self.transcript.append(("cc", tuple(sorted(qs)), out))
        return out

    def ccc_query(self, q: Iterable[int]) -> int:
        """Number of connected components of the hidden graph induced by q."""
        qs = self._check_subset(q)
        self._charge()
        out = len(components_bruteforce(self._hidden, qs))
        self.transcript.append(("ccc", tuple(sorted(qs)), out))
        return out

    def mis_query(self, q: Iterable[int]) -> frozenset[int]:
        """Some maximal independent set of the hidden graph induced by q.

        The answer follows the session's strategy: plain ascending-id greedy,
        or the star adversary that returns q minus the designated vertex
        whenever that is a maximal independent set.
        """
        qs = self._check_subset(q)
        self._charge()
        out = self._answer_mis(qs)
        self.transcript.append(("mis", tuple(sorted(qs)), tuple(sorted(out))))
        return out

    def _answer_mis(self, qs: frozenset[int]) -> frozenset[int]:
        if self.mis_strategy == "adversary-avoid-center":
            center = self.mis_center
            if center in qs:
                rest = qs - {center}
                rest_mask = 0
                for v in rest:
                    rest_mask |= 1 << v
                independent = all(
                    not (self._hidden.adjacency_mask(v) & rest_mask) for v in rest
                )
                # rest must also be maximal: the center needs a neighbor in it.
                if rest and independent and (self._hidden.adjacency_mask(center) & rest_mask):
                    return frozenset(rest)
        return greedy_lex_mis(self._hidden, qs)

    def sep_query(self, v: int, w: int, u: Iterable[int]) -> bool:
        """True iff v and w fall in different components once u is removed."""
        us = self._check_subset(u)
        if v == w:
            raise InvalidInputError("separation query needs two distinct vertices")
        if not (0 <= v < self.n) or not (0 <= w < self.n):
            raise InvalidInputError("separation endpoints out of range")
        if v in us or w in us:
            raise InvalidInputError("separation endpoints must not be in the removed set")
        self._charge()
        rest = frozenset(range(self.n)) - us
        parts = components_bruteforce(self._hidden, rest)
        out = not parts.same_block(v, w)
        self.transcript.append(("sep", v, w, tuple(sorted(us)), out))
        return out

    def sep_query_sizes(self) -> list[int]:
        """Sizes |U| of the separation queries performed so far."""
        return [len(rec[3]) for rec in self.transcript if rec[0] == "sep"]

    def transcript_records(self) -> list[dict]:
        """Transcript as JSON-friendly dicts, one per query."""
        out = []
        for rec in self.transcript:
            kind = rec[0]
            if kind == "cc":
                out.append({"kind": "cc", "q": list(rec[1]), "out": rec[2].to_lists()})
            elif kind == "ccc":
                out.append({"kind": "ccc", "q": list(rec[1]), "out": rec[2]})
            elif kind == "mis":
                out.append({"kind": "mis", "q": list(rec[1]), "out": list(rec[2])})
            else:
                out.append({"kind": "sep", "v": rec[1], "w": rec[2],
                            "u": list(rec[3]), "out": rec[4]})
        return out

    def dump_transcript(self, fh) -> None:
        """Write the transcript as JSON lines."""
        for rec in self.transcript_records():
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def load_transcript(fh) -> list[dict]:
    return [json.loads(line) for line in fh if line.strip()]


def replay_transcript(hidden: Graph, records: list[dict]) -> bool:
    """Re-run recorded queries against a graph; True iff all outputs match."""
    session = OracleSession(hidden)
    for rec in records:
        kind = rec["kind"]
        if kind == "cc":
            out = session.cc_query(rec["q"]).to_lists()
        elif kind == "ccc":
            out = session.ccc_query(rec["q"])
        elif kind == "mis":
            out = sorted(session.mis_query(rec["q"]))
        elif kind == "sep":
            out = session.sep_query(rec["v"], rec["w"], rec["u"])
        else:
            raise InvalidInputError(f"unknown transcript record kind {kind!r}")
        if out != rec["out"]:
            return False
    return True


# A reconstruction program is a generator that yields CC-query vertex sets,
# receives Partition answers, and returns (Graph, stats). Writing algorithms
# this way lets the race combinator advance several of them one query at a
# time without threads, while plain callers just drive them to completion.
Program = Generator


def drive_program(session: OracleSession, program: Program):
    """Run a program to completion against a session."""
    try:
        query = next(program)
        while True:
            answer = session.cc_query(query)
            query = program.send(answer)
    except StopIteration as stop:
        return stop.value
