"""Exhaustive small-n invariant suites, shared by the test suite and the
`validate` CLI subcommand. Each check returns a ValidationResult; the CLI
prints one line per check and exits nonzero on any failure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .bridges import (components_via_mis, components_via_sep, mis_via_cc,
                      sep_via_cc)
from .families import clique_pair_output_forms, generate
from .graphs import Graph, components_bruteforce
from .oracles import OracleSession
from .recon_edges import find_neighbors
from .schemes import build_splitter, scheme_from_splitter, verify_scheme


@dataclass
class ValidationResult:
    name: str
    ok: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        msg = f"{status} {self.name}: {self.checked} checks"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


def iter_all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on n vertices, in edge-mask order."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, (pairs[i] for i in range(len(pairs)) if (mask >> i) & 1))


def _subsets(n: int) -> Iterator[tuple[int, ...]]:
    vertices = list(range(n))
    for size in range(n + 1):
        yield from combinations(vertices, size)


def _is_maximal_independent(g: Graph, s, chosen) -> bool:
    chosen_mask = 0
    for v in chosen:
        chosen_mask |= 1 << v
    for v in chosen:
        if g.adjacency_mask(v) & chosen_mask:
            return False
    for v in s:
        if v not in chosen and not (g.adjacency_mask(v) & chosen_mask):
            return False
    return True


def check_bridge_equivalence(max_n: int) -> ValidationResult:
    """Oracle bridges agree with direct component computation on every graph
    up to max_n vertices, for every query set and pair, at their exact
    query costs."""
    checked = 0
    for n in range(max_n + 1):
        all_pairs = list(combinations(range(n), 2))
        for g in iter_all_graphs(n):
            session = OracleSession(g)
            for s in _subsets(n):
                truth = components_bruteforce(g, s)
                pair_cost = math.comb(len(s), 2)

                before = session.query_count
                mis = mis_via_cc(session, s)
                if session.query_count - before != len(s):
                    return ValidationResult("bridge-equivalence", False, checked,
                                            f"mis-via-cc cost off on n={n}, s={s}")
                if not _is_maximal_independent(g, s, mis):
                    return ValidationResult("bridge-equivalence", False, checked,
                                            f"mis-via-cc invalid on n={n}, s={s}")

                before = session.query_count
                parts = components_via_mis(session, s)
                if parts != truth or session.query_count - before != pair_cost:
                    return ValidationResult("bridge-equivalence", False, checked,
                                            f"components-via-mis off on n={n}, s={s}")

                before = session.query_count
                parts = components_via_sep(session, s)
                if parts != truth or session.query_count - before != pair_cost:
                    return ValidationResult("bridge-equivalence", False, checked,
                                            f"components-via-sep off on n={n}, s={s}")
                checked += 3
            for v, w in all_pairs:
                others = [x for x in range(n) if x != v and x != w]
                for size in range(len(others) + 1):
                    for u in combinations(others, size):
                        expected = not components_bruteforce(
                            g, set(range(n)) - set(u)).same_block(v, w)
                        before = session.query_count
                        got = sep_via_cc(session, v, w, u)
                        if got != expected or session.query_count - before != 1:
                            return ValidationResult(
                                "bridge-equivalence", False, checked,
                                f"sep-via-cc off on n={n}, pair=({v},{w}), u={u}")
                        checked += 1
    return ValidationResult("bridge-equivalence", True, checked)


def check_cc_partition(max_n: int) -> ValidationResult:
    """CC answers always partition the queried set exactly."""
    checked = 0
    for n in range(max_n + 1):
        for g in iter_all_graphs(n):
            session = OracleSession(g)
            for s in _subsets(n):
                parts = session.cc_query(s)
                union: set[int] = set()
                total = 0
                for block in parts.blocks:
                    union |= block
                    total += len(block)
                if union != set(s) or total != len(s):
                    return ValidationResult("cc-partition", False, checked,
                                            f"not a partition on n={n}, s={s}")
                if session.transcript[-1][2] is not parts:
                    return ValidationResult("cc-partition", False, checked,
                                            "transcript out of sync")
                checked += 1
    return ValidationResult("cc-partition", True, checked)


def check_mis_strategies(max_n: int) -> ValidationResult:
    """Both MIS strategies return maximal independent sets on all graphs."""
    checked = 0
    for n in range(max_n + 1):
        for g in iter_all_graphs(n):
            sessions = [OracleSession(g)]
            if n > 0:
                sessions.append(OracleSession(
                    g, mis_strategy="adversary-avoid-center", mis_center=0))
            for session in sessions:
                for s in _subsets(n):
                    out = session.mis_query(s)
                    if not _is_maximal_independent(g, s, out):
                        return ValidationResult(
                            "mis-strategies", False, checked,
                            f"{session.mis_strategy} invalid on n={n}, s={s}")
                    checked += 1
    return ValidationResult("mis-strategies", True, checked)


def check_find_neighbors(max_n: int) -> ValidationResult:
    """Group-testing neighbor search is exact for every graph, vertex, and
    candidate set."""
    checked = 0
    for n in range(1, max_n + 1):
        for g in iter_all_graphs(n):
            session = OracleSession(g)
            for v in range(n):
                others = [x for x in range(n) if x != v]
                for size in range(len(others) + 1):
                    for s in combinations(others, size):
                        expected = g.neighbors(v) & set(s)
                        got = find_neighbors(session, v, s)
                        if got != expected:
                            return ValidationResult(
                                "find-neighbors", False, checked,
                                f"wrong neighbors on n={n}, v={v}, s={s}")
                        checked += 1
    return ValidationResult("find-neighbors", True, checked)


def check_clique_pair_forms(eta: int, query_sets: int, seed: int) -> ValidationResult:
    """Every CC answer on a clique-pair instance is one of the two canonical
    shapes: split cliques plus singletons, or one merged block plus singletons."""
    rng = random.Random(seed)
    checked = 0
    n = 2 * eta + 3
    for round_idx in range(10):
        g = generate("clique_pair",
                     {"eta": eta, "n": n, "cross_prob": rng.random()},
                     seed=rng.randrange(2 ** 32))
        session = OracleSession(g)
        for _ in range(query_sets // 10):
            q = frozenset(v for v in range(n) if rng.random() < 0.5)
            answer = session.cc_query(q)
            split, joined = clique_pair_output_forms(eta, n, q)
            blocks = list(answer.blocks)
            if sorted(blocks, key=min) not in (sorted(split, key=min),
                                               sorted(joined, key=min)):
                return ValidationResult("clique-pair-forms", False, checked,
                                        f"unexpected answer shape for q={sorted(q)}")
            checked += 1
    return ValidationResult("clique-pair-forms", True, checked)


def check_scheme_coverage(max_n: int = 12, max_p: int = 3) -> ValidationResult:
    """Splitter-derived schemes cover every witness, exhaustively."""
    checked = 0
    for n in range(2, max_n + 1):
        for p in range(0, min(max_p, n - 2) + 1):
            scheme = scheme_from_splitter(build_splitter(n, p + 2), p)
            report = verify_scheme(scheme, mode="exhaustive")
            if not report.covered:
                return ValidationResult(
                    "scheme-coverage", False, checked,
                    f"uncovered witness at n={n}, p={p}: {report.counterexample}")
            checked += report.checked
    return ValidationResult("scheme-coverage", True, checked)


def run_validation(max_n: int) -> list[ValidationResult]:
    """The full small-n suite at the given exhaustive bound."""
    return [
        check_cc_partition(min(max_n, 5)),
        check_mis_strategies(min(max_n, 5)),
        check_bridge_equivalence(max_n),
        check_find_neighbors(max_n),
        check_clique_pair_forms(eta=4, query_sets=2000, seed=7),
        check_scheme_coverage(max_n=12, max_p=3),
    ]
