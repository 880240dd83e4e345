"""Non-adaptive query families: randomized subset sampling, witnesses,
query schemes (randomized and splitter-derived), and scheme verification.

A witness is a vertex pair plus p excluded vertices; a scheme covers it when
some query contains the pair and misses every excluded vertex. Schemes with
this property drive the derandomized reconstruction algorithms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import CapacityError, InvalidInputError

EXHAUSTIVE_WITNESS_GUARD = 5_000_000


@dataclass(frozen=True)
class Witness:
    pair: frozenset[int]
    excluded: frozenset[int]

    def __post_init__(self):
        if len(self.pair) != 2:
            raise InvalidInputError("witness pair must contain two distinct vertices")
        if self.pair & self.excluded:
            raise InvalidInputError("witness pair and excluded set must be disjoint")


@dataclass(frozen=True)
class QueryScheme:
    """Ordered family of vertex subsets used as non-adaptive CC queries."""

    n: int
    p: int
    queries: tuple[frozenset[int], ...]
    provenance: str

    def __len__(self) -> int:
        return len(self.queries)


@dataclass(frozen=True)
class Splitter:
    """Family of colorings such that every kappa-subset is rainbow somewhere.

    Functions are residues modulo distinct primes (shifted to colors 1..C);
    tables[f][v] is the color of vertex v under function f.
    """

    n: int
    kappa: int
    colors: int
    moduli: tuple[int, ...]
    tables: tuple[tuple[int, ...], ...]

    def splits(self, subset: Iterable[int]) -> bool:
        """True iff some function gives the subset pairwise distinct colors."""
        vs = list(subset)
        return any(
            len({table[v] for v in vs}) == len(vs) for table in self.tables
        )


@dataclass(frozen=True)
class SchemeCheck:
    covered: bool
    counterexample: Witness | None
    checked: int


def bernoulli_subset(n: int, denom: float, rng: random.Random) -> frozenset[int]:
    """Each vertex of 0..n-1 independently with probability 1/denom."""
    if denom < 1:
        raise InvalidInputError(f"denominator must be >= 1, got {denom}")
    if denom == 1:
        return frozenset(range(n))
    p = 1.0 / denom
    return frozenset(v for v in range(n) if rng.random() < p)


def random_scheme_size(n: int, p: int) -> int:
    """Closed-form query count for the randomized scheme construction."""
    if p == 0:
        return 1
    arg = n ** (2.0 / p) * math.e * (n - 2) / p
    return math.ceil((p + 1) ** 2 * math.e * p * math.log(arg))


def random_scheme(n: int, p: int, rng: random.Random) -> QueryScheme:
    """Independent Bernoulli(1/(p+1)) queries, sized by the existence bound.

    The construction succeeds with positive probability; coverage is only
    certified by verify_scheme, which is feasible at desk scale.
    """
    if not (0 <= p <= n - 2):
        raise InvalidInputError(f"need 0 <= p <= n-2, got p={p}, n={n}")
    if p == 0:
        return QueryScheme(n=n, p=0, queries=(frozenset(range(n)),), provenance="random")
    size = random_scheme_size(n, p)
    queries = tuple(bernoulli_subset(n, p + 1, rng) for _ in range(size))
    return QueryScheme(n=n, p=p, queries=queries, provenance="random")


def _primes_from(start: int, count: int) -> list[int]:
    primes: list[int] = []
    candidate = max(start, 2)
    while len(primes) < count:
        is_prime = candidate >= 2
        d = 2
        while d * d <= candidate:
            if candidate % d == 0:
                is_prime = False
                break
            d += 1
        if is_prime:
            primes.append(candidate)
        candidate += 1
    return primes


def build_splitter(n: int, kappa: int) -> Splitter:
    """Deterministic prime-modulus splitter.

    Any fixed pair of distinct vertices collides modulo at most
    log_{kappa^2}(n) primes >= kappa^2, and a kappa-subset has
    kappa*(kappa-1)/2 pairs, so taking strictly more primes than
    pairs * log_{kappa^2}(n) guarantees one prime separates every subset.
    """
    if not (1 <= kappa <= n):
        raise InvalidInputError(f"need 1 <= kappa <= n, got kappa={kappa}, n={n}")
    if kappa == 1:
        return Splitter(n=n, kappa=1, colors=1, moduli=(),
                        tables=(tuple(1 for _ in range(n)),))
    base = kappa * kappa
    pairs = kappa * (kappa - 1) // 2
    collisions_per_pair = math.log(n) / math.log(base) if n > 1 else 0.0
    needed = math.floor(pairs * collisions_per_pair) + 1
    moduli = _primes_from(base, needed)
    tables = tuple(tuple((v % q) + 1 for v in range(n)) for q in moduli)
    return Splitter(n=n, kappa=kappa, colors=moduli[-1], moduli=tuple(moduli),
                    tables=tables)


def scheme_from_splitter(sp: Splitter, p: int) -> QueryScheme:
    """One query per (function, unordered color pair): the union of the two
    color preimages. Requires the splitter built with kappa = p + 2."""
    if sp.kappa != p + 2:
        raise InvalidInputError(
            f"splitter has kappa={sp.kappa}, scheme parameter p={p} needs kappa={p + 2}"
        )
    queries: list[frozenset[int]] = []
    colors = sp.colors
    for table in sp.tables:
        preimages: dict[int, list[int]] = {c: [] for c in range(1, colors + 1)}
        for v, c in enumerate(table):
            preimages[c].append(v)
        used = sorted(c for c, vs in preimages.items() if vs)
        for i in range(1, colors + 1):
            if preimages[i]:
                for j in range(i, colors + 1):
                    queries.append(frozenset(preimages[i] + preimages[j] if j != i
                                             else preimages[i]))
            else:
                for j in used:
                    if j > i:
                        queries.append(frozenset(preimages[j]))
    return QueryScheme(n=sp.n, p=p, queries=tuple(queries), provenance="splitter")


def witness_count_bound(n: int, p: int) -> tuple[int, float]:
    """Exact witness count and its closed-form upper bound."""
    if not (1 <= p <= n - 2):
        raise InvalidInputError(f"need 1 <= p <= n-2, got p={p}, n={n}")
    exact = math.comb(n, 2) * math.comb(n - 2, p)
    bound = n ** 2 * (math.e * (n - 2) / p) ** p
    return exact, bound


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def verify_scheme(scheme: QueryScheme, mode: str = "exhaustive", *,
                  sample_count: int | None = None, rng: random.Random | None = None,
                  guard: int = EXHAUSTIVE_WITNESS_GUARD) -> SchemeCheck:
    """Check witness coverage, exhaustively or on sampled witnesses.

    Returns the first uncovered witness found, if any.
    """
    n, p = scheme.n, scheme.p
    if n < 2 or p > n - 2:
        return SchemeCheck(covered=True, counterexample=None, checked=0)
    masks = [_mask(q) for q in scheme.queries]
    if mode == "exhaustive":
        total = math.comb(n, 2) * math.comb(n - 2, p)
        if total > guard:
            raise CapacityError(
                f"exhaustive verification of {total} witnesses exceeds guard {guard}"
            )
        checked = 0
        for u in range(n):
            for v in range(u + 1, n):
                pair_bits = (1 << u) | (1 << v)
                covering = [m for m in masks if m & pair_bits == pair_bits]
                rest = [w for w in range(n) if w != u and w != v]
                for excluded in combinations(rest, p):
                    checked += 1
                    w_mask = _mask(excluded)
                    if not any(m & w_mask == 0 for m in covering):
                        return SchemeCheck(
                            covered=False,
                            counterexample=Witness(frozenset((u, v)), frozenset(excluded)),
                            checked=checked,
                        )
        return SchemeCheck(covered=True, counterexample=None, checked=checked)
    if mode == "sampled":
        if sample_count is None or rng is None:
            raise InvalidInputError("sampled mode needs sample_count and rng")
        vertices = list(range(n))
        for i in range(sample_count):
            u, v = rng.sample(vertices, 2)
            rest = [w for w in vertices if w != u and w != v]
            excluded = rng.sample(rest, p)
            pair_bits = (1 << u) | (1 << v)
            w_mask = _mask(excluded)
            if not any(m & pair_bits == pair_bits and m & w_mask == 0 for m in masks):
                return SchemeCheck(
                    covered=False,
                    counterexample=Witness(frozenset((u, v)), frozenset(excluded)),
                    checked=i + 1,
                )
        return SchemeCheck(covered=True, counterexample=None, checked=sample_count)
    raise InvalidInputError(f"unknown verification mode {mode!r}")


def save_scheme(scheme: QueryScheme, path) -> None:
    """Text format: header 'n p count provenance', then one sorted query per line."""
    lines = [f"{scheme.n} {scheme.p} {len(scheme.queries)} {scheme.provenance}"]
    for q in scheme.queries:
        lines.append(" ".join(map(str, sorted(q))))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_scheme(path) -> QueryScheme:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().split("\n")
    header = lines[0].split()
    if len(header) != 4:
        raise InvalidInputError(f"bad scheme header: {lines[0]!r}")
    n, p, count = int(header[0]), int(header[1]), int(header[2])
    provenance = header[3]
    if len(lines) < 1 + count:
        raise InvalidInputError(f"scheme file truncated: expected {count} queries")
    queries = tuple(
        frozenset(int(tok) for tok in lines[1 + i].split()) for i in range(count)
    )
    return QueryScheme(n=n, p=p, queries=queries, provenance=provenance)
