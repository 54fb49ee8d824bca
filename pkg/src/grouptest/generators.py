"""Family enumeration and randomized search."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import BadParameter, BudgetExceeded, ConstructionFailure
from .family import SetFamily, mask_of

DEFAULT_N_CAP = 4


def n_cap() -> int:
    """Largest ``n`` that exhaustive enumeration accepts; ``GT_BUDGET`` overrides it."""
    raw = os.environ.get("GT_BUDGET")
    if raw is None:
        return DEFAULT_N_CAP
    try:
        return int(raw)
    except ValueError:
        raise BadParameter(f"GT_BUDGET must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class SweepSpec:
    n: int
    max_sets: int
    d: Sequence[int] = (2,)
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise BadParameter(f"unknown sweep mode {self.mode!r}")
        if self.mode == "random" and self.count < 1:
            raise BadParameter("random sweeps need count >= 1")
        if self.n < 1 or self.max_sets < 1:
            raise BadParameter("n and max_sets must be positive")

    def families(self) -> Iterator[SetFamily]:
        if self.mode == "exhaustive":
            yield from enumerate_families(self.n, self.max_sets)
        else:
            rng = random.Random(self.seed)
            for _ in range(self.count):
                m = rng.randint(1, self.max_sets)
                p = rng.uniform(0.2, 0.6)
                yield random_family(self.n, m, p, rng.getrandbits(32))

    def size(self) -> int:
        if self.mode == "random":
            return self.count
        subsets = 2**self.n - 1
        return sum(comb(subsets, k) for k in range(1, min(self.max_sets, subsets) + 1))


def enumerate_families(n: int, max_sets: int, cap: int | None = None) -> Iterator[SetFamily]:
    """Every family of 1..``max_sets`` distinct nonempty subsets of ``[n]``, each once."""
    limit = n_cap() if cap is None else cap
    if n > limit:
        raise BudgetExceeded(f"exhaustive enumeration capped at n={limit}, asked for n={n}")
    if n < 1 or max_sets < 1:
        raise BadParameter("n and max_sets must be positive")
    subsets = range(1, 2**n)
    for k in range(1, max_sets + 1):
        for combo in combinations(subsets, k):
            yield SetFamily(n, combo)


def random_family(n: int, m: int, p: float, seed: int) -> SetFamily:
    """``m`` sets, each element kept independently with probability ``p``; empty draws are redrawn."""
    if not 0 < p < 1:
        raise BadParameter("p must lie strictly between 0 and 1")
    if m < 1 or n < 1:
        raise BadParameter("n and m must be positive")
    rng = random.Random(seed)
    sets = []
    while len(sets) < m:
        s = [x for x in range(1, n + 1) if rng.random() < p]
        if s:
            sets.append(s)
    return SetFamily.from_sets(n, sets)


def _violations(current: list[int], cand: int, d: int) -> list[set[int]]:
    """Index sets of the cover-free violations that adding ``cand`` would create."""
    out = []
    idx = range(len(current))
    for combo in combinations(idx, d):
        u = 0
        for k in combo:
            u |= current[k]
        if cand & ~u == 0:
            out.append(set(combo))
    for k in idx:
        others = [j for j in idx if j != k]
        for combo in combinations(others, d - 1):
            u = cand
            for j in combo:
                u |= current[j]
            if current[k] & ~u == 0:
                out.append({k, *combo})
    return out


def search_cover_free(
    m: int, target: int, d: int, seed: int = 0, budget: int = 20_000, weight: int | None = None
) -> SetFamily:
    """Randomized local search for ``target`` sets over ``[m]`` forming a ``d``-cover-free family.

    Candidates have constant weight (default ``round(m / (d + 1))``). A candidate
    joins when it creates no violation; when every violation it creates shares a
    member, that member is swapped out instead. Raises
    :class:`ConstructionFailure` whose ``best`` is the largest family reached.
    """
    if d < 1 or m < 1 or target < 1:
        raise BadParameter("m, target and d must be positive")
    w = weight if weight is not None else max(1, round(m / (d + 1)))
    if not 1 <= w <= m:
        raise BadParameter(f"weight {w} outside [1, {m}]")
    rng = random.Random(seed)
    universe = list(range(1, m + 1))
    current: list[int] = []
    best: list[int] = []
    for _ in range(budget):
        if len(current) >= target:
            break
        cand = mask_of(rng.sample(universe, w))
        if cand in current:
            continue
        clashes = _violations(current, cand, d)
        if not clashes:
            current.append(cand)
        else:
            removable = set.intersection(*clashes)
            if removable:
                drop = rng.choice(sorted(removable))
                current = current[:drop] + current[drop + 1:] + [cand]
        if len(current) > len(best):
            best = list(current)
    if len(current) >= target:
        return SetFamily(m, tuple(current))
    raise ConstructionFailure(
        f"found only {len(best)} of {target} sets", best=SetFamily(m, tuple(best))
    )
