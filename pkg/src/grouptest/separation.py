"""Search-theoretic family properties: separation, union-freeness and cover-freeness.

"Different" members are value-distinct by default. Pass ``by_index=True`` to treat
every position as its own member, which is what dual families need (two elements
with equal stars are still two elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, log2

from .errors import BadParameter
from .family import PropertyReport, SetFamily, elements_of, full_mask


@dataclass(frozen=True)
class SeparationParams:
    d: int
    r: int = 1

    def __post_init__(self):
        if self.d < 1 or self.r < 1:
            raise BadParameter("d and r must be positive")


def _positions(idx) -> list[int]:
    return [i + 1 for i in idx]


def _union(masks) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def scenario_masks(n: int, d: int) -> list[int]:
    """All ``d``-subsets of ``[n]`` as masks, in lexicographic order of elements."""
    return [_union(1 << (x - 1) for x in c) for c in combinations(range(1, n + 1), d)]


def is_d_separating(F: SetFamily, d: int) -> PropertyReport:
    """Every two distinct ``d``-sets are told apart by some member meeting exactly one."""
    if not 1 <= d <= F.n:
        raise BadParameter(f"d must satisfy 1 <= d <= n, got d={d}, n={F.n}")
    stars = F.stars()
    first: dict[int, int] = {}
    for scenario in scenario_masks(F.n, d):
        answers = 0
        for x in elements_of(scenario):
            answers |= stars[x - 1]
        if answers in first:
            return PropertyReport(
                False, {"scenarios": [elements_of(first[answers]), elements_of(scenario)]}
            )
        first[answers] = scenario
    return PropertyReport(True)


def is_d_union_free(F: SetFamily, d: int, by_index: bool = False) -> PropertyReport:
    if d < 1:
        raise BadParameter("d must be at least 1")
    members = F.members(by_index)
    seen: dict[int, tuple[int, ...]] = {}
    for combo in combinations(members, d):
        u = _union(s for _, s in combo)
        idx = tuple(i for i, _ in combo)
        if u in seen:
            return PropertyReport(
                False, {"subfamilies": [_positions(seen[u]), _positions(idx)]}
            )
        seen[u] = idx
    return PropertyReport(True)


def is_d_cover_free(F: SetFamily, d: int, by_index: bool = False) -> PropertyReport:
    """No member is contained in the union of ``d`` other members.

    Witness: ``covered`` is the position of the contained set, ``cover`` the others.
    """
    if d < 1:
        raise BadParameter("d must be at least 1")
    return is_r_d_cover_free(F, 1, d, by_index)


def is_r_d_cover_free(F: SetFamily, r: int, d: int, by_index: bool = False) -> PropertyReport:
    """No ``r`` members whose intersection lies inside the union of ``d`` other members.

    An empty intersection counts as contained, so ``d + r`` members with no common
    element already violate the property.
    """
    if r < 1 or d < 1:
        raise BadParameter("r and d must be positive")
    members = F.members(by_index)
    if len(members) < r + d:
        return PropertyReport(True)
    full = full_mask(F.n)
    for inner in combinations(range(len(members)), r):
        common = full
        for k in inner:
            common &= members[k][1]
        rest = [k for k in range(len(members)) if k not in inner]
        for outer in combinations(rest, d):
            if common & ~_union(members[k][1] for k in outer) == 0:
                witness = {"cover": _positions(members[k][0] for k in outer)}
                if r == 1:
                    witness["covered"] = members[inner[0]][0] + 1
                else:
                    witness["intersected"] = _positions(members[k][0] for k in inner)
                return PropertyReport(False, witness)
    return PropertyReport(True)


def binary_separating_family(n: int) -> SetFamily:
    """Bit-position tests: set ``j`` holds the elements whose ``x - 1`` has bit ``j`` set."""
    if n < 2:
        raise BadParameter("n must be at least 2")
    width = ceil(log2(n))
    sets = [[x for x in range(1, n + 1) if (x - 1) >> j & 1] for j in range(width)]
    return SetFamily.from_sets(n, sets)
