"""Set families over ``[n] = {1..n}`` and their structural predicates.

Sets are stored as integer bit masks: element ``x`` lives at bit ``x - 1``.
The public surface speaks in 1-based elements and 1-based set positions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BadParameter, EmptyMemberSet


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        if x < 1:
            raise BadParameter(f"elements are 1-based, got {x}")
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def low_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks that make up ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class SetFamily:
    """An ordered list of subsets of ``[n]``. Duplicates and empty sets are allowed."""

    n: int
    sets: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise BadParameter("universe size must be non-negative")
        object.__setattr__(self, "sets", tuple(self.sets))
        limit = full_mask(self.n)
        for s in self.sets:
            if s < 0 or s & ~limit:
                raise BadParameter(f"set {elements_of(s)} is not a subset of [{self.n}]")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        if n < 1:
            raise BadParameter("n must be at least 1")
        return cls(n, tuple(mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        for s in self.sets:
            yield frozenset(elements_of(s))

    def to_lists(self) -> list[list[int]]:
        return [elements_of(s) for s in self.sets]

    def to_dict(self) -> dict:
        return {"n": self.n, "sets": self.to_lists()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> SetFamily:
        try:
            n = int(data["n"])
            sets = data["sets"]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameter(f"malformed family: {exc}") from None
        if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
            raise BadParameter("'sets' must be a list of lists")
        for s in sets:
            for x in s:
                if not isinstance(x, int) or not 1 <= x <= n:
                    raise BadParameter(f"element {x!r} outside [1, {n}]")
        return cls.from_sets(n, sets)

    @classmethod
    def from_json(cls, text: str) -> SetFamily:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadParameter(f"malformed JSON: {exc}") from None
        return cls.from_dict(data)

    def stars(self) -> list[int]:
        """Per element (0-based position), the mask of query indices containing it."""
        out = [0] * self.n
        for i, s in enumerate(self.sets):
            for low in low_bits(s):
                out[low.bit_length() - 1] |= 1 << i
        return out

    def distinct(self) -> list[tuple[int, int]]:
        """``(index, mask)`` for the first occurrence of every distinct set value."""
        seen = set()
        out = []
        for i, s in enumerate(self.sets):
            if s not in seen:
                seen.add(s)
                out.append((i, s))
        return out

    def members(self, by_index: bool = False) -> list[tuple[int, int]]:
        if by_index:
            return list(enumerate(self.sets))
        return self.distinct()


@dataclass
class PropertyReport:
    """Verdict of a family property; ``witness`` holds a replayable counterexample."""

    holds: bool
    witness: dict | None = field(default=None)
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {"holds": self.holds, "witness": self.witness}
        if self.note:
            out["note"] = self.note
        return out


def _violation(**witness) -> PropertyReport:
    return PropertyReport(False, witness)


def _positions(*indices: int) -> list[int]:
    return [i + 1 for i in indices]


def complement_family(F: SetFamily) -> SetFamily:
    full = full_mask(F.n)
    return SetFamily(F.n, tuple(full & ~s for s in F.sets))


def dual_family(F: SetFamily) -> SetFamily:
    """Set ``a`` of the result holds the (1-based) positions of the sets containing ``a``.

    One set per element, so equal stars stay as separate members. The universe of
    the result is ``len(F)`` and may be empty when ``F`` has no sets.
    """
    return SetFamily(len(F.sets), tuple(F.stars()))


def d_fold_unions(F: SetFamily, d: int, by_index: bool = False) -> SetFamily:
    if d < 1:
        raise BadParameter("d must be at least 1")
    members = [s for _, s in F.members(by_index)]
    out: list[int] = []
    seen = set()
    for combo in combinations(members, d):
        if not by_index and len(set(combo)) < d:
            continue
        u = 0
        for s in combo:
            u |= s
        if u not in seen:
            seen.add(u)
            out.append(u)
    return SetFamily(F.n, tuple(out))


def is_sperner(F: SetFamily) -> PropertyReport:
    sets = F.sets
    for i, j in combinations(range(len(sets)), 2):
        a, b = sets[i], sets[j]
        if a & ~b == 0:
            return _violation(sets=_positions(i, j), relation="subset")
        if b & ~a == 0:
            return _violation(sets=_positions(j, i), relation="subset")
    return PropertyReport(True)


def _cancellation_scan(F: SetFamily, op) -> PropertyReport:
    members = F.distinct()
    for k, (i1, a) in enumerate(members):
        others = members[:k] + members[k + 1:]
        for (i2, b), (i3, c) in combinations(others, 2):
            if op(a, b) == op(a, c):
                return _violation(sets=_positions(i1, i2, i3))
    return PropertyReport(True)


def is_cancellative(F: SetFamily) -> PropertyReport:
    """No distinct ``A, B, C`` with ``A | B == A | C``; witness is ``[A, B, C]`` positions."""
    return _cancellation_scan(F, lambda a, b: a | b)


def is_intersection_cancellative(F: SetFamily) -> PropertyReport:
    return _cancellation_scan(F, lambda a, b: a & b)


def is_intersection_closed(F: SetFamily) -> PropertyReport:
    values = set(F.sets)
    sets = F.sets
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] & sets[j] not in values:
            return _violation(sets=_positions(i, j), missing=elements_of(sets[i] & sets[j]))
    return PropertyReport(True)


def _minimal_sets(sets: Sequence[int]) -> list[int]:
    """Drop duplicates and proper supersets; a hitting set for the rest hits them too."""
    uniq = sorted(set(sets), key=popcount)
    kept: list[int] = []
    for s in uniq:
        if not any(k & ~s == 0 for k in kept):
            kept.append(s)
    return kept


def _disjoint_packing(sets: Sequence[int]) -> int:
    used = 0
    count = 0
    for s in sets:
        if not s & used:
            used |= s
            count += 1
    return count


def _hits_within(sets: list[int], k: int) -> bool:
    if not sets:
        return True
    if k <= 0:
        return False
    # any transversal needs one element per pairwise-disjoint member
    if _disjoint_packing(sets) > k:
        return False
    smallest = min(sets, key=popcount)
    for low in low_bits(smallest):
        if _hits_within([s for s in sets if not s & low], k - 1):
            return True
    return False


def has_transversal(sets: Iterable[int], k: int) -> bool:
    """Whether at most ``k`` elements meet every mask in ``sets`` (an empty mask never is)."""
    sets = list(sets)
    if any(s == 0 for s in sets):
        return False
    return _hits_within(_minimal_sets(sets), k)


def covering_number(H: SetFamily) -> int:
    """Size of the smallest set of elements meeting every member of ``H``."""
    if any(s == 0 for s in H.sets):
        raise EmptyMemberSet("an empty member cannot be met; the covering number is infinite")
    sets = _minimal_sets(H.sets)
    k = 0
    while not _hits_within(sets, k):
        k += 1
    return k


def restricted_star(F: SetFamily, x: int) -> SetFamily:
    if not 1 <= x <= F.n:
        raise BadParameter(f"element {x} outside [1, {F.n}]")
    bit = 1 << (x - 1)
    return SetFamily(F.n, tuple(s & ~bit for s in F.sets if s & bit))
