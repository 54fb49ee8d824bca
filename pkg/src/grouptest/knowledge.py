"""What an element or a coalition can deduce from the answers it sees.

Reasoning uses only (query, answer) pairs plus the public ``n`` and ``d``.
``consistent_scenarios`` enumerates every ``d``-set. The predicates instead ask
whether a consistent scenario with forced members / forbidden members exists,
which is a bounded hitting-set question on the YES queries and stays exact for
large ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BadParameter, BadScenario
from .family import (
    SetFamily,
    elements_of,
    full_mask,
    has_transversal,
    mask_of,
    popcount,
    restricted_star,
)


@dataclass(frozen=True)
class KnowledgeView:
    coalition: frozenset[int]
    visible: tuple[int, ...]  # 0-based query positions
    answers: tuple[bool, ...]


@dataclass(frozen=True)
class Evidence:
    """Answered queries as masks: the YES queries and the union of all NO queries."""

    n: int
    yes: tuple[int, ...]
    no_union: int = 0

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, bool]]) -> Evidence:
        yes = []
        no = 0
        for q, a in pairs:
            if a:
                yes.append(q)
            else:
                no |= q
        return cls(n, tuple(yes), no)

    def admits(self, d: int, include: int = 0, exclude: int = 0) -> bool:
        """Is some ``d``-set containing ``include`` and avoiding ``exclude`` consistent?"""
        allowed = full_mask(self.n) & ~self.no_union & ~exclude
        if include & ~allowed or popcount(include) > d or popcount(allowed) < d:
            return False
        pending = [q & allowed for q in self.yes if not q & include]
        return has_transversal(pending, d - popcount(include))

    def pins(self, truth: int, d: int) -> bool:
        """Only ``truth`` is consistent (``truth`` itself is assumed consistent)."""
        allowed = full_mask(self.n) & ~self.no_union
        if popcount(allowed) <= d:
            return True
        return not any(self.admits(d, exclude=y) for y in _bits(truth))

    def hides(self, truth: int, d: int) -> bool:
        """Every member of ``truth`` is avoided by some consistent scenario."""
        return all(self.admits(d, exclude=y) for y in _bits(truth))

    def decides(self, x: int, truth: int, d: int) -> bool:
        """All consistent scenarios agree with ``truth`` on element ``x`` (1-based)."""
        bit = 1 << (x - 1)
        if truth & bit:
            return not self.admits(d, exclude=bit)
        return not self.admits(d, include=bit)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _scenario_mask(F: SetFamily, D: Iterable[int]) -> int:
    D = list(D)
    if any(not isinstance(x, int) or not 1 <= x <= F.n for x in D):
        raise BadScenario(f"scenario {sorted(D)} is not a subset of [{F.n}]")
    return mask_of(D)


def _coalition_mask(F: SetFamily, S: Iterable[int]) -> int:
    S = list(S)
    if not S:
        raise BadParameter("coalition must be nonempty")
    if any(not 1 <= x <= F.n for x in S):
        raise BadParameter(f"coalition {sorted(S)} is not a subset of [{F.n}]")
    return mask_of(S)


def answer_vector(F: SetFamily, D: Iterable[int]) -> tuple[bool, ...]:
    m = _scenario_mask(F, D)
    return tuple(bool(s & m) for s in F.sets)


def coalition_view(F: SetFamily, S: Iterable[int], D: Iterable[int]) -> KnowledgeView:
    smask = _coalition_mask(F, S)
    dmask = _scenario_mask(F, D)
    visible = tuple(i for i, s in enumerate(F.sets) if s & smask)
    answers = tuple(bool(F.sets[i] & dmask) for i in visible)
    return KnowledgeView(frozenset(elements_of(smask)), visible, answers)


def evidence(F: SetFamily, view: KnowledgeView) -> Evidence:
    return Evidence.from_pairs(F.n, ((F.sets[i], a) for i, a in zip(view.visible, view.answers)))


def consistent_scenarios(F: SetFamily, view: KnowledgeView, d: int) -> list[frozenset[int]]:
    """Every ``d``-subset of ``[n]`` that reproduces the visible answers, in lexicographic order."""
    out = []
    checks = [(F.sets[i], a) for i, a in zip(view.visible, view.answers)]
    for combo in combinations(range(1, F.n + 1), d):
        m = mask_of(combo)
        if all(bool(q & m) == a for q, a in checks):
            out.append(frozenset(combo))
    return out


def _evidence_for(
    F: SetFamily, S: Iterable[int], D: Iterable[int], d: int
) -> tuple[Evidence, int]:
    D = list(D)
    truth = _scenario_mask(F, D)
    if popcount(truth) != d:
        raise BadScenario(f"scenario {sorted(D)} does not have {d} elements")
    return evidence(F, coalition_view(F, S, D)), truth


def knows_own_status(F: SetFamily, x: int, D: Iterable[int], d: int) -> bool:
    ev, truth = _evidence_for(F, [x], D, d)
    return ev.decides(x, truth, d)


def identifies_set(F: SetFamily, S: Iterable[int], D: Iterable[int], d: int) -> bool:
    ev, truth = _evidence_for(F, S, D, d)
    return ev.pins(truth, d)


def identifies_no_defective(F: SetFamily, S: Iterable[int], D: Iterable[int], d: int) -> bool:
    ev, truth = _evidence_for(F, S, D, d)
    return ev.hides(truth, d)


def element_always_knows_status(F: SetFamily, x: int, d: int) -> bool:
    """``x`` learns its own status under every scenario iff its residual star needs more than ``d`` elements to cover."""
    residual = restricted_star(F, x).sets
    if any(s == 0 for s in residual):
        return True
    return not has_transversal(residual, d)
