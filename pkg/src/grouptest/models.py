"""Which query families solve which privacy model.

Each ``solves_*_semantic`` function sweeps every scenario and every relevant
coalition and reasons from answers alone. The ``*_characterization`` functions
are the combinatorial conditions those sweeps are expected to match.

Every solver embeds the standing assumption that the whole family is
``d``-separating; a family failing it gets ``solves=False`` with clause
``"not d-separating"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import BadParameter
from .family import (
    PropertyReport,
    SetFamily,
    d_fold_unions,
    dual_family,
    elements_of,
    is_intersection_cancellative,
    is_sperner,
    mask_of,
)
from .separation import (
    is_d_cover_free,
    is_d_union_free,
    is_r_d_cover_free,
    scenario_masks,
)


@dataclass
class ModelVerdict:
    solves: bool
    failing_case: dict | None = field(default=None)

    def __bool__(self) -> bool:
        return self.solves

    def to_dict(self) -> dict:
        return {"solves": self.solves, "failing_case": self.failing_case}


class ScenarioTable:
    """Answer masks (over query positions) for every ``d``-subset of ``[n]``.

    For a coalition whose visible queries form the mask ``vis``, two scenarios
    are indistinguishable exactly when their answer masks agree on ``vis``.
    Groups of indistinguishable scenarios are cached per ``vis``.
    """

    def __init__(self, F: SetFamily, d: int):
        self.F = F
        self.d = d
        self.stars = F.stars()
        self.scenarios = scenario_masks(F.n, d)
        self.answers = []
        for s in self.scenarios:
            a = 0
            for x in elements_of(s):
                a |= self.stars[x - 1]
            self.answers.append(a)
        self._groups: dict[int, tuple[list[int], dict[int, list[int]]]] = {}
        self._unpinned: dict[int, int | None] = {}
        self._unhidden: dict[int, int | None] = {}

    def visible(self, coalition: int) -> int:
        v = 0
        for x in elements_of(coalition):
            v |= self.stars[x - 1]
        return v

    def separating_witness(self) -> tuple[int, int] | None:
        first: dict[int, int] = {}
        for idx, a in enumerate(self.answers):
            if a in first:
                return first[a], idx
            first[a] = idx
        return None

    def groups(self, vis: int) -> tuple[list[int], dict[int, list[int]]]:
        """Per scenario its key, and per key ``[count, intersection, union]``."""
        cached = self._groups.get(vis)
        if cached is not None:
            return cached
        keys = [a & vis for a in self.answers]
        stats: dict[int, list[int]] = {}
        for key, s in zip(keys, self.scenarios):
            st = stats.get(key)
            if st is None:
                stats[key] = [1, s, s]
            else:
                st[0] += 1
                st[1] &= s
                st[2] |= s
        self._groups[vis] = (keys, stats)
        return keys, stats

    def pins(self, vis: int, idx: int) -> bool:
        keys, stats = self.groups(vis)
        return stats[keys[idx]][0] == 1

    def hides(self, vis: int, idx: int) -> bool:
        keys, stats = self.groups(vis)
        return self.scenarios[idx] & stats[keys[idx]][1] == 0

    def decides(self, vis: int, idx: int, bit: int) -> bool:
        keys, stats = self.groups(vis)
        _, inter, union = stats[keys[idx]]
        return bool(inter & bit) == bool(union & bit)

    def first_unpinned(self, vis: int) -> int | None:
        if vis not in self._unpinned:
            self._unpinned[vis] = next(
                (i for i in range(len(self.scenarios)) if not self.pins(vis, i)), None
            )
        return self._unpinned[vis]

    def first_unhidden(self, vis: int) -> int | None:
        if vis not in self._unhidden:
            self._unhidden[vis] = next(
                (i for i in range(len(self.scenarios)) if not self.hides(vis, i)), None
            )
        return self._unhidden[vis]


def _check_d(F: SetFamily, d: int) -> None:
    if not 1 <= d <= F.n - 1:
        raise BadParameter(f"d must satisfy 1 <= d <= n - 1, got d={d}, n={F.n}")


def _fail(table: ScenarioTable, idx: int, coalition: int, clause: str) -> ModelVerdict:
    return ModelVerdict(
        False,
        {
            "scenario": elements_of(table.scenarios[idx]),
            "coalition": elements_of(coalition),
            "clause": clause,
        },
    )


def _standing(table: ScenarioTable) -> ModelVerdict | None:
    pair = table.separating_witness()
    if pair is None:
        return None
    a, b = pair
    return ModelVerdict(
        False,
        {
            "clause": "not d-separating",
            "scenarios": [elements_of(table.scenarios[a]), elements_of(table.scenarios[b])],
        },
    )


def _prepare(F: SetFamily, d: int) -> tuple[ScenarioTable, ModelVerdict | None]:
    _check_d(F, d)
    table = ScenarioTable(F, d)
    return table, _standing(table)


def solves_model1_semantic(F: SetFamily, d: int) -> ModelVerdict:
    """Every element learns whether it is defective, whatever the defective set."""
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for x in range(1, F.n + 1):
        bit = 1 << (x - 1)
        vis = table.stars[x - 1]
        for idx in range(len(table.scenarios)):
            if not table.decides(vis, idx, bit):
                return _fail(table, idx, bit, "element does not learn its own status")
    return ModelVerdict(True)


def solves_model2_semantic(F: SetFamily, d: int) -> ModelVerdict:
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for x in range(1, F.n + 1):
        idx = table.first_unpinned(table.stars[x - 1])
        if idx is not None:
            return _fail(table, idx, 1 << (x - 1), "element does not find the defectives")
    return ModelVerdict(True)


def solves_model2prime_semantic(F: SetFamily, d: int) -> ModelVerdict:
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for x in range(1, F.n + 1):
        bit = 1 << (x - 1)
        vis = table.stars[x - 1]
        for idx, s in enumerate(table.scenarios):
            if not s & bit and not table.pins(vis, idx):
                return _fail(table, idx, bit, "non-defective element does not find the defectives")
    return ModelVerdict(True)


def solves_model2dbl_semantic(F: SetFamily, d: int) -> ModelVerdict:
    """Every coalition of ``d`` elements finds the defective set."""
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for S in combinations(range(1, F.n + 1), d):
        smask = mask_of(S)
        idx = table.first_unpinned(table.visible(smask))
        if idx is not None:
            return _fail(table, idx, smask, "coalition does not find the defectives")
    return ModelVerdict(True)


def solves_model3_semantic(F: SetFamily, d: int) -> ModelVerdict:
    """No single element can name any defective."""
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for x in range(1, F.n + 1):
        idx = table.first_unhidden(table.stars[x - 1])
        if idx is not None:
            return _fail(table, idx, 1 << (x - 1), "element identifies a defective")
    return ModelVerdict(True)


def solves_model4_semantic(F: SetFamily, d: int, i: int, j: int) -> ModelVerdict:
    """Any ``j`` elements together find the defectives, no ``i`` elements name any."""
    if not 1 <= i < j <= F.n:
        raise BadParameter(f"need 1 <= i < j <= n, got i={i}, j={j}, n={F.n}")
    table, failed = _prepare(F, d)
    if failed is not None:
        return failed
    for S in combinations(range(1, F.n + 1), j):
        smask = mask_of(S)
        idx = table.first_unpinned(table.visible(smask))
        if idx is not None:
            return _fail(table, idx, smask, "j-coalition does not find the defectives")
    for T in combinations(range(1, F.n + 1), i):
        tmask = mask_of(T)
        idx = table.first_unhidden(table.visible(tmask))
        if idx is not None:
            return _fail(table, idx, tmask, "i-coalition identifies a defective")
    return ModelVerdict(True)


def model1_characterization(F: SetFamily, d: int) -> PropertyReport:
    """The dual (one star per element) is ``d``-cover-free.

    Witness positions refer to elements: ``covered`` is an element whose star
    lies inside the union of the stars of the ``cover`` elements.
    """
    return is_d_cover_free(dual_family(F), d, by_index=True)


def model2prime_sufficient(F: SetFamily, d: int) -> PropertyReport:
    """Dual is ``(2, d)``-cover-free: enough for Model 2' when ``n >= d + 2``."""
    return is_r_d_cover_free(dual_family(F), 2, d, by_index=True)


def model2prime_necessary(F: SetFamily, d: int) -> PropertyReport:
    return model1_characterization(F, d)


def model2dbl_characterization_primal(F: SetFamily, d: int) -> PropertyReport:
    """Two conditions on ``d``-sets ``X, Y, Z`` (pairwise different).

    one-sided: some query meets ``X`` and misses ``Y``.
    triple: some query meets ``X`` and exactly one of ``Y``, ``Z``.
    """
    table = ScenarioTable(F, d)
    ans = table.answers
    sc = table.scenarios
    m = len(sc)
    for x in range(m):
        for y in range(m):
            if x != y and ans[x] & ~ans[y] == 0:
                return PropertyReport(
                    False, {"clause": "one-sided", "X": elements_of(sc[x]), "Y": elements_of(sc[y])}
                )
    for x in range(m):
        for y, z in combinations([k for k in range(m) if k != x], 2):
            if ans[x] & (ans[y] ^ ans[z]) == 0:
                return PropertyReport(
                    False,
                    {
                        "clause": "triple",
                        "X": elements_of(sc[x]),
                        "Y": elements_of(sc[y]),
                        "Z": elements_of(sc[z]),
                    },
                )
    return PropertyReport(True)


def model2dbl_characterization_dual(F: SetFamily, d: int) -> PropertyReport:
    """The dual is ``d``-union-free and its ``d``-fold unions are Sperner and intersection-cancellative."""
    G = dual_family(F)
    report = is_d_union_free(G, d, by_index=True)
    if not report:
        return PropertyReport(False, {"clause": "dual not d-union-free", **report.witness})
    unions = d_fold_unions(G, d, by_index=True)
    report = is_sperner(unions)
    if not report:
        return PropertyReport(False, {"clause": "d-fold unions not Sperner", **report.witness})
    report = is_intersection_cancellative(unions)
    if not report:
        return PropertyReport(
            False, {"clause": "d-fold unions not intersection-cancellative", **report.witness}
        )
    return PropertyReport(True)


def _circle_flags(a: int, b: int, c: int) -> tuple[bool, bool, bool]:
    return (a & b & ~c != 0, a & c & ~b != 0, b & c & ~a != 0)


def triple_circle_profile(
    A: Iterable[int], B: Iterable[int], C: Iterable[int]
) -> tuple[bool, bool, bool]:
    """``(A∩B ⊄ C, A∩C ⊄ B, B∩C ⊄ A)``."""
    return _circle_flags(mask_of(A), mask_of(B), mask_of(C))


def circle_condition(F: SetFamily) -> PropertyReport:
    """Every three different members have at least two of the three circle flags set."""
    members = F.distinct()
    for (i, a), (j, b), (k, c) in combinations(members, 3):
        if sum(_circle_flags(a, b, c)) < 2:
            return PropertyReport(False, {"sets": [i + 1, j + 1, k + 1]})
    return PropertyReport(True)
