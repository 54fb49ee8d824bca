"""Equivalence sweeps: run a checker over many families and count mismatches."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BadParameter
from .family import (
    SetFamily,
    complement_family,
    dual_family,
    is_cancellative,
    is_intersection_cancellative,
)
from .generators import SweepSpec
from .knowledge import answer_vector, element_always_knows_status
from .models import (
    circle_condition,
    model1_characterization,
    model2dbl_characterization_dual,
    model2dbl_characterization_primal,
    model2prime_necessary,
    model2prime_sufficient,
    solves_model1_semantic,
    solves_model2_semantic,
    solves_model2dbl_semantic,
    solves_model2prime_semantic,
    solves_model4_semantic,
)
from .separation import is_d_separating, is_d_union_free


@dataclass
class SweepResult:
    theorem: str
    cases: int = 0
    mismatches: int = 0
    positives: int = 0
    first_mismatch: dict | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "cases": self.cases,
            "mismatches": self.mismatches,
            "positives": self.positives,
            "first_mismatch": self.first_mismatch,
        }


# Each checker returns (consistent, positive, detail). "positive" counts the
# families on which the characterized property holds, so a sweep with zero
# positives is visibly weak.


def _model1d(F, d):
    semantic = solves_model1_semantic(F, d).solves
    dual_cf = model1_characterization(F, d).holds
    tau = bool(is_d_separating(F, d)) and all(
        element_always_knows_status(F, x, d) for x in range(1, F.n + 1)
    )
    return semantic == dual_cf == tau, semantic, {"semantic": semantic, "dual_cover_free": dual_cf, "tau": tau}


def _model2dbl(F, d):
    semantic = solves_model2dbl_semantic(F, d).solves
    primal = model2dbl_characterization_primal(F, d).holds
    dual = model2dbl_characterization_dual(F, d).holds
    return semantic == primal == dual, semantic, {"semantic": semantic, "primal": primal, "dual": dual}


def _model2prime_sandwich(F, d):
    if F.n < d + 2:
        raise BadParameter("the Model 2' sandwich needs n >= d + 2")
    sufficient = model2prime_sufficient(F, d).holds
    semantic = solves_model2prime_semantic(F, d).solves
    necessary = model2prime_necessary(F, d).holds
    ok = (not sufficient or semantic) and (not semantic or necessary)
    return ok, semantic, {"dual_2d_cover_free": sufficient, "semantic": semantic, "dual_d_cover_free": necessary}


def _intcan(F, d):
    left = is_intersection_cancellative(F).holds
    right = is_cancellative(complement_family(F)).holds
    return left == right, left, {"intersection_cancellative": left, "complement_cancellative": right}


def _finds_defectives(F, d):
    seen = set()
    for D in combinations(range(1, F.n + 1), d):
        a = answer_vector(F, D)
        if a in seen:
            return False
        seen.add(a)
    return True


def _dsepdual(F, d):
    separating = is_d_separating(F, d).holds
    finds = _finds_defectives(F, d)
    union_free = is_d_union_free(dual_family(F), d, by_index=True).holds
    ok = separating == finds and (not separating or union_free)
    return ok, separating, {"separating": separating, "finds": finds, "dual_union_free": union_free}


def _claim_canc(F, d):
    left = is_intersection_cancellative(F).holds
    right = circle_condition(F).holds
    return left == right, left, {"intersection_cancellative": left, "circle_condition": right}


def _model2_impossible(F, d):
    solves = solves_model2_semantic(F, d).solves
    return not solves, solves, {"solves": solves}


def _model4_impossible(F, d):
    for i in range(1, F.n):
        for j in range(i + 1, F.n + 1):
            if i >= d or j <= d:
                if solves_model4_semantic(F, d, i, j).solves:
                    return False, True, {"i": i, "j": j}
    return True, False, {}


THEOREMS = {
    "model1d": _model1d,
    "model2dbl": _model2dbl,
    "model2prime-sandwich": _model2prime_sandwich,
    "intcan": _intcan,
    "dsepdual": _dsepdual,
    "claim-canc": _claim_canc,
    "model2-impossible": _model2_impossible,
    "model4-impossible": _model4_impossible,
}


def _run_chunk(theorem: str, d: int, chunk: list[tuple[int, SetFamily]]):
    check = THEOREMS[theorem]
    out = []
    for idx, F in chunk:
        ok, positive, detail = check(F, d)
        out.append((idx, ok, positive, None if ok else detail))
    return out


def run_sweep(theorem: str, spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Apply ``theorem``'s checker to every family of ``spec`` for every ``d`` in it.

    The first mismatch is the earliest in sweep order, whatever ``jobs`` is.
    """
    if theorem not in THEOREMS:
        raise BadParameter(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    result = SweepResult(theorem)
    families = list(spec.families())
    for d in spec.d:
        indexed = list(enumerate(families))
        if jobs <= 1:
            rows = _run_chunk(theorem, d, indexed)
        else:
            size = max(1, len(indexed) // (4 * jobs))
            chunks = [indexed[k:k + size] for k in range(0, len(indexed), size)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = [r for part in pool.map(_run_chunk, [theorem] * len(chunks), [d] * len(chunks), chunks) for r in part]
        for idx, ok, positive, detail in rows:
            result.cases += 1
            result.positives += bool(positive)
            if not ok:
                result.mismatches += 1
                if result.first_mismatch is None:
                    result.first_mismatch = {"d": d, "family": families[idx].to_dict(), **detail}
    return result
