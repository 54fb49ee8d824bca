"""Adaptive sessions: strategies, transcripts and post-hoc knowledge checks.

A strategy is a zero-argument callable returning a generator. The generator
yields queries (collections of 1-based elements), receives each answer through
``send`` and returns its verdict. Elements later see the answers to the queries
that meet them, unordered, and reason from those answers alone.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, log2
from typing import Callable, Collection, Generator, Iterable

from .errors import (
    BadParameter,
    BadScenario,
    IncompleteTranscript,
    InsufficientNoPool,
    StrategyError,
)
from .family import elements_of, mask_of, popcount
from .knowledge import Evidence
from .models import ModelVerdict

Query = Collection[int]
Play = Generator[Query, bool, Collection[int]]
Strategy = Callable[[], Play]

MODEL_TAGS = ("model1", "model2", "model2prime", "model2dbl", "model3", "model4")


@dataclass
class Transcript:
    n: int
    d: int
    steps: list[tuple[frozenset[int], bool]] = field(default_factory=list)
    verdict: frozenset[int] | None = None

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "steps": [{"q": sorted(q), "a": a} for q, a in self.steps],
            "verdict": None if self.verdict is None else sorted(self.verdict),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Transcript:
        try:
            steps = [(frozenset(int(x) for x in s["q"]), bool(s["a"])) for s in data["steps"]]
            verdict = data.get("verdict")
            return cls(
                int(data["n"]),
                int(data["d"]),
                steps,
                None if verdict is None else frozenset(int(x) for x in verdict),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameter(f"malformed transcript: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> Transcript:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise BadParameter(f"malformed JSON: {exc}") from None


@dataclass
class HalvingState:
    active: list[frozenset[int]] = field(default_factory=list)
    leaves: list[frozenset[int]] = field(default_factory=list)
    no_pool: list[frozenset[int]] = field(default_factory=list)


def default_step_budget(n: int, d: int) -> int:
    return 64 * d * max(1, ceil(log2(n))) if n > 1 else 64 * d


def run_session(
    strategy: Strategy, oracle_D: Iterable[int], n: int, d: int, max_steps: int | None = None
) -> Transcript:
    """Play ``strategy`` against the defective set ``oracle_D``."""
    D = frozenset(oracle_D)
    if len(D) != d or not all(1 <= x <= n for x in D):
        raise BadScenario(f"oracle {sorted(D)} is not a {d}-subset of [{n}]")
    budget = default_step_budget(n, d) if max_steps is None else max_steps
    transcript = Transcript(n, d)
    play = strategy()
    answer = None
    try:
        query = next(play)
        while True:
            q = frozenset(query)
            if not all(isinstance(x, int) and 1 <= x <= n for x in q):
                raise StrategyError(f"query {sorted(q)} is not a subset of [{n}]")
            if len(transcript.steps) >= budget:
                raise StrategyError(f"strategy exceeded the step budget of {budget}")
            answer = bool(q & D)
            transcript.steps.append((q, answer))
            query = play.send(answer)
    except StopIteration as stop:
        transcript.verdict = frozenset(stop.value)
    return transcript


def singletons_strategy(n: int, d: int) -> Strategy:
    def play():
        found = []
        for x in range(1, n + 1):
            if (yield {x}):
                found.append(x)
        return found

    return play


def _find_defectives(n: int, d: int):
    """Binary-search the defectives one at a time; at most ``d * ceil(log2 n)`` queries."""
    candidates = list(range(1, n + 1))
    found: list[int] = []
    while len(found) < d:
        if d - len(found) == len(candidates):
            found.extend(candidates)
            break
        # candidates[lo..hi] holds a defective; everything before lo is clean
        lo, hi = 0, len(candidates) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if (yield frozenset(candidates[lo:mid + 1])):
                hi = mid
            else:
                lo = mid + 1
        found.append(candidates[lo])
        candidates = candidates[lo + 1:]
    return found


def baseline_find_defectives(n: int, d: int) -> Strategy:
    if not 1 <= d <= n:
        raise BadParameter(f"need 1 <= d <= n, got d={d}, n={n}")
    return lambda: _find_defectives(n, d)


_ANNOUNCE_SINGLETONS = {"model1": True, "model2dbl": True, "model2prime": False}


def strategy_find_then_announce(model_tag: str, n: int, d: int) -> Strategy:
    """Find the defectives, then announce: singletons of the defectives and/or the clean set."""
    if model_tag not in _ANNOUNCE_SINGLETONS:
        raise BadParameter(f"unknown model tag {model_tag!r}")
    if not 1 <= d < n:
        raise BadParameter(f"need 1 <= d < n, got d={d}, n={n}")

    def play():
        found = yield from _find_defectives(n, d)
        if _ANNOUNCE_SINGLETONS[model_tag]:
            for x in sorted(found):
                yield {x}
        yield set(range(1, n + 1)) - set(found)
        return found

    return play


def _halves(block: list[int]) -> tuple[list[int], list[int]]:
    h = len(block) // 2
    return block[:h], block[h:]


def strategy_halving_model3(
    n: int,
    d: int,
    seed: int | None = None,
    observer: Callable[[HalvingState], None] | None = None,
) -> Strategy:
    """Find the defectives while no single element learns any of them.

    Rounds ask both halves of every YES block of size at least 6; YES blocks of
    size at most 5 become leaves. Then every leaf element ``a_i`` is tested in a
    gadget ``{a_i, b_i, c_i}`` whose helpers come from two disjoint NO blocks of
    size at least ``5d``. Uses at most ``2d * ceil(log2 n) + 5d`` queries.

    ``observer`` receives a snapshot of the state after every round.
    Raises :class:`InsufficientNoPool` when the helpers cannot be found.
    """
    if d < 1 or n < 2:
        raise BadParameter(f"need d >= 1 and n >= 2, got d={d}, n={n}")

    def play():
        order = list(range(1, n + 1))
        if seed is not None:
            random.Random(seed).shuffle(order)
        state = HalvingState()
        pending = list(_halves(order))
        while pending:
            yes_blocks = []
            for block in pending:
                if (yield frozenset(block)):
                    yes_blocks.append(block)
                else:
                    state.no_pool.append(frozenset(block))
            pending = []
            state.active = []
            for block in yes_blocks:
                if len(block) <= 5:
                    state.leaves.append(frozenset(block))
                else:
                    state.active.append(frozenset(block))
                    pending.extend(_halves(block))
            if observer is not None:
                observer(HalvingState(list(state.active), list(state.leaves), list(state.no_pool)))

        need = 5 * d
        pool = sorted(state.no_pool, key=len, reverse=True)
        pair = next(
            ((B, C) for B, C in combinations(pool, 2) if len(C) >= need and not B & C),
            None,
        )
        if pair is None:
            raise InsufficientNoPool(
                f"no two disjoint NO queries of size >= {need} (n={n} too small for d={d})"
            )
        B, C = pair
        A = sorted(set().union(*state.leaves))
        helpers_b = sorted(B - C)
        helpers_c = sorted(C - B)
        found = []
        for a, b, c in zip(A, helpers_b, helpers_c):
            if (yield {a, b, c}):
                found.append(a)
        return found

    return play


def halving_query_bound(n: int, d: int) -> int:
    return 2 * d * ceil(log2(n)) + 5 * d


class _TranscriptViews:
    """Per-coalition evidence for a transcript, cached by the set of visible steps."""

    def __init__(self, t: Transcript):
        self.n = t.n
        self.queries = [mask_of(q) for q, _ in t.steps]
        self.answers = [a for _, a in t.steps]
        self.element_steps = [0] * (t.n + 1)
        for k, (q, _) in enumerate(t.steps):
            for x in q:
                self.element_steps[x] |= 1 << k
        self._cache: dict[int, Evidence] = {}

    def visible(self, coalition: Iterable[int]) -> int:
        v = 0
        for x in coalition:
            v |= self.element_steps[x]
        return v

    def evidence(self, vis: int) -> Evidence:
        ev = self._cache.get(vis)
        if ev is None:
            pairs = []
            k = 0
            rest = vis
            while rest:
                if rest & 1:
                    pairs.append((self.queries[k], self.answers[k]))
                rest >>= 1
                k += 1
            ev = Evidence.from_pairs(self.n, pairs)
            self._cache[vis] = ev
        return ev


def _case(coalition, clause: str, truth: int) -> ModelVerdict:
    return ModelVerdict(
        False,
        {"coalition": sorted(coalition), "scenario": elements_of(truth), "clause": clause},
    )


def verify_transcript(
    t: Transcript, model_tag: str, i: int | None = None, j: int | None = None
) -> ModelVerdict:
    """Check a finished session against a model, from the elements' unordered views.

    The verdict must be the only ``d``-set consistent with all answers; it then
    plays the role of the true defective set for the per-element checks.
    """
    if t.verdict is None:
        raise IncompleteTranscript("transcript has no verdict")
    if model_tag not in MODEL_TAGS:
        raise BadParameter(f"unknown model tag {model_tag!r}")
    n, d = t.n, t.d
    truth = mask_of(t.verdict)
    if popcount(truth) != d:
        return ModelVerdict(False, {"clause": "verdict does not have d elements"})
    for q, a in t.steps:
        if bool(mask_of(q) & truth) != a:
            return ModelVerdict(False, {"clause": "verdict contradicts an answer", "query": sorted(q)})
    views = _TranscriptViews(t)
    everything = views.evidence((1 << len(t.steps)) - 1)
    if not everything.pins(truth, d):
        return ModelVerdict(False, {"clause": "answers do not determine the verdict"})

    memo: dict[tuple[str, int], bool] = {}

    def check(kind: str, coalition) -> bool:
        vis = views.visible(coalition)
        key = (kind, vis)
        if key not in memo:
            ev = views.evidence(vis)
            memo[key] = ev.pins(truth, d) if kind == "pins" else ev.hides(truth, d)
        return memo[key]

    elements = range(1, n + 1)
    if model_tag == "model1":
        for x in elements:
            if not views.evidence(views.visible([x])).decides(x, truth, d):
                return _case([x], "element does not learn its own status", truth)
    elif model_tag == "model2":
        for x in elements:
            if not check("pins", [x]):
                return _case([x], "element does not find the defectives", truth)
    elif model_tag == "model2prime":
        for x in elements:
            if not truth >> (x - 1) & 1 and not check("pins", [x]):
                return _case([x], "non-defective element does not find the defectives", truth)
    elif model_tag == "model2dbl":
        for S in combinations(elements, d):
            if not check("pins", S):
                return _case(S, "coalition does not find the defectives", truth)
    elif model_tag == "model3":
        for x in elements:
            if not check("hides", [x]):
                return _case([x], "element identifies a defective", truth)
    else:
        if i is None or j is None or not 1 <= i < j <= n:
            raise BadParameter("model4 needs 1 <= i < j <= n")
        for S in combinations(elements, j):
            if not check("pins", S):
                return _case(S, "j-coalition does not find the defectives", truth)
        for T in combinations(elements, i):
            if not check("hides", T):
                return _case(T, "i-coalition identifies a defective", truth)
    return ModelVerdict(True)
