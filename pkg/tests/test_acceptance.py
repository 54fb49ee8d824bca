"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(see ``conftest.py``). Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from itertools import combinations
from math import ceil, log2

import pytest

from grouptest import (
    InsufficientNoPool,
    SetFamily,
    SweepSpec,
    baseline_find_defectives,
    berge_girth,
    binary_separating_family,
    is_d_separating,
    model3_construction,
    run_session,
    run_sweep,
    solves_model3_semantic,
    strategy_find_then_announce,
    strategy_halving_model3,
    validate_hypergraph,
    verify_transcript,
)
from grouptest.family import popcount

EXHAUSTIVE = SweepSpec(4, 4, (2,))
ALL_N4 = SweepSpec(4, 15, (2,))  # every family of distinct nonempty subsets of [4]
RESULTS: list[str] = []


def record(number, title, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    assert ok, detail


def sweeps(theorem, *specs):
    results = [run_sweep(theorem, spec) for spec in specs]
    cases = sum(r.cases for r in results)
    mismatches = sum(r.mismatches for r in results)
    positives = sum(r.positives for r in results)
    first = next((r.first_mismatch for r in results if r.first_mismatch), None)
    return cases, mismatches, positives, first


def test_01_model1_equivalence():
    t = time.perf_counter()
    r = run_sweep("model1d", EXHAUSTIVE)
    elapsed = time.perf_counter() - t
    ok = r.cases == 1940 and r.mismatches == 0 and elapsed < 30
    record(1, "Model 1 semantic = dual cover-free = covering form", ok,
           f"{r.cases} families, {r.mismatches} mismatches, {r.positives} solving, {elapsed:.2f}s")


def test_02_model2dbl_triple_equivalence():
    t = time.perf_counter()
    cases, mismatches, positives, first = sweeps(
        "model2dbl", EXHAUSTIVE, SweepSpec(6, 6, (2,), "random", 10_000, 2024), ALL_N4
    )
    elapsed = time.perf_counter() - t
    ok = mismatches == 0 and cases == 1940 + 10_000 + 32_767 and elapsed < 300
    record(2, "Model 2'' semantic = primal = dual characterization", ok,
           f"{cases} families (1940 exhaustive + 10^4 random n=6 + all 32767 at n=4), "
           f"{mismatches} mismatches, {positives} solving, {elapsed:.1f}s, first={first}")


def test_03_claim_canc():
    cases, mismatches, positives, _ = sweeps("claim-canc", EXHAUSTIVE)
    record(3, "intersection-cancellative = two of three circle flags", mismatches == 0,
           f"{cases} families, {mismatches} mismatches, {positives} cancellative")


def test_04_complement_and_dual_facts():
    c1, m1, p1, _ = sweeps("intcan", EXHAUSTIVE)
    c2, m2, p2, _ = sweeps("dsepdual", EXHAUSTIVE)
    record(4, "complement duality and dual of separating is union-free", m1 == m2 == 0,
           f"intcan {c1} families/{m1} counterexamples; dsepdual {c2} families/{m2} "
           f"counterexamples ({p2} separating)")


def test_05_model2_impossible():
    cases, _, solving, _ = sweeps("model2-impossible", SweepSpec(3, 7, (2,)), EXHAUSTIVE)
    record(5, "no family solves Model 2 for 1<d<n", solving == 0 and cases == 127 + 1940,
           f"{cases} families (all 127 at n=3, 1940 at n=4), {solving} solving")


def test_06_model4_impossible():
    cases, mismatches, solving, first = sweeps("model4-impossible", EXHAUSTIVE)
    record(6, "no family solves Model 4 when i>=d or j<=d", mismatches == 0,
           f"{cases} families x all such (i,j), {solving} solving, first={first}")


def test_07_model2prime_sandwich():
    cases, violations, solving, first = sweeps(
        "model2prime-sandwich", EXHAUSTIVE, ALL_N4, SweepSpec(6, 6, (2,), "random", 2000, 7)
    )
    record(7, "dual (2,d)-CF => Model 2' => dual d-CF", violations == 0,
           f"{cases} families, {violations} implication violations, {solving} solving, first={first}")


def test_08_model3_construction():
    t = time.perf_counter()
    F = model3_construction(40, 2, seed=1)
    valid = validate_hypergraph(F, 4, 2, 5)
    verdict = solves_model3_semantic(F, 2)
    elapsed = time.perf_counter() - t
    ok = bool(valid) and bool(verdict) and len(F) == 20 and elapsed < 120
    record(8, "girth-5 construction solves Model 3 at n=40, d=2", ok,
           f"{len(F)} edges of size {sorted({popcount(s) for s in F.sets})}, girth {berge_girth(F)}, "
           f"validation {valid.holds}, semantic {verdict.solves} over 780 scenarios x 40 elements, "
           f"{elapsed:.1f}s")


def test_09_halving_bound():
    t = time.perf_counter()
    rows, ok = [], True
    for n in (100, 200, 500):
        for d in (2, 3):
            rng = random.Random(1000 * n + d)
            bound = 2 * d * ceil(log2(n)) + 5 * d
            done = no_pool = worst = 0
            while done < 500:
                D = rng.sample(range(1, n + 1), d)
                try:
                    tr = run_session(strategy_halving_model3(n, d), D, n, d)
                except InsufficientNoPool:
                    no_pool += 1
                    continue
                done += 1
                worst = max(worst, len(tr))
                if len(tr) > bound or tr.verdict != set(D) or not verify_transcript(tr, "model3"):
                    ok = False
            rows.append(f"n={n} d={d}: {done} runs, max {worst}/{bound}, {no_pool} no-pool")
    elapsed = time.perf_counter() - t
    ok = ok and elapsed < 600
    record(9, "halving stays within 2d*ceil(log2 n)+5d and hides the defectives", ok,
           "; ".join(rows) + f"; {elapsed:.1f}s")


def test_10_announcement_overheads():
    n, rows, ok = 64, [], True
    for d in (2, 3):
        rng = random.Random(64 + d)
        worst = {"model1": 0, "model2dbl": 0, "model2prime": 0}
        for _ in range(100):
            D = rng.sample(range(1, n + 1), d)
            base = len(run_session(baseline_find_defectives(n, d), D, n, d))
            for tag, extra in (("model1", d + 1), ("model2dbl", d + 1), ("model2prime", 1)):
                tr = run_session(strategy_find_then_announce(tag, n, d), D, n, d)
                over = len(tr) - base
                worst[tag] = max(worst[tag], over)
                if over > extra or tr.verdict != set(D) or not verify_transcript(tr, tag):
                    ok = False
        rows.append(f"d={d}: max overhead " + ", ".join(f"{k} +{v}" for k, v in worst.items()))
    record(10, "find-then-announce overheads d+1 / d+1 / 1 with models verified", ok,
           "; ".join(rows) + " (100 oracles each)")


def test_11_binary_separating():
    bad = [
        n for n in range(2, 65)
        if len(binary_separating_family(n)) != ceil(log2(n)) or not is_d_separating(binary_separating_family(n), 1)
    ]
    record(11, "bit-position family: ceil(log2 n) sets, 1-separating", not bad,
           f"n=2..64, failures at {bad or 'none'}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
