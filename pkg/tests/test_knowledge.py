import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import families
from grouptest import (
    BadParameter,
    BadScenario,
    SetFamily,
    answer_vector,
    coalition_view,
    consistent_scenarios,
    identifies_no_defective,
    identifies_set,
    knows_own_status,
)
from grouptest.knowledge import Evidence, element_always_knows_status, evidence
from grouptest.family import mask_of


def F(n, *sets):
    return SetFamily.from_sets(n, sets)


@st.composite
def situations(draw, max_n=5):
    """A family, d, a true d-set D and a nonempty coalition S."""
    G = draw(families(min_n=2, max_n=max_n, max_sets=6))
    d = draw(st.integers(1, G.n))
    D = draw(st.lists(st.integers(1, G.n), min_size=d, max_size=d, unique=True))
    S = draw(st.lists(st.integers(1, G.n), min_size=1, max_size=G.n, unique=True))
    return G, d, frozenset(D), frozenset(S)


class TestViews:
    @pytest.mark.parametrize("D, expected", [({3}, (False, True)), ({1, 3}, (True, True)), (set(), (False, False))])
    def test_answer_vector(self, D, expected):
        assert answer_vector(F(3, [1, 2], [3]), D) == expected

    def test_answer_vector_bad_element(self):
        with pytest.raises(BadScenario):
            answer_vector(F(3, [1]), [4])

    def test_view_examples(self):
        v = coalition_view(F(4, [1, 2], [3, 4]), {1}, {3, 4})
        assert v.visible == (0,) and v.answers == (False,)
        assert coalition_view(F(3, [3]), {1}, {2}).visible == ()

    def test_full_view(self):
        G = F(4, [1, 2], [], [4])
        assert coalition_view(G, range(1, 5), {1}).visible == (0, 2)

    @pytest.mark.parametrize("S", [[], [0], [5]])
    def test_bad_coalition(self, S):
        with pytest.raises(BadParameter):
            coalition_view(F(4, [1]), S, {1})


class TestConsistentScenarios:
    def test_singletons(self):
        G = F(3, [1], [2], [3])
        assert consistent_scenarios(G, coalition_view(G, {1}, {2, 3}), 2) == [frozenset({2, 3})]

    def test_no_queries(self):
        G = SetFamily(4, ())
        assert len(consistent_scenarios(G, coalition_view(G, {1}, {2, 3}), 2)) == 6

    def test_k4_pairs(self, k4_pairs):
        v = coalition_view(k4_pairs, {1}, {2, 3})
        assert v.answers == (True, True, False)
        assert consistent_scenarios(k4_pairs, v, 2) == [frozenset({2, 3})]

    @given(situations())
    def test_matches_oracle_and_contains_truth(self, case):
        G, d, D, S = case
        got = consistent_scenarios(G, coalition_view(G, S, D), d)
        assert got == oracles.consistent(G.n, list(G), S, D, d)
        assert D in got


class TestEvidencePredicates:
    """The hitting-set route against plain enumeration of consistent scenarios."""

    @given(situations())
    def test_pins_hides_decides(self, case):
        G, d, D, S = case
        scen = oracles.consistent(G.n, list(G), S, D, d)
        assert identifies_set(G, S, D, d) == (scen == [D])
        assert identifies_no_defective(G, S, D, d) == all(any(y not in X for X in scen) for y in D)
        for x in S:
            if len(S) == 1:
                assert knows_own_status(G, x, D, d) == (len({x in X for X in scen}) == 1)

    @given(situations(), st.data())
    def test_admits(self, case, data):
        G, d, D, S = case
        ev = evidence(G, coalition_view(G, S, D))
        include = frozenset(data.draw(st.lists(st.integers(1, G.n), max_size=2, unique=True)))
        exclude = frozenset(data.draw(st.lists(st.integers(1, G.n), max_size=2, unique=True)))
        scen = oracles.consistent(G.n, list(G), S, D, d)
        expected = any(include <= X and not exclude & X for X in scen)
        assert ev.admits(d, mask_of(include), mask_of(exclude)) == expected

    def test_padding_needs_room(self):
        # one YES query {1}, everything else excluded by NO answers: no 2-set fits
        ev = Evidence(3, (0b001,), 0b110)
        assert ev.admits(1) and not ev.admits(2)

    def test_wrong_scenario_size(self):
        with pytest.raises(BadScenario):
            identifies_set(F(3, [1]), {1}, {1, 2}, 1)

    def test_no_queries_own_status(self):
        assert not knows_own_status(SetFamily(3, ()), 1, {1, 2}, 2)

    @given(families(min_n=3, max_n=5, max_sets=6), st.data())
    def test_defectives_as_coalition(self, G, data):
        # the defectives only ever see YES answers, so they pin D exactly when
        # every other d-set misses some query that meets D
        d = data.draw(st.integers(1, G.n - 1))
        D = frozenset(data.draw(st.lists(st.integers(1, G.n), min_size=d, max_size=d, unique=True)))
        expected = all(
            any(s & D and not s & X for s in G) for X in oracles.dsets(G.n, d) if X != D
        )
        assert identifies_set(G, D, D, d) == expected


class TestAlwaysKnowsStatus:
    def test_examples(self, k4_pairs):
        assert element_always_knows_status(k4_pairs, 1, 2)
        assert not element_always_knows_status(F(3, [1, 2], [1, 3]), 1, 2)
        assert element_always_knows_status(F(3, [1]), 1, 2)

    @given(families(min_n=2, max_n=5, max_sets=6), st.data())
    def test_matches_enumeration(self, G, data):
        d = data.draw(st.integers(1, G.n - 1))
        x = data.draw(st.integers(1, G.n))
        expected = all(
            len({x in X for X in oracles.consistent(G.n, list(G), {x}, D, d)}) == 1
            for D in oracles.dsets(G.n, d)
        )
        assert element_always_knows_status(G, x, d) == expected

    @given(families(min_n=2, max_n=5, max_sets=6, allow_empty=False), st.data())
    def test_tau_form(self, G, data):
        d = data.draw(st.integers(1, G.n - 1))
        x = data.draw(st.integers(1, G.n))
        residual = [s - {x} for s in G if x in s]
        if frozenset() in residual:
            expected = True
        else:
            expected = oracles.tau(residual, G.n) > d
        assert element_always_knows_status(G, x, d) == expected
