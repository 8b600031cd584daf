from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dngame.errors import IndexOutOfRangeError, ParseError
from dngame.fixtures import load_fixtures
from dngame.game import (
    BimatrixGame,
    best_response_frequency,
    best_responses,
    from_document,
    pure_nash_equilibria,
    strategy_rankings,
    to_document,
)


def brute_force(g):
    p, q = g.shape
    return [
        (i, j)
        for i in range(p)
        for j in range(q)
        if all(g.u1[i, j] >= g.u1[k, j] for k in range(p))
        and all(g.u2[i, j] >= g.u2[i, k] for k in range(q))
    ]


@st.composite
def games(draw, max_dim=6):
    p = draw(st.integers(1, max_dim))
    q = draw(st.integers(1, max_dim))
    vals = st.integers(-3, 3)
    u1 = np.array(draw(st.lists(vals, min_size=p * q, max_size=p * q)), float).reshape(p, q)
    u2 = np.array(draw(st.lists(vals, min_size=p * q, max_size=p * q)), float).reshape(p, q)
    return BimatrixGame([f"r{i}" for i in range(p)], [f"c{j}" for j in range(q)], u1, u2)


@pytest.fixture(scope="module")
def fx():
    return load_fixtures()


class TestConstruction:
    def test_shape_checks(self):
        with pytest.raises(ValueError):
            BimatrixGame(["a"], ["b", "c"], [[1]], [[1]])
        with pytest.raises(ValueError):
            BimatrixGame([], ["b"], np.zeros((0, 1)), np.zeros((0, 1)))
        with pytest.raises(ValueError):
            BimatrixGame(["a"], ["b"], [[np.inf]], [[0]])

    def test_immutable(self):
        g = BimatrixGame(["a"], ["b"], [[1]], [[2]])
        with pytest.raises(ValueError):
            g.u1[0, 0] = 3

    def test_document_round_trip(self, fx):
        assert from_document(to_document(fx.game_dnt)) == fx.game_dnt

    @pytest.mark.parametrize(
        "doc, where",
        [
            ([], "game"),
            ({"row_strategies": ["a"], "col_strategies": ["b"]}, "game"),
            ({"row_strategies": ["a"], "col_strategies": ["b"], "payoffs": [[[1]]]}, "game.payoffs[0][0]"),
            ({"row_strategies": ["a", "a"], "col_strategies": ["b"], "payoffs": []}, "game.row_strategies"),
        ],
    )
    def test_document_errors(self, doc, where):
        with pytest.raises(ParseError) as err:
            from_document(doc)
        assert err.value.path == where


class TestEquilibria:
    def test_fixture_games(self, fx):
        for g in (fx.game_dnt, fx.game_topsis):
            assert [g.label(c) for c in pure_nash_equilibria(g)] == [("AS5", "BS3")]

    def test_matching_pennies(self):
        g = BimatrixGame(["H", "T"], ["H", "T"], [[1, -1], [-1, 1]], [[-1, 1], [1, -1]])
        assert pure_nash_equilibria(g) == []

    def test_ties_all_count(self):
        g = BimatrixGame(["a", "b"], ["c", "d"], np.ones((2, 2)), np.ones((2, 2)))
        assert pure_nash_equilibria(g) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_single_cell(self):
        g = BimatrixGame(["a"], ["b"], [[0.2]], [[0.1]])
        assert pure_nash_equilibria(g) == [(0, 0)]
        assert best_responses(g, 1, 0) == {0}

    @settings(max_examples=300)
    @given(games())
    def test_brute_force_oracle(self, g):
        assert pure_nash_equilibria(g) == brute_force(g)

    @given(games(), st.floats(0.1, 10), st.floats(-5, 5))
    def test_affine_invariance(self, g, scale, shift):
        h = BimatrixGame(g.row_strategies, g.col_strategies, g.u1 * scale + shift, g.u2)
        assert pure_nash_equilibria(h) == pure_nash_equilibria(g)


class TestRankings:
    def test_best_responses(self, fx):
        g = fx.game_dnt
        assert best_responses(g, 1, 0) == {0}
        assert best_responses(g, 2, 2) == {2}

    def test_bad_index_and_player(self, fx):
        with pytest.raises(IndexOutOfRangeError):
            best_responses(fx.game_dnt, 1, 9)
        with pytest.raises(ValueError):
            best_responses(fx.game_dnt, 3, 0)

    def test_table_columns(self, fx):
        r = strategy_rankings(fx.game_dnt, 1)
        assert r.column(fx.game_dnt.col_strategies.index("BS3")) == [3, 5, 2, 4, 1]
        assert not r.tied.any()

    def test_dense_ties(self):
        g = BimatrixGame(["a", "b", "c"], ["x", "y"], [[1, 2], [1, 1], [0, 2]], np.zeros((3, 2)))
        r = strategy_rankings(g, 1)
        assert r.column(0) == [1, 1, 2]
        assert r.column(1) == [1, 2, 1]
        assert r.tied.tolist() == [True, True]
        assert strategy_rankings(g, 2).column(0) == [1, 1]

    def test_frequencies(self, fx):
        assert best_response_frequency(fx.game_dnt, 1)["AS5"] == 2
        assert best_response_frequency(fx.game_dnt, 2)["BS3"] == 3
        assert best_response_frequency(fx.game_topsis, 2)["BS4"] == 4

    @given(games())
    def test_rank_one_is_best_response(self, g):
        for player in (1, 2):
            r = strategy_rankings(g, player)
            for o in range(r.ranks.shape[0]):
                ones = {s for s, v in enumerate(r.column(o)) if v == 1}
                assert ones == best_responses(g, player, o)
