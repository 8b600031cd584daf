"""Two-person non-constant-sum games in strategic form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import IndexOutOfRangeError, ParseError


@dataclass(frozen=True, eq=False)
class BimatrixGame:
    """Row player (1) picks from ``row_strategies``, column player (2) from ``col_strategies``.

    ``u1[i, j]`` and ``u2[i, j]`` are the two payoffs of cell ``(i, j)``.
    """

    row_strategies: tuple
    col_strategies: tuple
    u1: np.ndarray
    u2: np.ndarray
    players: tuple = ("Player 1", "Player 2")

    def __post_init__(self):
        object.__setattr__(self, "row_strategies", tuple(self.row_strategies))
        object.__setattr__(self, "col_strategies", tuple(self.col_strategies))
        object.__setattr__(self, "players", tuple(self.players))
        u1 = np.array(self.u1, dtype=np.float64)
        u2 = np.array(self.u2, dtype=np.float64)
        p, q = len(self.row_strategies), len(self.col_strategies)
        if p < 1 or q < 1:
            raise ValueError("each player needs at least one strategy")
        if u1.shape != (p, q) or u2.shape != (p, q):
            raise ValueError(f"payoff matrices must be {p}x{q}, got {u1.shape} and {u2.shape}")
        if not (np.all(np.isfinite(u1)) and np.all(np.isfinite(u2))):
            raise ValueError("payoffs must be finite")
        u1.setflags(write=False)
        u2.setflags(write=False)
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)

    @classmethod
    def from_pairs(cls, row_strategies, col_strategies, pairs, players=("Player 1", "Player 2")):
        arr = np.asarray(pairs, dtype=np.float64)
        return cls(row_strategies, col_strategies, arr[..., 0], arr[..., 1], players)

    @property
    def shape(self) -> tuple[int, int]:
        return self.u1.shape

    def payoff(self, i: int, j: int) -> tuple[float, float]:
        return float(self.u1[i, j]), float(self.u2[i, j])

    def label(self, cell: tuple[int, int]) -> tuple:
        return self.row_strategies[cell[0]], self.col_strategies[cell[1]]

    def strategies(self, player: int) -> tuple:
        _check_player(player)
        return self.row_strategies if player == 1 else self.col_strategies

    def __eq__(self, other):
        if not isinstance(other, BimatrixGame):
            return NotImplemented
        return (
            self.row_strategies == other.row_strategies
            and self.col_strategies == other.col_strategies
            and np.array_equal(self.u1, other.u1)
            and np.array_equal(self.u2, other.u2)
        )


def _check_player(player: int) -> None:
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player!r}")


def _against(g: BimatrixGame, player: int) -> np.ndarray:
    """Payoff table of ``player`` with opponent strategies along axis 0."""
    _check_player(player)
    return g.u1.T if player == 1 else g.u2


def pure_nash_equilibria(g: BimatrixGame) -> list[tuple[int, int]]:
    """All cells where neither player gains by deviating alone (ties count), row-major."""
    mask = kernels.pure_nash_mask(np.ascontiguousarray(g.u1), np.ascontiguousarray(g.u2))
    return [(int(i), int(j)) for i, j in np.argwhere(mask)]


def best_responses(g: BimatrixGame, player: int, opponent_strategy: int) -> set[int]:
    table = _against(g, player)
    if not 0 <= opponent_strategy < table.shape[0]:
        raise IndexOutOfRangeError(
            f"opponent strategy index {opponent_strategy} out of range 0..{table.shape[0] - 1}"
        )
    row = table[opponent_strategy]
    return {int(k) for k in np.flatnonzero(row == row.max())}


@dataclass(frozen=True)
class Rankings:
    """``ranks[o, s]``: dense rank (1 = best) of own strategy ``s`` against opponent strategy ``o``."""

    ranks: np.ndarray
    tied: np.ndarray

    def column(self, opponent_strategy: int) -> list[int]:
        return [int(r) for r in self.ranks[opponent_strategy]]


def strategy_rankings(g: BimatrixGame, player: int) -> Rankings:
    table = _against(g, player)
    ranks = np.empty(table.shape, dtype=np.int64)
    tied = np.zeros(table.shape[0], dtype=bool)
    for o, row in enumerate(table):
        levels = np.unique(row)[::-1]
        ranks[o] = np.searchsorted(-levels, -row) + 1
        tied[o] = len(levels) < len(row)
    return Rankings(ranks, tied)


def best_response_frequency(g: BimatrixGame, player: int) -> dict:
    strategies = g.strategies(player)
    counts = dict.fromkeys(strategies, 0)
    table = _against(g, player)
    for o in range(table.shape[0]):
        for s in best_responses(g, player, o):
            counts[strategies[s]] += 1
    return counts


def to_document(g: BimatrixGame) -> dict:
    return {
        "players": list(g.players),
        "row_strategies": list(g.row_strategies),
        "col_strategies": list(g.col_strategies),
        "payoffs": np.stack([g.u1, g.u2], axis=-1).tolist(),
    }


def from_document(doc, path: str = "game") -> BimatrixGame:
    if not isinstance(doc, dict):
        raise ParseError("expected a game object", path)
    for key in ("row_strategies", "col_strategies", "payoffs"):
        if key not in doc:
            raise ParseError(f"missing '{key}'", path)
    rows, cols, pay = doc["row_strategies"], doc["col_strategies"], doc["payoffs"]
    for key, val in (("row_strategies", rows), ("col_strategies", cols)):
        if not isinstance(val, list) or not val or len(set(map(str, val))) != len(val):
            raise ParseError("expected a non-empty list of distinct labels", f"{path}.{key}")
    if not isinstance(pay, list) or len(pay) != len(rows):
        raise ParseError(f"expected {len(rows)} rows", f"{path}.payoffs")
    for i, row in enumerate(pay):
        if not isinstance(row, list) or len(row) != len(cols):
            raise ParseError(f"expected {len(cols)} cells", f"{path}.payoffs[{i}]")
        for j, cell in enumerate(row):
            ok = (
                isinstance(cell, list)
                and len(cell) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in cell)
            )
            if not ok:
                raise ParseError("cell must be [u1, u2]", f"{path}.payoffs[{i}][{j}]")
    players = doc.get("players", ["Player 1", "Player 2"])
    if not isinstance(players, list) or len(players) != 2:
        raise ParseError("expected two player names", f"{path}.players")
    try:
        return BimatrixGame.from_pairs(rows, cols, pay, players)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc
