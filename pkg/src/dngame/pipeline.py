"""From linguistic evaluation matrices to a real-valued bimatrix game.

The dataflow per evaluated strategy is

    votes -> singleton D numbers per criterion -> weighted average
          -> repeated ECR (WAC) -> pignistic distribution
          -> fuzzy payoff (distribution-weighted scale triangles)
          -> centroid

Criterion weights are crispified with the graded mean and normalised; the
centroid is used only for payoffs.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .dnumbers import (
    DFrame,
    DNumber,
    NonExclusivityMatrix,
    build_nonexcl_from_scale,
    d_ppt,
    from_linguistic_votes,
    wac_combine,
    weighted_average,
)
from .errors import (
    DegenerateWeightError,
    DomainError,
    FrameMismatchError,
    IncompleteCoverageError,
    UnknownLabelError,
)
from .fuzzy import TriangularFuzzyNumber, centroid_defuzzify, graded_mean, weighted_sum
from .game import (
    BimatrixGame,
    Rankings,
    best_response_frequency,
    pure_nash_equilibria,
    strategy_rankings,
)


class _OrderedTerms(Mapping):
    """Read-only, insertion-ordered label -> TriangularFuzzyNumber map."""

    def __init__(self, terms):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = {}
        for label, t in items:
            if label in self._terms:
                raise ValueError(f"duplicate label {label!r}")
            self._terms[label] = t if isinstance(t, TriangularFuzzyNumber) else TriangularFuzzyNumber(*t)
        if not self._terms:
            raise ValueError(f"{type(self).__name__} must not be empty")

    def __getitem__(self, key) -> TriangularFuzzyNumber:
        return self._terms[key]

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, _OrderedTerms):
            return list(self._terms.items()) == list(other._terms.items())
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"{type(self).__name__}({list(self._terms)})"


class LinguisticScale(_OrderedTerms):
    """Grades in semantic order (worst first) with their fuzzy numbers."""

    @property
    def frame(self) -> DFrame:
        return DFrame(tuple(self))

    def nonexclusivity(self) -> NonExclusivityMatrix:
        return build_nonexcl_from_scale(self)


class CriterionWeights(_OrderedTerms):
    pass


@dataclass(frozen=True)
class EvaluationCase:
    """Votes on ``player``'s strategies given the opponent plays ``opponent_strategy``.

    ``votes[(strategy, criterion)]`` lists one label per decision maker.
    """

    player: str
    opponent_strategy: str
    votes: Mapping
    dm_weights: tuple | None = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.player, self.opponent_strategy)


@dataclass(frozen=True)
class ScenarioSpec:
    players: tuple
    strategies: Mapping
    scale: LinguisticScale
    weights: CriterionWeights
    cases: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "cases", tuple(self.cases))
        object.__setattr__(
            self, "strategies", {p: tuple(s) for p, s in self.strategies.items()}
        )
        if len(self.players) != 2 or self.players[0] == self.players[1]:
            raise ValueError("a scenario needs two distinct players")
        for p in self.players:
            if not self.strategies.get(p):
                raise ValueError(f"no strategies declared for {p!r}")
        seen = set()
        for case in self.cases:
            if case.key in seen:
                raise ValueError(f"duplicate case {case.player}|{case.opponent_strategy}")
            seen.add(case.key)

    def opponent(self, player: str) -> str:
        if player not in self.players:
            raise UnknownLabelError(f"unknown player {player!r}")
        return self.players[1] if player == self.players[0] else self.players[0]

    def case(self, player: str, opponent_strategy: str) -> EvaluationCase:
        for c in self.cases:
            if c.key == (player, opponent_strategy):
                return c
        raise IncompleteCoverageError([(player, opponent_strategy)])

    def find_case(self, opponent_strategy: str, player: str | None = None) -> EvaluationCase:
        """Case conditioned on ``opponent_strategy``; the player is inferred when unambiguous."""
        hits = [
            c
            for c in self.cases
            if c.opponent_strategy == opponent_strategy and (player is None or c.player == player)
        ]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            owner = player or next(
                (p for p in self.players if opponent_strategy in self.strategies[self.opponent(p)]),
                "?",
            )
            raise IncompleteCoverageError([(owner, opponent_strategy)])
        raise UnknownLabelError(f"case {opponent_strategy!r} is ambiguous; name the player")

    def missing_cases(self) -> list[tuple[str, str]]:
        have = {c.key for c in self.cases}
        return [
            (p, o)
            for p in self.players
            for o in self.strategies[self.opponent(p)]
            if (p, o) not in have
        ]


# ------------------------------------------------------------ operations


def normalize_weights(weights: Mapping) -> dict:
    crisp = {c: graded_mean(t) for c, t in weights.items()}
    for c, v in crisp.items():
        if not v > 0:
            raise DegenerateWeightError(f"criterion {c!r} has non-positive graded mean {v}")
    total = math.fsum(crisp.values())
    return {c: v / total for c, v in crisp.items()}


def validate_case(case: EvaluationCase, spec: ScenarioSpec) -> None:
    own = spec.strategies.get(case.player)
    if own is None:
        raise UnknownLabelError(f"unknown player {case.player!r}")
    if case.opponent_strategy not in spec.strategies[spec.opponent(case.player)]:
        raise UnknownLabelError(
            f"{case.opponent_strategy!r} is not a strategy of {spec.opponent(case.player)}"
        )
    _validate_votes(case, own, tuple(spec.weights), spec.scale)


def _validate_votes(case: EvaluationCase, strategies, criteria, scale) -> None:
    counts = set()
    for s in strategies:
        for c in criteria:
            cell = case.votes.get((s, c))
            if cell is None:
                raise DomainError(f"case {case.player}|{case.opponent_strategy} lacks cell ({s}, {c})")
            counts.add(len(cell))
            for lab in cell:
                if lab not in scale:
                    raise UnknownLabelError(f"label {lab!r} in cell ({s}, {c}) is not on the scale")
    if len(counts) > 1:
        raise DomainError(f"unequal decision-maker counts {sorted(counts)} in case {case.key}")
    if case.dm_weights is not None and counts and len(case.dm_weights) != counts.pop():
        raise DomainError("dm_weights length differs from the number of decision makers")


def case_to_dnumber_matrix(case: EvaluationCase, scale: LinguisticScale) -> dict:
    frame = scale.frame
    return {
        key: from_linguistic_votes(list(votes), frame, case.dm_weights)
        for key, votes in case.votes.items()
    }


def fuse_strategy(cellrow: Mapping, weights: Mapping, M: NonExclusivityMatrix) -> DNumber:
    """WAC fusion of one strategy's per-criterion D numbers, in ``weights`` order."""
    if set(cellrow) != set(weights):
        raise FrameMismatchError(
            f"criteria differ: {sorted(map(str, cellrow))} vs {sorted(map(str, weights))}"
        )
    order = list(weights)
    return wac_combine([cellrow[c] for c in order], [weights[c] for c in order], M)


@dataclass(frozen=True)
class PayoffChain:
    distribution: dict
    fuzzy: TriangularFuzzyNumber
    crisp: float


def payoff_chain(D: DNumber, scale: LinguisticScale) -> PayoffChain:
    if tuple(D.frame.theta) != tuple(scale):
        raise FrameMismatchError("D number frame and scale labels differ")
    dis = d_ppt(D)
    fuzzy = weighted_sum([scale[lab] for lab in dis], list(dis.values()))
    return PayoffChain(dis, fuzzy, centroid_defuzzify(fuzzy))


def dnumber_to_payoff(D: DNumber, scale: LinguisticScale) -> float:
    return payoff_chain(D, scale).crisp


@dataclass(frozen=True)
class StrategyResult:
    strategy: str
    cells: dict
    average: DNumber
    fused: DNumber
    chain: PayoffChain

    @property
    def payoff(self) -> float:
        return self.chain.crisp


@dataclass(frozen=True)
class CaseResult:
    player: str
    opponent_strategy: str
    weights: dict
    strategies: dict

    def payoffs(self) -> dict:
        return {s: r.payoff for s, r in self.strategies.items()}


def evaluate_case(
    case: EvaluationCase,
    spec: ScenarioSpec,
    M: NonExclusivityMatrix | None = None,
    weights: Mapping | None = None,
) -> CaseResult:
    validate_case(case, spec)
    if M is None:
        M = spec.scale.nonexclusivity()
    if weights is None:
        weights = normalize_weights(spec.weights)
    cells = case_to_dnumber_matrix(case, spec.scale)
    results = {}
    for s in spec.strategies[case.player]:
        row = {c: cells[(s, c)] for c in spec.weights}
        order = list(weights)
        avg = weighted_average([row[c] for c in order], [weights[c] for c in order])
        fused = fuse_strategy(row, weights, M)
        results[s] = StrategyResult(s, row, avg, fused, payoff_chain(fused, spec.scale))
    return CaseResult(case.player, case.opponent_strategy, dict(weights), results)


def build_payoff_column(case: EvaluationCase, spec: ScenarioSpec) -> dict:
    return evaluate_case(case, spec).payoffs()


def _evaluate_all(spec: ScenarioSpec, workers: int | None) -> dict:
    M = spec.scale.nonexclusivity()
    weights = normalize_weights(spec.weights)
    cases = list(spec.cases)

    def run(case):
        return evaluate_case(case, spec, M, weights)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, cases))
    else:
        results = [run(c) for c in cases]
    return {case.key: res for case, res in zip(cases, results)}


def assemble_game(spec: ScenarioSpec, case_results: Mapping) -> BimatrixGame:
    missing = [k for k in spec.missing_cases() if k not in case_results]
    if missing:
        raise IncompleteCoverageError(missing)
    alpha, beta = spec.players
    rows, cols = spec.strategies[alpha], spec.strategies[beta]
    u1 = [[case_results[(alpha, b)].strategies[a].payoff for b in cols] for a in rows]
    u2 = [[case_results[(beta, a)].strategies[b].payoff for b in cols] for a in rows]
    return BimatrixGame(rows, cols, u1, u2, spec.players)


def build_game(spec: ScenarioSpec, workers: int | None = None) -> BimatrixGame:
    missing = spec.missing_cases()
    if missing:
        raise IncompleteCoverageError(missing)
    return assemble_game(spec, _evaluate_all(spec, workers))


@dataclass(frozen=True)
class Report:
    game: BimatrixGame
    equilibria: list
    rankings: dict
    frequencies: dict
    cases: dict = field(default_factory=dict)

    def dnumber_payoff(self, i: int, j: int) -> tuple[DNumber, DNumber]:
        """``(D_{row_i | col_j}, D_{col_j | row_i})`` for cell ``(i, j)``."""
        alpha, beta = self.game.players
        a, b = self.game.row_strategies[i], self.game.col_strategies[j]
        return (
            self.cases[(alpha, b)].strategies[a].fused,
            self.cases[(beta, a)].strategies[b].fused,
        )

    @property
    def equilibrium_labels(self) -> list[tuple]:
        return [self.game.label(c) for c in self.equilibria]


def analyze_game(g: BimatrixGame, cases: Mapping | None = None) -> Report:
    rankings: dict[int, Rankings] = {p: strategy_rankings(g, p) for p in (1, 2)}
    freqs = {p: best_response_frequency(g, p) for p in (1, 2)}
    return Report(g, pure_nash_equilibria(g), rankings, freqs, dict(cases or {}))


def run_scenario(spec: ScenarioSpec, workers: int | None = None) -> Report:
    missing = spec.missing_cases()
    if missing:
        raise IncompleteCoverageError(missing)
    results = _evaluate_all(spec, workers)
    return analyze_game(assemble_game(spec, results), results)
