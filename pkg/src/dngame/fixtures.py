"""Bundled reference data for the worked two-player example.

Every item carries a short ``tag`` so reports can say which reference
dataset a number came from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import formats
from .dnumbers import DFrame, DNumber, NonExclusivityMatrix, matrix_from_dict
from .game import BimatrixGame, from_document as game_from_document
from .pipeline import ScenarioSpec

TAGS = {
    "scale": "linguistic-scale",
    "weights": "criterion-weights",
    "case_bs1": "alpha-votes-given-BS1",
    "nonexcl": "scale-nonexclusivity",
    "ecr": "ecr-two-source-example",
    "game_dnt": "dnt-payoff-matrix",
    "game_topsis": "topsis-payoff-matrix",
    "chain": "AS1|BS1-fusion-chain",
    "rankings": "strategy-rankings",
}


def data_path(name: str):
    return resources.files("dngame") / "data" / name


def _read(name: str):
    with data_path(name).open(encoding="utf-8") as fh:
        return json.load(fh)


@dataclass(frozen=True)
class FixtureSet:
    scenario: ScenarioSpec
    ecr_frame: DFrame
    ecr_inputs: tuple
    ecr_matrix: NonExclusivityMatrix
    game_dnt: BimatrixGame
    game_topsis: BimatrixGame
    expected: dict
    tags: dict = field(default_factory=lambda: dict(TAGS))


@lru_cache(maxsize=1)
def load_fixtures() -> FixtureSet:
    scenario = formats.parse_scenario(_read("scenario_bs1.json"), "scenario_bs1.json")
    frame, ds = formats.parse_dnumber_list(_read("ecr_example.json"), "ecr_example.json")
    matrix = matrix_from_dict(_read("ecr_example_matrix.json"), frame, "ecr_example_matrix.json")
    return FixtureSet(
        scenario=scenario,
        ecr_frame=frame,
        ecr_inputs=tuple(ds),
        ecr_matrix=matrix,
        game_dnt=game_from_document(_read("game_dnt.json"), "game_dnt.json"),
        game_topsis=game_from_document(_read("game_topsis.json"), "game_topsis.json"),
        expected=_read("expected.json"),
    )


def expected_dnumber(frame: DFrame, pairs) -> dict:
    """``[[labels, mass], ...]`` -> ``{mask: mass}``."""
    return {frame.mask(labels): mass for labels, mass in pairs}


def as_dnumber(frame: DFrame, pairs) -> DNumber:
    return DNumber(frame, {tuple(labels): mass for labels, mass in pairs})
