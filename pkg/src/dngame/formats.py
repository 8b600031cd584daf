"""JSON documents: linguistic scales, scenarios, D-number lists and matrices.

Triangular fuzzy numbers are always ``[a1, a2, a3]`` arrays. Parsers raise
:class:`~dngame.errors.ParseError` carrying the path of the bad field.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import dnumbers as dn
from .errors import DNGameError, ParseError
from .fuzzy import TriangularFuzzyNumber
from .game import BimatrixGame, from_document as game_from_document
from .pipeline import CriterionWeights, EvaluationCase, LinguisticScale, ScenarioSpec


def read_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno})", str(path)) from exc
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from exc


def parse_tfn(value, path: str) -> TriangularFuzzyNumber:
    ok = (
        isinstance(value, list)
        and len(value) == 3
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    )
    if not ok:
        raise ParseError("expected [a1, a2, a3]", path)
    try:
        return TriangularFuzzyNumber(*map(float, value))
    except DNGameError as exc:
        raise ParseError(str(exc), path) from exc


def _parse_terms(doc, path: str, cls):
    if not isinstance(doc, dict) or not doc:
        raise ParseError("expected a non-empty {label: [a1, a2, a3]} object", path)
    return cls({label: parse_tfn(v, f"{path}.{label}") for label, v in doc.items()})


def parse_scale(doc, path: str = "scale") -> LinguisticScale:
    if isinstance(doc, dict) and "scale" in doc and isinstance(doc["scale"], dict):
        doc = doc["scale"]
    if isinstance(doc, dict) and dn.X in doc:
        raise ParseError(f"label {dn.X!r} is reserved", f"{path}.{dn.X}")
    return _parse_terms(doc, path, LinguisticScale)


def parse_case(doc, path: str) -> EvaluationCase:
    if not isinstance(doc, dict):
        raise ParseError("expected a case object", path)
    for key in ("player", "opponent_strategy", "votes"):
        if key not in doc:
            raise ParseError(f"missing '{key}'", path)
    votes_doc = doc["votes"]
    if not isinstance(votes_doc, dict):
        raise ParseError("expected {strategy: {criterion: [labels]}}", f"{path}.votes")
    votes = {}
    for s, by_crit in votes_doc.items():
        if not isinstance(by_crit, dict):
            raise ParseError("expected {criterion: [labels]}", f"{path}.votes.{s}")
        for c, labels in by_crit.items():
            where = f"{path}.votes.{s}.{c}"
            if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
                raise ParseError("expected a non-empty list of labels", where)
            votes[(s, c)] = tuple(labels)
    weights = doc.get("dm_weights")
    if weights is not None:
        if not isinstance(weights, list) or not all(
            isinstance(w, (int, float)) and not isinstance(w, bool) and w >= 0 for w in weights
        ):
            raise ParseError("expected a list of non-negative numbers", f"{path}.dm_weights")
        weights = tuple(float(w) for w in weights)
    return EvaluationCase(str(doc["player"]), str(doc["opponent_strategy"]), votes, weights)


def parse_scenario(doc, path: str = "scenario") -> ScenarioSpec:
    if not isinstance(doc, dict):
        raise ParseError("expected a scenario object", path)
    for key in ("players", "strategies", "scale", "criteria"):
        if key not in doc:
            raise ParseError(f"missing '{key}'", path)
    players = doc["players"]
    if not isinstance(players, list) or len(players) != 2:
        raise ParseError("expected two player names", f"{path}.players")
    strategies = doc["strategies"]
    if not isinstance(strategies, dict):
        raise ParseError("expected {player: [strategies]}", f"{path}.strategies")
    for p in players:
        if not isinstance(strategies.get(p), list) or not strategies[p]:
            raise ParseError("expected a non-empty strategy list", f"{path}.strategies.{p}")
    scale = parse_scale(doc["scale"], f"{path}.scale")
    weights = _parse_terms(doc["criteria"], f"{path}.criteria", CriterionWeights)
    cases_doc = doc.get("cases", [])
    if not isinstance(cases_doc, list):
        raise ParseError("expected a list of cases", f"{path}.cases")
    cases = [parse_case(c, f"{path}.cases[{i}]") for i, c in enumerate(cases_doc)]
    try:
        return ScenarioSpec(tuple(players), strategies, scale, weights, tuple(cases))
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def scenario_to_document(spec: ScenarioSpec) -> dict:
    cases = []
    for case in spec.cases:
        votes: dict = {}
        for (s, c), labels in case.votes.items():
            votes.setdefault(s, {})[c] = list(labels)
        entry = {"player": case.player, "opponent_strategy": case.opponent_strategy, "votes": votes}
        if case.dm_weights is not None:
            entry["dm_weights"] = list(case.dm_weights)
        cases.append(entry)
    return {
        "players": list(spec.players),
        "strategies": {p: list(s) for p, s in spec.strategies.items()},
        "scale": {k: list(t.as_tuple()) for k, t in spec.scale.items()},
        "criteria": {k: list(t.as_tuple()) for k, t in spec.weights.items()},
        "cases": cases,
    }


def parse_dnumber_list(doc, path: str = "dnumbers") -> tuple[dn.DFrame, list[dn.DNumber]]:
    """``{theta: [...], dnumbers: [[{focal, mass}, ...], ...]}``."""
    if not isinstance(doc, dict) or "theta" not in doc or "dnumbers" not in doc:
        raise ParseError("expected {theta, dnumbers}", path)
    theta = doc["theta"]
    if not isinstance(theta, list) or not theta or not all(isinstance(s, str) for s in theta):
        raise ParseError("expected a non-empty list of labels", f"{path}.theta")
    try:
        frame = dn.DFrame(tuple(theta))
    except ValueError as exc:
        raise ParseError(str(exc), f"{path}.theta") from exc
    items = doc["dnumbers"]
    if not isinstance(items, list):
        raise ParseError("expected a list of D numbers", f"{path}.dnumbers")
    return frame, [dn.from_records(frame, rec, f"{path}.dnumbers[{i}]") for i, rec in enumerate(items)]


def load_scale(path) -> LinguisticScale:
    return parse_scale(read_json(path), str(Path(path).name))


def load_scenario(path) -> ScenarioSpec:
    return parse_scenario(read_json(path), str(Path(path).name))


def load_game(path) -> BimatrixGame:
    return game_from_document(read_json(path), str(Path(path).name))


def load_dnumbers(path):
    return parse_dnumber_list(read_json(path), str(Path(path).name))


def load_matrix(path, frame: dn.DFrame | None = None) -> dn.NonExclusivityMatrix:
    return dn.matrix_from_dict(read_json(path), frame, str(Path(path).name))
