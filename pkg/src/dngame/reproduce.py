"""Reference-value checks behind ``dngame reproduce-paper``.

Each check compares one computed quantity against the bundled reference
value at a fixed absolute tolerance (``None`` means exact equality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import dnumbers as dn
from .fixtures import FixtureSet, load_fixtures
from .fuzzy import graded_mean
from .game import best_responses, best_response_frequency, pure_nash_equilibria, strategy_rankings
from .pipeline import evaluate_case, normalize_weights

GROUPS = ("nonexcl", "ecr", "weights", "fusion", "column", "equilibria", "rankings")

# half a unit of the third printed decimal
TOL_PRINTED = 5e-4
# chained values whose small terms were dropped before rounding
TOL_CHAINED = 2e-3
TOL_DEFUZZ = 1e-3
TOL_SUM = 1e-9


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    expected: object
    actual: object
    tol: float | None
    tag: str = ""

    @property
    def delta(self) -> float | None:
        if isinstance(self.expected, (int, float)) and isinstance(self.actual, (int, float)):
            return abs(float(self.actual) - float(self.expected))
        return None

    @property
    def passed(self) -> bool:
        if self.tol is None:
            return self.expected == self.actual
        d = self.delta
        return d is not None and math.isfinite(d) and d <= self.tol


class _Collector:
    def __init__(self, tolerance: float | None):
        self.tolerance = tolerance
        self.checks: list[Check] = []

    def num(self, group, name, expected, actual, tol, tag=""):
        if self.tolerance is not None:
            tol = self.tolerance
        self.checks.append(Check(group, name, float(expected), float(actual), tol, tag))

    def exact(self, group, name, expected, actual, tag=""):
        self.checks.append(Check(group, name, expected, actual, None, tag))


def _fmt_set(frame, mask):
    return frame.format(mask)


def _nonexcl(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["nonexcl"]
    M = fx.scenario.scale.nonexclusivity()
    labels = M.frame.labels_with_x
    listed = set()
    for a, b, v in exp["nonexcl_pairs"]:
        i, j = M.frame.index(a), M.frame.index(b)
        listed |= {(i, j), (j, i)}
        c.num("nonexcl", f"u({a},{b})", v, M.base[i, j], TOL_PRINTED, tag)
    zeros = [
        (i, j) for i in range(len(labels)) for j in range(len(labels)) if i != j and (i, j) not in listed
    ]
    worst = max(abs(M.base[i, j]) for i, j in zeros)
    c.exact("nonexcl", "all other off-diagonal degrees are 0", 0.0, float(worst), tag)
    ps = exp["nonexcl_powerset"]
    c.num(
        "nonexcl",
        f"u({{{','.join(ps['b'])}}},{{{','.join(ps['c'])}}})",
        ps["value"],
        dn.extend_nonexcl(M, ps["b"], ps["c"]),
        TOL_PRINTED,
        tag,
    )


def _ecr(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["ecr"]
    frame, (d1, d2), M = fx.ecr_frame, fx.ecr_inputs, fx.ecr_matrix
    result, k = dn.ecr_combine_with_conflict(d1, d2, M)
    c.num("ecr", "K_D", exp["ecr_conflict"], k, TOL_PRINTED, tag)
    for labels, v in exp["ecr_result"]:
        mask = frame.mask(labels)
        c.num("ecr", f"D({_fmt_set(frame, mask)})", v, result.mass_of_mask(mask), TOL_PRINTED, tag)
    c.num("ecr", "sum of combined masses", 1.0, result.total(), TOL_SUM, tag)
    table = dn.ecr_table(d1, d2, M)
    by_pair = {(cell.row, cell.col): cell for row in table for cell in row}
    t = exp["ecr_table"]
    for r, row_labels in enumerate(t["rows"]):
        for q, col_labels in enumerate(t["cols"]):
            cell = by_pair[(frame.mask(row_labels), frame.mask(col_labels))]
            target, value = t["cells"][r][q]
            name = f"table[{_fmt_set(frame, frame.mask(row_labels))}][{_fmt_set(frame, frame.mask(col_labels))}]"
            c.exact("ecr", name + " target", _fmt_set(frame, frame.mask(target)), _fmt_set(frame, cell.target), tag)
            c.num("ecr", name + " value", value, cell.value, TOL_PRINTED, tag)


def _weights(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["weights"]
    for crit, tfn in fx.scenario.weights.items():
        c.num("weights", f"graded_mean({crit})", exp["graded_means"][crit], graded_mean(tfn), TOL_PRINTED, tag)
    w = normalize_weights(fx.scenario.weights)
    for crit, v in exp["weights"].items():
        c.num("weights", f"w({crit})", v, w[crit], TOL_PRINTED, tag)


def _case_bs1(fx: FixtureSet):
    case = fx.scenario.find_case("BS1", fx.scenario.players[0])
    return evaluate_case(case, fx.scenario)


def _fusion(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["chain"]
    res = _case_bs1(fx)
    as1 = res.strategies["AS1"]
    frame = as1.fused.frame
    first = exp["first_cell_votes"]
    cell = as1.cells[first["criterion"]]
    for labels, v in first["dnumber"]:
        c.num("fusion", f"votes D({','.join(labels)})", v, cell[labels], TOL_PRINTED, fx.tags["case_bs1"])
    for labels, v in exp["average_as1"]:
        c.num("fusion", f"average D({','.join(labels)})", v, as1.average[labels], TOL_PRINTED, tag)
    for labels, v in exp["fused_as1"]:
        mask = frame.mask(labels)
        c.num("fusion", f"fused D({_fmt_set(frame, mask)})", v, as1.fused.mass_of_mask(mask), TOL_CHAINED, tag)
    for lab, v in exp["distribution_as1"].items():
        c.num("fusion", f"DIS({lab})", v, as1.chain.distribution[lab], TOL_CHAINED, tag)
    for name, v, a in zip(("a1", "a2", "a3"), exp["fuzzy_payoffs"]["AS1"], as1.chain.fuzzy.as_tuple()):
        c.num("fusion", f"fuzzy payoff AS1 {name}", v, a, TOL_CHAINED, tag)
    c.num("fusion", "defuzzified payoff AS1", exp["payoffs_bs1"]["AS1"], as1.payoff, TOL_DEFUZZ, tag)


def _column(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["case_bs1"]
    res = _case_bs1(fx)
    for s, v in exp["payoffs_bs1"].items():
        c.num("column", f"payoff {s}|BS1", v, res.strategies[s].payoff, TOL_CHAINED, tag)
    for s, tri in exp["fuzzy_payoffs"].items():
        for name, v, a in zip(("a1", "a2", "a3"), tri, res.strategies[s].chain.fuzzy.as_tuple()):
            c.num("column", f"fuzzy payoff {s}|BS1 {name}", v, a, TOL_CHAINED, tag)
    payoffs = res.payoffs()
    best = max(payoffs, key=payoffs.get)
    c.exact("column", "best response to BS1", exp["best_response_bs1"], best, tag)


def _brute_force_equilibria(g):
    p, q = g.shape
    out = []
    for i in range(p):
        for j in range(q):
            if all(g.u1[i, j] >= g.u1[k, j] for k in range(p)) and all(
                g.u2[i, j] >= g.u2[i, k] for k in range(q)
            ):
                out.append((i, j))
    return out


def _equilibria(fx: FixtureSet, c: _Collector):
    want = [tuple(fx.expected["equilibrium"])]
    for key in ("game_dnt", "game_topsis"):
        g = getattr(fx, key)
        eq = pure_nash_equilibria(g)
        c.exact("equilibria", f"{fx.tags[key]} equilibria", want, [g.label(e) for e in eq], fx.tags[key])
        c.exact(
            "equilibria",
            f"{fx.tags[key]} brute-force agreement",
            want,
            [g.label(e) for e in _brute_force_equilibria(g)],
            fx.tags[key],
        )


def _rankings(fx: FixtureSet, c: _Collector):
    exp = fx.expected
    tag = fx.tags["rankings"]
    games = {"dnt": fx.game_dnt, "topsis": fx.game_topsis}
    for method, g in games.items():
        for player, key in ((1, "alpha_rankings"), (2, "beta_rankings")):
            r = strategy_rankings(g, player)
            opp = g.strategies(2 if player == 1 else 1)
            for o, opp_label in enumerate(opp):
                c.exact("rankings", f"{method} {key.split('_')[0]} ranks | {opp_label}",
                        exp[key][method][opp_label], r.column(o), tag)
        for player, who in ((1, "alpha"), (2, "beta")):
            freq = best_response_frequency(g, player)
            for strat, count in exp["frequencies"][f"{who}_{method}"].items():
                c.exact("rankings", f"{method} {who} best-response count {strat}", count, freq[strat], tag)
    g = fx.game_dnt
    c.exact("rankings", "dnt alpha best response | BS1", {0}, best_responses(g, 1, 0), tag)
    c.exact("rankings", "dnt beta best response | AS3", {2}, best_responses(g, 2, 2), tag)


_RUNNERS = {
    "nonexcl": _nonexcl,
    "ecr": _ecr,
    "weights": _weights,
    "fusion": _fusion,
    "column": _column,
    "equilibria": _equilibria,
    "rankings": _rankings,
}


def run_checks(
    fixtures: FixtureSet | None = None,
    only: str | list | None = None,
    tolerance: float | None = None,
) -> list[Check]:
    fx = fixtures or load_fixtures()
    if only is None:
        groups = GROUPS
    else:
        groups = (only,) if isinstance(only, str) else tuple(only)
        unknown = set(groups) - set(GROUPS)
        if unknown:
            raise ValueError(f"unknown check groups {sorted(unknown)}; choose from {GROUPS}")
    c = _Collector(tolerance)
    for group in groups:
        _RUNNERS[group](fx, c)
    return c.checks


def summarize(checks: list[Check]) -> tuple[int, int]:
    failed = sum(not ch.passed for ch in checks)
    return len(checks) - failed, failed


__all__ = ["Check", "GROUPS", "run_checks", "summarize"]
