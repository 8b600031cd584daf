"""Deterministic text and JSON rendering.

Tables print three decimals; JSON output keeps full precision and reuses
the input document schemas where one exists.
"""

from __future__ import annotations

import json

from . import dnumbers as dn
from .game import to_document
from .pipeline import CaseResult, Report


def f3(x: float) -> str:
    # avoid "-0.000"
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    line = lambda r: "  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths)))
    return "\n".join([line(header), *(line(r) for r in rows)])


# ------------------------------------------------------------- matrices


def matrix_table(M: dn.NonExclusivityMatrix) -> str:
    labels = [str(x) for x in M.frame.labels_with_x]
    rows = [[lab] + [f3(v) for v in M.base[i]] for i, lab in enumerate(labels)]
    return _grid([""] + labels, rows)


def matrix_json(M: dn.NonExclusivityMatrix) -> str:
    return dumps(dn.matrix_to_dict(M))


# ------------------------------------------------------------ D numbers


def dnumber_lines(D: dn.DNumber, indent: str = "  ") -> list[str]:
    return [f"{indent}{D.frame.format(m):<16} {f3(v)}" for m, v in D.items()]


def combine_table(frame: dn.DFrame, steps: list[tuple[float, dn.DNumber]]) -> str:
    out = []
    for i, (k, D) in enumerate(steps, start=1):
        out.append(f"step {i}: K_D = {f3(k)}")
    out.append("result:")
    out.extend(dnumber_lines(steps[-1][1]))
    return "\n".join(out)


def combine_json(frame: dn.DFrame, steps: list[tuple[float, dn.DNumber]]) -> str:
    return dumps(
        {
            "theta": list(frame.theta),
            "steps": [{"step": i, "conflict": k} for i, (k, _) in enumerate(steps, start=1)],
            "result": dn.to_records(steps[-1][1]),
        }
    )


# ---------------------------------------------------------------- cases


def case_table(res: CaseResult) -> str:
    out = [f"case {res.player} | {res.opponent_strategy}"]
    out.append("criterion weights: " + ", ".join(f"{c}={f3(w)}" for c, w in res.weights.items()))
    for s, r in res.strategies.items():
        out.append(f"\n{s}")
        for c, D in r.cells.items():
            body = "; ".join(f"{D.frame.format(m)}, {f3(v)}" for m, v in D.items())
            out.append(f"  {c}: ({body})")
        out.append("  weighted average:")
        out.extend(dnumber_lines(r.average, "    "))
        out.append("  fused:")
        out.extend(dnumber_lines(r.fused, "    "))
        out.append("  distribution: " + ", ".join(f"{k}={f3(v)}" for k, v in r.chain.distribution.items()))
        a1, a2, a3 = r.chain.fuzzy.as_tuple()
        out.append(f"  fuzzy payoff: ({f3(a1)}, {f3(a2)}, {f3(a3)})")
        out.append(f"  payoff: {f3(r.payoff)}")
    out.append("\npayoffs: " + ", ".join(f"{s}={f3(v)}" for s, v in res.payoffs().items()))
    return "\n".join(out)


def case_document(res: CaseResult) -> dict:
    return {
        "player": res.player,
        "opponent_strategy": res.opponent_strategy,
        "weights": res.weights,
        "strategies": {
            s: {
                "cells": {c: dn.to_records(D) for c, D in r.cells.items()},
                "average": dn.to_records(r.average),
                "fused": dn.to_records(r.fused),
                "distribution": r.chain.distribution,
                "fuzzy_payoff": list(r.chain.fuzzy.as_tuple()),
                "payoff": r.payoff,
            }
            for s, r in res.strategies.items()
        },
    }


def case_json(res: CaseResult) -> str:
    return dumps(case_document(res))


# -------------------------------------------------------------- reports


def report_table(rep: Report) -> str:
    g = rep.game
    alpha, beta = g.players
    out = [f"payoff matrix ({alpha} rows, {beta} columns)"]
    rows = [
        [a] + [f"({f3(g.u1[i, j])}, {f3(g.u2[i, j])})" for j in range(len(g.col_strategies))]
        for i, a in enumerate(g.row_strategies)
    ]
    out.append(_grid([""] + list(g.col_strategies), rows))
    if rep.equilibria:
        eq = ", ".join(f"({a}, {b})" for a, b in rep.equilibrium_labels)
    else:
        eq = "none"
    out.append(f"\npure-strategy equilibria: {eq}")
    for player, name, own, opp in ((1, alpha, g.row_strategies, g.col_strategies),
                                   (2, beta, g.col_strategies, g.row_strategies)):
        r = rep.rankings[player]
        out.append(f"\n{name} rankings (rows: own strategy, columns: opponent strategy)")
        rows = []
        for s, own_label in enumerate(own):
            rows.append([own_label] + [str(int(r.ranks[o, s])) for o in range(len(opp))])
        out.append(_grid([""] + list(opp), rows))
        tied = [opp[o] for o in range(len(opp)) if r.tied[o]]
        if tied:
            out.append("tied rankings given: " + ", ".join(tied))
        freq = ", ".join(f"{s}={n}" for s, n in rep.frequencies[player].items())
        out.append(f"{name} best-response counts: {freq}")
    return "\n".join(out)


def report_document(rep: Report) -> dict:
    g = rep.game
    doc = to_document(g)
    doc["equilibria"] = [list(lab) for lab in rep.equilibrium_labels]
    doc["rankings"] = {
        g.players[p - 1]: {
            opp_label: {own_label: int(r.ranks[o, s]) for s, own_label in enumerate(g.strategies(p))}
            for o, opp_label in enumerate(g.strategies(2 if p == 1 else 1))
        }
        for p, r in rep.rankings.items()
    }
    doc["tied"] = {
        g.players[p - 1]: [g.strategies(2 if p == 1 else 1)[o] for o in range(len(r.tied)) if r.tied[o]]
        for p, r in rep.rankings.items()
    }
    doc["best_response_counts"] = {g.players[p - 1]: f for p, f in rep.frequencies.items()}
    if rep.cases:
        doc["cases"] = [case_document(res) for res in rep.cases.values()]
    return doc


def report_json(rep: Report) -> str:
    return dumps(report_document(rep))


# --------------------------------------------------------------- checks


def _show(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def checks_table(checks) -> str:
    out = []
    for ch in checks:
        status = "PASS" if ch.passed else "FAIL"
        d = ch.delta
        extra = f"  delta={d:.2e} tol={ch.tol:.0e}" if d is not None and ch.tol is not None else ""
        out.append(
            f"{status}  [{ch.group}] {ch.name}: expected={_show(ch.expected)} actual={_show(ch.actual)}{extra}  ({ch.tag})"
        )
    failed = sum(not ch.passed for ch in checks)
    out.append(f"{len(checks) - failed} passed, {failed} failed")
    return "\n".join(out)


def checks_json(checks) -> str:
    def plain(v):
        if isinstance(v, set):
            return sorted(v)
        if isinstance(v, (list, tuple)):
            return [plain(x) for x in v]
        return v

    return dumps(
        [
            {
                "group": ch.group,
                "name": ch.name,
                "expected": plain(ch.expected),
                "actual": plain(ch.actual),
                "delta": ch.delta,
                "tolerance": ch.tol,
                "passed": ch.passed,
                "tag": ch.tag,
            }
            for ch in checks
        ]
    )
