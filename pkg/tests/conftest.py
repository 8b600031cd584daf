from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from dngame.dnumbers import DFrame, DNumber, NonExclusivityMatrix
from dngame.fuzzy import TFN

# first calls pay numba compilation, so per-example deadlines are meaningless
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_configure(config):
    config._acceptance_lines = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    store = request.config._acceptance_lines

    def record(n: int, title: str, failures: list[str]):
        status = "PASS" if not failures else "FAIL"
        detail = "" if not failures else "  (" + "; ".join(failures[:5]) + ")"
        line = f"criterion {n}: {status}  {title}{detail}"
        store[n] = line
        print(line)
        assert not failures, line

    return record


# ------------------------------------------------------------ generators


def random_tfn(rng: np.random.Generator, lo=0.0, hi=1.0, min_width=0.0) -> TFN:
    while True:
        a = np.sort(rng.uniform(lo, hi, 3))
        if a[2] - a[0] >= min_width:
            return TFN(*map(float, a))


def random_dnumber(rng, frame: DFrame, k: int | None = None, with_x=True) -> DNumber:
    """Random information-complete D number (masses sum to one)."""
    top = frame.full_mask if with_x else frame.theta_mask
    masks = [m for m in range(1, top + 1) if m & ~top == 0]
    k = k or int(rng.integers(1, min(len(masks), 5) + 1))
    chosen = rng.choice(masks, size=k, replace=False)
    w = rng.dirichlet(np.ones(k))
    return DNumber._from_masks(frame, {int(m): float(v) for m, v in zip(chosen, w)})


def random_matrix(rng, frame: DFrame) -> NonExclusivityMatrix:
    n = frame.n + 1
    b = rng.uniform(0, 1, (n, n))
    b = np.triu(b, 1)
    b = b + b.T + np.eye(n)
    return NonExclusivityMatrix(frame, b)


@st.composite
def tfns(draw, lo=-5.0, hi=5.0):
    xs = sorted(
        draw(st.floats(lo, hi, allow_nan=False, allow_infinity=False)) for _ in range(3)
    )
    return TFN(*xs)


@st.composite
def dnumber_cases(draw, n_max=3, operands=2):
    """(frame, matrix, [D numbers]) drawn from a seed so shrinking stays cheap."""
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, n_max))
    rng = np.random.default_rng(seed)
    frame = DFrame(tuple("abcdef"[:n]))
    return frame, random_matrix(rng, frame), [random_dnumber(rng, frame) for _ in range(operands)]


@pytest.fixture
def full_scenario_doc():
    """Bundled one-case scenario widened to full coverage by reusing its votes.

    Alpha's cases all reuse the BS1 votes; Beta's strategy k reuses the
    votes Alpha gave strategy k, so the payoffs are deterministic but
    carry no meaning beyond exercising the full-game path.
    """
    import json

    from dngame.fixtures import data_path

    with data_path("scenario_bs1.json").open() as fh:
        doc = json.load(fh)
    votes = doc["cases"][0]["votes"]
    alpha, beta = doc["players"]
    cases = [
        {"player": alpha, "opponent_strategy": b, "votes": votes} for b in doc["strategies"][beta]
    ]
    beta_votes = {b: votes[a] for a, b in zip(doc["strategies"][alpha], doc["strategies"][beta])}
    cases += [
        {"player": beta, "opponent_strategy": a, "votes": beta_votes} for a in doc["strategies"][alpha]
    ]
    doc["cases"] = cases
    return doc
