"""Classical Dempster-Shafer machinery over exclusive frames.

Subsets are plain ``frozenset`` objects of frame labels. This module works
directly on sets rather than on the bitmask kernels used for D numbers, so
it doubles as an independent reference when checking that the D-number
combination degenerates to Dempster's rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .errors import (
    FrameMismatchError,
    MassOverflowError,
    NegativeMassError,
    EmptyFocalError,
    ParseError,
    TotalConflictError,
)

MASS_TOL = 1e-9
PRUNE_TOL = 1e-12
CONFLICT_TOL = 1e-12


@dataclass(frozen=True)
class Frame:
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError("a frame needs at least one element")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"duplicate frame labels in {self.elements}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def omega(self) -> frozenset:
        return frozenset(self.elements)

    def subset(self, labels: Iterable[Hashable]) -> frozenset:
        s = frozenset(labels)
        extra = s - self.omega
        if extra:
            raise FrameMismatchError(f"labels {sorted(map(str, extra))} not in frame")
        return s

    def complement(self, a: Iterable[Hashable]) -> frozenset:
        return self.omega - self.subset(a)

    def sort_key(self, s: frozenset):
        idx = {e: i for i, e in enumerate(self.elements)}
        return (len(s), sorted(idx[e] for e in s))


class BasicProbabilityAssignment:
    """Normalized mass function over a :class:`Frame`.

    Only focal elements (mass > 0) are stored. The empty set never carries
    mass and the masses sum to one.
    """

    __slots__ = ("frame", "_mass")

    def __init__(self, frame: Frame | Iterable[Hashable], masses: Mapping):
        if not isinstance(frame, Frame):
            frame = Frame(tuple(frame))
        self.frame = frame
        acc: dict[frozenset, float] = {}
        for key, v in masses.items():
            s = frame.subset(key)
            v = float(v)
            if v < 0:
                raise NegativeMassError(f"negative mass {v} on {sorted(map(str, s))}")
            if not s:
                if v > 0:
                    raise EmptyFocalError("the empty set cannot carry mass")
                continue
            if v > 0:
                acc[s] = acc.get(s, 0.0) + v
        total = math.fsum(acc.values())
        if abs(total - 1.0) > MASS_TOL:
            raise MassOverflowError(f"BPA masses sum to {total}, expected 1")
        self._mass = acc

    def __getitem__(self, key) -> float:
        return self._mass.get(frozenset(key), 0.0)

    def __iter__(self):
        return iter(self._mass)

    def __len__(self):
        return len(self._mass)

    def items(self):
        return self._mass.items()

    def focal_sets(self) -> list[frozenset]:
        return sorted(self._mass, key=self.frame.sort_key)

    def __eq__(self, other):
        if not isinstance(other, BasicProbabilityAssignment):
            return NotImplemented
        return self.frame == other.frame and self._mass == other._mass

    def __repr__(self):
        body = ", ".join(
            "{" + ",".join(map(str, sorted(s, key=self.frame.elements.index))) + f"}}:{self._mass[s]:.4g}"
            for s in self.focal_sets()
        )
        return f"BPA({body})"

    @classmethod
    def vacuous(cls, frame: Frame | Iterable[Hashable]) -> BasicProbabilityAssignment:
        if not isinstance(frame, Frame):
            frame = Frame(tuple(frame))
        return cls(frame, {frame.omega: 1.0})


BPA = BasicProbabilityAssignment


def _check_frame(m: BasicProbabilityAssignment, a: Iterable[Hashable]) -> frozenset:
    return m.frame.subset(a)


def bel(m: BasicProbabilityAssignment, a: Iterable[Hashable]) -> float:
    a = _check_frame(m, a)
    return math.fsum(v for b, v in m.items() if b <= a)


def pl(m: BasicProbabilityAssignment, a: Iterable[Hashable]) -> float:
    a = _check_frame(m, a)
    return math.fsum(v for b, v in m.items() if b & a)


def dempster_combine(
    m1: BasicProbabilityAssignment, m2: BasicProbabilityAssignment
) -> BasicProbabilityAssignment:
    """Normalized conjunctive combination.

    Raises :class:`TotalConflictError` when the conflict coefficient reaches 1.
    """
    if m1.frame != m2.frame:
        raise FrameMismatchError("cannot combine BPAs on different frames")
    acc: dict[frozenset, float] = {}
    conflict = 0.0
    for b, v1 in m1.items():
        for c, v2 in m2.items():
            a = b & c
            if a:
                acc[a] = acc.get(a, 0.0) + v1 * v2
            else:
                conflict += v1 * v2
    if conflict >= 1.0 - CONFLICT_TOL:
        raise TotalConflictError(f"conflict coefficient K = {conflict}")
    norm = 1.0 - conflict
    kept = {a: v / norm for a, v in acc.items() if v / norm >= PRUNE_TOL}
    total = math.fsum(kept.values())
    return BasicProbabilityAssignment(m1.frame, {a: v / total for a, v in kept.items()})


def conflict_coefficient(m1: BasicProbabilityAssignment, m2: BasicProbabilityAssignment) -> float:
    if m1.frame != m2.frame:
        raise FrameMismatchError("cannot combine BPAs on different frames")
    return math.fsum(v1 * v2 for b, v1 in m1.items() for c, v2 in m2.items() if not b & c)


def ppt(m: BasicProbabilityAssignment) -> dict:
    """Pignistic probability: each focal mass split evenly over its members."""
    out = dict.fromkeys(m.frame.elements, 0.0)
    for a, v in m.items():
        share = v / len(a)
        for x in a:
            out[x] += share
    return out


def to_records(m: BasicProbabilityAssignment) -> list[dict]:
    order = m.frame.elements
    return [
        {"subset": sorted(a, key=order.index), "mass": m[a]} for a in m.focal_sets()
    ]


def from_records(frame: Frame | Iterable[Hashable], records, path: str = "bpa") -> BasicProbabilityAssignment:
    if not isinstance(records, list):
        raise ParseError("expected a list of {subset, mass} records", path)
    masses: dict[frozenset, float] = {}
    for i, rec in enumerate(records):
        where = f"{path}[{i}]"
        if not isinstance(rec, dict) or "subset" not in rec or "mass" not in rec:
            raise ParseError("record needs 'subset' and 'mass'", where)
        if not isinstance(rec["mass"], (int, float)) or isinstance(rec["mass"], bool):
            raise ParseError("mass must be a number", f"{where}.mass")
        key = frozenset(rec["subset"])
        masses[key] = masses.get(key, 0.0) + float(rec["mass"])
    try:
        return BasicProbabilityAssignment(frame, masses)
    except (ValueError, FrameMismatchError) as exc:
        raise ParseError(str(exc), path) from exc
