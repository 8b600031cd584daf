"""D numbers over non-exclusive frames.

A :class:`DFrame` numbers its labels ``F_1 .. F_N`` as bits ``0 .. N-1``;
bit ``N`` is the incompleteness symbol ``X``. Focal sets are carried as
integer bitmasks internally, and every public function also accepts plain
label iterables (a bare string is one label).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    EmptyFocalError,
    EmptyVotesError,
    FrameMismatchError,
    LengthMismatchError,
    MassOverflowError,
    NegativeMassError,
    NoInformationError,
    ParseError,
    TotalExclusiveConflictError,
    UnknownLabelError,
    WeightSumInvalidError,
)
from .fuzzy import TriangularFuzzyNumber, non_exclusive_degree

X = "X"
MAX_LABELS = 16
MASS_TOL = 1e-9
PRUNE_TOL = 1e-12
CONFLICT_TOL = 1e-12


@dataclass(frozen=True)
class DFrame:
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(self.theta))
        if not self.theta:
            raise ValueError("a D-number frame needs at least one label")
        if len(set(self.theta)) != len(self.theta):
            raise ValueError(f"duplicate labels in {self.theta}")
        if X in self.theta:
            raise ValueError(f"{X!r} is reserved for the incompleteness symbol")
        if len(self.theta) > MAX_LABELS:
            raise ValueError(f"at most {MAX_LABELS} labels are supported")

    @property
    def n(self) -> int:
        return len(self.theta)

    @property
    def x_bit(self) -> int:
        return 1 << len(self.theta)

    @property
    def theta_mask(self) -> int:
        return (1 << len(self.theta)) - 1

    @property
    def full_mask(self) -> int:
        return (1 << (len(self.theta) + 1)) - 1

    @property
    def labels_with_x(self) -> tuple:
        return self.theta + (X,)

    def index(self, label) -> int:
        if label == X:
            return self.n
        try:
            return self.theta.index(label)
        except ValueError:
            raise FrameMismatchError(f"label {label!r} is not in frame {self.theta}") from None

    def mask(self, labels) -> int:
        if isinstance(labels, DFocalSet):
            if labels.frame != self:
                raise FrameMismatchError("focal set belongs to another frame")
            return labels.mask
        if isinstance(labels, str):
            labels = (labels,)
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels(self, mask: int) -> tuple:
        """Labels of ``mask`` in frame order, X last."""
        return tuple(lab for i, lab in enumerate(self.labels_with_x) if mask >> i & 1)

    def format(self, mask: int) -> str:
        return "{" + ",".join(map(str, self.labels(mask))) + "}"

    def focal(self, labels) -> DFocalSet:
        return DFocalSet(self, self.mask(labels))

    def sort_key(self, mask: int):
        # size first, then frame order, X last
        return (bin(mask).count("1"), [i for i in range(self.n + 1) if mask >> i & 1])


@dataclass(frozen=True)
class DFocalSet:
    frame: DFrame
    mask: int

    @property
    def contains_x(self) -> bool:
        return bool(self.mask & self.frame.x_bit)

    @property
    def labels(self) -> tuple:
        return self.frame.labels(self.mask)

    def __str__(self):
        return self.frame.format(self.mask)


class DNumber:
    """Information-complete D number: masses over subsets of ``Theta + {X}``.

    Incomplete inputs go through :func:`augment_with_X`. Construct from a
    mapping of label iterables (or :class:`DFocalSet`) to masses.
    """

    __slots__ = ("frame", "_mass")

    def __init__(self, frame: DFrame, masses: Mapping):
        self.frame = frame
        acc: dict[int, float] = {}
        for key, v in masses.items():
            m = frame.mask(key)
            _accumulate(acc, m, v, frame)
        _validate(acc, frame)
        self._mass = acc

    @classmethod
    def _from_masks(cls, frame: DFrame, masses: Mapping[int, float]) -> DNumber:
        obj = cls.__new__(cls)
        obj.frame = frame
        obj._mass = dict(masses)
        return obj

    def __getitem__(self, key) -> float:
        return self._mass.get(self.frame.mask(key), 0.0)

    def mass_of_mask(self, mask: int) -> float:
        return self._mass.get(mask, 0.0)

    def items(self):
        """``(mask, mass)`` pairs in canonical order."""
        return [(m, self._mass[m]) for m in self.focal_masks()]

    def focal_masks(self) -> list[int]:
        return sorted(self._mass, key=self.frame.sort_key)

    def focal_sets(self) -> list[DFocalSet]:
        return [DFocalSet(self.frame, m) for m in self.focal_masks()]

    def as_dict(self) -> dict[tuple, float]:
        return {self.frame.labels(m): v for m, v in self.items()}

    def __len__(self):
        return len(self._mass)

    @property
    def q_value(self) -> float:
        xb = self.frame.x_bit
        return math.fsum(v for m, v in self._mass.items() if not m & xb)

    @property
    def is_information_complete(self) -> bool:
        return abs(self.q_value - 1.0) <= MASS_TOL

    def total(self) -> float:
        return math.fsum(self._mass.values())

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        masks = self.focal_masks()
        return (
            np.array(masks, dtype=np.int64),
            np.array([self._mass[m] for m in masks], dtype=np.float64),
        )

    def __eq__(self, other):
        if not isinstance(other, DNumber):
            return NotImplemented
        return self.frame == other.frame and self._mass == other._mass

    def __repr__(self):
        body = "; ".join(f"{self.frame.format(m)}, {v:.4g}" for m, v in self.items())
        return f"DNumber({body})"


def _accumulate(acc: dict, mask: int, v, frame: DFrame) -> None:
    v = float(v)
    if not math.isfinite(v) or v < 0:
        raise NegativeMassError(f"invalid mass {v} on {frame.format(mask)}")
    if mask == 0:
        if v > 0:
            raise EmptyFocalError("the empty set cannot carry mass")
        return
    if v > 0:
        acc[mask] = acc.get(mask, 0.0) + v


def _validate(acc: Mapping[int, float], frame: DFrame) -> None:
    xb = frame.x_bit
    q = math.fsum(v for m, v in acc.items() if not m & xb)
    if q > 1.0 + MASS_TOL:
        raise MassOverflowError(f"masses over Theta sum to {q} > 1")
    total = math.fsum(acc.values())
    if abs(total - 1.0) > MASS_TOL:
        raise MassOverflowError(
            f"total mass is {total}; use augment_with_X for incomplete D numbers"
        )


def augment_with_X(frame: DFrame, partial: Mapping) -> DNumber:
    """Complete a D number by assigning the missing mass to ``{X}``.

    Keys must be subsets of Theta; their masses may sum to less than one.
    """
    acc: dict[int, float] = {}
    for key, v in partial.items():
        m = frame.mask(key)
        if m & frame.x_bit:
            raise FrameMismatchError("partial D numbers are defined over Theta only")
        _accumulate(acc, m, v, frame)
    q = math.fsum(acc.values())
    if q > 1.0 + MASS_TOL:
        raise MassOverflowError(f"masses sum to {q} > 1")
    deficit = 1.0 - q
    if deficit > MASS_TOL:
        acc[frame.x_bit] = deficit
    return DNumber._from_masks(frame, acc)


# ------------------------------------------------------- non-exclusivity


class NonExclusivityMatrix:
    """Pairwise non-exclusive degrees over ``Theta + {X}``.

    ``base[i, j]`` uses the frame's bit order (X last). The matrix is
    symmetric with unit diagonal and entries in [0, 1].
    """

    __slots__ = ("frame", "base")

    def __init__(self, frame: DFrame, base):
        base = np.array(base, dtype=np.float64)
        k = frame.n + 1
        if base.shape != (k, k):
            raise ValueError(f"expected a {k}x{k} matrix, got {base.shape}")
        if not np.all(np.isfinite(base)) or base.min() < 0.0 or base.max() > 1.0:
            raise ValueError("non-exclusive degrees must lie in [0, 1]")
        if not np.array_equal(base, base.T):
            raise ValueError("non-exclusivity matrix must be symmetric")
        if not np.all(np.diag(base) == 1.0):
            raise ValueError("non-exclusivity matrix must have a unit diagonal")
        base.setflags(write=False)
        self.frame = frame
        self.base = base

    @classmethod
    def exclusive(cls, frame: DFrame) -> NonExclusivityMatrix:
        """All distinct elements fully exclusive (the classical DST case)."""
        return cls(frame, np.eye(frame.n + 1))

    @classmethod
    def from_pairs(cls, frame: DFrame, pairs: Mapping[tuple, float]) -> NonExclusivityMatrix:
        base = np.eye(frame.n + 1)
        for (a, b), v in pairs.items():
            i, j = frame.index(a), frame.index(b)
            base[i, j] = base[j, i] = v
        return cls(frame, base)

    def degree(self, b, c) -> float:
        return extend_nonexcl(self, b, c)

    def exclusive_degree(self, b, c) -> float:
        return 1.0 - extend_nonexcl(self, b, c)

    def __eq__(self, other):
        if not isinstance(other, NonExclusivityMatrix):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.base, other.base)

    def __repr__(self):
        return f"NonExclusivityMatrix({self.frame.labels_with_x})"


def _mask_degree(M: NonExclusivityMatrix, b: int, c: int) -> float:
    if b & c:
        return 1.0
    rows = [i for i in range(M.frame.n + 1) if b >> i & 1]
    cols = [j for j in range(M.frame.n + 1) if c >> j & 1]
    return float(M.base[np.ix_(rows, cols)].max())


def extend_nonexcl(M: NonExclusivityMatrix, b, c) -> float:
    """Degree between two subsets of ``Theta + {X}``.

    1 when they overlap (two X-containing sets always overlap), otherwise
    the largest pairwise degree between their elements.
    """
    bm, cm = M.frame.mask(b), M.frame.mask(c)
    if bm == 0 or cm == 0:
        raise EmptyFocalError("non-exclusive degree is undefined for the empty set")
    return _mask_degree(M, bm, cm)


def build_nonexcl_from_scale(scale: Mapping) -> NonExclusivityMatrix:
    """Area-ratio degrees between the fuzzy numbers of a linguistic scale.

    Degrees between any label and X are zero.
    """
    if not scale:
        raise ValueError("scale must not be empty")
    frame = DFrame(tuple(scale))
    tfns: list[TriangularFuzzyNumber] = list(scale.values())
    base = np.eye(frame.n + 1)
    for i in range(frame.n):
        for j in range(i + 1, frame.n):
            base[i, j] = base[j, i] = non_exclusive_degree(tfns[i], tfns[j])
    return NonExclusivityMatrix(frame, base)


# ---------------------------------------------------------- measures


def _check(D: DNumber, M: NonExclusivityMatrix | None = None) -> None:
    if M is not None and M.frame != D.frame:
        raise FrameMismatchError("D number and matrix use different frames")


def d_bel(D: DNumber, a) -> float:
    am = D.frame.mask(a)
    return math.fsum(v for m, v in D.items() if m & ~am == 0)


def d_pl(D: DNumber, M: NonExclusivityMatrix, a) -> float:
    _check(D, M)
    am = D.frame.mask(a)
    if am == 0:
        raise EmptyFocalError("plausibility of the empty set is undefined")
    return math.fsum(_mask_degree(M, m, am) * v for m, v in D.items())


def d_ppt(D: DNumber) -> dict:
    """Pignistic distribution over Theta.

    Focal sets containing X are left out and the rest renormalised by the
    Q value; raises :class:`NoInformationError` when Q is zero.
    """
    xb = D.frame.x_bit
    q = D.q_value
    if q <= 0.0:
        raise NoInformationError("Q(D) = 0: no mass on subsets of Theta")
    out = dict.fromkeys(D.frame.theta, 0.0)
    for m, v in D.items():
        if m & xb:
            continue
        labs = D.frame.labels(m)
        share = v / (len(labs) * q)
        for lab in labs:
            out[lab] += share
    return out


# --------------------------------------------------------- combination


@dataclass(frozen=True)
class ProductCell:
    """One entry of the intersection/union product table."""

    row: int
    col: int
    target: int
    value: float
    conflict: float
    via_union: bool


def ecr_table(D1: DNumber, D2: DNumber, M: NonExclusivityMatrix) -> list[list[ProductCell]]:
    """Rows follow ``D1.focal_masks()``, columns ``D2.focal_masks()``."""
    _check_pair(D1, D2, M)
    rows = []
    for b, v1 in D1.items():
        row = []
        for c, v2 in D2.items():
            p = v1 * v2
            if b & c:
                row.append(ProductCell(b, c, b & c, p, 0.0, False))
            else:
                u = _mask_degree(M, b, c)
                row.append(ProductCell(b, c, b | c, u * p, (1.0 - u) * p, True))
        rows.append(row)
    return rows


def _check_pair(D1: DNumber, D2: DNumber, M: NonExclusivityMatrix) -> None:
    if D1.frame != D2.frame:
        raise FrameMismatchError("D numbers use different frames")
    _check(D1, M)


def _canonical_key(D: DNumber):
    return tuple(sorted(D._mass.items()))


def ecr_combine_with_conflict(
    D1: DNumber, D2: DNumber, M: NonExclusivityMatrix
) -> tuple[DNumber, float]:
    """ECR combination plus its exclusive conflict coefficient ``K_D``."""
    _check_pair(D1, D2, M)
    # fixed operand order makes the rule bit-for-bit commutative
    if _canonical_key(D2) < _canonical_key(D1):
        D1, D2 = D2, D1
    m1, v1 = D1.arrays()
    m2, v2 = D2.arrays()
    dense, conflict = kernels.ecr_accumulate(m1, v1, m2, v2, M.base)
    if conflict >= 1.0 - CONFLICT_TOL:
        raise TotalExclusiveConflictError(f"exclusive conflict K_D = {conflict}")
    dense = dense / (1.0 - conflict)
    return DNumber._from_masks(D1.frame, _prune(dense)), float(conflict)


def _prune(dense: np.ndarray) -> dict[int, float]:
    idx = np.flatnonzero(dense >= PRUNE_TOL)
    kept = dense[idx]
    kept = kept / math.fsum(kept)
    return {int(i): float(v) for i, v in zip(idx, kept)}


def ecr_combine(D1: DNumber, D2: DNumber, M: NonExclusivityMatrix) -> DNumber:
    return ecr_combine_with_conflict(D1, D2, M)[0]


def weighted_average(Ds: Sequence[DNumber], ws: Sequence[float]) -> DNumber:
    if len(Ds) == 0:
        raise EmptyVotesError("need at least one D number")
    if len(Ds) != len(ws):
        raise LengthMismatchError(f"{len(Ds)} D numbers but {len(ws)} weights")
    if any(w < 0 or not math.isfinite(w) for w in ws):
        raise WeightSumInvalidError("weights must be finite and non-negative")
    if abs(math.fsum(ws) - 1.0) > MASS_TOL:
        raise WeightSumInvalidError(f"weights sum to {math.fsum(ws)}, expected 1")
    frame = Ds[0].frame
    if any(D.frame != frame for D in Ds):
        raise FrameMismatchError("D numbers use different frames")
    terms: dict[int, list[float]] = {}
    for D, w in zip(Ds, ws):
        for m, v in D.items():
            terms.setdefault(m, []).append(w * v)
    acc = {m: math.fsum(t) for m, t in terms.items()}
    return DNumber._from_masks(frame, {m: v for m, v in acc.items() if v > 0})


def wac_combine(Ds: Sequence[DNumber], ws: Sequence[float], M: NonExclusivityMatrix) -> DNumber:
    """Weighted average, then ``n - 1`` left-folded ECR steps on copies of it."""
    avg = weighted_average(Ds, ws)
    _check(avg, M)
    out = avg
    for _ in range(len(Ds) - 1):
        out = ecr_combine(out, avg, M)
    return out


def from_linguistic_votes(
    votes: Sequence, frame: DFrame, weights: Sequence[float] | None = None
) -> DNumber:
    """Singleton D number from relative (optionally weighted) vote frequencies."""
    if len(votes) == 0:
        raise EmptyVotesError("no votes given")
    if weights is None:
        weights = [1.0] * len(votes)
    elif len(weights) != len(votes):
        raise LengthMismatchError(f"{len(votes)} votes but {len(weights)} weights")
    total = math.fsum(weights)
    if total <= 0 or any(w < 0 for w in weights):
        raise WeightSumInvalidError("decision-maker weights must be non-negative with a positive sum")
    terms: dict[int, list[float]] = {}
    for lab, w in zip(votes, weights):
        if lab == X or lab not in frame.theta:
            raise UnknownLabelError(f"vote {lab!r} is not a label of {frame.theta}")
        terms.setdefault(1 << frame.theta.index(lab), []).append(w)
    acc = {m: math.fsum(t) / total for m, t in terms.items()}
    return DNumber._from_masks(frame, {m: v for m, v in acc.items() if v > 0})


# -------------------------------------------------------- serialization


def to_records(D: DNumber) -> list[dict]:
    return [{"focal": list(D.frame.labels(m)), "mass": v} for m, v in D.items()]


def from_records(frame: DFrame, records, path: str = "dnumber") -> DNumber:
    """Parse ``[{focal: [...], mass: ...}, ...]``.

    Records without any X-containing focal set are completed with
    :func:`augment_with_X`; otherwise the masses must already sum to one.
    """
    if not isinstance(records, list):
        raise ParseError("expected a list of {focal, mass} records", path)
    masses: dict[int, float] = {}
    for i, rec in enumerate(records):
        where = f"{path}[{i}]"
        if not isinstance(rec, dict) or "focal" not in rec or "mass" not in rec:
            raise ParseError("record needs 'focal' and 'mass'", where)
        focal, mass = rec["focal"], rec["mass"]
        if not isinstance(focal, list) or not focal:
            raise ParseError("focal must be a non-empty label list", f"{where}.focal")
        if isinstance(mass, bool) or not isinstance(mass, (int, float)):
            raise ParseError("mass must be a number", f"{where}.mass")
        try:
            m = frame.mask(focal)
        except FrameMismatchError as exc:
            raise ParseError(str(exc), f"{where}.focal") from exc
        masses[m] = masses.get(m, 0.0) + float(mass)
    try:
        if any(m & frame.x_bit for m in masses):
            acc: dict[int, float] = {}
            for m, v in masses.items():
                _accumulate(acc, m, v, frame)
            _validate(acc, frame)
            return DNumber._from_masks(frame, acc)
        return augment_with_X(frame, {frame.labels(m): v for m, v in masses.items()})
    except (MassOverflowError, NegativeMassError, EmptyFocalError) as exc:
        raise ParseError(str(exc), path) from exc


def matrix_to_dict(M: NonExclusivityMatrix) -> dict:
    return {"labels": list(M.frame.labels_with_x), "matrix": M.base.tolist()}


def matrix_from_dict(doc, frame: DFrame | None = None, path: str = "matrix") -> NonExclusivityMatrix:
    """Parse ``{labels: [...], matrix: [[...], ...]}``.

    ``labels`` may list X anywhere or omit it (X is then exclusive with all
    labels). With ``frame`` given the labels must match its Theta.
    """
    if not isinstance(doc, dict) or "labels" not in doc or "matrix" not in doc:
        raise ParseError("expected {labels, matrix}", path)
    labels, rows = doc["labels"], doc["matrix"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError("labels must be a list of strings", f"{path}.labels")
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate labels", f"{path}.labels")
    theta = tuple(s for s in labels if s != X)
    if frame is None:
        frame = DFrame(theta)
    elif set(theta) != set(frame.theta):
        raise ParseError(f"labels {theta} do not match frame {frame.theta}", f"{path}.labels")
    n = len(labels)
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows", f"{path}.matrix")
    base = np.eye(frame.n + 1)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"expected {n} entries", f"{path}.matrix[{i}]")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError("entry must be a number", f"{path}.matrix[{i}][{j}]")
            base[frame.index(labels[i]), frame.index(labels[j])] = float(v)
    try:
        return NonExclusivityMatrix(frame, base)
    except ValueError as exc:
        raise ParseError(str(exc), f"{path}.matrix") from exc
