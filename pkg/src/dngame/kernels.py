"""Numeric inner loops.

Each kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version. The module-level names (``ecr_accumulate``, ``pure_nash_mask``)
point at the numba versions unless ``DNGAME_DISABLE_NUMBA`` is set to a
truthy value or numba cannot be imported. Both variants stay importable
under explicit names so tests and ``benchmarks/`` can compare them.

Focal sets are bitmasks over the frame labels; bit ``k`` (the last) is the
incompleteness symbol X in the D-number layer, but the kernels do not care.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("DNGAME_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA and not NUMBA_DISABLED else "numpy"


# ---------------------------------------------------------------- ECR table


@njit(cache=True)
def ecr_accumulate_numba(masks1, mass1, masks2, mass2, base):
    k = base.shape[0]
    n1 = masks1.shape[0]
    n2 = masks2.shape[0]
    out = np.zeros(1 << k)
    # profile[i, y] = max over x in B_i of base[x, y]
    profile = np.zeros((n1, k))
    for i in range(n1):
        b = masks1[i]
        for x in range(k):
            if (b >> x) & 1:
                for y in range(k):
                    if base[x, y] > profile[i, y]:
                        profile[i, y] = base[x, y]
    conflict = 0.0
    for i in range(n1):
        b = masks1[i]
        for j in range(n2):
            c = masks2[j]
            p = mass1[i] * mass2[j]
            inter = b & c
            if inter != 0:
                out[inter] += p
            else:
                u = 0.0
                for y in range(k):
                    if (c >> y) & 1 and profile[i, y] > u:
                        u = profile[i, y]
                out[b | c] += u * p
                conflict += (1.0 - u) * p
    return out, conflict


def _membership_bits(masks, k):
    return ((masks[:, None] >> np.arange(k, dtype=np.int64)) & 1).astype(bool)


def pair_degrees_numpy(masks1, masks2, base):
    """Max-extended non-exclusivity degree for every (B, C) pair, ignoring overlap."""
    k = base.shape[0]
    bits1 = _membership_bits(masks1, k)
    bits2 = _membership_bits(masks2, k)
    profile = np.where(bits1[:, :, None], base[None, :, :], 0.0).max(axis=1)
    return np.where(bits2[None, :, :], profile[:, None, :], 0.0).max(axis=2)


def ecr_accumulate_numpy(masks1, mass1, masks2, mass2, base):
    k = base.shape[0]
    out = np.zeros(1 << k)
    prod = np.outer(mass1, mass2)
    inter = masks1[:, None] & masks2[None, :]
    union = masks1[:, None] | masks2[None, :]
    disjoint = inter == 0
    u = np.where(disjoint, pair_degrees_numpy(masks1, masks2, base), 1.0)
    target = np.where(disjoint, union, inter).ravel()
    np.add.at(out, target, (u * prod).ravel())
    conflict = float(((1.0 - u) * prod)[disjoint].sum())
    return out, conflict


# ---------------------------------------------------------- pure equilibria


@njit(cache=True)
def pure_nash_mask_numba(u1, u2):
    p, q = u1.shape
    col_best = np.empty(q)
    for j in range(q):
        best = u1[0, j]
        for i in range(1, p):
            if u1[i, j] > best:
                best = u1[i, j]
        col_best[j] = best
    out = np.zeros((p, q), dtype=np.bool_)
    for i in range(p):
        best = u2[i, 0]
        for j in range(1, q):
            if u2[i, j] > best:
                best = u2[i, j]
        for j in range(q):
            out[i, j] = u1[i, j] >= col_best[j] and u2[i, j] >= best
    return out


def pure_nash_mask_numpy(u1, u2):
    return (u1 >= u1.max(axis=0, keepdims=True)) & (u2 >= u2.max(axis=1, keepdims=True))


if BACKEND == "numba":
    ecr_accumulate = ecr_accumulate_numba
    pure_nash_mask = pure_nash_mask_numba
else:
    ecr_accumulate = ecr_accumulate_numpy
    pure_nash_mask = pure_nash_mask_numpy
