"""Relation checks, necessary discreteness probes and limit-set sampling.

A probe that fails proves the group is not discrete (or is elementary). A
probe that passes only means no obstruction was found; nothing here
certifies discreteness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .bgroups import MarkedBGroup
from .moebius import (
    IDENTITY, INF, Kind, Moebius, classify, fixed_points, psl_distance,
)
from .report import Check, Status, VerificationReport

__all__ = [
    "VerificationReport", "Check", "Status", "check_relations", "check_group",
    "shimizu_probe", "jorgensen_probe", "PointCloud", "limit_set_sample",
    "circle_fit_residual",
]

NO_OBSTRUCTION = "no obstruction found"
DEDUP_RESOLUTION = 1e-6


def check_relations(g: MarkedBGroup, tol: float = 1e-8) -> VerificationReport:
    """One entry per relation; residual is the PSL distance to the identity."""
    checks = []
    for w in g.relations:
        res = psl_distance(g.evaluate(w), IDENTITY)
        checks.append(Check(f"relation {w}", Status.PASS if res <= tol else Status.FAIL, res))
    return VerificationReport(tuple(checks))


def check_group(g: MarkedBGroup, tol: float = 1e-8) -> VerificationReport:
    """Relations, torsion orders, accidental parabolics and certification flags."""
    checks = list(check_relations(g, tol).checks)
    for w, order in g.torsion:
        m = g.evaluate(w)
        cls = classify(m, 1e-9)
        ok = cls.kind is Kind.ELLIPTIC and cls.order == order
        res = abs(abs(m.trace) - 2 * math.cos(math.pi * _rotation(m, order)))
        checks.append(Check(f"order({w}) = {order}", Status.PASS if ok else Status.FAIL, res,
                            f"classified {cls.kind.value} order {cls.order}"))
    for name in g.accidental_parabolics:
        m = g.element(name)
        res = abs(m.trace_squared - 4)
        ok = classify(m, 1e-9).kind is Kind.PARABOLIC
        checks.append(Check(f"parabolic({name})", Status.PASS if ok else Status.FAIL, res))
    for text in g.warnings:
        checks.append(Check("certification", Status.UNCERTIFIED, 0.0, text))
    return VerificationReport(tuple(checks))


def _rotation(m: Moebius, order: int) -> float:
    # k/order closest to the rotation angle of m, as a fraction of pi
    x = min(abs(m.trace) / 2, 1.0)
    theta = math.acos(x) / math.pi
    k = max(1, round(theta * order))
    return k / order


def _to_unit_translation(a: Moebius, tol: float) -> Moebius:
    """T with T a T^-1 = (z -> z + 1) for parabolic a."""
    if classify(a, tol).kind is not Kind.PARABOLIC:
        raise ValueError("the first element must be parabolic")
    p = fixed_points(a, tol)[0]
    R = IDENTITY if p is INF else Moebius(0, 1, -1, p)
    a1 = R @ a @ R.inverse()
    t = a1.b / a1.d
    k = (1 / t) ** 0.5
    return Moebius(k, 0, 0, 1 / k) @ R


def shimizu_probe(a: Moebius, b: Moebius, tol: float = 1e-9) -> VerificationReport:
    """With a conjugated to z -> z + 1, a discrete group needs c = 0 or |c| >= 1 in b."""
    T = _to_unit_translation(a, tol)
    c = (T @ b @ T.inverse()).c
    size = abs(c)
    if size <= 1e-12 * max(1.0, *(abs(x) for x in b.entries())):
        return VerificationReport((Check("shimizu", Status.PASS, 0.0, f"c = 0; {NO_OBSTRUCTION}"),))
    if size >= 1 - tol:
        return VerificationReport((Check("shimizu", Status.PASS, 0.0, f"|c| = {size:.6g}; {NO_OBSTRUCTION}"),))
    return VerificationReport((Check("shimizu", Status.FAIL, 1 - size,
                                     f"|c| = {size:.6g} < 1: not discrete"),))


def jorgensen_probe(a: Moebius, b: Moebius, tol: float = 1e-9) -> VerificationReport:
    """|tr^2 a - 4| + |tr [a, b] - 2| >= 1 for discrete non-elementary groups."""
    comm = a @ b @ a.inverse() @ b.inverse()
    value = abs(a.trace_squared - 4) + abs(comm.trace - 2)
    if value >= 1 - tol:
        return VerificationReport((Check("jorgensen", Status.PASS, 0.0,
                                         f"value {value:.6g}; {NO_OBSTRUCTION}"),))
    return VerificationReport((Check("jorgensen", Status.FAIL, 1 - value,
                                     f"value {value:.6g} < 1: not discrete or elementary"),))


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    label: str = ""
    max_len: int = 0
    generator_count: int = 0
    truncated: bool = False

    def __len__(self):
        return len(self.points)


def _letters(gens) -> tuple:
    rows, inverse_of = [], []
    for m in gens:
        i = len(rows)
        rows.append(m.entries())
        rows.append(m.inverse().entries())
        inverse_of += [i + 1, i]
    return (np.array(rows, dtype=np.complex128).reshape(-1, 4),
            np.array(inverse_of, dtype=np.int64))


def limit_set_sample(g, max_len: int, cap: int = 200000, tol: float = 1e-9,
                     backend: str | None = None) -> PointCloud:
    """Fixed points of reduced words up to ``max_len``, in shortlex order.

    ``g`` is a MarkedBGroup or a sequence of Moebius generators. Letters are
    the generators and their inverses in that order; only immediate
    cancellations are removed. Elliptic and identity words contribute
    nothing. Points are deduplicated on a 1e-6 grid and at most ``cap`` are
    kept; enumeration stops once the cap is reached.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if isinstance(g, MarkedBGroup):
        gens, label = g.generator_matrices(), g.partition_label or str(g.signature)
    else:
        gens, label = list(g), ""
    kern = _backend.get_kernels(backend)
    letters, inverse_of = _letters(gens)
    mats = np.array([[1, 0, 0, 1]], dtype=np.complex128)
    last = np.array([-1], dtype=np.int64)
    seen = np.empty(0, dtype=np.complex128)
    kept: list = []
    count = 0
    truncated = False
    budget = max(64, 4 * cap)
    for _ in range(max_len):
        mats, last = kern.extend_words(mats, last, letters, inverse_of, budget)
        if len(last) == 0:
            break
        pts = kern.limit_fixed_points(mats, tol)
        pts = pts[np.isfinite(pts)]
        # grid keys as exact complex integers; first occurrence wins
        keys = np.round(pts.real / DEDUP_RESOLUTION) + 1j * np.round(pts.imag / DEDUP_RESOLUTION)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        keys, pts = keys[first], pts[first]
        fresh = ~np.isin(keys, seen)
        keys, pts = keys[fresh], pts[fresh]
        if count + len(pts) >= cap:
            keys, pts = keys[:cap - count], pts[:cap - count]
            truncated = True
        seen = np.concatenate([seen, keys])
        kept.append(pts)
        count += len(pts)
        if truncated:
            break
    points = np.concatenate(kept) if kept else np.empty(0, dtype=np.complex128)
    return PointCloud(points, label, max_len, len(gens), truncated)


def circle_fit_residual(points) -> float:
    """RMS distance from the best generalized circle (circle or line).

    Fits A(x^2 + y^2) + Dx + Ey + F = 0 by the smallest singular vector of
    the design matrix, with rows scaled so the algebraic error matches the
    geometric one to first order.
    """
    pts = np.asarray(points, dtype=np.complex128)
    if len(pts) < 4:
        return 0.0
    x, y = pts.real, pts.imag
    rows = np.stack([x * x + y * y, x, y, np.ones_like(x)], axis=1)
    rows /= np.linalg.norm(rows, axis=1, keepdims=True)
    _, _, vt = np.linalg.svd(rows, full_matrices=False)
    A, D, E, F = vt[-1]
    if abs(A) < 1e-12 * max(abs(D), abs(E), 1e-300):
        dist = np.abs(D * x + E * y + F) / math.hypot(D, E)
    else:
        cx, cy = -D / (2 * A), -E / (2 * A)
        r2 = cx * cx + cy * cy - F / A
        r = math.sqrt(max(r2, 0.0))
        dist = np.abs(np.hypot(x - cx, y - cy) - r)
    return float(np.sqrt(np.mean(dist * dist)))
