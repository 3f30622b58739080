"""Moebius transformations of the Riemann sphere as elements of PSL(2, C).

Matrices are stored with determinant 1. A map and its negative are the same
transformation; every comparison here tries both signs.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "INF", "ExtComplex", "is_inf", "chordal", "points_close",
    "Moebius", "IDENTITY", "translation", "compose", "apply", "inverse",
    "cross_ratio", "map_to_standard", "standardizer", "fixed_points", "Kind",
    "Classification", "classify", "parabolic_sqrt", "psl_eq", "psl_distance",
]

ORDER_CAP = 10**6


class _Infinity:
    """The point at infinity. There is exactly one instance, ``INF``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtComplex = Union[complex, _Infinity]


def is_inf(z) -> bool:
    return z is INF


def _as_point(z) -> ExtComplex:
    if z is INF:
        return INF
    z = complex(z)
    if math.isnan(z.real) or math.isnan(z.imag):
        raise ValueError("NaN is not a point of the sphere")
    if math.isinf(z.real) or math.isinf(z.imag):
        return INF
    return z


def chordal(z: ExtComplex, w: ExtComplex) -> float:
    """Chordal distance on the unit-diameter-2 Riemann sphere."""
    if z is INF and w is INF:
        return 0.0
    if z is INF:
        z, w = w, z
    if w is INF:
        return 2.0 / math.hypot(1.0, abs(z))
    # hypot and staged division avoid overflow for points near infinity
    return 2.0 * (abs(z - w) / math.hypot(1.0, abs(z))) / math.hypot(1.0, abs(w))


def points_close(z: ExtComplex, w: ExtComplex, tol: float = 1e-9) -> bool:
    return chordal(z, w) <= tol


@dataclass(frozen=True)
class Moebius:
    """z -> (a z + b) / (c z + d), stored with ad - bc = 1.

    Any nonsingular matrix is accepted and rescaled by a square root of its
    determinant. Matrices that already have determinant 1 are kept as given,
    so the trace sign of a chosen SL(2, C) lift survives construction.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0:
            raise ValueError("singular matrix does not define a Moebius map")
        if det != 1:
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_matrix(cls, m) -> "Moebius":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def matrix(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        """Trace of the stored lift. Only defined up to sign on PSL."""
        return self.a + self.d

    @property
    def trace_squared(self) -> complex:
        return self.trace ** 2

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return compose(self, other)

    def __call__(self, z):
        return apply(self, z)

    def __neg__(self) -> "Moebius":
        return Moebius(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> "Moebius":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = IDENTITY, self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def inverse(self) -> "Moebius":
        return inverse(self)

    def normalized(self) -> "Moebius":
        """Sign-normalized lift used for printing and serialization.

        The first entry in reading order with modulus above 1e-12 gets its
        argument in (-pi/2, pi/2].
        """
        for x in self.entries():
            if abs(x) > 1e-12:
                arg = cmath.phase(x)
                if -math.pi / 2 < arg <= math.pi / 2:
                    return self
                return -self
        return self

    def __str__(self):
        m = self.normalized()
        return "[[{}, {}], [{}, {}]]".format(*(_fmt(x) for x in m.entries()))


def _fmt(x: complex) -> str:
    if x.imag == 0:
        return f"{x.real:.6g}"
    return f"{x.real:.6g}{x.imag:+.6g}i"


IDENTITY = Moebius(1, 0, 0, 1)


def translation(t: complex) -> Moebius:
    return Moebius(1, t, 0, 1)


def compose(m: Moebius, n: Moebius) -> Moebius:
    """Matrix product: apply n first, then m."""
    return Moebius(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def apply(m: Moebius, z) -> ExtComplex:
    z = _as_point(z)
    if z is INF:
        if m.c == 0:
            return INF
        return m.a / m.c
    den = m.c * z + m.d
    if den == 0:
        return INF
    return (m.a * z + m.b) / den


def inverse(m: Moebius) -> Moebius:
    return Moebius(m.d, -m.b, -m.c, m.a)


def psl_distance(m: Moebius, n: Moebius) -> float:
    """min(|M - N|, |M + N|) in the entrywise max norm."""
    minus = max(abs(x - y) for x, y in zip(m.entries(), n.entries()))
    plus = max(abs(x + y) for x, y in zip(m.entries(), n.entries()))
    return min(minus, plus)


def psl_eq(m: Moebius, n: Moebius, tol: float = 1e-9) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return psl_distance(m, n) <= tol


def map_to_standard(a, b, c) -> Moebius:
    """The unique map sending a, b, c to INF, 0, 1."""
    a, b, c = _as_point(a), _as_point(b), _as_point(c)
    if a == b or b == c or a == c:
        raise ValueError("points must be pairwise distinct")
    if a is INF:
        return Moebius(1, -b, 0, c - b)
    if b is INF:
        return Moebius(0, c - a, 1, -a)
    if c is INF:
        return Moebius(1, -b, 1, -a)
    return Moebius(c - a, -b * (c - a), c - b, -a * (c - b))


def cross_ratio(a, b, c, z) -> ExtComplex:
    """((z - b)(c - a)) / ((z - a)(c - b)), normalized so cr(INF, 0, 1, z) = z."""
    return apply(map_to_standard(a, b, c), z)


def standardizer(x: Moebius, y: Moebius, tol: float = 1e-9) -> Moebius:
    """T with T x T^-1 = (z -> z + 2) and T y T^-1 having equal diagonal entries.

    ``x`` must be parabolic and must not share its fixed point with ``y``.
    Such a T is unique: it is the frame in which a canonical pair (x, y)
    for (INF, 0, 1) takes its standard form.
    """
    if classify(x, tol).kind is not Kind.PARABOLIC:
        raise ValueError("the first element must be parabolic")
    p = fixed_points(x, tol)[0]
    R = IDENTITY if p is INF else Moebius(0, 1, -1, p)
    x1 = R @ x @ R.inverse()
    t = x1.b / x1.d
    k = cmath.sqrt(2 / t)
    S = Moebius(k, 0, 0, 1 / k) @ R
    y1 = S @ y @ S.inverse()
    if _small(y1.c, y1):
        raise ValueError("the two elements share a fixed point")
    return translation((y1.d - y1.a) / (2 * y1.c)) @ S


def _small(x: complex, m: Moebius) -> bool:
    scale = max(1.0, max(abs(e) for e in m.entries()))
    return abs(x) <= 1e-13 * scale


def _point_key(z):
    if z is INF:
        return (1, 0.0, 0.0)
    return (0, z.real, z.imag)


def fixed_points(m: Moebius, tol: float = 1e-9) -> list:
    """Fixed points, sorted by (re, im) with INF last.

    Parabolic maps (trace squared within ``tol`` of 4) return one point.
    """
    if psl_eq(m, IDENTITY, tol):
        raise ValueError("the identity fixes every point")
    a, b, c, d = m.entries()
    tr2 = m.trace_squared
    parabolic = abs(tr2 - 4) <= tol
    if _small(c, m):
        if parabolic:
            return [INF]
        pts = [INF, b / (d - a)]
    elif parabolic:
        pts = [(a - d) / (2 * c)]
    else:
        # roots of c z^2 + (d - a) z - b; pick the sign that avoids cancellation
        root = cmath.sqrt((a - d) ** 2 + 4 * b * c)
        s = a - d + root if abs(a - d + root) >= abs(a - d - root) else a - d - root
        pts = [s / (2 * c), -2 * b / s]
    return sorted(pts, key=_point_key)


class Kind(enum.Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class Classification:
    """Conjugacy type. ``order`` is None for elliptics of infinite order."""

    kind: Kind
    order: int | None = None
    geometric: bool = False

    @property
    def is_parabolic(self) -> bool:
        return self.kind is Kind.PARABOLIC

    @property
    def is_elliptic(self) -> bool:
        return self.kind is Kind.ELLIPTIC


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    # smallest-denominator rational in [lo, hi], 0 <= lo <= hi
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    rest = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def rotation_fraction(abs_trace: float, tol: float = 1e-9) -> Fraction | None:
    """k/q in (0, 1/2] with |trace| = 2 cos(k pi / q) within tol, smallest q.

    Returns None when the smallest admissible denominator exceeds 10**6.
    """
    lo_x = max(abs_trace - tol, 0.0)
    hi_x = min(abs_trace + tol, 2.0)
    theta_lo = math.acos(hi_x / 2) / math.pi
    theta_hi = math.acos(lo_x / 2) / math.pi
    theta_lo = max(theta_lo, 1e-12)
    if theta_lo > theta_hi:
        return None
    frac = _simplest_between(Fraction(theta_lo), Fraction(theta_hi))
    if frac.denominator > ORDER_CAP:
        return None
    return frac


def classify(m: Moebius, tol: float = 1e-9) -> Classification:
    tr2 = m.trace_squared
    if abs(tr2 - 4) <= tol:
        if psl_eq(m, IDENTITY, tol):
            return Classification(Kind.IDENTITY)
        return Classification(Kind.PARABOLIC)
    if abs(tr2.imag) <= tol and -tol <= tr2.real < 4:
        abs_trace = math.sqrt(max(tr2.real, 0.0))
        frac = rotation_fraction(abs_trace, tol)
        if frac is None:
            return Classification(Kind.ELLIPTIC)
        return Classification(Kind.ELLIPTIC, frac.denominator, frac.numerator == 1)
    return Classification(Kind.LOXODROMIC)


def parabolic_sqrt(m: Moebius, tol: float = 1e-9) -> Moebius:
    """The unique parabolic square root of a parabolic map."""
    if classify(m, tol).kind is not Kind.PARABOLIC:
        raise ValueError("square roots are only unique for parabolic maps")
    lift = m if m.trace.real >= 0 else -m
    # lift = I + N with N nilpotent, so (I + N/2)^2 = lift
    return Moebius(
        1 + (lift.a - 1) / 2, lift.b / 2, lift.c / 2, 1 + (lift.d - 1) / 2
    )
