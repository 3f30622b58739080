"""Signatures, trigonometric constants and canonical triangle-group generators.

Ramification values are positive integers >= 2 or ``math.inf`` (a puncture).
For a triple (nu1, nu2, nu3) the canonical pair (A, B) has |A| = nu1,
|B| = nu2 and |AB| = nu3. All generator matrices are emitted as the
SL(2, C) lifts with non-positive trace, so tr A = -2 q1, tr B = -2 q2 and
tr AB = -2 q3 with q = cos(pi / nu).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .moebius import (
    INF, IDENTITY, Kind, Moebius, apply, chordal, classify, cross_ratio,
    fixed_points, map_to_standard, psl_distance,
)
from .report import Check, Status, VerificationReport

__all__ = [
    "Signature", "SignatureType", "signature_type", "nu_constants",
    "SignatureConstants", "constants", "l_squared", "TriangleGroupSpec",
    "STANDARD_PARAMS", "standard_generators", "canonical_generators",
    "well_ordered", "well_ordering_status", "is_canonical",
]

STANDARD_PARAMS = (INF, 0j, 1 + 0j)
BORDER_MARGIN = 1e-9


def _parse_nu(token: str):
    token = token.strip().lower()
    if token in ("inf", "infinity", "oo"):
        return math.inf
    value = int(token)
    if value < 2:
        raise ValueError(f"ramification values must be >= 2, got {value}")
    return value


def _check_nu(v):
    if v == math.inf:
        return math.inf
    if isinstance(v, float) and not v.is_integer():
        raise ValueError(f"ramification value {v} is not an integer")
    v = int(v)
    if v < 2:
        raise ValueError(f"ramification values must be >= 2, got {v}")
    return v


@dataclass(frozen=True)
class Signature:
    """(p, n; nu_1, ..., nu_n); ``math.inf`` marks a puncture."""

    p: int
    nu: tuple = ()

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("genus must be non-negative")
        object.__setattr__(self, "nu", tuple(_check_nu(v) for v in self.nu))

    @property
    def n(self) -> int:
        return len(self.nu)

    @property
    def dimension(self) -> int:
        """Complex dimension 3p - 3 + n of the deformation space."""
        return 3 * self.p - 3 + self.n

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Read ``"p,n;v1,...,vn"``, with ``inf`` for a puncture."""
        head, _, tail = text.partition(";")
        parts = [s.strip() for s in head.split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected 'p,n;...' but got {text!r}")
        p, n = int(parts[0]), int(parts[1])
        nu = tuple(_parse_nu(t) for t in tail.split(",")) if tail.strip() else ()
        if len(nu) != n:
            raise ValueError(f"signature declares n={n} but lists {len(nu)} values")
        return cls(p, nu)

    def __str__(self):
        vals = ",".join("inf" if v == math.inf else str(v) for v in self.nu)
        return f"{self.p},{self.n};{vals}"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "nu": [None if v == math.inf else v for v in self.nu],
        }


class SignatureType(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


def _euler_characteristic(sig: Signature) -> Fraction:
    total = Fraction(2 * sig.p - 2 + sig.n)
    for v in sig.nu:
        if v != math.inf:
            total -= Fraction(1, v)
    return total


def signature_type(sig: Signature) -> SignatureType:
    """Sign of 2p - 2 + n - sum(1/nu), computed in exact rationals."""
    chi = _euler_characteristic(sig)
    if chi > 0:
        return SignatureType.HYPERBOLIC
    if chi == 0:
        return SignatureType.PARABOLIC
    return SignatureType.ELLIPTIC


def nu_constants(nu) -> tuple:
    """(q, p) = (cos(pi/nu), sin(pi/nu)), exact at nu in {2, 3, inf}."""
    if nu == math.inf:
        return 1.0, 0.0
    if nu == 2:
        return 0.0, 1.0
    if nu == 3:
        return 0.5, math.sqrt(3) / 2
    return math.cos(math.pi / nu), math.sin(math.pi / nu)


def _triple(nu) -> tuple:
    if isinstance(nu, Signature):
        if nu.p != 0 or nu.n != 3:
            raise ValueError(f"expected a (0,3) signature, got {nu}")
        nu = nu.nu
    nu = tuple(_check_nu(v) for v in nu)
    if len(nu) != 3:
        raise ValueError("a triangle group needs exactly three ramification values")
    return nu


def l_squared(nu) -> float:
    q1, q2, q3 = (nu_constants(v)[0] for v in _triple(nu))
    return q1 * q1 + q2 * q2 + q3 * q3 + 2 * q1 * q2 * q3 - 1


@dataclass(frozen=True)
class SignatureConstants:
    q: tuple
    p: tuple
    l2: float | None = None

    @property
    def l(self) -> float | None:
        if self.l2 is None or self.l2 < 0:
            return None
        return math.sqrt(self.l2)


def constants(sig) -> SignatureConstants:
    nu = sig.nu if isinstance(sig, Signature) else tuple(sig)
    qp = [nu_constants(v) for v in nu]
    l2 = l_squared(nu) if len(nu) == 3 else None
    return SignatureConstants(tuple(x for x, _ in qp), tuple(y for _, y in qp), l2)


@dataclass(frozen=True)
class TriangleGroupSpec:
    """Gamma(nu1, nu2, nu3; a, b, c)."""

    nu: tuple
    params: tuple = STANDARD_PARAMS

    def __post_init__(self):
        object.__setattr__(self, "nu", _triple(self.nu))
        a, b, c = self.params
        map_to_standard(a, b, c)  # raises on repeated parameters

    @property
    def signature(self) -> Signature:
        return Signature(0, self.nu)

    def generators(self) -> tuple:
        return canonical_generators(self.nu, self.params)


def _is_cusp_pair(nu) -> bool:
    return nu[0] == math.inf and nu[1] == 2 and nu[2] == 2


def _case_one(q1: float, q2: float) -> tuple:
    # nu1 = inf; q1, q2 belong to the two other slots
    A = Moebius(-1, -2, 0, -1)
    s = q1 + q2
    B = Moebius(-q1, (q1 * q1 - 1) / s, s, -q1)
    return A, B


def _case_two(nu) -> tuple:
    (q1, p1), (q2, p2), (q3, _) = (nu_constants(v) for v in nu)
    l = math.sqrt(l_squared(nu))
    kp1 = (q2 + q1 * q3 + q1 * l) / l
    p1_k = p1 * p1 * l / (q2 + q1 * q3 + q1 * l)
    u = q1 * q2 + q3 + l
    A = Moebius(-q1, -kp1, p1_k, -q1)
    B = Moebius(-q2, -kp1 * p2 * p2 / u, u / kp1, -q2)
    return A, B


def _upper_fixed_point_height(m: Moebius) -> float:
    # fixed points of these elliptics lie on a vertical line; return max Im
    pts = [z for z in fixed_points(m) if z is not INF]
    return max(z.imag for z in pts) if pts else 0.0


def _rotate_second(nu) -> tuple:
    # nu = (n1, inf, n3) with n1 finite: (B, (AB)^-1) is canonical for
    # (inf, n3, n1); move it back with T(z) = (z - x)/z.
    n1, _, n3 = nu
    A1, B1 = _case_one(nu_constants(n3)[0], nu_constants(n1)[0])
    sigma = _upper_fixed_point_height(B1)
    x = 1 + sigma * sigma
    T = Moebius(1, -x, 1, 0)
    Ti = T.inverse()
    B = Ti @ A1 @ T
    A = Ti @ (A1 @ B1).inverse() @ T
    return A, B


def _rotate_third(nu) -> tuple:
    # nu = (n1, n2, inf) with n1, n2 finite: ((AB)^-1, A) is canonical for
    # (inf, n1, n2); S sends that frame back to (inf, 0, 1).
    n1, n2, _ = nu
    A1, B1 = _case_one(nu_constants(n1)[0], nu_constants(n2)[0])
    sigma = _upper_fixed_point_height(B1)
    s = _upper_fixed_point_height(A1 @ B1)
    w = sigma * sigma - s * s - 1
    m = (-w - math.sqrt(w * w + 4 * sigma * sigma)) / 2
    r = (m * m + sigma * sigma) / m
    S = Moebius(1, r - m, 1, -m)
    Si = S.inverse()
    A = S @ B1 @ Si
    B = S @ (A1 @ B1).inverse() @ Si
    return A, B


def standard_generators(nu) -> tuple:
    """Canonical pair for the parameters (INF, 0, 1)."""
    nu = _triple(nu)
    if _is_cusp_pair(nu):
        return Moebius(1, 2, 0, 1), Moebius(-1j, 0, 0, 1j)
    kind = signature_type(Signature(0, nu))
    if kind is not SignatureType.HYPERBOLIC:
        raise ValueError(f"unsupported {kind.value} signature (0,3;{nu})")
    n1, n2, n3 = nu
    if n1 == math.inf:
        return _case_one(nu_constants(n2)[0], nu_constants(n3)[0])
    if n2 == math.inf:
        return _rotate_second(nu)
    if n3 == math.inf:
        return _rotate_third(nu)
    return _case_two(nu)


def canonical_generators(nu, params=STANDARD_PARAMS) -> tuple:
    """Canonical generators (A, B) of Gamma(nu1, nu2, nu3; a, b, c).

    Works for every hyperbolic triple and for (inf, 2, 2). For general
    parameters the standard pair is conjugated by T^-1 with T the map taking
    (a, b, c) to (INF, 0, 1).
    """
    A, B = standard_generators(nu)
    a, b, c = params
    T = map_to_standard(a, b, c)
    if psl_distance(T, IDENTITY) == 0:
        return A, B
    Ti = T.inverse()
    return Ti @ A @ T, Ti @ B @ T


def well_ordering_status(z1, z2, a, b, c, tol: float = 1e-9) -> Status:
    """Three-valued form of ``well_ordered``; BORDERLINE when cr is within 1e-9 of 1."""
    map_to_standard(a, b, c)
    if (z1 is INF and z2 is INF) or (z1 is not INF and z2 is not INF and z1 == z2):
        raise ValueError("z1 and z2 must be distinct")
    if chordal(z1, a) <= tol or chordal(z2, b) <= tol:
        return Status.PASS
    if chordal(z1, z2) <= tol or chordal(z2, a) <= tol:
        return Status.FAIL
    cr = cross_ratio(a, z1, z2, b)
    if cr is INF or abs(cr.imag) > tol:
        return Status.FAIL
    if cr.real > 1 + BORDER_MARGIN:
        return Status.PASS
    if cr.real >= 1 - BORDER_MARGIN:
        return Status.BORDERLINE
    return Status.FAIL


def well_ordered(z1, z2, a, b, c, tol: float = 1e-9) -> bool:
    """True iff z1 = a, or z2 = b, or cr(a, z1, z2, b) is real and > 1."""
    return well_ordering_status(z1, z2, a, b, c, tol) is Status.PASS


def _order_check(name: str, m: Moebius, nu, tol: float) -> Check:
    cls = classify(m, tol)
    if nu == math.inf:
        ok = cls.kind is Kind.PARABOLIC
        res = abs(m.trace_squared - 4)
        return Check(f"order({name})", Status.PASS if ok else Status.FAIL, res,
                     f"expected parabolic, got {cls.kind.value}")
    ok = cls.kind is Kind.ELLIPTIC and cls.order == nu
    abs_tr = abs(m.trace)
    res = min(abs(abs_tr - 2 * math.cos(k * math.pi / nu))
              for k in range(1, nu // 2 + 1) if math.gcd(k, nu) == 1)
    return Check(f"order({name})", Status.PASS if ok else Status.FAIL, res,
                 f"expected order {nu}, got {cls.kind.value} order {cls.order}")


def _real_part_check(name: str, m: Moebius, target: float, tol: float) -> Check:
    try:
        pts = [z for z in fixed_points(m, tol) if z is not INF]
    except ValueError:
        return Check(f"fixed_points({name})", Status.FAIL, 0.0, "identity")
    res = max((abs(z.real - target) for z in pts), default=0.0)
    status = Status.PASS if res <= tol else Status.FAIL
    return Check(f"fixed_points({name})", status, res, f"Re = {target} in standard position")


def _delta_fixed_point(m: Moebius, tol: float, avoid=None):
    # the fixed point on the closed upper half-plane, INF preferred
    pts = fixed_points(m, tol)
    if avoid is not None and len(pts) == 2:
        pts = [z for z in pts if chordal(z, avoid) > tol] or pts
    if INF in pts:
        return INF
    best = max(pts, key=lambda z: z.imag)
    return best if best.imag >= -tol else None


def _negative_lifts(m: Moebius, tol: float) -> list:
    if abs(m.trace) <= tol:
        return [m, -m]
    return [m if m.trace.real <= 0 else -m]


def is_canonical(A: Moebius, B: Moebius, spec, tol: float = 1e-9) -> VerificationReport:
    """Audit (A, B) against the canonical-generator definition.

    ``spec`` is a TriangleGroupSpec or a ramification triple (parameters
    then default to (INF, 0, 1)). One entry per clause: orders, fixed-point
    loci, well ordering, geometric generators; plus the negative-trace lift
    convention and agreement with ``canonical_generators``.
    """
    if not isinstance(spec, TriangleGroupSpec):
        spec = TriangleGroupSpec(spec)
    nu = spec.nu
    T = map_to_standard(*spec.params)
    Ti = T.inverse()
    A0, B0 = T @ A @ Ti, T @ B @ Ti
    AB0 = A0 @ B0
    checks = [
        _order_check("A", A, nu[0], tol),
        _order_check("B", B, nu[1], tol),
        _order_check("AB", A @ B, nu[2], tol),
    ]
    loci = [
        _real_part_check("A", A0, 0.0, tol),
        _real_part_check("B", B0, 0.0, tol),
        _real_part_check("AB", AB0, 1.0, tol),
    ]
    checks += loci

    z1 = _delta_fixed_point(A0, tol) if not psl_distance(A0, IDENTITY) <= tol else None
    z2 = _delta_fixed_point(B0, tol, z1) if not psl_distance(B0, IDENTITY) <= tol else None
    if z1 is None or z2 is None:
        checks.append(Check("well_ordered", Status.FAIL, 0.0, "no fixed point on the closed disc"))
    elif not (loci[0].passed and loci[1].passed):
        checks.append(Check("well_ordered", Status.FAIL, 0.0, "fixed points off the circle L"))
    elif chordal(z1, z2) <= tol:
        checks.append(Check("well_ordered", Status.FAIL, 0.0, "z1 = z2"))
    else:
        status = well_ordering_status(z1, z2, INF, 0j, 1 + 0j, tol)
        checks.append(Check("well_ordered", status, 0.0, f"z1={z1}, z2={z2}"))

    geo_res, geo_ok, notes = 0.0, True, []
    for name, m, v in (("A", A, nu[0]), ("B", B, nu[1])):
        if v == math.inf:
            notes.append(f"{name} parabolic")
            continue
        r = abs(abs(m.trace) - 2 * math.cos(math.pi / v))
        geo_res = max(geo_res, r)
        geo_ok = geo_ok and r <= tol
    checks.append(Check("geometric", Status.PASS if geo_ok else Status.FAIL, geo_res,
                        "; ".join(notes) or "|tr| = 2cos(pi/nu)"))

    best = math.inf
    for At in _negative_lifts(A, tol):
        for Bt in _negative_lifts(B, tol):
            t = (At @ Bt).trace
            best = min(best, max(t.real, 0.0) + abs(t.imag))
    checks.append(Check("negative_trace_lift", Status.PASS if best <= tol else Status.FAIL,
                        best, "tr A, tr B <= 0 forces tr AB <= 0"))

    try:
        Ac, Bc = canonical_generators(nu, spec.params)
        res = max(psl_distance(A, Ac), psl_distance(B, Bc))
        checks.append(Check("uniqueness", Status.PASS if res <= 1e3 * tol else Status.FAIL,
                            res, "agrees with the constructed canonical pair"))
    except ValueError as exc:
        checks.append(Check("uniqueness", Status.UNCERTIFIED, 0.0, str(exc)))
    return VerificationReport(tuple(checks))
