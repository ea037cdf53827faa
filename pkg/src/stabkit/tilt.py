"""Character-level tilt stability on (P^3, C_0).

All charges are built from the modified character ch * (1 - 3/8 h^2),
twisted by e^{-beta h}.  Only degrees 0..2 matter, and the triple
(ch0, ch1, ch2) of that twisted modified character is called the
*truncated character* at beta.

Besides the (alpha^2, beta) half-plane we use the chart
xi = beta + 5/4, eta = (alpha^2 + xi^2) / 2, where the parameter space is
the region above the parabola Gamma: eta = xi^2 / 2.  A class E with
ch0 != 0 sits at the point v(E) = (ch1/ch0, ch2/ch0) of its truncated
character at beta = -5/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chow import CL3, ChernVector
from .numerics import Angle, HSeries, Phase, Q, QuadExt, angle_cmp, hs_exp, sgn

BETA0 = Fraction(-5, 4)
INF = math.inf


class PhaseUndefined(ValueError):
    """Raised for raw characters whose charge lies on the positive real axis."""


@dataclass(frozen=True)
class TiltParam:
    alpha_sq: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = Q(self.alpha_sq), Q(self.beta)
        if a <= 0:
            raise ValueError("alpha^2 must be positive")
        object.__setattr__(self, "alpha_sq", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class XiEta:
    xi: Fraction
    eta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "xi", Q(self.xi))
        object.__setattr__(self, "eta", Q(self.eta))

    def above_gamma(self) -> bool:
        return self.eta > self.xi * self.xi / 2


@dataclass(frozen=True)
class Trunc:
    """Truncated modified twisted character (ch0, ch1, ch2)."""

    r: Fraction
    x: Fraction
    y: Fraction

    def __post_init__(self):
        for f in ("r", "x", "y"):
            object.__setattr__(self, f, Q(getattr(self, f)))

    def __add__(self, o):
        return Trunc(self.r + o.r, self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        return Trunc(self.r - o.r, self.x - o.x, self.y - o.y)

    def __neg__(self):
        return Trunc(-self.r, -self.x, -self.y)

    def __mul__(self, k):
        return Trunc(self.r * k, self.x * k, self.y * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.r == 0 and self.x == 0 and self.y == 0

    def as_tuple(self):
        return (self.r, self.x, self.y)

    def retwist(self, dbeta) -> "Trunc":
        """Truncated character at beta + dbeta given this one at beta."""
        d = Q(dbeta)
        return Trunc(self.r, self.x - d * self.r, self.y - d * self.x + d * d / 2 * self.r)


# ---------------------------------------------------------------------------
# characters


def ch_beta(v: ChernVector, beta) -> ChernVector:
    return v * hs_exp(-Q(beta), v.variety.dim)


def ch_mod(v: ChernVector) -> ChernVector:
    corr = HSeries([1, 0, Fraction(-3, 8)], v.variety.dim)
    return v * corr


def tensor_c1_ch(v: ChernVector) -> ChernVector:
    """ch(E tensor C_1) = e^{h/2} ch(E)."""
    return v * hs_exp(Fraction(1, 2), v.variety.dim)


def trunc(v, beta=BETA0) -> Trunc:
    """Truncated character of a ChernVector (or pass a Trunc through)."""
    if isinstance(v, Trunc):
        return v
    if hasattr(v, "ch") and callable(v.ch):
        v = v.ch()
    w = ch_beta(ch_mod(v), beta)
    return Trunc(w[0], w[1], w[2])


def from_trunc(t: Trunc, beta=BETA0, variety=CL3) -> ChernVector:
    """A character (with ch3 = 0 at beta) realising a truncated character."""
    s = HSeries([t.r, t.x, t.y], variety.dim) * hs_exp(Q(beta), variety.dim)
    s = s / HSeries([1, 0, Fraction(-3, 8)], variety.dim)
    coeffs = list(s.coeffs[:3]) + [0] * (variety.dim - 2)
    return ChernVector(variety, coeffs)


def mu_slope(v, m: int | None = None):
    ch0, ch1 = (v[0], v[1]) if not isinstance(v, Trunc) else (v.r, v.x)
    if ch0 == 0:
        if ch1 == 0 and all(c == 0 for c in getattr(v, "coeffs", (0,))):
            raise ValueError("zero character has no slope")
        return INF
    return Fraction(ch1) / ch0


def delta(v) -> Fraction:
    """Ordinary discriminant ch1^2 - 2 ch0 ch2 of the unmodified character."""
    return v[1] * v[1] - 2 * v[0] * v[2]


def delta_c0(v) -> Fraction:
    """Discriminant of the modified character, ch1^2 - 2 ch0 ch2 + 3/4 ch0^2."""
    if isinstance(v, Trunc):
        return v.x * v.x - 2 * v.r * v.y
    return v[1] * v[1] - 2 * v[0] * v[2] + Fraction(3, 4) * v[0] * v[0]


# ---------------------------------------------------------------------------
# charges


def z_tilt(v, p: TiltParam) -> tuple[Fraction, Fraction]:
    t = trunc(v, p.beta) if not isinstance(v, Trunc) else v
    return (-(t.y - p.alpha_sq / 2 * t.r), t.x)


def nu(v, p: TiltParam):
    re, im = z_tilt(v, p)
    if im == 0:
        if re == 0:
            raise ValueError("zero charge has no tilt")
        return INF
    return -re / im


def nu_closed_form(j: int, p: TiltParam) -> Fraction:
    b, a2 = p.beta, p.alpha_sq
    return ((2 * b - j + 3) ** 2 - 4 * a2) / (4 * j - 8 * b - 12)


def z0(v, p: TiltParam) -> tuple[Fraction, Fraction]:
    """Z^0 = -i Z."""
    re, im = z_tilt(v, p)
    return (im, -re)


def in_region_v(p: TiltParam) -> bool:
    b = p.beta
    if not (Fraction(-3, 2) < b < -1):
        return False
    m = min(b + Fraction(3, 2), -1 - b)
    return 0 < p.alpha_sq < m * m


# ---------------------------------------------------------------------------
# the (xi, eta) chart


def to_xieta(p: TiltParam) -> XiEta:
    xi = p.beta - BETA0
    return XiEta(xi, (p.alpha_sq + xi * xi) / 2)


def from_xieta(q: XiEta) -> TiltParam:
    if not q.above_gamma():
        raise ValueError(f"({q.xi}, {q.eta}) is not above the parabola")
    return TiltParam(2 * q.eta - q.xi * q.xi, q.xi + BETA0)


def chart_shift_c1(q: XiEta) -> XiEta:
    """Image of a chart point under tensoring with C_1."""
    return XiEta(q.xi + Fraction(1, 2), q.eta + q.xi / 2 + Fraction(1, 8))


@dataclass(frozen=True)
class VPoint:
    finite: bool
    xi: Fraction | None = None
    eta: Fraction | None = None
    slope: Fraction | None = None  # None with finite=False means vertical

    def as_tuple(self):
        return (self.xi, self.eta) if self.finite else ("inf", self.slope)


def v_point(v) -> VPoint:
    t = trunc(v)
    if t.is_zero():
        raise ValueError("zero truncated character")
    if t.r != 0:
        return VPoint(True, t.x / t.r, t.y / t.r)
    if t.x == 0:
        return VPoint(False, slope=None)
    return VPoint(False, slope=t.y / t.x)


def nu_tilde(v, q: XiEta):
    """Tilt slope read off the chart: (ch2 - eta ch0) / (ch1 - xi ch0)."""
    t = trunc(v)
    den = t.x - q.xi * t.r
    num = t.y - q.eta * t.r
    if den == 0:
        if num == 0:
            raise ValueError("class sits at the chart point")
        return INF
    return num / den


def phase_vector(v, P: XiEta):
    t = trunc(v)
    return (t.x - P.xi * t.r, t.y - P.eta * t.r)


def phase_angle(P: XiEta, v) -> Angle:
    """Angle of the ray from P towards v(E), measured from the downward ray.

    The vector is scaled by ch0, so shifting E by one rotates it by pi.  For
    rank zero it is the direction (ch1, ch2) of the point at infinity.
    """
    x, y = phase_vector(v, P)
    if x == 0 and y == 0:
        raise ValueError("v(E) coincides with the chart point")
    return Angle(x, y)


def tilt_phase(v, P: XiEta) -> Phase:
    """Phase in (0, 1] of the tilt charge at P, or PhaseUndefined."""
    a = phase_angle(P, v)
    if a.x == 0 and a.y < 0:
        raise PhaseUndefined("charge on the positive real axis has no phase in (0, 1]")
    if a.x < 0:
        raise PhaseUndefined("charge in the lower half plane: not a heart class")
    return Phase(a, 0)


def phase_in_window(a: Angle) -> Phase:
    """Representative of angle/pi in (-1, 1]."""
    if angle_cmp(a, Angle(0, 1)) <= 0:
        return Phase(a, 0)
    return Phase(a, -1)


# ---------------------------------------------------------------------------
# intersections with Gamma and the LZ19 phase window


@dataclass(frozen=True)
class GammaPoint:
    xi: object  # Fraction or QuadExt; None at infinity
    eta: object

    @property
    def at_infinity(self) -> bool:
        return self.xi is None

    def on_gamma(self) -> bool:
        if self.at_infinity:
            return True
        return QuadExt.lift(self.eta) == QuadExt.lift(self.xi) * self.xi * Fraction(1, 2)

    def __float__(self):  # pragma: no cover - convenience only
        raise TypeError("use float(p.xi), float(p.eta)")


def gamma_intersect(P: XiEta, v) -> tuple[GammaPoint, GammaPoint]:
    """Points where the line from P through v(E) meets Gamma, right one first."""
    if not P.above_gamma():
        raise ValueError("chart point must lie above the parabola")
    dx, dy = phase_vector(v, P)
    if dx == 0 and dy == 0:
        raise ValueError("v(E) coincides with the chart point")
    if dx == 0:
        # vertical line: one finite point, the other end escapes upwards
        return GammaPoint(P.xi, P.xi * P.xi / 2), GammaPoint(None, None)
    m = Fraction(dy) / dx
    D = m * m - 2 * m * P.xi + 2 * P.eta
    root = QuadExt.sqrt(D)
    pts = []
    for s in (1, -1):
        xi = m + root * s
        eta = P.eta + (xi - P.xi) * m
        pts.append(GammaPoint(_simp(xi), _simp(eta)))
    return pts[0], pts[1]


def _simp(x):
    return x.a if isinstance(x, QuadExt) and x.is_rational else x


@dataclass(frozen=True)
class PhaseInterval:
    lo: Phase
    hi: Phase

    def shifted(self, k: int) -> "PhaseInterval":
        return PhaseInterval(self.lo.shifted(k), self.hi.shifted(k))

    def inside_open(self, lo_half: int, hi_half: int) -> bool:
        """Whether the interval lies in (lo_half/2, hi_half/2)."""
        return Phase.half_integer(lo_half) < self.lo and self.hi < Phase.half_integer(hi_half)

    def floats(self):
        return float(self.lo), float(self.hi)


def phase_from(Q_: XiEta, pt: GammaPoint) -> Phase:
    if pt.at_infinity:
        return Phase.half_integer(2)  # straight up
    dx = QuadExt.lift(pt.xi) - Q_.xi
    dy = QuadExt.lift(pt.eta) - Q_.eta
    return phase_in_window(Angle(_simp(dx), _simp(dy)))


def lz19_bounds(P: XiEta, Q_: XiEta, v, placement: str = "heart") -> PhaseInterval:
    """Window for HN-factor phases at Q of a class stable at P."""
    if placement not in ("heart", "shifted_heart"):
        raise ValueError("placement must be 'heart' or 'shifted_heart'")
    if not Q_.above_gamma():
        raise ValueError("Q must lie above the parabola")
    e1, e2 = gamma_intersect(P, v)
    if e2.at_infinity:
        raise ValueError("vertical line through P: endpoint ordering is undefined")
    p1, p2 = phase_from(Q_, e1), phase_from(Q_, e2)
    if placement == "heart":
        return PhaseInterval(p1, p2.shifted(1))
    return PhaseInterval(p1.shifted(-1), p2)


def on_ell0(v) -> bool:
    """Whether v(E) lies on the ray xi <= -1/4, eta = 1/32."""
    p = v_point(v)
    return p.finite and p.eta == Fraction(1, 32) and p.xi <= Fraction(-1, 4)


def sgn_exact(x) -> int:
    return sgn(x)
