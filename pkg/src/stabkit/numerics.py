"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides quadratic surds ``a + b*sqrt(d)``, truncated power series in one
variable, exact plane angles, and lifted phases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC

Rational = Fraction

LESS, EQUAL, GREATER = -1, 0, 1


def Q(x) -> Fraction:
    """Coerce ints, Fractions and strings like '-5/4' to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _strip_squares(n: int) -> tuple[int, int]:
    """Return (s, f) with n = s*s*f, removing small square factors only."""
    s = 1
    p = 2
    while p * p <= n and p < 1000:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        p += 1
    if _is_square(n):
        s *= math.isqrt(n)
        n = 1
    return s, n


# ---------------------------------------------------------------------------
# quadratic surds


class QuadExt:
    """The real number ``a + b*sqrt(d)`` with rational ``a, b`` and ``d >= 0``.

    ``d`` is stored as a positive non-square integer (or 0 when ``b = 0``).
    Two values may be combined arithmetically only when their radicands
    differ by a rational square.  Comparison is exact for any pair.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a, b, d = Q(a), Q(b), Q(d)
        if d < 0:
            raise ValueError("negative radicand")
        if b != 0 and d != 0:
            # sqrt(p/q) = sqrt(p*q)/q
            n = d.numerator * d.denominator
            s, f = _strip_squares(n)
            b = b * s / d.denominator
            if f == 1:
                a, b, n = a + b, Fraction(0), 0
            else:
                n = f
        else:
            b, n = Fraction(0), 0
        self.a, self.b, self.d = a, b, n

    # -- construction helpers
    @classmethod
    def sqrt(cls, x) -> "QuadExt":
        return cls(0, 1, x)

    @staticmethod
    def lift(x) -> "QuadExt":
        return x if isinstance(x, QuadExt) else QuadExt(x)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- radicand bookkeeping
    def _common(self, other: "QuadExt"):
        """Rewrite both operands over a shared radicand or raise."""
        if self.b == 0 or other.b == 0 or self.d == other.d:
            d = self.d or other.d
            return self.a, self.b, other.a, other.b, d
        prod = self.d * other.d
        if not _is_square(prod):
            raise ValueError(
                f"incompatible radicands sqrt({self.d}) and sqrt({other.d})")
        # sqrt(d2) = sqrt(d1*d2)/d1 * sqrt(d1)
        scale = Fraction(math.isqrt(prod), self.d)
        return self.a, self.b, other.a, other.b * scale, self.d

    def __add__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        a1, b1, a2, b2, d = self._common(QuadExt.lift(other))
        return QuadExt(a1 + a2, b1 + b2, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self + (-QuadExt.lift(other))

    def __rsub__(self, other):
        return QuadExt.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        a1, b1, a2, b2, d = self._common(QuadExt.lift(other))
        return QuadExt(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        other = QuadExt.lift(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * other.conj() * QuadExt(1 / n)

    def __rtruediv__(self, other):
        return QuadExt.lift(other) / self

    # -- sign and order
    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def _cmp(self, other) -> int:
        other = QuadExt.lift(other)
        try:
            return (self - other).sign()
        except ValueError:
            pass
        # x = A + B with A = (a1-a2) + b1 sqrt(d1), B = -b2 sqrt(d2)
        A = QuadExt(self.a - other.a, self.b, self.d)
        B = QuadExt(0, -other.b, other.d)
        sA, sB = A.sign(), B.sign()
        if sA == sB or sB == 0:
            return sA
        if sA == 0:
            return sB
        # |A| vs |B| decided by A^2 - B^2, a single-radicand value
        return sA * (A * A - QuadExt(B.b * B.b * B.d)).sign()

    def __eq__(self, other):
        if isinstance(other, (QuadExt, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        surd = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        if self.b == -1:
            surd = f"-sqrt({self.d})"
        if self.a == 0:
            return surd
        sep = " - " if surd.startswith("-") else " + "
        return f"{self.a}{sep}{surd.lstrip('-')}"


def sgn(x) -> int:
    """Exact sign of an int, Fraction or QuadExt."""
    if isinstance(x, QuadExt):
        return x.sign()
    return _sign(x)


def simplify(x):
    """Demote a rational QuadExt to a Fraction; leave others alone."""
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    return x


def exact_str(x) -> str:
    return str(simplify(x))


# ---------------------------------------------------------------------------
# truncated power series


class HSeries:
    """Polynomial in ``h`` modulo ``h^(dim+1)`` with rational coefficients."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, coeffs, dim: int | None = None):
        cs = [Q(c) for c in coeffs]
        if dim is None:
            dim = len(cs) - 1
        if dim < 0:
            raise ValueError("dim must be nonnegative")
        cs = (cs + [Fraction(0)] * (dim + 1))[: dim + 1]
        self.dim = dim
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c, dim: int) -> "HSeries":
        return cls([c], dim)

    @classmethod
    def monomial(cls, k: int, dim: int, c=1) -> "HSeries":
        return cls([0] * k + [c], dim)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k <= self.dim:
            return self.coeffs[k]
        return Fraction(0)

    def _check(self, other: "HSeries"):
        if not isinstance(other, HSeries):
            raise TypeError("expected HSeries")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HSeries.const(other, self.dim)
        self._check(other)
        return HSeries([x + y for x, y in zip(self.coeffs, other.coeffs)], self.dim)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-x for x in self.coeffs], self.dim)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HSeries.const(other, self.dim)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return HSeries([x * other for x in self.coeffs], self.dim)
        if isinstance(other, HSeries):
            return hs_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return HSeries([x / other for x in self.coeffs], self.dim)
        if isinstance(other, HSeries):
            return hs_mul(self, hs_inv(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return hs_inv(self) ** (-n)
        out = HSeries.const(1, self.dim)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, HSeries):
            return self.dim == other.dim and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == HSeries.const(other, self.dim)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, self.coeffs))

    def dual(self) -> "HSeries":
        return HSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.dim)

    def truncate(self, dim: int) -> "HSeries":
        return HSeries(self.coeffs[: dim + 1], dim)

    def shift_down(self) -> "HSeries":
        """Divide by h, assuming the constant term vanishes; loses one degree."""
        if self.coeffs[0] != 0:
            raise ValueError("constant term is not zero")
        return HSeries(self.coeffs[1:], self.dim - 1)

    def __repr__(self):
        return f"HSeries({[str(c) for c in self.coeffs]}, dim={self.dim})"

    def pretty(self, var: str = "h") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    __str__ = pretty


def hs_mul(a: HSeries, b: HSeries) -> HSeries:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    n = a.dim
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return HSeries(out, n)


def hs_exp(t, dim: int) -> HSeries:
    t = Q(t)
    cs = [Fraction(1)]
    for k in range(1, dim + 1):
        cs.append(cs[-1] * t / k)
    return HSeries(cs, dim)


def hs_inv(a: HSeries) -> HSeries:
    c0 = a.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = a.dim
    out = [1 / c0]
    for k in range(1, n + 1):
        s = sum(a.coeffs[i] * out[k - i] for i in range(1, k + 1))
        out.append(-s / c0)
    return HSeries(out, n)


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def solve_rational(A, b):
    """Solve the square system A x = b exactly by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Q(x) for x in row] + [Q(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def det_rational(A):
    n = len(A)
    M = [[Q(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            f = M[r][col] / p
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


# ---------------------------------------------------------------------------
# angles and phases


def _half(x, y) -> int:
    # 0 for angles in [0, pi) measured from the downward ray, 1 for [pi, 2pi)
    sx = sgn(x)
    if sx > 0:
        return 0
    if sx < 0:
        return 1
    return 0 if sgn(y) < 0 else 1


class Angle:
    """A nonzero plane vector read as the ray it spans.

    Angles are measured counterclockwise from the downward ray (0, -1) and
    live in [0, 2*pi).  Comparison uses a half-plane split and the sign of a
    cross product, so it is exact for rational and single-radicand input.
    """

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        x = x if isinstance(x, QuadExt) else Q(x)
        y = y if isinstance(y, QuadExt) else Q(y)
        if sgn(x) == 0 and sgn(y) == 0:
            raise ValueError("zero vector has no angle")
        self.x, self.y = x, y

    def rotate_pi(self) -> "Angle":
        return Angle(-self.x, -self.y)

    def radians(self) -> float:
        t = math.atan2(float(self.y), float(self.x)) + math.pi / 2
        return t % (2 * math.pi)

    def __repr__(self):
        return f"Angle({exact_str(self.x)}, {exact_str(self.y)})"


def angle_cmp(u: Angle, v: Angle) -> int:
    hu, hv = _half(u.x, u.y), _half(v.x, v.y)
    if hu != hv:
        return LESS if hu < hv else GREATER
    cross = u.x * v.y - u.y * v.x
    s = sgn(cross)
    if s > 0:
        return LESS
    if s < 0:
        return GREATER
    return EQUAL


def angle_eq(u: Angle, v: Angle) -> bool:
    return angle_cmp(u, v) == EQUAL


@total_ordering
class Phase:
    """A lifted phase ``angle/pi + 2*turns`` with the angle in [0, 2*pi).

    Angles here follow the downward-ray convention of :class:`Angle`.  A
    central charge ``z`` is converted with :meth:`from_charge`, which turns
    the positive real axis into the downward ray.
    """

    __slots__ = ("angle", "turns")

    def __init__(self, angle: Angle, turns: int = 0):
        self.angle = angle
        self.turns = int(turns)

    @classmethod
    def from_charge(cls, re, im, turns: int = 0) -> "Phase":
        return cls(Angle(im, -re), turns)

    @classmethod
    def half_integer(cls, k: int) -> "Phase":
        """The phase k/2."""
        dirs = [(0, -1), (1, 0), (0, 1), (-1, 0)]
        q, r = divmod(k, 4)
        return cls(Angle(*dirs[r]), q)

    def plus_one(self) -> "Phase":
        flipped = self.angle.rotate_pi()
        if _half(self.angle.x, self.angle.y) == 1:
            return Phase(flipped, self.turns + 1)
        return Phase(flipped, self.turns)

    def shifted(self, k: int) -> "Phase":
        out = Phase(self.angle, self.turns + k // 2)
        if k % 2:
            out = out.plus_one()
        return out

    def _key_cmp(self, other: "Phase") -> int:
        if self.turns != other.turns:
            return LESS if self.turns < other.turns else GREATER
        return angle_cmp(self.angle, other.angle)

    def __eq__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return self._key_cmp(other) == EQUAL

    def __lt__(self, other):
        return self._key_cmp(other) == LESS

    def __hash__(self):
        return hash(self.turns)

    def __float__(self):
        return self.angle.radians() / math.pi + 2 * self.turns

    def __repr__(self):
        return f"Phase({self.angle!r}, turns={self.turns})"
