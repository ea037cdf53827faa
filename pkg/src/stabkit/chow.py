"""Chern characters, Todd classes and Euler pairings.

Three kinds of ambient space are supported:

* ``projective(m)``: P^m, integrate by taking the coefficient of h^m;
* ``cubic(n)``: a cubic hypersurface Y_n in P^(n+1), where H^n is three
  points, so the integral is 3 times the coefficient of H^n;
* ``clifford(m)``: P^m together with the even Clifford algebra C_0 of a
  net/web of quadrics.  Characters are ordinary characters of the
  underlying sheaves, but the Euler pairing is the one of C_0-modules,
  computed in the integral basis of Clifford sheaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .numerics import HSeries, Q, det_rational, hs_exp, hs_inv, solve_rational


@dataclass(frozen=True)
class Variety:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in ("projective", "cubic", "clifford"):
            raise ValueError(f"unknown variety kind {self.kind!r}")
        if self.kind == "clifford" and self.dim not in (2, 3):
            raise ValueError("Clifford side is only modelled on P^2 and P^3")

    @property
    def var(self) -> str:
        return "H" if self.kind == "cubic" else "h"

    def __str__(self):
        return {"projective": "P", "cubic": "Y", "clifford": "C0/P"}[self.kind] + str(self.dim)


def projective(m: int) -> Variety:
    return Variety("projective", m)


def cubic(n: int) -> Variety:
    return Variety("cubic", n)


def clifford(m: int = 3) -> Variety:
    return Variety("clifford", m)


P2, P3, P6 = projective(2), projective(3), projective(6)
Y5 = cubic(5)
CL3, CL2 = clifford(3), clifford(2)


class ChernVector:
    """A numerical Chern character on a fixed variety."""

    __slots__ = ("variety", "series")

    def __init__(self, variety: Variety, series):
        if not isinstance(series, HSeries):
            series = HSeries(series, variety.dim)
        if series.dim != variety.dim:
            raise ValueError("series truncation does not match the variety")
        self.variety = variety
        self.series = series

    def __getitem__(self, k):
        return self.series[k]

    @property
    def coeffs(self):
        return self.series.coeffs

    def _other(self, other):
        if isinstance(other, ChernVector):
            if other.variety != self.variety:
                raise ValueError(f"variety mismatch: {self.variety} vs {other.variety}")
            return other.series
        if isinstance(other, (int, Fraction)):
            return HSeries.const(other, self.variety.dim)
        if isinstance(other, HSeries):
            return other
        raise TypeError(f"cannot combine ChernVector with {type(other).__name__}")

    def __add__(self, other):
        return ChernVector(self.variety, self.series + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ChernVector(self.variety, self.series - self._other(other))

    def __rsub__(self, other):
        return ChernVector(self.variety, self._other(other) - self.series)

    def __neg__(self):
        return ChernVector(self.variety, -self.series)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChernVector(self.variety, self.series * other)
        return ChernVector(self.variety, self.series * self._other(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ChernVector):
            return self.variety == other.variety and self.series == other.series
        return NotImplemented

    def __hash__(self):
        return hash((self.variety, self.series))

    def twist(self, k) -> "ChernVector":
        """Tensor with O(k) (or O_Y(k) on a cubic)."""
        return ChernVector(self.variety, self.series * hs_exp(k, self.variety.dim))

    def on(self, variety: Variety) -> "ChernVector":
        """Reinterpret the same series on another variety of equal dimension."""
        return ChernVector(variety, self.series)

    def __repr__(self):
        return f"ChernVector({self.variety}, {self.series.pretty(self.variety.var)})"

    def __str__(self):
        return self.series.pretty(self.variety.var)


def _as_cv(v, X: Variety | None = None) -> ChernVector:
    if isinstance(v, ChernVector):
        return v
    if X is None:
        raise TypeError("a bare scalar needs a variety")
    return ChernVector(X, HSeries.const(v, X.dim))


# ---------------------------------------------------------------------------
# characters


def ch_line(k, X: Variety) -> ChernVector:
    return ChernVector(X, hs_exp(k, X.dim))


def clifford_splitting(j: int) -> list[int]:
    """Degrees of the eight line bundles in the splitting of C_j."""
    i, odd = divmod(j, 2)
    if odd:
        return [i] * 3 + [i - 1] * 2 + [i - 2] * 3
    return [i] + [i - 1] * 3 + [i - 2] * 3 + [i - 3]


@lru_cache(maxsize=None)
def ch_clifford(j: int, m: int = 3) -> ChernVector:
    if m not in (2, 3):
        raise ValueError("Clifford sheaves are modelled on P^2 and P^3 only")
    s = HSeries.const(0, m)
    for k in clifford_splitting(j):
        s = s + hs_exp(k, m)
    return ChernVector(clifford(m), s)


def forget(v: ChernVector) -> ChernVector:
    """Underlying O-module of a C_0-module."""
    if v.variety.kind != "clifford":
        return v
    return v.on(projective(v.variety.dim))


def _todd_factor(dim: int) -> HSeries:
    # h / (1 - e^{-h}) up to h^dim
    n = dim + 1
    s = hs_exp(-1, n)
    q = HSeries([-c for c in s.coeffs[1:]], dim)  # (1 - e^{-h}) / h
    return hs_inv(q)


@lru_cache(maxsize=None)
def todd(X: Variety) -> ChernVector:
    n = X.dim
    t = _todd_factor(n)
    if X.kind in ("projective", "clifford"):
        return ChernVector(X, t ** (n + 1))
    # cubic: td(P^{n+1}) restricted, divided by td(O(3)) = 3H / (1 - e^{-3H})
    e3 = hs_exp(-3, n + 1)
    q = HSeries([-c / 3 for c in e3.coeffs[1:]], n)  # (1 - e^{-3H}) / (3H)
    return ChernVector(X, t ** (n + 2) * q)


def mukai_dual(v: ChernVector) -> ChernVector:
    return ChernVector(v.variety, v.series.dual())


def integrate(v: ChernVector) -> Fraction:
    X = v.variety
    top = v.series[X.dim]
    return 3 * top if X.kind == "cubic" else top


class IntegralityError(ArithmeticError):
    pass


def euler_pairing(vE, vF, genuine: bool = False) -> Fraction:
    """chi(E, F).  With ``genuine=True`` a non-integer result raises."""
    X = vE.variety if isinstance(vE, ChernVector) else getattr(vF, "variety", None)
    vE, vF = _as_cv(vE, X), _as_cv(vF, X)
    if vE.variety != vF.variety:
        raise ValueError(f"variety mismatch: {vE.variety} vs {vF.variety}")
    if X.kind == "clifford":
        cE, cF = clifford_coords(vE), clifford_coords(vF)
        G = gram_c0(X.dim)
        val = sum(cE[i] * G[i][j] * cF[j] for i in range(len(cE)) for j in range(len(cF)))
    else:
        val = integrate(mukai_dual(vE) * vF * todd(X))
    if genuine and val.denominator != 1:
        raise IntegralityError(f"non-integral Euler characteristic {val}")
    return val


# ---------------------------------------------------------------------------
# Clifford lattice


def clifford_window(m: int) -> list[int]:
    """Indices j of the integral basis {[C_j]} of K_num(P^m, C_0)."""
    return [-1, 0, 1, 2] if m == 3 else [0, 1, 2]


@lru_cache(maxsize=None)
def _chi_forget(k: int, m: int) -> Fraction:
    return euler_pairing(1, forget(ch_clifford(k, m)))


def euler_pairing_c0(i: int, j: int, m: int = 3) -> Fraction:
    """chi_{C_0}(C_i, C_j) = chi(P^m, C_{j-i})."""
    if m not in (2, 3):
        raise ValueError("m must be 2 or 3")
    return _chi_forget(j - i, m)


@lru_cache(maxsize=None)
def gram_c0(m: int = 3) -> tuple:
    w = clifford_window(m)
    return tuple(tuple(euler_pairing_c0(i, j, m) for j in w) for i in w)


def gram_det(G) -> Fraction:
    return det_rational(G)


def clifford_coords(v: ChernVector) -> list[Fraction]:
    """Coordinates of a character in the basis {[C_j]} (possibly rational)."""
    m = v.variety.dim
    w = clifford_window(m)
    A = [[ch_clifford(j, m)[k] for j in w] for k in range(m + 1)]
    return solve_rational(A, list(v.series.coeffs))


def p2_rr_closed_form(vE: ChernVector, vF: ChernVector) -> Fraction:
    """chi_{C_0}(E, F) on P^2 via its quadratic closed form.

    The form is chi(v, v) = -(1/8)(ch1^2 - 2 ch0 ch2 + ch0^2/2) polarised
    asymmetrically; only the symmetric part is needed since the P^2 Gram
    matrix is symmetric.
    """
    def q(v):
        c0, c1, c2 = v[0], v[1], v[2]
        return -Fraction(1, 8) * (c1 * c1 - 2 * c0 * c2 + c0 * c0 / 2)

    return (q(vE + vF) - q(vE) - q(vF)) / 2


# ---------------------------------------------------------------------------
# line-bundle cohomology


def coh_split(ks, m: int) -> tuple[int, ...]:
    """h^i(P^m, sum of O(k)) for i = 0..m."""
    out = [0] * (m + 1)
    for k in ks:
        if k >= 0:
            out[0] += comb(k + m, m)
        elif k <= -m - 1:
            out[m] += comb(-k - 1, m)
    return tuple(out)


# ---------------------------------------------------------------------------
# classes on the cubic fivefold

# ch(kappa_1), ch(kappa_2) in the basis 1, H, ..., H^5
KAPPA1_CH = (3, -1, Fraction(-1, 2), Fraction(1, 6), Fraction(1, 8), Fraction(-13, 360))
KAPPA2_CH = (0, 1, Fraction(-1, 2), Fraction(-1, 6), Fraction(1, 8), Fraction(13, 360))


def ch_kappa(i: int) -> ChernVector:
    return ChernVector(Y5, {1: KAPPA1_CH, 2: KAPPA2_CH}[i])


def ch_plane_in_y() -> ChernVector:
    """ch of the structure sheaf of a plane inside Y_5."""
    return (1 - ch_line(-1, Y5)) - ch_kappa(2)


def ch_linear_in_y(codim: int) -> ChernVector:
    """ch of a linear subspace of P^6 of the given codimension lying in Y_5.

    Computed by Grothendieck-Riemann-Roch for the embedding Y_5 -> P^6:
    the subspace is cut out by ``codim`` hyperplanes, so its character on
    P^6 is (1 - e^{-h})^codim, and pushforward sends H^k to 3 h^(k+1).
    """
    amb = (1 - hs_exp(-1, 6)) ** codim * todd(P6).series
    # i_*^{-1}: coefficient of h^(k+1) divided by 3 gives H^k
    pulled = HSeries([c / 3 for c in amb.coeffs[1:]], 5)
    return ChernVector(Y5, pulled / todd(Y5).series)


def y_integral_basis() -> dict[str, ChernVector]:
    """Characters of O_Y, O_H, O_{H^2}, O_Pi, O_L, O_P on Y_5."""
    oh = 1 - ch_line(-1, Y5)
    return {
        "O_Y": ch_line(0, Y5),
        "O_H": oh,
        "O_H2": oh * oh,
        "O_Pi": ch_plane_in_y(),
        "O_L": ch_linear_in_y(5),
        "O_P": ch_linear_in_y(6),
    }
