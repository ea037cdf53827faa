"""Serre invariance at the level of central charges.

Charges on the Kuznetsov lattice of (P^3, C_0) are 2x2 matrices whose
columns are Z(kappabar_1), Z(kappabar_2) written as (Re, Im).  Entries are
Fractions or elements of Q(sqrt 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .knum import KAPPABAR1, KAPPABAR2, M_S_BAR, KClassKu, mat_apply
from .numerics import Angle, Phase, Q, QuadExt, angle_cmp, sgn
from .tilt import BETA0, TiltParam, z0

SQRT3 = QuadExt.sqrt(3)
HALF = Fraction(1, 2)
# rotation by pi/3
ROT60 = ((HALF, -SQRT3 * HALF), (SQRT3 * HALF, HALF))
O_INV_BAR = ((1, 1), (-1, 0))


def _simp(x):
    return x.a if isinstance(x, QuadExt) and x.is_rational else x


# ---------------------------------------------------------------------------
# 2x2 matrices over Q or Q(sqrt 3)


def m_mul(A, B):
    return tuple(tuple(_simp(sum((A[i][k] * B[k][j] for k in range(2)), Fraction(0)))
                       for j in range(2)) for i in range(2))


def m_det(A):
    return _simp(A[0][0] * A[1][1] - A[0][1] * A[1][0])


def m_inv(A):
    d = m_det(A)
    if sgn(d) == 0:
        raise ZeroDivisionError("singular matrix")
    inv = QuadExt.lift(1) / d
    return tuple(tuple(_simp(x * inv) for x in row)
                 for row in ((A[1][1], -A[0][1]), (-A[1][0], A[0][0])))


def m_vec(A, v):
    return tuple(_simp(A[i][0] * v[0] + A[i][1] * v[1]) for i in range(2))


def m_eq(A, B) -> bool:
    return all(A[i][j] == B[i][j] for i in range(2) for j in range(2))


IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# charges


@dataclass(frozen=True)
class ChargeMatrix:
    m: tuple

    def __post_init__(self):
        if sgn(m_det(self.m)) == 0:
            raise ValueError("charge matrix is degenerate")

    def of(self, v: KClassKu):
        return m_vec(self.m, v.coeffs)

    def column(self, i: int):
        return (self.m[0][i], self.m[1][i])

    @property
    def det(self):
        return m_det(self.m)


def z0_det_closed_form(p: TiltParam):
    return 16 * p.alpha_sq + 16 * (p.beta - BETA0) ** 2 + 7


def charge_matrix(p: TiltParam) -> ChargeMatrix:
    c1, c2 = z0(KAPPABAR1.ch(), p), z0(KAPPABAR2.ch(), p)
    Z = ChargeMatrix(((c1[0], c2[0]), (c1[1], c2[1])))
    if Z.det != z0_det_closed_form(p):
        raise ArithmeticError("charge determinant disagrees with its closed form")
    return Z


def serre_inv_matrix(p: TiltParam):
    """The M with M^-1 Z = Z O^-1 on the lattice."""
    Z = charge_matrix(p).m
    M = m_mul(m_mul(Z, m_inv(O_INV_BAR)), m_inv(Z))
    if not m_eq(m_mul(m_inv(M), Z), m_mul(Z, O_INV_BAR)):
        raise ArithmeticError("Serre-invariance identity fails")
    if sgn(m_det(M)) <= 0:
        raise ArithmeticError("Serre-invariance matrix is not orientation preserving")
    return M


# ---------------------------------------------------------------------------
# the universal cover of GL_2^+


def _charge_of(ph: Phase):
    # inverse of Phase.from_charge: angle (x, y) is the charge (-y, x)
    return (-ph.angle.y, ph.angle.x)


def _floor(ph: Phase) -> int:
    up = angle_cmp(ph.angle, Angle(0, 1)) >= 0  # angle >= pi
    return 2 * ph.turns + (1 if up else 0)


@dataclass(frozen=True)
class GLTilde:
    """(M, g) with M e^{i pi phi} in R_+ e^{i pi g(phi)}.

    g is pinned by g(0) lying in (branch - 1, branch + 1].
    """

    M: tuple
    branch: int = 0

    def __post_init__(self):
        if sgn(m_det(self.M)) <= 0:
            raise ValueError("GL~ element needs positive determinant")

    def g0(self) -> Phase:
        z = m_vec(self.M, (1, 0))
        ph = Phase.from_charge(z[0], z[1])
        # lift into (branch - 1, branch + 1]
        lo = Phase.half_integer(2 * (self.branch - 1))
        hi = Phase.half_integer(2 * (self.branch + 1))
        ph = Phase(ph.angle, ph.turns + (self.branch - _floor(ph)) // 2 + 1)
        while not ph <= hi:
            ph = Phase(ph.angle, ph.turns - 1)
        while not lo < ph:
            ph = Phase(ph.angle, ph.turns + 1)
        return ph

    def __call__(self, phi: Phase) -> Phase:
        """Evaluate g exactly at a lifted phase."""
        base = Phase(phi.angle, 0)
        z = m_vec(self.M, _charge_of(base))
        out = Phase.from_charge(z[0], z[1])
        start = self.g0()
        out = Phase(out.angle, start.turns - 1)
        while out < start:
            out = Phase(out.angle, out.turns + 1)
        return Phase(out.angle, out.turns + phi.turns)

    def inverse(self) -> "GLTilde":
        Minv = m_inv(self.M)
        cand = GLTilde(Minv, 0)
        # choose the branch with g^-1(g(0)) = 0
        target = self(Phase.half_integer(0))
        for b in range(-_span(target) - 2, _span(target) + 3):
            c = GLTilde(Minv, b)
            if c(target) == Phase.half_integer(0):
                return c
        return cand

    def compose(self, other: "GLTilde") -> "GLTilde":
        """The element acting as self then other (matrix M_self M_other)."""
        M = m_mul(self.M, other.M)
        val = self(other(Phase.half_integer(0)))
        return GLTilde(M, _floor(val))

    def act_on_phase(self, psi: Phase) -> Phase:
        """New phase g^-1(psi) of an object after acting on the stability condition."""
        return self.inverse()(psi)


def _span(ph: Phase) -> int:
    return abs(ph.turns) + 1


def gl_act(gt: GLTilde, Zm: ChargeMatrix) -> ChargeMatrix:
    return ChargeMatrix(m_mul(m_inv(gt.M), Zm.m))


# ---------------------------------------------------------------------------
# hexagonal normalisation and the Gepner rotation


def hex_normalizer(p: TiltParam) -> GLTilde:
    if p.beta != BETA0:
        raise ValueError("the hexagonal normaliser is defined on beta = -5/4")
    d2 = (16 * p.alpha_sq + 7) / (2 * SQRT3)
    return GLTilde(((Fraction(4), Fraction(0)), (Fraction(0), d2)), 0)


def hex_charge(p: TiltParam) -> ChargeMatrix:
    return gl_act(hex_normalizer(p), charge_matrix(p))


def gepner_rotation_check(Zm: ChargeMatrix) -> bool:
    """Z o S_* == R(pi/3) o Z exactly, with S_* the kappabar Serre matrix."""
    lhs = m_mul(Zm.m, M_S_BAR)
    rhs = m_mul(ROT60, Zm.m)
    return m_eq(lhs, rhs)


def _rotates_by_60(z1, z2) -> bool:
    r = m_vec(ROT60, z1)
    cross = _simp(r[0] * z2[1] - r[1] * z2[0])
    dot = _simp(r[0] * z2[0] + r[1] * z2[1])
    return sgn(cross) == 0 and sgn(dot) > 0


SERRE_SHIFT = 7  # S^3 = [7]
SERRE_ORDER = 3


def serre_branch(fractional=Fraction(1, 3), shift=SERRE_SHIFT, order=SERRE_ORDER) -> int:
    """Integer k with order * (fractional + 2k) = shift.

    Serre invariance makes the phase jump the same for every object, so the
    three jumps along v, Sv, S^2 v share one k and add up to the shift of S^3.
    """
    k = (Q(shift) - order * Q(fractional)) / (2 * order)
    if k.denominator != 1:
        raise ArithmeticError(f"no integral branch: k = {k}")
    k = int(k)
    # g is increasing with g(phi + 1) = g(phi) + 1, so one jump cannot exceed
    # the total shift spread over the order
    if order * (2 * k) + Q(fractional) > shift:
        raise ArithmeticError("branch violates the monotonicity bound")
    return k


def phase_jump(Zm: ChargeMatrix, v: KClassKu):
    """(fractional part of the S-jump, branch k) for a nonzero class."""
    if v.coeffs == (0, 0):
        raise ValueError("zero class has no phase")
    z1 = Zm.of(v)
    z2 = Zm.of(mat_apply(M_S_BAR, v))
    if not _rotates_by_60(z1, z2):
        raise ArithmeticError("charge of S v is not the pi/3 rotation of the charge of v")
    frac = Fraction(1, 3)
    return frac, serre_branch(frac)


def serre_gltilde() -> GLTilde:
    """The element g~ with S . sigma'' = sigma'' . g~: rotation, g(phi) = phi + 7/3."""
    k = serre_branch()
    total = Fraction(1, 3) + 2 * k
    return GLTilde(ROT60, int(total // 1))


def paper_labelled_charge() -> ChargeMatrix:
    """Hexagonal charge with the labels kappabar_1 -> e^{i pi}, kappabar_2 -> e^{2 pi i/3}."""
    return ChargeMatrix(((Fraction(-1), -HALF), (Fraction(0), SQRT3 * HALF)))


# ---------------------------------------------------------------------------
# shear to the square lattice and the global dimension bound


def square_shear() -> GLTilde:
    """N with N^-1 sending e^{i pi} to -1 and e^{2 pi i/3} to i."""
    N = ((Fraction(1), -HALF), (Fraction(0), SQRT3 * HALF))
    return GLTilde(N, 0)


def gldim_after(gt: GLTilde):
    """Global dimension bookkeeping after acting by gt on the hexagonal charge.

    Serre acts on the new charge through K = N^-1 R(pi/3) N.  The largest
    angle K turns a vector by is at most pi/2 exactly when the symmetric part
    of K is positive semidefinite, giving gl.dim <= 2 + 1/2.  Returns
    (bound_holds, bound_attained).
    """
    N = gt.M
    K = m_mul(m_mul(m_inv(N), ROT60), N)
    s00, s11 = K[0][0], K[1][1]
    s01 = _simp((QuadExt.lift(K[0][1]) + K[1][0]) * HALF)
    tr = _simp(QuadExt.lift(s00) + s11)
    det = _simp(QuadExt.lift(s00) * s11 - QuadExt.lift(s01) * s01)
    psd = sgn(tr) >= 0 and sgn(det) >= 0 and sgn(s00) >= 0 and sgn(s11) >= 0
    return psd, psd and sgn(det) == 0


def is_similarity(M) -> bool:
    """Rotation times a positive scalar: the global dimension stays 7/3."""
    return M[0][0] == M[1][1] and M[0][1] == _simp(-QuadExt.lift(M[1][0]))
