"""Numerical Grothendieck lattices and their autoequivalence shadows.

Two rank-2 lattices appear: K_num(Ku(Y)) with basis kappa_1, kappa_2 on
the cubic fivefold side, and K_num(Ku(P^3, C_0)) with basis kappabar_1,
kappabar_2 inside the Clifford lattice.  Both carry the Euler form
((-1,-1),(0,-1)).

Shifts act on classes by a sign, [E[k]] = (-1)^k [E].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _core
from .chow import (
    CL3,
    Y5,
    ChernVector,
    ch_clifford,
    ch_kappa,
    ch_line,
    ch_plane_in_y,
    clifford_coords,
    clifford_window,
    euler_pairing,
    gram_c0,
)
from .numerics import solve_rational


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# lattice vectors


@dataclass(frozen=True)
class KClassC0:
    """Integer coordinates in the basis [C_-1], [C_0], [C_1], [C_2]."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if len(cs) != 4:
            raise ValueError("a Clifford class has four coordinates")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def basis(cls, j: int) -> "KClassC0":
        w = clifford_window(3)
        return cls(tuple(int(i == j) for i in w))

    @classmethod
    def from_ch(cls, v: ChernVector) -> "KClassC0":
        cs = clifford_coords(v)
        if any(c.denominator != 1 for c in cs):
            raise LatticeError(f"character {v} is not integral in the Clifford basis: {cs}")
        return cls(tuple(int(c) for c in cs))

    def ch(self) -> ChernVector:
        out = ChernVector(CL3, [0, 0, 0, 0])
        for j, c in zip(clifford_window(3), self.coeffs):
            if c:
                out = out + ch_clifford(j, 3) * c
        return out

    def __add__(self, other):
        return KClassC0(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return KClassC0(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return KClassC0(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int):
        return KClassC0(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"basis": "clifford", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class KClassKu:
    """Integer coordinates (a, b) in the kappa or kappabar basis."""

    coeffs: tuple
    basis: str = "kappa"

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if len(cs) != 2:
            raise ValueError("a Kuznetsov class has two coordinates")
        if self.basis not in ("kappa", "kappabar"):
            raise ValueError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coeffs", cs)

    @property
    def a(self) -> int:
        return self.coeffs[0]

    @property
    def b(self) -> int:
        return self.coeffs[1]

    def ch(self) -> ChernVector:
        if self.basis == "kappa":
            return ch_kappa(1) * self.a + ch_kappa(2) * self.b
        return self.to_c0().ch()

    def to_c0(self) -> KClassC0:
        if self.basis != "kappabar":
            raise LatticeError("only kappabar classes live in the Clifford lattice")
        return KAPPABAR1 * self.a + KAPPABAR2 * self.b

    def __add__(self, other):
        _same(self, other)
        return KClassKu((self.a + other.a, self.b + other.b), self.basis)

    def __sub__(self, other):
        _same(self, other)
        return KClassKu((self.a - other.a, self.b - other.b), self.basis)

    def __neg__(self):
        return KClassKu((-self.a, -self.b), self.basis)

    def to_json(self) -> dict:
        return {"basis": self.basis, "coeffs": list(self.coeffs)}


def _same(u: KClassKu, w: KClassKu):
    if u.basis != w.basis:
        raise LatticeError(f"basis mismatch: {u.basis} vs {w.basis}")


KAPPABAR1 = KClassC0((0, 1, -3, 1))
KAPPABAR2 = KClassC0((-1, 4, -4, 1))


def kappa(a: int, b: int) -> KClassKu:
    return KClassKu((a, b), "kappa")


def kappabar(a: int, b: int) -> KClassKu:
    return KClassKu((a, b), "kappabar")


def kubar_coords(v: KClassC0) -> KClassKu:
    """Express a class of the Clifford Ku span in the kappabar basis."""
    if not in_ku_c0(v):
        raise LatticeError(f"{v.coeffs} is not in the Kuznetsov span")
    # kappabar_1 has zero C_-1 coordinate, kappabar_2 has -1
    b = -v.coeffs[0]
    a = v.coeffs[1] - 4 * b
    w = KAPPABAR1 * a + KAPPABAR2 * b
    if w != v:
        raise LatticeError(f"{v.coeffs} is not an integral kappabar combination")
    return kappabar(a, b)


def chi_c0(u: KClassC0, w: KClassC0) -> int:
    G = gram_c0(3)
    return int(sum(u.coeffs[i] * G[i][j] * w.coeffs[j] for i in range(4) for j in range(4)))


def in_ku_c0(v: KClassC0) -> bool:
    """Right orthogonality to [C_1] and [C_2]."""
    return chi_c0(KClassC0.basis(1), v) == 0 and chi_c0(KClassC0.basis(2), v) == 0


# ---------------------------------------------------------------------------
# exceptional objects and mutations


@dataclass(frozen=True)
class ExceptionalRecord:
    label: str
    ch: ChernVector

    def check(self) -> "ExceptionalRecord":
        chi = euler_pairing(self.ch, self.ch, genuine=True)
        if chi != 1:
            raise LatticeError(f"{self.label} has chi(E,E) = {chi}, not exceptional")
        return self


def o_y(i: int) -> ExceptionalRecord:
    return ExceptionalRecord(f"O_Y({i})", ch_line(i, Y5))


def clifford_record(j: int) -> ExceptionalRecord:
    return ExceptionalRecord(f"C_{j}", ch_clifford(j, 3))


def mutate_left_k(e: ExceptionalRecord, f: ChernVector) -> ChernVector:
    """[L_E F] = [F] - chi(E, F) [E]."""
    return f - e.ch * euler_pairing(e.ch, f)


def mutate_right_k(e: ExceptionalRecord, f: ChernVector) -> ChernVector:
    """[R_E F] = [F] - chi(F, E) [E]."""
    return f - e.ch * euler_pairing(f, e.ch)


def shift(v, k: int):
    return v if k % 2 == 0 else -v


def ch_ideal_plane(k: int = 0) -> ChernVector:
    """ch of I_Pi(k) for a plane Pi in Y_5."""
    return (1 - ch_plane_in_y()).twist(k)


def project_ku_y(f: ChernVector) -> KClassKu:
    """Class of pr_Y(F) = R_{O(-1)} R_{O(-2)} L_O L_{O(1)} F in the kappa basis."""
    if f.variety != Y5:
        raise ValueError("projection is defined on the cubic fivefold")
    g = mutate_left_k(o_y(1), f)
    g = mutate_left_k(o_y(0), g)
    g = mutate_right_k(o_y(-2), g)
    g = mutate_right_k(o_y(-1), g)
    k1, k2 = ch_kappa(1), ch_kappa(2)
    # two unknowns from the H^0, H^1 coefficients, then check the rest
    a, b = solve_rational([[k1[0], k2[0]], [k1[1], k2[1]]], [g[0], g[1]])
    if any(x.denominator != 1 for x in (a, b)) or k1 * a + k2 * b != g:
        raise LatticeError("not in Kuznetsov component lattice")
    return kappa(int(a), int(b))


# ---------------------------------------------------------------------------
# Clifford side functors


def twist_c0(v: KClassC0, k: int) -> KClassC0:
    """Tensor over C_0 with C_k, sending [C_j] to [C_{j+k}]."""
    out = ChernVector(CL3, [0, 0, 0, 0])
    for j, c in zip(clifford_window(3), v.coeffs):
        if c:
            out = out + ch_clifford(j + k, 3) * c
    return KClassC0.from_ch(out)


def tensor_c1(v: KClassC0) -> KClassC0:
    return twist_c0(v, 1)


def rotation_ku_c0(v: KClassC0) -> KClassC0:
    """K-shadow of O = L_{C_1}(- tensor C_1) on the Kuznetsov span."""
    if not in_ku_c0(v):
        raise LatticeError(f"{v.coeffs} is not in the Kuznetsov span")
    w = tensor_c1(v)
    return KClassC0.from_ch(mutate_left_k(clifford_record(1), w.ch()))


def serre_db_c0(v: KClassC0) -> KClassC0:
    """K-shadow of S = (- tensor C_-2)[3]."""
    return -twist_c0(v, -2)


# ---------------------------------------------------------------------------
# rank-2 lattice dynamics

M_S = ((0, -1), (1, 1))
M_O = ((-1, -1), (1, 0))
# on the Clifford Kuznetsov lattice the Serre and rotation functors are
# listed with the same matrix
M_S_BAR = M_S
M_O_BAR = M_S
EULER_KU = ((-1, -1), (0, -1))


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def mat_pow(A, n: int):
    out = ((1, 0), (0, 1))
    for _ in range(n):
        out = mat_mul(out, A)
    return out


def mat_apply(A, v: KClassKu) -> KClassKu:
    a, b = v.coeffs
    return KClassKu((A[0][0] * a + A[0][1] * b, A[1][0] * a + A[1][1] * b), v.basis)


def serre_ku_y(v: KClassKu) -> KClassKu:
    return mat_apply(M_S, v)


def rotation_ku_y(v: KClassKu) -> KClassKu:
    return mat_apply(M_O, v)


def serre_ku_c0(v: KClassKu) -> KClassKu:
    return mat_apply(M_S_BAR, v)


def euler_ku(u: KClassKu, w: KClassKu) -> int:
    return -u.a * w.a - u.a * w.b - u.b * w.b


def norm_form(v: KClassKu) -> int:
    return v.a * v.a + v.a * v.b + v.b * v.b


def wedge(u: KClassKu, w: KClassKu) -> int:
    return u.a * w.b - u.b * w.a


def norm_sq(v: KClassKu) -> int:
    return v.a * v.a + v.b * v.b


def serre_orbit(v: KClassKu) -> list[KClassKu]:
    if v.coeffs == (0, 0):
        raise ValueError("zero class has no orbit")
    out = [v]
    w = v
    for _ in range(12):
        w = mat_apply(M_S, w)
        if w == v:
            return out
        out.append(w)
    raise LatticeError("Serre matrix orbit exceeded 12 steps")


class PickError(ArithmeticError):
    pass


def pick_candidates(v: KClassKu) -> list[KClassKu]:
    """All v_- with |v_-|, |v - v_-| < |v| and v_- wedge v = 1."""
    return [KClassKu(c, v.basis) for c in _core.pick_candidates(v.a, v.b)]


def pick_decompose(v: KClassKu) -> tuple[KClassKu, KClassKu]:
    g = math.gcd(v.a, v.b)
    if g != 1:
        raise PickError(f"not primitive (gcd {g})")
    cands = pick_candidates(v)
    if len(cands) != 1:
        raise PickError(f"expected a unique decomposition of {v.coeffs}, found {len(cands)}")
    vm = cands[0]
    vp = v - vm
    if wedge(vm, vp) != 1 or not (norm_sq(vm) < norm_sq(v) and norm_sq(vp) < norm_sq(v)):
        raise PickError("decomposition failed its own checks")
    if vm.a * vp.a + vm.b * vp.b < 0:
        raise PickError("angle between the parts exceeds pi/2")
    return vm, vp


@dataclass
class PickNode:
    v: KClassKu
    chi: int | None = None
    minus: "PickNode | None" = None
    plus: "PickNode | None" = None
    orbit: str | None = None

    @property
    def is_leaf(self) -> bool:
        return self.minus is None

    def leaves(self):
        if self.is_leaf:
            yield self
        else:
            yield from self.minus.leaves()
            yield from self.plus.leaves()

    def internal(self):
        if not self.is_leaf:
            yield self
            yield from self.minus.internal()
            yield from self.plus.internal()

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"v": list(self.v.coeffs), "leaf": True, "orbit": self.orbit}
        return {
            "v": list(self.v.coeffs),
            "chi_plus_minus": self.chi,
            "minus": self.minus.to_json(),
            "plus": self.plus.to_json(),
        }


def base_orbit_tag(v: KClassKu) -> str | None:
    base = {"kappa2-orbit": kappa(0, 1), "kappa1+kappa2-orbit": kappa(1, 1)}
    w = KClassKu(v.coeffs, "kappa")
    for tag, b in base.items():
        if w in serre_orbit(b):
            return tag
    return None


def nonempty_tree(v: KClassKu) -> PickNode:
    if v.coeffs == (0, 0):
        raise PickError("zero class")
    g = math.gcd(v.a, v.b)
    if g != 1:
        raise PickError(f"not primitive (gcd {g})")
    if norm_form(v) in (1, 3):
        return PickNode(v, orbit=base_orbit_tag(v))
    vm, vp = pick_decompose(v)
    chi = euler_ku(vp, vm)
    if chi >= 0:
        raise PickError(f"chi(v+, v-) = {chi} is not negative at {v.coeffs}")
    return PickNode(v, chi=chi, minus=nonempty_tree(vm), plus=nonempty_tree(vp))


def format_tree(node: PickNode, indent: str = "") -> list[str]:
    v = node.v.coeffs
    if node.is_leaf:
        return [f"{indent}leaf ({v[0]},{v[1]}) norm {norm_form(node.v)} {node.orbit}"]
    lines = [f"{indent}node ({v[0]},{v[1]}) chi(v+,v-) = {node.chi}"]
    lines += format_tree(node.minus, indent + "  - ")
    lines += format_tree(node.plus, indent + "  + ")
    return lines
