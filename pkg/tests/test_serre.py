from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import positive_rationals, rationals
from stabkit import serre
from stabkit.knum import M_S_BAR, kappabar, mat_apply
from stabkit.numerics import Angle, Phase, QuadExt
from stabkit.tilt import BETA0, TiltParam, in_region_v

S3 = serre.SQRT3
HALF = F(1, 2)
P = TiltParam(F(1, 100), BETA0)


def test_charge_determinant():
    for a2, b in ((F(1, 100), BETA0), (F(3), F(2, 7)), (F(1, 9), F(-3))):
        p = TiltParam(a2, b)
        assert serre.charge_matrix(p).det == 16 * a2 + 16 * (b + F(5, 4)) ** 2 + 7


@given(positive_rationals(), rationals())
def test_charge_determinant_closed_form(a2, beta):
    p = TiltParam(a2, beta)
    assert serre.charge_matrix(p).det == serre.z0_det_closed_form(p) >= 7


def test_hex_charge_values():
    Z = serre.hex_charge(P)
    assert Z.column(0) == (-HALF, S3 * HALF)
    assert Z.column(1) == (-1, 0)


@given(positive_rationals())
def test_gepner_rotation_for_every_alpha(a2):
    assert serre.gepner_rotation_check(serre.hex_charge(TiltParam(a2, BETA0)))


def test_rotation_fails_off_the_normalisation():
    assert not serre.gepner_rotation_check(serre.charge_matrix(P))
    assert not serre.gepner_rotation_check(serre.paper_labelled_charge())
    with pytest.raises(ValueError):
        serre.hex_normalizer(TiltParam(F(1, 100), F(-1)))


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_phase_jump_is_constant(a, b):
    assume((a, b) != (0, 0))
    assert serre.phase_jump(serre.hex_charge(P), kappabar(a, b)) == (F(1, 3), 1)


def test_phase_jump_zero_class():
    with pytest.raises(ValueError):
        serre.phase_jump(serre.hex_charge(P), kappabar(0, 0))


def test_branch_bookkeeping():
    assert serre.serre_branch() == 1
    assert 3 * (F(1, 3) + 2 * serre.serre_branch()) == 7
    with pytest.raises(ArithmeticError):
        serre.serre_branch(F(1, 4))


def test_serre_lift_cubes_to_shift_by_seven():
    g = serre.serre_gltilde()
    first = Phase.from_charge(HALF, S3 * HALF)  # phase 1/3
    assert g.g0() == Phase(first.angle, first.turns + 1)  # 7/3
    assert abs(float(g.g0()) - 7 / 3) < 1e-12
    c = g.compose(g).compose(g)
    assert c.M == ((-1, 0), (0, -1))
    assert c.g0() == Phase.half_integer(14)


def test_gltilde_is_periodic_and_increasing():
    g = serre.serre_gltilde()
    phis = [Phase(Angle(x, y), t) for (x, y) in ((1, 1), (1, -3), (-2, 1), (0, 1)) for t in (-1, 0, 2)]
    for phi in phis:
        assert g(phi.plus_one()) == g(phi).plus_one()
    phis.sort()
    vals = [g(phi) for phi in phis]
    assert all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))


def test_gltilde_inverse():
    for gt in (serre.serre_gltilde(), serre.square_shear(), serre.hex_normalizer(P)):
        inv = gt.inverse()
        zero = Phase.half_integer(0)
        assert inv(gt(zero)) == zero
        assert gt.compose(inv).M == serre.IDENTITY


mats = st.sampled_from([
    ((F(2), F(1)), (F(0), F(1))),
    ((F(1), F(-1)), (F(1), F(1))),
    ((F(0), F(-1)), (F(1), F(0))),
    ((F(3), F(0)), (F(1), F(1, 2))),
    serre.ROT60,
])


@given(mats, mats)
def test_gl_act_is_a_right_action(m1, m2):
    g, h = serre.GLTilde(m1), serre.GLTilde(m2)
    Z = serre.hex_charge(P)
    assert serre.gl_act(g.compose(h), Z).m == serre.gl_act(h, serre.gl_act(g, Z)).m


def test_serre_invariance_matrix_orientation():
    for a2 in (F(1, 100), F(1, 50), F(1, 17)):
        p = TiltParam(a2, BETA0)
        assert in_region_v(p)
        M = serre.serre_inv_matrix(p)
        assert serre.m_det(M) > 0


def test_shear_and_global_dimension():
    Z = serre.gl_act(serre.square_shear(), serre.hex_charge(P))
    assert Z.m == ((0, -1), (1, 0))
    assert serre.gldim_after(serre.square_shear()) == (True, True)
    assert serre.is_similarity(serre.ROT60)
    assert not serre.is_similarity(serre.square_shear().M)


def test_rotation_moves_charges_by_pi_over_3():
    Z = serre.hex_charge(P)
    for a, b in ((1, 0), (0, 1), (2, -5)):
        v = kappabar(a, b)
        z1, z2 = Z.of(v), Z.of(mat_apply(M_S_BAR, v))
        assert serre.m_vec(serre.ROT60, z1) == z2


def test_matrix_helpers():
    A = ((F(1), S3), (F(0), F(2)))
    assert serre.m_mul(A, serre.m_inv(A)) == serre.IDENTITY
    with pytest.raises(ZeroDivisionError):
        serre.m_inv(((F(1), F(2)), (F(2), F(4))))
    with pytest.raises(ValueError):
        serre.GLTilde(((F(0), F(1)), (F(1), F(0))))
    assert isinstance(serre.m_det(serre.ROT60), (F, QuadExt))
