import itertools
import os
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabkit import _core, _kernels_py, walls
from stabkit.knum import KClassC0
from stabkit.tilt import BETA0, TiltParam, Trunc, delta_c0, nu, trunc
from stabkit.walls import Window, destabilizer_search, group_by_alpha, wall_scan

PSI = KClassC0((1, -4, 4, -1))


def exact_search(target: KClassC0, beta, bound: int):
    """Unordered {sub, quotient} pairs found by direct rational arithmetic."""
    tt = trunc(target.ch(), beta)
    out = {}
    for cs in itertools.product(range(-bound, bound + 1), repeat=4):
        sub = KClassC0(cs)
        ts = trunc(sub.ch(), beta)
        tq = tt - ts
        if not 0 < ts.x < tt.x:
            continue
        if delta_c0(ts) < 0 or delta_c0(tq) < 0:
            continue
        den = tt.r * ts.x - ts.r * tt.x
        if den == 0:
            continue
        a2 = 2 * (tt.y * ts.x - ts.y * tt.x) / den
        if a2 <= 0:
            continue
        out[frozenset((sub.coeffs, (target - sub).coeffs))] = a2
    return out


def found(results):
    return {frozenset((c.sub.coeffs, c.quotient.coeffs)): a2 for a2, c in results}


def test_target_character():
    assert trunc(PSI.ch()).as_tuple() == (0, 4, 0)


def test_lemma_wall():
    res = group_by_alpha(destabilizer_search(PSI, BETA0, 5, threads=1))
    assert list(res) == [F(1, 16)]
    for c in res[F(1, 16)]:
        rep = c.constraints_report
        assert {rep["trunc_sub"], rep["trunc_quot"]} == {(8, 2, F(1, 4)), (-8, 2, F(-1, 4))}
        assert rep["alpha_sq"] == F(1, 16)


def test_no_walls_for_c1_and_for_bound_zero():
    assert destabilizer_search(KClassC0.basis(1), BETA0, 3) == []
    assert destabilizer_search(PSI, BETA0, 0) == []


@pytest.mark.parametrize("target", [PSI, KClassC0((0, 2, -1, 0)), KClassC0((1, 1, -2, 1)),
                                    KClassC0((0, 1, -3, 1)), KClassC0((2, -3, 0, 2))])
@pytest.mark.parametrize("beta", [BETA0, F(-1)])
def test_search_matches_rational_oracle(target, beta):
    assert found(destabilizer_search(target, beta, 2, threads=1)) == exact_search(target, beta, 2)


@pytest.mark.parametrize("bound", [2, 3, 5])
def test_walls_conserve_and_balance(bound):
    for a2, c in destabilizer_search(PSI, BETA0, bound):
        assert c.sub + c.quotient == PSI
        p = TiltParam(a2, BETA0)
        assert nu(c.sub.ch(), p) == nu(PSI.ch(), p) == nu(c.quotient.ch(), p)
        assert c.constraints_report["delta_sub"] >= 0 and c.constraints_report["delta_quot"] >= 0


def test_monotone_in_bound():
    target = KClassC0((1, 1, -2, 1))
    prev = set()
    for b in range(1, 5):
        now = set(group_by_alpha(destabilizer_search(target, BETA0, b)))
        assert prev <= now
        prev = now


def test_divisibility_of_surviving_characters():
    # every sub-character of (0, 4, 0) that survives has ch1 divisible by 2
    for _, c in destabilizer_search(PSI, BETA0, 5):
        assert c.constraints_report["trunc_sub"][1] % 2 == 0


def test_thread_count_does_not_change_results():
    one = destabilizer_search(PSI, BETA0, 4, threads=1)
    many = destabilizer_search(PSI, BETA0, 4, threads=8)
    assert [(a, c.key()) for a, c in one] == [(a, c.key()) for a, c in many]
    w = Window.parse("-1/2,1/2,0,1/32")
    r1, r8 = wall_scan(PSI, w, 5, threads=1), wall_scan(PSI, w, 5, threads=8)
    assert [(x.line, x.segment, [c.key() for c in x.realizers]) for x in r1.walls] == \
           [(x.line, x.segment, [c.key() for c in x.realizers]) for x in r8.walls]


def test_thread_env(monkeypatch):
    monkeypatch.setenv("STABKIT_THREADS", "3")
    assert walls.thread_count() == 3
    monkeypatch.setenv("STABKIT_THREADS", "many")
    with pytest.raises(ValueError):
        walls.thread_count()
    with pytest.raises(ValueError):
        walls.thread_count(-1)


int_rows = st.tuples(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))


@pytest.mark.skipif(_core.BACKEND != "cython", reason="compiled kernels not built")
@given(st.lists(int_rows, min_size=4, max_size=4), int_rows, st.sampled_from([0, 1]))
def test_compiled_kernel_matches_python(table, target, mode):
    py = _kernels_py.scan_box(table, target, 2, -2, 2, mode)
    assert _core.scan_box(table, target, 2, -2, 2, mode) == py
    assert _core.scan_box(table, target, 2, -2, 2, mode, force_python=True) == py


@pytest.mark.skipif(_core.BACKEND != "cython", reason="compiled kernels not built")
@given(st.integers(-60, 60), st.integers(-60, 60))
def test_compiled_pick_matches_python(a, b):
    from stabkit import _kernels
    assert sorted(_kernels.pick_candidates(a, b)) == sorted(_kernels_py.pick_candidates(a, b))


def test_pure_fallback_is_selectable():
    out = subprocess.run([sys.executable, "-c", "import stabkit._core as c; print(c.BACKEND)"],
                         env={**os.environ, "STABKIT_PURE": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


# ---------------------------------------------------------------------------
# walls in the chart


def test_wall_scan_window():
    rep = wall_scan(PSI, Window.parse("-1/2,1/2,0,1/32"), 5)
    assert len(rep.walls) == 1
    w = rep.walls[0]
    assert w.line == (0, 1, F(-1, 32))
    assert w.segment == (F(-1, 4), F(1, 4))
    assert w.eta_at(0) == F(1, 32)
    assert len(w.realizers) == 4
    for beta, a2, _ in rep.rows():
        assert (beta, a2) == (BETA0, F(1, 16))
    assert rep.chambers == []


def test_empty_window():
    rep = wall_scan(PSI, Window(F(1), F(0), F(0), F(1)), 5)
    assert rep.walls == []
    with pytest.raises(ValueError):
        Window.parse("1,2,3")


def test_numerical_wall_line():
    w = walls.numerical_wall_line(Trunc(0, 4, 0), Trunc(8, 2, F(1, 4)))
    assert w.line == (0, 1, F(-1, 32))
    (x1, y1), (x2, y2) = w.endpoints
    assert y1 == y2 == F(1, 32)
    assert x1 == F(1, 4) and x2 == F(-1, 4)
    assert w.alpha_sq_at(BETA0) == F(1, 16)
    with pytest.raises(walls.NoWall):
        walls.numerical_wall_line(Trunc(1, 2, 3), Trunc(2, 4, 6))


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_walls_of_positive_rank_class_pass_through_v(a, b, c, d):
    target = KClassC0((2, -3, 0, 2))
    tt = trunc(target.ch())
    sub = trunc(KClassC0((a, b, c, d)).ch())
    try:
        w = walls.numerical_wall_line(tt, sub)
    except walls.NoWall:
        return
    A, B, C = w.line
    assert A * (tt.x / tt.r) + B * (tt.y / tt.r) + C == 0
