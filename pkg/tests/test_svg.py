import re
import xml.etree.ElementTree as ET
from fractions import Fraction as F

from hypothesis import given

from conftest import rationals
from stabkit import svg

NS = "{http://www.w3.org/2000/svg}"


def test_hexagon_is_well_formed():
    text = svg.hexagon_svg()
    root = ET.fromstring(text.encode())
    assert root.tag == NS + "svg"
    assert len(root.findall(f"{NS}circle")) == 19
    labels = [t.text for t in root.iter(NS + "text")]
    assert "kappa1 = [F_Pi]" in labels and "S" in labels and "O" in labels
    assert svg.hexagon_svg() == text


def test_hex_positions_are_exact():
    x, y = svg.hex_position(0, 1)
    assert x == F(1, 2) and y * y == F(3, 4)


def test_xieta_chart():
    ov = svg.Overlay(points=[("C0", F(-1, 4), F(1, 32)), ("far", F(5), F(5))],
                     walls=[("w", (F(-1, 4), F(1, 32)), (F(1, 4), F(1, 32)))],
                     rays=[svg.ELL0])
    text = svg.xieta_svg(ov)
    root = ET.fromstring(text.encode())
    assert len(root.findall(f"{NS}circle")) == 1  # the far point is off the view
    assert "ell0" in text and "<title>w</title>" in text


def test_parabola_bezier_midpoint_is_exact():
    # the curve point at t = 1/2 is (P0 + 2C + P2)/4 and lies on eta = xi^2/2
    for a, b in ((F(-3, 4), F(3, 4)), (F(-1), F(1, 3)), (F(0), F(2))):
        c = ((a + b) / 2, a * b / 2)
        mx = (a + 2 * c[0] + b) / 4
        my = (a * a / 2 + 2 * c[1] + b * b / 2) / 4
        assert my == mx * mx / 2


@given(rationals(), rationals())
def test_bezier_control_point_gives_tangents(a, b):
    # control point is the intersection of the tangents at both ends
    if a == b:
        return
    cx, cy = (a + b) / 2, a * b / 2
    assert cy == a * a / 2 + a * (cx - a)
    assert cy == b * b / 2 + b * (cx - b)


def test_parabola_path_format():
    path = svg.parabola_path(svg.ChartView(), F(-3, 4), F(3, 4))
    assert re.match(r'<path d="M [\d.]+ [\d.]+ Q [\d.]+ [\d.]+ [\d.]+ [\d.]+"', path)


def test_clip_segment():
    view = svg.ChartView()
    assert svg._clip_segment(view, (F(-5), F(1, 32)), (F(5), F(1, 32))) == ((-0.75, 0.03125), (0.75, 0.03125))
    assert svg._clip_segment(view, (F(5), F(5)), (F(6), F(6))) is None
