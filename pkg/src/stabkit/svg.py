"""Hand-written SVG for the hexagonal lattice and the (xi, eta) chart.

Output is a pure function of the inputs: coordinates are rendered with a
fixed number of decimals and elements are emitted in a fixed order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

from .numerics import Q, QuadExt

WIDTH, HEIGHT, MARGIN = 640, 480, 40


def _num(x) -> str:
    s = f"{float(x):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _header(w: int, h: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]


def _dot(x, y, label: str | None, dx=6, dy=-6) -> list[str]:
    out = [f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3" fill="black"/>']
    if label:
        out.append(f'<text x="{_num(x + dx)}" y="{_num(y + dy)}">{escape(label)}</text>')
    return out


# ---------------------------------------------------------------------------
# hexagonal lattice

HEX_LABELS = [
    ((1, 0), "kappa1 = [F_Pi]"),
    ((0, 1), "kappa2 = [P_Pi]"),
    ((-1, 1), "kappa2 - kappa1"),
    ((-1, 0), "-kappa1"),
    ((0, -1), "-kappa2"),
    ((1, -1), "kappa1 - kappa2 = [K_Pi]"),
]


def hex_position(a: int, b: int):
    """a kappa1 + b kappa2 with kappa1 = 1 and kappa2 = e^{i pi/3}, exactly."""
    s3 = QuadExt.sqrt(3)
    return Fraction(2 * a + b, 2), s3 * Fraction(b, 2)


def hexagon_svg(radius: int = 2) -> str:
    size = 480
    scale = 80
    cx = cy = size // 2

    def px(a, b):
        x, y = hex_position(a, b)
        return cx + scale * float(x), cy - scale * float(y)

    out = _header(size, size)
    out.append('<g stroke="gray" stroke-dasharray="4 3">')
    for a, b in ((radius + 1, 0), (0, radius + 1), (-(radius + 1), radius + 1)):
        x, y = px(a, b)
        out.append(f'<line x1="{cx}" y1="{cy}" x2="{_num(x)}" y2="{_num(y)}"/>')
    out.append("</g>")
    labels = dict(HEX_LABELS)
    pts = sorted((a, b) for a in range(-2 * radius, 2 * radius + 1)
                 for b in range(-2 * radius, 2 * radius + 1)
                 if max(abs(a), abs(b), abs(a + b)) <= radius)
    for a, b in pts:
        x, y = px(a, b)
        out.extend(_dot(x, y, labels.get((a, b))))
    # S turns by pi/3, O by 2pi/3
    for r, sweep, name in ((52, 60, "S"), (24, 120, "O")):
        t = math.radians(sweep)
        x2, y2 = cx + r * math.cos(t), cy - r * math.sin(t)
        out.append(f'<path d="M {cx + r} {cy} A {r} {r} 0 0 0 {_num(x2)} {_num(y2)}" '
                   'fill="none" stroke="black"/>')
        lx, ly = cx + (r + 10) * math.cos(t / 2), cy - (r + 10) * math.sin(t / 2)
        out.append(f'<text x="{_num(lx)}" y="{_num(ly)}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# the (xi, eta) chart


@dataclass
class ChartView:
    xi_lo: Fraction = Fraction(-3, 4)
    xi_hi: Fraction = Fraction(3, 4)
    eta_lo: Fraction = Fraction(-1, 16)
    eta_hi: Fraction = Fraction(5, 16)

    def __post_init__(self):
        for k in ("xi_lo", "xi_hi", "eta_lo", "eta_hi"):
            setattr(self, k, Q(getattr(self, k)))
        if not (self.xi_lo < self.xi_hi and self.eta_lo < self.eta_hi):
            raise ValueError("plot window must have positive width and height")

    def px(self, xi, eta):
        w, h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
        x = MARGIN + w * (float(xi) - float(self.xi_lo)) / float(self.xi_hi - self.xi_lo)
        y = HEIGHT - MARGIN - h * (float(eta) - float(self.eta_lo)) / float(self.eta_hi - self.eta_lo)
        return x, y


@dataclass
class Overlay:
    points: list = field(default_factory=list)  # (label, xi, eta)
    walls: list = field(default_factory=list)   # (label, (xi1, eta1), (xi2, eta2))
    rays: list = field(default_factory=list)    # (label, (xi, eta), (dxi, deta))


def _clip_segment(view: ChartView, p, q):
    """Liang-Barsky clip of the float segment pq to the view rectangle."""
    x0, y0 = float(p[0]), float(p[1])
    dx, dy = float(q[0]) - x0, float(q[1]) - y0
    t0, t1 = 0.0, 1.0
    for d, lo, hi, v in ((dx, float(view.xi_lo), float(view.xi_hi), x0),
                         (dy, float(view.eta_lo), float(view.eta_hi), y0)):
        if d == 0:
            if v < lo or v > hi:
                return None
            continue
        a, b = (lo - v) / d, (hi - v) / d
        if a > b:
            a, b = b, a
        t0, t1 = max(t0, a), min(t1, b)
        if t0 > t1:
            return None
    return (x0 + t0 * dx, y0 + t0 * dy), (x0 + t1 * dx, y0 + t1 * dy)


def parabola_path(view: ChartView, a, b) -> str:
    """eta = xi^2/2 on [a, b] as one quadratic Bezier (exact for a parabola)."""
    a, b = Q(a), Q(b)
    p0 = view.px(a, a * a / 2)
    c = view.px((a + b) / 2, a * b / 2)
    p2 = view.px(b, b * b / 2)
    return (f'<path d="M {_num(p0[0])} {_num(p0[1])} Q {_num(c[0])} {_num(c[1])} '
            f'{_num(p2[0])} {_num(p2[1])}" fill="none" stroke="black" stroke-width="1.5"/>')


def xieta_svg(overlay: Overlay | None = None, view: ChartView | None = None) -> str:
    overlay = overlay or Overlay()
    view = view or ChartView()
    out = _header(WIDTH, HEIGHT)
    out.append(f'<clipPath id="chart"><rect x="{MARGIN}" y="{MARGIN}" '
               f'width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}"/></clipPath>')
    out.append('<g stroke="gray">')
    if view.eta_lo <= 0 <= view.eta_hi:
        x1, y = view.px(view.xi_lo, 0)
        x2, _ = view.px(view.xi_hi, 0)
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y)}" x2="{_num(x2)}" y2="{_num(y)}"/>')
    if view.xi_lo <= 0 <= view.xi_hi:
        x, y1 = view.px(0, view.eta_lo)
        _, y2 = view.px(0, view.eta_hi)
        out.append(f'<line x1="{_num(x)}" y1="{_num(y1)}" x2="{_num(x)}" y2="{_num(y2)}"/>')
    out.append("</g>")
    lx, ly = view.px(view.xi_hi, 0)
    out.append(f'<text x="{_num(lx - 14)}" y="{_num(ly + 14)}">xi</text>')
    tx, ty = view.px(0, view.eta_hi)
    out.append(f'<text x="{_num(tx + 6)}" y="{_num(ty + 12)}">eta</text>')
    out.append('<g clip-path="url(#chart)">')
    out.append(parabola_path(view, view.xi_lo, view.xi_hi))
    for label, p, q in overlay.walls:
        seg = _clip_segment(view, p, q)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (view.px(*seg[0]), view.px(*seg[1]))
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                   f'stroke="firebrick" stroke-width="1.5"><title>{escape(label)}</title></line>')
    for label, start, direction in overlay.rays:
        span = float(view.xi_hi - view.xi_lo) + float(view.eta_hi - view.eta_lo)
        end = (float(start[0]) + span * float(direction[0]), float(start[1]) + span * float(direction[1]))
        seg = _clip_segment(view, start, end)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (view.px(*seg[0]), view.px(*seg[1]))
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                   f'stroke="steelblue" stroke-width="2"/>')
        out.append(f'<text x="{_num(x2 + 4)}" y="{_num(y2 - 6)}" fill="steelblue">{escape(label)}</text>')
    out.append("</g>")
    for label, xi, eta in overlay.points:
        if not (view.xi_lo <= xi <= view.xi_hi and view.eta_lo <= eta <= view.eta_hi):
            continue
        x, y = view.px(xi, eta)
        out.extend(_dot(x, y, f"{label} ({xi}, {eta})"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


ELL0 = ("ell0", (Fraction(-1, 4), Fraction(1, 32)), (-1, 0))
