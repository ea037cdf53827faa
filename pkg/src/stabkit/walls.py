"""Numerical walls and brute-force destabiliser search.

Candidates are sub-characters w = sum c_j [C_j] with |c_j| <= bound.  The
enumeration runs on scaled integers in the compiled kernel (or its Python
twin); every survivor is then rechecked with exact rationals here.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import _core
from .knum import KClassC0
from .numerics import Q, QuadExt
from .tilt import BETA0, TiltParam, Trunc, delta_c0, nu, trunc


# ---------------------------------------------------------------------------
# helpers


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        raw = os.environ.get("STABKIT_THREADS", "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise ValueError(f"STABKIT_THREADS must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ValueError("thread count must be nonnegative")
    return threads or (os.cpu_count() or 1)


def as_lattice(target) -> KClassC0:
    if isinstance(target, KClassC0):
        return target
    return KClassC0.from_ch(target)


def basis_truncs(beta) -> list[Trunc]:
    return [trunc(KClassC0.basis(j).ch(), beta) for j in (-1, 0, 1, 2)]


def lattice_trunc(v: KClassC0, table: list[Trunc]) -> Trunc:
    out = Trunc(0, 0, 0)
    for c, t in zip(v.coeffs, table):
        if c:
            out = out + t * c
    return out


def _scaled(table: list[Trunc], target: Trunc):
    den = 1
    for t in table + [target]:
        for v in t.as_tuple():
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [tuple(int(v * den) for v in t.as_tuple()) for t in table]
    return ints, tuple(int(v * den) for v in target.as_tuple())


def _partitions(bound: int, n: int):
    vals = list(range(-bound, bound + 1))
    n = max(1, min(n, len(vals)))
    size = -(-len(vals) // n)
    return [(vals[i], vals[min(i + size, len(vals)) - 1]) for i in range(0, len(vals), size)]


def _run_scan(table, target, bound, mode, threads):
    ints, tint = _scaled(table, target)
    parts = _partitions(bound, thread_count(threads))
    if len(parts) == 1:
        chunks = [_core.scan_box(ints, tint, bound, *parts[0], mode)]
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            chunks = list(pool.map(lambda p: _core.scan_box(ints, tint, bound, p[0], p[1], mode), parts))
    out = []
    for ch in chunks:
        out.extend(ch)
    return sorted(out)


# ---------------------------------------------------------------------------
# fixed-beta destabiliser search


@dataclass(frozen=True)
class DestabCandidate:
    sub: KClassC0
    quotient: KClassC0
    constraints_report: dict = field(compare=False, hash=False)

    def key(self):
        return (self.sub.coeffs, self.quotient.coeffs)


def _canonical(sub: KClassC0, quot: KClassC0, ts: Trunc, tq: Trunc, bound: int):
    """Pick one orientation of a sub/quotient pair.

    Only pairs whose swap is itself inside the search box can appear twice,
    so other pairs keep the orientation they were enumerated in.
    """
    if max(abs(c) for c in quot.coeffs) > bound:
        return sub, quot
    if (ts.r > 0) != (tq.r > 0):
        return (sub, quot) if ts.r > 0 else (quot, sub)
    return (sub, quot) if sub.coeffs <= quot.coeffs else (quot, sub)


def destabilizer_search(target, beta, bound: int, threads: int | None = None):
    """Walls on the vertical line beta = const, as (alpha^2, candidate) pairs."""
    beta = Q(beta)
    if bound < 1:
        return []
    tv = as_lattice(target)
    table = basis_truncs(beta)
    tt = lattice_trunc(tv, table)
    if tt.x <= 0:
        return []
    raw = _run_scan(table, tt, bound, 1, threads)
    seen = {}
    for cs in raw:
        sub = KClassC0(cs)
        quot = tv - sub
        ts, tq = lattice_trunc(sub, table), lattice_trunc(quot, table)
        den = tt.r * ts.x - ts.r * tt.x
        num = tt.y * ts.x - ts.y * tt.x
        a2 = 2 * num / den
        # exact recheck of everything the integer kernel filtered on
        if not (a2 > 0 and 0 < ts.x < tt.x):
            raise AssertionError(f"kernel survivor {cs} fails exact recheck")
        p = TiltParam(a2, beta)
        if not (nu(ts, p) == nu(tt, p) == nu(tq, p)):
            raise AssertionError(f"tilt mismatch at {cs}")
        dsub, dquot = delta_c0(ts), delta_c0(tq)
        if dsub < 0 or dquot < 0:
            raise AssertionError(f"discriminant violation at {cs}")
        s, q = _canonical(sub, quot, ts, tq, bound)
        if (s.coeffs, q.coeffs) in seen:
            continue
        s_t = lattice_trunc(s, table)
        q_t = lattice_trunc(q, table)
        report = {
            "alpha_sq": a2,
            "im_sub": s_t.x,
            "im_target": tt.x,
            "delta_sub": delta_c0(s_t),
            "delta_quot": delta_c0(q_t),
            "trunc_sub": s_t.as_tuple(),
            "trunc_quot": q_t.as_tuple(),
            "active": [n for n, v in (("delta_sub", delta_c0(s_t)), ("delta_quot", delta_c0(q_t))) if v == 0],
        }
        seen[(s.coeffs, q.coeffs)] = (a2, DestabCandidate(s, q, report))
    return sorted(seen.values(), key=lambda r: (r[0], r[1].key()))


def group_by_alpha(results) -> dict:
    out: dict = {}
    for a2, cand in results:
        out.setdefault(a2, []).append(cand)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# walls in the (xi, eta) plane


class NoWall(ValueError):
    pass


@dataclass
class Wall:
    """A numerical wall: the part above Gamma of a line in the chart.

    ``line`` is (A, B, C) normalised so that A xi + B eta + C = 0.
    """

    line: tuple
    endpoints: tuple
    realizers: list = field(default_factory=list)
    segment: tuple | None = None  # admissible xi-range (lo, hi) after clipping

    @property
    def vertical(self) -> bool:
        return self.line[1] == 0

    @property
    def slope(self):
        A, B, _ = self.line
        return None if B == 0 else -A / B

    @property
    def intercept(self):
        A, B, C = self.line
        return None if B == 0 else -C / B

    def eta_at(self, xi):
        return self.slope * xi + self.intercept

    def alpha_sq_at(self, beta):
        """alpha^2 of the wall on the vertical line beta, or None."""
        xi = Q(beta) - BETA0
        if self.vertical:
            return None
        eta = self.eta_at(xi)
        a2 = 2 * eta - xi * xi
        return a2 if a2 > 0 else None

    def key(self):
        return self.line


def _normalise(A, B, C):
    lead = next(v for v in (B, A, C) if v != 0)
    return (A / lead, B / lead, C / lead)


def _line_through(tt: Trunc, tw: Trunc):
    # projective points [r : x : y]; the line C + A xi + B eta = 0
    C = tt.x * tw.y - tt.y * tw.x
    A = tt.y * tw.r - tt.r * tw.y
    B = tt.r * tw.x - tt.x * tw.r
    if A == 0 and B == 0:
        raise NoWall("no wall: characters are proportional")
    return _normalise(A, B, C)


def _gamma_ends(line):
    A, B, C = line
    if B == 0:
        xi0 = -C / A
        return ((xi0, xi0 * xi0 / 2), (None, None))
    m, c = -A / B, -C / B
    D = m * m + 2 * c
    if D <= 0:
        return None
    r = QuadExt.sqrt(D)
    hi, lo = m + r, m - r
    return ((_s(hi), _s(hi * m + c)), (_s(lo), _s(lo * m + c)))


def _s(x):
    return x.a if isinstance(x, QuadExt) and x.is_rational else x


def numerical_wall_line(target, w) -> Wall:
    tt = trunc(target) if not isinstance(target, Trunc) else target
    tw = trunc(w) if not isinstance(w, Trunc) else w
    line = _line_through(tt, tw)
    ends = _gamma_ends(line)
    return Wall(line, ends if ends is not None else (None, None))


class _Range:
    """An interval of xi with open/closed ends over Fraction/QuadExt."""

    def __init__(self):
        self.lo, self.lo_open = None, True
        self.hi, self.hi_open = None, True

    def lower(self, v, strict):
        if self.lo is None or v > self.lo or (v == self.lo and strict):
            self.lo, self.lo_open = v, strict

    def upper(self, v, strict):
        if self.hi is None or v < self.hi or (v == self.hi and strict):
            self.hi, self.hi_open = v, strict

    def linear(self, a, b, strict):
        """Impose a + b xi > 0 (or >= 0)."""
        if b == 0:
            ok = a > 0 if strict else a >= 0
            if not ok:
                self.lo, self.hi, self.lo_open, self.hi_open = 1, 0, False, False
            return
        root = -Fraction(a) / b
        if b > 0:
            self.lower(root, strict)
        else:
            self.upper(root, strict)

    def nonempty(self):
        if self.lo is None or self.hi is None:
            return True
        if self.lo < self.hi:
            return True
        return self.lo == self.hi and not self.lo_open and not self.hi_open


@dataclass(frozen=True)
class Window:
    xi_lo: Fraction
    xi_hi: Fraction
    eta_lo: Fraction
    eta_hi: Fraction

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [Q(p.strip()) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("window needs xi_lo,xi_hi,eta_lo,eta_hi")
        return cls(*parts)

    def is_empty(self) -> bool:
        return self.xi_lo > self.xi_hi or self.eta_lo > self.eta_hi


@dataclass
class WallReport:
    target: KClassC0
    window: Window
    bound: int
    walls: list
    chambers: list

    def rows(self):
        for w in self.walls:
            lo, hi = w.segment
            xi = (QuadExt.lift(lo) + hi) * Fraction(1, 2)
            beta = xi + BETA0
            a2 = (QuadExt.lift(w.eta_at(xi)) * 2 - xi * xi) if not w.vertical else None
            for c in w.realizers:
                yield beta, a2, c


def wall_scan(target, window: Window, bound: int, threads: int | None = None) -> WallReport:
    tv = as_lattice(target)
    if window.is_empty() or bound < 1:
        return WallReport(tv, window, bound, [], [])
    table = basis_truncs(BETA0)
    tt = lattice_trunc(tv, table)
    raw = _run_scan(table, tt, bound, 0, threads)
    walls: dict = {}
    for cs in raw:
        sub = KClassC0(cs)
        quot = tv - sub
        ts, tq = lattice_trunc(sub, table), lattice_trunc(quot, table)
        s, q = _canonical(sub, quot, ts, tq, bound)
        if s != sub:
            continue
        seg = _clip(tt, ts, window)
        if seg is None:
            continue
        line = _line_through(tt, ts)
        wall = walls.get(line)
        if wall is None:
            wall = Wall(line, _gamma_ends(line), [], seg)
            walls[line] = wall
        report = {"delta_sub": delta_c0(ts), "delta_quot": delta_c0(tq),
                  "trunc_sub": ts.as_tuple(), "trunc_quot": tq.as_tuple()}
        wall.realizers.append(DestabCandidate(s, q, report))
    ordered = sorted(walls.values(), key=lambda w: _order_key(w, tt))
    for w in ordered:
        w.realizers.sort(key=lambda c: c.key())
    chambers = [(i, i + 1) for i in range(len(ordered) - 1)]
    return WallReport(tv, window, bound, ordered, chambers)


def _order_key(w: Wall, tt: Trunc):
    A, B, C = w.line
    if tt.r == 0:
        return (0, -C / B if B else Fraction(0), A)
    # walls of a positive-rank class are lines through v(target): order by angle
    if B == 0:
        return (1, Fraction(0), Fraction(0))
    return (0, -A / B, C)


def _clip(tt: Trunc, ts: Trunc, win: Window):
    """Admissible xi-segment of the wall for sub-character ts, or None."""
    try:
        line = _line_through(tt, ts)
    except NoWall:
        return None
    A, B, C = line
    rng = _Range()
    rng.lower(win.xi_lo, False)
    rng.upper(win.xi_hi, False)
    # heart: 0 < Im(sub) < Im(target) where Im at xi is ch1 - xi ch0
    rng.linear(ts.x, -ts.r, True)
    rng.linear(tt.x - ts.x, -(tt.r - ts.r), True)
    if B == 0:
        xi0 = -C / A
        rng.lower(xi0, False)
        rng.upper(xi0, False)
        if not rng.nonempty():
            return None
        # eta runs over (xi0^2/2, inf) intersected with the window
        if win.eta_hi <= xi0 * xi0 / 2:
            return None
        return (xi0, xi0)
    m, c = -A / B, -C / B
    D = m * m + 2 * c
    if D <= 0:
        return None
    r = QuadExt.sqrt(D)
    rng.lower(_s(m - r), True)
    rng.upper(_s(m + r), True)
    # eta_lo <= m xi + c <= eta_hi
    rng.linear(c - win.eta_lo, m, False)
    rng.linear(win.eta_hi - c, -m, False)
    if not rng.nonempty():
        return None
    return (rng.lo, rng.hi)
