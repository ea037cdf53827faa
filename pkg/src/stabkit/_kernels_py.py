"""Pure-Python reference versions of the integer search kernels.

These mirror ``_kernels.pyx`` line for line and are used when the compiled
extension is unavailable or when intermediate values could overflow 64 bits.
"""

import math


def pick_candidates(a, b):
    """Lattice points v_- = (c, d) with v_- ^ v = 1 strictly inside the disk.

    For each abscissa c in the disk the wedge condition c*b - d*a = 1 fixes
    d, so the scan is exhaustive over the disk |v_-| < |v|.
    """
    n2 = a * a + b * b
    r = math.isqrt(n2)
    out = []
    for c in range(-r, r + 1):
        if a != 0:
            num = c * b - 1
            if num % a:
                continue
            ds = (num // a,)
        else:
            ds = range(-r, r + 1)
        for d in ds:
            if c * b - d * a != 1:
                continue
            if c * c + d * d >= n2:
                continue
            e, f = a - c, b - d
            if e * e + f * f >= n2:
                continue
            out.append((c, d))
    return out


def scan_box(table, target, bound, lo, hi, mode):
    """Integer prefilter for destabilising sub-characters.

    ``table`` holds the scaled (ch0, ch1, ch2) of the four basis classes and
    ``target`` the scaled character of the target.  ``mode`` 1 applies the
    fixed-beta heart and wall conditions, mode 0 only the two discriminant
    conditions and non-proportionality.
    """
    (r0, x0, y0), (r1, x1, y1), (r2, x2, y2), (r3, x3, y3) = table
    rt, xt, yt = target
    rng = range(-bound, bound + 1)
    out = []
    for c0 in range(lo, hi + 1):
        for c1 in rng:
            for c2 in rng:
                for c3 in rng:
                    r = c0 * r0 + c1 * r1 + c2 * r2 + c3 * r3
                    x = c0 * x0 + c1 * x1 + c2 * x2 + c3 * x3
                    y = c0 * y0 + c1 * y1 + c2 * y2 + c3 * y3
                    if mode == 1 and not (0 < x < xt):
                        continue
                    if x * x - 2 * r * y < 0:
                        continue
                    rq, xq, yq = rt - r, xt - x, yt - y
                    if xq * xq - 2 * rq * yq < 0:
                        continue
                    if mode == 1:
                        den = rt * x - r * xt
                        num = yt * x - y * xt
                        if den == 0 or num == 0 or (num > 0) != (den > 0):
                            continue
                    else:
                        if r == 0 and x == 0 and y == 0:
                            continue
                        if rq == 0 and xq == 0 and yq == 0:
                            continue
                        if rt * x - r * xt == 0 and rt * y - r * yt == 0 and xt * y - x * yt == 0:
                            continue
                    out.append((c0, c1, c2, c3))
    return out
