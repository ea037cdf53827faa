"""The full numeric verification suite behind ``stabkit verify``.

Every check has a stable id.  Expected and computed values are rendered as
exact strings so that reports compare byte for byte.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import chow, knum, serre, tilt, walls
from .numerics import Phase, QuadExt, hs_exp, hs_inv

HRR_Y = "hrr_y"  # tag: depends on the Todd class of the cubic fivefold


@dataclass(frozen=True)
class Check:
    id: str
    desc: str
    expected: str
    computed: str
    passed: bool
    tags: frozenset = field(default=frozenset(), compare=False)

    def to_json(self) -> dict:
        return {"id": self.id, "desc": self.desc, "expected": self.expected,
                "computed": self.computed, "pass": self.passed}


@dataclass
class VerifyReport:
    checks: list

    @property
    def failures(self) -> int:
        return sum(not c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks], "failures": self.failures}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.id}: {c.desc}" for c in self.checks]
        out.append(f"{len(self.checks) - self.failures}/{len(self.checks)} checks passed")
        return out


def _s(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_s(y) for y in x) + ")"
    return str(x)


class _Suite:
    def __init__(self):
        self.checks: list[Check] = []

    def eq(self, cid, desc, expected, compute, tags=()):
        try:
            got = compute()
            ok = got == expected
            shown = _s(got)
        except Exception as exc:  # a crashing check is a failing check
            ok, shown = False, f"error: {type(exc).__name__}: {exc}"
        self.checks.append(Check(cid, desc, _s(expected), shown, ok, frozenset(tags)))

    def true(self, cid, desc, compute, expected_text="true", tags=()):
        try:
            got = compute()
            ok = got is True
            shown = "true" if ok else _s(got)
        except Exception as exc:
            ok, shown = False, f"error: {type(exc).__name__}: {exc}"
        self.checks.append(Check(cid, desc, expected_text, shown, ok, frozenset(tags)))


# ---------------------------------------------------------------------------
# samplers (seeded, so the report is reproducible)


def sample_region_v(n: int, seed: int) -> list[tilt.TiltParam]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        b = Fraction(-3, 2) + Fraction(rng.randint(1, 199), 400)
        m = min(b + Fraction(3, 2), -1 - b)
        a2 = m * m * Fraction(rng.randint(1, 99), 100)
        p = tilt.TiltParam(a2, b)
        if tilt.in_region_v(p):
            out.append(p)
    return out


def sample_params(n: int, seed: int) -> list[tilt.TiltParam]:
    rng = random.Random(seed)
    return [tilt.TiltParam(Fraction(rng.randint(1, 400), rng.randint(1, 97)),
                           Fraction(rng.randint(-400, 400), rng.randint(1, 97)))
            for _ in range(n)]


# ---------------------------------------------------------------------------
# the checks


def _lattice_checks(s: _Suite):
    s.eq("chow.gram.clifford3", "Gram matrix of C_-1..C_2 on P^3",
         ((1, 3, 7, 14), (0, 1, 3, 7), (-1, 0, 1, 3), (-3, -1, 0, 1)), lambda: chow.gram_c0(3))
    s.eq("chow.gram.clifford3.det", "unimodular Gram matrix on P^3", 1,
         lambda: chow.gram_det(chow.gram_c0(3)))
    s.eq("chow.gram.clifford2", "Gram matrix of C_0..C_2 on P^2",
         ((2, 3, 6), (3, 2, 3), (6, 3, 2)), lambda: chow.gram_c0(2))
    s.eq("chow.gram.clifford2.det", "determinant of the P^2 Gram matrix (full rank; the value 108 is not reproducible)",
         8, lambda: chow.gram_det(chow.gram_c0(2)))
    s.eq("chow.todd.y5", "Todd class of the cubic fivefold",
         (1, 2, Fraction(25, 12), Fraction(3, 2), Fraction(73, 90), Fraction(1, 3)),
         lambda: tuple(chow.todd(chow.Y5).coeffs), tags=(HRR_Y,))
    s.eq("knum.kappa.euler", "HRR Euler form on kappa_1, kappa_2", ((-1, -1), (0, -1)),
         lambda: tuple(tuple(chow.euler_pairing(chow.ch_kappa(i), chow.ch_kappa(j)) for j in (1, 2))
                       for i in (1, 2)), tags=(HRR_Y,))
    s.eq("chow.plane.grr", "character of a plane in Y5 agrees with the GRR oracle",
         chow.ch_plane_in_y(), lambda: chow.ch_linear_in_y(4), tags=(HRR_Y,))
    s.eq("chow.plane.chi", "chi(O_Pi, O_Y) and chi(O_Y, O_Pi)", (-3, 1),
         lambda: (chow.euler_pairing(chow.ch_plane_in_y(), 1), chow.euler_pairing(1, chow.ch_plane_in_y())),
         tags=(HRR_Y,))
    s.true("knum.kappabar.orthogonal", "kappabar_1, kappabar_2 are right orthogonal to C_1, C_2",
           lambda: all(knum.chi_c0(knum.KClassC0.basis(j), k) == 0
                       for j in (1, 2) for k in (knum.KAPPABAR1, knum.KAPPABAR2)))
    s.eq("knum.kappabar1.ch", "ch(kappabar_1) to order h^2", (-8, 8, -5),
         lambda: tuple(knum.KAPPABAR1.ch().coeffs[:3]))
    s.eq("knum.kappabar2.ch", "ch(kappabar_2) to order h^2", (0, -4, 5),
         lambda: tuple(knum.KAPPABAR2.ch().coeffs[:3]))


def _tilt_checks(s: _Suite):
    s.true("tilt.delta_c0.clifford", "modified discriminant vanishes on C_k, k in [-10, 10]",
           lambda: all(tilt.delta_c0(chow.ch_clifford(k)) == 0 for k in range(-10, 11)))
    s.eq("tilt.delta.c0c1", "ordinary discriminant of C_0 and C_1", (-48, -48),
         lambda: (tilt.delta(chow.ch_clifford(0)), tilt.delta(chow.ch_clifford(1))))
    pts = sample_params(25, 7)
    s.true("tilt.nu.closed_form", "closed form tilt of C_j, j in [-3, 4], at 25 rational points",
           lambda: all(tilt.nu(chow.ch_clifford(j), p) == tilt.nu_closed_form(j, p)
                       for p in pts for j in range(-3, 5)
                       if 4 * j - 8 * p.beta - 12 != 0))
    region = sample_region_v(25, 11)

    def chain():
        for p in region:
            n = [tilt.nu(chow.ch_clifford(j), p) for j in (-1, 0, 1, 2)]
            if not (n[0] < n[1] < 0 < n[2] < n[3]):
                return f"fails at {p}"
        return True

    s.true("tilt.nu.chain", "nu(C_-1[1]) < nu(C_0[1]) < 0 < nu(C_1) < nu(C_2) on 25 points of V", chain)

    def tensor_identity():
        e = hs_exp(Fraction(1, 2), 3)
        inv0 = hs_inv(chow.ch_clifford(0).series)
        c1 = chow.ch_clifford(1).series
        return all(chow.ch_clifford(j).series * c1 * inv0 == chow.ch_clifford(j).series * e
                   for j in (-1, 0, 1, 2))

    s.true("tilt.tensor_c1", "ch(v) ch(C_1) ch(C_0)^-1 = e^{h/2} ch(v) on the Clifford basis", tensor_identity)
    s.eq("tilt.v.c0", "v(C_0)", (Fraction(-1, 4), Fraction(1, 32)),
         lambda: tilt.v_point(chow.ch_clifford(0)).as_tuple())
    s.eq("tilt.v.c1", "v(C_1)", (Fraction(1, 4), Fraction(1, 32)),
         lambda: tilt.v_point(chow.ch_clifford(1)).as_tuple())
    s.true("tilt.ell0", "C_0 lies on ell_0 and C_1 does not",
           lambda: tilt.on_ell0(chow.ch_clifford(0)) and not tilt.on_ell0(chow.ch_clifford(1)))

    def gamma_b():
        for eq in (Fraction(1, 64), Fraction(1, 40), Fraction(1, 33)):
            Q_ = tilt.XiEta(Fraction(0), eq)
            P = tilt.XiEta(Fraction(1, 2), eq + Fraction(1, 8))
            for cs in ((0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 2, 0)):
                B = knum.KClassC0(cs).ch()
                n0 = tilt.nu_tilde(B, Q_)
                e1, _ = tilt.gamma_intersect(P, tilt.tensor_c1_ch(B))
                want = QuadExt.sqrt(n0 * n0 + 2 * eq) + (n0 + Fraction(1, 2))
                if QuadExt.lift(e1.xi) != want or not e1.on_gamma():
                    return f"mismatch for B = {cs}, eta = {eq}"
        return True

    def gamma_a():
        for eq in (Fraction(1, 40), Fraction(1, 33), Fraction(31, 1000)):
            Q_ = tilt.XiEta(Fraction(0), eq)
            P = tilt.XiEta(Fraction(1, 2), eq + Fraction(1, 8))
            for cs in ((3, -2, 0, 0), (2, -1, 0, 0), (4, -3, 0, 0)):
                A = knum.KClassC0(cs).ch()
                n0 = tilt.nu_tilde(A, Q_)
                _, e2 = tilt.gamma_intersect(P, tilt.tensor_c1_ch(A))
                r = QuadExt.sqrt(n0 * n0 + 2 * eq)
                xi = -r + (n0 + Fraction(1, 2))
                eta = (-r + n0) * (n0 + Fraction(1, 2)) + (eq + Fraction(1, 8))
                if QuadExt.lift(e2.xi) != xi or QuadExt.lift(e2.eta) != eta:
                    return f"mismatch for A = {cs}, eta = {eq}"
        return True

    s.true("tilt.gamma.b1", "xi(B_1) = nu0 + 1/2 + sqrt(nu0^2 + 2 eta0) in exact surds", gamma_b)
    s.true("tilt.gamma.a2", "coordinates of A_2 in exact surds", gamma_a)

    def lz19_b():
        for eq in (Fraction(1, 64), Fraction(1, 40), Fraction(1, 33)):
            Q_ = tilt.XiEta(Fraction(0), eq)
            P = tilt.XiEta(Fraction(1, 2), eq + Fraction(1, 8))
            for cs in ((0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 2, 0)):
                iv = tilt.lz19_bounds(P, Q_, tilt.tensor_c1_ch(knum.KClassC0(cs).ch()), "heart")
                if not iv.inside_open(1, 4):
                    return f"interval escapes (1/2, 2) for B = {cs}"
        return True

    s.true("tilt.lz19.b_case", "phase window of B tensor C_1 lies in (1/2, 2)", lz19_b)


def _functor_checks(s: _Suite):
    s.eq("knum.project.p_pi", "class of pr(I_Pi)", (0, 1),
         lambda: knum.project_ku_y(knum.ch_ideal_plane(0)).coeffs, tags=(HRR_Y,))
    s.eq("knum.project.f_pi", "class of pr(I_Pi(1))", (-1, 0),
         lambda: knum.project_ku_y(knum.ch_ideal_plane(1)).coeffs, tags=(HRR_Y,))

    def k_chain():
        g = knum.mutate_right_k(knum.o_y(-2), knum.ch_ideal_plane(-1))
        g = knum.mutate_right_k(knum.o_y(-1), g)
        return g == chow.ch_kappa(1) - chow.ch_kappa(2)

    s.true("knum.project.k_pi", "R_O(-1) R_O(-2) I_Pi(-1) has class kappa_1 - kappa_2", k_chain, tags=(HRR_Y,))
    I2 = ((1, 0), (0, 1))
    s.eq("knum.ms.order6", "M_S^6 = I", I2, lambda: knum.mat_pow(knum.M_S, 6))
    s.eq("knum.ms.cube", "M_S^3 = -I", ((-1, 0), (0, -1)), lambda: knum.mat_pow(knum.M_S, 3))
    s.eq("knum.mo.cube", "M_O^3 = I", I2, lambda: knum.mat_pow(knum.M_O, 3))
    s.eq("knum.rotation.kappabar", "rotation on kappabar: k1 -> k2, k2 -> k2 - k1",
         (knum.KAPPABAR2, knum.KAPPABAR2 - knum.KAPPABAR1),
         lambda: (knum.rotation_ku_c0(knum.KAPPABAR1), knum.rotation_ku_c0(knum.KAPPABAR2)))

    def serre_duality():
        basis = [knum.KClassC0.basis(j) for j in (-1, 0, 1, 2)]
        return all(knum.chi_c0(u, w) == knum.chi_c0(w, knum.serre_db_c0(u)) for u in basis for w in basis)

    s.true("knum.serre.duality", "chi(u, w) = chi(w, S u) on all 16 basis pairs", serre_duality)


def _wall_checks(s: _Suite):
    target = knum.KClassC0((1, -4, 4, -1))

    def lemma_wall():
        res = walls.group_by_alpha(walls.destabilizer_search(target, tilt.BETA0, 5))
        if list(res) != [Fraction(1, 16)]:
            return f"walls at {sorted(res)}"
        want = {(8, 2, Fraction(1, 4)), (-8, 2, Fraction(-1, 4))}
        for c in res[Fraction(1, 16)]:
            got = {c.constraints_report["trunc_sub"], c.constraints_report["trunc_quot"]}
            if got != want:
                return f"factor characters {got}"
        return True

    s.eq("walls.target", "truncated character of the target", (0, 4, 0),
         lambda: tilt.trunc(target.ch()).as_tuple())
    s.true("walls.lemma", "one wall at alpha^2 = 1/16 with factors (8,2,1/4), (-8,2,-1/4)", lemma_wall)
    s.eq("walls.c1.empty", "no walls for C_1 at bound 3", [],
         lambda: walls.destabilizer_search(knum.KClassC0.basis(1), tilt.BETA0, 3))


def _pick_checks(s: _Suite):
    def suite():
        orbits: dict = {}
        count = 0
        for a in range(-40, 41):
            for b in range(-40, 41):
                if a * a + b * b > 1600 or math.gcd(a, b) != 1:
                    continue
                count += 1
                tree = knum.nonempty_tree(knum.kappa(a, b))
                for leaf in tree.leaves():
                    if leaf.orbit is None:
                        return f"leaf {leaf.v.coeffs} outside both orbits"
                    orbits.setdefault(leaf.orbit, set()).add(leaf.v.coeffs)
        sizes = sorted(len(v) for v in orbits.values())
        return (count, sizes)

    s.eq("pick.suite", "Pick induction over primitive |v| <= 40 (count, leaf orbit sizes)",
         (3064, [6, 6]), suite)
    s.eq("pick.2_1", "decomposition of (2, 1)", ((1, 0), (1, 1)),
         lambda: tuple(x.coeffs for x in knum.pick_decompose(knum.kappa(2, 1))))


def _serre_checks(s: _Suite):
    p = tilt.TiltParam(Fraction(1, 100), tilt.BETA0)
    half = Fraction(1, 2)
    s3 = serre.SQRT3
    s.eq("serre.hex.values", "Z''(kappabar_1), Z''(kappabar_2)",
         ((-half, s3 * half), (Fraction(-1), Fraction(0))),
         lambda: (serre.hex_charge(p).column(0), serre.hex_charge(p).column(1)))

    def gepner():
        for a2 in (Fraction(1, 100), Fraction(1, 17), Fraction(3, 64), Fraction(1, 1000)):
            if not serre.gepner_rotation_check(serre.hex_charge(tilt.TiltParam(a2, tilt.BETA0))):
                return f"fails at alpha^2 = {a2}"
        return True

    s.true("serre.gepner", "Z'' S_* = R(pi/3) Z'' exactly in Q(sqrt 3)", gepner)
    s.eq("serre.hex.stated_labels", "stated labels kappabar_1 -> e^{i pi}, kappabar_2 -> e^{2 pi i/3} "
         "fail the rotation identity; the swapped labels are the ones computed", False,
         lambda: serre.gepner_rotation_check(serre.paper_labelled_charge()))
    s.eq("serre.phase_jump", "fractional S-jump and branch", (Fraction(1, 3), 1),
         lambda: serre.phase_jump(serre.hex_charge(p), knum.kappabar(1, 0)))

    def triple():
        Z = serre.hex_charge(p)
        v = knum.kappabar(1, 0)
        ks, total = 0, Fraction(0)
        for _ in range(3):
            frac, k = serre.phase_jump(Z, v)
            ks += k
            total += frac + 2 * k
            v = knum.mat_apply(knum.M_S_BAR, v)
        return (ks, total)

    s.eq("serre.k_sum", "k(E) + k(SE) + k(S^2 E) and the total jump over S^3", (3, 7), triple)
    def cube():
        g = serre.serre_gltilde()
        c = g.compose(g).compose(g)
        return (c.M, c.g0() == Phase.half_integer(14))

    s.eq("serre.gl.cube", "the lifted Serre action cubed is the shift by 7 (M = -I, g(0) = 7)",
         (((-1, 0), (0, -1)), True), cube)

    def dets():
        for q in sample_params(10, 5):
            Z = serre.charge_matrix(q)
            if Z.det != 16 * q.alpha_sq + 16 * (q.beta + Fraction(5, 4)) ** 2 + 7:
                return f"fails at {q}"
        return True

    s.true("serre.z0.det", "det Z^0 = 16 alpha^2 + 16 (beta + 5/4)^2 + 7 at 10 points", dets)
    s.eq("serre.shear", "shear sends the hexagonal charge to the square lattice",
         ((0, -1), (1, 0)), lambda: serre.gl_act(serre.square_shear(), serre.hex_charge(p)).m)
    s.eq("serre.gldim", "gl.dim after the shear is at most 5/2, with equality", (True, True),
         lambda: serre.gldim_after(serre.square_shear()))


def _cohomology_checks(s: _Suite):
    s.eq("chow.coh.p3", "h(P^3, O + O(-1)^3)", (1, 0, 0, 0), lambda: chow.coh_split([0, -1, -1, -1], 3))

    def koszul():
        return (chow.euler_pairing(1, chow.ch_line(1, chow.P6))
                - chow.euler_pairing(1, chow.ch_line(-2, chow.P6)))

    s.eq("chow.chi.oy1.koszul", "chi(P^6, O(1)) - chi(P^6, O(-2))", 7, koszul)
    s.eq("chow.chi.oy1", "chi(O_Y, O_Y(1)) by HRR", 7,
         lambda: chow.euler_pairing(1, chow.ch_line(1, chow.Y5)), tags=(HRR_Y,))


def run_checks() -> VerifyReport:
    s = _Suite()
    for part in (_lattice_checks, _tilt_checks, _functor_checks, _wall_checks,
                 _pick_checks, _serre_checks, _cohomology_checks):
        part(s)
    return VerifyReport(s.checks)

