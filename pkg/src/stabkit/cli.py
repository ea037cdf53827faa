"""Command-line entry point: ``stabkit <command> ...``.

Exit codes: 0 success, 1 failing checks, 2 usage errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import chow, knum, serre, svg, tilt, walls
from .chow import ChernVector
from .knum import KClassC0, KClassKu
from .numerics import Q, QuadExt

EXIT_OK, EXIT_CHECKS, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class IOFailure(OSError):
    pass


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class CharacterSpec:
    name: str
    ch: ChernVector
    lattice: KClassC0 | KClassKu | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "variety": str(self.ch.variety),
               "ch": [str(c) for c in self.ch.coeffs]}
        if self.lattice is not None:
            out["lattice"] = self.lattice.to_json()
        return out


PSI_P_PI = KClassC0((1, -4, 4, -1))

VARIETIES = {"P2": chow.P2, "P3": chow.P3, "P6": chow.P6, "Y5": chow.Y5,
             "CL3": chow.CL3, "CL2": chow.CL2}


def _builtin(name: str) -> CharacterSpec:
    m = re.fullmatch(r"C(-?\d+)", name)
    if m:
        j = int(m.group(1))
        v = chow.ch_clifford(j, 3)
        return CharacterSpec(name, v, KClassC0.from_ch(v))
    kappas = {
        "kappa1": knum.kappa(1, 0), "kappa2": knum.kappa(0, 1),
        "F_Pi": knum.kappa(1, 0), "P_Pi": knum.kappa(0, 1), "K_Pi": knum.kappa(1, -1),
        "kappabar1": knum.kappabar(1, 0), "kappabar2": knum.kappabar(0, 1),
    }
    if name in kappas:
        k = kappas[name]
        return CharacterSpec(name, k.ch(), k)
    if name == "psi_P_Pi":
        return CharacterSpec(name, PSI_P_PI.ch(), PSI_P_PI)
    raise UsageError(f"unknown character name {name!r}")


def _from_json(obj) -> CharacterSpec:
    if not isinstance(obj, dict):
        raise UsageError("character JSON must be an object")
    if "name" in obj:
        return _builtin(str(obj["name"]))
    if "basis" in obj:
        basis, cs = obj["basis"], obj.get("coeffs")
        if not isinstance(cs, list):
            raise UsageError("lattice character needs a coeffs list")
        if basis == "clifford":
            k = KClassC0(tuple(cs))
        elif basis in ("kappa", "kappabar"):
            k = KClassKu(tuple(cs), basis)
        else:
            raise UsageError(f"unknown basis {basis!r}")
        return CharacterSpec(obj.get("label", "custom"), k.ch(), k)
    if "ch" in obj:
        X = VARIETIES.get(obj.get("variety", "CL3"))
        if X is None:
            raise UsageError(f"unknown variety {obj.get('variety')!r}")
        coeffs = [Q(c) for c in obj["ch"]]
        coeffs += [0] * (X.dim + 1 - len(coeffs))
        if len(coeffs) != X.dim + 1:
            raise UsageError(f"too many Chern coefficients for {X}")
        v = ChernVector(X, coeffs)
        lat = None
        if X == chow.CL3:
            try:
                lat = KClassC0.from_ch(v)
            except knum.LatticeError:
                lat = None
        return CharacterSpec(obj.get("label", "custom"), v, lat)
    raise UsageError("character JSON needs one of name, basis, ch")


def parse_character(text: str) -> CharacterSpec:
    text = text.strip()
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise IOFailure(f"cannot read {text[1:]}: {exc.strerror}") from None
    if text.startswith("{"):
        try:
            return _from_json(json.loads(text))
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"bad character JSON: {exc}") from None
    return _builtin(text)


# ---------------------------------------------------------------------------
# formatting


class Fmt:
    def __init__(self, decimals: bool):
        self.decimals = decimals

    def __call__(self, x) -> str:
        if x is None:
            return "-"
        if isinstance(x, (tuple, list)):
            return "(" + ", ".join(self(y) for y in x) + ")"
        s = str(x)
        exact_int = isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
        if self.decimals and isinstance(x, (Fraction, QuadExt)) and not exact_int:
            s += f" [{float(x):.12g}]"
        return s


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (Fraction, QuadExt)):
        return str(x)
    return x


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _write(path: str, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc.strerror}") from None


def _emit(args, text: str, json_obj=None):
    """Human text on stdout, or JSON when --json is given."""
    if getattr(args, "json", False) and json_obj is not None:
        sys.stdout.write(_dump(json_obj))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# config


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc.strerror}") from None
    cp = configparser.ConfigParser()
    try:
        cp.read_string("[stabkit]\n" + raw)
    except configparser.Error as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    return {k.replace("-", "_"): v for k, v in cp["stabkit"].items()}


def _pick(args, cfg: dict, key: str, default):
    v = getattr(args, key, None)
    if v is not None:
        return v
    return cfg.get(key, default)


def _rational(text, what: str) -> Fraction:
    try:
        return Q(str(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be a rational number, got {text!r}") from None


def _int(text, what: str) -> int:
    try:
        return int(str(text))
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _window(text) -> walls.Window:
    try:
        return walls.Window.parse(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_char(args, cfg) -> int:
    spec = parse_character(args.char)
    f = Fmt(args.float)
    beta = _rational(_pick(args, cfg, "beta", tilt.BETA0), "beta")
    lines = [f"{spec.name} on {spec.ch.variety}", f"ch = {spec.ch}"]
    out = spec.to_json()
    if spec.lattice is not None:
        lines.append(f"lattice {spec.lattice.to_json()['basis']} {f(spec.lattice.coeffs)}")
    if spec.ch.variety == chow.CL3:
        t = tilt.trunc(spec.ch, beta)
        vp = tilt.v_point(spec.ch)
        lines.append(f"truncated character at beta = {beta}: {f(t.as_tuple())}")
        lines.append(f"v = {f(vp.as_tuple())}")
        lines.append(f"Delta_C0 = {f(tilt.delta_c0(spec.ch))}")
        out.update({"beta": beta, "trunc": t.as_tuple(), "v_point": vp.as_tuple(),
                    "delta_c0": tilt.delta_c0(spec.ch)})
        if isinstance(spec.lattice, KClassC0) and knum.in_ku_c0(spec.lattice):
            k = knum.kubar_coords(spec.lattice)
            lines.append(f"kappabar coordinates {k.coeffs}")
            out["kappabar"] = list(k.coeffs)
    _emit(args, "\n".join(lines), out)
    return EXIT_OK


PAIR_BASES = ("clifford3", "clifford2", "kappaY", "kappabar")


def _pair_matrix(basis: str):
    if basis == "clifford3":
        return chow.gram_c0(3)
    if basis == "clifford2":
        return chow.gram_c0(2)
    if basis == "kappaY":
        return tuple(tuple(chow.euler_pairing(chow.ch_kappa(i), chow.ch_kappa(j)) for j in (1, 2))
                     for i in (1, 2))
    ks = (knum.KAPPABAR1, knum.KAPPABAR2)
    return tuple(tuple(Fraction(knum.chi_c0(u, w)) for w in ks) for u in ks)


def cmd_pair(args, cfg) -> int:
    G = _pair_matrix(args.basis)
    d = chow.gram_det(G)
    f = Fmt(args.float)
    lines = [f"Euler pairing on basis {args.basis}:"]
    lines += ["  " + " ".join(f"{str(x):>4}" for x in row) for row in G]
    lines.append(f"det = {f(d)}" + (" (unimodular)" if abs(d) == 1 else ""))
    _emit(args, "\n".join(lines), {"basis": args.basis, "matrix": G, "det": d, "unimodular": abs(d) == 1})
    return EXIT_OK


WALL_COLUMNS = ("beta", "alpha_sq", "sub_coeffs", "quot_coeffs", "delta_sub", "delta_quot")


def _coeffs(c) -> str:
    return " ".join(str(x) for x in c)


def _wall_rows(spec: CharacterSpec, beta, bound, window):
    if window is None:
        found = walls.destabilizer_search(spec.lattice, beta, bound)
        for a2, c in found:
            r = c.constraints_report
            yield (beta, a2, c.sub.coeffs, c.quotient.coeffs, r["delta_sub"], r["delta_quot"])
        return
    report = walls.wall_scan(spec.lattice, window, bound)
    for b, a2, c in report.rows():
        r = c.constraints_report
        yield (b, a2, c.sub.coeffs, c.quotient.coeffs, r["delta_sub"], r["delta_quot"])


def _walls_json(spec, beta, bound, window, rows) -> dict:
    out = {"target": spec.to_json(), "bound": bound,
           "mode": "vertical" if window is None else "window"}
    if window is None:
        out["beta"] = beta
    else:
        out["window"] = [window.xi_lo, window.xi_hi, window.eta_lo, window.eta_hi]
        rep = walls.wall_scan(spec.lattice, window, bound)
        out["walls"] = [{
            "line": w.line,
            "segment": w.segment,
            "realizers": [{"sub": list(c.sub.coeffs), "quot": list(c.quotient.coeffs)} for c in w.realizers],
        } for w in rep.walls]
        out["chambers"] = rep.chambers
    out["rows"] = [dict(zip(WALL_COLUMNS, (r[0], r[1], list(r[2]), list(r[3]), r[4], r[5]))) for r in rows]
    return out


def cmd_walls(args, cfg) -> int:
    spec = parse_character(args.char)
    if not isinstance(spec.lattice, KClassC0):
        raise UsageError("walls need a character in the Clifford lattice of P^3")
    beta = _rational(_pick(args, cfg, "beta", tilt.BETA0), "beta")
    bound = _int(_pick(args, cfg, "bound", 5), "bound")
    wtext = _pick(args, cfg, "window", None)
    window = _window(wtext) if wtext is not None else None
    rows = list(_wall_rows(spec, beta, bound, window))
    f = Fmt(args.float)

    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(WALL_COLUMNS)
    for r in rows:
        wr.writerow((r[0], r[1], _coeffs(r[2]), _coeffs(r[3]), r[4], r[5]))
    csv_text = buf.getvalue()
    js = _walls_json(spec, beta, bound, window, rows)

    if args.out:
        _write(args.out + ".csv", csv_text)
        _write(args.out + ".json", _dump(js))
    if args.svg:
        overlay = svg.Overlay()
        vp = tilt.v_point(spec.ch)
        if vp.finite:
            overlay.points.append((spec.name, vp.xi, vp.eta))
        if window is not None:
            for w in walls.wall_scan(spec.lattice, window, bound).walls:
                lo, hi = w.segment
                overlay.walls.append((_line_label(w), (lo, w.eta_at(lo)), (hi, w.eta_at(hi))))
        _write(args.svg, svg.xieta_svg(overlay, _view(args, cfg)))

    alphas = sorted({r[1] for r in rows if r[1] is not None})
    lines = [f"target {spec.name} = {spec.lattice.coeffs}, bound {bound}, "
             + (f"beta = {beta}" if window is None else f"window {wtext}")]
    lines.append(f"{len(alphas)} wall(s)" + (": alpha^2 = " + ", ".join(f(a) for a in alphas) if alphas else ""))
    for r in rows:
        lines.append(f"  alpha^2 = {f(r[1])}  sub {r[2]}  quot {r[3]}  Delta {f(r[4])}, {f(r[5])}")
    _emit(args, "\n".join(lines), js)
    return EXIT_OK


def _line_label(w: walls.Wall) -> str:
    A, B, C = w.line
    return f"wall {A} xi + {B} eta + {C} = 0"


def _view(args, cfg) -> svg.ChartView:
    text = _pick(args, cfg, "plot_window", None)
    if text is None:
        return svg.ChartView()
    w = _window(text)
    try:
        return svg.ChartView(w.xi_lo, w.xi_hi, w.eta_lo, w.eta_hi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_plot(args, cfg) -> int:
    if args.figure == "hexagon":
        text = svg.hexagon_svg()
    else:
        overlay = svg.Overlay()
        for name in filter(None, (args.points or "").split(",")):
            spec = parse_character(name)
            if spec.ch.variety != chow.CL3:
                raise UsageError(f"{name} is not a character on (P^3, C_0)")
            vp = tilt.v_point(spec.ch)
            if vp.finite:
                overlay.points.append((spec.name, vp.xi, vp.eta))
        for ray in filter(None, (args.ray or "").split(",")):
            if ray != "ell0":
                raise UsageError(f"unknown ray {ray!r}")
            overlay.rays.append(svg.ELL0)
        if args.walls_of:
            spec = parse_character(args.walls_of)
            if not isinstance(spec.lattice, KClassC0):
                raise UsageError("walls need a character in the Clifford lattice of P^3")
            wtext = _pick(args, cfg, "window", "-1/2,1/2,0,1/32")
            bound = _int(_pick(args, cfg, "bound", 5), "bound")
            for w in walls.wall_scan(spec.lattice, _window(wtext), bound).walls:
                lo, hi = w.segment
                overlay.walls.append((_line_label(w), (lo, w.eta_at(lo)), (hi, w.eta_at(hi))))
        text = svg.xieta_svg(overlay, _view(args, cfg))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    from .verify import run_checks

    report = run_checks()
    if args.out:
        _write(args.out, report.dumps())
    if args.json:
        sys.stdout.write(report.dumps())
    else:
        sys.stdout.write("\n".join(report.lines()) + "\n")
    return EXIT_OK if report.failures == 0 else EXIT_CHECKS


def cmd_pick(args, cfg) -> int:
    v = knum.kappa(args.a, args.b)
    try:
        tree = knum.nonempty_tree(v)
    except knum.PickError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, "\n".join(knum.format_tree(tree)), tree.to_json())
    return EXIT_OK


def cmd_tilt(args, cfg) -> int:
    spec = parse_character(args.char)
    if spec.ch.variety != chow.CL3:
        raise UsageError("tilt data needs a character on (P^3, C_0)")
    beta = _rational(_pick(args, cfg, "beta", tilt.BETA0), "beta")
    a2 = _rational(_pick(args, cfg, "alpha_sq", Fraction(1, 100)), "alpha^2")
    try:
        p = tilt.TiltParam(a2, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f = Fmt(args.float)
    re_, im = tilt.z_tilt(spec.ch, p)
    n = tilt.nu(spec.ch, p)
    nu_s = "+inf" if n == math.inf else f(n)
    lines = [f"{spec.name} at alpha^2 = {a2}, beta = {beta}",
             f"Z = {f(re_)} + {f(im)} i", f"nu = {nu_s}",
             f"in V: {tilt.in_region_v(p)}"]
    js = {"character": spec.to_json(), "alpha_sq": a2, "beta": beta, "z": [re_, im],
          "nu": nu_s, "in_region_v": tilt.in_region_v(p)}
    _emit(args, "\n".join(lines), js)
    return EXIT_OK


def cmd_serre(args, cfg) -> int:
    a2 = _rational(_pick(args, cfg, "alpha_sq", Fraction(1, 100)), "alpha^2")
    beta = _rational(_pick(args, cfg, "beta", tilt.BETA0), "beta")
    try:
        p = tilt.TiltParam(a2, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f = Fmt(args.float)
    Z = serre.charge_matrix(p)
    M = serre.serre_inv_matrix(p)
    lines = [f"Z^0 at alpha^2 = {a2}, beta = {beta}: {f(Z.m)}, det {f(Z.det)}",
             f"Serre-invariance matrix M = {f(M)}"]
    js = {"alpha_sq": a2, "beta": beta, "charge": Z.m, "det": Z.det, "serre_inv": M}
    if beta == tilt.BETA0:
        H = serre.hex_charge(p)
        frac, k = serre.phase_jump(H, knum.kappabar(1, 0))
        g = serre.gepner_rotation_check(H)
        lines += [f"hexagonal charge Z'' = {f(H.m)}",
                  f"Z'' S = R(pi/3) Z'': {g}",
                  f"phase jump of S: {frac} + 2k with k = {k}"]
        js.update({"hex_charge": H.m, "gepner": g, "jump_fraction": frac, "jump_branch": k})
    _emit(args, "\n".join(lines), js)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--float", action="store_true", help="add decimal renderings next to exact values")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--config", help="key = value file overriding defaults (flags win)")

    ap = argparse.ArgumentParser(prog="stabkit", description="Exact lattice and tilt computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", parents=[common], help="describe a character")
    p.add_argument("--char", required=True)
    p.add_argument("--beta")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("pair", parents=[common], help="Euler pairing matrix of a basis")
    p.add_argument("--basis", required=True, choices=PAIR_BASES)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("walls", parents=[common], help="destabiliser search and numerical walls")
    p.add_argument("--char", required=True)
    p.add_argument("--beta")
    p.add_argument("--bound")
    p.add_argument("--window", help="xi_lo,xi_hi,eta_lo,eta_hi; scans walls in the chart")
    p.add_argument("--out", help="path prefix for the .csv and .json reports")
    p.add_argument("--svg", help="optional SVG of the chart")
    p.add_argument("--plot-window", dest="plot_window")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("plot", parents=[common], help="emit an SVG figure")
    p.add_argument("figure", choices=("hexagon", "xieta"))
    p.add_argument("--points", help="comma separated character names")
    p.add_argument("--ray", help="comma separated rays (ell0)")
    p.add_argument("--walls-of", dest="walls_of", help="overlay walls of this character")
    p.add_argument("--window", help="wall scan window for --walls-of")
    p.add_argument("--bound")
    p.add_argument("--plot-window", dest="plot_window")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", parents=[common], help="run the full verification suite")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pick", parents=[common], help="Pick decomposition tree of (a, b)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("tilt", parents=[common], help="tilt charge and slope of a character")
    p.add_argument("--char", required=True)
    p.add_argument("--beta")
    p.add_argument("--alpha-sq", dest="alpha_sq")
    p.set_defaults(func=cmd_tilt)

    p = sub.add_parser("serre", parents=[common], help="charge matrices and the Gepner check")
    p.add_argument("--beta")
    p.add_argument("--alpha-sq", dest="alpha_sq")
    p.set_defaults(func=cmd_serre)
    return ap


VALUE_FLAGS = ("--beta", "--alpha-sq", "--window", "--plot-window")


def _glue_values(argv: list[str]) -> list[str]:
    """Turn ``--beta -5/4`` into ``--beta=-5/4`` so argparse keeps negative rationals."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except IOFailure as exc:
        print(f"stabkit: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, knum.LatticeError) as exc:
        print(f"stabkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
