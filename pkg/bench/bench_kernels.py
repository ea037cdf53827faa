"""Compiled vs pure-Python kernels on the workloads the library actually runs.

    python bench/bench_kernels.py [--bound 5] [--repeat 3]

Both kernels receive identical inputs and must return identical results;
the script exits non-zero otherwise.
"""

import argparse
import sys
import timeit

from stabkit import _core, _kernels_py
from stabkit.knum import KClassC0
from stabkit.tilt import BETA0
from stabkit.walls import _scaled, basis_truncs, lattice_trunc


def _scan_inputs():
    table = basis_truncs(BETA0)
    target = lattice_trunc(KClassC0((1, -4, 4, -1)), table)
    return _scaled(table, target)


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _core._compiled is None:
        print("compiled kernels are not built; only the Python timings are shown")
    ints, tint = _scan_inputs()
    b = args.bound
    rows = []

    for mode, label in ((1, "scan_box fixed beta"), (0, "scan_box chart")):
        def py(mode=mode):
            return _kernels_py.scan_box(ints, tint, b, -b, b, mode)

        ref = py()
        t_py = _best(py, args.repeat)
        t_c = None
        if _core._compiled is not None:
            def cy(mode=mode):
                return _core._compiled.scan_box(ints, tint, b, -b, b, mode)

            if cy() != ref:
                print(f"{label}: compiled and Python results differ", file=sys.stderr)
                return 1
            t_c = _best(cy, args.repeat)
        rows.append((f"{label} (bound {b}, {len(ref)} survivors)", t_py, t_c))

    vecs = [(a, c) for a in range(-40, 41) for c in range(-40, 41) if a * a + c * c <= 1600]

    def pick_py():
        return [_kernels_py.pick_candidates(a, c) for a, c in vecs]

    ref = pick_py()
    t_py = _best(pick_py, args.repeat)
    t_c = None
    if _core._compiled is not None:
        def pick_cy():
            return [_core._compiled.pick_candidates(a, c) for a, c in vecs]

        if [sorted(x) for x in pick_cy()] != [sorted(x) for x in ref]:
            print("pick_candidates: compiled and Python results differ", file=sys.stderr)
            return 1
        t_c = _best(pick_cy, args.repeat)
    rows.append((f"pick_candidates over |v| <= 40 ({len(vecs)} vectors)", t_py, t_c))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'python':>9}  {'compiled':>9}  {'speedup':>7}")
    for name, tp, tc in rows:
        comp = f"{tc:9.4f}" if tc is not None else f"{'-':>9}"
        speed = f"{tp / tc:6.1f}x" if tc else f"{'-':>7}"
        print(f"{name:<{width}}  {tp:9.4f}  {comp}  {speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
