"""Time the numpy and compiled kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 200]
"""

import argparse
import time

import numpy as np

from hessedyn import kernels
from hessedyn.dynamics import _newton_polygon_start, attractor_arrays, periodic_point_form, superattracting_cycles
from hessedyn.kernels import _pykernels
from hessedyn.ratmap import iterate
from hessedyn.maps import CAYLEYAN, HESSIAN
from hessedyn.words import psi

try:
    from hessedyn.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(size):
    f = psi("chc")
    prog = kernels.pack_program(f.stages)
    rng = np.random.default_rng(0)
    z = rng.normal(size=size * size) + 1j * rng.normal(size=size * size)
    one = np.ones_like(z)
    yield "eval_program chc", lambda k: k.eval_program(prog, one, z, np.zeros_like(z), one)

    h6 = iterate(HESSIAN, 6)
    form = periodic_point_form(HESSIAN, 6)
    n_aff = form.degree - form.order_at_infinity()
    start = _newton_polygon_start(list(form.coeffs), n_aff)
    hprog = kernels.pack_program(h6.stages)
    yield "aberth h^6 (729 roots)", lambda k: k.aberth(hprog, start)

    cycles = superattracting_cycles(CAYLEYAN)
    a0, a1, lab, rad = attractor_arrays(CAYLEYAN, cycles, 1e-3)
    cprog = kernels.pack_program(CAYLEYAN.stages)
    xs = np.linspace(-3, 3, size)
    grid = (xs[None, :] + 1j * xs[:, None]).ravel() - 0.5
    g1 = np.ones_like(grid)
    yield f"basin_grid c {size}x{size}", lambda k: k.basin_grid(cprog, g1, grid, a0, a1, lab, rad, 200)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=200)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the numpy backend is timed")
    print(f"{'kernel':<28}{'numpy [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, run in cases(args.size):
        tp = best_of(lambda: run(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:<28}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc = best_of(lambda: run(_ckernels), args.repeat)
        print(f"{name:<28}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
