import numpy as np
import pytest

from hessedyn import kernels
from hessedyn.dynamics import attractor_arrays, superattracting_cycles
from hessedyn.kernels import _pykernels
from hessedyn.words import psi

ck = pytest.importorskip("hessedyn.kernels._ckernels", reason="compiled extension not built")


def _program(word):
    return kernels.pack_program(psi(word).stages)


def _points(n, seed=3):
    rng = np.random.default_rng(seed)
    z = (rng.normal(size=n) + 1j * rng.normal(size=n)) * 2
    return np.ones(n, dtype=np.complex128), z


@pytest.mark.parametrize("word", ["h", "c", "hc", "chh"])
def test_eval_program_backends_agree(word):
    prog = _program(word)
    x0, x1 = _points(500)
    d0, d1 = np.zeros_like(x0), np.ones_like(x1)
    a = _pykernels.eval_program(prog, x0, x1, d0, d1)
    b = ck.eval_program(prog, x0, x1, d0, d1)
    for u, v in zip(a, b):
        assert np.allclose(u, v, rtol=1e-12, atol=1e-14)


def test_aberth_backends_agree():
    prog = _program("cc")
    # roots of l0*F1 - l1*F0 for the affine part: 9 of the 10 fixpoints of c o c
    z = 0.7 * np.exp(2j * np.pi * (np.arange(9) + 0.3) / 9)
    ra, _, ca = _pykernels.aberth(prog, z)
    rb, _, cb = ck.aberth(prog, z)
    assert ca.all() and cb.all()
    assert np.abs(ra[:, None] - rb[None, :]).min(axis=1).max() < 1e-10


def test_basin_grid_backends_agree():
    f = psi("c")
    cycles = superattracting_cycles(f)
    a0, a1, lab, rad = attractor_arrays(f, cycles, 1e-3)
    xs = np.linspace(-3, 3, 61)
    z = (xs[None, :] + 1j * xs[:, None]).ravel()
    prog = kernels.pack_program(f.stages)
    la, ia = _pykernels.basin_grid(prog, np.ones_like(z), z, a0, a1, lab, rad, 100)
    lb, ib = ck.basin_grid(prog, np.ones_like(z), z, a0, a1, lab, rad, 100, 2)
    assert (la == lb).all() and (ia == ib).all()


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "numpy")
    assert kernels.UNRESOLVED == -1
