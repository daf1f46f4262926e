"""numpy implementations of the numeric hot loops.

A *program* is a chain of binary-form pairs applied in order, packed as
``(degs, offs, c0, c1)``: stage ``s`` has degree ``degs[s]`` and coefficient
slices ``c0[offs[s]:offs[s+1]]`` (denominator) and ``c1[...]`` (numerator).
Points travel as homogeneous pairs rescaled to max modulus 1 after each stage.
"""

import numpy as np

UNRESOLVED = -1


def _form(a, d, t):
    # f = sum a_k t^k, ga = sum (d-k) a_k t^k, gb = sum k a_k t^(k-1)
    f = np.zeros_like(t)
    ga = np.zeros_like(t)
    gb = np.zeros_like(t)
    for k in range(d, -1, -1):
        f = f * t + a[k]
        ga = ga * t + (d - k) * a[k]
        if k:
            gb = gb * t + k * a[k]
    return f, ga, gb


def _eval_pair(a, d, x0, x1):
    """``F, dF/dx0, dF/dx1`` at pairs, each divided by the same power of the larger coordinate."""
    big = np.abs(x0) >= np.abs(x1)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(big, x1 / np.where(big, x0, 1), x0 / np.where(big, 1, x1))
    fa, gaa, gba = _form(a, d, t)
    fb, gab, gbb = _form(a[::-1], d, t)
    piv = np.where(big, x0, x1)
    f = np.where(big, fa, fb)
    d0 = np.where(big, gaa, gbb) / piv
    d1 = np.where(big, gba, gab) / piv
    return f, d0, d1


def eval_program(program, x0, x1, dx0=None, dx1=None):
    degs, offs, c0, c1 = program
    x0 = np.array(x0, dtype=np.complex128)
    x1 = np.array(x1, dtype=np.complex128)
    track = dx0 is not None
    if track:
        dx0 = np.array(dx0, dtype=np.complex128)
        dx1 = np.array(dx1, dtype=np.complex128)
    for s in range(len(degs)):
        d = int(degs[s])
        a = c0[offs[s]:offs[s + 1]]
        b = c1[offs[s]:offs[s + 1]]
        f0, a00, a01 = _eval_pair(a, d, x0, x1)
        f1, a10, a11 = _eval_pair(b, d, x0, x1)
        if track:
            dx0, dx1 = a00 * dx0 + a01 * dx1, a10 * dx0 + a11 * dx1
        sc = np.maximum(np.abs(f0), np.abs(f1))
        sc = np.where(sc == 0, 1.0, sc)
        x0 = f0 / sc
        x1 = f1 / sc
        if track:
            dx0 = dx0 / sc
            dx1 = dx1 / sc
    if track:
        return x0, x1, dx0, dx1
    return x0, x1


def aberth(program, z, maxiter=500, tol=1e-15):
    """Simultaneous roots of ``l0*F1 - l1*F0`` at ``(1, z)`` for the composed program.

    Returns ``(roots, iterations, converged_mask)``.
    """
    z = np.array(z, dtype=np.complex128)
    n = len(z)
    active = np.ones(n, dtype=bool)
    one = np.ones(n, dtype=np.complex128)
    zero = np.zeros(n, dtype=np.complex128)
    it = 0
    for it in range(1, maxiter + 1):
        x0, x1, d0, d1 = eval_program(program, one, z, zero, one)
        p = x1 - z * x0
        dp = d1 - x0 - z * d0
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dp != 0, p / dp, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            corr = w / (1 - w * s)
        corr = np.where(np.isfinite(corr), corr, 0)
        corr = np.where(active, corr, 0)
        z = z - corr
        active = np.abs(corr) > tol * (1 + np.abs(z))
        if not active.any():
            break
    return z, it, ~active


def _chordal(a0, a1, b0, b1):
    na = np.sqrt(np.abs(a0) ** 2 + np.abs(a1) ** 2)
    nb = np.sqrt(np.abs(b0) ** 2 + np.abs(b1) ** 2)
    return np.abs(a0 * b1 - a1 * b0) / (na * nb)


def basin_grid(program, z0, z1, att0, att1, att_label, radius, max_iter, threads=1):
    """Label of the attractor each start point is captured by, or ``UNRESOLVED``.

    ``att0/att1`` list attractor points (cycle members share a label);
    capture means chordal distance below ``radius[j]``.
    Returns ``(labels, iterations)``.
    """
    x0 = np.array(z0, dtype=np.complex128).ravel()
    x1 = np.array(z1, dtype=np.complex128).ravel()
    n = len(x0)
    labels = np.full(n, UNRESOLVED, dtype=np.int32)
    iters = np.zeros(n, dtype=np.int32)
    idx = np.arange(n)
    for it in range(max_iter + 1):
        if it:
            x0, x1 = eval_program(program, x0, x1)
        hit = np.full(len(idx), UNRESOLVED, dtype=np.int32)
        for j in range(len(att0)):
            dist = _chordal(x0, x1, att0[j], att1[j])
            hit = np.where((hit == UNRESOLVED) & (dist < radius[j]), att_label[j], hit)
        done = hit != UNRESOLVED
        labels[idx[done]] = hit[done]
        iters[idx[done]] = it
        keep = ~done
        idx = idx[keep]
        x0 = x0[keep]
        x1 = x1[keep]
        if not len(idx):
            break
    iters[idx] = max_iter
    return labels, iters
