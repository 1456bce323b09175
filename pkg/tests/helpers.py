"""Shared generators and independent oracles for the test suite.

The characteristic-polynomial oracle here goes through dense LU determinants
and interpolation, sharing no code path with the library's recurrence.
"""

import numpy as np

from hbjacobi import JacobiMatrix, eigen, spectral_weights


def random_jacobi(rng, n, b_span=5.0, a_low=0.0, a_high=5.0):
    """Diagonal uniform in [-b_span, b_span], off-diagonal in (a_low, a_high]."""
    b = rng.uniform(-b_span, b_span, size=n)
    a = a_high - rng.uniform(0.0, a_high - a_low, size=max(n - 1, 0))
    return JacobiMatrix(tuple(b), tuple(a))


def coupled_jacobi(rng, n, w_floor=3e-5, **kwargs):
    """Random Jacobi matrix whose spectral weights stay above w_floor.

    Uniform draws routinely localize edge eigenvectors away from the corner,
    collapsing some weight to ~1e-12; no corner perturbation statement is
    numerically meaningful there."""
    while True:
        J = random_jacobi(rng, n, **kwargs)
        if n == 1:
            return J
        w = spectral_weights(eigen(J), eigen(J.truncated()))
        if w.min() >= w_floor:
            return J


def random_jacobi_separated(rng, n, min_sep, **kwargs):
    """Random Jacobi matrix whose eigenvalue gaps all exceed min_sep."""
    while True:
        J = random_jacobi(rng, n, **kwargs)
        ev = eigen(J)
        if n == 1 or np.min(np.diff(ev)) >= min_sep:
            return J


def random_interlacing(rng, n, span=5.0, min_gap=0.05):
    """Strictly interlacing (lams, mus) with n and n-1 points in [-span, span]."""
    if n == 1:
        return np.array([rng.uniform(-span, span)]), np.empty(0)
    while True:
        pts = np.sort(rng.uniform(-span, span, size=2 * n - 1))
        if np.min(np.diff(pts)) >= min_gap:
            return pts[0::2], pts[1::2]


def even_interlacing(rng, n, span=2.0):
    """Interlacing (lams, mus) with quasi-uniform gaps (ratio <= 2) filling
    [-span, span]; keeps high degrees well conditioned."""
    if n == 1:
        return np.array([rng.uniform(-span, span)]), np.empty(0)
    gaps = rng.uniform(1.0, 2.0, size=2 * n - 2)
    pts = np.concatenate([[0.0], np.cumsum(gaps)])
    pts = -span + (pts / pts[-1]) * (2 * span)
    return pts[0::2], pts[1::2]


def shift_to_sign_split(rng, lams, mus, s, margin=0.2):
    """Translate an interlacing pair so that exactly s of the lams are negative
    (and none are zero)."""
    n = len(lams)
    if s == 0:
        t = lams[0] - rng.uniform(0.1, 1.0)
    elif s == n:
        t = lams[-1] + rng.uniform(0.1, 1.0)
    else:
        lo, hi = lams[s - 1], lams[s]
        t = rng.uniform(lo + margin * (hi - lo), hi - margin * (hi - lo))
    return lams - t, mus - t


def broken_interlacing_around(rng, n, s, xi=0.0, span=5.0, min_gap=0.05):
    """(lams, mus) of equal length n with the interlacing pattern broken at xi:
    lam_1 < mu_1 < ... lam_s < mu_s < xi < mu_{s+1} < lam_{s+1} < ... < mu_n < lam_n.
    Requires 0 <= s <= n-1."""
    while True:
        pts = np.sort(rng.uniform(-span, span, size=2 * n))
        if np.min(np.diff(pts)) < min_gap:
            continue
        if s == 0:
            t = pts[0] - rng.uniform(0.1, 1.0)
        else:
            lo, hi = pts[2 * s - 1], pts[2 * s]
            t = rng.uniform(lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo))
        pts = pts - t + xi
        below, above = pts[: 2 * s], pts[2 * s :]
        lams = np.concatenate([below[0::2], above[1::2]])
        mus = np.concatenate([below[1::2], above[0::2]])
        return lams, mus


def char_poly_via_determinants(m):
    """Coefficients (constant first) of det(zI - M) from LU determinants at
    interpolation nodes on a circle; independent of any recurrence."""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    radius = 1.0 + float(np.linalg.norm(m, np.inf))
    nodes = radius * np.exp(2j * np.pi * (np.arange(n + 1) + 0.25) / (n + 1))
    vals = np.array([np.linalg.det(z * np.eye(n) - m) for z in nodes])
    vand = np.vander(nodes, n + 1, increasing=True)
    return np.linalg.solve(vand, vals)


def spectrum_mismatch(expected, got):
    """Greedy nearest-point matching distance between two zero multisets."""
    pool = list(got)
    worst = 0.0
    for z in expected:
        i = min(range(len(pool)), key=lambda j: abs(pool[j] - z))
        worst = max(worst, abs(pool.pop(i) - z))
    return worst


def jacobi_error(J1, J2):
    if J1.n != J2.n:
        return np.inf
    db = max(abs(x - y) for x, y in zip(J1.b, J2.b))
    da = max((abs(x - y) for x, y in zip(J1.a, J2.a)), default=0.0)
    return max(db, da)


def random_nonreal_points(rng, n, re_span=5.0, im_low=0.01, im_high=5.0):
    """n points with |Im| in [im_low, im_high], random half-plane signs."""
    re = rng.uniform(-re_span, re_span, size=n)
    im = rng.uniform(im_low, im_high, size=n) * rng.choice([-1.0, 1.0], size=n)
    return re + 1j * im
