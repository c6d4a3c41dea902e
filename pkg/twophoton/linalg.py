"""Small dense eigensolvers and log-gamma, written on plain numpy arrays.

Nothing here calls numpy.linalg or scipy: the Fock-space oracle relies on
these kernels and must stay independent of any library eigensolver.
"""
import logging
import warnings
from math import exp, log, pi, sin, sqrt

import numpy as np

from .errors import NotConverged, NumericalWarning, ParameterError

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 80
QR_MAX_ITERATIONS_PER_EIGENVALUE = 60
SYMMETRY_TOL = 1e-12
BALANCE_RADIX = 2.0

LANCZOS_G = 7
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def dense_matrix(a):
    """Validated float copy of a square, finite matrix."""
    m = np.array(a, dtype=float, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ParameterError("expected a non-empty square matrix, got shape %s"
                             % (m.shape,))
    if not np.all(np.isfinite(m)):
        raise ParameterError("matrix has non-finite entries")
    return m


# ------------------------------------------------------------------------------
# cyclic Jacobi ----------------------------------------------------------------
# ------------------------------------------------------------------------------
def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return sqrt(float(np.sum(off * off)))


def jacobi_symmetric_eigen(a, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS,
                           vectors=False):
    """Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi sweeps.

    With ``vectors=True`` returns ``(values, V)`` where column j of V is the
    eigenvector of values[j].
    """
    a = dense_matrix(a)
    n = a.shape[0]
    scale = sqrt(float(np.sum(a * a)))
    if np.max(np.abs(a - a.T)) > SYMMETRY_TOL * max(scale, 1.0):
        raise ParameterError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n) if vectors else None

    threshold = tol * scale
    sweep = 0
    while _off_norm(a) > threshold:
        if sweep == max_sweeps:
            raise NotConverged("Jacobi: off-diagonal norm %.3e after %d sweeps"
                               % (_off_norm(a), sweep), partial=np.sort(np.diag(a)))
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                # rotations below this size cannot move the off-norm
                if abs(apq) <= EPS * threshold / n:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0

                if vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq

    logger.debug("Jacobi converged in %d sweeps (n = %d)", sweep, n)
    values = np.diag(a).copy()
    order = np.argsort(values, kind='stable')
    if vectors:
        return values[order], v[:, order]
    return values[order]


def sturm_count(diagonal, off_diagonal, shift):
    """Number of eigenvalues below ``shift`` of a symmetric tridiagonal matrix."""
    count = 0
    pivot = 1.0
    previous_sq = 0.0
    for i, d in enumerate(diagonal):
        pivot = d - shift - (previous_sq / pivot if i else 0.0)
        if pivot == 0.0:
            pivot = -EPS * (abs(d) + abs(shift) + 1.0)
        if pivot < 0:
            count += 1
        if i < len(off_diagonal):
            previous_sq = off_diagonal[i] * off_diagonal[i]
    return count


def tridiagonal_eigenvalues(diagonal, off_diagonal, k=None, tol=1e-13):
    """Lowest k eigenvalues of a symmetric tridiagonal matrix by Sturm bisection."""
    diagonal = [float(d) for d in diagonal]
    off_diagonal = [float(e) for e in off_diagonal]
    n = len(diagonal)
    if k is None:
        k = n
    if not 0 <= k <= n:
        raise ParameterError("k must lie in [0, %d], got %r" % (n, k))
    radius = [0.0] * n
    for i, e in enumerate(off_diagonal):
        radius[i] += abs(e)
        radius[i + 1] += abs(e)
    lower = min(d - r for d, r in zip(diagonal, radius))
    upper = max(d + r for d, r in zip(diagonal, radius))

    values = []
    for j in range(k):
        lo, hi = lower, upper
        while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if sturm_count(diagonal, off_diagonal, mid) > j:
                hi = mid
            else:
                lo = mid
        values.append(0.5 * (lo + hi))
    return np.array(values)


# ------------------------------------------------------------------------------
# nonsymmetric: balance, Hessenberg, shifted QR ---------------------------------
# ------------------------------------------------------------------------------
def balance(a):
    """Diagonal similarity that evens out row and column norms."""
    a = dense_matrix(a)
    n = a.shape[0]
    radix_sq = BALANCE_RADIX * BALANCE_RADIX
    done = False
    while not done:
        done = True
        for i in range(n):
            c = float(np.sum(np.abs(a[:, i])) - abs(a[i, i]))
            r = float(np.sum(np.abs(a[i, :])) - abs(a[i, i]))
            if c == 0.0 or r == 0.0:
                continue
            g = r / BALANCE_RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= BALANCE_RADIX
                c *= radix_sq
            g = r * BALANCE_RADIX
            while c > g:
                f /= BALANCE_RADIX
                c /= radix_sq
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f

    return a


def hessenberg(a):
    """Upper Hessenberg form by Householder similarity transforms."""
    h = dense_matrix(a)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        norm_x = sqrt(float(np.dot(x, x)))
        if norm_x == 0.0:
            continue
        alpha = -norm_x if x[0] >= 0 else norm_x
        x[0] -= alpha
        norm_v = sqrt(float(np.dot(x, x)))
        if norm_v == 0.0:
            continue
        w = x / norm_v
        h[k + 1:, :] -= 2.0 * np.outer(w, w @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ w, w)
        h[k + 2:, k] = 0.0

    return h


def _wilkinson_shift(block):
    a, b = block[-2, -2], block[-2, -1]
    c, d = block[-1, -2], block[-1, -1]
    half_trace = 0.5 * (a + d)
    disc = np.sqrt(half_trace * half_trace - (a * d - b * c) + 0j)
    mu1 = half_trace + disc
    mu2 = half_trace - disc
    return mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2


def _qr_step(block, mu):
    m = block.shape[0]
    k_mat = block - mu * np.eye(m)
    rotations = []
    for k in range(m - 1):
        x, y = k_mat[k, k], k_mat[k + 1, k]
        r = sqrt(abs(x) ** 2 + abs(y) ** 2)
        if r == 0.0:
            g = np.eye(2, dtype=complex)
        else:
            c, s = x / r, y / r
            g = np.array([[np.conj(c), np.conj(s)], [-s, c]])
        k_mat[k:k + 2, k:] = g @ k_mat[k:k + 2, k:]
        rotations.append(g)
    for k, g in enumerate(rotations):
        k_mat[:k + 2, k:k + 2] = k_mat[:k + 2, k:k + 2] @ g.conj().T

    return k_mat + mu * np.eye(m)


def qr_nonsymmetric_eigen(a, max_iterations=None):
    """Complex eigenvalues of a real square matrix.

    Balance, reduce to Hessenberg form, then run Wilkinson-shifted QR with
    deflation on the trailing active block.
    """
    h = hessenberg(balance(a)).astype(complex)
    n = h.shape[0]
    if max_iterations is None:
        max_iterations = QR_MAX_ITERATIONS_PER_EIGENVALUE * n

    eigenvalues = []
    hi = n - 1
    since_deflation = 0
    total = 0
    while hi >= 0:
        if hi == 0:
            eigenvalues.append(h[0, 0])
            break
        lo = hi
        while lo > 0:
            scale = abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])
            if scale == 0.0:
                scale = 1.0
            if abs(h[lo, lo - 1]) <= EPS * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigenvalues.append(h[hi, hi])
            hi -= 1
            since_deflation = 0
            continue

        total += 1
        since_deflation += 1
        if total > max_iterations:
            raise NotConverged("QR iteration cap %d reached with %d eigenvalues "
                               "unresolved" % (max_iterations, hi + 1),
                               partial=np.array(eigenvalues))
        block = h[lo:hi + 1, lo:hi + 1]
        if since_deflation % 11 == 10:
            # exceptional shift to break cycles
            mu = block[-1, -1] + abs(block[-1, -2])
        else:
            mu = _wilkinson_shift(block)
        h[lo:hi + 1, lo:hi + 1] = _qr_step(block, mu)

    values = np.array(eigenvalues[::-1], dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def real_eigenvalues(a, imag_tol=1e-9):
    """Sorted eigenvalues of a matrix whose spectrum is known to be real."""
    values = qr_nonsymmetric_eigen(a)
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > imag_tol:
        warnings.warn("eigenvalues carry imaginary parts up to %.3e" % worst,
                      NumericalWarning)
    return np.sort(values.real)


# ------------------------------------------------------------------------------
# log-gamma --------------------------------------------------------------------
# ------------------------------------------------------------------------------
def log_gamma(x):
    """ln Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms)."""
    if not x > 0:
        raise ParameterError("log_gamma needs x > 0, got %r" % (x,))
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return log(pi / sin(pi * x)) - log_gamma(1.0 - x)
    x -= 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for i in range(1, LANCZOS_G + 2):
        series += LANCZOS_COEFFICIENTS[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    return 0.5 * log(2.0 * pi) + (x + 0.5) * log(t) - t + log(series)


def log_factorial(n):
    return log_gamma(n + 1.0)


def factorial_ratio(numerator, denominator):
    """numerator! / denominator! through log-gamma, for non-negative integers."""
    return exp(log_factorial(numerator) - log_factorial(denominator))
