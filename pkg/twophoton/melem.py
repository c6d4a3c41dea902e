"""Overlaps between the b-frame and c-frame squeezed number states.

D_mn = (Omega/2) (-1)^n <q,m|_b |q,n>_c has the closed form

    (Omega/2) (-1)^m sqrt(beta) sqrt([2(n+q-1/4)]! / [2(m+q-1/4)]!)
        * P^{m-n}_{m+n+2(q-1/4)}(beta)

with Condon-Shortley associated Legendre functions. ``overlap_oracle``
recomputes the same numbers from truncated Fock-space eigenvectors.
"""
import functools
import logging
from dataclasses import dataclass
from math import exp, sqrt

import numpy as np

from .errors import NotConverged, ParameterError
from .linalg import jacobi_symmetric_eigen, log_factorial
from .model import basis_photon_number, make_frame

logger = logging.getLogger(__name__)

OVERLAP_TOL = 1e-9
DEFAULT_OVERLAP_CUTOFF = 120
# frame states sign-aligned along the ladder
LADDER_COUNT = 8


@dataclass(frozen=True)
class LegendreEval:
    degree: int
    order: int
    argument: float
    value: float


@dataclass(frozen=True)
class DMatrix:
    q: object
    size: int
    entries: np.ndarray
    omega: float
    g: float


def legendre_assoc(degree, order, x):
    """P_l^k(x) with the Condon-Shortley phase; zero when |k| > l."""
    if degree < 0:
        raise ParameterError("degree must be non-negative, got %r" % (degree,))
    if not -1.0 < x < 1.0:
        raise ParameterError("Legendre argument must lie in (-1, 1), got %r" % (x,))
    m = abs(order)
    if m > degree:
        return 0.0

    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2)
    pmm = 1.0
    root = sqrt((1.0 - x) * (1.0 + x))
    odd = 1.0
    for _ in range(m):
        pmm *= -odd * root
        odd += 2.0
    if degree == m:
        value = pmm
    else:
        pmm1 = x * (2 * m + 1) * pmm
        for ell in range(m + 2, degree + 1):
            pmm, pmm1 = pmm1, (x * (2 * ell - 1) * pmm1 - (ell + m - 1) * pmm) / (ell - m)
        value = pmm1

    if order < 0:
        sign = -1.0 if m % 2 else 1.0
        value *= sign * exp(log_factorial(degree - m) - log_factorial(degree + m))
    return value


def legendre_eval(degree, order, x):
    return LegendreEval(degree=degree, order=order, argument=x,
                        value=legendre_assoc(degree, order, x))


def d_element(params, q, m, n):
    if m < 0 or n < 0:
        raise ParameterError("indices must be non-negative, got (%r, %r)" % (m, n))
    half = params.omega_qubit / 2.0
    sign = -1.0 if m % 2 else 1.0
    frame = make_frame(params)
    if frame.beta == 1.0:
        # g = 0: both frames are the Fock basis
        return sign * half if m == n else 0.0

    km = basis_photon_number(q, m)
    kn = basis_photon_number(q, n)
    degree = (km + kn) // 2
    ratio = exp(0.5 * (log_factorial(kn) - log_factorial(km)))
    return sign * half * sqrt(frame.beta) * ratio * legendre_assoc(degree, m - n, frame.beta)


def d_matrix(params, q, size):
    entries = np.empty((size, size))
    for m in range(size):
        for n in range(size):
            entries[m, n] = d_element(params, q, m, n)
    return DMatrix(q=q, size=size, entries=entries,
                   omega=params.omega_qubit, g=params.g)


def max_abs_d(dmatrix):
    return float(np.max(np.abs(dmatrix.entries)))


# ------------------------------------------------------------------------------
# Fock-space overlap oracle ----------------------------------------------------
# ------------------------------------------------------------------------------
def _sector_photons(q, fock_cutoff):
    p0 = basis_photon_number(q, 0)
    return np.arange(p0, fock_cutoff + 1, 2)


def _frame_hamiltonian(g, photons, frame_sign):
    """a†a + s g (a†² + a²) on the photon states of one sector."""
    dim = len(photons)
    h = np.diag(photons.astype(float))
    for i in range(dim - 1):
        p = photons[i]
        h[i, i + 1] = h[i + 1, i] = frame_sign * g * sqrt((p + 1) * (p + 2))
    return h


def _raising_squared(frame, photons, frame_sign):
    """(b†)² for frame_sign = +1, (c†)² for -1, truncated to the sector."""
    u, v = frame.u, frame.v * frame_sign
    dim = len(photons)
    r = np.diag(u * v * (2.0 * photons + 1.0))
    for i in range(dim - 1):
        p = photons[i]
        r[i + 1, i] = u * u * sqrt((p + 1) * (p + 2))
        r[i, i + 1] = v * v * sqrt((p + 1) * (p + 2))
    return r


def _frame_states(params, q, fock_cutoff, frame_sign, ladder_count):
    """Eigenvectors of the frame's diagonal block, sign-fixed by the ladder.

    The lowest state has a positive leading Fock amplitude; state j is
    oriented along (X†)^2 applied j times to it.
    """
    frame = make_frame(params)
    photons = _sector_photons(q, fock_cutoff)
    h = _frame_hamiltonian(params.g, photons, frame_sign)
    _, vectors = jacobi_symmetric_eigen(h, vectors=True)

    if vectors[0, 0] < 0:
        vectors[:, 0] = -vectors[:, 0]
    raise_sq = _raising_squared(frame, photons, frame_sign)
    ladder = vectors[:, 0].copy()
    for j in range(1, vectors.shape[1]):
        if j < ladder_count:
            k = basis_photon_number(q, j - 1)
            ladder = raise_sq @ ladder / sqrt((k + 1) * (k + 2))
            if np.dot(vectors[:, j], ladder) < 0:
                vectors[:, j] = -vectors[:, j]
        else:
            lead = np.argmax(np.abs(vectors[:, j]))
            if vectors[lead, j] < 0:
                vectors[:, j] = -vectors[:, j]
    return vectors


@functools.lru_cache(maxsize=64)
def overlap_matrix(params, q, fock_cutoff, ladder_count=LADDER_COUNT):
    """O[m][n] = <q,m|_b |q,n>_c over the whole truncated sector."""
    vb = _frame_states(params, q, fock_cutoff, +1, ladder_count)
    vc = _frame_states(params, q, fock_cutoff, -1, ladder_count)
    return vb.T @ vc


def overlap_oracle(params, q, m, n, fock_cutoff=DEFAULT_OVERLAP_CUTOFF,
                   tol=OVERLAP_TOL):
    """(Omega/2)(-1)^n <q,m|_b |q,n>_c from Fock-space eigenvectors.

    The value is recomputed with the cutoff doubled; a shift above ``tol``
    raises NotConverged.
    """
    ladder_count = max(LADDER_COUNT, max(m, n) + 2)
    coarse = overlap_matrix(params, q, fock_cutoff, ladder_count)[m, n]
    fine = overlap_matrix(params, q, 2 * fock_cutoff, ladder_count)[m, n]
    sign = -1.0 if n % 2 else 1.0
    value = params.omega_qubit / 2.0 * sign * fine
    if abs(fine - coarse) > tol:
        raise NotConverged("overlap (%d, %d) moved by %.3e on cutoff doubling"
                           % (m, n, abs(fine - coarse)), partial=value)
    logger.debug("overlap (%d, %d) at cutoff %d: %.16g", m, n, 2 * fock_cutoff, value)
    return value
