"""Finite-order approximations built on the b-frame projection

    beta (2(m+q-1/4) - v^2) u_m + P sum_n D_mn u_n = E u_m

keeping the N + 1 coefficients u_m .. u_{m+N}.
"""
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import NegativeDiscriminant, ParameterError
from .linalg import real_eigenvalues
from .melem import d_element
from .model import Q_EVEN, Sector, basis_photon_number, make_frame

GROUND_SECTOR = Sector(Q_EVEN, -1)


@dataclass(frozen=True)
class TruncatedProblem:
    sector: Sector
    order: int
    base: int
    matrix: np.ndarray
    eigenvalues: tuple


def _diagonal(frame, q, index):
    return frame.beta * (basis_photon_number(q, index) - frame.v ** 2)


def truncated_problem(params, sector, m, order):
    if m < 0 or order < 0:
        raise ParameterError("m and order must be non-negative, got (%r, %r)" % (m, order))
    frame = make_frame(params)
    size = order + 1
    a = np.empty((size, size))
    for i in range(size):
        for j in range(size):
            a[i, j] = sector.parity * d_element(params, sector.q, m + i, m + j)
        a[i, i] += _diagonal(frame, sector.q, m + i)

    values = tuple(float(e) for e in real_eigenvalues(a))
    return TruncatedProblem(sector=sector, order=order, base=m, matrix=a,
                            eigenvalues=values)


def diagonalize_truncated(params, sector, m, order):
    return list(truncated_problem(params, sector, m, order).eigenvalues)


def zeroth_order_energy(params, sector, m):
    frame = make_frame(params)
    return _diagonal(frame, sector.q, m) + sector.parity * d_element(params, sector.q, m, m)


def _two_level(params, sector, m):
    frame = make_frame(params)
    q, parity = sector.q, sector.parity
    d00 = d_element(params, q, m, m)
    d11 = d_element(params, q, m + 1, m + 1)
    d01 = d_element(params, q, m, m + 1)
    d10 = d_element(params, q, m + 1, m)

    center = frame.beta * (basis_photon_number(q, m) + 1 - frame.v ** 2) \
        + parity * (d00 + d11) / 2.0
    discriminant = (parity * (d00 - d11) - 2.0 * frame.beta) ** 2 + 4.0 * d01 * d10
    if discriminant < 0:
        raise NegativeDiscriminant(
            "first order at g=%r, m=%d, %s: discriminant %.3e"
            % (params.g, m, sector.label, discriminant))
    half_width = 0.5 * sqrt(discriminant)
    return center - half_width, center + half_width


def first_order_energies(params, q, m):
    """Both first-order levels at base index m; parity is (-1)^m."""
    return _two_level(params, Sector(q, -1 if m % 2 else 1), m)


def excited_first_order(params, q, m_max):
    return [(m,) + first_order_energies(params, q, m) for m in range(m_max + 1)]


def ground_state_first_order(params):
    return _two_level(params, GROUND_SECTOR, 0)[0]


def ground_state_energy(params, order):
    """Lowest eigenvalue of the truncated problem at m = 0, q = 1/4, P = -1."""
    return diagonalize_truncated(params, GROUND_SECTOR, 0, order)[0]
