"""Exact diagonalisation of

    H = -(Omega/2) sigma_x + a†a + g [(a†)^2 + a^2] sigma_z

in the photon Fock basis truncated at ``fock_cutoff`` photons.

Only the linalg kernels are used here; nothing from gfunc, melem or approx.
All results are truncated approximations for g < 1/2. The continuum that
forms at g = 1/2 has no finite-basis representation.
"""
import logging
import warnings
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import NotConverged, NumericalWarning, ParameterError
from .linalg import jacobi_symmetric_eigen, tridiagonal_eigenvalues
from .model import basis_photon_number

logger = logging.getLogger(__name__)

MIN_FOCK_CUTOFF = 4
DEFAULT_FOCK_CUTOFF = 200
MAX_FOCK_CUTOFF = 6400
DOUBLING_TOL = 1e-8
PARITY_TOL = 1e-8

BASIS_SPIN_BOSON = 'spin-boson'
BASIS_PARITY = 'parity'


@dataclass(frozen=True)
class FockHamiltonian:
    """``basis`` is 'spin-boson' (sigma_z up block, then down block, photons
    ascending within each) or 'parity' (one P-block in the sigma_x basis)."""
    params: object
    fock_cutoff: int
    sector: object
    matrix: np.ndarray
    photons: np.ndarray
    basis: str


def _photons(q, fock_cutoff):
    if fock_cutoff < MIN_FOCK_CUTOFF:
        raise ParameterError("fock_cutoff must be at least %d, got %r"
                             % (MIN_FOCK_CUTOFF, fock_cutoff))
    return np.arange(basis_photon_number(q, 0), fock_cutoff + 1, 2)


def _pair_amplitudes(g, photons):
    """g sqrt((p+1)(p+2)) linking p and p+2."""
    return np.array([g * sqrt((p + 1) * (p + 2)) for p in photons[:-1]])


def _spin_boson_matrix(params, photons):
    m = len(photons)
    squeeze = _pair_amplitudes(params.g, photons)
    h = np.zeros((2 * m, 2 * m))
    for block, sign in ((0, 1.0), (1, -1.0)):
        offset = block * m
        idx = np.arange(m)
        h[offset + idx, offset + idx] = photons
        h[offset + idx[:-1], offset + idx[1:]] = sign * squeeze
        h[offset + idx[1:], offset + idx[:-1]] = sign * squeeze
    h[np.arange(m), m + np.arange(m)] = -params.omega_qubit / 2.0
    h[m + np.arange(m), np.arange(m)] = -params.omega_qubit / 2.0
    return h


def build_hamiltonian(params, sector, fock_cutoff=DEFAULT_FOCK_CUTOFF):
    """Spin-boson matrix on the photon states of the sector's Bargmann index."""
    photons = _photons(sector.q, fock_cutoff)
    return FockHamiltonian(params=params, fock_cutoff=fock_cutoff, sector=sector,
                           matrix=_spin_boson_matrix(params, photons),
                           photons=photons, basis=BASIS_SPIN_BOSON)


def parity_signs(photons):
    return np.where((photons // 2) % 2 == 0, 1.0, -1.0)


def parity_operator(ham):
    """P = -sigma_x (-1)^floor(a†a / 2) in the spin-boson basis."""
    m = len(ham.photons)
    signs = parity_signs(ham.photons)
    p = np.zeros((2 * m, 2 * m))
    p[np.arange(m), m + np.arange(m)] = -signs
    p[m + np.arange(m), np.arange(m)] = -signs
    return p


def parity_block(params, sector, fock_cutoff=DEFAULT_FOCK_CUTOFF):
    """The P = sector.parity block: tridiagonal in the sigma_x basis.

    In that basis the spin of each photon state is fixed by P, the diagonal
    is p + P (Omega/2) (-1)^floor(p/2) and sigma_z pairs p with p + 2.
    """
    photons = _photons(sector.q, fock_cutoff)
    m = len(photons)
    h = np.diag(photons + sector.parity * params.omega_qubit / 2.0 * parity_signs(photons))
    squeeze = _pair_amplitudes(params.g, photons)
    h[np.arange(m - 1), np.arange(1, m)] = squeeze
    h[np.arange(1, m), np.arange(m - 1)] = squeeze
    return FockHamiltonian(params=params, fock_cutoff=fock_cutoff, sector=sector,
                           matrix=h, photons=photons, basis=BASIS_PARITY)


def eigen_spectrum(ham, k):
    """k lowest (energy, parity) pairs of a Fock Hamiltonian."""
    dim = ham.matrix.shape[0]
    if not 0 < k <= dim:
        raise ParameterError("k must lie in [1, %d], got %r" % (dim, k))
    if ham.basis == BASIS_PARITY:
        values = jacobi_symmetric_eigen(ham.matrix)
        return [(float(e), ham.sector.parity) for e in values[:k]]

    values, vectors = jacobi_symmetric_eigen(ham.matrix, vectors=True)
    parity = parity_operator(ham)
    spectrum = []
    for j in range(k):
        vec = vectors[:, j]
        expectation = float(vec @ parity @ vec)
        label = 1 if expectation > 0 else -1
        if abs(expectation - label) > PARITY_TOL:
            warnings.warn("level %d (E = %.12g) has mixed parity %.3e; degenerate "
                          "across parities?" % (j, values[j], expectation),
                          NumericalWarning)
        spectrum.append((float(values[j]), label))
    return spectrum


def sector_levels(params, sector, k, fock_cutoff=DEFAULT_FOCK_CUTOFF):
    """k lowest energies of the (q, P) sector via Sturm bisection on its block."""
    block = parity_block(params, sector, fock_cutoff)
    m = block.matrix
    n = m.shape[0]
    if not 0 < k <= n:
        raise ParameterError("k must lie in [1, %d], got %r" % (n, k))
    return list(tridiagonal_eigenvalues(np.diag(m), np.diag(m, 1), k))


def converged_levels(params, sector, k, fock_cutoff=DEFAULT_FOCK_CUTOFF,
                     tol=DOUBLING_TOL, max_cutoff=MAX_FOCK_CUTOFF):
    """Sector levels with doubling deltas.

    The cutoff doubles until the k lowest levels move by less than ``tol``.
    Returns dicts with energy, parity, delta and the final cutoff; raises
    NotConverged (partial = the dicts) if ``max_cutoff`` is reached first.
    """
    cutoff = fock_cutoff
    coarse = sector_levels(params, sector, k, cutoff)
    while True:
        fine = sector_levels(params, sector, k, 2 * cutoff)
        deltas = [abs(a - b) for a, b in zip(coarse, fine)]
        levels = [{
            'energy': e,
            'parity': sector.parity,
            'delta': d,
            'fock_cutoff': 2 * cutoff,
        } for e, d in zip(fine, deltas)]
        logger.debug("cutoff %d -> %d: max delta %.3e", cutoff, 2 * cutoff, max(deltas))
        if max(deltas) < tol:
            return levels
        cutoff *= 2
        if 2 * cutoff > max_cutoff:
            raise NotConverged("levels of %s still move by %.3e at cutoff %d"
                               % (sector.label, max(deltas), cutoff), partial=levels)
        coarse = fine


def full_spectrum(params, fock_cutoff, k):
    """k lowest levels with no parity or Bargmann restriction."""
    photons = np.arange(0, fock_cutoff + 1)
    m = len(photons)
    h = np.zeros((2 * m, 2 * m))
    idx = np.arange(m - 2)
    squeeze = np.array([params.g * sqrt((p + 1) * (p + 2)) for p in photons[:-2]])
    for offset, sign in ((0, 1.0), (m, -1.0)):
        h[offset + np.arange(m), offset + np.arange(m)] = photons
        h[offset + idx, offset + idx + 2] = sign * squeeze
        h[offset + idx + 2, offset + idx] = sign * squeeze
    h[np.arange(m), m + np.arange(m)] = -params.omega_qubit / 2.0
    h[m + np.arange(m), np.arange(m)] = -params.omega_qubit / 2.0
    return list(jacobi_symmetric_eigen(h)[:k])
