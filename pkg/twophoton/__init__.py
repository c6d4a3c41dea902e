import warnings

from . import approx, gfunc, oracle, variational
from .errors import NotConverged, NumericalWarning
from .model import ModelParams, Q_EVEN, Sector, first_baseline, make_frame

__version__ = '0.1.0'

GROUND_SECTOR = Sector(Q_EVEN, -1)


def ground_state_gfunction(params, tol=gfunc.DEFAULT_TOL, n_max=None):
    """Lowest G-function zero of the (1/4, -1) sector, or None."""
    frame = make_frame(params)
    e_lo = gfunc.scan_floor(params, GROUND_SECTOR)
    e_hi = first_baseline(frame, GROUND_SECTOR) + 2.0 * frame.beta
    levels = gfunc.find_zeros_in_interval(params, GROUND_SECTOR, e_lo, e_hi,
                                          tol=tol, n_max=n_max)
    return levels[0].energy if levels else None


def solve(omega, g, orders=(0, 1, 2, 4, 8), fock_cutoff=oracle.DEFAULT_FOCK_CUTOFF,
          tol=gfunc.DEFAULT_TOL, n_max=None):
    """Ground-state energy of the two-photon Rabi model by every method.

    Returns a dict keyed by method; a method that fails leaves None and a
    message under 'flags'.
    """
    params = ModelParams(omega_qubit=omega, g=g)
    frame = make_frame(params)
    result = {
        'omega': omega,
        'g': g,
        'beta': frame.beta,
        'first_baseline': first_baseline(frame, GROUND_SECTOR),
        'flags': [],
    }

    result['gfunction'] = ground_state_gfunction(params, tol=tol, n_max=n_max)

    try:
        level = oracle.converged_levels(params, GROUND_SECTOR, 1, fock_cutoff)[0]
    except NotConverged as exc:
        result['flags'].append(str(exc))
        level = exc.partial[0]
    result['oracle'] = level['energy']
    result['oracle_delta'] = level['delta']

    result['approx'] = {}
    for order in orders:
        result['approx'][order] = approx.ground_state_energy(params, order)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', NumericalWarning)
        best = variational.minimize_variational(params)
    result['flags'].extend(str(w.message) for w in caught)
    result['variational'] = best.energy
    result['variational_r'] = best.r_opt

    return result
