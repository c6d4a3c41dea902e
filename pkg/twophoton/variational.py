"""Squeezed-state variational bound for the ground state (q = 1/4, P = -1).

    E(r) = -(Omega/2) [1 - tanh^2(2r)]^(1/4) + sinh^2(r) - g sinh(2r)
"""
import logging
import warnings
from dataclasses import dataclass
from math import cosh, sinh, sqrt, tanh

from .errors import NoInteriorMinimum, NumericalWarning

logger = logging.getLogger(__name__)

PHI_RATIO = 2 / (1 + sqrt(5))
VARIATIONAL_STARTS = (0.0, 0.5, 1.0, 2.0, 4.0)
R_MAX = 40.0
DEFAULT_TOL = 1e-10
MAX_ITERATIONS = 200
FD_STEP = 1e-6
STATIONARY_TOL = 1e-8


@dataclass(frozen=True)
class VariationalResult:
    r_opt: float
    energy: float
    iterations: int
    converged: bool
    boundary: bool = False
    derivative: float = 0.0


def variational_energy(params, r):
    c = cosh(2.0 * r)
    return (-params.omega_qubit / 2.0 * sqrt(1.0 / c)
            + sinh(r) ** 2 - params.g * sinh(2.0 * r))


def variational_derivative(params, r):
    c = cosh(2.0 * r)
    return (params.omega_qubit / 2.0 * sqrt(1.0 / c) * tanh(2.0 * r)
            + sinh(2.0 * r) - 2.0 * params.g * c)


def finite_difference_derivative(params, r, step=FD_STEP):
    return (variational_energy(params, r + step)
            - variational_energy(params, r - step)) / (2.0 * step)


def _golden(f, lo, hi, tol, max_iterations):
    iteration = 0
    x1 = hi - PHI_RATIO * (hi - lo)
    x2 = lo + PHI_RATIO * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while iteration < max_iterations and abs(hi - lo) > tol:
        iteration += 1
        if f2 > f1:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - PHI_RATIO * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + PHI_RATIO * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x), iteration, abs(hi - lo) <= tol


def _brackets(r_bracket):
    if r_bracket is not None:
        return [tuple(r_bracket)]
    starts = list(VARIATIONAL_STARTS)
    return list(zip(starts, starts[1:])) + [(starts[-1], 2.0 * starts[-1])]


def minimize_variational(params, r_bracket=None, tol=DEFAULT_TOL, strict=False):
    """Global minimum of E(r) over r >= 0.

    Golden-section searches run on consecutive brackets between the starting
    points; the lowest wins. A minimum sitting on the outermost edge pushes
    that edge out until R_MAX, after which the edge value is returned flagged
    as a boundary result (or NoInteriorMinimum is raised when ``strict``).
    """
    energy = lambda r: variational_energy(params, r)
    brackets = _brackets(r_bracket)
    best = None
    total_iterations = 0
    for lo, hi in brackets:
        r, e, iterations, ok = _golden(energy, lo, hi, tol, MAX_ITERATIONS)
        total_iterations += iterations
        if best is None or e < best[1]:
            best = (r, e, ok, hi)

    r, e, ok, hi = best
    while r_bracket is None and hi - r <= 10 * tol and hi < R_MAX:
        lo, hi = hi, min(2.0 * hi, R_MAX)
        r, e, iterations, ok = _golden(energy, lo, hi, tol, MAX_ITERATIONS)
        total_iterations += iterations
        logger.debug("expanded variational bracket to [%g, %g]", lo, hi)

    boundary = r > tol and hi - r <= 10 * tol
    derivative = finite_difference_derivative(params, r) if r > FD_STEP else 0.0
    if boundary:
        message = "E(r) still decreasing at r = %g (g = %r)" % (r, params.g)
        if strict:
            raise NoInteriorMinimum(message)
        warnings.warn(message, NumericalWarning)

    return VariationalResult(r_opt=r, energy=e, iterations=total_iterations,
                             converged=ok and not boundary, boundary=boundary,
                             derivative=derivative)
