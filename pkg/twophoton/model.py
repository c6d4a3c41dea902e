from dataclasses import dataclass
from fractions import Fraction
from math import atanh, ceil, floor, isfinite, sqrt

import numpy as np

from .errors import ParameterError

G_CRITICAL = 0.5
# below this distance from g_c the frame constants lose all precision
MIN_BETA = 1e-12

Q_EVEN = Fraction(1, 4)
Q_ODD = Fraction(3, 4)
BARGMANN_INDICES = (Q_EVEN, Q_ODD)
PARITIES = (-1, +1)


@dataclass(frozen=True)
class ModelParams:
    """Qubit splitting ``omega_qubit`` and two-photon coupling ``g``.

    The cavity frequency is fixed to 1; every energy is in units of it.
    """
    omega_qubit: float
    g: float

    def __post_init__(self):
        if not (isfinite(self.omega_qubit) and self.omega_qubit > 0):
            raise ParameterError(
                "omega_qubit must be positive, got %r" % (self.omega_qubit,))
        if not (isfinite(self.g) and 0 <= self.g < G_CRITICAL):
            raise ParameterError(
                "g must lie in [0, 1/2), got %r" % (self.g,))


@dataclass(frozen=True)
class Sector:
    q: Fraction
    parity: int

    def __post_init__(self):
        q = Fraction(self.q)
        if q not in BARGMANN_INDICES:
            raise ParameterError("Bargmann index must be 1/4 or 3/4, got %s" % q)
        if self.parity not in PARITIES:
            raise ParameterError("parity must be +1 or -1, got %r" % (self.parity,))
        object.__setattr__(self, 'q', q)

    @property
    def label(self):
        return "q=%s,P=%+d" % (self.q, self.parity)


def all_sectors():
    return [Sector(q, parity) for q in BARGMANN_INDICES for parity in PARITIES]


def parse_q(text):
    """Accepts '1/4', '3/4', '0.25', '0.75'."""
    try:
        q = Fraction(text).limit_denominator(4)
    except (ValueError, ZeroDivisionError):
        raise ParameterError("cannot read Bargmann index %r" % (text,))
    if q not in BARGMANN_INDICES:
        raise ParameterError("Bargmann index must be 1/4 or 3/4, got %r" % (text,))
    return q


@dataclass(frozen=True)
class BogoliubovFrame:
    g: float
    beta: float
    u: float
    v: float
    squeeze_ratio: float


def make_frame(params):
    g = params.g
    # (1-2g)(1+2g) keeps digits when g is close to 1/2
    beta = sqrt((1.0 - 2.0 * g) * (1.0 + 2.0 * g))
    if beta < MIN_BETA:
        raise ParameterError("g = %r is too close to 1/2" % (g,))
    u = sqrt((1.0 + beta) / (2.0 * beta))
    v = sqrt((1.0 - beta) / (2.0 * beta))

    return BogoliubovFrame(g=g, beta=beta, u=u, v=v, squeeze_ratio=v / (2.0 * u))


def squeeze_parameter(frame):
    """r with u = cosh r, v = sinh r."""
    return atanh(frame.v / frame.u)


def basis_photon_number(q, n):
    """Photon number 2(n + q - 1/4) of |q,n>, an exact integer."""
    k = 2 * (n + Fraction(q) - Fraction(1, 4))
    assert k.denominator == 1
    return int(k)


def photon_sector(p):
    """(q, n) of the basis state carrying p photons."""
    return (Q_EVEN if p % 2 == 0 else Q_ODD), p // 2


def pole_energy(frame, sector, n):
    if n < 0:
        raise ParameterError("pole index must be non-negative, got %r" % (n,))
    return 2.0 * frame.beta * (n + float(sector.q)) - 0.5


def first_baseline(frame, sector):
    # zeroth baseline of the spectral graph
    return pole_energy(frame, sector, 0)


def x_to_energy(frame, sector, x):
    return 2.0 * frame.beta * (x + float(sector.q)) - 0.5


def energy_to_x(frame, sector, energy):
    # same as E/(2 beta) + v^2/2 - q + 1/4
    return (energy + 0.5) / (2.0 * frame.beta) - float(sector.q)


def decoupled_levels(params, sector, n_max):
    """g = 0 energies of the sector, n = 0..n_max."""
    half = params.omega_qubit / 2.0
    levels = []
    for n in range(n_max + 1):
        sign = 1 if n % 2 == 0 else -1
        levels.append(sector.parity * half * sign + basis_photon_number(sector.q, n))

    return levels


# ------------------------------------------------------------------------------
# levels starting below the zeroth baseline -------------------------------------
# ------------------------------------------------------------------------------
#
# at g = 0 level n of parity P lies below the first pole iff
#
#    n < -P * (Omega / 4) * (-1)^n
#
# the right-hand side is bounded by Omega / 4, so only n <= Omega / 4 need be
# checked. equality puts the level on the baseline itself and is reported
# separately instead of being counted.
#
# ------------------------------------------------------------------------------
def baseline_count_details(params, sector):
    quarter = Fraction(params.omega_qubit).limit_denominator(10 ** 12) / 4
    below = []
    on_baseline = []
    for n in range(int(ceil(quarter)) + 1):
        rhs = -sector.parity * quarter * (1 if n % 2 == 0 else -1)
        if n < rhs:
            below.append(n)
        elif n == rhs:
            on_baseline.append(n)

    return {'below': below, 'on_baseline': on_baseline}


def below_baseline_count(params, sector):
    return len(baseline_count_details(params, sector)['below'])


def vacuum_weights(frame, q, n_max):
    """Normalised b-basis coefficients of the lowest a-frame state of sector q.

    z_n is proportional to sqrt([2(n+q-1/4)]!) / n! * (v/2u)^n.
    """
    z = np.empty(n_max + 1)
    z[0] = 1.0
    for n in range(n_max):
        k = basis_photon_number(q, n)
        z[n + 1] = z[n] * sqrt((k + 1) * (k + 2)) / (n + 1) * frame.squeeze_ratio

    return z / np.sqrt(np.dot(z, z))


def nearest_pole(x):
    """Nearest non-negative integer to x and its distance."""
    n = max(0, int(floor(x + 0.5)))
    return n, abs(x - n)
