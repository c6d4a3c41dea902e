import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import ceil, copysign, floor, log

from .errors import NumericalWarning, ParameterError, PoleProximity
from .model import (ModelParams, basis_photon_number, decoupled_levels,
                    energy_to_x, first_baseline, make_frame, nearest_pole,
                    pole_energy)

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_N_MAX = 500
POLE_TOL = 1e-12
ROOT_TOL = 1e-12
EXCEPTIONAL_TOL = 1e-10
MIN_GRID_PER_INTERVAL = 64
# relative offset from a pole at which interval scans start and stop
POLE_MARGIN = 1e-9

SOURCE_GFUNCTION = 'gfunction'
SOURCE_APPROX = 'approx'
SOURCE_ORACLE = 'oracle'
SOURCE_VARIATIONAL = 'variational'

FLAG_EXCEPTIONAL = 'exceptional-candidate'
FLAG_NOT_CONVERGED = 'not-converged'


@dataclass(frozen=True)
class RecurrenceSeries:
    sector: object
    x: float
    f: list
    e_scale: list
    terms: list
    n_terms: int


@dataclass(frozen=True)
class GValue:
    value: float
    n_terms_used: int
    converged: bool
    nearest_pole_distance: float
    # sum of |terms|, the local scale of G
    magnitude: float = 0.0


@dataclass(frozen=True)
class Level:
    energy: float
    bracket: tuple
    source: str
    interval: int = 0
    flags: tuple = ()


@dataclass
class SpectrumTable:
    params: ModelParams
    sector: object
    levels: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def energies(self):
        return [level.energy for level in self.levels]


def _check_pole(x, n_max):
    n, distance = nearest_pole(x)
    if n <= n_max and distance < POLE_TOL:
        raise PoleProximity(n, x)
    return distance


def default_n_max(frame, tol=DEFAULT_TOL):
    """Term budget for the G series at this coupling.

    Terms shrink geometrically with ratio 1/(1 + beta); the budget covers
    the tolerance with 50% headroom and never drops below DEFAULT_N_MAX.
    """
    ratio = 1.0 + frame.beta
    needed = int(ceil(1.5 * log(1.0 / tol) / log(ratio))) + 50
    return max(DEFAULT_N_MAX, needed)


def recurrence_coeffs(params, sector, x, n_max):
    """f_0..f_{n_max} of the three-term recurrence, plus e_n/f_n and f_n w_n."""
    if n_max < 1:
        raise ParameterError("n_max must be at least 1, got %r" % (n_max,))
    if params.g <= 0:
        raise ParameterError("the f_n recurrence needs g > 0")
    _check_pole(x, n_max)
    frame = make_frame(params)
    g = params.g
    q = float(sector.q)
    omega_sq = params.omega_qubit ** 2
    beta_sq = frame.beta ** 2

    f = [1.0]
    previous = 0.0
    for n in range(n_max):
        d = (n + q + 0.75) * (n + q + 0.25)
        numerator = ((1.0 + 4.0 * g * g) * (n + q) - beta_sq * (x + q)
                     - omega_sq / (16.0 * (n - x)))
        nxt = numerator / (4.0 * g * d) * f[n] - previous / (4.0 * d)
        previous = f[n]
        f.append(nxt)

    e_scale = [params.omega_qubit / (4.0 * frame.beta * (n - x)) for n in range(n_max + 1)]
    terms = list(_scaled_terms(params, sector, x, frame, n_max))
    return RecurrenceSeries(sector=sector, x=x, f=f, e_scale=e_scale,
                            terms=terms, n_terms=n_max + 1)


def _scaled_terms(params, sector, x, frame, n_max):
    """s_n = f_n [2(n+q-1/4)]!/n! (v/2u)^n without forming f_n or factorials.

    The coupling cancels between f_n and the weight:
        s_{n+1} = num_n s_n / ((1+beta)(n+1)) - r rho_{n-1} s_{n-1} / (n+1)
    with r = v/2u and rho_{n-1} = w_n / w_{n-1}.
    """
    q = float(sector.q)
    r = frame.squeeze_ratio
    beta_sq = frame.beta ** 2
    g_sq = params.g ** 2
    omega_sq = params.omega_qubit ** 2

    s_prev = 0.0
    s = 1.0
    rho_prev = 0.0
    yield s
    for n in range(n_max):
        numerator = ((1.0 + 4.0 * g_sq) * (n + q) - beta_sq * (x + q)
                     - omega_sq / (16.0 * (n - x)))
        s_next = (numerator * s / ((1.0 + frame.beta) * (n + 1))
                  - r * rho_prev * s_prev / (n + 1))
        k = basis_photon_number(sector.q, n)
        rho_prev = (k + 1) * (k + 2) / (n + 1.0) * r
        s_prev, s = s, s_next
        yield s


# ------------------------------------------------------------------------------
# G-function -------------------------------------------------------------------
# ------------------------------------------------------------------------------
#
#    G(x) = sum_n f_n [1 + P Omega / (4 beta (n - x))] [2(n+q-1/4)]!/n! (v/2u)^n
#
# accumulated through the scaled terms until two consecutive terms fall below
# tol times the running sum of |terms|, which stays finite at a zero of G.
# at g = 0 the scaled terms stay finite and the sum reproduces the decoupled
# spectrum.
#
# ------------------------------------------------------------------------------
def g_eval_x(params, sector, x, tol=DEFAULT_TOL, n_max=None, frame=None):
    if frame is None:
        frame = make_frame(params)
    if n_max is None:
        n_max = default_n_max(frame, tol)
    distance = _check_pole(x, n_max)
    pole_weight = sector.parity * params.omega_qubit / (4.0 * frame.beta)

    total = 0.0
    magnitude = 0.0
    small = 0
    used = 0
    converged = False
    for n, s in enumerate(_scaled_terms(params, sector, x, frame, n_max)):
        term = s * (1.0 + pole_weight / (n - x))
        total += term
        magnitude += abs(term)
        used = n + 1
        if abs(term) <= tol * magnitude:
            small += 1
            if small == 2:
                converged = True
                break
        else:
            small = 0

    if not converged:
        warnings.warn("G series not converged after %d terms at x = %.12g (%s)"
                      % (used, x, sector.label), NumericalWarning)
    return GValue(value=total, n_terms_used=used, converged=converged,
                  nearest_pole_distance=distance, magnitude=magnitude)


def g_eval(params, sector, energy, tol=DEFAULT_TOL, n_max=None):
    frame = make_frame(params)
    x = energy_to_x(frame, sector, energy)
    return g_eval_x(params, sector, x, tol=tol, n_max=n_max, frame=frame)


def _pole_intervals(frame, sector, e_lo, e_hi):
    """Split [e_lo, e_hi] at the poles; yields (a, b, a_is_pole, b_is_pole, index)."""
    x_lo = energy_to_x(frame, sector, e_lo)
    x_hi = energy_to_x(frame, sector, e_hi)
    start_pole, start_distance = nearest_pole(x_lo)
    start_is_pole = start_distance < POLE_TOL
    if start_is_pole:
        n = start_pole + 1
    else:
        n = max(0, int(floor(x_lo)) + 1)
    end_pole, end_distance = nearest_pole(x_hi)
    end_is_pole = end_distance < POLE_TOL
    start, index = e_lo, n
    while n < x_hi and not (end_is_pole and n == end_pole):
        pole = pole_energy(frame, sector, n)
        yield start, pole, start_is_pole, True, index
        start, start_is_pole = pole, True
        n += 1
        index = n
    yield start, e_hi, start_is_pole, end_is_pole, index


def _bisect(evaluate, a, fa, b, root_tol):
    while b - a > root_tol:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = evaluate(mid)
        if fm == 0.0:
            return mid, mid
        if copysign(1.0, fm) == copysign(1.0, fa):
            a, fa = mid, fm
        else:
            b = mid
    return a, b


def find_zeros_in_interval(params, sector, e_lo, e_hi,
                           grid_points=MIN_GRID_PER_INTERVAL, root_tol=ROOT_TOL,
                           tol=DEFAULT_TOL, n_max=None):
    """Zeros of G in [e_lo, e_hi], splitting at poles internally."""
    frame = make_frame(params)
    if n_max is None:
        n_max = default_n_max(frame, tol)
    spacing = 2.0 * frame.beta
    margin = POLE_MARGIN * spacing
    unconverged = []

    def evaluate(energy):
        x = energy_to_x(frame, sector, energy)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', NumericalWarning)
            gv = g_eval_x(params, sector, x, tol=tol, n_max=n_max, frame=frame)
        if not gv.converged:
            unconverged.append(energy)
        return gv.value

    levels = []
    if e_hi <= e_lo:
        return levels
    for a, b, a_pole, b_pole, index in _pole_intervals(frame, sector, e_lo, e_hi):
        lo = a + margin if a_pole else a
        hi = b - margin if b_pole else b
        if hi <= lo:
            continue
        # at least grid_points samples per pole spacing
        count = max(grid_points, int(ceil((hi - lo) / spacing * grid_points)))
        step = (hi - lo) / count
        grid = [lo + i * step for i in range(count)] + [hi]
        values = [evaluate(e) for e in grid]
        for i in range(count):
            fa, fb = values[i], values[i + 1]
            if fa == 0.0:
                roots = [(grid[i], grid[i])]
            elif fa * fb < 0:
                roots = [_bisect(evaluate, grid[i], fa, grid[i + 1], root_tol)]
            else:
                continue
            for r_lo, r_hi in roots:
                flags = []
                energy = 0.5 * (r_lo + r_hi)
                near_pole = ((a_pole and energy - a < EXCEPTIONAL_TOL + margin)
                             or (b_pole and b - energy < EXCEPTIONAL_TOL + margin))
                if near_pole:
                    flags.append(FLAG_EXCEPTIONAL)
                if any(grid[i] <= e <= grid[i + 1] for e in unconverged):
                    flags.append(FLAG_NOT_CONVERGED)
                levels.append(Level(energy=energy, bracket=(r_lo, r_hi),
                                    source=SOURCE_GFUNCTION, interval=index,
                                    flags=tuple(flags)))
        del unconverged[:]

    return sorted(levels, key=lambda level: level.energy)


def scan_floor(params, sector):
    """Lowest energy scanned below the first pole."""
    n_levels = int(params.omega_qubit) + 2
    return min(decoupled_levels(params, sector, n_levels)) - params.omega_qubit


def sector_spectrum(params, sector, e_window=None, grid_points=MIN_GRID_PER_INTERVAL,
                    root_tol=ROOT_TOL, tol=DEFAULT_TOL, n_max=None):
    """SpectrumTable of one (g, sector): below the first pole and between poles."""
    frame = make_frame(params)
    if e_window is None:
        e_lo, e_hi = scan_floor(params, sector), first_baseline(frame, sector) + 10.0
    else:
        e_lo, e_hi = e_window
    table = SpectrumTable(params=params, sector=sector)
    try:
        levels = find_zeros_in_interval(params, sector, e_lo, e_hi,
                                        grid_points=grid_points, root_tol=root_tol,
                                        tol=tol, n_max=n_max)
    except PoleProximity as exc:
        table.flags.append('pole-proximity at n=%d' % exc.n)
        return table

    for level in levels:
        if table.levels and level.energy - table.levels[-1].energy <= root_tol:
            continue
        table.levels.append(level)
        for flag in level.flags:
            table.flags.append('%s at E=%.12g' % (flag, level.energy))
    logger.debug("g=%.6g %s: %d levels", params.g, sector.label, len(table.levels))
    return table


def _sweep_job(args):
    return sector_spectrum(*args[:2], **args[2])


def spectrum_sweep(g_values, omega, sector, e_window=None, workers=None, **options):
    """One SpectrumTable per g, ordered by g.

    Numerical trouble at one g (pole proximity, unconverged series) ends up in
    that table's flags; the sweep itself carries on.
    """
    # invalid couplings are rejected before any work starts
    jobs = [(ModelParams(omega_qubit=omega, g=g), sector, dict(options, e_window=e_window))
            for g in sorted(g_values)]

    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_job, jobs))
    else:
        results = [_sweep_job(job) for job in jobs]

    for table in results:
        logger.info("g=%.6g %s: %d levels, %d flags", table.params.g,
                    table.sector.label, len(table.levels), len(table.flags))
    return results


def exceptional_candidates(table):
    return [level for level in table.levels if FLAG_EXCEPTIONAL in level.flags]


def below_baseline_levels(table):
    return [level for level in table.levels if level.interval == 0]


def baseline_crossings(tables):
    """g-brackets where a level enters the region below the zeroth baseline."""
    crossings = []
    ordered = sorted(tables, key=lambda table: table.params.g)
    for before, after in zip(ordered, ordered[1:]):
        n_before = len(below_baseline_levels(before))
        n_after = len(below_baseline_levels(after))
        if n_after > n_before:
            crossings.append({
                'g_before': before.params.g,
                'g_after': after.params.g,
                'count_before': n_before,
                'count_after': n_after,
            })
    return crossings


def level_in_interval(table, interval):
    for level in table.levels:
        if level.interval == interval:
            return level
    return None

