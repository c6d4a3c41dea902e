import argparse
import csv
import json
import logging
import sys
import warnings

import numpy as np

from . import GROUND_SECTOR, __version__, approx, gfunc, oracle, solve, variational
from .config import COMMANDS, FORMATS, RunConfig, canonical_json, config_hash
from .errors import (NotConverged, ParameterError, PoleProximity,
                     TwoPhotonError)
from .model import (ModelParams, Sector, all_sectors, energy_to_x,
                    first_baseline, make_frame, nearest_pole, pole_energy)

logger = logging.getLogger('twophoton')

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

parser = argparse.ArgumentParser(
    prog='twophoton',
    description='Spectra of the two-photon quantum Rabi model from G-function '
                'zeros, finite-order approximations, a variational bound and '
                'exact Fock-space diagonalisation',
)
parser.add_argument('command', choices=COMMANDS)
parser.add_argument('--omega', type=float, help='qubit splitting (default: 1)')
parser.add_argument('--g', type=float, help='single coupling value')
parser.add_argument('--g-min', dest='g_min', type=float)
parser.add_argument('--g-max', dest='g_max', type=float)
parser.add_argument('--g-steps', dest='g_steps', type=int)
parser.add_argument('--q', choices=('1/4', '3/4', 'both'))
parser.add_argument('--parity', choices=('+1', '-1', 'both'))
parser.add_argument('--e-min', dest='e_min', type=float)
parser.add_argument('--e-max', dest='e_max', type=float)
parser.add_argument('--points', type=int, help='energy samples for gcurve')
parser.add_argument('--tol', type=float, help='relative tolerance of the G series')
parser.add_argument('--n-max', dest='n_max', type=int, help='G series term budget')
parser.add_argument('--grid-points', dest='grid_points', type=int,
                    help='samples per pole spacing in root scans')
parser.add_argument('--fock-cutoff', dest='fock_cutoff', type=int,
                    help='starting photon cutoff for the oracle')
parser.add_argument('--order', dest='orders', type=int, action='append',
                    help='truncation order N, repeatable')
parser.add_argument('--levels', type=int, help='oracle levels per sector')
parser.add_argument('--eps', type=float, action='append',
                    help='distance below g = 1/2 for gap-report, repeatable')
parser.add_argument('--workers', type=int, help='processes for g sweeps')
parser.add_argument('--format', choices=FORMATS)
parser.add_argument('--out', help='output path (default: stdout)')
parser.add_argument('-v', '--verbose', action='count', default=0)


class JSONEncoder(json.JSONEncoder):
    def default(self, o):
        try:
            return super(JSONEncoder, self).default(o)
        except TypeError:
            return str(o)


def format_value(value):
    if isinstance(value, float):
        return '%.17g' % value
    if isinstance(value, (list, tuple)):
        return ';'.join(str(v) for v in value)
    if value is None:
        return ''
    return str(value)


def _params(config, g):
    return ModelParams(omega_qubit=config.omega, g=g)


# ------------------------------------------------------------------------------
# commands: each yields row dicts ----------------------------------------------
# ------------------------------------------------------------------------------
def cmd_gcurve(config):
    count = config.points
    if config.e_max <= config.e_min or count < 1:
        return
    step = (config.e_max - config.e_min) / count
    for g in config.g_values():
        params = _params(config, g)
        frame = make_frame(params)
        for q in config.bargmann_indices():
            for i in range(count + 1):
                energy = config.e_min + i * step
                row = {'g': g, 'q': str(q), 'E': energy}
                x = energy_to_x(frame, Sector(q, 1), energy)
                row['nearest_pole'] = pole_energy(frame, Sector(q, 1), nearest_pole(x)[0])
                converged = True
                for parity, column in ((1, 'G_plus'), (-1, 'G_minus')):
                    try:
                        with warnings.catch_warnings():
                            warnings.simplefilter('ignore')
                            value = gfunc.g_eval(params, Sector(q, parity), energy,
                                                 tol=config.tol, n_max=config.n_max)
                        row[column] = value.value
                        converged = converged and value.converged
                    except PoleProximity:
                        row[column] = float('nan')
                        converged = False
                row['converged'] = converged
                yield row


def _sweep(config, sector):
    return gfunc.spectrum_sweep(config.g_values(), config.omega, sector,
                                e_window=(config.e_min, config.e_max),
                                workers=config.workers, tol=config.tol,
                                n_max=config.n_max, grid_points=config.grid_points)


def cmd_spectrum(config):
    for sector in config.sectors():
        for table in _sweep(config, sector):
            frame = make_frame(table.params)
            for index, level in enumerate(table.levels):
                upper = pole_energy(frame, sector, level.interval)
                lower = pole_energy(frame, sector, level.interval - 1) if level.interval else None
                yield {
                    'g': table.params.g,
                    'q': str(sector.q),
                    'parity': sector.parity,
                    'level_index': index,
                    'energy': level.energy,
                    'interval': level.interval,
                    'pole_below': lower,
                    'pole_above': upper,
                    'baseline': first_baseline(frame, sector),
                    'source': level.source,
                    'flags': level.flags,
                }


def cmd_baselines(config):
    for g in config.g_values():
        frame = make_frame(_params(config, g))
        for q in config.bargmann_indices():
            sector = Sector(q, 1)
            n = 0
            while True:
                energy = pole_energy(frame, sector, n)
                if energy > config.e_max:
                    break
                yield {'g': g, 'q': str(q), 'beta': frame.beta, 'n': n,
                       'pole_energy': energy, 'is_baseline': n == 0}
                n += 1


def cmd_approx(config):
    for g in config.g_values():
        params = _params(config, g)
        for sector in config.sectors():
            for order in config.orders:
                for index, energy in enumerate(approx.diagonalize_truncated(params, sector, 0, order)):
                    yield {'g': g, 'q': str(sector.q), 'parity': sector.parity,
                           'order': order, 'level_index': index, 'energy': energy,
                           'source': 'approx-%d' % order}


def cmd_variational(config):
    for g in config.g_values():
        result = variational.minimize_variational(_params(config, g))
        yield {'g': g, 'r_opt': result.r_opt, 'energy': result.energy,
               'iterations': result.iterations, 'converged': result.converged,
               'boundary': result.boundary, 'derivative': result.derivative}


def _oracle_levels(params, sector, config):
    try:
        return oracle.converged_levels(params, sector, config.levels, config.fock_cutoff), ()
    except NotConverged as exc:
        return exc.partial, ('not-converged',)


def cmd_oracle(config):
    for g in config.g_values():
        params = _params(config, g)
        for sector in config.sectors():
            levels, flags = _oracle_levels(params, sector, config)
            for index, level in enumerate(levels):
                yield {'g': g, 'q': str(sector.q), 'parity': sector.parity,
                       'level_index': index, 'energy': level['energy'],
                       'delta': level['delta'], 'fock_cutoff': level['fock_cutoff'],
                       'source': 'oracle', 'flags': flags}


def cmd_compare(config):
    for g in config.g_values():
        result = solve(config.omega, g, orders=config.orders,
                       fock_cutoff=config.fock_cutoff, tol=config.tol, n_max=config.n_max)
        row = {'g': g, 'gfunction': result['gfunction'], 'oracle': result['oracle'],
               'oracle_delta': result['oracle_delta']}
        for order in config.orders:
            row['approx-%d' % order] = result['approx'][order]
        row['variational'] = result['variational']
        row['flags'] = result['flags']
        yield row


def cmd_gap_report(config):
    for eps in sorted(config.eps, reverse=True):
        g = 0.5 - eps
        params = _params(config, g)
        frame = make_frame(params)
        ground, flags = _ground(params, GROUND_SECTOR, config)
        cutoff = ground['fock_cutoff']

        collapsed = []
        below = []
        for sector in all_sectors():
            baseline = first_baseline(frame, sector)
            for energy in oracle.sector_levels(params, sector, config.levels, cutoff):
                if energy < baseline:
                    below.append({'q': str(sector.q), 'parity': sector.parity,
                                  'energy': energy})
                else:
                    collapsed.append(energy)
        edge = float(np.median(collapsed)) if collapsed else None
        yield {
            'g': g,
            'eps': eps,
            'beta': frame.beta,
            'ground_state': ground['energy'],
            'ground_state_delta': ground['delta'],
            'fock_cutoff': cutoff,
            'continuum_edge': edge,
            'gap': None if edge is None else edge - ground['energy'],
            'below_continuum': sorted(below, key=lambda level: level['energy']),
            'flags': flags,
        }


def _ground(params, sector, config):
    try:
        return oracle.converged_levels(params, sector, 1, config.fock_cutoff)[0], ()
    except NotConverged as exc:
        return exc.partial[0], ('not-converged',)


COLUMNS = {
    'gcurve': ('g', 'q', 'E', 'nearest_pole', 'G_plus', 'G_minus', 'converged'),
    'spectrum': ('g', 'q', 'parity', 'level_index', 'energy', 'interval',
                 'pole_below', 'pole_above', 'baseline', 'source', 'flags'),
    'baselines': ('g', 'q', 'beta', 'n', 'pole_energy', 'is_baseline'),
    'approx': ('g', 'q', 'parity', 'order', 'level_index', 'energy', 'source'),
    'variational': ('g', 'r_opt', 'energy', 'iterations', 'converged',
                    'boundary', 'derivative'),
    'oracle': ('g', 'q', 'parity', 'level_index', 'energy', 'delta',
               'fock_cutoff', 'source', 'flags'),
    'compare': ('g', 'gfunction', 'oracle', 'oracle_delta'),
    'gap-report': ('g', 'eps', 'beta', 'ground_state', 'ground_state_delta',
                   'fock_cutoff', 'continuum_edge', 'gap', 'below_continuum', 'flags'),
}

COMMAND_FUNCTIONS = {
    'gcurve': cmd_gcurve,
    'spectrum': cmd_spectrum,
    'baselines': cmd_baselines,
    'approx': cmd_approx,
    'variational': cmd_variational,
    'oracle': cmd_oracle,
    'compare': cmd_compare,
    'gap-report': cmd_gap_report,
}


# ------------------------------------------------------------------------------
# output -----------------------------------------------------------------------
# ------------------------------------------------------------------------------
def header_line(config):
    return '# twophoton %s config=%s %s\n' % (__version__, config_hash(config),
                                              canonical_json(config))


def write_rows(config, rows, stream):
    stream.write(header_line(config))
    if config.format == 'json':
        json.dump(rows, stream, indent=2, cls=JSONEncoder)
        stream.write('\n')
        return
    columns = list(COLUMNS[config.command])
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])


def run(config, stream):
    """Run one command; returns the exit code. Rows produced before a
    numerical failure are still written."""
    rows = []
    code = EXIT_OK
    try:
        for row in COMMAND_FUNCTIONS[config.command](config):
            rows.append(row)
    except ParameterError as exc:
        logger.error("configuration error: %s", exc)
        code = EXIT_CONFIG
    except TwoPhotonError as exc:
        logger.error("numerical failure: %s", exc)
        code = EXIT_NUMERICAL
    write_rows(config, rows, stream)
    return code


def cli(argv=None):
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    try:
        config = RunConfig.from_args(args)
    except ParameterError as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG

    if config.out:
        with open(config.out, 'w', newline='') as stream:
            return run(config, stream)
    return run(config, sys.stdout)


if __name__ == '__main__':
    sys.exit(cli())
