"""End-to-end checks across methods. Slow: large cutoffs and couplings near 1/2."""
import numpy as np
import pytest

from twophoton import approx, gfunc, melem, model, oracle, variational
from twophoton.model import ModelParams, Q_EVEN, Sector

pytestmark = pytest.mark.slow

E_WINDOW = (-2.0, 6.0)


def window_levels(params, sector, e_lo, e_hi):
    """Converged oracle levels of a sector that fall inside [e_lo, e_hi]."""
    k = 16
    while True:
        levels = oracle.converged_levels(params, sector, k, fock_cutoff=400)
        if levels[-1]['energy'] > e_hi:
            return [level['energy'] for level in levels if e_lo <= level['energy'] <= e_hi]
        k *= 2


@pytest.mark.parametrize('omega', [1.0, 3.0])
@pytest.mark.parametrize('g', [0.1, 0.25, 0.45])
def test_zeros_match_oracle_bijectively(omega, g):
    params = ModelParams(omega_qubit=omega, g=g)
    for sector in model.all_sectors():
        found = gfunc.sector_spectrum(params, sector, e_window=E_WINDOW, grid_points=256)
        reference = window_levels(params, sector, *E_WINDOW)
        assert len(found.energies) == len(reference), sector.label
        for energy, expected in zip(found.energies, reference):
            assert energy == pytest.approx(expected, abs=1e-6), sector.label


def test_decoupled_limit():
    params = ModelParams(omega_qubit=1.0, g=1e-4)
    for sector in model.all_sectors():
        table = gfunc.sector_spectrum(params, sector,
                                      e_window=(gfunc.scan_floor(params, sector), 16.9))
        expected = sorted(model.decoupled_levels(params, sector, 10))[:8]
        assert table.energies[:8] == pytest.approx(expected, abs=5e-3), sector.label


def test_excited_levels_collapse():
    sector = Sector(Q_EVEN, 1)
    spreads = []
    for g in [0.40, 0.45, 0.49]:
        params = ModelParams(omega_qubit=1.0, g=g)
        frame = model.make_frame(params)
        top = model.pole_energy(frame, sector, 5)
        table = gfunc.sector_spectrum(params, sector,
                                      e_window=(gfunc.scan_floor(params, sector), top))
        confined = [level for level in table.levels if 1 <= level.interval <= 5]
        assert confined
        for level in confined:
            bound = 2 * frame.beta * (level.interval + float(sector.q))
            assert abs(level.energy + 0.5) < bound
            if level.interval == 1:
                assert abs(level.energy + 0.5) < 3 * frame.beta
        # lowest level above the zeroth baseline
        spreads.append(confined[0].energy + 0.5)
    assert spreads[0] > spreads[1] > spreads[2]


def test_ground_state_gap_survives_near_critical_coupling():
    params = ModelParams(omega_qubit=1.0, g=0.499)
    levels = oracle.converged_levels(params, Sector(Q_EVEN, -1), 1, fock_cutoff=400, tol=1e-6)
    ground = levels[0]
    margin = -0.5 - ground['energy']
    assert margin > 0
    coarse = oracle.sector_levels(params, Sector(Q_EVEN, -1), 1, ground['fock_cutoff'] // 2)[0]
    assert abs((-0.5 - coarse) - margin) < 0.1 * margin

    # the low finite orders already sit closer to -1/2 at the same coupling
    for order in [0, 1]:
        assert abs(approx.ground_state_energy(params, order) + 0.5) < margin


def test_variational_sandwich():
    for g in [0.1, 0.2, 0.3, 0.4, 0.45, 0.49]:
        params = ModelParams(omega_qubit=1.0, g=g)
        bound = variational.minimize_variational(params).energy
        exact = oracle.converged_levels(params, Sector(Q_EVEN, -1), 1, fock_cutoff=400)[0]
        assert exact['energy'] - 1e-9 <= bound, "g = %s" % g
        assert bound <= approx.ground_state_first_order(params) + 1e-9, "g = %s" % g
    deep = variational.minimize_variational(ModelParams(omega_qubit=1.0, g=0.4999))
    assert deep.energy < -0.5


@pytest.mark.parametrize('g, cutoff', [(0.1, 60), (0.3, 100), (0.45, 160)])
def test_overlap_closed_form(g, cutoff):
    params = ModelParams(omega_qubit=1.0, g=g)
    for q in model.BARGMANN_INDICES:
        deviation = 0.0
        for m in range(6):
            for n in range(6):
                closed = melem.d_element(params, q, m, n)
                numeric = melem.overlap_oracle(params, q, m, n, fock_cutoff=cutoff)
                deviation = max(deviation, abs(closed - numeric))
        assert deviation < 1e-8, "q = %s" % q


def test_large_splitting_level_crosses_baseline():
    couplings = [0.0, 0.1, 0.2, 0.3, 0.35, 0.4, 0.45, 0.47, 0.49, 0.499]
    crossed = False
    for q in model.BARGMANN_INDICES:
        sector = Sector(q, 1)
        tables = []
        for g in couplings:
            params = ModelParams(omega_qubit=3.0, g=g)
            frame = model.make_frame(params)
            tables.append(gfunc.sector_spectrum(
                params, sector,
                e_window=(gfunc.scan_floor(params, sector), model.first_baseline(frame, sector))))
        crossings = gfunc.baseline_crossings(tables)
        if crossings:
            crossed = True
            assert crossings[0]['g_after'] < 0.5
            assert len(gfunc.below_baseline_levels(tables[-1])) > 0
    assert crossed


def test_gfunction_curve_changes_sign_inside_interval():
    params = ModelParams(omega_qubit=1.0, g=0.25)
    frame = model.make_frame(params)
    sector = Sector(Q_EVEN, -1)
    lo = model.pole_energy(frame, sector, 1)
    hi = model.pole_energy(frame, sector, 2)
    energies = np.linspace(lo, hi, 402)[1:-1]
    values = [gfunc.g_eval(params, sector, e).value for e in energies]
    changes = sum(1 for a, b in zip(values, values[1:]) if a * b < 0)
    table = gfunc.find_zeros_in_interval(params, sector, lo, hi)
    assert changes == len(table)
