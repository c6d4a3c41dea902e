from math import factorial

import pytest

from twophoton import gfunc, model, oracle
from twophoton.errors import NumericalWarning, ParameterError, PoleProximity
from twophoton.gfunc import Level, SpectrumTable
from twophoton.model import ModelParams, Q_EVEN, Q_ODD, Sector


def test_default_n_max_grows_near_critical_coupling():
    frame = model.make_frame(ModelParams(omega_qubit=1.0, g=0.2))
    assert gfunc.default_n_max(frame) == gfunc.DEFAULT_N_MAX
    near = model.make_frame(ModelParams(omega_qubit=1.0, g=0.4999))
    assert gfunc.default_n_max(near) > 2000


def test_scaled_terms_match_recurrence():
    params = ModelParams(omega_qubit=1.3, g=0.3)
    frame = model.make_frame(params)
    for sector in [Sector(Q_EVEN, 1), Sector(Q_ODD, -1)]:
        series = gfunc.recurrence_coeffs(params, sector, 0.37, 8)
        assert series.n_terms == 9
        assert series.f[0] == 1.0
        for n in range(9):
            k = model.basis_photon_number(sector.q, n)
            weight = factorial(k) / factorial(n) * frame.squeeze_ratio ** n
            assert series.terms[n] == pytest.approx(series.f[n] * weight, rel=1e-8, abs=1e-14), \
                "term %d of %s" % (n, sector.label)
            assert series.e_scale[n] == pytest.approx(1.3 / (4 * frame.beta * (n - 0.37)))


def test_recurrence_needs_positive_coupling():
    with pytest.raises(ParameterError):
        gfunc.recurrence_coeffs(ModelParams(omega_qubit=1.0, g=0.0), Sector(Q_EVEN, 1), 0.3, 5)


def test_pole_proximity():
    params = ModelParams(omega_qubit=1.0, g=0.3)
    frame = model.make_frame(params)
    sector = Sector(Q_EVEN, -1)
    with pytest.raises(PoleProximity) as info:
        gfunc.g_eval(params, sector, model.pole_energy(frame, sector, 2))
    assert info.value.n == 2
    with pytest.raises(PoleProximity):
        gfunc.g_eval_x(params, sector, 0.0)
    value = gfunc.g_eval_x(params, sector, 1e-6)
    assert value.nearest_pole_distance == pytest.approx(1e-6)


def test_ground_state_zero_at_decoupling():
    params = ModelParams(omega_qubit=1.0, g=0.0)
    value = gfunc.g_eval(params, Sector(Q_EVEN, -1), -0.5)
    assert value.converged
    assert value.value == 0.0


def test_unconverged_series_warns():
    params = ModelParams(omega_qubit=1.0, g=0.3)
    with pytest.warns(NumericalWarning):
        value = gfunc.g_eval_x(params, Sector(Q_EVEN, 1), 0.37, n_max=3)
    assert not value.converged
    assert value.n_terms_used == 4


def test_decoupled_spectrum_from_zeros():
    params = ModelParams(omega_qubit=1.0, g=0.0)
    for sector in model.all_sectors():
        table = gfunc.sector_spectrum(params, sector, e_window=(-1.0, 6.9))
        expected = [e for e in model.decoupled_levels(params, sector, 5) if e < 6.9]
        assert table.energies == pytest.approx(expected, abs=1e-9), sector.label


@pytest.mark.parametrize('g', [0.1, 0.25, 0.4])
def test_zeros_match_fock_diagonalisation(g):
    params = ModelParams(omega_qubit=1.0, g=g)
    frame = model.make_frame(params)
    for sector in model.all_sectors():
        e_lo = gfunc.scan_floor(params, sector)
        e_hi = model.first_baseline(frame, sector) + 4.0
        table = gfunc.sector_spectrum(params, sector, e_window=(e_lo, e_hi))
        reference = [e for e in oracle.sector_levels(params, sector, 12, 400)
                     if e_lo + 1e-3 < e < e_hi - 1e-3]
        assert table.energies, "no zeros found in %s" % sector.label
        for energy in reference:
            assert min(abs(energy - e) for e in table.energies) < 1e-8, \
                "%s: missing level %.12g" % (sector.label, energy)
        assert len(table.energies) == len(reference), sector.label


def test_levels_never_straddle_poles():
    params = ModelParams(omega_qubit=1.0, g=0.35)
    frame = model.make_frame(params)
    sector = Sector(Q_ODD, 1)
    table = gfunc.sector_spectrum(params, sector)
    assert table.levels
    for level in table.levels:
        assert level.source == gfunc.SOURCE_GFUNCTION
        assert level.bracket[0] <= level.energy <= level.bracket[1]
        upper = model.pole_energy(frame, sector, level.interval)
        assert level.energy < upper
        if level.interval > 0:
            assert level.energy > model.pole_energy(frame, sector, level.interval - 1)


def test_below_baseline_levels_match_count():
    params = ModelParams(omega_qubit=1.0, g=0.1)
    for sector in model.all_sectors():
        table = gfunc.sector_spectrum(params, sector)
        assert len(gfunc.below_baseline_levels(table)) == \
            model.below_baseline_count(params, sector), sector.label


def test_empty_window():
    params = ModelParams(omega_qubit=1.0, g=0.2)
    assert gfunc.find_zeros_in_interval(params, Sector(Q_EVEN, 1), 1.0, 1.0) == []
    table = gfunc.sector_spectrum(params, Sector(Q_EVEN, 1), e_window=(2.0, 1.0))
    assert table.levels == []


def test_spectrum_sweep_orders_by_coupling():
    sector = Sector(Q_EVEN, -1)
    tables = gfunc.spectrum_sweep([0.2, 0.0, 0.1], 1.0, sector, e_window=(-1.5, -0.1))
    assert [table.params.g for table in tables] == [0.0, 0.1, 0.2]
    ground = [table.energies[0] for table in tables]
    assert ground[0] == pytest.approx(-0.5, abs=1e-9)
    assert ground[0] > ground[1] > ground[2], "ground state drops with coupling"


def test_spectrum_sweep_rejects_bad_coupling():
    with pytest.raises(ParameterError):
        gfunc.spectrum_sweep([0.1, 0.5], 1.0, Sector(Q_EVEN, -1))


def level(energy, interval, flags=()):
    return Level(energy=energy, bracket=(energy, energy), source=gfunc.SOURCE_GFUNCTION,
                 interval=interval, flags=flags)


def test_table_helpers():
    params = ModelParams(omega_qubit=1.0, g=0.1)
    table = SpectrumTable(params=params, sector=Sector(Q_EVEN, 1), levels=[
        level(-0.6, 0),
        level(0.4, 1, (gfunc.FLAG_EXCEPTIONAL,)),
        level(0.9, 1),
        level(2.3, 2),
    ])
    assert table.energies == [-0.6, 0.4, 0.9, 2.3]
    assert [lv.energy for lv in gfunc.below_baseline_levels(table)] == [-0.6]
    assert [lv.energy for lv in gfunc.exceptional_candidates(table)] == [0.4]
    assert gfunc.level_in_interval(table, 2).energy == 2.3
    assert gfunc.level_in_interval(table, 5) is None


def test_baseline_crossings():
    sector = Sector(Q_EVEN, 1)

    def table(g, n_below):
        return SpectrumTable(params=ModelParams(omega_qubit=1.0, g=g), sector=sector,
                             levels=[level(-1.0 - i, 0) for i in range(n_below)])

    tables = [table(0.3, 1), table(0.1, 0), table(0.2, 0), table(0.4, 2)]
    assert gfunc.baseline_crossings(tables) == [
        {'g_before': 0.2, 'g_after': 0.3, 'count_before': 0, 'count_after': 1},
        {'g_before': 0.3, 'g_after': 0.4, 'count_before': 1, 'count_after': 2},
    ]


def test_window_edges_on_poles():
    params = ModelParams(omega_qubit=1.0, g=0.2)
    frame = model.make_frame(params)
    sector = Sector(Q_EVEN, -1)
    lo = model.pole_energy(frame, sector, 0)
    hi = model.pole_energy(frame, sector, 3)
    levels = gfunc.find_zeros_in_interval(params, sector, lo, hi)
    assert levels
    for found in levels:
        assert lo < found.energy < hi
        assert found.interval in (1, 2, 3)


def test_series_stable_when_term_budget_doubles():
    params = ModelParams(omega_qubit=1.0, g=0.3)
    for sector in model.all_sectors():
        for x in [-0.7, 0.37, 2.5, 5.61]:
            short = gfunc.g_eval_x(params, sector, x, n_max=500)
            long = gfunc.g_eval_x(params, sector, x, n_max=1000)
            assert short.converged
            assert long.value == pytest.approx(short.value, abs=1e-10 * short.magnitude)
            tighter = gfunc.g_eval_x(params, sector, x, tol=1e-15, n_max=1000)
            assert tighter.value == pytest.approx(short.value, abs=1e-10 * short.magnitude)


def test_zeros_near_critical_coupling_are_converged():
    params = ModelParams(omega_qubit=1.0, g=0.499)
    sector = Sector(Q_EVEN, -1)
    value = gfunc.g_eval(params, sector, -0.741532802608167)
    assert value.converged
    assert abs(value.value) < 1e-9 * value.magnitude

    table = gfunc.sector_spectrum(params, sector, e_window=(-0.8, -0.7))
    assert any(abs(e + 0.741532802608167) < 1e-7 for e in table.energies)
    for level in table.levels:
        assert gfunc.FLAG_NOT_CONVERGED not in level.flags, level
    assert not table.flags
