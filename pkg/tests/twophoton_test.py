import pytest

from twophoton import ground_state_gfunction, solve
from twophoton.errors import ParameterError
from twophoton.model import ModelParams


def test_decoupled_ground_state():
    result = solve(1.0, 0.0)
    assert result['beta'] == 1.0
    assert result['first_baseline'] == 0.0
    assert result['gfunction'] == pytest.approx(-0.5, abs=1e-10)
    assert result['oracle'] == pytest.approx(-0.5, abs=1e-10)
    for order, energy in result['approx'].items():
        assert energy == pytest.approx(-0.5, abs=1e-10), "order %d" % order
    assert result['variational'] == pytest.approx(-0.5, abs=1e-12)
    assert result['flags'] == []


def test_methods_agree_at_moderate_coupling():
    result = solve(1.0, 0.3, orders=(0, 1, 8))
    assert sorted(result['approx']) == [0, 1, 8]
    assert result['gfunction'] == pytest.approx(result['oracle'], abs=1e-8)
    assert result['oracle_delta'] < 1e-8
    assert result['variational'] >= result['oracle'] - 1e-9
    assert result['variational'] <= result['approx'][1] + 1e-9
    assert result['gfunction'] < result['first_baseline']


def test_ground_state_gfunction_below_baseline():
    params = ModelParams(omega_qubit=3.0, g=0.2)
    energy = ground_state_gfunction(params)
    assert energy is not None
    assert energy < -1.0


def test_invalid_input():
    with pytest.raises(ParameterError):
        solve(1.0, 0.6)
    with pytest.raises(ParameterError):
        solve(0.0, 0.2)
