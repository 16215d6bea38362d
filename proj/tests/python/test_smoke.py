import json
import math

import pytest

try:
    import bdpp as m
except ImportError:
    import _bdpp as m


def make_regime(**overrides):
    r = m.RegimeParameterSet()
    defaults = dict(a1=1.0, b1=0.5, c1=1.0, a2=0.2, b2=0.3, c2=2.0,
                    m1=1.0, m2=1.0, m3=1.0, alpha=0.3, beta=0.2)
    defaults.update(overrides)
    for key, value in defaults.items():
        setattr(r, key, value)
    return r


def make_scenario(**overrides):
    s = m.Scenario()
    s.regimes = [make_regime(**overrides)]
    s.generator = m.GeneratorMatrix([[0.0]])
    s.x0 = 1.0
    s.y0 = 1.0
    return s


def test_validate_and_extremes():
    s = m.validate_scenario(make_scenario())
    ext = m.parameter_extremes(s)
    assert ext.hat.a1 == ext.check.a1 == 1.0

    bad = make_scenario()
    bad.regimes[0].b1 = 0.0
    # pybind rebinds the list element, so reassign explicitly
    r = make_regime(b1=-1.0)
    bad.regimes = [r]
    with pytest.raises(m.BdppError):
        m.validate_scenario(bad)


def test_stationary_law_two_state():
    g = m.GeneratorMatrix([[-1.0, 1.0], [1.0, -1.0]])
    mu = m.stationary_law(g).mu
    assert mu == pytest.approx([0.5, 0.5], abs=1e-12)


def test_simulation_is_deterministic_and_dominates():
    s = m.validate_scenario(make_scenario())
    grid = m.GridSpec(dt=1e-3, horizon=20.0, record_stride=10)
    a = m.simulate_bundle(s, grid, 42)
    b = m.simulate_bundle(s, grid, 42)
    assert a.log_x == b.log_x
    assert a.domination_violations == 0
    assert all(x <= p for x, p in zip(a.log_x, a.log_phi))
    assert all(y <= p for y, p in zip(a.log_y, a.log_psi))
    assert all(math.isfinite(v) for v in a.log_x + a.log_y)


def test_threshold_arithmetic():
    s = m.validate_scenario(make_scenario(a1=0.5, alpha=1.2))
    mu = m.stationary_law(s.generator)
    assert m.threshold_t1(s, mu) == pytest.approx(-0.22, abs=1e-12)


def test_classify_quick():
    s = m.validate_scenario(make_scenario(a1=0.5, alpha=1.2))
    settings = m.EstimationSettings()
    settings.horizon = 50.0
    settings.dt = 1e-3
    settings.record_stride = 10
    settings.seed = 7
    rep = m.classify(s, settings)
    assert rep.outcome == m.Outcome.BOTH_EXTINCT
    assert rep.lambda_ is None
    assert "T1" in m.report_to_text(rep)


def test_time_average_with_python_callable():
    s = m.validate_scenario(make_scenario())
    grid = m.GridSpec(dt=1e-3, horizon=100.0, record_stride=100)
    path = m.simulate_auxiliary(s, m.Auxiliary.PHI, grid, 3)
    est = m.time_average(path, lambda x, i: 2.0, 10.0, batches=5)
    assert est.value == pytest.approx(2.0, abs=1e-12)
    assert est.half_width <= 1e-14


def test_moment_bound_arithmetic():
    s = make_scenario(a1=1.0, b1=1.0, alpha=1.0)
    assert m.moment_bound(s, m.Auxiliary.PHI, 2.0) == pytest.approx(2.25, abs=1e-12)


def test_scenario_json_round_trip():
    s = make_scenario()
    text = m.scenario_to_json_string(s)
    parsed = json.loads(text)
    assert parsed["initial_regime"] == 1
    back = m.scenario_from_json_string(text)
    assert back.regimes[0].c2 == s.regimes[0].c2
