import math

import pytest

import sds


def test_sphere_half_action_closed_form():
    sphere = sds.SurfaceProfile.round_sphere()
    for E in (0.25, 0.5, 2.0):
        assert sds.half_action(sphere, E) == pytest.approx(math.pi * math.sqrt(2 * E), rel=1e-12)


def test_oracle_matches_sphere_closed_form():
    sphere = sds.SurfaceProfile.round_sphere()
    h = 0.1
    params = sds.SpectralParams(h=h, alpha=h**3, E_min=0.01, E_max=0.2)
    exact = sds.sphere_exact_spectrum(params)
    oracle = [r.E for r in sds.oracle_spectrum(sphere, params)]
    assert len(oracle) == len(exact) > 0
    for e, o in zip(exact, oracle):
        assert o == pytest.approx(e, rel=1e-7)


def test_derived_roots_close_to_oracle():
    profile = sds.SurfaceProfile(-1.0, 1.0, [1.0, 0.3])
    h = 0.1
    params = sds.SpectralParams(h=h, alpha=h**3, E_min=0.1, E_max=0.5)
    roots = sds.enumerate_spectrum(profile, params, sds.QuantizationMode.derived)
    wide = sds.SpectralParams(h=h, alpha=h**3, E_min=0.05, E_max=0.7)
    oracle = [r.E for r in sds.oracle_spectrum(profile, wide)]
    for r in roots:
        assert min(abs(r.E - o) for o in oracle) <= 0.5 * h


def test_invalid_profile_is_reported():
    report = sds.validate_profile(sds.SurfaceProfile(-1.0, 1.0, [0.0, 1.0]))
    assert not report.passed
    assert report.messages


def test_domain_errors_raise_value_error():
    with pytest.raises(ValueError):
        sds.half_action(sds.SurfaceProfile.round_sphere(), -1.0)


def test_glue_and_residual():
    sphere = sds.SurfaceProfile.round_sphere()
    h = 0.1
    params = sds.SpectralParams(h=h, alpha=h**3, E_min=0.4, E_max=0.6)
    root = sds.enumerate_spectrum(sphere, params)[0]
    g = sds.glue(sphere, params, root.E)
    assert len(g.z) == len(g.values) > 100
    assert sds.radial_residual(sphere, params, root.E, g) < 0.1
