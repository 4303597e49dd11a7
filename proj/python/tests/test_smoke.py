import math

import pytest

import robinbif


def test_wavenumber_endpoints_and_bracket():
    assert robinbif.wavenumber(0.0, 1) == 1.0
    assert robinbif.wavenumber(1.0, 1) == 2.0
    k = robinbif.wavenumber(0.5, 1)
    assert 1.0 < k < 2.0
    # h0 = h1 at mu = 1/2, so the odd factor reduces to sin(k pi) + k (1 + cos(k pi)).
    assert abs(math.sin(k * math.pi) + k * (1 + math.cos(k * math.pi))) < 1e-10


def test_curves_below_one():
    cs = robinbif.curves(1.0, samples=11)
    assert len(cs) == 1
    assert cs[0]["n"] == 0 and cs[0]["base_mode"] == 0
    assert cs[0]["lambda"][0] == 0.0
    assert cs[0]["lambda"] == sorted(cs[0]["lambda"])


def test_coefficients_and_loci():
    c = robinbif.coefficients(1, 2)
    assert c["c1"] == pytest.approx(5695 / (132 * math.pi**2), rel=1e-12)
    assert c["d1"] == c["d2"]
    loci = robinbif.secondary_loci(0, 1)
    assert len(loci) == 1
    assert loci[0][1] == "pure-phi2"
    assert robinbif.secondary_loci(1, 2) == []


def test_diagram_and_errors():
    d = robinbif.diagram(1, 2, nu=0.01)
    assert len(d["branches"]) == 4
    assert d["symmetry_preserved"]
    s = robinbif.diagram(1, 1, mu0=0.5, grid=24)
    assert [b["label"] for b in s["branches"]] == ["pitchfork(+)", "pitchfork(-)"]
    with pytest.raises(robinbif.ValidationError):
        robinbif.wavenumber(1.5, 0)
    with pytest.raises(robinbif.ValidationError):
        robinbif.coefficients(2, 2)


def test_spectrum_csv_deterministic():
    assert robinbif.spectrum_csv(6.0, 21) == robinbif.spectrum_csv(6.0, 21)
