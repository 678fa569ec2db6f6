import cmath
import json
import math
import os
from pathlib import Path

import pytest

import mobius_ec

DATA = Path(os.environ.get("ECMOBIUS_DATA", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def curve_text():
    return (DATA / "32a.curve").read_text()


@pytest.fixture(scope="module")
def session(curve_text):
    return mobius_ec.Session(curve_text)


def test_parse_curve(curve_text):
    c = mobius_ec.parse_curve(curve_text)
    assert (c["a"], c["b"], c["conductor"]) == (-1, 0, 32)
    assert c["ap_overrides"] == {2: 0}
    with pytest.raises(ValueError):
        mobius_ec.parse_curve("a = 1\nb = 0\n")


def test_coefficients(curve_text):
    rows = mobius_ec.coefficients(curve_text, 16)
    assert len(rows) == 16
    assert rows[0] == (1, 1, 1, 1)
    assert rows[4] == (5, -2, 2, 5)


def test_l_values(session):
    assert session.root_number == 1
    assert session.l_value(1.0).real == pytest.approx(0.65551438857302995, rel=1e-10)
    s = complex(0.3, 1.7)
    lam = session.lambda_value(s)
    assert abs(lam - session.lambda_value(2 - s)) <= 1e-9 * (1 + abs(lam))


def test_m_direct_matches_formula(session):
    z = complex(0.4, 1.2)
    m = session.m_direct(z)
    assert abs(m - session.m_formula(z)) <= 1e-6 * (1 + abs(m))
    parts = session.formula_parts(z)
    assert abs(parts["total"] - session.m_formula(z)) <= 1e-15 * (1 + abs(m))


def test_residue(session):
    got = session.residue_at_log_n(5)
    assert abs(got + session.mu(5) / (2j * math.pi)) <= 1e-8


def test_errors(session):
    with pytest.raises(ValueError):
        session.m_direct(complex(0.5, -1.0))
    with pytest.raises(ValueError):
        session.m_formula(complex(math.log(5.0), 1e-9))


def test_bessel_and_mellin():
    assert mobius_ec.mellin_j1_check(0.25) <= 1e-10
    assert mobius_ec.mellin_y1_check(0.25) <= 1e-8
    w = complex(1.3, 0.4)
    h = mobius_ec.bessel_j1(w) - 1j * mobius_ec.bessel_y1(w) - 2j / (math.pi * w)
    assert abs(mobius_ec.hankel2_1_regularized(w) - h) <= 1e-13


def test_verify_report(session):
    report = json.loads(session.verify("bessel"))
    assert report["suite"] == "bessel"
    assert report["overall"] is True
    assert all(c["pass"] for c in report["checks"])
