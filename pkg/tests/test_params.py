from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellchain import (
    Case,
    Params,
    brill_noether_rho,
    classify,
    decompose,
    rho_value,
)
from ellchain.errors import HypothesisFailed, KLERegime, ParameterError


@pytest.mark.parametrize(
    "g,r,d,k,expected",
    [
        (5, 3, 7, 5, dict(d1=2, d2=1, k1=1, k2=2, h=1)),
        (3, 2, 4, 2, dict(d1=2, d2=0, k1=1, k2=0, h=2, rbar=1, dbar=2)),
        (7, 3, 16, 5, dict(d1=5, d2=1, k1=1, k2=2, h=1)),
    ],
)
def test_decompose_examples(g, r, d, k, expected):
    dec = decompose(Params(g, r, d, k))
    for field, value in expected.items():
        assert getattr(dec, field) == value


@given(g=st.integers(2, 30), r=st.integers(1, 12), d=st.integers(0, 400), k=st.integers(1, 60))
def test_decompose_euclidean_identities(g, r, d, k):
    p = Params(g, r, d, k)
    dec = decompose(p)
    assert d == r * dec.d1 + dec.d2 and 0 <= dec.d2 < r
    assert k == r * dec.k1 + dec.k2 and 0 <= dec.k2 < r
    assert dec.h * dec.rbar == r and dec.h * dec.dbar == d
    assert dec.d2 % dec.h == 0


def test_rho_examples():
    assert brill_noether_rho(Params(2, 2, 6, 2)) == 9
    assert brill_noether_rho(Params(7, 3, 16, 5)) == 20
    # k = 0 annihilates the second term (raw form, below the Params domain)
    for g, r, d in [(2, 1, 0), (5, 3, 17), (9, 4, 2)]:
        assert rho_value(g, r, d, 0) == r * r * (g - 1) + 1


@given(
    g=st.integers(-50, 50),
    r=st.integers(-50, 50),
    d=st.integers(-200, 200),
    k=st.integers(-50, 50),
)
def test_rho_expansion_identity(g, r, d, k):
    # r^2(g-1) + 1 + k(d - r(g-1) - k) is the same polynomial.
    assert r * r * (g - 1) + 1 + k * (d - r * (g - 1) - k) == rho_value(g, r, d, k)


def test_classify_k_le_r_rejected():
    with pytest.raises(KLERegime):
        classify(Params(2, 2, 6, 2))


def test_classify_large_sections():
    c = classify(Params(2, 2, 6, 3))
    assert c.case is Case.LARGE_SECTIONS
    assert c.main_check.value == 4  # d + r(1-g) = 6 - 2
    assert c.main_check.min_pass == 3


def test_classify_small_a_with_slack():
    c = classify(Params(7, 3, 16, 5))
    assert c.case is Case.SMALL_A
    main = c.main_check
    assert main.name == "(***)"
    assert main.value == 1 and main.satisfied and main.slack == 1
    # the auxiliary deficiency condition is reported independently
    names = [ch.name for ch in c.checks]
    assert "generic_bundle_deficit" in names


def test_classify_small_b():
    c = classify(Params(7, 3, 14, 4))
    assert c.case is Case.SMALL_B
    assert c.main_check.name == "(*)"
    assert c.main_check.value == 1 and c.main_check.satisfied


def test_classify_small_c():
    c = classify(Params(4, 2, 8, 4))
    assert c.case is Case.SMALL_C
    assert c.main_check.name == "(**)"
    assert c.main_check.value == 2 and c.main_check.min_pass == 2


def test_classify_hypothesis_failure_reports_deficit():
    with pytest.raises(HypothesisFailed) as excinfo:
        classify(Params(8, 3, 16, 5))
    assert excinfo.value.failed.name == "(***)"
    assert excinfo.value.failed.value == 0
    assert "(***)" in str(excinfo.value)


@given(g=st.integers(2, 14), r=st.integers(1, 6), d=st.integers(0, 250), k=st.integers(1, 40))
def test_classify_total_and_unique_on_k_gt_r(g, r, d, k):
    p = Params(g, r, d, k)
    if k <= r:
        with pytest.raises(KLERegime):
            classify(p)
        return
    dec = decompose(p)
    try:
        c = classify(p)
    except HypothesisFailed:
        return
    if d + r * (1 - g) >= k:
        assert c.case is Case.LARGE_SECTIONS
    elif dec.d2 < dec.k2:
        assert c.case is Case.SMALL_A
    elif dec.d2 != 0:
        assert c.case is Case.SMALL_B
    else:
        assert c.case is Case.SMALL_C
    assert all(ch.satisfied for ch in c.checks)


@pytest.mark.parametrize("bad", [dict(g=1), dict(r=0), dict(d=-1), dict(k=0)])
def test_params_validation(bad):
    base = dict(g=3, r=2, d=5, k=3)
    base.update(bad)
    with pytest.raises(ParameterError):
        Params(**base)
