import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridps.errors import SeriesPreconditionError, UsageError
from hybridps.series import (
    PhaseJet,
    TruncatedSeries,
    extract_derivative,
    extract_from_prefactored,
    series_exp,
    series_mul,
    taylor_derivative,
)
from hybridps.series import _kernels_py
from hybridps.series.truncated import _layout

ST = ("s", "t")


def mono(idx, coef=1.0, caps=(2, 2), variables=ST):
    return TruncatedSeries.monomial(variables, caps, idx, coef)


def close(a, b, tol=1e-12):
    keys = set(a.terms) | set(b.terms)
    return all(abs(complex(a.coefficient(k)) - complex(b.coefficient(k))) <= tol for k in keys)


# -- arithmetic examples ---------------------------------------------------


def test_mul_distributes_within_caps():
    caps = (1, 1)
    one = TruncatedSeries.one(ST, caps)
    a = one + mono((1, 0), caps=caps)
    b = one + mono((0, 1), caps=caps)
    want = TruncatedSeries(ST, caps, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert series_mul(a, b) == want


def test_mul_drops_terms_beyond_cap():
    caps = (1, 1)
    s = mono((1, 0), caps=caps)
    assert series_mul(s, s).is_zero()


def test_mul_complex_coefficients():
    caps = (2, 0)
    s = TruncatedSeries.monomial(("s", "t"), caps, (1, 0), 1j)
    assert series_mul(s, s) == TruncatedSeries(ST, caps, {(2, 0): -1})


def test_exp_nilpotent_product():
    caps = (1, 1)
    z = mono((1, 1), caps=caps)
    assert series_exp(z) == TruncatedSeries(ST, caps, {(0, 0): 1, (1, 1): 1})


def test_exp_of_zero_is_one():
    assert series_exp(TruncatedSeries.zero(ST, (3, 3))) == TruncatedSeries.one(ST, (3, 3))


def test_exp_linear_terms():
    a = 0.7
    caps = (1, 1)
    z = mono((1, 0), a, caps) + mono((0, 1), a, caps)
    want = TruncatedSeries(ST, caps, {(0, 0): 1, (1, 0): a, (0, 1): a, (1, 1): a * a})
    assert close(series_exp(z), want)


def test_exp_rejects_constant_term():
    z = TruncatedSeries.one(ST, (1, 1))
    with pytest.raises(SeriesPreconditionError):
        series_exp(z)


# -- extraction examples -----------------------------------------------------


def test_extract_mixed_first_order():
    c = 2.5 - 0.5j
    assert extract_derivative(mono((1, 1), c, (1, 1)), (1, 1)) == pytest.approx(c)


def test_extract_second_order_pure():
    x1 = 0.3 + 0.2j
    z = mono((2, 0), x1, (2, 0))
    assert extract_derivative(z, {"s": 2}) == pytest.approx(2 * x1)


def test_extract_third_order_linear():
    a = 1.3
    z = TruncatedSeries.monomial(("s",), (3,), (1,), a)
    assert extract_derivative(z, {"s": 3}) == pytest.approx(a**3)


def test_prefactored_examples():
    caps = (2, 2)
    st_ = mono((1, 1), caps=caps)
    zero = TruncatedSeries.zero(ST, caps)
    assert extract_from_prefactored(st_, zero, (1, 1)) == pytest.approx(1.0)
    beta = 0.4
    z = mono((0, 1), beta, caps)
    assert extract_from_prefactored(mono((1, 0), caps=caps), z, (1, 1)) == pytest.approx(beta)
    x4 = 0.9
    z = mono((1, 1), x4, caps)
    assert extract_from_prefactored(st_, z, (2, 2)) == pytest.approx(4 * x4)


def test_prefactored_reuses_exponential():
    caps = (3, 3)
    z = mono((1, 1), 0.3, caps) + mono((1, 0), 0.2, caps)
    pre = mono((0, 1), caps=caps)
    assert extract_from_prefactored(pre, z, (2, 3), expz=series_exp(z)) == pytest.approx(
        extract_from_prefactored(pre, z, (2, 3))
    )


def test_taylor_derivative_factorial_scaling():
    caps = (3, 2)
    e = TruncatedSeries(ST, caps, {(3, 2): 5.0})
    assert taylor_derivative(e, (3, 2)) == pytest.approx(5.0 * math.factorial(3) * math.factorial(2))


@pytest.mark.parametrize(
    "orders",
    [(3, 0), {"u": 1}, (-1, 0), (1,)],
)
def test_bad_orders_rejected(orders):
    z = mono((1, 1), caps=(2, 2))
    with pytest.raises(UsageError):
        extract_derivative(z, orders)


def test_registry_mismatch_rejected():
    a = TruncatedSeries.one(ST, (1, 1))
    with pytest.raises(UsageError):
        series_mul(a, TruncatedSeries.one(ST, (1, 2)))
    with pytest.raises(UsageError):
        a + TruncatedSeries.one(("t", "s"), (1, 1))


def test_construction_errors():
    with pytest.raises(UsageError):
        TruncatedSeries(ST, (1,))
    with pytest.raises(UsageError):
        TruncatedSeries(("s", "s"), (1, 1))
    with pytest.raises(UsageError):
        TruncatedSeries(ST, (1, -1))
    with pytest.raises(UsageError):
        TruncatedSeries(tuple("abcdefghi"), (1,) * 9)


def test_series_is_immutable():
    a = TruncatedSeries.one(ST, (1, 1))
    with pytest.raises(AttributeError):
        a.caps = (2, 2)


def test_dense_round_trip():
    z = TruncatedSeries(ST, (2, 1), {(2, 1): 1 - 1j, (0, 1): 3})
    v, d = z.to_dense()
    assert d is None
    assert TruncatedSeries.from_dense(ST, (2, 1), v) == z


# -- jets ------------------------------------------------------------------


def test_exp_carries_phase_derivative():
    phi = 0.4
    caps = (2, 2)
    coef = PhaseJet(complex(math.cos(phi), math.sin(phi)), complex(-math.sin(phi), math.cos(phi)))
    z = TruncatedSeries(ST, caps, {(1, 1): coef * 0.5})
    e = series_exp(z)
    g = taylor_derivative(e, (2, 2))

    def val(ph):
        zz = TruncatedSeries(ST, caps, {(1, 1): 0.5 * complex(math.cos(ph), math.sin(ph))})
        return taylor_derivative(series_exp(zz), (2, 2))

    h = 1e-6
    fd = (val(phi + h) - val(phi - h)) / (2 * h)
    assert g.value == pytest.approx(val(phi), rel=1e-12)
    assert g.deriv == pytest.approx(fd, rel=1e-8)


# -- properties --------------------------------------------------------------


@st.composite
def exponent_pairs(draw):
    n = draw(st.integers(1, 4))
    caps = tuple(draw(st.integers(0, 3)) for _ in range(n))
    names = tuple("uvwx"[:n])
    coef = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)

    def one():
        terms = {}
        for _ in range(draw(st.integers(0, 5))):
            idx = tuple(draw(st.integers(0, c)) for c in caps)
            if any(idx):
                terms[idx] = draw(coef)
        return TruncatedSeries(names, caps, terms)

    return one(), one()


@settings(max_examples=60, deadline=None)
@given(exponent_pairs())
def test_exp_homomorphism(pair):
    a, b = pair
    assert close(series_exp(a + b), series_exp(a) * series_exp(b), tol=1e-12)


@settings(max_examples=60, deadline=None)
@given(exponent_pairs())
def test_exp_commutes_with_conjugation(pair):
    a, _ = pair
    assert close(series_exp(a.conjugate()), series_exp(a).conjugate(), tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(exponent_pairs())
def test_swap_symmetry(pair):
    a, _ = pair
    order = tuple(reversed(range(a.nvars)))
    assert close(series_exp(a.permuted(order)), series_exp(a).permuted(order), tol=1e-12)


# -- backends --------------------------------------------------------------


def test_compiled_kernel_matches_numpy():
    compiled = pytest.importorskip("hybridps.series._kernels")
    rng = np.random.default_rng(7)
    caps = (3, 2, 4, 1)
    shape, digits, c = _layout(caps)
    size = math.prod(shape)
    for density in (0.1, 0.5, 1.0):
        a = (rng.normal(size=size) + 1j * rng.normal(size=size)) * (rng.random(size) < density)
        b = (rng.normal(size=size) + 1j * rng.normal(size=size)) * (rng.random(size) < density)
        want = _kernels_py.trunc_mul(a, b, digits, c)
        got = compiled.trunc_mul(a, b, digits, c)
        assert np.allclose(got, want, rtol=0, atol=1e-12)


def test_pure_python_switch(monkeypatch):
    import importlib

    import hybridps.series.kernels as kernels

    monkeypatch.setenv("HYBRIDPS_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
        assert mod.trunc_mul is _kernels_py.trunc_mul
    finally:
        monkeypatch.delenv("HYBRIDPS_PURE_PYTHON")
        importlib.reload(kernels)
