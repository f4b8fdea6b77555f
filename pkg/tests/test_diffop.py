import cmath
import math
import random

import pytest

from afsum.diffop import (
    DiffOperator,
    apply_diff,
    build_diff_operator,
    diff_coeffs_general,
    diff_generating_poly,
    diff_moments,
    forbidden_set,
    lambda_bound,
    q0,
    remainder_factor,
)
from afsum.errors import ForbiddenParameterError
from afsum.prony import generating_polynomial
from afsum.series import FunctionSpec

PRINTED_LAMBDA = sorted(
    [1.38647, 0.42578, complex(-0.90612, 0.93427), complex(-0.90612, -0.93427)],
    key=lambda v: (v.real, v.imag),
)
PRINTED_MU = sorted(
    [0.967276, -0.79945, complex(-0.08390, 0.08175), complex(-0.08390, -0.08175)],
    key=lambda v: (v.real, v.imag),
)


def test_forbidden_set_n3():
    got = forbidden_set(3)
    assert got == (0, -3, -3)


def test_forbidden_set_n4():
    got = forbidden_set(4)
    want = (0, 2 * (-3 + math.sqrt(2)), 2 * (-3 - math.sqrt(2)))
    assert max(abs(g - w) for g, w in zip(got, want)) < 1e-14
    # p = -1 stays clear of the set
    assert min(abs(-1 - w) for w in got) > 1e-6


def test_q0_values():
    assert q0(4, -1) == 4
    assert q0(5, 0) == 0
    assert q0(7, 0) == 0
    assert abs(q0(5, 1) + 4.5) < 1e-15


def test_diff_generating_poly_worked_example():
    got = diff_generating_poly(4, -1).coefficients
    assert got == (1, -2, -1, 0, 1)


def test_diff_generating_poly_cubic():
    got = diff_generating_poly(3, 1).coefficients
    assert got == (5, -3, 0, 1)


@pytest.mark.parametrize("n", [3, 5, 8, 11])
@pytest.mark.parametrize("p", [-1.0, 2.0, complex(0.5, 1.5)])
def test_diff_generating_poly_constant_term(n, p):
    got = diff_generating_poly(n, p).coefficients[0]
    assert abs(got - (2 + 6 * complex(p) / ((n - 1) * (n - 2)))) < 1e-14


def test_forbidden_p_rejected():
    with pytest.raises(ForbiddenParameterError):
        diff_generating_poly(4, 0)
    with pytest.raises(ForbiddenParameterError):
        diff_generating_poly(3, -3 + 1e-8)
    with pytest.raises(ForbiddenParameterError):
        build_diff_operator(3, 0)


def test_coeffs_general_worked_example():
    got = diff_coeffs_general(4, -1, 4)
    assert abs(got[4] - 9) < 1e-12
    monic = tuple(c / got[4] for c in got)
    want = diff_generating_poly(4, -1).coefficients
    assert max(abs(a - b) for a, b in zip(monic, want)) < 1e-14


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("p", [-1.0, 1.0, 3.5, complex(1, 2)])
def test_q0_kills_second_coefficient(n, p):
    got = diff_coeffs_general(n, p, q0(n, p))
    scale = max(abs(c) for c in got)
    assert abs(got[n - 1]) < 1e-12 * scale


@pytest.mark.parametrize("n", range(3, 11))
def test_coeffs_general_matches_expanded_polynomial(n):
    for p in (-1.0, 1.0, 5.0, -0.25):
        general = diff_coeffs_general(n, p, q0(n, p))
        monic = tuple(c / general[-1] for c in general)
        want = diff_generating_poly(n, p).coefficients
        assert max(abs(a - b) for a, b in zip(monic, want)) < 1e-10


@pytest.mark.parametrize("n", range(3, 9))
def test_hankel_route_reproduces_polynomial(n):
    p = -1.0
    moments = diff_moments(n, p, q0(n, p))
    via_hankel = generating_polynomial(moments).coefficients
    closed = diff_generating_poly(n, p).coefficients
    assert max(abs(a - b) for a, b in zip(via_hankel, closed)) < 1e-8


def test_build_worked_example():
    op = build_diff_operator(4, -1)
    assert op.q == 4
    assert max(abs(a - b) for a, b in zip(op.lam, PRINTED_LAMBDA)) < 5e-5
    mu_sorted = sorted(op.mu, key=lambda v: (v.real, v.imag))
    assert max(abs(a - b) for a, b in zip(mu_sorted, PRINTED_MU)) < 5e-5
    assert abs(op.remainder_factor + 4) < 1e-14
    want_bound = 3.0 ** (3 / math.sqrt(2))
    assert abs(op.lambda_bound - want_bound) < 1e-12
    assert all(abs(l) <= op.lambda_bound for l in op.lam)


def test_exactness_on_polynomials():
    rng = random.Random(828282)
    for n in (3, 4, 5, 7):
        op = build_diff_operator(n, -1)
        for _ in range(50):
            degree = rng.randint(0, 2 * n - 1)
            coeffs = tuple(rng.uniform(-1, 1) for _ in range(degree + 1))
            f = FunctionSpec("polynomial", coeffs)
            for _ in range(10):
                z = cmath.rect(rng.uniform(0, 0.5), rng.uniform(0, 2 * math.pi))
                want = sum(m * c * z ** m for m, c in enumerate(coeffs))
                got = apply_diff(op, f, z)
                assert abs(got - want) <= 1e-9 * (1 + abs(want))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_leading_remainder_term(n):
    # for f = z^{2n} the whole remainder is the single leading term:
    # z f'(z) - applied value = C_n(p) * z^{2n}
    op = build_diff_operator(n, -1)
    f = FunctionSpec("polynomial", (0,) * (2 * n) + (1,))
    for z in (0.3, -0.25, 0.1 + 0.2j):
        want = remainder_factor(n, op.p) * z ** (2 * n)
        got = (2 * n) * z ** (2 * n) - apply_diff(op, f, z)
        assert abs(got - want) <= 1e-8 * abs(want)


@pytest.mark.parametrize("n", range(3, 13))
@pytest.mark.parametrize("p", [-1.0, 1.0, 5.0, -5.0])
def test_root_bound(n, p):
    poly = diff_generating_poly(n, p)
    from afsum.polyroots import roots

    bound = lambda_bound(n, p)
    assert all(abs(r) <= bound for r in roots(poly))


def test_apply_diff_rational_target():
    # f(z) = 1/(z+2): coefficients (-1)^m / 2^(m+1)
    n = 4
    op = build_diff_operator(n, -1)
    coeffs = tuple((-1.0) ** m / 2.0 ** (m + 1) for m in range(120))
    f = FunctionSpec("raw_series", coeffs)
    worst = 0.0
    for i in range(101):
        z = -0.5 + i / 100.0
        want = z * (-1.0 / (z + 2.0) ** 2)
        worst = max(worst, abs(apply_diff(op, f, z) - want))
    assert worst <= 1e-4


def test_apply_diff_even_target_skips_binomial():
    # J0 is even and n = 4 is even, so the correction binomial vanishes and
    # the applied value is exactly the bare sum
    op = build_diff_operator(4, -1)
    f = FunctionSpec("bessel_j0")
    z = 0.7
    from afsum.series import evaluate, _fsum_complex

    bare = _fsum_complex(op.mu[k] * evaluate(f, op.lam[k] * z) for k in range(4))
    assert apply_diff(op, f, z) == bare


def test_build_rejects_small_n():
    with pytest.raises(ValueError):
        build_diff_operator(2, -1)
    with pytest.raises(ValueError):
        q0(2, -1)
