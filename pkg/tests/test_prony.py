import cmath
import math
import random

import pytest

from afsum.errors import DegenerateSystemError, IncompatibleBasisError, NonRegularError
from afsum.prony import (
    DEGREE_DEFICIENT,
    MULTIPLE_ROOTS,
    REGULAR,
    AFSum,
    MomentSequence,
    amplitudes_sylvester,
    amplitudes_vandermonde,
    evaluate_sum,
    extend_power_sums,
    generating_polynomial,
    hankel_rank,
    is_positive_sequence,
    is_regular,
    moment_sequence,
    power_sum,
    solve,
    sum_maclaurin,
)
from afsum.series import FunctionSpec, maclaurin_coeffs

SQRT5 = math.sqrt(5)
SEC7_MOMENTS = MomentSequence(2, (1, 1, 0, 1))
SEC7_LAMBDA = (-(1 + SQRT5) / 2, (SQRT5 - 1) / 2)
SEC7_MU = ((1 - 3 * SQRT5 / 5) / 2, (1 + 3 * SQRT5 / 5) / 2)


def _random_regular_instances(count, seed, nmax=6):
    rng = random.Random(seed)
    instances = []
    while len(instances) < count:
        n = rng.randint(1, nmax)
        s = tuple(
            complex(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(2 * n)
        )
        m = MomentSequence(n, s)
        if is_regular(m) == REGULAR:
            instances.append(m)
    return instances


def _random_pairs(count, seed, nmax=6):
    # distinct frequencies |lam| <= 2 separated by >= 0.1, amplitudes 0.1..10
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, nmax)
        lam = []
        tries = 0
        while len(lam) < n and tries < 200:
            tries += 1
            cand = cmath.rect(rng.uniform(0, 2), rng.uniform(0, 2 * math.pi))
            if all(abs(cand - other) >= 0.1 for other in lam):
                lam.append(cand)
        if len(lam) < n:
            continue
        mu = [cmath.rect(rng.uniform(0.1, 10), rng.uniform(0, 2 * math.pi)) for _ in range(n)]
        out.append((tuple(mu), tuple(lam)))
    return out


def test_moment_sequence_identical_functions():
    m = moment_sequence(FunctionSpec("exp"), FunctionSpec("exp"), 2)
    assert m.s == (1, 1, 1, 1)


def test_moment_sequence_bessel_over_exp():
    m = moment_sequence(FunctionSpec("bessel_j0"), FunctionSpec("exp"), 2)
    assert m.s == (1, 0, -0.5, 0)


def test_moment_sequence_pade_sign():
    m = moment_sequence(FunctionSpec("exp"), FunctionSpec("inv_zm1"), 1)
    assert m.s == (-1, -1)


def test_moment_sequence_incompatible_basis():
    with pytest.raises(IncompatibleBasisError):
        moment_sequence(FunctionSpec("exp"), FunctionSpec("sinc"), 2)


def test_generating_polynomial_sec7():
    poly = generating_polynomial(SEC7_MOMENTS)
    assert poly.coefficients == (-1, 1, 1)


def test_generating_polynomial_single_node():
    poly = generating_polynomial(MomentSequence(1, (1, 2)))
    assert poly.coefficients == (-2, 1)


def test_generating_polynomial_degenerate():
    with pytest.raises(DegenerateSystemError):
        generating_polynomial(MomentSequence(3, (0, 1, 2, 3, 4, 5)))


def test_hankel_rank():
    assert hankel_rank(MomentSequence(3, (0, 1, 2, 3, 4, 5))) == 2
    assert hankel_rank(MomentSequence(3, tuple(2.0 ** m for m in range(6)))) == 1
    assert hankel_rank(MomentSequence(2, (0, 0, 0, 0))) == 0


def test_is_regular_verdicts():
    assert is_regular(SEC7_MOMENTS) == REGULAR
    assert is_regular(MomentSequence(2, (0, 1, 2, 3))) == MULTIPLE_ROOTS
    assert is_regular(MomentSequence(3, (0, 1, 2, 3, 4, 5))) == DEGREE_DEFICIENT


def test_amplitudes_sylvester_sec7():
    got = amplitudes_sylvester(SEC7_LAMBDA, SEC7_MOMENTS)
    assert max(abs(g - e) for g, e in zip(got, SEC7_MU)) < 1e-14


def test_amplitudes_sylvester_single():
    assert amplitudes_sylvester((2,), MomentSequence(1, (1, 2))) == (1,)


def test_amplitudes_vandermonde_matches_sylvester():
    for m, rts in [
        (SEC7_MOMENTS, SEC7_LAMBDA),
        (MomentSequence(1, (1, 2)), (2,)),
        (MomentSequence(2, (2, 0, 2 / 3, 0)), (-1 / math.sqrt(3), 1 / math.sqrt(3))),
    ]:
        syl = amplitudes_sylvester(rts, m)
        van = amplitudes_vandermonde(rts, m)
        assert max(abs(a - b) for a, b in zip(syl, van)) < 1e-9 * (
            1 + max(abs(a) for a in syl)
        )


def test_solve_sec7():
    af = solve(SEC7_MOMENTS)
    assert max(abs(a - b) for a, b in zip(af.lam, SEC7_LAMBDA)) < 1e-12
    assert max(abs(a - b) for a, b in zip(af.mu, SEC7_MU)) < 1e-12


def test_solve_trivial():
    af = solve(MomentSequence(1, (1, 2)))
    assert abs(af.mu[0] - 1) < 1e-15 and abs(af.lam[0] - 2) < 1e-15


def test_solve_legendre_two_point():
    af = solve(MomentSequence(2, (2, 0, 2 / 3, 0)))
    node = 1 / math.sqrt(3)
    assert max(abs(a - b) for a, b in zip(af.lam, (-node, node))) < 1e-14
    assert max(abs(m - 1) for m in af.mu) < 1e-14


def test_solve_rejects_non_regular():
    with pytest.raises(NonRegularError) as info:
        solve(MomentSequence(2, (0, 1, 2, 3)))
    assert info.value.verdict == MULTIPLE_ROOTS


def test_power_sum_values():
    af = solve(SEC7_MOMENTS)
    assert abs(power_sum(af, 0) - 1) < 1e-14
    any_sum = AFSum(n=2, mu=(2, 3), lam=(0.5, -0.5))
    assert power_sum(any_sum, 0) == 5


def test_power_sum_extrapolation_range():
    # moments a^m with s_{n-1} += p keep S_v inside [0, a^v]
    a, p, n = 0.5, 2.0, 2
    s = [a ** m for m in range(2 * n)]
    s[n - 1] += p
    af = solve(MomentSequence(n, tuple(s)))
    s4 = power_sum(af, 4)
    assert abs(s4.imag) < 1e-15
    assert -1e-15 <= s4.real <= a ** 4 + 1e-15


def test_is_positive_sequence():
    assert is_positive_sequence(MomentSequence(2, (2, 0, 2 / 3, 0)))
    assert not is_positive_sequence(MomentSequence(2, (0, 1, 0, 0)))
    assert is_positive_sequence(MomentSequence(2, (math.pi, 0, math.pi / 2, 0)))


def test_positive_sequence_implies_real_nodes_positive_weights():
    rng = random.Random(4711)
    for _ in range(20):
        n = rng.randint(1, 5)
        nodes = []
        while len(nodes) < n:
            cand = rng.uniform(-3, 3)
            if all(abs(cand - other) > 0.2 for other in nodes):
                nodes.append(cand)
        weights = [rng.uniform(0.1, 5) for _ in range(n)]
        s = tuple(
            sum(w * x ** m for w, x in zip(weights, nodes)) for m in range(2 * n)
        )
        m = MomentSequence(n, s)
        assert is_positive_sequence(m)
        af = solve(m)
        assert all(abs(l.imag) < 1e-8 for l in af.lam)
        assert all(mu.real > 0 for mu in af.mu)


def test_evaluate_sum_at_zero():
    af = AFSum(n=2, mu=(0.25, 0.75), lam=(1.5, -2.0), basis=FunctionSpec("exp"))
    assert abs(evaluate_sum(af, 0) - 1.0) < 1e-15


def test_evaluate_sum_matches_series_reconstruction():
    # target reconstructed from the moments: f_m = s_m * h_m (basis exp)
    af = solve(SEC7_MOMENTS)
    af = AFSum(n=af.n, mu=af.mu, lam=af.lam, basis=FunctionSpec("exp"))
    z = 0.1
    target = sum(
        SEC7_MOMENTS.s[m] / math.factorial(m) * z ** m for m in range(4)
    )
    assert abs(evaluate_sum(af, z) - target) <= 5e-4  # agreement to O(z^4)
    assert abs(evaluate_sum(af, z) - target) > 1e-8  # the O(z^4) term is real


def test_evaluate_sum_gauss_legendre_two_point():
    af = solve(MomentSequence(2, (2, 0, 2 / 3, 0)))
    af = AFSum(n=af.n, mu=af.mu, lam=af.lam, basis=FunctionSpec("exp"))
    x = 0.5
    target = (math.exp(x) - math.exp(-x)) / x
    assert abs(evaluate_sum(af, x) - target) <= abs(x) ** 4


def test_oracle_equivalence_random():
    for m in _random_regular_instances(200, seed=1001):
        poly = generating_polynomial(m)
        from afsum.polyroots import roots

        lam = roots(poly)
        syl = amplitudes_sylvester(lam, m)
        van = amplitudes_vandermonde(lam, m)
        scale = max(abs(x) for x in syl) + 1
        assert max(abs(a - b) for a, b in zip(syl, van)) < 1e-8 * scale


def test_round_trip_random():
    for mu, lam in _random_pairs(200, seed=2002):
        n = len(mu)
        s = tuple(
            sum(mu[k] * lam[k] ** m for k in range(n)) for m in range(2 * n)
        )
        af = solve(MomentSequence(n, s))
        got = sorted(zip(af.lam, af.mu), key=lambda t: (t[0].real, t[0].imag))
        want = sorted(zip(lam, mu), key=lambda t: (t[0].real, t[0].imag))
        for (gl, gm), (wl, wm) in zip(got, want):
            assert abs(gl - wl) < 1e-7 * (1 + abs(wl))
            assert abs(gm - wm) < 1e-7 * (1 + abs(wm))


def test_newton_identity_random():
    for m in _random_regular_instances(50, seed=3003):
        af = solve(m)
        poly = generating_polynomial(m)
        direct = [power_sum(af, v) for v in range(2 * m.n + 6)]
        propagated = extend_power_sums(poly, direct[: m.n], 2 * m.n + 5)
        scale = 1 + max(abs(x) for x in direct)
        for v in range(2 * m.n, 2 * m.n + 6):
            assert abs(direct[v] - propagated[v]) < 1e-8 * scale


def test_interpolation_order_bessel_over_exp():
    m = moment_sequence(FunctionSpec("bessel_j0"), FunctionSpec("exp"), 4)
    af = solve(m)
    af = AFSum(n=af.n, mu=af.mu, lam=af.lam, basis=FunctionSpec("exp"))
    got = sum_maclaurin(af, 7).coefficients
    want = maclaurin_coeffs(FunctionSpec("bessel_j0"), 7).coefficients
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-7 * (1 + abs(w))


def test_moment_residual_invariant_random():
    for m in _random_regular_instances(50, seed=4004):
        af = solve(m)
        scale = 1 + max(abs(x) for x in m.s)
        worst = max(abs(power_sum(af, v) - m.s[v]) for v in range(2 * m.n))
        assert worst <= 1e-9 * scale


def test_moment_sequence_validation():
    with pytest.raises(ValueError):
        MomentSequence(2, (1, 2, 3))
    with pytest.raises(ValueError):
        MomentSequence(0, ())
