import math
import random

import pytest

from szl.dseries import (
    GeneralDirichletSeries,
    add,
    differentiate,
    dk_series,
    evaluate,
    evaluate_with_tail,
    exp_series,
    integrate_log,
    log_derivative,
    make_series,
    multiply,
    reciprocal,
    scale,
    unit_series,
)
from szl.errors import NonUnitLeading
from szl.numerics import cauchy_derivative, riemann_zeta


def totients(n_max):
    phi = list(range(n_max + 1))
    for p in range(2, n_max + 1):
        if phi[p] == p:  # p prime
            for m in range(p, n_max + 1, p):
                phi[m] -= phi[m] // p
    return phi


def totient_series(n_max, q_max=None):
    """H of the modular group: sum phi(n) (n^2)^(-s)."""
    phi = totients(n_max)
    q_max = float(n_max * n_max) if q_max is None else q_max
    return make_series([(n * n, phi[n]) for n in range(1, n_max + 1)], q_max)


def test_evaluate_trivial():
    d = unit_series()
    assert evaluate(d, 3.7 + 2j) == 1.0
    d2 = make_series([(1, 1), (4, -1)], 100.0)
    assert abs(evaluate(d2, 1.0) - 0.75) < 1e-15


def test_evaluate_totient_series_matches_zeta_ratio():
    expected = riemann_zeta(3.0) / riemann_zeta(4.0)
    # at n = 200 the true dropped tail is ~7.6e-6; the estimate must cover it
    value, tail = evaluate_with_tail(totient_series(200), 2.0)
    assert abs(value - expected) < 1e-5
    assert abs(value - expected) <= 2 * tail + 1e-12
    # a deeper truncation reaches 1e-6
    value2, _ = evaluate_with_tail(totient_series(800), 2.0)
    assert abs(value2 - expected) < 1e-6


def test_multiply_identity_and_square():
    d = make_series([(1, 1), (2, 1)], 100.0)
    assert multiply(d, unit_series(100.0), 100.0).freqs == d.freqs
    sq = multiply(d, d, 100.0)
    assert sq.freqs == (1.0, 2.0, 4.0)
    assert sq.coeffs == (1.0 + 0j, 2.0 + 0j, 1.0 + 0j)


def test_multiply_totient_convolution_oracle():
    # sum_{d|n} phi(d) = n: totient series times zeta(2s) gives zeta(2s-1)
    n_max = 30
    q_max = float(n_max * n_max)
    h = totient_series(n_max, q_max)
    zeta2s = make_series([(n * n, 1.0) for n in range(1, n_max + 1)], q_max)
    prod = multiply(h, zeta2s, q_max)
    got = dict(zip(prod.freqs, prod.coeffs))
    for n in range(1, n_max + 1):
        assert abs(got[float(n * n)] - n) < 1e-9


def test_multiply_commutative_associative():
    rng = random.Random(4)
    def rand_series():
        terms = [(1.0, 1.0)] + [
            (rng.uniform(1.5, 9.0), complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
            for _ in range(5)
        ]
        return make_series(terms, 1e4)

    a, b, c = rand_series(), rand_series(), rand_series()
    q = 1e4
    ab = multiply(a, b, q)
    ba = multiply(b, a, q)
    assert ab.freqs == ba.freqs
    for x, y in zip(ab.coeffs, ba.coeffs):
        assert abs(x - y) < 1e-12
    lhs = multiply(ab, c, q)
    rhs = multiply(a, multiply(b, c, q), q)
    assert len(lhs.freqs) == len(rhs.freqs)
    for qf, qg, x, y in zip(lhs.freqs, rhs.freqs, lhs.coeffs, rhs.coeffs):
        assert abs(qf - qg) <= 1e-9 * qf
        assert abs(x - y) < 1e-10


def test_differentiate():
    assert differentiate(make_series([(1, 5)], 10.0)).freqs == ()
    d = differentiate(make_series([(4, 1)], 10.0))
    assert d.freqs == (4.0,)
    assert abs(d.coeffs[0] + math.log(4.0)) < 1e-15


def test_differentiate_matches_cauchy_oracle():
    d = make_series([(1, 1), (2, 0.5), (3, -0.25), (7, 2.0)], 1000.0)
    dd = differentiate(d)
    contour = cauchy_derivative(lambda z: evaluate(d, z), 3.0, 1, 0.25)
    assert abs(evaluate(dd, 3.0) - contour) < 1e-8


def test_log_derivative_basics():
    assert log_derivative(unit_series(100.0), 100.0).freqs == ()
    # H = 1 + a q^{-s}: b(q) = -a log q
    h = make_series([(1, 1), (9, 0.5)], 100.0)
    b = log_derivative(h, 9.5)
    assert abs(b.freqs[0] - 9.0) < 1e-12
    assert abs(b.coeffs[0] + 0.5 * math.log(9.0)) < 1e-14
    with pytest.raises(NonUnitLeading):
        log_derivative(make_series([(2, 1)], 10.0), 10.0)


def test_log_derivative_modular_leading_term():
    # modular H: b(4) = -2 (d(2)/d(1)) log(g2/g1) = -log 4
    h = totient_series(40)
    b = log_derivative(h, 100.0)
    assert abs(b.freqs[0] - 4.0) < 1e-12
    assert abs(b.coeffs[0] + math.log(4.0)) < 1e-12


def test_log_derivative_pointwise():
    h = make_series([(1, 1), (3, 2.0), (7, 5.0)], 3000.0)
    b = log_derivative(h, 3000.0)
    for s in (4.0, 6.0 + 1j):
        hp = cauchy_derivative(lambda z: evaluate(h, z), s, 1, 0.3)
        assert abs(evaluate(b, s) * evaluate(h, s) - hp) < 1e-8


def test_log_derivative_of_product_is_sum():
    q = 400.0
    h1 = make_series([(1, 1), (4, 1.0), (9, -0.5)], q)
    h2 = make_series([(1, 1), (5, 2.0)], q)
    lhs = log_derivative(multiply(h1, h2, q), q)
    rhs = add(log_derivative(h1, q), log_derivative(h2, q), q)

    def lookup(series, q0):
        for qf, c in series.terms():
            if abs(qf - q0) <= 1e-9 * q0:
                return c
        return 0.0 + 0.0j

    for q0 in set(lhs.freqs) | set(rhs.freqs):
        assert abs(lookup(lhs, q0) - lookup(rhs, q0)) < 1e-10


def test_log_derivative_frequencies_in_semigroup():
    h = make_series([(1, 1), (4, 1.0), (6.25, -2.0)], 400.0)
    b = log_derivative(h, 400.0)
    gens = [q for q in h.freqs if q > 1]
    semigroup = {1.0}
    frontier = [1.0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g
            if y <= 400.0 and all(abs(y - z) > 1e-9 * y for z in semigroup):
                semigroup.add(y)
                frontier.append(y)
    for q in b.freqs:
        assert any(abs(q - z) <= 1e-9 * q for z in semigroup)


def test_reciprocal_round_trip():
    q = 300.0
    h = make_series([(1, 1), (4, 0.7), (9, -1.2), (25, 0.3)], q)
    r = reciprocal(h, q)
    prod = multiply(h, r, q)
    assert abs(prod.coeffs[0] - 1.0) < 1e-10
    for qf, c in zip(prod.freqs[1:], prod.coeffs[1:]):
        assert abs(c) < 1e-10


def test_dk_series_identity_and_leading_coefficient():
    q = 5000.0
    d1 = make_series([(4.0, -math.log(4.0)), (6.854, 2.2), (9.0, -0.4)], q)
    assert dk_series(d1, 1, q).freqs == d1.freqs
    a1 = -math.log(4.0)
    big_a = 4.0
    for k in (2, 3, 4):
        dk = dk_series(d1, k, q)
        assert abs(dk.freqs[0] - big_a) < 1e-12
        expected = (-1) ** (k - 1) * a1 * math.log(big_a) ** (k - 1)
        assert abs(dk.coeffs[0] - expected) < 1e-10


def test_dk_series_matches_cauchy_derivatives():
    # F = exp(L) with L' ... for a leading-unit series H, (H)^(k) = H * D_k
    q = 4000.0
    h = make_series([(1, 1), (3, 1.4), (5, -0.8)], q)
    d1 = log_derivative(h, q)
    s = 6.0
    h_at = evaluate(h, s)
    for k in (1, 2, 3):
        dk = dk_series(d1, k, q)
        contour = cauchy_derivative(lambda z: evaluate(h, z), s, k, 0.4)
        assert abs(evaluate(dk, s) * h_at - contour) < 1e-7 * (1 + abs(contour))


def test_exp_integrate_log_consistency():
    q = 500.0
    h = make_series([(1, 1), (4, 0.9), (6, -0.3)], q)
    log_h = integrate_log(log_derivative(h, q))
    back = exp_series(log_h, q)
    assert abs(back.coeffs[0] - 1.0) < 1e-10
    got = dict(zip(back.freqs, back.coeffs))
    want = dict(zip(h.freqs, h.coeffs))
    for qf, c in want.items():
        assert abs(got.get(qf, 0.0) - c) < 1e-9


def test_json_round_trip():
    d = make_series([(1, 1), (4.5, 2 - 1j)], 50.0)
    d2 = GeneralDirichletSeries.from_json_dict(d.to_json_dict())
    assert d2.freqs == d.freqs
    assert d2.coeffs == d.coeffs
    assert d2.q_max == d.q_max


def test_scale_and_tail_reporting():
    d = make_series([(1, 1), (10, 5.0), (100, 25.0), (1000, 125.0)], 1000.0)
    v, tail = evaluate_with_tail(d, 4.0)
    assert tail > 0.0
    assert abs(evaluate(scale(d, 2.0), 4.0) - 2.0 * v) < 1e-12
