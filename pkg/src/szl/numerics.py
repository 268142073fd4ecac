"""Complex special functions and numerical calculus primitives.

Points of the complex plane are plain Python ``complex`` values in double
precision.  ``log_gamma`` always means the principal branch, continuous on
the plane cut along (-inf, 0].  Riemann zeta is globally continued:
Euler-Maclaurin summation in the half plane Re s >= 1/2, the functional
equation elsewhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma as _sc_digamma
from scipy.special import loggamma as _sc_loggamma
from scipy.special import roots_legendre

from .errors import NonConvergence, PoleAtNonPositiveInteger, PoleAtOne


@dataclass(frozen=True)
class EvalSettings:
    """Centralized numerical knobs.

    zeta_em_terms      -- baseline length of the Euler-Maclaurin direct sum
    zeta_bernoulli_order -- number of Bernoulli correction terms (B_2..B_{2J})
    quad_panels        -- initial panel count for adaptive quadrature
    cauchy_radius      -- default contour radius for Cauchy derivatives
    target_rel_tol     -- relative tolerance every evaluator aims for
    """

    zeta_em_terms: int = 50
    zeta_bernoulli_order: int = 12
    quad_panels: int = 16
    cauchy_radius: float = 0.25
    target_rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (0.0 < self.target_rel_tol <= 1e-6):
            raise ValueError("target_rel_tol must lie in (0, 1e-6]")
        for name in ("zeta_em_terms", "zeta_bernoulli_order", "quad_panels"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.cauchy_radius <= 0:
            raise ValueError("cauchy_radius must be positive")


DEFAULT_SETTINGS = EvalSettings()

# B_2, B_4, ..., B_24 as exact ratios evaluated in double precision.
_BERNOULLI = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
]


def _near_nonpositive_integer(s: complex, eps: float = 1e-12) -> bool:
    if abs(s.imag) > eps:
        return False
    r = round(s.real)
    return r <= 0 and abs(s.real - r) <= eps


def log_gamma(s: complex, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Principal-branch log Gamma, continuous on C minus (-inf, 0]."""
    s = complex(s)
    if _near_nonpositive_integer(s):
        raise PoleAtNonPositiveInteger(f"log_gamma pole at s = {s}")
    return complex(_sc_loggamma(s))


def gamma(s: complex, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Gamma(s) via exp(log_gamma)."""
    return cmath.exp(log_gamma(s, settings))


def digamma(s: complex, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Gamma'/Gamma(s)."""
    s = complex(s)
    if _near_nonpositive_integer(s):
        raise PoleAtNonPositiveInteger(f"digamma pole at s = {s}")
    return complex(_sc_digamma(s))


def _log_sin(z: complex) -> complex:
    """A logarithm of sin(z), stable for large |Im z|.

    The branch is unspecified (may differ from the principal one by a
    multiple of 2*pi*i); callers must only exponentiate the result.
    """
    if z.imag < 0.0:
        return _log_sin(z.conjugate()).conjugate()
    if z.imag > 20.0:
        # sin z = e^{-iz}(1 - e^{2iz}) * i/2  with |e^{2iz}| < 1
        return -1j * z + cmath.log(1.0 - cmath.exp(2j * z)) + complex(-math.log(2.0), math.pi / 2.0)
    return cmath.log(cmath.sin(z))


def _zeta_em(s: complex, settings: EvalSettings) -> complex:
    """Euler-Maclaurin evaluation, reliable for Re s >= 1/2."""
    n_terms = max(settings.zeta_em_terms, int(0.6 * (abs(s) + 30.0)))
    j_max = settings.zeta_bernoulli_order
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    direct = np.exp(-s * np.log(n)).sum()
    big_n = float(n_terms)
    tail = big_n ** (1.0 - s) / (s - 1.0) - 0.5 * big_n ** (-s)
    # Bernoulli corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    poch = 1.0 + 0.0j
    fact = 1.0
    corr = 0.0 + 0.0j
    for j in range(1, min(j_max, len(_BERNOULLI)) + 1):
        two_j = 2 * j
        if j == 1:
            poch = s
            fact = 2.0
        else:
            poch *= (s + two_j - 3) * (s + two_j - 2)
            fact *= (two_j - 1) * two_j
        corr += _BERNOULLI[j - 1] / fact * poch * big_n ** (-s - two_j + 1)
    return complex(direct + tail + corr)


def riemann_zeta(s: complex, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Globally continued Riemann zeta."""
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleAtOne("riemann_zeta pole at s = 1")
    # Euler-Maclaurin remains valid past the strip (the Bernoulli-corrected
    # form continues to Re s > 1 - 2J); using it down to Re s = -1/2 keeps the
    # reflection factor sin(pi s/2) away from its s = 0 cancellation with the
    # zeta(1-s) pole.
    if s.real >= -0.5:
        return _zeta_em(s, settings)
    if abs(s.imag) < 1e-12 and abs(s.real / 2.0 - round(s.real / 2.0)) < 1e-15:
        return 0.0 + 0.0j  # trivial zero at a negative even integer
    w = 1.0 - s
    # zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), assembled in logs
    log_pref = (
        s * math.log(2.0)
        + (s - 1.0) * math.log(math.pi)
        + _log_sin(0.5 * math.pi * s)
        + log_gamma(w, settings)
    )
    return cmath.exp(log_pref) * _zeta_em(w, settings)


def cauchy_derivative(
    f,
    s: complex,
    k: int,
    radius: float | None = None,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """k-th derivative of an analytic sampler via a trapezoidal circle integral.

    f must be analytic on the closed disk |z - s| <= radius.  The trapezoid
    rule on the circle converges spectrally; the refinement loop doubles the
    node count until two consecutive answers agree.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    r = settings.cauchy_radius if radius is None else float(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    tol = max(settings.target_rel_tol, 1e-12)
    prev = None
    m = 64
    while m <= 4096:
        theta = 2.0 * math.pi * np.arange(m) / m
        z = s + r * np.exp(1j * theta)
        vals = np.array([f(complex(zz)) for zz in z], dtype=complex)
        est = math.factorial(k) / (m * r**k) * (vals * np.exp(-1j * k * theta)).sum()
        est = complex(est)
        if prev is not None and abs(est - prev) <= tol * (1.0 + abs(est)):
            return est
        prev = est
        m *= 2
    raise NonConvergence(f"cauchy_derivative did not stabilize at s={s}, k={k}")


_GL_NODES, _GL_WEIGHTS = roots_legendre(12)


def _gl_segment(f, a: complex, b: complex) -> complex:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    acc = 0.0 + 0.0j
    for x, w in zip(_GL_NODES, _GL_WEIGHTS):
        acc += w * f(mid + half * x)
    return acc * half


def line_integral(
    f,
    a: complex,
    b: complex,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """Integral of f along the straight segment [a, b], adaptive Gauss-Legendre."""
    a = complex(a)
    b = complex(b)
    tol = max(settings.target_rel_tol, 1e-13)

    def recurse(x: complex, y: complex, whole: complex, depth: int) -> complex:
        mid = 0.5 * (x + y)
        left = _gl_segment(f, x, mid)
        right = _gl_segment(f, mid, y)
        if abs(left + right - whole) <= tol * (1.0 + abs(left + right)) or depth >= 28:
            if depth >= 28:
                raise NonConvergence(f"line_integral did not converge on [{a}, {b}]")
            return left + right
        return recurse(x, mid, left, depth + 1) + recurse(mid, y, right, depth + 1)

    n0 = max(1, settings.quad_panels // 4)
    total = 0.0 + 0.0j
    for i in range(n0):
        x = a + (b - a) * (i / n0)
        y = a + (b - a) * ((i + 1) / n0)
        total += recurse(x, y, _gl_segment(f, x, y), 0)
    return total
