"""Selberg zeta machinery in the absolute-convergence region.

Everything is driven by a ZetaContext bundling the group, its geodesic
census, the scattering decomposition and the surface invariants.  The log
of the zeta function and its logarithmic derivative are census sums; the
functional-equation factors eta'/eta, f and K are closed forms; higher
derivative data comes from the general-Dirichlet-series recursion.

eta itself is only ever materialized as a ratio exp(int eta'/eta): the
normalizing constant eta(1/2) is unknown and cancels in every quantity the
package reports.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import scattering as sc
from .dseries import GeneralDirichletSeries, add, dk_series, evaluate, make_series
from .errors import CutoffTooSmall, DivergentTail, PoleHit, UnsupportedGroup, ZeroACoefficient
from .groups import (
    GeodesicClass,
    GroupDescriptor,
    GroupKind,
    SurfaceInvariants,
    SystoleResult,
    invariants,
    modular_geodesic_census,
    parse_group_id,
    systole_search,
    volume,
)
from .numerics import DEFAULT_SETTINGS, EvalSettings, cauchy_derivative, digamma, line_integral

_POLE_GUARD = 1e-8


@dataclass
class ZetaContext:
    group: GroupDescriptor
    scat: sc.ScatteringData
    inv: SurfaceInvariants
    census: tuple[GeodesicClass, ...]
    census_cutoff: float
    settings: EvalSettings = DEFAULT_SETTINGS
    _norm_arr: np.ndarray | None = field(default=None, repr=False)
    _lambda_arr: np.ndarray | None = field(default=None, repr=False)
    _dk_cache: dict = field(default_factory=dict, repr=False)

    @property
    def vol(self) -> float:
        return volume(self.group)

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._norm_arr is None:
            self._norm_arr = np.array([cl.norm for cl in self.census], dtype=float)
            self._lambda_arr = np.array(
                [cl.multiplicity * cl.von_mangoldt for cl in self.census], dtype=float
            )
        return self._norm_arr, self._lambda_arr

    def geodesic_series(self, q_max: float) -> GeneralDirichletSeries:
        """Sum Lambda(P)/N(P)^s as a general Dirichlet series up to q_max."""
        return make_series(
            [
                (cl.norm, cl.multiplicity * cl.von_mangoldt)
                for cl in self.census
                if cl.norm <= q_max
            ],
            q_max,
        )

    def d1_series(self, q_max: float) -> GeneralDirichletSeries:
        """Log-derivative series of Z*H: geodesic terms plus the b(q) terms."""
        return add(self.geodesic_series(q_max), self.scat.b_series, q_max)

    def dk(self, k: int, q_max: float = 400.0) -> GeneralDirichletSeries:
        key = (k, q_max)
        if key not in self._dk_cache:
            self._dk_cache[key] = dk_series(self.d1_series(q_max), k, q_max)
        return self._dk_cache[key]

    def to_json_dict(self) -> dict:
        return {
            "group_id": self.group.group_id,
            "census_cutoff": self.census_cutoff,
            "census": [
                {
                    "trace_sq_num": cl.trace_sq_scaled.numerator,
                    "trace_sq_den": cl.trace_sq_scaled.denominator,
                    "norm": cl.norm,
                    "length": cl.length,
                    "primitive": cl.primitive,
                    "primitive_norm": cl.primitive_norm,
                    "multiplicity": cl.multiplicity,
                }
                for cl in self.census
            ],
            "scattering": self.scat.to_json_dict(),
            "invariants": {
                "systole_length": self.inv.systole_length,
                "systole_mult": self.inv.systole_mult,
                "m0_is_lower_bound": self.inv.m0_is_lower_bound,
                "g_ratio_sq": None if math.isinf(self.inv.g_ratio_sq) else self.inv.g_ratio_sq,
                "trichotomy": self.inv.trichotomy.value,
                "A": self.inv.A,
                "a": self.inv.a,
            },
        }


def build_context(
    group: GroupDescriptor | str,
    census_cutoff: float = 1.0e4,
    q_max: float = 1.0e6,
    b_q_max: float = 1.0e4,
    c_max: float | None = None,
    m0_override: int | None = None,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> ZetaContext:
    """Assemble census, scattering data and invariants for a catalog group.

    Only the modular group has a full census (class numbers via the form
    cycles); other matrix groups get an empty census, which still serves the
    predictors, the scattering evaluators and the counting module.
    """
    g = parse_group_id(group) if isinstance(group, str) else group
    scat = sc.decompose(g, c_max=c_max, q_max=q_max, b_q_max=b_q_max, settings=settings)
    systole: SystoleResult | None = None
    census: tuple[GeodesicClass, ...] = ()
    if g.kind is GroupKind.MODULAR:
        census = tuple(modular_geodesic_census(census_cutoff))
        systole = systole_search(g, 12.0)
    elif g.has_matrix_model:
        systole = systole_search(g, 12.0)
    inv = invariants(g, scat, scat.b_series, systole=systole, m0_override=m0_override)
    return ZetaContext(
        group=g,
        scat=scat,
        inv=inv,
        census=census,
        census_cutoff=census_cutoff,
        settings=settings,
    )


def _require_census(ctx: ZetaContext) -> None:
    if not ctx.census:
        raise UnsupportedGroup(
            f"{ctx.group.group_id}: no geodesic census (census sums need the modular group)"
        )


def _census_tail(ctx: ZetaContext, sigma: float) -> float:
    """Conservative bound for sum of Lambda(P) N(P)^-sigma over N(P) > cutoff.

    Uses psi(x) <= 1.3 x at desk scale and partial integration.
    """
    x = ctx.census_cutoff
    if math.isinf(x):
        return 0.0  # census declared complete
    if sigma <= 1.0:
        return math.inf
    return 1.3 * (sigma / (sigma - 1.0) + 1.0) * x ** (1.0 - sigma)


def _log1m(x: complex) -> complex:
    """log(1 - x), accurate for tiny |x| where 1 - x rounds to 1."""
    if abs(x) < 1e-8:
        return -x - 0.5 * x * x
    return cmath.log(1.0 - x)


def selberg_log_z(ctx: ZetaContext, s: complex) -> complex:
    value, tail = selberg_log_z_with_tail(ctx, s)
    return value


def selberg_log_z_with_tail(ctx: ZetaContext, s: complex) -> tuple[complex, float]:
    """log Z(s) = sum over primitives, n >= 0 of log(1 - N(P0)^-(s+n))."""
    _require_census(ctx)
    s = complex(s)
    tail = _census_tail(ctx, s.real)
    if not tail < 0.01:
        raise DivergentTail(
            f"census cutoff {ctx.census_cutoff:g} insufficient at Re s = {s.real}"
        )
    total = 0.0 + 0.0j
    for cl in ctx.census:
        if not cl.primitive:
            continue
        log_n0 = cl.length
        n = 0
        while True:
            x = cmath.exp(-(s + n) * log_n0)
            if abs(x) < 1e-30:
                break
            total += cl.multiplicity * _log1m(x)
            n += 1
            if n > 800:
                break
    return total, tail


def d_m(ctx: ZetaContext, s: complex) -> complex:
    """Z'/Z(s) = sum Lambda(P) N(P)^-s over all census classes (Re s > 1)."""
    _require_census(ctx)
    s = complex(s)
    tail = _census_tail(ctx, s.real)
    if not tail < 0.01:
        raise DivergentTail(
            f"census cutoff {ctx.census_cutoff:g} insufficient at Re s = {s.real}"
        )
    norms, lambdas = ctx._arrays()
    return complex((lambdas * np.exp(-s * np.log(norms))).sum())


def psi_m(ctx: ZetaContext, x: float) -> float:
    """Prime geodesic counting function: exact partial sum over the census."""
    _require_census(ctx)
    if x > ctx.census_cutoff * (1 + 1e-12):
        raise CutoffTooSmall(f"psi({x:g}) needs census beyond {ctx.census_cutoff:g}")
    norms, lambdas = ctx._arrays()
    return float(lambdas[norms <= x].sum())


def _check_pole(value: complex, what: str, s: complex) -> None:
    if abs(value) < _POLE_GUARD:
        raise PoleHit(f"{what} vanishes at s = {s}")


def eta_logderiv(ctx: ZetaContext, s: complex) -> complex:
    """eta'/eta(s): volume tangent term, elliptic terms, parabolic terms.

    The elliptic sum runs over the inconjugate elliptic elements: a point of
    order m contributes the rotation angles k pi / m for k = 1..m-1, each
    weighted by 1/(m sin(theta)).
    """
    s = complex(s)
    v = s - 0.5
    cos_pi_v = cmath.cos(math.pi * v)
    _check_pole(cos_pi_v, "cos(pi (s - 1/2))", s)
    total = ctx.vol * v * cmath.tan(math.pi * v)
    for m in ctx.group.signature.elliptic_orders:
        for k in range(1, m):
            theta = math.pi * k / m
            total -= (
                math.pi
                / (m * math.sin(theta))
                * cmath.cos((2.0 * theta - math.pi) * v)
                / cos_pi_v
            )
    n1 = ctx.group.cusp_count
    if n1:
        for pole_arg in (0.5 + s, 1.5 - s):
            if abs(pole_arg - round(pole_arg.real)) < _POLE_GUARD and round(pole_arg.real) <= 0:
                raise PoleHit(f"digamma pole in eta'/eta at s = {s}")
        total += 2.0 * n1 * math.log(2.0)
        total += n1 * (
            digamma(0.5 + s, ctx.settings) + digamma(1.5 - s, ctx.settings)
        )
    return total


def f_m(ctx: ZetaContext, s: complex) -> complex:
    """f(s) = vol(M) (1/2 - s) tan(pi (1/2 - s))."""
    s = complex(s)
    w = 0.5 - s
    _check_pole(cmath.cos(math.pi * w), "cos(pi (1/2 - s))", s)
    return ctx.vol * w * cmath.tan(math.pi * w)


def f_logderiv(ctx: ZetaContext, s: complex) -> complex:
    """f'/f(s) = -1/(1/2 - s) - 2 pi / sin(2 pi (1/2 - s))."""
    s = complex(s)
    w = 0.5 - s
    _check_pole(w, "1/2 - s", s)
    sin2 = cmath.sin(2.0 * math.pi * w)
    _check_pole(sin2, "sin(2 pi (1/2 - s))", s)
    return -1.0 / w - 2.0 * math.pi / sin2


def k_logderiv(ctx: ZetaContext, s: complex) -> complex:
    return sc.k_logderiv(ctx.group, ctx.scat, s, ctx.settings)


def k_factor(ctx: ZetaContext, s: complex) -> complex:
    return sc.k_factor(ctx.group, ctx.scat, s, ctx.settings)


def z_value(ctx: ZetaContext, s: complex) -> complex:
    return cmath.exp(selberg_log_z(ctx, s))


def z_tilde(ctx: ZetaContext, j: int, s: complex) -> complex:
    """The inductive functional-equation factors, evaluated at Re s > 1.

    j = 0 is Z itself; j = 1 comes from the derivative of the functional
    equation; j >= 2 follows the recursion with argument w = 1 - s, whose
    own log-derivatives are served by Cauchy differentiation on disks kept
    inside Re > 1.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    s = complex(s)
    if s.real <= 1.0:
        raise DivergentTail("z_tilde needs Re s > 1")
    if j == 0:
        return z_value(ctx, s)
    if j == 1:
        return (
            eta_logderiv(ctx, s) - k_logderiv(ctx, 1.0 - s) - d_m(ctx, s)
        ) / f_m(ctx, s)
    w = 1.0 - s
    acc = (j - 1) * f_logderiv(ctx, w) + eta_logderiv(ctx, w) - k_logderiv(ctx, w)
    acc -= d_m(ctx, s)  # i = 0 term of the log-derivative sum
    radius = min(ctx.settings.cauchy_radius, 0.4 * (s.real - 1.0))
    for i in range(1, j):
        deriv = cauchy_derivative(
            lambda z, i=i: z_tilde(ctx, i, z), s, 1, radius, ctx.settings
        )
        acc -= deriv / z_tilde(ctx, i, s)
    return acc / f_m(ctx, w)


def zh_value(ctx: ZetaContext, s: complex) -> complex:
    """(Z H)(s) for Re s > 1 from the census product and the H series."""
    return z_value(ctx, s) * evaluate(ctx.scat.H, s, ctx.settings)


def zh_and_derivatives(
    ctx: ZetaContext, k: int, s: complex, q_max: float = 400.0
) -> complex:
    """(Z H)^(k)(s) = (Z H)(s) * D_k(s) via the series recursion."""
    if k < 0:
        raise ValueError("k must be >= 0")
    base = zh_value(ctx, s)
    if k == 0:
        return base
    return base * evaluate(ctx.dk(k, q_max), s, ctx.settings)


def x_mk(ctx: ZetaContext, k: int, s: complex, q_max: float = 400.0) -> complex:
    """X_k(s) = A^s (Z H)^(k)(s) / a_k; tends to 1 as Re s grows."""
    a_k = ctx.inv.a_k(k)
    if a_k == 0.0:
        raise ZeroACoefficient("a_k = 0")
    s = complex(s)
    return ctx.inv.A**s * zh_and_derivatives(ctx, k, s, q_max) / a_k


def nonvanishing_probe(ctx: ZetaContext, sigma: float, t: float) -> float:
    """Re( -(Z H)'/(Z H)(sigma + i t) ) for sigma < 1/2, via the functional equation.

    Grows like vol(M) |t|; strict positivity for large |t| is the content of
    the left-half-plane non-vanishing statement.
    """
    if sigma >= 0.0:
        raise ValueError("probe needs sigma < 0 so that Re(1 - s) > 1")
    s = complex(sigma, t)
    value = -eta_logderiv(ctx, s) + k_logderiv(ctx, s) + d_m(ctx, 1.0 - s)
    return value.real


def empirical_abscissa(ctx: ZetaContext, tol: float = 1e-6) -> float:
    """Measured convergence abscissa of the log-derivative series.

    Smallest sigma on a 0.1-grid where halving the data cutoff (census norms,
    or the b-series cutoff when there is no census) moves the evaluation by
    less than tol relative.  Returns inf when no grid point qualifies; the
    theoretical sigma_0' is never asserted, only measured.
    """
    grid = [1.0 + 0.1 * i for i in range(1, 91)]
    if ctx.census:
        half_cut = ctx.census_cutoff / 2.0
        half = ZetaContext(
            group=ctx.group,
            scat=ctx.scat,
            inv=ctx.inv,
            census=tuple(cl for cl in ctx.census if cl.norm <= half_cut),
            census_cutoff=half_cut,
            settings=ctx.settings,
        )
        for sigma in grid:
            try:
                full_v = d_m(ctx, sigma)
                half_v = d_m(half, sigma)
            except DivergentTail:
                continue
            if abs(full_v - half_v) <= tol * (1.0 + abs(full_v)):
                return sigma
        return math.inf
    b = ctx.scat.b_series
    if not b.freqs:
        return 1.0
    from .dseries import evaluate_with_tail, make_series

    half_b = make_series(
        [(q, c) for q, c in b.terms() if q <= b.q_max / 2.0], b.q_max / 2.0
    )
    for sigma in grid:
        full_v, _ = evaluate_with_tail(b, sigma, ctx.settings)
        half_v, _ = evaluate_with_tail(half_b, sigma, ctx.settings)
        if abs(full_v - half_v) <= tol * (1.0 + abs(full_v)):
            return sigma
    return math.inf


def eta_ratio(ctx: ZetaContext, s: complex, s0: complex) -> complex:
    """eta(s)/eta(s0) = exp of the integral of eta'/eta along [s0, s].

    The straight segment must avoid the real axis, where all poles of
    eta'/eta live.
    """
    integral = line_integral(
        lambda z: eta_logderiv(ctx, z), complex(s0), complex(s), ctx.settings
    )
    return cmath.exp(integral)


def zh_from_functional_equation(
    ctx: ZetaContext, s: complex, s0: complex
) -> complex:
    """(Z H)(s) for Re s < 0, up to the constant eta(s0): eta~ K^{-1} Z(1-s).

    The unknown factor eta(s0) is shared by every value produced with the
    same reference point, so ratios and logarithmic derivatives are exact.
    """
    s = complex(s)
    if s.real >= 0.0:
        raise ValueError("functional-equation route is for Re s < 0")
    return (
        eta_ratio(ctx, s, s0)
        / k_factor(ctx, s)
        * z_value(ctx, 1.0 - s)
    )


def zh_kth_derivative_product_form(
    ctx: ZetaContext, k: int, s: complex, s0: complex
) -> complex:
    """(Z H)^(k)(s) for Re s < 0 from the product formula, up to eta(s0).

    f(s)^k eta~(s) K^{-1}(s) Z(1-s) prod_{i=1..k} Ztilde_i(1-s); carries the
    same unknown constant as zh_from_functional_equation(s, s0).
    """
    s = complex(s)
    if s.real >= 0.0:
        raise ValueError("product form is for Re s < 0")
    w = 1.0 - s
    acc = f_m(ctx, s) ** k * eta_ratio(ctx, s, s0) / k_factor(ctx, s) * z_value(ctx, w)
    for i in range(1, k + 1):
        acc *= z_tilde(ctx, i, w)
    return acc
