"""Closed-form asymptotic predictors for the counting laws.

Predictors are coefficient records evaluated as c2*T^2 + ctlt*T*log(T) +
ct*T; the stated error classes ride along as metadata.  The compact twin of
a cusped surface (same volume, systole length and multiplicity, no cusps)
is synthesized as an abstract compact descriptor with a volume override;
its existence is a deformation argument taken as given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnitA, WrongTrichotomy, ZeroACoefficient
from .groups import GroupDescriptor, GroupKind, Signature, Trichotomy
from .zeta import ZetaContext, build_context


@dataclass(frozen=True)
class AsymptoticExpansion:
    coeff_T2: float
    coeff_TlogT: float
    coeff_T: float
    error_class: str  # littleO_T | bigO_logT | bigO_T_over_logT

    def at(self, t: float) -> float:
        if t <= 0:
            raise ValueError("evaluation point must be positive")
        return (
            self.coeff_T2 * t * t
            + self.coeff_TlogT * t * math.log(t)
            + self.coeff_T * t
        )

    def to_json_dict(self) -> dict:
        return {
            "T2": self.coeff_T2,
            "TlogT": self.coeff_TlogT,
            "T": self.coeff_T,
            "error_class": self.error_class,
        }


def _log_g1(ctx: ZetaContext) -> float:
    return -0.5 * ctx.scat.c1  # c1 = -2 log g1


def _abs_a(ctx: ZetaContext) -> float:
    a = ctx.inv.a
    if a == 0.0:
        raise ZeroACoefficient("a = 0")
    return abs(a)


def predict_nver_deriv(ctx: ZetaContext, k: int = 1) -> AsymptoticExpansion:
    """Vertical count of zeros of (Z H)^(k): identical for every k >= 1."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    _abs_a(ctx)
    coeff_t = -(
        math.log(ctx.inv.A) + 2.0 * ctx.scat.n1 * math.log(2.0) + 2.0 * _log_g1(ctx)
    ) / (2.0 * math.pi)
    return AsymptoticExpansion(
        coeff_T2=ctx.vol / (4.0 * math.pi),
        coeff_TlogT=0.0,
        coeff_T=coeff_t,
        error_class="littleO_T",
    )


def predict_nhor_deriv(ctx: ZetaContext, k: int = 1) -> AsymptoticExpansion:
    """Horizontal displacement sum for zeros of (Z H)^(k)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    n1 = ctx.scat.n1
    abs_a = _abs_a(ctx)
    abs_d1 = math.exp(ctx.scat.c2)
    big_a = ctx.inv.A
    two_pi = 2.0 * math.pi
    coeff_tlogt = (n1 / 2.0 + 1.0) / two_pi
    coeff_t = (
        math.log(ctx.vol * math.sqrt(big_a) / abs_a)
        - 1.0
        + math.log(math.exp(_log_g1(ctx)) / (math.pi ** (n1 / 2.0) * abs_d1))
        - n1 / 2.0
    ) / two_pi
    if k >= 2:
        log_a = math.log(big_a)
        if log_a == 0.0:
            raise UnitA("log A = 0: the k-th derivative increment is undefined")
        coeff_tlogt += (k - 1.0) / two_pi
        coeff_t += ((k - 1.0) * (math.log(ctx.vol) - 1.0) - math.log((k - 1.0) * log_a)) / two_pi
    return AsymptoticExpansion(0.0, coeff_tlogt, coeff_t, "littleO_T")


def predict_weyl(ctx: ZetaContext) -> AsymptoticExpansion:
    """Classical Weyl law for the discrete-plus-continuous counting function."""
    n1 = ctx.scat.n1
    return AsymptoticExpansion(
        coeff_T2=ctx.vol / (4.0 * math.pi),
        coeff_TlogT=-n1 / math.pi,
        coeff_T=n1 * (1.0 - math.log(2.0)) / math.pi,
        error_class="bigO_T_over_logT",
    )


def predict_weyl_new(ctx: ZetaContext) -> AsymptoticExpansion:
    """Weyl law restated through N_ver(T; Z H): picks up the -log(g1)/pi term."""
    n1 = ctx.scat.n1
    return AsymptoticExpansion(
        coeff_T2=ctx.vol / (4.0 * math.pi),
        coeff_TlogT=-n1 / math.pi,
        coeff_T=(n1 * (1.0 - math.log(2.0)) - _log_g1(ctx)) / math.pi,
        error_class="bigO_T_over_logT",
    )


def weyl_discrepancy(ctx: ZetaContext) -> float:
    """Coefficient of T separating the scattering-zero count from N_con."""
    return -_log_g1(ctx) / math.pi


def predict_hejhal_h(ctx: ZetaContext) -> AsymptoticExpansion:
    """Horizontal count for the zeros of the Dirichlet part H (one-sided)."""
    n1 = ctx.scat.n1
    if n1 == 0:
        return AsymptoticExpansion(0.0, 0.0, 0.0, "bigO_logT")
    two_pi = 2.0 * math.pi
    coeff_t = -(
        n1 / 2.0
        + (n1 / 2.0) * math.log(math.pi)
        + ctx.scat.c2  # log |d(1)|
        - _log_g1(ctx)
    ) / two_pi
    return AsymptoticExpansion(0.0, n1 / (4.0 * math.pi), coeff_t, "bigO_logT")


def compact_twin(ctx: ZetaContext) -> ZetaContext:
    """Co-compact surface with the same volume, systole length and multiplicity."""
    inv = ctx.inv
    descriptor = GroupDescriptor(
        kind=GroupKind.ABSTRACT_COMPACT,
        level=1,
        signature=Signature(0, (), 0),
        group_id=f"compact-twin:{ctx.group.group_id}",
        systole_length=inv.systole_length,
        systole_mult=inv.systole_mult,
        volume_override=ctx.vol,
    )
    return build_context(descriptor, settings=ctx.settings)


def comparison_residual(ctx: ZetaContext, k: int = 1) -> tuple[float, float]:
    """T log T and T residuals of N_hor(k) - N_hor(T; H) - N_hor(twin, k).

    Defined in the geodesic-smaller case A = exp(l0); both residuals vanish
    identically there.
    """
    if ctx.inv.trichotomy is not Trichotomy.GEODESIC_SMALLER:
        raise WrongTrichotomy(
            f"{ctx.group.group_id} has A = (g2/g1)^2; the comparison needs A = exp(l0)"
        )
    own = predict_nhor_deriv(ctx, k)
    hejhal = predict_hejhal_h(ctx)
    twin = predict_nhor_deriv(compact_twin(ctx), k)
    return (
        own.coeff_TlogT - hejhal.coeff_TlogT - twin.coeff_TlogT,
        own.coeff_T - hejhal.coeff_T - twin.coeff_T,
    )


def short_sum(ctx: ZetaContext, t_lo: float, u: float) -> float:
    """Predicted displacement sum over zeros with ordinates in (T, T + U]."""
    if not (0.0 < u < t_lo):
        raise ValueError("need 0 < U < T")
    n1 = ctx.scat.n1
    abs_a = _abs_a(ctx)
    abs_d1 = math.exp(ctx.scat.c2)
    g1 = math.exp(_log_g1(ctx))
    constant = math.log(
        g1 * ctx.vol * math.sqrt(ctx.inv.A) / (math.pi ** (n1 / 2.0) * abs_d1 * abs_a)
    )
    return ((n1 / 2.0 + 1.0) * u * math.log(t_lo + u) + constant * u) / (2.0 * math.pi)


def ratio_vanishing(ctx: ZetaContext, k: int, t: float) -> float:
    """predict_nhor(T)/predict_nver(T); decays like log T / T."""
    if t <= 1.0:
        raise ValueError("T must exceed 1")
    return predict_nhor_deriv(ctx, k).at(t) / predict_nver_deriv(ctx, k).at(t)
