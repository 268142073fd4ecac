"""Argument-principle zero counting on rectangles via Littlewood's theorem.

The boundary is walked counterclockwise with adaptive bisection until
successive samples differ in argument by less than pi/2, which pins the
continuous branch of log f without derivative sampling.  The net count is
the winding number; the horizontal moment is the contour integral of log f,
which equals the sum of (sigma - x1) over zeros minus poles to the right of
x1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundaryTooClose, NonConvergence, PoleAtOne, UnsupportedGroup
from .groups import GroupKind, _prime_factors
from .numerics import DEFAULT_SETTINGS, EvalSettings, log_gamma, riemann_zeta
from scipy.special import roots_legendre

_GL_NODES, _GL_WEIGHTS = roots_legendre(12)

_MIN_MODULUS = 1e-10
_MAX_POINTS = 200_000


@dataclass(frozen=True)
class Rectangle:
    x1: float
    x2: float
    y1: float
    y2: float

    def __post_init__(self) -> None:
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise ValueError("need x1 < x2 and y1 < y2")

    def corners(self) -> list[complex]:
        return [
            complex(self.x1, self.y1),
            complex(self.x2, self.y1),
            complex(self.x2, self.y2),
            complex(self.x1, self.y2),
        ]


@dataclass(frozen=True)
class ContourResult:
    net_count: int
    horizontal_moment: float
    residual: float
    mesh_points: int

    def to_json_dict(self, rect: Rectangle) -> dict:
        return {
            "rect": [rect.x1, rect.x2, rect.y1, rect.y2],
            "net_count": self.net_count,
            "horizontal_moment": self.horizontal_moment,
            "residual": self.residual,
            "mesh_points": self.mesh_points,
        }


def littlewood_count(
    f,
    rect: Rectangle,
    settings: EvalSettings = DEFAULT_SETTINGS,
    initial_per_edge: int = 64,
) -> ContourResult:
    """Zeros minus poles inside the rectangle, with the horizontal moment.

    f must be nonzero and finite on the boundary; a modulus below 1e-10
    raises BoundaryTooClose so the caller can perturb the rectangle.
    """
    corners = rect.corners()
    # parameter t in [0, 4): edge k covers [k, k+1)
    samples: list[tuple[float, complex]] = []
    for k in range(4):
        a, b = corners[k], corners[(k + 1) % 4]
        for i in range(initial_per_edge):
            u = i / initial_per_edge
            samples.append((k + u, a + (b - a) * u))
    samples.append((4.0, corners[0]))

    def point(t: float) -> complex:
        k = min(int(t), 3)
        a, b = corners[k], corners[(k + 1) % 4]
        return a + (b - a) * (t - k)

    values: dict[float, complex] = {}

    def log_f(t: float, z: complex) -> complex:
        if t not in values:
            w = f(z)
            if not (abs(w) > _MIN_MODULUS) or not cmath.isfinite(w):
                raise BoundaryTooClose(f"|f| = {abs(w):.3g} at boundary point {z}")
            values[t] = w
        return values[t]

    ts = [t for t, _ in samples]
    zs = [z for _, z in samples]
    ws = [log_f(t, z) for t, z in samples]
    # refine until adjacent arguments differ by < pi/2
    i = 0
    while i < len(ts) - 1:
        dphi = cmath.phase(ws[i + 1] / ws[i])
        if abs(dphi) >= math.pi / 2:
            if len(ts) > _MAX_POINTS:
                raise NonConvergence("boundary mesh exceeded the point budget")
            tm = 0.5 * (ts[i] + ts[i + 1])
            if tm <= ts[i] or tm >= ts[i + 1]:
                raise NonConvergence("mesh refinement stalled (zero or pole on boundary?)")
            zm = point(tm)
            ts.insert(i + 1, tm)
            zs.insert(i + 1, zm)
            ws.insert(i + 1, log_f(tm, zm))
            continue
        i += 1
    # continuous argument along the contour
    args = [cmath.phase(ws[0])]
    for i in range(1, len(ws)):
        args.append(args[-1] + cmath.phase(ws[i] / ws[i - 1]))
    winding = (args[-1] - args[0]) / (2.0 * math.pi)
    net = round(winding)
    residual = abs(winding - net)
    if residual >= 0.25:
        raise NonConvergence(f"winding {winding:.4f} too far from an integer")

    # Gauss-Legendre moment integral per interval; within one interval the
    # argument moves by < pi/2, so the branch is the start value plus the
    # principal phase of f(z)/f(start)
    eval_count = len(ts)

    def branch_log(z: complex, i: int) -> complex:
        w = f(z)
        if not (abs(w) > _MIN_MODULUS) or not cmath.isfinite(w):
            raise BoundaryTooClose(f"|f| = {abs(w):.3g} at boundary point {z}")
        return complex(math.log(abs(w)), args[i] + cmath.phase(w / ws[i]))

    def gl_moment(splits: int) -> float:
        nonlocal eval_count
        total = 0.0 + 0.0j
        for i in range(len(ts) - 1):
            pieces = []
            for j in range(splits):
                a = zs[i] + (zs[i + 1] - zs[i]) * (j / splits)
                b = zs[i] + (zs[i + 1] - zs[i]) * ((j + 1) / splits)
                pieces.append((a, b))
            for a, b in pieces:
                mid = 0.5 * (a + b)
                half = 0.5 * (b - a)
                acc = 0.0 + 0.0j
                for x, wgt in zip(_GL_NODES, _GL_WEIGHTS):
                    acc += wgt * branch_log(mid + half * x, i)
                    eval_count += 1
                total += acc * half
        return (total / (-2.0j * math.pi)).real

    moment = gl_moment(1)
    refined = gl_moment(2)
    if abs(refined - moment) > 1e-6 * (1.0 + abs(refined)):
        moment = refined
        refined = gl_moment(4)
        if abs(refined - moment) > 1e-5 * (1.0 + abs(refined)):
            raise NonConvergence("horizontal moment did not stabilize")
    return ContourResult(
        net_count=int(net),
        horizontal_moment=refined,
        residual=residual,
        mesh_points=eval_count,
    )


# ---------------------------------------------------------------------------
# Riemann zeta critical-line zeros (independent sign-change oracle)


def _riemann_siegel_theta(t: float, settings: EvalSettings) -> float:
    return (log_gamma(complex(0.25, 0.5 * t), settings)).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t: float, settings: EvalSettings = DEFAULT_SETTINGS) -> float:
    """Real Hardy-type function: Z(t) = e^{i theta(t)} zeta(1/2 + it)."""
    val = cmath.exp(1j * _riemann_siegel_theta(t, settings)) * riemann_zeta(
        complex(0.5, t), settings
    )
    return val.real


@lru_cache(maxsize=32)
def zeta_zeros_below(t_max: float, step: float = 0.1) -> tuple[float, ...]:
    """Ordinates of zeta zeros on the critical line in (0, t_max], by sign changes."""
    zeros: list[float] = []
    t = max(step, 2.0)
    prev_t, prev_z = t, hardy_z(t)
    t += step
    while t <= t_max + 1e-12:
        z = hardy_z(t)
        if prev_z == 0.0:
            zeros.append(prev_t)
        elif z != 0.0 and (prev_z < 0) != (z < 0):
            lo, hi = prev_t, t
            flo = prev_z
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fm = hardy_z(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (flo < 0) != (fm < 0):
                    hi = mid
                else:
                    lo, flo = mid, fm
            zeros.append(0.5 * (lo + hi))
        prev_t, prev_z = t, z
        t += step
    return tuple(z for z in zeros if z <= t_max)


# ---------------------------------------------------------------------------
# H on the critical strip


def h_strip_value(ctx, s: complex) -> complex:
    """H(s) continued to the strip for groups with a zeta-ratio closed form."""
    g = ctx.group
    settings = ctx.settings
    s = complex(s)
    try:
        ratio = riemann_zeta(2.0 * s - 1.0, settings) / riemann_zeta(2.0 * s, settings)
    except PoleAtOne as exc:
        raise BoundaryTooClose(str(exc)) from exc
    if g.kind is GroupKind.MODULAR:
        return ratio
    if g.kind is GroupKind.GAMMA0:
        n1 = g.cusp_count
        value = ratio**n1
        for p in _prime_factors(g.level):
            value *= ((1.0 - p**2 * p ** (-2.0 * s)) / (1.0 - p ** (2.0 * s))) ** (n1 // 2)
        # strip off the K-normalization: H = L * g1^{2s} / d(1)
        g1_sq = float(ctx.scat.g1_sq_exact)
        return value * g1_sq**s / (ctx.scat.d1_sign * math.exp(ctx.scat.c2))
    raise UnsupportedGroup(
        f"{g.group_id}: H is not computable on the strip (no zeta-ratio closed form)"
    )


def h_poles_in(ctx, rect: Rectangle) -> list[complex]:
    """Poles of H inside the rectangle: images s = rho/2 of zeta zeros.

    Inside the strip 0 < Re s < 1 the only poles of the zeta-ratio forms come
    from zeros of zeta(2s); on the verified heights these sit at Re s = 1/4.
    """
    out = []
    if rect.x1 < 0.26 and rect.x2 > 0.24:
        for gamma in zeta_zeros_below(2.0 * rect.y2 + 1.0):
            t = gamma / 2.0
            if rect.y1 < t < rect.y2:
                out.append(complex(0.25, t))
    return out


def h_zero_count(
    ctx,
    t_upper: float,
    x2: float = 0.99,
    y_lower: float = 0.25,
    settings: EvalSettings | None = None,
) -> tuple[int, float]:
    """Zeros of H in (1/2, x2) x (y_lower, T): vertical count and horizontal moment.

    Net counting with pole separation: poles of H are located independently
    as images of zeta zeros and added back.  If the boundary passes too close
    to a zero, T is shifted by +0.05 and the count rerun (the moment is then
    reported for the shifted rectangle).
    """
    settings = settings or ctx.settings
    multiplicity = 1 if ctx.group.kind is GroupKind.MODULAR else ctx.group.cusp_count
    shift = 0.0
    for _ in range(8):
        rect = Rectangle(0.5, x2, y_lower, t_upper + shift)
        try:
            res = littlewood_count(lambda z: h_strip_value(ctx, z), rect, settings)
        except BoundaryTooClose:
            shift += 0.05
            continue
        poles = h_poles_in(ctx, rect)
        n_ver = res.net_count + multiplicity * len(poles)
        n_hor = res.horizontal_moment + multiplicity * sum(
            p.real - rect.x1 for p in poles
        )
        return n_ver, n_hor
    raise BoundaryTooClose("could not move the contour off the zeros of H")
