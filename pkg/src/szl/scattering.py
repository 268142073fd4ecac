"""Scattering determinants phi = K * H for the catalog groups.

Closed forms exist for the modular group, Gamma0(N) (squarefree N) and
Gamma0(5)+; Gamma0(6)+ is served purely by the brute-force general
Dirichlet series over its admissible lower-left entries.  The decomposition
tracks the frequency ladder (g_n, d(n)), the constants c1 = -2 log g1 and
c2 = log|d(1)| (with the sign of d(1) kept separately: determinants of
multi-cusp scattering matrices can open with a negative coefficient), the
normalized series H, and the log-derivative series b(q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dseries import GeneralDirichletSeries, log_derivative, make_series, multiply, unit_series
from .errors import (
    InsufficientTerms,
    PoleAtNonPositiveInteger,
    PoleAtOne,
    PoleHit,
    UnsupportedGroup,
)
from .groups import GroupDescriptor, GroupKind, _prime_factors
from .numerics import DEFAULT_SETTINGS, EvalSettings, log_gamma, digamma, riemann_zeta


@dataclass(frozen=True)
class ScatteringData:
    n1: int
    g_ladder: tuple[tuple[float, float], ...]  # (g_n, d(n)), ascending
    g1_sq_exact: Fraction
    g2_sq_exact: Fraction
    c1: float
    c2: float
    d1_sign: int
    H: GeneralDirichletSeries  # frequencies r_n^2 = (g_n/g1)^2, coefficients d(n)/d(1)
    b_series: GeneralDirichletSeries

    @property
    def g1(self) -> float:
        return math.sqrt(float(self.g1_sq_exact))

    @property
    def g2(self) -> float:
        return math.sqrt(float(self.g2_sq_exact))

    @property
    def d1(self) -> float:
        return self.d1_sign * math.exp(self.c2)

    @property
    def g_ratio_sq_exact(self) -> Fraction:
        return self.g2_sq_exact / self.g1_sq_exact

    def to_json_dict(self) -> dict:
        return {
            "n1": self.n1,
            "g_ladder": [[g, d] for g, d in self.g_ladder],
            "g1_sq": [self.g1_sq_exact.numerator, self.g1_sq_exact.denominator],
            "g2_sq": [self.g2_sq_exact.numerator, self.g2_sq_exact.denominator],
            "c1": self.c1,
            "c2": self.c2,
            "d1_sign": self.d1_sign,
            "H": self.H.to_json_dict(),
            "b_series": self.b_series.to_json_dict(),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ScatteringData":
        return ScatteringData(
            n1=d["n1"],
            g_ladder=tuple((g, c) for g, c in d["g_ladder"]),
            g1_sq_exact=Fraction(*d["g1_sq"]),
            g2_sq_exact=Fraction(*d["g2_sq"]),
            c1=d["c1"],
            c2=d["c2"],
            d1_sign=d["d1_sign"],
            H=GeneralDirichletSeries.from_json_dict(d["H"]),
            b_series=GeneralDirichletSeries.from_json_dict(d["b_series"]),
        )


# ---------------------------------------------------------------------------
# brute-force admissible-entry series


def _count_solvable_d(c_int: int, e: int) -> int:
    """Number of d mod c (with e | d) admitting a, b with the element constraints.

    d = e*delta; an a = e*alpha with a d = e (mod c) exists iff
    gcd(e*delta, c/e) = 1, the extended-gcd solvability criterion.
    """
    c_prime = c_int // e
    count = 0
    for delta in range(c_prime):
        if math.gcd(e * delta, c_prime) == 1:
            count += 1
    return count


def scattering_series(
    g: GroupDescriptor, c_max: float
) -> list[tuple[float, int, Fraction]]:
    """Admissible lower-left entries c <= c_max with their counts S(c).

    Returns (c, S(c), exact c^2) ascending, S(c) > 0 entries only.  Modular:
    c runs over the positive integers.  Gamma0(f)+ (f = 5, 6): c runs over
    f*j/sqrt(e) for e | f.  Multi-cusp Gamma0(N) has no single-cusp series
    and is served by its closed form only.
    """
    out: list[tuple[float, int, Fraction]] = []
    if g.kind is GroupKind.MODULAR:
        for c in range(1, int(c_max) + 1):
            s = sum(1 for d in range(c) if math.gcd(d, c) == 1)
            out.append((float(c), s, Fraction(c * c)))
        return out
    if g.kind is GroupKind.GAMMA0_PLUS:
        f = g.level
        for e in range(1, f + 1):
            if f % e:
                continue
            j = 1
            while (f * j) ** 2 <= c_max * c_max * e + 1e-9:
                c_int = f * j
                s = _count_solvable_d(c_int, e)
                if s > 0:
                    out.append(
                        (c_int / math.sqrt(e), s, Fraction(c_int * c_int, e))
                    )
                j += 1
        out.sort(key=lambda row: row[2])
        return out
    raise UnsupportedGroup(
        f"{g.group_id}: no single-cusp admissible-entry series (closed form only)"
    )


# ---------------------------------------------------------------------------
# closed forms


def _gamma_ratio(s: complex, settings: EvalSettings) -> complex:
    """Gamma(s - 1/2) / Gamma(s) via the principal log difference."""
    return cmath.exp(log_gamma(s - 0.5, settings) - log_gamma(s, settings))


def _zeta_ratio(s: complex, settings: EvalSettings) -> complex:
    return riemann_zeta(2.0 * s - 1.0, settings) / riemann_zeta(2.0 * s, settings)


def phi_closed_form(
    g: GroupDescriptor, s: complex, settings: EvalSettings = DEFAULT_SETTINGS
) -> complex:
    """Scattering determinant by the published closed form.

    Available for Modular, Gamma0(N) and Gamma0(5)+; Gamma0(6)+ has none and
    raises UnsupportedGroup.
    """
    s = complex(s)
    try:
        if g.kind is GroupKind.MODULAR:
            return math.sqrt(math.pi) * _gamma_ratio(s, settings) * _zeta_ratio(s, settings)
        if g.kind is GroupKind.GAMMA0:
            n1 = g.cusp_count
            base = (math.sqrt(math.pi) * _gamma_ratio(s, settings) * _zeta_ratio(s, settings)) ** n1
            for p in _prime_factors(g.level):
                num = 1.0 - p**2 * p ** (-2.0 * s)
                den = 1.0 - p ** (2.0 * s)
                if abs(den) < 1e-14:
                    raise PoleHit(f"p^(2s) = 1 at s = {s}")
                base *= (num / den) ** (n1 // 2)
            return base
        if g.kind is GroupKind.GAMMA0_PLUS and g.level == 5:
            x = 5.0**s
            den = x * (x + 1.0)
            if abs(den) < 1e-14:
                raise PoleHit(f"5^s (5^s + 1) = 0 at s = {s}")
            return (
                math.sqrt(math.pi)
                * _gamma_ratio(s, settings)
                * ((x + 5.0) / den)
                * _zeta_ratio(s, settings)
            )
    except (PoleAtOne, PoleAtNonPositiveInteger) as exc:
        raise PoleHit(str(exc)) from exc
    raise UnsupportedGroup(f"no closed scattering form for {g.group_id}")


def phi_series(
    g: GroupDescriptor,
    s: complex,
    sd: "ScatteringData",
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """phi from the truncated admissible-entry series; valid for Re s > 1."""
    acc = 0.0 + 0.0j
    for g_n, d_n in reversed(sd.g_ladder):
        acc += d_n * g_n ** (-2.0 * s)
    try:
        pref = (math.sqrt(math.pi) * _gamma_ratio(s, settings)) ** sd.n1
    except PoleAtNonPositiveInteger as exc:
        raise PoleHit(str(exc)) from exc
    return pref * acc


def phi(
    g: GroupDescriptor,
    s: complex,
    sd: "ScatteringData | None" = None,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """Closed form when published, otherwise the truncated series."""
    try:
        return phi_closed_form(g, s, settings)
    except UnsupportedGroup:
        if sd is None:
            raise
        return phi_series(g, s, sd, settings)


# ---------------------------------------------------------------------------
# decomposition phi = K * H


@lru_cache(maxsize=8)
def _totients(n_max: int) -> tuple[int, ...]:
    phi_tab = list(range(n_max + 1))
    for p in range(2, n_max + 1):
        if phi_tab[p] == p:
            for m in range(p, n_max + 1, p):
                phi_tab[m] -= phi_tab[m] // p
    return tuple(phi_tab)


def _gamma0_relative_series(n: int, n1: int, r_max: int) -> GeneralDirichletSeries:
    """Dirichlet-series part of phi_N normalized to leading term 1.

    Expressed in the relative frequency r = g/g1 (an integer), kept to
    r <= r_max: [zeta(2s-1)/zeta(2s)]^{n1} contributes the totient ladder,
    each prime p | N contributes (-p^{-2s})^{n1/2} * (relative correction).
    """
    q_max = float(r_max)
    phi_tab = _totients(r_max)
    tot = make_series([(m, phi_tab[m]) for m in range(1, r_max + 1)], q_max)
    acc = unit_series(q_max)
    for _ in range(n1):
        acc = multiply(acc, tot, q_max)
    for p in _prime_factors(n):
        corr_terms = [(1.0, 1.0)]
        pk = p
        while pk <= r_max:
            corr_terms.append((float(pk), float(1 - p * p)))
            pk *= p
        corr = make_series(corr_terms, q_max)
        for _ in range(n1 // 2):
            acc = multiply(acc, corr, q_max)
    return acc


def decompose(
    g: GroupDescriptor,
    c_max: float | None = None,
    q_max: float = 1.0e6,
    b_q_max: float = 1.0e4,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> ScatteringData:
    """Populate the ladder, constants, H and the b-series for a catalog group."""
    if g.kind is GroupKind.ABSTRACT_COMPACT:
        unit = unit_series(q_max)
        empty = make_series([], b_q_max)
        return ScatteringData(
            n1=0,
            g_ladder=((1.0, 1.0),),
            g1_sq_exact=Fraction(1),
            g2_sq_exact=Fraction(1),
            c1=0.0,
            c2=0.0,
            d1_sign=1,
            H=unit,
            b_series=empty,
        )
    n1 = g.cusp_count
    if g.kind in (GroupKind.MODULAR, GroupKind.GAMMA0_PLUS):
        rows = scattering_series(g, c_max if c_max is not None else 1000.0 * _g1_guess(g))
        if len(rows) < 2:
            raise InsufficientTerms(f"{g.group_id}: series too short to read g1, g2")
        g1_sq = rows[0][2]
        g2_sq = rows[1][2]
        d1 = float(rows[0][1])
        ladder = tuple((c, float(s_c)) for c, s_c, _ in rows)
        h_terms = []
        for c, s_c, c_sq in rows:
            q = float(c_sq / g1_sq)
            if q <= q_max:
                h_terms.append((q, s_c / d1))
        h = make_series(h_terms, q_max)
    elif g.kind is GroupKind.GAMMA0:
        n = g.level
        r_max = int(math.isqrt(int(q_max)))
        rel = _gamma0_relative_series(n, n1, max(r_max, 64))
        r = len(_prime_factors(n))
        sign = -1 if (r * (n1 // 2)) % 2 else 1
        g1_sq = Fraction(n) ** n1
        if len(rel.freqs) < 2:
            raise InsufficientTerms(f"{g.group_id}: relative series too short")
        r2 = int(round(rel.freqs[1]))
        g2_sq = g1_sq * r2 * r2
        g1 = math.sqrt(float(g1_sq))
        ladder = tuple((g1 * q, sign * c.real) for q, c in rel.terms())
        h = make_series([(q * q, c) for q, c in rel.terms()], q_max)
        d1 = float(sign)
    else:
        raise UnsupportedGroup(f"no scattering construction for {g.group_id}")
    if not h.leading_unit:
        raise InsufficientTerms("normalized series H must open with (1, 1)")
    if len(h.freqs) < 2 or h.freqs[1] <= 1.0:
        raise InsufficientTerms("H needs a second frequency r_2 > 1")
    b = log_derivative(h, b_q_max)
    g1_sq = Fraction(g1_sq)
    g2_sq = Fraction(g2_sq)
    return ScatteringData(
        n1=n1,
        g_ladder=ladder,
        g1_sq_exact=g1_sq,
        g2_sq_exact=g2_sq,
        c1=-math.log(float(g1_sq)),  # -2 log g1
        c2=math.log(abs(d1)),
        d1_sign=1 if d1 > 0 else -1,
        H=h,
        b_series=b,
    )


def _g1_guess(g: GroupDescriptor) -> float:
    if g.kind is GroupKind.MODULAR:
        return 1.0
    if g.kind is GroupKind.GAMMA0_PLUS:
        return math.sqrt(g.level)
    return 1.0


def k_factor(
    g: GroupDescriptor,
    sd: ScatteringData,
    s: complex,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """K(s) = pi^{n1/2} (Gamma(s-1/2)/Gamma(s))^{n1} e^{c1 s + c2} sign(d1)."""
    try:
        ratio = _gamma_ratio(s, settings) if sd.n1 else 1.0
    except PoleAtNonPositiveInteger as exc:
        raise PoleHit(str(exc)) from exc
    return (
        math.pi ** (sd.n1 / 2.0)
        * ratio**sd.n1
        * cmath.exp(sd.c1 * s + sd.c2)
        * sd.d1_sign
    )


def k_logderiv(
    g: GroupDescriptor,
    sd: ScatteringData,
    s: complex,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    """K'/K(s) = n1 (psi(s - 1/2) - psi(s)) + c1."""
    try:
        if sd.n1 == 0:
            return complex(sd.c1)
        return sd.n1 * (digamma(s - 0.5, settings) - digamma(s, settings)) + sd.c1
    except PoleAtNonPositiveInteger as exc:
        raise PoleHit(str(exc)) from exc


def b2_constant(sd: ScatteringData) -> float:
    """Hejhal's b2 = pi^{n1/2} g1^{-1} d(1) (signed)."""
    return math.pi ** (sd.n1 / 2.0) / sd.g1 * sd.d1
