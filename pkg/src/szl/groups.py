"""Catalog of uniformizing groups: exact element arithmetic, systole search,
hyperbolic volume, and the geodesic class census for the modular group.

Matrix groups are the modular group PSL(2,Z), the Hecke congruence groups
Gamma0(N) for squarefree N, and the Fricke extensions Gamma0(f)+ for
f in {5, 6}.  Elements are stored as integer tuples (a, b, c, d, e)
representing (1/sqrt(e)) (a b; c d) with ad - bc = e.  Trichotomy decisions
between exp(l0) and (g2/g1)^2 are made on exact rationals, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import quadforms
from .dseries import GeneralDirichletSeries
from .errors import (
    CutoffTooSmall,
    InsufficientTerms,
    InvalidSignature,
    NoHyperbolicFound,
    UnknownGroup,
    UnsupportedKind,
    ZeroACoefficient,
)


class GroupKind(Enum):
    MODULAR = "Modular"
    GAMMA0 = "Gamma0"
    GAMMA0_PLUS = "Gamma0Plus"
    ABSTRACT_COMPACT = "AbstractCompact"


class Trichotomy(Enum):
    GEODESIC_SMALLER = "GeodesicSmaller"
    SCATTERING_SMALLER = "ScatteringSmaller"
    EQUAL = "Equal"


@dataclass(frozen=True)
class Signature:
    genus: int
    elliptic_orders: tuple[int, ...]
    cusp_count: int


@dataclass(frozen=True)
class GroupDescriptor:
    kind: GroupKind
    level: int
    signature: Signature
    group_id: str
    # compact-only data (no matrix model): systole and multiplicity are inputs
    systole_length: float | None = None
    systole_mult: int = 1
    volume_override: float | None = None

    @property
    def cusp_count(self) -> int:
        return self.signature.cusp_count

    @property
    def has_matrix_model(self) -> bool:
        return self.kind is not GroupKind.ABSTRACT_COMPACT


def _squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gamma0_signature(n: int) -> Signature:
    primes = _prime_factors(n)
    index = n
    for p in primes:
        index = index * (p + 1) // p
    nu2 = 1
    for p in primes:
        if p == 2:
            f = 1
        elif p % 4 == 1:
            f = 2
        else:
            f = 0
        nu2 *= f
    nu3 = 1
    for p in primes:
        if p == 3:
            f = 1
        elif p % 3 == 1:
            f = 2
        else:
            f = 0
        nu3 *= f
    cusps = 2 ** len(primes)
    genus_frac = Fraction(index, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2) + 1
    if genus_frac.denominator != 1 or genus_frac < 0:
        raise InvalidSignature(f"bad genus computation for Gamma0({n})")
    orders = (2,) * nu2 + (3,) * nu3
    return Signature(int(genus_frac), orders, cusps)


def parse_group_id(group_id: str) -> GroupDescriptor:
    """Resolve a catalog id: psl2z | gamma0:<N> | gamma0plus:<f> | compact:<genus>[:<orders>]."""
    gid = group_id.strip().lower()
    if gid == "psl2z":
        return GroupDescriptor(GroupKind.MODULAR, 1, Signature(0, (2, 3), 1), "psl2z")
    if gid.startswith("gamma0plus:"):
        try:
            f = int(gid.split(":", 1)[1])
        except ValueError as exc:
            raise UnknownGroup(f"bad level in {group_id!r}") from exc
        if f not in (5, 6):
            raise UnknownGroup(
                f"gamma0plus:{f} not in catalog (signatures known only for f = 5, 6)"
            )
        return GroupDescriptor(GroupKind.GAMMA0_PLUS, f, Signature(0, (2, 2, 2), 1), gid)
    if gid.startswith("gamma0:"):
        try:
            n = int(gid.split(":", 1)[1])
        except ValueError as exc:
            raise UnknownGroup(f"bad level in {group_id!r}") from exc
        if n == 1:
            return GroupDescriptor(GroupKind.MODULAR, 1, Signature(0, (2, 3), 1), "psl2z")
        if not _squarefree(n):
            raise UnknownGroup(f"gamma0:{n} needs a squarefree level")
        return GroupDescriptor(GroupKind.GAMMA0, n, _gamma0_signature(n), gid)
    if gid.startswith("compact:"):
        parts = gid.split(":")
        try:
            genus = int(parts[1])
            orders = tuple(int(x) for x in parts[2].split(",")) if len(parts) > 2 else ()
        except (ValueError, IndexError) as exc:
            raise UnknownGroup(f"bad compact spec {group_id!r}") from exc
        if any(m < 2 for m in orders):
            raise UnknownGroup("elliptic orders must be >= 2")
        return GroupDescriptor(
            GroupKind.ABSTRACT_COMPACT, 1, Signature(genus, orders, 0), gid,
            systole_length=1.0, systole_mult=1,
        )
    raise UnknownGroup(f"unknown group id {group_id!r}")


def with_systole(g: GroupDescriptor, l0: float, m0: int = 1) -> GroupDescriptor:
    """Copy of a compact descriptor with prescribed systole data."""
    if g.kind is not GroupKind.ABSTRACT_COMPACT:
        raise UnsupportedKind("systole is computed, not prescribed, for matrix groups")
    return GroupDescriptor(
        g.kind, g.level, g.signature, g.group_id,
        systole_length=float(l0), systole_mult=int(m0),
        volume_override=g.volume_override,
    )


def volume(g: GroupDescriptor) -> float:
    """Hyperbolic volume by Gauss-Bonnet: 2 pi (2g - 2 + n1 + sum(1 - 1/m))."""
    if g.volume_override is not None:
        return g.volume_override
    sig = g.signature
    total = Fraction(2 * sig.genus - 2 + sig.cusp_count)
    for m in sig.elliptic_orders:
        total += 1 - Fraction(1, m)
    if total <= 0:
        raise InvalidSignature(f"signature {sig} has non-positive volume")
    return 2.0 * math.pi * float(total)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int
    e: int = 1

    def __post_init__(self) -> None:
        if self.e < 1:
            raise ValueError("scale divisor e must be >= 1")
        if self.a * self.d - self.b * self.c != self.e:
            raise ValueError("determinant constraint ad - bc = e violated")

    @property
    def real_trace(self) -> float:
        return (self.a + self.d) / math.sqrt(self.e)

    @property
    def trace_sq_scaled(self) -> Fraction:
        """(a + d)^2 / e, the exact square of the real trace."""
        return Fraction((self.a + self.d) ** 2, self.e)

    @property
    def is_hyperbolic(self) -> bool:
        return self.trace_sq_scaled > 4

    @property
    def real_lower_left(self) -> float:
        return self.c / math.sqrt(self.e)


def make_element(g: GroupDescriptor, a: int, b: int, c: int, d: int, e: int = 1) -> GroupElement:
    """Construct an element and check the group's divisibility invariants."""
    el = GroupElement(a, b, c, d, e)
    if g.kind in (GroupKind.MODULAR, GroupKind.GAMMA0):
        if e != 1:
            raise ValueError("integral groups have e = 1")
        if c % g.level != 0:
            raise ValueError(f"lower-left entry must be divisible by {g.level}")
    elif g.kind is GroupKind.GAMMA0_PLUS:
        f = g.level
        if f % e != 0 or a % e != 0 or d % e != 0 or c % f != 0:
            raise ValueError("Fricke-extension divisibility constraints violated")
    else:
        raise UnsupportedKind("abstract compact descriptors have no matrix model")
    return el


def _canonical_sign(a: int, b: int, c: int, d: int) -> bool:
    t = a + d
    return t > 0 or (t == 0 and (c > 0 or (c == 0 and a > 0)))


def enumerate_elements(
    g: GroupDescriptor,
    c_bound: float,
    trace_bound: float,
) -> list[GroupElement]:
    """All elements (up to sign) with |c|/sqrt(e) <= c_bound, |a+d|/sqrt(e) <= trace_bound.

    For fixed c and trace the diagonal is unbounded, so the scan additionally
    caps |a| at sqrt(e) * (c_bound + trace_bound + 2); that box contains every
    witness the catalog operations need (systole certificates come from the
    exact trace-lattice arguments, not from box completeness).
    """
    if not g.has_matrix_model:
        raise UnsupportedKind("abstract compact descriptors have no matrix model")
    if c_bound <= 0 or trace_bound <= 0:
        raise ValueError("bounds must be positive")
    out: list[GroupElement] = []
    scales = [1] if g.kind is not GroupKind.GAMMA0_PLUS else sorted(
        e for e in range(1, g.level + 1) if g.level % e == 0
    )
    c_step = g.level
    for e in scales:
        sq_e = math.sqrt(e)
        c_lim = int(math.floor(c_bound * sq_e + 1e-9))
        t_lim = int(math.floor(trace_bound * sq_e + 1e-9))
        a_lim = int(math.ceil((c_bound + trace_bound + 2) * sq_e))
        for c in range(-(c_lim // c_step) * c_step, c_lim + 1, c_step):
            if c == 0:
                if e != 1:
                    continue
                # upper triangular family: a d = 1
                for a, d in ((1, 1), (-1, -1)):
                    for b in range(-c_lim, c_lim + 1):
                        if _canonical_sign(a, b, 0, d):
                            out.append(make_element(g, a, b, 0, d, 1))
                continue
            for a in range(-a_lim, a_lim + 1):
                if a % e:
                    continue
                for t in range(-t_lim, t_lim + 1):
                    d = t - a
                    if d % e:
                        continue
                    num = a * d - e
                    if num % c:
                        continue
                    b = num // c
                    if _canonical_sign(a, b, c, d):
                        out.append(make_element(g, a, b, c, d, e))
    out.sort(key=lambda el: (el.trace_sq_scaled, el.e, el.c, el.a, el.b))
    return out


@dataclass(frozen=True)
class SystoleResult:
    length: float          # l0 = 2 arccosh(tau0 / 2)
    trace: float           # tau0 = minimal |real trace| > 2
    trace_sq: Fraction     # exact tau0^2
    witness: GroupElement


def norm_from_trace_sq(u: Fraction) -> float:
    """exp(l0) = ((tau0 + sqrt(tau0^2 - 4)) / 2)^2 from the exact u = tau0^2."""
    uf = float(u)
    return ((math.sqrt(uf) + math.sqrt(uf - 4.0)) / 2.0) ** 2


def compare_norm_with_rational(u: Fraction, rho: Fraction) -> int:
    """Exact sign of exp(l0) - rho, where exp(l0) solves x + 1/x = u - 2.

    exp(l0) > rho  iff  2 rho - (u-2) < 0  or  rho ((u-2) - rho) < 1.
    """
    v = u - 2
    gap = 2 * rho - v
    if gap < 0:
        return 1
    prod = rho * (v - rho)
    if prod > 1:
        return 1
    if prod == 1:
        return 0
    return -1


def _gamma0_trace_witness(n: int, t: int) -> GroupElement | None:
    """Element of Gamma0(N) with trace t, or None.

    Trace t occurs iff a^2 - t a + 1 = 0 (mod N) has a solution: take
    d = t - a, c = N, b = (a d - 1)/N.
    """
    for a in range(n):
        if (a * a - t * a + 1) % n == 0:
            d = t - a
            b = (a * d - 1) // n
            return GroupElement(a, b, n, d, 1)
    return None


def systole_search(g: GroupDescriptor, trace_ceiling: float) -> SystoleResult:
    """Minimal hyperbolic |real trace| in (2, trace_ceiling] with a witness.

    Completeness is exact, not box-based: integral groups scan integer traces
    through the mod-N solvability criterion; Fricke extensions scan the trace
    lattice (sqrt(e) Z for e | f) in increasing order.
    """
    if not g.has_matrix_model:
        raise UnsupportedKind("abstract compact descriptors have no matrix model")
    if trace_ceiling <= 2:
        raise ValueError("trace_ceiling must exceed 2")
    if g.kind in (GroupKind.MODULAR, GroupKind.GAMMA0):
        n = g.level
        t = 3
        while t <= trace_ceiling:
            w = _gamma0_trace_witness(n, t)
            if w is not None:
                u = Fraction(t * t)
                return SystoleResult(math.log(norm_from_trace_sq(u)), float(t), u, w)
            t += 1
        raise NoHyperbolicFound(f"no hyperbolic trace <= {trace_ceiling} in gamma0:{n}")
    # Fricke extension: candidate traces k sqrt(e) for e | f, sorted by value
    f = g.level
    candidates: list[tuple[Fraction, int, int]] = []
    for e in range(1, f + 1):
        if f % e:
            continue
        k = 1
        while k * k * e <= trace_ceiling**2 + 1e-9:
            u = Fraction(k * k * e)
            if u > 4:
                candidates.append((u, e, k))
            k += 1
    candidates.sort()
    for u, e, k in candidates:
        w = _fricke_trace_witness(f, e, k)
        if w is not None:
            return SystoleResult(math.log(norm_from_trace_sq(u)), math.sqrt(float(u)), u, w)
    raise NoHyperbolicFound(
        f"no witness for any candidate trace <= {trace_ceiling} in gamma0plus:{f}"
    )


def _fricke_trace_witness(f: int, e: int, k: int, box: int = 60) -> GroupElement | None:
    """Element of Gamma0(f)+ with scale e and a + d = k e (real trace k sqrt(e))."""
    for abs_i in range(box + 1):
        for i in ((abs_i,) if abs_i == 0 else (abs_i, -abs_i)):
            a = e * i
            d = e * k - a
            num = a * d - e
            if num == 0:
                continue
            for j in range(1, box + 1):
                for c in (f * j, -f * j):
                    if num % c == 0:
                        return GroupElement(a, num // c, c, d, e)
    return None


def _conjugate_key(m: tuple, s: GroupElement) -> tuple | None:
    """s m s^{-1} as an integer tuple (sign-normalized), or None if not integral."""
    ma, mb, mc, md, me = m
    sa, sb, sc, sd, se = s.a, s.b, s.c, s.d, s.e
    xa = sa * ma + sb * mc
    xb = sa * mb + sb * md
    xc = sc * ma + sd * mc
    xd = sc * mb + sd * md
    ya = xa * sd - xb * sc
    yb = -xa * sb + xb * sa
    yc = xc * sd - xd * sc
    yd = -xc * sb + xd * sa
    if any(v % se for v in (ya, yb, yc, yd)):
        return None
    ya, yb, yc, yd = ya // se, yb // se, yc // se, yd // se
    if not _canonical_sign(ya, yb, yc, yd):
        ya, yb, yc, yd = -ya, -yb, -yc, -yd
    return (ya, yb, yc, yd, me)


def _complexity(key: tuple) -> int:
    return abs(key[0]) + abs(key[1]) + abs(key[2]) + abs(key[3])


def conjugacy_class_floor(
    g: GroupDescriptor,
    trace_sq: Fraction,
    box: int = 24,
) -> int:
    """Estimated number of inconjugate classes at the given trace.

    Every element of that trace in the search box is conjugated down greedily
    to a complexity-minimal representative, whose plateau (all conjugates
    below twice the minimal complexity plus slack) is explored exhaustively;
    elements sharing a plateau are one class.  The count is exposed as a
    computed lower bound with an override escape hatch: no closed-form class
    theory backs it.
    """
    if not g.has_matrix_model:
        raise UnsupportedKind("conjugacy partition needs a matrix model")
    elements = [
        el for el in enumerate_elements(g, box, math.sqrt(float(trace_sq)) + 0.1)
        if el.trace_sq_scaled == trace_sq
    ]
    if not elements:
        return 0
    # conjugator pool must include the elliptic generators with c = level,
    # otherwise the orbit partition refines true conjugacy and overcounts
    conjugators = [
        el for el in enumerate_elements(g, g.level + 2, 7)
        if (abs(el.a) + abs(el.b) + abs(el.c) + abs(el.d)) / math.sqrt(el.e) <= 16
    ]

    signature_of: dict[tuple, tuple] = {}

    def greedy_descend(key: tuple) -> tuple:
        improved = True
        while improved:
            improved = False
            for s in conjugators:
                cand = _conjugate_key(key, s)
                if cand is not None and _complexity(cand) < _complexity(key):
                    key = cand
                    improved = True
                    break
        return key

    def reduce_signature(key: tuple, budget: int = 30_000) -> tuple:
        # greedy descent, then bounded plateau walks restarted at each minimum
        best = greedy_descend(key)
        while True:
            cap = 2 * _complexity(best) + 24
            seen = {best}
            frontier = [best]
            minimum = best
            touched = None
            while frontier and len(seen) < budget:
                cur = frontier.pop()
                if cur in signature_of:
                    touched = signature_of[cur]
                    break
                for s in conjugators:
                    cand = _conjugate_key(cur, s)
                    if cand is None or cand in seen or _complexity(cand) > cap:
                        continue
                    seen.add(cand)
                    frontier.append(cand)
                    if (_complexity(cand), cand) < (_complexity(minimum), minimum):
                        minimum = cand
            if touched is None and minimum != best:
                best = greedy_descend(minimum)
                continue
            sig = touched if touched is not None else min(seen)
            for node in seen:
                signature_of[node] = sig
            return sig

    signatures = set()
    for el in elements:
        key = (el.a, el.b, el.c, el.d, el.e)
        if not _canonical_sign(*key[:4]):
            key = (-key[0], -key[1], -key[2], -key[3], key[4])
        signatures.add(reduce_signature(key))
    return len(signatures)


# ---------------------------------------------------------------------------
# modular geodesic census


@dataclass(frozen=True)
class GeodesicClass:
    trace_sq_scaled: Fraction
    norm: float
    length: float
    primitive: bool
    primitive_norm: float
    multiplicity: int

    @property
    def von_mangoldt(self) -> float:
        """Lambda(P) = log N(P0) / (1 - N(P)^{-1})."""
        return math.log(self.primitive_norm) / (1.0 - 1.0 / self.norm)


MIN_MODULAR_NORM = norm_from_trace_sq(Fraction(9))  # trace 3


def _max_trace_for_norm(x: float) -> int:
    t = 3
    while norm_from_trace_sq(Fraction((t + 1) * (t + 1))) <= x:
        t += 1
    return t


@lru_cache(maxsize=4)
def _primitive_trace_counts(t_max: int) -> dict[int, int]:
    """Primitive class counts p(t) via the Chebyshev power sieve.

    A trace t is the trace of a k-th power iff t = 2 T_k(t0/2) for a trace
    t0 >= 3, k >= 2; then p(t) = count(t) - sum p(t0) over such (t0, k).
    """
    counts = quadforms.class_counts_up_to(t_max)
    power_sources: dict[int, list[int]] = {}
    for t0 in range(3, t_max + 1):
        prev, cur = 2, t0  # 2 T_0 = 2, 2 T_1(t0/2) = t0
        while True:
            prev, cur = cur, t0 * cur - prev
            if cur > t_max:
                break
            power_sources.setdefault(cur, []).append(t0)
    prim: dict[int, int] = {}
    for t in range(3, t_max + 1):
        prim[t] = counts[t] - sum(prim[t0] for t0 in power_sources.get(t, []))
    return prim


def modular_class_count(t: int) -> int:
    """Number of PSL(2,Z)-conjugacy classes with |trace| = t (all classes)."""
    return quadforms.modular_class_count(t)


def modular_geodesic_census(x: float) -> list[GeodesicClass]:
    """All hyperbolic classes of the modular group with norm N(P) <= x."""
    if x < MIN_MODULAR_NORM:
        raise CutoffTooSmall(
            f"census cutoff {x} below the minimal norm {MIN_MODULAR_NORM:.4f}"
        )
    t_max = _max_trace_for_norm(x)
    prim = _primitive_trace_counts(t_max)
    out: list[GeodesicClass] = []
    for t in range(3, t_max + 1):
        mult = prim[t]
        if mult <= 0:
            continue
        u = Fraction(t * t)
        n0 = norm_from_trace_sq(u)
        length0 = math.log(n0)
        k = 1
        nk = n0
        while nk <= x * (1 + 1e-12):
            # trace of the k-th power: 2 T_k(t/2), kept exact via the recurrence
            out.append(
                GeodesicClass(
                    trace_sq_scaled=_power_trace_sq(t, k),
                    norm=nk,
                    length=k * length0,
                    primitive=(k == 1),
                    primitive_norm=n0,
                    multiplicity=mult,
                )
            )
            k += 1
            nk = n0**k
    out.sort(key=lambda cl: (cl.norm, cl.primitive_norm))
    return out


def _power_trace_sq(t0: int, k: int) -> Fraction:
    prev, cur = 2, t0
    for _ in range(k - 1):
        prev, cur = cur, t0 * cur - prev
    return Fraction(cur * cur)


# ---------------------------------------------------------------------------
# surface invariants


@dataclass(frozen=True)
class SurfaceInvariants:
    systole_length: float
    systole_mult: int
    m0_is_lower_bound: bool
    g_ratio_sq: float
    trichotomy: Trichotomy
    A: float
    a: float

    def a_k(self, k: int) -> float:
        """a_k = (-1)^(k-1) a log^(k-1) A."""
        if self.a == 0.0:
            raise ZeroACoefficient("a = 0: the a_k ladder is undefined")
        return (-1.0) ** (k - 1) * self.a * math.log(self.A) ** (k - 1)

    def a_k_map(self, k_max: int = 4) -> dict[int, float]:
        return {k: self.a_k(k) for k in range(1, k_max + 1)}


def _b_coefficient(b_series: GeneralDirichletSeries, q: float) -> float:
    for qf, c in b_series.terms():
        if abs(qf - q) <= 1e-9 * q:
            return c.real
    raise InsufficientTerms(f"b-series does not resolve the coefficient at q = {q}")


def invariants(
    g: GroupDescriptor,
    scat,
    b_series: GeneralDirichletSeries | None,
    systole: SystoleResult | None = None,
    m0: int | None = None,
    m0_override: int | None = None,
) -> SurfaceInvariants:
    """A, a and the trichotomy from the systole and the scattering ladder.

    scat must carry the exact squared frequencies g1_sq, g2_sq (or None for a
    compact surface, where H = 1 and A = exp(l0) unconditionally).
    """
    if g.kind is GroupKind.ABSTRACT_COMPACT:
        l0 = g.systole_length
        if l0 is None or l0 <= 0:
            raise InvalidSignature("compact descriptor needs a positive systole length")
        m_val = m0_override if m0_override is not None else g.systole_mult
        a_val = m_val * l0 / (1.0 - math.exp(-l0))
        return SurfaceInvariants(
            systole_length=l0,
            systole_mult=m_val,
            m0_is_lower_bound=False,
            g_ratio_sq=math.inf,
            trichotomy=Trichotomy.GEODESIC_SMALLER,
            A=math.exp(l0),
            a=a_val,
        )
    if systole is None:
        systole = systole_search(g, trace_ceiling=12.0)
    ratio_exact: Fraction = scat.g_ratio_sq_exact
    cmp = compare_norm_with_rational(systole.trace_sq, ratio_exact)
    norm0 = norm_from_trace_sq(systole.trace_sq)
    l0 = math.log(norm0)
    lower_bound_flag = False
    if m0_override is not None:
        m_val = m0_override
    elif m0 is not None:
        m_val = m0
    elif g.kind is GroupKind.MODULAR:
        m_val = modular_class_count(int(round(math.sqrt(float(systole.trace_sq)))))
    else:
        m_val = max(1, conjugacy_class_floor(g, systole.trace_sq))
        lower_bound_flag = True
    geo_a = m_val * l0 / (1.0 - 1.0 / norm0)
    if cmp < 0:
        tri, a_big, a_val = Trichotomy.GEODESIC_SMALLER, norm0, geo_a
    elif cmp > 0:
        if b_series is None:
            raise InsufficientTerms("scattering-smaller case needs the b-series")
        tri = Trichotomy.SCATTERING_SMALLER
        a_big = float(ratio_exact)
        a_val = _b_coefficient(b_series, float(ratio_exact))
    else:
        if b_series is None:
            raise InsufficientTerms("equal case needs the b-series")
        tri = Trichotomy.EQUAL
        a_big = norm0
        a_val = geo_a + _b_coefficient(b_series, float(ratio_exact))
    if a_val == 0.0:
        raise ZeroACoefficient("leading coefficient a vanishes")
    return SurfaceInvariants(
        systole_length=l0,
        systole_mult=m_val,
        m0_is_lower_bound=lower_bound_flag,
        g_ratio_sq=float(ratio_exact),
        trichotomy=tri,
        A=a_big,
        a=a_val,
    )
