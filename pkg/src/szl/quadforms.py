"""Indefinite binary quadratic forms: reduction cycles and class counts.

PSL(2,Z)-conjugacy classes of matrices with |trace| = t correspond to proper
equivalence classes of integral forms of discriminant t^2 - 4, imprimitive
forms included (an element with entries (a b; c d) maps to the form
(c, d - a, -b)).  Classes are counted as cycles of reduced forms under the
Gauss rho step; two forms are equivalent iff their cycles coincide.
"""

from __future__ import annotations

import math
from functools import lru_cache


@lru_cache(maxsize=8)
def _divisor_table(n: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(n + 1)]
    for d in range(1, n + 1):
        for m in range(d, n + 1, d):
            divs[m].append(d)
    return divs


def _lt_sqrt(x: int, disc: int) -> bool:
    """x < sqrt(disc), exact for integer x and nonsquare disc."""
    return x < 0 or x * x < disc


def _gt_sqrt(x: int, disc: int) -> bool:
    return x > 0 and x * x > disc


def is_reduced(a: int, b: int, c: int, disc: int) -> bool:
    """Reduced indefinite form: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
    if b <= 0 or not _lt_sqrt(b, disc):
        return False
    two_a = 2 * abs(a)
    return _gt_sqrt(two_a + b, disc) and _lt_sqrt(two_a - b, disc)


def rho_step(form: tuple[int, int, int], disc: int, sq: int) -> tuple[int, int, int]:
    """One Gauss reduction step (a, b, c) -> (c, b', c') staying on the cycle."""
    a, b, c = form
    ac = abs(c)
    if ac > sq:
        # normalize b' into (-|c|, |c|]
        delta = (b + ac) // (2 * ac)
    else:
        # largest b' = -b + 2|c| delta below sqrt(D)
        delta = (b + sq) // (2 * ac)
    bp = -b + 2 * ac * delta
    cp = (bp * bp - disc) // (4 * c)
    return (c, bp, cp)


def reduced_forms(disc: int, divisors: list[list[int]] | None = None):
    """All reduced integral forms (any content) of positive nonsquare disc."""
    sq = math.isqrt(disc)
    out = []
    b = 2 - (disc & 1)
    while b <= sq:
        m4 = disc - b * b
        if m4 % 4 == 0:
            m = m4 // 4
            divs = divisors[m] if divisors is not None else _divisors_of(m)
            for a in divs:
                two_a = 2 * a
                if _gt_sqrt(two_a + b, disc) and _lt_sqrt(two_a - b, disc):
                    c = -(m // a)
                    out.append((a, b, c))
                    out.append((-a, b, -c))
        b += 2
    return out


def _divisors_of(m: int) -> list[int]:
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d * d != m:
                out.append(m // d)
        d += 1
    return out


def cycle_count(disc: int, divisors: list[list[int]] | None = None) -> int:
    """Number of rho-cycles among reduced forms of the given discriminant."""
    forms = reduced_forms(disc, divisors)
    sq = math.isqrt(disc)
    seen: set[tuple[int, int, int]] = set()
    cycles = 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = rho_step(g, disc, sq)
    return cycles


def modular_class_count(t: int, divisors: list[list[int]] | None = None) -> int:
    """PSL(2,Z)-conjugacy classes with |trace| = t, via form cycles of disc t^2-4."""
    t = abs(int(t))
    if t < 3:
        raise ValueError("hyperbolic classes need |t| >= 3")
    return cycle_count(t * t - 4, divisors)


def class_counts_up_to(t_max: int) -> dict[int, int]:
    """modular_class_count for every trace 3..t_max with a shared divisor sieve."""
    m_max = (t_max * t_max - 4) // 4 + 1
    divisors = _divisor_table(m_max)
    return {t: modular_class_count(t, divisors) for t in range(3, t_max + 1)}
