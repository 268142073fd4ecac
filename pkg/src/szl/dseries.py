"""Algebra of general Dirichlet series sum c_i * q_i^(-s) with real q_i > 0.

Series are finite, sorted by frequency, truncated at a cutoff q_max.  Two
frequencies are considered identical when |q - q'| <= 1e-9 * q; catalog
frequencies (rationals and quadratic irrationals) are spaced far above the
merge tolerance, so no symbolic layer is needed.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import DivergentTail, NonUnitLeading
from .numerics import DEFAULT_SETTINGS, EvalSettings

MERGE_REL_TOL = 1e-9
COEFF_DROP_TOL = 1e-300
# Validity guard for truncated evaluation: raise DivergentTail when the
# estimated dropped tail exceeds this fraction of the value.
SERIES_TAIL_REL_TOL = 1e-6


class _Accum:
    """Sorted frequency accumulator with relative-tolerance merging."""

    def __init__(self) -> None:
        self.freqs: list[float] = []
        self.coeffs: list[complex] = []

    def add(self, q: float, c: complex) -> None:
        i = bisect.bisect_left(self.freqs, q)
        for j in (i - 1, i):
            if 0 <= j < len(self.freqs) and abs(self.freqs[j] - q) <= MERGE_REL_TOL * q:
                self.coeffs[j] += c
                return
        self.freqs.insert(i, q)
        self.coeffs.insert(i, complex(c))

    def pop_smallest(self) -> tuple[float, complex]:
        return self.freqs.pop(0), self.coeffs.pop(0)

    def __len__(self) -> int:
        return len(self.freqs)


@dataclass(frozen=True)
class GeneralDirichletSeries:
    freqs: tuple[float, ...]
    coeffs: tuple[complex, ...]
    q_max: float

    def __post_init__(self) -> None:
        for i, q in enumerate(self.freqs):
            if q <= 0:
                raise ValueError("frequencies must be positive")
            if i and q <= self.freqs[i - 1]:
                raise ValueError("frequencies must be strictly increasing")
            if q > self.q_max * (1 + MERGE_REL_TOL):
                raise ValueError("frequency beyond the cutoff")

    @property
    def leading_unit(self) -> bool:
        return (
            len(self.freqs) > 0
            and abs(self.freqs[0] - 1.0) <= MERGE_REL_TOL
            and abs(self.coeffs[0] - 1.0) <= 1e-12
        )

    def terms(self):
        return zip(self.freqs, self.coeffs)

    def to_json_dict(self) -> dict:
        return {
            "q_max": self.q_max,
            "terms": [
                {"q": q, "re": c.real, "im": c.imag} for q, c in self.terms()
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "GeneralDirichletSeries":
        terms = [(t["q"], complex(t["re"], t["im"])) for t in d["terms"]]
        return make_series(terms, d["q_max"])


def make_series(terms, q_max: float) -> GeneralDirichletSeries:
    """Build a series from (frequency, coefficient) pairs.

    Merges nearby frequencies, drops zero coefficients and terms past q_max.
    """
    acc = _Accum()
    for q, c in terms:
        if q <= q_max * (1 + MERGE_REL_TOL):
            acc.add(float(q), complex(c))
    freqs, coeffs = [], []
    for q, c in zip(acc.freqs, acc.coeffs):
        if abs(c) > COEFF_DROP_TOL:
            freqs.append(q)
            coeffs.append(c)
    return GeneralDirichletSeries(tuple(freqs), tuple(coeffs), float(q_max))


def unit_series(q_max: float = math.inf) -> GeneralDirichletSeries:
    return make_series([(1.0, 1.0)], q_max)


def tail_estimate(d: GeneralDirichletSeries, sigma: float) -> float:
    """Geometric extrapolation of the dropped tail (q > q_max) at Re s = sigma.

    The decades (q_max/100, q_max/10] and (q_max/10, q_max] of |c| q^(-sigma)
    are modeled as a geometric sequence continuing past the cutoff.  A series
    whose last decade below q_max is empty terminated on its own and carries
    no tail.  The q = 1 constant never counts toward a decade.
    """
    if not d.freqs or d.freqs[-1] <= 1.0 or not math.isfinite(d.q_max):
        return 0.0
    s_last = s_prev = 0.0
    for q, c in d.terms():
        if q <= 1.0:
            continue
        w = abs(c) * q ** (-sigma)
        if q > d.q_max / 10.0:
            s_last += w
        elif q > d.q_max / 100.0:
            s_prev += w
    if s_last == 0.0:
        return 0.0
    ratio = s_last / s_prev if s_prev > 0.0 else 10.0 ** (1.0 - sigma)
    ratio = min(ratio, 0.9)
    if ratio <= 0.0:
        return 0.0
    return s_last * ratio / (1.0 - ratio)


def evaluate_with_tail(
    d: GeneralDirichletSeries,
    s: complex,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> tuple[complex, float]:
    s = complex(s)
    acc = 0.0 + 0.0j
    for q, c in zip(reversed(d.freqs), reversed(d.coeffs)):
        acc += c * (1.0 + 0.0j if q == 1.0 else complex(q) ** (-s))
    return acc, tail_estimate(d, s.real)


def evaluate(
    d: GeneralDirichletSeries,
    s: complex,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> complex:
    value, tail = evaluate_with_tail(d, s, settings)
    if tail > SERIES_TAIL_REL_TOL * (1.0 + abs(value)):
        raise DivergentTail(
            f"tail estimate {tail:.3g} at Re s = {s.real} exceeds tolerance"
        )
    return value


def add(
    d1: GeneralDirichletSeries,
    d2: GeneralDirichletSeries,
    q_max: float | None = None,
) -> GeneralDirichletSeries:
    q = min(d1.q_max, d2.q_max) if q_max is None else q_max
    return make_series(list(d1.terms()) + list(d2.terms()), q)


def scale(d: GeneralDirichletSeries, factor: complex) -> GeneralDirichletSeries:
    return make_series([(q, factor * c) for q, c in d.terms()], d.q_max)


def multiply(
    d1: GeneralDirichletSeries,
    d2: GeneralDirichletSeries,
    q_max: float,
) -> GeneralDirichletSeries:
    """Dirichlet convolution on multiplicative frequencies, truncated at q_max."""
    acc = _Accum()
    for q1, c1 in d1.terms():
        if q1 > q_max * (1 + MERGE_REL_TOL):
            break
        limit = q_max / q1 * (1 + MERGE_REL_TOL)
        for q2, c2 in d2.terms():
            if q2 > limit:
                break
            acc.add(q1 * q2, c1 * c2)
    return make_series(zip(acc.freqs, acc.coeffs), q_max)


def differentiate(d: GeneralDirichletSeries) -> GeneralDirichletSeries:
    """Termwise d/ds: c q^{-s} -> -c log(q) q^{-s}; the q = 1 term drops out."""
    return make_series(
        [(q, -c * math.log(q)) for q, c in d.terms() if q != 1.0], d.q_max
    )


def log_derivative(
    d: GeneralDirichletSeries,
    q_max: float | None = None,
) -> GeneralDirichletSeries:
    """Series B with D'/D = sum b(q) q^{-s}, for a leading-unit series D.

    Solved term by term from D' = B * D in ascending frequency order; the
    output frequencies are finite products of the input frequencies > 1.
    """
    if not d.leading_unit:
        raise NonUnitLeading("log_derivative needs a series with leading term (1, 1)")
    q_cut = d.q_max if q_max is None else q_max
    rest = [(q, c) for q, c in d.terms() if q != d.freqs[0]]
    work = _Accum()
    for q, c in rest:
        if q <= q_cut * (1 + MERGE_REL_TOL):
            work.add(q, -c * math.log(q))
    out: list[tuple[float, complex]] = []
    while len(work):
        q, b = work.pop_smallest()
        if abs(b) <= COEFF_DROP_TOL:
            continue
        out.append((q, b))
        for p, a in rest:
            qp = q * p
            if qp > q_cut * (1 + MERGE_REL_TOL):
                break
            work.add(qp, -a * b)
    return make_series(out, q_cut)


def integrate_log(d: GeneralDirichletSeries) -> GeneralDirichletSeries:
    """Antiderivative (in s) of a series with no q = 1 term, vanishing at +inf."""
    return make_series(
        [(q, -c / math.log(q)) for q, c in d.terms() if q != 1.0], d.q_max
    )


def exp_series(d: GeneralDirichletSeries, q_max: float) -> GeneralDirichletSeries:
    """exp of a series with all frequencies > 1 (nilpotent below any cutoff)."""
    if d.freqs and d.freqs[0] <= 1.0 + MERGE_REL_TOL:
        raise ValueError("exp_series needs all frequencies > 1")
    result = unit_series(q_max)
    term = unit_series(q_max)
    k = 1
    while True:
        term = multiply(term, d, q_max)
        if not term.freqs:
            break
        result = add(result, scale(term, 1.0 / math.factorial(k)), q_max)
        k += 1
        if k > 64:
            break
    return result


def reciprocal(d: GeneralDirichletSeries, q_max: float) -> GeneralDirichletSeries:
    """1/D for leading-unit D, via the log/exp round trip."""
    if not d.leading_unit:
        raise NonUnitLeading("reciprocal needs a series with leading term (1, 1)")
    log_d = integrate_log(log_derivative(d, q_max))
    return exp_series(scale(log_d, -1.0), q_max)


def dk_series(
    d1: GeneralDirichletSeries,
    k: int,
    q_max: float,
) -> GeneralDirichletSeries:
    """k-th derivative factor via D_{j+1} = D_j * D_1 + D_j'.

    d1 must be the logarithmic-derivative series of the target function; the
    leading term of the output is then a_k * A^{-s} with A the leading
    frequency of d1 and a_k = (-1)^(k-1) a_1 log^(k-1) A.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    current = make_series(d1.terms(), q_max)
    base = current
    for _ in range(k - 1):
        current = add(multiply(current, base, q_max), differentiate(current), q_max)
    return current
