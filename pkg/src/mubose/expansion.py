"""Taylor-in-mu coefficients of the moment series and divergence diagnostics.

The generic building block is the power series in mu of the shifted sum

    sum_{n>=0} e^{-alpha n} / (1 + mu (n - l)) = sum_{s>=0} c_s(l) mu^s,

whose coefficients c_s(l) have an exact closed form over Stirling numbers
of the second kind.  Combining them with the partial-fraction weights
A^(r)_l yields truncated expansions of the (unnormalized) moment sums.
Those expansions diverge for every mu > 0: the Stirling sums grow
factorially and eventually beat mu^s, which is what the diagnostic in
this module makes visible term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._backend import kernels
from .core import DeformationMu
from .errors import ConvergenceError, DomainError
from .partfrac import a_coeffs
from .special import StirlingTable, stirling2

#: absolute tail budget of the brute-force coefficient oracle
ORACLE_TAIL_TOL = 1e-12

DEFAULT_ORACLE_TERMS = 20000


@lru_cache(maxsize=8)
def _table(max_n: int) -> StirlingTable:
    return StirlingTable(max_n)


def _stirling(n: int, k: int) -> int:
    size = 64
    while size < n:
        size *= 2
    return stirling2(n, k, _table(size))


@dataclass(frozen=True)
class CCoefficient:
    """One Taylor coefficient c_s(l) with its exact integer representation.

    ``recip_coeffs[j-1]`` is the signed integer multiplying
    (e^alpha - 1)^(-j) for j = 1..s+1; ``exp_weights[j-1]`` is the
    integer j^s multiplying e^(alpha (j - l)) for j = 1..l.  For s = 0 a
    bare e^(-alpha l) term completes the value.
    """

    s: int
    l: int
    alpha: float
    value: float
    recip_coeffs: tuple[int, ...]
    exp_weights: tuple[int, ...]

    def reconstruct(self) -> float:
        """Re-evaluate the value from the stored integers (Horner order)."""
        x = math.expm1(self.alpha)
        acc = 0.0
        for coeff in reversed(self.recip_coeffs):
            acc = (acc + coeff) / x
        acc *= math.exp(-self.alpha * self.l)
        for j, weight in enumerate(self.exp_weights, start=1):
            acc += weight * math.exp(self.alpha * (j - self.l))
        if self.s == 0:
            acc += math.exp(-self.alpha * self.l)
        return acc


def _check_sl(s: int, l: int) -> None:
    if not isinstance(s, int) or s < 0:
        raise DomainError(f"power index s must be an integer >= 0, got {s}")
    if not isinstance(l, int) or l < 0:
        raise DomainError(f"shift l must be an integer >= 0, got {l}")


def _check_alpha(alpha: float) -> None:
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise DomainError(f"alpha must be positive and finite, got {alpha}")


def c_coeff(s: int, l: int, alpha: float) -> CCoefficient:
    """Closed-form Taylor coefficient c_s(l).

    c_s(l) = delta_{s0} e^(-alpha l) + e^(-alpha l) sum_{j=1}^{l} j^s e^(alpha j)
             + e^(-alpha l) (-1)^s sum_{j=0}^{s} j! S(s+1, j+1) (e^alpha - 1)^(-(j+1)),

    with S the Stirling numbers of the second kind.  The integer
    coefficient sets are exposed on the result for exact-arithmetic
    checks.
    """
    _check_sl(s, l)
    _check_alpha(alpha)
    sign = -1 if s % 2 else 1
    recip = tuple(
        sign * math.factorial(j - 1) * _stirling(s + 1, j) for j in range(1, s + 2)
    )
    weights = tuple(j**s for j in range(1, l + 1))

    x = math.expm1(alpha)
    recip_part = 0.0
    xp = 1.0
    for coeff in recip:
        xp /= x
        recip_part += coeff * xp
    value = recip_part * math.exp(-alpha * l)
    for j, weight in enumerate(weights, start=1):
        value += weight * math.exp(alpha * (j - l))
    if s == 0:
        value += math.exp(-alpha * l)
    return CCoefficient(s, l, alpha, value, recip, weights)


def series_coeff_oracle(s: int, l: int, alpha: float,
                        n_max: int = DEFAULT_ORACLE_TERMS) -> float:
    """Brute-force c_s(l) as the signed power sum (-1)^s sum_n (n-l)^s e^(-alpha n).

    Raises
    ------
    ConvergenceError
        If the geometric tail bound at ``n_max`` is not below 1e-12.
    """
    _check_sl(s, l)
    _check_alpha(alpha)
    if not isinstance(n_max, int) or n_max <= l:
        raise DomainError(f"n_max must be an integer > l, got {n_max}")
    acc, tail = kernels.power_sum(s, l, alpha, n_max)
    if not (tail < ORACLE_TAIL_TOL):
        raise ConvergenceError(
            f"power-sum tail bound {tail:.3g} at n_max={n_max} exceeds "
            f"{ORACLE_TAIL_TOL}; increase n_max"
        )
    sign = -1.0 if s % 2 else 1.0
    return sign * acc


def _expansion_mu(d: DeformationMu | float) -> float:
    mu = d.mu if isinstance(d, DeformationMu) else float(d)
    if not (mu > 0.0) or not math.isfinite(mu):
        raise DomainError(f"the mu-expansion requires mu > 0, got {mu}")
    return mu


def taylor_moment(d: DeformationMu | float, alpha: float, r: int,
                  order: int) -> float:
    """Order-``order`` truncation of the unnormalized moment sum.

    Evaluates mu^(-r) (1 - e^(-alpha))^(-1)
    + mu^(-r) sum_{s=0}^{order} sum_{l<r} A^(r)_l(mu) c_s(l) mu^s,
    the Taylor expansion of sum_n e^(-alpha n) prod_{l<r} phi(n-l).
    The (1 - e^(-alpha)) thermal normalization is deliberately not
    applied here; the exact moments live in :mod:`mubose.core`.
    """
    mu = _expansion_mu(d)
    _check_alpha(alpha)
    if not isinstance(r, int) or r < 1:
        raise DomainError(f"order r must be an integer >= 1, got {r}")
    if not isinstance(order, int) or order < 0:
        raise DomainError(f"truncation order must be an integer >= 0, got {order}")
    weights = a_coeffs(r, mu).values
    total = mu ** (-r) / (-math.expm1(-alpha))
    for s in range(order + 1):
        inner = 0.0
        for l in range(r):
            inner += weights[l] * c_coeff(s, l, alpha).value
        total += mu ** (s - r) * inner
    return total


@dataclass(frozen=True)
class DivergenceEntry:
    """One row of the term-growth diagnostic at expansion order s."""

    s: int
    partial_sum: float
    term_magnitude: float


def divergence_diagnostic(d: DeformationMu | float, alpha: float, r: int,
                          s_max: int) -> list[DivergenceEntry]:
    """Partial sums and term magnitudes of sum_s [sum_l A^(r)_l c_s(l)] mu^s.

    The coefficient sums grow factorially in s, so for any mu > 0 the
    term magnitudes eventually increase without bound; the returned rows
    exhibit that turnaround.  Float overflow inside a term is reported
    as a terminal row with infinite magnitude rather than an exception.
    """
    mu = _expansion_mu(d)
    _check_alpha(alpha)
    if not isinstance(r, int) or r < 1:
        raise DomainError(f"order r must be an integer >= 1, got {r}")
    if not isinstance(s_max, int) or s_max < 0:
        raise DomainError(f"s_max must be an integer >= 0, got {s_max}")
    weights = a_coeffs(r, mu).values
    entries: list[DivergenceEntry] = []
    partial = 0.0
    for s in range(s_max + 1):
        try:
            inner = 0.0
            for l in range(r):
                inner += weights[l] * c_coeff(s, l, alpha).value
            term = mu**s * inner
        except OverflowError:
            entries.append(DivergenceEntry(s, partial, math.inf))
            break
        if not math.isfinite(term):
            entries.append(DivergenceEntry(s, partial, math.inf))
            break
        partial += term
        entries.append(DivergenceEntry(s, partial, abs(term)))
    return entries


def turning_point(entries: list[DivergenceEntry]) -> int:
    """Order s at which the term magnitudes are smallest (divergence onset)."""
    if not entries:
        raise DomainError("empty diagnostic sequence")
    best = min(entries, key=lambda e: e.term_magnitude)
    return best.s
