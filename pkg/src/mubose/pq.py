"""p,q-Bose gas comparison formulas: moments, intercepts, asymptotics.

The two-parameter deformation replaces the mu-oscillator structure
function by the p,q-bracket [n] = (p^n - q^n)/(p - q).  Its moments have
a fully factored closed form, so the model serves as a structural
comparison point: both gases deform the Bose intercepts, but the
large-momentum limits differ by the factor (1+mu)^r, which this module
exposes as a computable quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .core import CorrelationResult, DeformationMu, intercept_asymptotic, mu_factorial
from .errors import ConvergenceError, DomainError

DEFAULT_TOL = 1e-12
MAX_TERMS = 10**8

#: tolerance of the internal (1+mu)^r identity check
_GAP_TOL = 1e-12


@dataclass(frozen=True)
class PQParams:
    """Deformation pair 0 < q <= p <= 1, canonicalized so p >= q.

    All formulas are symmetric under p <-> q; the ordering makes equal
    inputs produce bit-equal outputs regardless of argument order.
    """

    p: float
    q: float

    def __post_init__(self) -> None:
        for name, val in (("p", self.p), ("q", self.q)):
            if not (0.0 < val <= 1.0) or not math.isfinite(val):
                raise DomainError(f"{name} must lie in (0, 1], got {val}")
        if self.q > self.p:
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)


def _check_alpha(alpha: float) -> None:
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise DomainError(f"alpha must be positive and finite, got {alpha}")


def _check_order(r: int, minimum: int = 1) -> None:
    if not isinstance(r, int) or r < minimum:
        raise DomainError(f"order must be an integer >= {minimum}, got {r}")
    if r > 64:
        raise DomainError(f"order {r} exceeds the supported bound 64")


def pq_bracket(n: int, pq: PQParams) -> float:
    """Basic p,q-number [n] = (p^n - q^n)/(p - q), with [n] = n p^(n-1) at p = q.

    Evaluated as the equivalent homogeneous sum sum_{j=0}^{n-1} p^j q^(n-1-j),
    which has no p - q cancellation and covers both cases at once.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"bracket index must be an integer >= 0, got {n}")
    acc = 0.0
    pj = 1.0
    qj = pq.q ** (n - 1) if n > 0 else 1.0
    inv_q = 1.0 / pq.q
    for _ in range(n):
        acc += pj * qj
        pj *= pq.p
        qj *= inv_q
    return acc


def pq_factorial(r: int, pq: PQParams) -> float:
    """Deformed factorial [r]! = [r][r-1]...[1]."""
    _check_order(r, minimum=0)
    out = 1.0
    for n in range(1, r + 1):
        out *= pq_bracket(n, pq)
    return out


def _denominator_factors(pq: PQParams, z: float, r: int) -> list[float]:
    factors = []
    for j in range(r + 1):
        w = pq.p**j * pq.q ** (r - j)
        factors.append(1.0 - w * z)
    return factors


def pq_moment(pq: PQParams, alpha: float, r: int) -> float:
    """Closed-form moment [r]!(e^alpha - 1) / prod_{j=0}^{r} (e^alpha - p^j q^(r-j)).

    Computed in the equivalent z = e^(-alpha) form
    [r]! (1-z) z^r / prod_j (1 - p^j q^(r-j) z), which underflows
    gracefully at large alpha instead of overflowing e^alpha.
    """
    _check_alpha(alpha)
    _check_order(r)
    z = math.exp(-alpha)
    value = pq_factorial(r, pq) * (1.0 - z)
    for n in range(r):
        value *= z
    for f in _denominator_factors(pq, z, r):
        if f <= 0.0:
            raise DomainError(f"denominator factor {f} is not positive")
        value /= f
    return value


def pq_oracle_moment(pq: PQParams, alpha: float, r: int,
                     tol: float = DEFAULT_TOL) -> CorrelationResult:
    """Brute-force moment (1-z) sum_n z^n prod_{l<r} [n-l], tail bound n^r z^n."""
    _check_alpha(alpha)
    _check_order(r)
    if not (tol > 0.0) or not math.isfinite(tol):
        raise DomainError(f"tolerance must be positive, got {tol}")
    value, err, used = kernels.pq_oracle_sum(pq.p, pq.q, alpha, r, tol, 0.0, MAX_TERMS)
    if used >= MAX_TERMS:
        raise ConvergenceError(
            f"p,q oracle did not converge (p={pq.p}, q={pq.q}, alpha={alpha}, r={r})"
        )
    return CorrelationResult(value, err, "oracle")


def pq_intercept(pq: PQParams, alpha: float, r: int) -> float:
    """Intercept lambda^(r) = moment / mean^r - 1 of the p,q-gas.

    Uses the cancelled closed form
    [r]! (1-pz)^r (1-qz)^r / ((1-z)^(r-1) prod_{j=0}^{r} (1 - p^j q^(r-j) z)) - 1,
    algebraically identical to the moment ratio but free of the z^r
    underflow at large alpha.
    """
    _check_alpha(alpha)
    _check_order(r, minimum=2)
    z = math.exp(-alpha)
    num = pq_factorial(r, pq)
    pz = 1.0 - pq.p * z
    qz = 1.0 - pq.q * z
    for _ in range(r):
        num *= pz
        num *= qz
    den = 1.0
    gap = 1.0 - z
    for _ in range(r - 1):
        den *= gap
    for f in _denominator_factors(pq, z, r):
        if f <= 0.0:
            raise DomainError(f"denominator factor {f} is not positive")
        den *= f
    return num / den - 1.0


def pq_intercept_asymptotic(pq: PQParams, r: int) -> float:
    """Large-alpha limit [r]_{p,q}! - 1 of the p,q intercept."""
    _check_order(r, minimum=2)
    return pq_factorial(r, pq) - 1.0


def mu_vs_pq_asymptotic_gap(d: DeformationMu | float, r: int) -> float:
    """Structural factor (lambda_mu_asympt + 1) / [r]_mu! separating the two gases.

    The mu-gas asymptote carries an extra (1+mu)^r relative to the
    p,q-gas pattern [r]! - 1; the returned ratio is checked against
    (1+mu)^r before being handed back.
    """
    mu = d.mu if isinstance(d, DeformationMu) else float(d)
    if not (mu >= 0.0) or not math.isfinite(mu):
        raise DomainError(f"deformation parameter must be >= 0, got {mu}")
    _check_order(r, minimum=2)
    ratio = (intercept_asymptotic(mu, r) + 1.0) / mu_factorial(r, mu)
    expected = (1.0 + mu) ** r
    if abs(ratio - expected) > _GAP_TOL * expected:
        raise RuntimeError(
            f"asymptotic gap {ratio!r} deviates from (1+mu)^r = {expected!r}"
        )
    return ratio
