"""Special-function building blocks: Lerch sums and Stirling machinery.

Only the slice actually needed downstream is implemented: the Lerch
transcendent at second argument 1, Stirling numbers of the second kind,
and the derived integer coefficients that drive the expansion module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from ._backend import kernels
from .errors import ConvergenceError, DomainError

DEFAULT_MAX_TERMS = 10**8


@dataclass(frozen=True)
class LerchQuery:
    """Evaluation request for Phi(z, 1, a).

    Parameters
    ----------
    z : float
        Series argument, 0 <= z < 1.
    a : float
        Shift parameter, a > 0.
    tol : float
        Absolute truncation tolerance for the summed value.
    """

    z: float
    a: float
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if not (0.0 <= self.z < 1.0) or not math.isfinite(self.z):
            raise DomainError(f"lerch argument z must satisfy 0 <= z < 1, got {self.z}")
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise DomainError(f"lerch shift a must be positive, got {self.a}")
        if not (self.tol > 0.0):
            raise DomainError(f"tolerance must be positive, got {self.tol}")


def lerch_phi_s1(query: LerchQuery, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Lerch transcendent Phi(z, 1, a) = sum_{n>=0} z^n / (a + n).

    Summed directly; the tail after N terms is bounded by
    z^(N+1) / ((a + N + 1)(1 - z)), and summation stops once that bound
    drops below ``query.tol``.

    Raises
    ------
    ConvergenceError
        If the bound cannot reach the tolerance within ``max_terms``.
    """
    value, _err, used = kernels.lerch_sum(query.z, query.a, query.tol, max_terms)
    if used >= max_terms:
        raise ConvergenceError(
            f"lerch sum did not reach tol={query.tol} within {max_terms} terms "
            f"(z={query.z}, a={query.a})"
        )
    return value


def _build_rows(max_n: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            above = prev[k] if k < n else 0
            row[k] = k * above + prev[k - 1]
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class StirlingTable:
    """Triangular table of Stirling numbers of the second kind.

    ``rows[n][k]`` holds {n, k} for 0 <= k <= n <= max_n, built once from
    the recurrence {n, k} = k {n-1, k} + {n-1, k-1}.  Instances are
    immutable and safe to share between threads.
    """

    max_n: int = 64
    rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.max_n, int) or self.max_n < 1:
            raise DomainError(f"table bound must be a positive integer, got {self.max_n}")
        object.__setattr__(self, "rows", _build_rows(self.max_n))


_DEFAULT_TABLE = StirlingTable()


def stirling2(n: int, k: int, table: StirlingTable | None = None) -> int:
    """Stirling number of the second kind {n, k}, exact integer.

    Conventions: {0, 0} = 1, {n, 0} = 0 for n > 0, and {n, k} = 0 for
    k > n.  Arguments beyond the table bound raise a domain error; build
    a larger ``StirlingTable`` for those.
    """
    if table is None:
        table = _DEFAULT_TABLE
    if n < 0 or k < 0:
        raise DomainError(f"stirling2 requires n, k >= 0, got n={n}, k={k}")
    if n > table.max_n:
        raise DomainError(
            f"n={n} exceeds the table bound {table.max_n}; "
            "construct a StirlingTable with a larger max_n"
        )
    if k > n:
        return 0
    return table.rows[n][k]


@lru_cache(maxsize=None)
def _g_row(s: int) -> tuple[int, ...]:
    if s == 0:
        return (1,)
    prev = _g_row(s - 1)
    row = []
    for j in range(s + 1):
        left = prev[j] if j < s else 0
        diag = prev[j - 1] if j >= 1 else 0
        row.append((j + 1) * (left + diag))
    return tuple(row)


def g_coeff(s: int, j: int) -> int:
    """Weight g_s^j from g_{s+1}^j = (j+1)(g_s^j + g_s^{j-1}), g_0^0 = 1.

    Satisfies g_s^j = (j+1)! {s+1, j+1}; the table recurrence here is
    kept independent of :func:`stirling2` so the identity stays a real
    cross-check.
    """
    if s < 0 or j < 0 or j > s:
        raise DomainError(f"g_coeff requires 0 <= j <= s, got s={s}, j={j}")
    return _g_row(s)[j]
