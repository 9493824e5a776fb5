"""Command-line front end: grid sweeps, figure data, coefficient tables.

Every subcommand renders deterministic CSV or JSON: fixed column order,
12 significant digits, grid rows ordered by (T, mu, r, k) with the
k -> infinity asymptote rows (k field ``inf``) closing each curve.
Identical invocations therefore produce byte-identical output, which the
test suite relies on.

Exit codes: 0 success, 1 domain error, 2 convergence failure, 3 some
grid records failed (failed rows keep their slot with method ``failed``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import core, expansion, pq
from .errors import ConvergenceError, DomainError
from .partfrac import a_coeffs

DEFAULT_MASS = 139.57
DEFAULT_TOL = 1e-12

GRID_HEADER = ("quantity", "k_mev", "T_mev", "mu", "r", "value", "error_bound", "method")
PQ_HEADER = ("quantity", "k_mev", "T_mev", "p", "q", "r", "value", "error_bound", "method")
COEFF_HEADER = ("l", "a_l")
TAYLOR_HEADER = ("s", "partial_sum", "term_magnitude")

FIGURE_MUS = {
    "fig1": (0.0, 0.1, 0.2),
    "fig2": (0.1, 0.2),
    "fig3": (0.1, 0.2),
    "fig4": (0.1, 0.2),
}
FIGURE_TEMPS = (120.0, 180.0)


@dataclass(frozen=True)
class GridSpec:
    """Momentum grid plus the physical parameters shared by all rows."""

    k_min: float = 0.0
    k_max: float = 1000.0
    k_steps: int = 101
    temperatures: tuple[float, ...] = FIGURE_TEMPS
    mus: tuple[float, ...] = (0.1, 0.2)
    mass: float = DEFAULT_MASS
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not (0.0 <= self.k_min < self.k_max):
            raise DomainError(
                f"need 0 <= k_min < k_max, got [{self.k_min}, {self.k_max}]"
            )
        if not isinstance(self.k_steps, int) or self.k_steps < 2:
            raise DomainError(f"k_steps must be an integer >= 2, got {self.k_steps}")
        if not self.temperatures or any(t <= 0.0 for t in self.temperatures):
            raise DomainError(f"temperatures must be positive, got {self.temperatures}")
        if any(m < 0.0 for m in self.mus):
            raise DomainError(f"deformation parameters must be >= 0, got {self.mus}")
        if self.mass <= 0.0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.tol <= 0.0:
            raise DomainError(f"tol must be positive, got {self.tol}")

    def momenta(self) -> list[float]:
        step = (self.k_max - self.k_min) / (self.k_steps - 1)
        return [self.k_min + i * step for i in range(self.k_steps)]


@dataclass(frozen=True)
class OutputRecord:
    """One rendered grid point."""

    quantity: str
    k_mev: float
    T_mev: float
    mu: float
    r: int
    value: float
    error_bound: float
    method: str


def _alpha(T: float, k: float, mass: float) -> float:
    return core.ThermoPoint(T, k, mass).alpha


def _flag(method: str, error_bound: float, tol: float) -> str:
    if method in (core.CLOSED_FORM, core.ORACLE) and error_bound > tol:
        return method + "+overtol"
    return method


def _failed(quantity: str, k: float, T: float, mu: float, r: int) -> OutputRecord:
    return OutputRecord(quantity, k, T, mu, r, math.nan, math.nan, "failed")


def _intercept_quantity(r: int) -> str:
    if r == 2:
        return "lambda2"
    if r == 3:
        return "lambda3"
    return "lambda_r"


def _require_admissible(mu: float, r: int, allow_oracle: bool) -> None:
    if r >= 2 and mu > 0.0 and not core.closed_form_admissible(mu, r) and not allow_oracle:
        raise DomainError(
            f"mu={mu:g} is outside the closed-form domain mu < {1.0 / (r - 1):g} "
            f"for r={r}; pass --oracle to evaluate through the series oracle"
        )


def figure_records(preset: str, grid: GridSpec,
                   allow_oracle: bool = False) -> tuple[list[OutputRecord], int]:
    """Rows behind one figure preset; returns (records, number_of_failures)."""
    if preset not in FIGURE_MUS:
        raise DomainError(f"unknown figure preset {preset!r}")
    records: list[OutputRecord] = []
    failed = 0
    method = "oracle" if allow_oracle else "auto"
    for T in grid.temperatures:
        for mu in grid.mus:
            for k in grid.momenta():
                alpha = _alpha(T, k, grid.mass)
                try:
                    if preset == "fig1":
                        res = core.mean_occupation(mu, alpha, grid.tol)
                        rec = OutputRecord(
                            "distribution", k, T, mu, 1, res.value,
                            res.error_bound, _flag(res.method, res.error_bound, grid.tol),
                        )
                    elif preset in ("fig2", "fig3"):
                        r = 2 if preset == "fig2" else 3
                        res = core.intercept(mu, alpha, r, grid.tol, method)
                        rec = OutputRecord(
                            _intercept_quantity(r), k, T, mu, r, res.value,
                            res.error_bound, _flag(res.method, res.error_bound, grid.tol),
                        )
                    else:
                        res = core.r3_function(mu, alpha, grid.tol, method)
                        rec = OutputRecord(
                            "r3", k, T, mu, 3, res.value,
                            res.error_bound, _flag(res.method, res.error_bound, grid.tol),
                        )
                except (DomainError, ConvergenceError) as exc:
                    r = {"fig1": 1, "fig2": 2, "fig3": 3, "fig4": 3}[preset]
                    q = {"fig1": "distribution", "fig2": "lambda2",
                         "fig3": "lambda3", "fig4": "r3"}[preset]
                    print(f"record (T={T:g}, mu={mu:g}, k={k:g}) failed: {exc}",
                          file=sys.stderr)
                    rec = _failed(q, k, T, mu, r)
                    failed += 1
                records.append(rec)
            if preset == "fig1":
                continue
            if preset == "fig2":
                value = core.intercept_asymptotic(mu, 2)
                records.append(OutputRecord("asymptote", math.inf, T, mu, 2,
                                            value, 0.0, core.ASYMPTOTIC))
            elif preset == "fig3":
                value = core.intercept_asymptotic(mu, 3)
                records.append(OutputRecord("asymptote", math.inf, T, mu, 3,
                                            value, 0.0, core.ASYMPTOTIC))
            else:
                value = core.r3_asymptotic(mu)
                records.append(OutputRecord("asymptote", math.inf, T, mu, 3,
                                            value, 0.0, core.ASYMPTOTIC))
    return records, failed


def intercept_records(mu: float, T: float, k: float, mass: float, r: int,
                      tol: float, with_oracle: bool = False,
                      force_oracle: bool = False) -> list[OutputRecord]:
    """Single-point intercept, optionally with the oracle cross-check rows."""
    _require_admissible(mu, r, force_oracle)
    alpha = _alpha(T, k, mass)
    quantity = _intercept_quantity(r)
    method = "oracle" if force_oracle else "auto"
    res = core.intercept(mu, alpha, r, tol, method)
    records = [OutputRecord(quantity, k, T, mu, r, res.value, res.error_bound,
                            _flag(res.method, res.error_bound, tol))]
    if with_oracle:
        other = core.intercept(mu, alpha, r, tol, "oracle")
        records.append(OutputRecord(quantity, k, T, mu, r, other.value,
                                    other.error_bound,
                                    _flag(other.method, other.error_bound, tol)))
        records.append(OutputRecord(quantity, k, T, mu, r,
                                    res.value - other.value,
                                    res.error_bound + other.error_bound,
                                    "difference"))
    return records


def distribution_records(mu: float, T: float, k: float, mass: float,
                         tol: float, with_oracle: bool = False) -> list[OutputRecord]:
    """Mean occupation at one point, optionally with the oracle rows."""
    alpha = _alpha(T, k, mass)
    res = core.mean_occupation(mu, alpha, tol)
    records = [OutputRecord("distribution", k, T, mu, 1, res.value,
                            res.error_bound, _flag(res.method, res.error_bound, tol))]
    if with_oracle:
        other = core.oracle_moment(mu, alpha, 1, tol)
        records.append(OutputRecord("distribution", k, T, mu, 1, other.value,
                                    other.error_bound,
                                    _flag(other.method, other.error_bound, tol)))
        records.append(OutputRecord("distribution", k, T, mu, 1,
                                    res.value - other.value,
                                    res.error_bound + other.error_bound,
                                    "difference"))
    return records


def r3_records(mu: float, T: float, k: float, mass: float, tol: float,
               force_oracle: bool = False) -> list[OutputRecord]:
    """The r3 combination at one point plus its asymptote row."""
    _require_admissible(mu, 3, force_oracle)
    alpha = _alpha(T, k, mass)
    method = "oracle" if force_oracle else "auto"
    res = core.r3_function(mu, alpha, tol, method)
    return [
        OutputRecord("r3", k, T, mu, 3, res.value, res.error_bound,
                     _flag(res.method, res.error_bound, tol)),
        OutputRecord("asymptote", math.inf, T, mu, 3, core.r3_asymptotic(mu),
                     0.0, core.ASYMPTOTIC),
    ]


def pq_records(p: float, q: float, T: float, k: float, mass: float,
               r: int) -> list[tuple]:
    """p,q intercept at one point plus its asymptote, as PQ_HEADER rows."""
    params = pq.PQParams(p, q)
    alpha = _alpha(T, k, mass)
    value = pq.pq_intercept(params, alpha, r)
    bound = 16.0 * core.sys_eps() * (abs(value) + 1.0)
    asym = pq.pq_intercept_asymptotic(params, r)
    return [
        ("lambda_pq", k, T, params.p, params.q, r, value, bound, core.CLOSED_FORM),
        ("asymptote", math.inf, T, params.p, params.q, r, asym, 0.0, core.ASYMPTOTIC),
    ]


def coeff_rows(r: int, mu: float) -> list[tuple]:
    """Partial-fraction coefficient table rows (l, A^(r)_l)."""
    return [(l, v) for l, v in enumerate(a_coeffs(r, mu).values)]


def taylor_rows(mu: float, T: float, k: float, mass: float, r: int,
                s_max: int) -> list[tuple]:
    """Divergence-diagnostic table rows (s, partial_sum, term_magnitude)."""
    alpha = _alpha(T, k, mass)
    entries = expansion.divergence_diagnostic(mu, alpha, r, s_max)
    return [(e.s, e.partial_sum, e.term_magnitude) for e in entries]


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.12g" % x


def _json_cell(x):
    if isinstance(x, (str, int)):
        return x
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(_fmt(x))


def render(rows: list, header: tuple[str, ...], fmt: str) -> str:
    """Rows -> CSV text or a JSON array of flat objects (both newline-terminated)."""
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(cell) for cell in row))
        return "\n".join(lines) + "\n"
    objs = [{name: _json_cell(cell) for name, cell in zip(header, row)} for row in rows]
    return json.dumps(objs, indent=2) + "\n"


def _record_rows(records: list[OutputRecord]) -> list[tuple]:
    return [
        (rec.quantity, rec.k_mev, rec.T_mev, rec.mu, rec.r, rec.value,
         rec.error_bound, rec.method)
        for rec in records
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mubose",
        description="mu-Bose gas correlation intercepts, moments, and comparisons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, point: bool = True) -> None:
        p.add_argument("--mass", type=float, default=DEFAULT_MASS,
                       help="particle mass in MeV (default pion)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="target evaluation tolerance")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="write here instead of stdout")
        if point:
            p.add_argument("--mu", type=float, default=0.1,
                           help="deformation parameter")
            p.add_argument("--temperature", type=float, default=120.0,
                           help="temperature in MeV")
            p.add_argument("-k", "--momentum", type=float, default=0.0,
                           help="momentum in MeV")

    p_fig = sub.add_parser("figure", help="grid data behind one figure preset")
    p_fig.add_argument("preset", choices=sorted(FIGURE_MUS))
    p_fig.add_argument("--mu", type=float, action="append", default=None,
                       help="override preset deformation values (repeatable)")
    p_fig.add_argument("--temperature", type=float, action="append", default=None,
                       help="override preset temperatures in MeV (repeatable)")
    p_fig.add_argument("--k-min", type=float, default=0.0)
    p_fig.add_argument("--k-max", type=float, default=1000.0)
    p_fig.add_argument("--k-steps", type=int, default=101)
    p_fig.add_argument("--oracle", action="store_true",
                       help="evaluate through the series oracle")
    common(p_fig, point=False)

    p_int = sub.add_parser("intercept", help="r-particle intercept at one point")
    common(p_int)
    p_int.add_argument("--order", type=int, default=2, help="intercept order r")
    p_int.add_argument("--with-oracle", action="store_true",
                       help="also print the oracle value and the difference")
    p_int.add_argument("--oracle", action="store_true",
                       help="force the series-oracle route")

    p_dist = sub.add_parser("distribution", help="mean occupation at one point")
    common(p_dist)
    p_dist.add_argument("--with-oracle", action="store_true",
                        help="also print the oracle value and the difference")

    p_r3 = sub.add_parser("r3", help="(lambda3 - 3 lambda2)/(2 lambda2^(3/2))")
    common(p_r3)
    p_r3.add_argument("--oracle", action="store_true",
                      help="force the series-oracle route")

    p_co = sub.add_parser("coeffs", help="partial-fraction coefficients A^(r)_l")
    p_co.add_argument("--order", type=int, required=True, help="product order r")
    p_co.add_argument("--mu", type=float, required=True)
    p_co.add_argument("--format", choices=("csv", "json"), default="csv")
    p_co.add_argument("--output", default=None)

    p_td = sub.add_parser("taylor-diagnose",
                          help="term growth of the mu-expansion (divergence)")
    common(p_td)
    p_td.add_argument("--order", type=int, default=1, help="moment order r")
    p_td.add_argument("--s-max", type=int, default=40,
                      help="highest expansion order to tabulate")

    p_pq = sub.add_parser("pq-compare", help="p,q-Bose intercept and asymptote")
    p_pq.add_argument("--p", type=float, required=True)
    p_pq.add_argument("--q", type=float, required=True)
    p_pq.add_argument("--temperature", type=float, default=120.0)
    p_pq.add_argument("-k", "--momentum", type=float, default=0.0)
    p_pq.add_argument("--mass", type=float, default=DEFAULT_MASS)
    p_pq.add_argument("--order", type=int, default=2)
    p_pq.add_argument("--format", choices=("csv", "json"), default="csv")
    p_pq.add_argument("--output", default=None)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "figure":
            grid = GridSpec(
                k_min=args.k_min, k_max=args.k_max, k_steps=args.k_steps,
                temperatures=tuple(args.temperature) if args.temperature
                else FIGURE_TEMPS,
                mus=tuple(args.mu) if args.mu else FIGURE_MUS[args.preset],
                mass=args.mass, tol=args.tol,
            )
            records, failed = figure_records(args.preset, grid, args.oracle)
            _emit(render(_record_rows(records), GRID_HEADER, args.format),
                  args.output)
            return 3 if failed else 0
        if args.command == "intercept":
            records = intercept_records(args.mu, args.temperature, args.momentum,
                                        args.mass, args.order, args.tol,
                                        args.with_oracle, args.oracle)
            _emit(render(_record_rows(records), GRID_HEADER, args.format),
                  args.output)
            return 0
        if args.command == "distribution":
            records = distribution_records(args.mu, args.temperature,
                                           args.momentum, args.mass, args.tol,
                                           args.with_oracle)
            _emit(render(_record_rows(records), GRID_HEADER, args.format),
                  args.output)
            return 0
        if args.command == "r3":
            records = r3_records(args.mu, args.temperature, args.momentum,
                                 args.mass, args.tol, args.oracle)
            _emit(render(_record_rows(records), GRID_HEADER, args.format),
                  args.output)
            return 0
        if args.command == "coeffs":
            rows = coeff_rows(args.order, args.mu)
            _emit(render(rows, COEFF_HEADER, args.format), args.output)
            return 0
        if args.command == "taylor-diagnose":
            rows = taylor_rows(args.mu, args.temperature, args.momentum,
                               args.mass, args.order, args.s_max)
            _emit(render(rows, TAYLOR_HEADER, args.format), args.output)
            return 0
        rows = pq_records(args.p, args.q, args.temperature, args.momentum,
                          args.mass, args.order)
        _emit(render(rows, PQ_HEADER, args.format), args.output)
        return 0
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
