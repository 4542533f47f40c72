"""Command-line front end for counting, lemma checks, brackets, and sweeps.

Single binary with subcommands (count / verify / asym / lemmas).  All
machine output is exact: integers, rationals, or bracketed interval
strings "[lo,hi]" — never bare floats.  Output is deterministic for a
given configuration (stable row ordering, no timestamps).

Exit codes: 0 = all checks verified, 1 = counterexample found,
2 = usage or configuration error, 3 = precision exhaustion.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from .chern import ChernError, estimate
from .combinatorics import OverpartitionError, verify_lemma
from .inequalities import (
    InequalityError,
    LOGCONCAVE_THRESHOLDS,
    QBOUND_THRESHOLDS,
    TURAN3_THRESHOLDS,
    scan_thresholds,
    verify_q_containment,
)
from .numerics import NumericsError, PrecisionExhausted, default_precision
from .qseries import pk, warm_cache

EXIT_COUNTEREXAMPLE = 1
EXIT_PRECISION = 3

K_MIN, K_MAX = 2, 9


def _parse_k_range(text: str) -> list[int]:
    """Parse "3" or "2..9" into a list of supported k values."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.UsageError(f"malformed k range {text!r}; use N or N..M")
    if lo > hi:
        raise click.UsageError(f"empty k range {text!r}")
    if lo < K_MIN or hi > K_MAX:
        raise click.UsageError(
            f"k must lie in {K_MIN}..{K_MAX}, got {text!r}"
        )
    return list(range(lo, hi + 1))


def _resolve_precision(precision: int | None) -> int:
    if precision is None:
        try:
            return default_precision()
        except NumericsError as exc:
            raise click.UsageError(str(exc))
    if precision < 64:
        raise click.UsageError(f"precision must be >= 64 bits, got {precision}")
    return precision


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ";".join(
            "(" + ",".join(_cell(x) for x in v) + ")"
            if isinstance(v, (list, tuple))
            else _cell(v)
            for v in value
        )
    if value is None:
        return "n/a"
    return str(value)


def _emit(rows: list[dict], output: str) -> None:
    """Render rows of identical keys as a table, CSV, or JSON array."""
    if output == "json":
        click.echo(json.dumps(rows))
        return
    if not rows:
        return
    columns = list(rows[0])
    if output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        return
    # table: pad every column to its widest cell
    cells = [[_cell(row[c]) for c in columns] for row in rows]
    widths = [
        max(len(name), *(line[i] and len(line[i]) or 0 for line in cells))
        for i, name in enumerate(columns)
    ]
    click.echo("  ".join(name.ljust(w) for name, w in zip(columns, widths)))
    for line in cells:
        click.echo("  ".join(v.ljust(w) for v, w in zip(line, widths)))


_OUTPUT = click.option(
    "--output",
    type=click.Choice(["table", "csv", "json"]),
    default="table",
    show_default=True,
    help="Row format for machine or human consumption.",
)
_JOBS = click.option(
    "--jobs",
    type=int,
    default=None,
    help="Sweep parallelism [default: available cores].",
)
_PRECISION = click.option(
    "--precision",
    type=int,
    default=None,
    help="Working precision in bits [default: REGOVER_PRECISION or 192].",
)


def _pool(jobs: int | None) -> ThreadPoolExecutor:
    workers = jobs if jobs and jobs > 0 else (os.cpu_count() or 1)
    return ThreadPoolExecutor(max_workers=workers)


@click.group()
def main() -> None:
    """Exact counts, certified asymptotics, and inequality sweeps for
    k-regular overpartitions."""


@main.command()
@click.option("--k", "k_spec", required=True, help="k value or range N..M.")
@click.option("--n", "n_single", type=int, default=None, help="Single index n.")
@click.option("--n-max", type=int, default=None, help="Emit all n in 0..n-max.")
@_OUTPUT
def count(k_spec: str, n_single: int | None, n_max: int | None, output: str) -> None:
    """Print exact counts p_k-bar(n)."""
    ks = _parse_k_range(k_spec)
    if (n_single is None) == (n_max is None):
        raise click.UsageError("give exactly one of --n or --n-max")
    if n_single is not None and n_single < 0:
        raise click.UsageError(f"n must be >= 0, got {n_single}")
    if n_max is not None and n_max < 0:
        raise click.UsageError(f"n-max must be >= 0, got {n_max}")
    ns = [n_single] if n_single is not None else list(range(n_max + 1))
    if output == "table" and len(ks) == 1 and len(ns) == 1:
        click.echo(str(pk(ks[0], ns[0])))
        return
    for k in ks:
        warm_cache(k, max(ns))
    rows = [{"k": k, "n": n, "count": str(pk(k, n))} for k in ks for n in ns]
    _emit(rows, output)


_DEFAULT_QBOUND_HORIZONS = {2: 8000, 8: 12000}


def _default_horizon(prop: str, k: int) -> int:
    if prop == "qbounds":
        base = _DEFAULT_QBOUND_HORIZONS.get(k, 2000)
        return max(base, QBOUND_THRESHOLDS[k] + 500)
    return 2000 if prop in ("logconcave", "turan3") else 200


@main.command()
@click.argument(
    "property", type=click.Choice(["subadd", "logconcave", "turan3", "qbounds"])
)
@click.option("--k", "k_spec", required=True, help="k value or range N..M.")
@click.option(
    "--horizon",
    type=int,
    default=None,
    help="Sweep upper limit (n, or a+b for subadd) [default: per property].",
)
@_PRECISION
@_JOBS
@_OUTPUT
def verify(
    property: str,
    k_spec: str,
    horizon: int | None,
    precision: int | None,
    jobs: int | None,
    output: str,
) -> None:
    """Sweep one inequality over a k range; exit 0 iff no counterexample.

    subadd / logconcave / turan3 run exact scans and emit one threshold
    report per k; qbounds certifies L(n) < Q_k(n) < R(n) with interval
    arithmetic and emits one verdict row per n.
    """
    ks = _parse_k_range(k_spec)
    precision = _resolve_precision(precision)
    failed = False
    try:
        if property == "qbounds":
            rows = []
            for k in ks:
                h = horizon if horizon is not None else _default_horizon(property, k)
                threshold = QBOUND_THRESHOLDS[k]
                if h < threshold:
                    raise click.UsageError(
                        f"qbounds for k={k} start at n={threshold}; "
                        f"horizon {h} is below it"
                    )
                ns = range(threshold, h + 1)
                warm_cache(k, h + 1)
                with _pool(jobs) as pool:
                    verdicts = list(
                        pool.map(lambda n: verify_q_containment(k, n, precision), ns)
                    )
                for n, ok in zip(ns, verdicts):
                    failed = failed or not ok
                    rows.append(
                        {"k": k, "n": n, "property": property, "verdict": ok}
                    )
            _emit(rows, output)
        else:
            with _pool(jobs) as pool:
                reports = list(
                    pool.map(
                        lambda k: scan_thresholds(
                            k,
                            property,
                            horizon
                            if horizon is not None
                            else _default_horizon(property, k),
                        ),
                        ks,
                    )
                )
            for rep in reports:
                if property == "subadd":
                    bad = rep.exceptions_below
                else:
                    bad = tuple(
                        n for n in rep.exceptions_below if n >= rep.paper_threshold
                    )
                if bad:
                    failed = True
                    click.echo(
                        f"counterexamples for k={rep.k} {property}: "
                        + _cell(bad),
                        err=True,
                    )
            _emit([rep.to_dict() for rep in reports], output)
    except PrecisionExhausted as exc:
        click.echo(f"precision exhausted: {exc}", err=True)
        sys.exit(EXIT_PRECISION)
    except (InequalityError, NumericsError) as exc:
        raise click.UsageError(str(exc))
    if failed:
        sys.exit(EXIT_COUNTEREXAMPLE)


@main.command()
@click.option("--k", "k_spec", required=True, help="k value or range N..M.")
@click.option("--n-min", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--step", type=int, default=1, show_default=True)
@_PRECISION
@_JOBS
@_OUTPUT
def asym(
    k_spec: str,
    n_min: int,
    n_max: int,
    step: int,
    precision: int | None,
    jobs: int | None,
    output: str,
) -> None:
    """Certified main-term brackets versus exact counts.

    Rows below the bracket's validity threshold carry "n/a" in the
    remainder, containment, and relative-width columns.
    """
    ks = _parse_k_range(k_spec)
    precision = _resolve_precision(precision)
    if n_min < 0 or n_max < n_min or step < 1:
        raise click.UsageError("need 0 <= n-min <= n-max and step >= 1")
    ns = list(range(n_min, n_max + 1, step))
    rows = []
    try:
        for k in ks:
            warm_cache(k, n_max)
            with _pool(jobs) as pool:
                ests = list(pool.map(lambda n: estimate(k, n, precision), ns))
            for est in ests:
                row = est.to_row()
                if est.remainder is None:
                    row["rel_width"] = "n/a"
                else:
                    rel = (est.upper - est.lower) / est.main
                    row["rel_width"] = rel.to_string()
                rows.append(row)
    except PrecisionExhausted as exc:
        click.echo(f"precision exhausted: {exc}", err=True)
        sys.exit(EXIT_PRECISION)
    except (ChernError, NumericsError) as exc:
        raise click.UsageError(str(exc))
    _emit(rows, output)
    if any(row["inside"] == "false" for row in rows):
        sys.exit(EXIT_COUNTEREXAMPLE)


@main.command()
@click.option(
    "--id",
    "lemma_id",
    type=click.Choice(["2.1", "2.2", "2.3", "2.4"]),
    required=True,
    help="Which splitting lemma to verify exhaustively.",
)
@click.option("--k", "k_spec", required=True, help="k value or range N..M.")
@click.option(
    "--a-max",
    type=int,
    default=20,
    show_default=True,
    help="Largest left weight a (single-sided lemmas).",
)
@click.option(
    "--total-max",
    type=int,
    default=18,
    show_default=True,
    help="Largest a+b for the two-sided lemmas.",
)
@_JOBS
@_OUTPUT
def lemmas(
    lemma_id: str,
    k_spec: str,
    a_max: int,
    total_max: int,
    jobs: int | None,
    output: str,
) -> None:
    """Exhaustive splitting-lemma verification over a grid; exit 0 iff
    every grid point holds (and is injective where a map is checked)."""
    ks = _parse_k_range(k_spec)
    if a_max < 1 or total_max < 2:
        raise click.UsageError("need a-max >= 1 and total-max >= 2")
    grid: list[tuple[int, int, int | None]] = []
    for k in ks:
        if lemma_id in ("2.2", "2.3"):
            grid.extend((k, a, None) for a in range(1, a_max + 1))
        elif lemma_id == "2.1":
            grid.extend(
                (k, a, b)
                for a in range(1, total_max)
                for b in range(1, total_max + 1 - a)
            )
        else:  # 2.4: b >= 3, a + b >= k + 1
            grid.extend(
                (k, a, b)
                for a in range(1, total_max - 2)
                for b in range(3, total_max + 1 - a)
                if a + b >= k + 1
            )
    try:
        with _pool(jobs) as pool:
            reports = list(
                pool.map(lambda g: verify_lemma(lemma_id, g[0], g[1], g[2]), grid)
            )
    except OverpartitionError as exc:
        raise click.UsageError(str(exc))
    if any(rep.mode != "map" for rep in reports):
        click.echo(
            "notice: some grid points verified by cardinality only "
            "(no explicit map for this case)",
            err=True,
        )
    _emit([rep.to_dict() for rep in reports], output)
    if any(not rep.holds or rep.injective is False for rep in reports):
        sys.exit(EXIT_COUNTEREXAMPLE)


if __name__ == "__main__":
    main()
