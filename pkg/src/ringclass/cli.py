"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence,
4 a verification suite failed.
"""

from __future__ import annotations

import sys
import warnings
from pathlib import Path

import click
import mpmath

from . import cache
from .diophantine import Outcome, RepresentationProblem, represents, sweep
from .galois import class_number_order, conjugate_data, reduced_forms
from .invariants import (
    HypothesisWarning,
    RecognitionError,
    conjugates,
    j_invariant,
    min_poly,
    min_poly_j,
    ring_class_invariant,
    verify_norm_identity,
)
from .modular import PrecisionCtx, build_eta_quotient, check_ono_conditions
from .polynomial import discriminant
from .quadratic import (
    TABLE1_REFERENCE,
    InvalidDiscriminant,
    group_order_G,
    make_field,
    make_order,
    order_of_form_x2_ny2,
    prime_powers,
    reproduce_table1,
    table1_by_residue,
    table1_column,
    table_order,
)

EXIT_INPUT, EXIT_NUMERIC, EXIT_SUITE = 2, 3, 4


def _fail(msg: str, code: int):
    click.echo(msg, err=True)
    sys.exit(code)


def _order(dk: int, conductor: int):
    try:
        order = make_order(dk, conductor)
    except InvalidDiscriminant as exc:
        _fail(f"invalid d_K: {exc}", EXIT_INPUT)
    if conductor < 2:
        _fail("conductor must be at least 2", EXIT_INPUT)
    return order


def polynomial_entry(order, cache_dir: Path | None = None, precision: int | None = None,
                     kind: str = "") -> tuple[cache.PolyCacheEntry, bool]:
    """Load the minimal polynomial from the cache, or compute and store it.

    ``kind`` is "" for the eta-quotient invariant, "j" for j at the conjugate
    points and "jN" for j(N tau).  Returns ``(entry, was_cached)``.
    """
    d_k, N = order.field.d_k, order.conductor
    expected = class_number_order(order.field, N)
    if cache_dir is not None:
        hit = cache.load(cache_dir, d_k, N, kind)
        if hit is not None and hit.poly.degree == expected and hit.poly.monic:
            return hit, True
    ctx0 = PrecisionCtx(precision) if precision else None
    spec = build_eta_quotient(N)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        if kind:
            poly, report = min_poly_j(order, ctx0, scaled=(kind == "jN"))
            ctx = PrecisionCtx(report.precision_used)
            point = order.field.tau_k.scale(N) if kind == "jN" else order.field.tau_k
            value = j_invariant(point, ctx)
        else:
            poly, report = min_poly(order, ctx0, spec)
            ctx = PrecisionCtx(report.precision_used)
            value = ring_class_invariant(order, ctx, spec)
    entry = cache.PolyCacheEntry.from_poly(
        d_k, N, poly, report.precision_used, mpmath.nstr(value.real, 50),
        {} if kind else spec.exponents)
    if cache_dir is not None:
        cache.store(cache_dir, entry, kind)
    return entry, False


@click.group()
def main():
    """Ring class invariants from eta-quotients, and p = x^2 + n y^2."""


@main.command("field-info")
@click.option("--dk", type=int, required=True, help="Fundamental discriminant d_K < 0.")
@click.option("--bound", type=int, default=50, show_default=True, help="Largest p^r listed.")
def field_info(dk, bound):
    """Field data and the prime powers p^r with |G| <= 2."""
    try:
        field = make_field(dk)
    except InvalidDiscriminant as exc:
        _fail(f"invalid d_K: {exc}", EXIT_INPUT)
    click.echo(f"d_K = {dk} (fundamental)")
    click.echo(f"field = {field}")
    click.echo(f"tau_K = {field.tau_k}")
    click.echo(f"unit_count = {field.unit_count}")
    click.echo(f"Table-1 column: {table1_column(dk)}")
    small = []
    for p, r in prime_powers(bound):
        g = group_order_G(field, p, r)
        if g <= 2:
            small.append(p ** r)
        click.echo(f"  p^r = {p ** r:>3}  |G| = {g}")
    click.echo("Table-1 set: {" + ", ".join(map(str, sorted(small, key=table_order))) + "}")


@main.command()
@click.option("--dk", type=int, required=True)
@click.option("--conductor", type=int, required=True)
@click.option("--precision", type=int, default=None,
              help="Starting precision in bits (doubled adaptively).")
@click.option("--json", "as_json", is_flag=True, help="Emit the cache entry as JSON.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False, path_type=Path),
              default=None, help=f"Cache directory (default: ${cache.ENV_VAR}).")
@click.option("--use-j", is_flag=True, help="Use j at the conjugate points instead.")
@click.option("--scaled-j", is_flag=True, help="With --use-j, evaluate j(N tau).")
def minpoly(dk, conductor, precision, as_json, cache_dir, use_j, scaled_j):
    """Minimal polynomial of the ring class invariant."""
    order = _order(dk, conductor)
    if precision is not None and precision < 64:
        _fail("precision must be at least 64 bits", EXIT_INPUT)
    kind = ("jN" if scaled_j else "j") if use_j else ""
    try:
        entry, _ = polynomial_entry(order, cache_dir or cache.default_cache_dir(),
                                    precision, kind)
    except RecognitionError as exc:
        click.echo(str(exc), err=True)
        for bits, resid in exc.residuals:
            click.echo(f"  {bits} bits: residual {resid:.3e}", err=True)
        sys.exit(EXIT_NUMERIC)
    click.echo(entry.to_json() if as_json else str(entry.poly))


def _f_n(n, cache_dir, precision):
    try:
        order = order_of_form_x2_ny2(n)
    except ValueError as exc:
        _fail(str(exc), EXIT_INPUT)
    if order.conductor < 2:
        _fail(f"Z[sqrt(-{n})] is a maximal order; conductor >= 2 is required", EXIT_INPUT)
    try:
        entry, _ = polynomial_entry(order, cache_dir, precision)
    except RecognitionError as exc:
        _fail(str(exc), EXIT_NUMERIC)
    poly = entry.poly
    if discriminant(poly) == 0:
        _fail(f"the invariant for n = {n} has repeated conjugates and does not "
              "generate the ring class field", EXIT_SUITE)
    return poly


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, default=None)
@click.option("--sweep-below", type=int, default=None,
              help="Check every odd prime below this bound against brute force.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False, path_type=Path),
              default=None)
@click.option("--precision", type=int, default=None)
def solve(n, p, sweep_below, cache_dir, precision):
    """Decide p = x^2 + n y^2 and produce (x, y)."""
    if (p is None) == (sweep_below is None):
        _fail("give exactly one of --p and --sweep-below", EXIT_INPUT)
    f = _f_n(n, cache_dir or cache.default_cache_dir(), precision)
    if p is not None:
        click.echo(str(represents(RepresentationProblem(n, p, f))))
        return
    rows = sweep(n, f, sweep_below)
    bad = 0
    click.echo(f"{'p':>6}  {'criterion':<40} brute force")
    for row in rows:
        brute = "none" if row.brute is None else f"x={row.brute[0]} y={row.brute[1]}"
        mark = "" if row.agrees else "  MISMATCH"
        bad += not row.agrees
        click.echo(f"{row.p:>6}  {str(row.decision):<40} {brute}{mark}")
    yes = sum(r.decision.outcome is Outcome.YES for r in rows)
    na = sum(r.decision.outcome is Outcome.NOT_APPLICABLE for r in rows)
    click.echo(f"{len(rows)} primes, {yes} represented, {na} not applicable, {bad} mismatches")
    if bad:
        sys.exit(EXIT_SUITE)


@main.command()
@click.option("--dk", type=int, default=None)
@click.option("--conductor", type=int, default=None)
@click.option("--suite", type=click.Choice(["norm", "ono", "table1", "conjugates"]),
              required=True)
@click.option("--precision", type=int, default=256, show_default=True)
def verify(dk, conductor, suite, precision):
    """Run a numerical or combinatorial property suite."""
    ctx = PrecisionCtx(precision)
    if suite == "table1":
        ok = _verify_table1()
    elif suite == "ono":
        levels = [conductor] if conductor else range(2, 1001)
        failed = [N for N in levels if not check_ono_conditions(build_eta_quotient(N)).ok]
        click.echo(f"checked {len(levels)} levels, {len(failed)} failures {failed[:10]}")
        ok = not failed
    else:
        if dk is None or conductor is None:
            _fail(f"--suite {suite} needs --dk and --conductor", EXIT_INPUT)
        order = _order(dk, conductor)
        ok = _verify_norm(order, ctx) if suite == "norm" else _verify_conjugates(order, ctx)
    if not ok:
        sys.exit(EXIT_SUITE)


def _verify_norm(order, ctx) -> bool:
    rep = verify_norm_identity(order, ctx)
    tol = 2.0 ** (-ctx.bits / 2)
    click.echo(f"orbit t = {list(rep.orbit)}")
    click.echo(f"|LHS/RHS - 1| = {rep.residual:.3e}  (tolerance {tol:.3e})")
    click.echo(f"|Im RHS|/|RHS| = {rep.rhs_imag_residual:.3e}")
    click.echo(f"eta rewriting residual = {rep.eta_form_residual:.3e}")
    return max(rep.residual, rep.rhs_imag_residual, rep.eta_form_residual) < tol


def _verify_conjugates(order, ctx) -> bool:
    data = conjugate_data(order.field, order.conductor)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        values = conjugates(order, ctx)
        other = conjugates(order, ctx, reverse=True)
    for g, v in zip(data, values):
        form = f"Q=({g.form})" if g.form else ""
        click.echo(f"{form} gamma*beta={g.matrix} = diag(1,{g.diag_d})*{g.sl2_part} mod {order.conductor}  "
                   f"lift={g.sl2_lift}  at {g.eval_point}:  {mpmath.nstr(v.real, 20)}")
    tol = 2.0 ** (-ctx.bits / 2)
    remaining = list(other)
    for v in values:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - v))
        if abs(remaining[k] - v) > tol * (1 + abs(v)):
            click.echo("conjugate multiset depends on the representative choice")
            return False
        remaining.pop(k)
    click.echo(f"{len(values)} conjugates; multiset independent of representatives")
    return len(values) == class_number_order(order.field, order.conductor)


def _verify_table1() -> bool:
    computed = reproduce_table1()
    ok = True
    for col, expected in TABLE1_REFERENCE.items():
        got = computed[col]
        same = sorted(got) == sorted(expected)
        ok &= same
        click.echo(f"{col:<14} computed {got}  reference {expected}"
                   f"{'' if same else '  DIFFERS'}")
    if ok:
        click.echo("Table 1 reproduced")
    else:
        click.echo("per residue of d_K mod 24 (|d_K| <= 200):")
        for r, sets in sorted(table1_by_residue().items()):
            click.echo(f"  {r:>2}: " + " | ".join(str(sorted(s)) for s in sets))
    return ok


@main.command()
@click.option("--disc", type=int, required=True)
def classgroup(disc):
    """Reduced primitive positive definite forms of a discriminant."""
    try:
        forms = reduced_forms(disc)
    except ValueError as exc:
        _fail(str(exc), EXIT_INPUT)
    for q in forms:
        click.echo(str(q))
    click.echo(f"h({disc}) = {len(forms)}", err=True)


if __name__ == "__main__":
    main()
