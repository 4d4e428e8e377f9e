"""Command-line front end.

Six subcommands: ``star`` and ``bracket`` for exact polynomial calculus,
``hierarchy`` for the numeric hbar^2 routes, ``example1`` and ``example2``
for the two bundled worked systems, and ``check`` for the invariant
suites.  Output is deterministic for a fixed set of flags: floats print as
``%.17g`` in CSV, JSON is dumped with sorted keys, and every random draw
comes from ``random.Random(seed)``.
"""

from __future__ import annotations

import json
import math
import sys

import click

from .brackets import moyal_bracket_truncated, poisson_expr
from .checks import SUITES, run_checks
from .closed_forms import ValidityError, builtin_example1
from .expr import ExprParseError, eval_expr, parse_expr
from .flow import HamiltonianSpec
from .poly import (
    EvalPoint,
    PolyParseError,
    bracket_2n,
    format_poly,
    moyal_bracket,
    parse_poly,
    star_n,
    star_product,
)
from .semiclassical import (
    DEFAULT_TAYLOR_DEPTH_CAP,
    divergence_order,
    hbar2_ode,
    hbar2_transport,
    taylor_flow,
)

GRADE_CAP = 64


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _parse_poly_arg(text: str, what: str):
    try:
        return parse_poly(text)
    except PolyParseError as exc:
        _fail(f"cannot parse {what}: {exc}")


def _parse_expr_arg(text: str, what: str):
    try:
        return parse_expr(text)
    except ExprParseError as exc:
        _fail(f"cannot parse {what}: {exc}")


def _emit_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _g(x: float) -> str:
    return f"{x:.17g}"


def _time_grid(t0: float, t1: float, t_steps: int) -> list[float]:
    if t_steps < 1:
        _fail("--t-steps must be at least 1")
    if t_steps == 1:
        return [t1]
    return [t0 + (t1 - t0) * k / (t_steps - 1) for k in range(t_steps)]


@click.group()
def main() -> None:
    """Exact star-product calculus and semiclassical trajectory tools."""


# -- exact polynomial commands ------------------------------------------


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--grade", type=int, default=None, help="Print a single hbar grade instead of the full product.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def star(left: str, right: str, grade: int | None, fmt: str) -> None:
    """Exact star product of two polynomial symbols."""
    f = _parse_poly_arg(left, "first symbol")
    g = _parse_poly_arg(right, "second symbol")
    if grade is not None:
        if not 0 <= grade <= GRADE_CAP:
            _fail(f"--grade must lie in [0, {GRADE_CAP}]")
        result = star_n(f, g, grade)
    else:
        result = star_product(f, g)
    text = format_poly(result)
    if fmt == "json":
        _emit_json({"command": "star", "grade": grade, "result": text})
    else:
        click.echo(text)


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--grade", type=int, default=None, help="Print bracket grade 2n for the given n instead of the full sum.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def bracket(left: str, right: str, grade: int | None, fmt: str) -> None:
    """Exact deformed bracket of two polynomial symbols."""
    f = _parse_poly_arg(left, "first symbol")
    g = _parse_poly_arg(right, "second symbol")
    if grade is not None:
        if not 0 <= grade <= GRADE_CAP:
            _fail(f"--grade must lie in [0, {GRADE_CAP}]")
        result = bracket_2n(f, g, grade)
    else:
        result = moyal_bracket(f, g)
    text = format_poly(result)
    if fmt == "json":
        _emit_json({"command": "bracket", "grade": grade, "result": text})
    else:
        click.echo(text)


# -- numeric hbar^2 routes ----------------------------------------------


@main.command()
@click.option("--hamiltonian", "ham_text", default="(1/4)*q^2*p^2", show_default=True, help="Hamiltonian, expression grammar; polynomial texts also enable the exact Taylor route.")
@click.option("--q0", type=float, default=1.0, show_default=True)
@click.option("--p0", type=float, default=1.0, show_default=True)
@click.option("--t0", type=float, default=0.1, show_default=True)
@click.option("--t1", type=float, default=0.3, show_default=True)
@click.option("--t-steps", type=int, default=3, show_default=True)
@click.option("--m", type=float, default=None, help="Bind the symbol m.")
@click.option("--l", type=float, default=None, help="Bind the symbol l.")
@click.option("--lambda", "lam", type=float, default=None, help="Bind the symbol lambda.")
@click.option("--omega", type=float, default=None, help="Bind the symbol omega.")
@click.option("--beta", type=float, default=None, help="Bind the symbol beta.")
@click.option("--gamma", type=float, default=None, help="Bind the symbol gamma.")
@click.option("--depth", type=int, default=8, show_default=True, help="Taylor depth for the exact route.")
@click.option("--quad-nodes", type=int, default=64, show_default=True, help="Quadrature panels per unit time for the transport route.")
@click.option("--steps", type=int, default=None, help="Integrator steps per unit time (default 2000).")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def hierarchy(ham_text, q0, p0, t0, t1, t_steps, m, l, lam, omega, beta, gamma, depth, quad_nodes, steps, fmt) -> None:
    """hbar^2 trajectory corrections by every available route.

    Runs the correction ODE and the transport quadrature at each sampled
    time; when the Hamiltonian parses in the plain polynomial grammar the
    exact bracket-ladder Taylor series is evaluated as a third route.
    """
    expr = _parse_expr_arg(ham_text, "Hamiltonian")
    params = {
        name: val
        for name, val in (
            ("m", m), ("l", l), ("lambda", lam), ("omega", omega),
            ("beta", beta), ("gamma", gamma),
        )
        if val is not None
    }
    try:
        ham = HamiltonianSpec(expr, params)
    except ValueError as exc:
        _fail(str(exc))
    times = _time_grid(t0, t1, t_steps)
    rows = []
    for t in times:
        if t == 0.0:
            rows.append((t, 0.0, 0.0, "ode"))
            rows.append((t, 0.0, 0.0, "transport"))
            continue
        ode = hbar2_ode(ham, (q0, p0), t, steps=None if steps is None else max(1, round(abs(t) * steps)))
        rows.append((t, ode.q2[0], ode.p2[0], "ode"))
        tra = hbar2_transport(ham, (q0, p0), t, quad_panels_per_unit=quad_nodes, steps_per_unit=steps)
        rows.append((t, tra.q2[0], tra.p2[0], "transport"))
    try:
        h_poly = parse_poly(ham_text)
    except PolyParseError:
        h_poly = None
    if h_poly is not None:
        flows = {s: taylor_flow(h_poly, depth, "deformed", s) for s in ("q", "p")}
        for t in times:
            vals = {}
            for s, fl in flows.items():
                acc = 0.0
                tn = 1.0
                for n, c in enumerate(fl.hbar2_grade_series()):
                    if n:
                        tn *= t / n
                    acc += tn * c.evaluate(q0, p0, 1.0).real
                vals[s] = acc
            rows.append((t, vals["q"], vals["p"], "taylor"))
    rows.sort(key=lambda r: (r[3], r[0]))
    if fmt == "csv":
        lines = ["t,Q2,P2,method"]
        lines += [f"{_g(t)},{_g(a)},{_g(b)},{meth}" for t, a, b, meth in rows]
        click.echo("\n".join(lines))
    elif fmt == "json":
        _emit_json([
            {"t": t, "Q2": a, "P2": b, "method": meth} for t, a, b, meth in rows
        ])
    else:
        click.echo(f"{'t':>10} {'Q2':>22} {'P2':>22} method")
        for t, a, b, meth in rows:
            click.echo(f"{t:>10.4g} {a:>22.12g} {b:>22.12g} {meth}")


# -- worked examples ----------------------------------------------------


@main.command()
@click.option("--q0", type=float, default=1.0, show_default=True)
@click.option("--p0", type=float, default=1.0, show_default=True)
@click.option("--t0", type=float, default=0.0, show_default=True)
@click.option("--t1", type=float, default=1.0, show_default=True)
@click.option("--t-steps", type=int, default=5, show_default=True)
@click.option("--hbar", type=float, default=0.1, show_default=True)
@click.option("--m", type=float, default=1.0, show_default=True)
@click.option("--l", type=float, default=1.0, show_default=True)
@click.option("--grade", type=int, default=8, show_default=True, help="Truncation grade for the numeric deformed brackets.")
@click.option("--tol", type=float, default=1e-6, show_default=True, help="Convergence tolerance for the truncated brackets.")
@click.option("--skip-hbar2", is_flag=True, help="Skip the numeric hbar^2 columns (faster).")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def example1(q0, p0, t0, t1, t_steps, hbar, m, l, grade, tol, skip_hbar2, fmt) -> None:
    """Exactly solvable position-dependent-mass system, full report.

    Per sampled time: both closed-form trajectory pairs, their Poisson
    brackets, truncated deformed brackets with convergence flags, the
    coordinate-transformation residual of the evolved product, and the
    numeric hbar^2 coefficients against their closed forms.
    """
    if hbar <= 0:
        _fail("--hbar must be positive")
    ex = builtin_example1()
    bound = ex.deformed_position.t_bound(m, l, hbar)
    times = _time_grid(t0, t1, t_steps)
    for t in times:
        if abs(t) >= bound:
            _fail(
                f"t = {t:g} is outside the validity interval |t| < {bound:g} "
                f"for hbar = {hbar:g}, m = {m:g}, l = {l:g}"
            )
    pb_c = poisson_expr(ex.classical_position, ex.classical_momentum)
    pb_m = poisson_expr(ex.deformed_position.expr, ex.deformed_momentum.expr)
    ham = HamiltonianSpec(ex.hamiltonian, {"m": m, "l": l})
    ml2 = m * l * l
    rows = []
    for t in times:
        binds = {"q": q0, "p": p0, "t": t, "m": m, "l": l, "hbar": hbar}
        point = EvalPoint(q=q0, p=p0, hbar=hbar, params={"t": t, "m": m, "l": l})
        qc = eval_expr(ex.classical_position, binds).real
        pc = eval_expr(ex.classical_momentum, binds).real
        try:
            qm = ex.deformed_position.eval(binds).real
            pm = ex.deformed_momentum.eval(binds).real
        except ValidityError as exc:
            _fail(str(exc))
        rep_c = moyal_bracket_truncated(
            ex.classical_position, ex.classical_momentum, grade, point, tolerance=tol
        )
        rep_m = moyal_bracket_truncated(
            ex.deformed_position.expr, ex.deformed_momentum.expr, grade, point, tolerance=tol
        )
        evolved = eval_expr(ex.evolved_product, dict(binds, q=qm, p=pm))
        coord_form = complex(qm * pm, hbar / 2.0)
        initial_form = complex(q0 * p0, hbar / 2.0)
        row = {
            "t": t,
            "q_classical": qc,
            "p_classical": pc,
            "q_deformed": qm,
            "p_deformed": pm,
            "pb_classical": eval_expr(pb_c, binds).real,
            "pb_deformed": eval_expr(pb_m, binds).real,
            "bracket_classical": rep_c.partial_sums[-1].real,
            "bracket_classical_converged": rep_c.converged,
            "bracket_deformed": rep_m.partial_sums[-1].real,
            "bracket_deformed_converged": rep_m.converged,
            "coord_residual": abs(evolved - coord_form),
            "product_drift": abs(evolved - initial_form),
        }
        if not skip_hbar2:
            want_q = qc * (t * t / (16.0 * ml2 * ml2)) * (1.0 + t * q0 * p0 / (6.0 * ml2))
            want_p = pc * (t * t / (16.0 * ml2 * ml2)) * (1.0 - t * q0 * p0 / (6.0 * ml2))
            if t == 0.0:
                got_q = got_p = 0.0
            else:
                ode = hbar2_ode(ham, (q0, p0), t)
                got_q, got_p = ode.q2[0], ode.p2[0]
            row["hbar2_position"] = got_q
            row["hbar2_momentum"] = got_p
            row["hbar2_position_rel"] = (
                0.0 if want_q == 0.0 and got_q == 0.0 else abs(got_q / want_q - 1.0)
            )
            row["hbar2_momentum_rel"] = (
                0.0 if want_p == 0.0 and got_p == 0.0 else abs(got_p / want_p - 1.0)
            )
        rows.append(row)
    _emit_rows(rows, fmt)


def _emit_rows(rows: list[dict], fmt: str) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    if fmt == "json":
        _emit_json(rows)
    elif fmt == "csv":
        def cell(v):
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return _g(v)
            return str(v)
        lines = [",".join(keys)]
        lines += [",".join(cell(r[k]) for k in keys) for r in rows]
        click.echo("\n".join(lines))
    else:
        width = max(len(k) for k in keys)
        for r in rows:
            for k in keys:
                v = r[k]
                text = f"{v:.12g}" if isinstance(v, float) else str(v)
                click.echo(f"  {k:<{width}}  {text}")
            click.echo("")


@main.command()
@click.option("--hamiltonian", "ham_text", default="(1/2)*p^2 + (1/2)*q^2 + (1/24)*q^4", show_default=True, help="Polynomial Hamiltonian, exact coefficients.")
@click.option("--depth", type=int, default=8, show_default=True)
@click.option("--q0", type=float, default=None, help="With --p0, also run the numeric hbar^2 ratio check.")
@click.option("--p0", type=float, default=None)
@click.option("--t1", type=float, default=0.05, show_default=True, help="Time for the ratio check.")
@click.option("--tol", type=float, default=0.05, show_default=True, help="Relative tolerance for the ratio check.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="json")
def example2(ham_text, depth, q0, p0, t1, tol, fmt) -> None:
    """Where the deformed bracket ladder leaves the classical one.

    Emits the exact divergence report for both seed coordinates; with an
    initial point given, also integrates the hbar^2 correction ODE over a
    short time and compares it against the exact Taylor prediction.
    """
    h = _parse_poly_arg(ham_text, "Hamiltonian")
    if any(hh for (_a, _b, hh) in h.terms):
        _fail("the Hamiltonian must be hbar-free")
    if not 1 <= depth <= DEFAULT_TAYLOR_DEPTH_CAP:
        _fail(f"--depth must lie in [1, {DEFAULT_TAYLOR_DEPTH_CAP}]")
    reports = divergence_order(h, depth)
    payload = {"reports": [reports[s].to_json_dict() for s in ("q", "p")]}
    if (q0 is None) != (p0 is None):
        _fail("--q0 and --p0 must be given together")
    if q0 is not None:
        expr = _parse_expr_arg(_poly_as_expr_text(h), "Hamiltonian")
        ham = HamiltonianSpec(expr)
        ode = hbar2_ode(ham, (q0, p0), t1)
        checks = []
        for s, got in (("q", ode.q2[0]), ("p", ode.p2[0])):
            fl = taylor_flow(h, depth, "deformed", s)
            acc = 0.0
            tn = 1.0
            for n, c in enumerate(fl.hbar2_grade_series()):
                if n:
                    tn *= t1 / n
                acc += tn * c.evaluate(q0, p0, 1.0).real
            ratio = got / acc if acc != 0.0 else math.inf
            checks.append({
                "seed": s,
                "taylor": acc,
                "ode": got,
                "ratio": ratio,
                "within_tolerance": acc != 0.0 and abs(ratio - 1.0) < tol,
            })
        payload["hbar2_ratio_checks"] = checks
    if fmt == "json":
        _emit_json(payload)
    else:
        for rep in payload["reports"]:
            click.echo(f"seed {rep['seed']}:")
            click.echo(f"  first divergent order: {rep['first_divergent_order']}")
            click.echo(f"  difference: {rep['difference_polynomial']}")
            click.echo(f"  per-order equality: {rep['per_order_equal']}")
        for chk in payload.get("hbar2_ratio_checks", []):
            click.echo(
                f"hbar^2 ratio check, seed {chk['seed']}: ode/taylor = "
                f"{chk['ratio']:.6g} ({'ok' if chk['within_tolerance'] else 'off'})"
            )


def _poly_as_expr_text(h) -> str:
    return format_poly(h)


# -- invariant suites ---------------------------------------------------


@main.command()
@click.option("--only", multiple=True, help="Run only suites whose name contains this (repeatable).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cases", type=int, default=None, help="Override the case count of randomized suites.")
@click.option("--order", type=int, default=None, help="Override the order of the composition-identity suite.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def check(only, seed, cases, order, fmt) -> None:
    """Run the invariant suites; exit 0 only if every one passes."""
    try:
        outcomes = run_checks(seed=seed, only=list(only) or None, cases=cases, order=order)
    except KeyError as exc:
        _fail(f"{exc.args[0]}; available: {', '.join(SUITES)}")
    if fmt == "json":
        _emit_json([
            {
                "name": o.name,
                "passed": o.passed,
                "cases": o.cases,
                "detail": o.detail,
            }
            for o in outcomes
        ])
    else:
        for o in outcomes:
            mark = "PASS" if o.passed else "FAIL"
            tail = f"  ({o.detail})" if o.detail else ""
            click.echo(f"{mark}  {o.name}  [{o.cases} cases]{tail}")
        failed = sum(1 for o in outcomes if not o.passed)
        click.echo(f"{len(outcomes) - failed}/{len(outcomes)} suites passed")
    if any(not o.passed for o in outcomes):
        sys.exit(1)


if __name__ == "__main__":
    main()
