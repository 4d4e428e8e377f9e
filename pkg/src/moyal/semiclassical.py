"""Semiclassical trajectory hierarchy: where deformed flows leave classical ones.

Exact side: iterate the classical and the deformed bracket on a polynomial
Hamiltonian to build the two time-Taylor flows coefficient by coefficient,
and locate the first order at which they part ways.  The series convention
is state(t) = sum_n t^n / n! * coeff_n with coeff_0 the seed symbol.

Numeric side: two independent routes to the hbar^2 trajectory correction.
The transport route integrates the grade-one bracket of the flow map
against the Hamiltonian along the classical trajectory (order-3 jets give
the map's third derivatives at each quadrature node); the ode route
propagates the correction through a linear inhomogeneous equation driven
by order-2 jets.  They share no code beyond the integrator, so agreement
is evidence the formulas are right, and both are compared against closed
forms where one exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .expr import Expr, add, const, differentiate, mul
from .flow import (
    HamiltonianSpec,
    _eval_real,
    default_steps,
    integrate_flow,
    integrate_flow_jets,
)
from .jets import TruncatedJet
from .poly import (
    P,
    PhasePolynomial,
    Q,
    format_poly,
    moyal_bracket,
    poisson_bracket,
)

__all__ = [
    "DEFAULT_TAYLOR_DEPTH_CAP",
    "HierarchyLadders",
    "iterated_brackets",
    "TimeTaylorFlow",
    "taylor_flow",
    "DivergenceReport",
    "divergence_order",
    "Hbar2Result",
    "hbar2_transport",
    "hbar2_ode",
    "hbar2_inhomogeneity",
    "star_exp_A2",
    "cubic_order7_report",
    "CubicOrder7Report",
]

DEFAULT_TAYLOR_DEPTH_CAP = 10

_SEEDS = {"q": Q, "p": P}


def _check_hamiltonian_poly(h: PhasePolynomial):
    if any(hh for (_a, _b, hh) in h.terms):
        raise ValueError("the polynomial Hamiltonian must be hbar-free")


@dataclass(frozen=True)
class HierarchyLadders:
    """Iterated brackets of a seed coordinate with the Hamiltonian.

    classical[n] and deformed[n] hold the (n+1)-fold ladder entries, i.e.
    index 0 is the single bracket of the seed.
    """

    seed: str
    classical: tuple[PhasePolynomial, ...]
    deformed: tuple[PhasePolynomial, ...]


def iterated_brackets(
    h: PhasePolynomial,
    depth: int,
    seed: str,
    depth_cap: int = DEFAULT_TAYLOR_DEPTH_CAP,
) -> HierarchyLadders:
    """Build both bracket ladders exactly, to the given depth."""
    _check_hamiltonian_poly(h)
    if seed not in _SEEDS:
        raise ValueError("seed must be 'q' or 'p'")
    if not 1 <= depth <= depth_cap:
        raise ValueError(f"depth must be within [1, {depth_cap}]")
    classical = []
    deformed = []
    c = _SEEDS[seed]
    d = _SEEDS[seed]
    for _ in range(depth):
        c = poisson_bracket(c, h)
        d = moyal_bracket(d, h)
        classical.append(c)
        deformed.append(d)
    return HierarchyLadders(seed=seed, classical=tuple(classical), deformed=tuple(deformed))


@dataclass(frozen=True)
class TimeTaylorFlow:
    """Truncated flow series: state(t) = sum_n t^n/n! coeffs[n].

    coeffs[0] is the seed symbol itself; kind records which bracket built
    the ladder.
    """

    kind: str
    seed: str
    depth: int
    coeffs: tuple[PhasePolynomial, ...]

    def evaluate(self, q: float, p: float, hbar: float, t: float) -> complex:
        acc = 0j
        tn = 1.0
        for n, c in enumerate(self.coeffs):
            if n:
                tn *= t / n
            acc += tn * c.evaluate(q, p, hbar)
        return acc

    def hbar2_grade_series(self) -> tuple[PhasePolynomial, ...]:
        from .poly import hbar_component

        return tuple(hbar_component(c, 2) for c in self.coeffs)


def taylor_flow(
    h: PhasePolynomial,
    depth: int,
    kind: str,
    seed: str,
    depth_cap: int = DEFAULT_TAYLOR_DEPTH_CAP,
) -> TimeTaylorFlow:
    """Time-Taylor coefficients of the classical or deformed flow of a seed."""
    if kind not in ("classical", "deformed"):
        raise ValueError("kind must be 'classical' or 'deformed'")
    ladders = iterated_brackets(h, depth, seed, depth_cap)
    ladder = ladders.classical if kind == "classical" else ladders.deformed
    return TimeTaylorFlow(
        kind=kind,
        seed=seed,
        depth=depth,
        coeffs=(_SEEDS[seed],) + ladder,
    )


@dataclass(frozen=True)
class DivergenceReport:
    """First Taylor order at which the deformed flow leaves the classical one."""

    seed: str
    first_divergent_order: int | None
    difference: PhasePolynomial
    per_order_equal: tuple[bool, ...]

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "first_divergent_order": self.first_divergent_order,
            "difference_polynomial": format_poly(self.difference),
            "per_order_equal": list(self.per_order_equal),
        }


def divergence_order(
    h: PhasePolynomial, depth: int, depth_cap: int = DEFAULT_TAYLOR_DEPTH_CAP
) -> dict[str, DivergenceReport]:
    """Compare the two ladders exactly for both seeds.

    The reported difference is the ladder entry Omega_n - Lambda_n at the
    first divergent order n; dividing by n! gives the Taylor-series
    coefficient of t^n.
    """
    out = {}
    for seed in ("q", "p"):
        ladders = iterated_brackets(h, depth, seed, depth_cap)
        equal = []
        first = None
        diff = PhasePolynomial.zero()
        for n0, (c, d) in enumerate(zip(ladders.classical, ladders.deformed)):
            same = c == d
            equal.append(same)
            if not same and first is None:
                first = n0 + 1
                diff = d - c
        out[seed] = DivergenceReport(
            seed=seed,
            first_divergent_order=first,
            difference=diff,
            per_order_equal=tuple(equal),
        )
    return out


# -- hbar^2 corrections, numeric ----------------------------------------


@dataclass(frozen=True)
class Hbar2Result:
    """Coefficients of hbar^2 in the trajectory correction at the sampled
    times (multiply by hbar^2 to get the correction itself)."""

    times: tuple[float, ...]
    q2: tuple[float, ...]
    p2: tuple[float, ...]
    method: str

    def to_csv(self) -> str:
        lines = ["t,Q2,P2,method"]
        for t, a, b in zip(self.times, self.q2, self.p2):
            lines.append(f"{t:.17g},{a:.17g},{b:.17g},{self.method}")
        return "\n".join(lines) + "\n"


def _h_partial_table(ham: HamiltonianSpec, max_order: int) -> dict:
    """Partials d_q^a d_p^b H for a+b <= max_order, as expressions."""
    table = {(0, 0): ham.expr}
    for total in range(1, max_order + 1):
        for a in range(total + 1):
            b = total - a
            if b > 0:
                table[(a, b)] = differentiate(table[(a, b - 1)], "p")
            else:
                table[(a, b)] = differentiate(table[(a - 1, 0)], "q")
    return table


def _grade_one_bracket_with_map(
    jq_or_jp: TruncatedJet, h_parts: dict, point_bindings
) -> float:
    """[map-component, H]_2 with map derivatives from an order-3 jet.

    Both derivative sets are taken at the jet's base point; the weight is
    the grade-one entry of the sine ladder, -1/24 times the cubed
    bidifferential.
    """
    acc = 0.0
    for j in range(4):
        a_map, b_map = 3 - j, j
        d_map = jq_or_jp.derivative(a_map, b_map)
        if d_map == 0.0:
            continue
        d_h = _eval_real(h_parts[(j, 3 - j)], point_bindings)
        c = math.comb(3, j) * (-1 if j & 1 else 1)
        acc += c * d_map * d_h
    return -acc / 24.0


def hbar2_transport(
    ham: HamiltonianSpec,
    z0: tuple[float, float],
    t_final: float,
    times: list[float] | None = None,
    quad_panels_per_unit: int = 64,
    steps_per_unit: int | None = None,
) -> Hbar2Result:
    """hbar^2 correction by quadrature along the classical trajectory.

    The correction at time T is the integral over s in [0, T] of the
    grade-one bracket of the duration-s flow map with H, the bracket taken
    at the point reached after time T - s.  Per quadrature node this
    integrates order-3 jets from that point for duration s; Simpson's rule
    assembles the integral.  Deterministic: panel counts and step counts
    are derived, not adaptive.
    """
    if times is None:
        times = [t_final]
    if any(t <= 0 or t > t_final + 1e-12 for t in times):
        raise ValueError("requested times must lie in (0, t_final]")
    per_unit = steps_per_unit if steps_per_unit is not None else 2000
    h_parts = _h_partial_table(ham, 3)
    out_q = []
    out_p = []
    for T in times:
        panels = max(8, math.ceil(quad_panels_per_unit * T))
        if panels % 2:
            panels += 1
        steps = max(panels, math.ceil(per_unit * T))
        steps = ((steps + panels - 1) // panels) * panels
        stride = steps // panels
        base = integrate_flow(ham, z0, T, steps)
        h_node = T / panels
        fq_vals = [0.0]
        fp_vals = [0.0]
        for k in range(1, panels + 1):
            w = base.states[steps - k * stride]
            jet_traj = integrate_flow_jets(ham, w, k * h_node, k * stride, order=3)
            # the final jets hold the duration-s map's derivatives, based at w
            jq, jp = jet_traj.jets[-1]
            b = {"q": w[0], "p": w[1], **ham.params}
            fq_vals.append(_grade_one_bracket_with_map(jq, h_parts, b))
            fp_vals.append(_grade_one_bracket_with_map(jp, h_parts, b))
        out_q.append(_simpson(fq_vals, h_node))
        out_p.append(_simpson(fp_vals, h_node))
    return Hbar2Result(
        times=tuple(times), q2=tuple(out_q), p2=tuple(out_p), method="transport"
    )


def _simpson(values: list[float], h: float) -> float:
    n = len(values) - 1
    acc = values[0] + values[n]
    for i in range(1, n):
        acc += values[i] * (4.0 if i % 2 else 2.0)
    return acc * h / 3.0


def hbar2_inhomogeneity(ham: HamiltonianSpec):
    """Builder for the inhomogeneous part of the hbar^2 correction equation.

    Returns a function of (jq, jp) order-2 jets producing the pair of
    driving terms.  The contraction couples the map's first and second
    derivatives (from the jets) to the second and third derivatives of the
    Hamiltonian vector field at the jets' value point:

        drive_r = -(1/16) sum_{ab} C1_ab d2F_r/dZa dZb
                  -(1/24) sum_{abc} C2_abc d3F_r/dZa dZb dZc

    with C1 and C2 the symplectic contractions of the map derivatives.
    """
    h_parts = _h_partial_table(ham, 4)

    # F = (dH/dp, -dH/dq); partials of F_r with respect to (q, p)
    def f_partial(r: int, a: int, b: int) -> Expr:
        if r == 0:
            return h_parts[(a, b + 1)]
        return mul(const(-1), h_parts[(a + 1, b)])

    f_tables: dict[int, dict[tuple[int, int], Expr]] = {0: {}, 1: {}}
    for r in (0, 1):
        for total in (2, 3):
            for a in range(total + 1):
                f_tables[r][(a, total - a)] = f_partial(r, a, total - a)

    def drive(jq: TruncatedJet, jp: TruncatedJet) -> tuple[float, float]:
        b = {"q": jq.value, "p": jp.value, **ham.params}
        maps = (jq, jp)
        d1 = [[m.derivative(1, 0), m.derivative(0, 1)] for m in maps]
        d2 = [
            [
                [m.derivative(2, 0), m.derivative(1, 1)],
                [m.derivative(1, 1), m.derivative(0, 2)],
            ]
            for m in maps
        ]
        c1 = [[0.0, 0.0], [0.0, 0.0]]
        c2 = [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]
        for a in range(2):
            for bb in range(2):
                c1[a][bb] = (
                    d2[a][0][0] * d2[bb][1][1]
                    - 2.0 * d2[a][0][1] * d2[bb][0][1]
                    + d2[a][1][1] * d2[bb][0][0]
                )
                for cc in range(2):
                    c2[a][bb][cc] = (
                        d2[a][0][0] * d1[bb][1] * d1[cc][1]
                        - d2[a][0][1]
                        * (d1[bb][1] * d1[cc][0] + d1[bb][0] * d1[cc][1])
                        + d2[a][1][1] * d1[bb][0] * d1[cc][0]
                    )
        out = []
        for r in (0, 1):
            table = f_tables[r]
            acc = 0.0
            # second-derivative contraction
            f2 = [
                [_eval_real(table[(2, 0)], b), _eval_real(table[(1, 1)], b)],
                [_eval_real(table[(1, 1)], b), _eval_real(table[(0, 2)], b)],
            ]
            for a in range(2):
                for bb in range(2):
                    acc -= c1[a][bb] * f2[a][bb] / 16.0
            f3 = {}
            for a3 in range(4):
                f3[a3] = _eval_real(table[(3 - a3, a3)], b)

            def f3_idx(i1, i2, i3):
                return f3[i1 + i2 + i3]

            for a in range(2):
                for bb in range(2):
                    for cc in range(2):
                        acc -= c2[a][bb][cc] * f3_idx(a, bb, cc) / 24.0
            out.append(acc)
        return out[0], out[1]

    return drive


def hbar2_ode(
    ham: HamiltonianSpec,
    z0: tuple[float, float],
    t_final: float,
    times: list[float] | None = None,
    steps: int | None = None,
) -> Hbar2Result:
    """hbar^2 correction by direct integration of its evolution equation.

    The correction pair rides along order-2 jets of the classical flow:
    its rate is the Jacobian of the Hamiltonian vector field applied to
    the current correction plus the jet-driven inhomogeneity.  Starts from
    zero correction and the identity jets.
    """
    if times is None:
        times = [t_final]
    if any(t < 0 or t > t_final + 1e-12 for t in times):
        raise ValueError("requested times must lie in [0, t_final]")
    if steps is None:
        steps = default_steps(t_final)
    h = t_final / steps
    drive = hbar2_inhomogeneity(ham)
    h_parts = _h_partial_table(ham, 2)
    jac = {
        (0, 0): h_parts[(1, 1)],       # dF_q/dq = H_qp
        (0, 1): h_parts[(0, 2)],       # dF_q/dp = H_pp
        (1, 0): mul(const(-1), h_parts[(2, 0)]),
        (1, 1): mul(const(-1), h_parts[(1, 1)]),
    }

    def rhs(state):
        jq, jp, z2q, z2p = state
        fq, fp = ham.field_jets(jq, jp, 2)
        b = {"q": jq.value, "p": jp.value, **ham.params}
        j00 = _eval_real(jac[(0, 0)], b)
        j01 = _eval_real(jac[(0, 1)], b)
        j10 = _eval_real(jac[(1, 0)], b)
        j11 = _eval_real(jac[(1, 1)], b)
        dq_drive, dp_drive = drive(jq, jp)
        return (
            fq,
            fp,
            j00 * z2q + j01 * z2p + dq_drive,
            j10 * z2q + j11 * z2p + dp_drive,
        )

    def step_state(state, rates, factor):
        jq, jp, z2q, z2p = state
        rq, rp, r2q, r2p = rates
        return (
            jq + rq.scale(factor),
            jp + rp.scale(factor),
            z2q + r2q * factor,
            z2p + r2p * factor,
        )

    state = (
        TruncatedJet.seed(z0[0], 0, 2),
        TruncatedJet.seed(z0[1], 1, 2),
        0.0,
        0.0,
    )
    want = sorted((t, i) for i, t in enumerate(times))
    results_q = [0.0] * len(times)
    results_p = [0.0] * len(times)
    wi = 0
    # record t = 0 requests before stepping
    while wi < len(want) and want[wi][0] <= 1e-15:
        results_q[want[wi][1]] = 0.0
        results_p[want[wi][1]] = 0.0
        wi += 1
    for k in range(steps):
        k1 = rhs(state)
        k2 = rhs(step_state(state, k1, 0.5 * h))
        k3 = rhs(step_state(state, k2, 0.5 * h))
        k4 = rhs(step_state(state, k3, h))
        jq = state[0] + (k1[0] + k2[0].scale(2.0) + k3[0].scale(2.0) + k4[0]).scale(h / 6.0)
        jp = state[1] + (k1[1] + k2[1].scale(2.0) + k3[1].scale(2.0) + k4[1]).scale(h / 6.0)
        z2q = state[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        z2p = state[3] + h / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        state = (jq, jp, z2q, z2p)
        t_now = (k + 1) * h
        while wi < len(want) and want[wi][0] <= t_now + 1e-9:
            if abs(want[wi][0] - t_now) > 1e-9:
                raise ValueError(
                    f"requested time {want[wi][0]} does not land on the step grid"
                )
            results_q[want[wi][1]] = z2q
            results_p[want[wi][1]] = z2p
            wi += 1
    return Hbar2Result(
        times=tuple(times), q2=tuple(results_q), p2=tuple(results_p), method="ode"
    )


# -- star-exponential second-order kernel --------------------------------


def star_exp_A2(b_expr: Expr) -> Expr:
    """Second deformation coefficient of the star exponential of B.

    Index form, with J the symplectic matrix on (q, p) and all indices
    summed:

        A2 = -J_ik J_jl (d_i d_j B) [ (1/16) d_k d_l B
                                      + (1/24) (d_k B)(d_l B) ]

    Built fully distributed so that structural comparison against an
    expected polynomial is exact after collection.
    """
    names = ("q", "p")
    first = {v: differentiate(b_expr, v) for v in names}
    second = {
        (a, bb): differentiate(first[a], bb) for a in names for bb in names
    }
    j_pairs = ((("q", "p"), 1), (("p", "q"), -1))
    pieces = []
    for (i, k), ji in j_pairs:
        for (j, l), jj in j_pairs:
            s = ji * jj
            dij = second[(i, j)]
            pieces.append(
                mul(const(Fraction(-s, 16)), dij, second[(k, l)])
            )
            pieces.append(
                mul(const(Fraction(-s, 24)), dij, first[k], first[l])
            )
    return add(*pieces)


# -- cubic-potential order-7 comparison ----------------------------------


@dataclass(frozen=True)
class CubicOrder7Report:
    """Exact order-7 ladder difference for V = q^3/6 against the quoted
    closed form 5 hbar^2 (V''')^3 / (4 m^4) (the t^7/7! coefficient scaled
    back to a ladder entry)."""

    agrees_through_order_6: dict[str, bool]
    difference_order_7: dict[str, str]
    quoted_order_7: str
    matches_quoted: dict[str, bool]

    def to_json_dict(self) -> dict:
        return {
            "agrees_through_order_6": self.agrees_through_order_6,
            "difference_order_7": self.difference_order_7,
            "quoted_order_7": self.quoted_order_7,
            "matches_quoted": self.matches_quoted,
        }


def cubic_order7_report(m=1) -> CubicOrder7Report:
    """Compare ladders at depth 7 for the cubic potential, both seeds."""
    m = Fraction(m)
    h = PhasePolynomial.monomial(Fraction(1, 2) / m, 0, 2, 0) + PhasePolynomial.monomial(
        Fraction(1, 6), 3, 0, 0
    )
    quoted = PhasePolynomial.monomial(Fraction(5, 4) / m ** 4, 0, 0, 2)
    agrees = {}
    diffs = {}
    matches = {}
    for seed in ("q", "p"):
        ladders = iterated_brackets(h, 7, seed)
        agrees[seed] = all(
            c == d
            for c, d in zip(ladders.classical[:6], ladders.deformed[:6])
        )
        diff7 = ladders.deformed[6] - ladders.classical[6]
        diffs[seed] = format_poly(diff7)
        matches[seed] = diff7 == quoted
    return CubicOrder7Report(
        agrees_through_order_6=agrees,
        difference_order_7=diffs,
        quoted_order_7=format_poly(quoted),
        matches_quoted=matches,
    )
