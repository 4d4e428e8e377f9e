"""Classical Hamiltonian flow with optional variational jets.

Fixed-step fourth-order Runge-Kutta on Hamilton's equations.  A classic
symplectic integrator was deliberately not used: runs here are short and
the acceptance thresholds are on raw accuracy, which the fixed-step RK4
meets with margin at the default resolution; energy drift and the unit
determinant of the linearization are *checked*, not enforced, so the
integrator must not hide its own error.

Jets ride through the same integrator, which turns the flow map's mixed
partials with respect to the initial point into ordinary state components
(no hand-derived variational equations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .expr import (
    Add,
    Call,
    Const,
    Expr,
    ExprDomainError,
    Mul,
    Pi,
    Pow,
    Sym,
    differentiate,
    eval_expr,
    free_symbols,
)
from .jets import MONOMIALS, TruncatedJet, eval_expr_jet, jet_function_derivatives

__all__ = [
    "HamiltonianSpec",
    "Trajectory",
    "FlowBlowupError",
    "integrate_flow",
    "integrate_flow_jets",
    "check_energy",
    "check_symplectic",
    "check_transport",
    "default_steps",
    "STEPS_PER_UNIT_TIME",
]

STEPS_PER_UNIT_TIME = 2000
_PROBE_POINTS = ((0.3, 0.7), (-1.1, 0.4), (0.9, -1.3))
_REALNESS_TOL = 1e-12


class FlowBlowupError(RuntimeError):
    """The state left the representable range mid-integration."""

    def __init__(self, time: float):
        super().__init__(f"flow became non-finite near t = {time}")
        self.time = time


def _eval_real(e: Expr, bindings) -> float:
    """Float-only expression evaluation; the flow toolkit never needs i."""
    tn = type(e)
    if tn is Const:
        if e.value.im != 0:
            raise ExprDomainError("flow evaluation needs real constants")
        return float(e.value.re)
    if tn is Sym:
        try:
            return bindings[e.name]
        except KeyError:
            raise ExprDomainError(f"unbound symbol '{e.name}'") from None
    if tn is Pi:
        return math.pi
    if tn is Add:
        return sum(_eval_real(t, bindings) for t in e.terms)
    if tn is Mul:
        out = 1.0
        for f in e.factors:
            out *= _eval_real(f, bindings)
        return out
    if tn is Pow:
        b = _eval_real(e.base, bindings)
        if e.exp < 0 and b == 0.0:
            raise ExprDomainError("zero raised to a negative power")
        return b ** e.exp
    if tn is Call:
        return jet_function_derivatives(e.fn, _eval_real(e.arg, bindings))[0]
    raise TypeError(f"cannot evaluate {tn.__name__}")


class HamiltonianSpec:
    """A time- and deformation-independent real Hamiltonian with numeric
    parameter values.

    The expression may mention q, p and any names bound in ``params``;
    ``t`` and ``hbar`` are rejected, and realness is probed at a few fixed
    points on construction.
    """

    def __init__(self, expr: Expr, params: dict[str, float] | None = None):
        self.expr = expr
        self.params = dict(params or {})
        free = free_symbols(expr)
        allowed = {"q", "p"} | set(self.params)
        extra = free - allowed
        if extra:
            raise ValueError(f"unbound Hamiltonian symbols: {sorted(extra)}")
        if "t" in free or "hbar" in free:
            raise ValueError("the Hamiltonian must not depend on t or hbar")
        for q0, p0 in _PROBE_POINTS:
            try:
                v = eval_expr(expr, {"q": q0, "p": p0, **self.params})
            except ExprDomainError:
                continue
            if abs(v.imag) > _REALNESS_TOL:
                raise ValueError("the Hamiltonian is not real-valued")
        self.dq = differentiate(expr, "q")
        self.dp = differentiate(expr, "p")

    def field(self, q: float, p: float) -> tuple[float, float]:
        b = {"q": q, "p": p, **self.params}
        return _eval_real(self.dp, b), -_eval_real(self.dq, b)

    def field_jets(
        self, jq: TruncatedJet, jp: TruncatedJet, order: int
    ) -> tuple[TruncatedJet, TruncatedJet]:
        b = {"q": jq, "p": jp, **self.params}
        return (
            eval_expr_jet(self.dp, b, order),
            eval_expr_jet(self.dq, b, order).scale(-1.0),
        )

    def energy(self, q: float, p: float) -> float:
        return _eval_real(self.expr, {"q": q, "p": p, **self.params})


def default_steps(t_final: float) -> int:
    return max(1, round(STEPS_PER_UNIT_TIME * abs(t_final)))


@dataclass
class Trajectory:
    """Sampled flow: states at every integrator step, jets optional.

    Jet columns in the CSV follow the graded lexicographic multi-index
    order of the displacement monomials: for order 1 that is dQdq, dQdp,
    dPdq, dPdp; order 2 appends d2Qdq2, d2Qdqdp, d2Qdp2 and the P row of
    the same, and so on.  Values are mixed partials with factorials
    restored.
    """

    times: list[float]
    states: list[tuple[float, float]]
    jet_order: int = 0
    jets: list[tuple[TruncatedJet, TruncatedJet]] = field(default_factory=list)

    def _jet_headers(self) -> list[str]:
        out = []
        for z in ("Q", "P"):
            for a, b in MONOMIALS[self.jet_order][1:]:
                total = a + b
                prefix = f"d{total if total > 1 else ''}{z}"
                tail = ""
                if a:
                    tail += f"dq{a if a > 1 else ''}"
                if b:
                    tail += f"dp{b if b > 1 else ''}"
                out.append(prefix + tail)
        return out

    def to_csv(self) -> str:
        header = ["t", "Q", "P"]
        if self.jet_order:
            header.extend(self._jet_headers())
        lines = [",".join(header)]
        for i, t in enumerate(self.times):
            row = [f"{t:.17g}", f"{self.states[i][0]:.17g}", f"{self.states[i][1]:.17g}"]
            if self.jet_order:
                jq, jp = self.jets[i]
                for jet in (jq, jp):
                    for a, b in MONOMIALS[self.jet_order][1:]:
                        row.append(f"{jet.derivative(a, b):.17g}")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _rk4_scalar(ham: HamiltonianSpec, q: float, p: float, h: float):
    k1q, k1p = ham.field(q, p)
    k2q, k2p = ham.field(q + 0.5 * h * k1q, p + 0.5 * h * k1p)
    k3q, k3p = ham.field(q + 0.5 * h * k2q, p + 0.5 * h * k2p)
    k4q, k4p = ham.field(q + h * k3q, p + h * k3p)
    return (
        q + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q),
        p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
    )


def integrate_flow(
    ham: HamiltonianSpec,
    z0: tuple[float, float],
    t_final: float,
    steps: int | None = None,
) -> Trajectory:
    """Integrate Hamilton's equations from z0 over [0, t_final].

    Negative t_final integrates backwards.  Raises
    :class:`FlowBlowupError` when the state stops being finite.
    """
    if steps is None:
        steps = default_steps(t_final)
    h = t_final / steps
    q, p = z0
    times = [0.0]
    states = [(q, p)]
    for k in range(steps):
        # float overflow inside a stage surfaces as OverflowError
        try:
            q, p = _rk4_scalar(ham, q, p, h)
        except OverflowError:
            raise FlowBlowupError((k + 1) * h) from None
        if not (math.isfinite(q) and math.isfinite(p)):
            raise FlowBlowupError((k + 1) * h)
        times.append((k + 1) * h)
        states.append((q, p))
    return Trajectory(times=times, states=states)


def integrate_flow_jets(
    ham: HamiltonianSpec,
    z0: tuple[float, float],
    t_final: float,
    steps: int | None = None,
    order: int = 1,
) -> Trajectory:
    """Same flow with the state widened to jets of the given order.

    The initial jets are the identity map's: unit first derivatives,
    nothing higher.
    """
    if order not in MONOMIALS:
        raise ValueError("jet order must be 1, 2 or 3")
    if steps is None:
        steps = default_steps(t_final)
    h = t_final / steps
    jq = TruncatedJet.seed(z0[0], 0, order)
    jp = TruncatedJet.seed(z0[1], 1, order)
    times = [0.0]
    states = [(jq.value, jp.value)]
    jets = [(jq, jp)]
    for k in range(steps):
        try:
            k1q, k1p = ham.field_jets(jq, jp, order)
            k2q, k2p = ham.field_jets(jq + k1q.scale(0.5 * h), jp + k1p.scale(0.5 * h), order)
            k3q, k3p = ham.field_jets(jq + k2q.scale(0.5 * h), jp + k2p.scale(0.5 * h), order)
            k4q, k4p = ham.field_jets(jq + k3q.scale(h), jp + k3p.scale(h), order)
            jq = jq + (k1q + k2q.scale(2.0) + k3q.scale(2.0) + k4q).scale(h / 6.0)
            jp = jp + (k1p + k2p.scale(2.0) + k3p.scale(2.0) + k4p).scale(h / 6.0)
        except OverflowError:
            raise FlowBlowupError((k + 1) * h) from None
        if not (math.isfinite(jq.value) and math.isfinite(jp.value)):
            raise FlowBlowupError((k + 1) * h)
        times.append((k + 1) * h)
        states.append((jq.value, jp.value))
        jets.append((jq, jp))
    return Trajectory(times=times, states=states, jet_order=order, jets=jets)


def check_energy(traj: Trajectory, ham: HamiltonianSpec) -> float:
    """Largest drift of the conserved energy along the trajectory."""
    e0 = ham.energy(*traj.states[0])
    return max(abs(ham.energy(q, p) - e0) for q, p in traj.states)


def check_symplectic(traj: Trajectory) -> float:
    """Largest deviation of det(d flow / d initial) from one."""
    if traj.jet_order < 1:
        raise ValueError("check_symplectic needs a trajectory with jets")
    worst = 0.0
    for jq, jp in traj.jets:
        det = (
            jq.derivative(1, 0) * jp.derivative(0, 1)
            - jq.derivative(0, 1) * jp.derivative(1, 0)
        )
        worst = max(worst, abs(det - 1.0))
    return worst


def check_transport(
    a0: Expr,
    ham: HamiltonianSpec,
    z0: tuple[float, float],
    t_final: float,
    steps: int | None = None,
    stride: int | None = None,
) -> float:
    """Residual of d/dt A(flow) = {A, H}(flow) along the trajectory.

    The time derivative is a central difference on the stored grid, so the
    residual carries an O(h^2) truncation floor; at the default resolution
    that floor sits well under 1e-6 for the bundled Hamiltonians.
    """
    traj = integrate_flow(ham, z0, t_final, steps)
    n = len(traj.times)
    if stride is None:
        stride = max(1, (n - 1) // 256)
    h = traj.times[1] - traj.times[0]
    pb = _transport_rhs(a0, ham)
    worst = 0.0
    for i in range(stride, n - 1, stride):
        qm, pm = traj.states[i - 1]
        qp_, pp_ = traj.states[i + 1]
        qc, pc = traj.states[i]
        b = lambda q, p: {"q": q, "p": p, **ham.params}
        dadt = (_eval_real(a0, b(qp_, pp_)) - _eval_real(a0, b(qm, pm))) / (2.0 * h)
        rhs = _eval_real(pb, b(qc, pc))
        worst = max(worst, abs(dadt - rhs))
    return worst


def _transport_rhs(a0: Expr, ham: HamiltonianSpec) -> Expr:
    from .brackets import poisson_expr

    return poisson_expr(a0, ham.expr)
