"""Geometric-program inner solver and the successive-condensation outer loop.

The inner solver works in log space: a posynomial becomes a log-sum-exp
function of the log variables, every constraint ``f(x) <= 1`` becomes
``log f <= 0``, and variable bounds become box constraints. A standard
barrier path follows the central path with damped Newton inner steps;
the barrier parameter grows tenfold per stage starting from 1 until the
duality measure drops below 1e-9.

The outer loop handles ratio constraints ``num/den <= 1`` whose
denominators are full posynomials: each denominator is condensed into
its tight monomial lower bound at the current iterate, the resulting
geometric program is solved, and the loop repeats until the objective
stops improving. Because the condensed feasible set is contained in the
true one, every iterate satisfies the original constraints and the
objective sequence never increases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from .beamforming import Precoder, incident_powers, mrt_precoder, object_steering_matrix
from .combining import equivalent_channels, zf_combiner
from .posynomials import (
    Monomial,
    Posynomial,
    VarId,
    VarKind,
    amplification,
    build_mrc_sinr_signomial,
    condensation_weights,
    condense,
    evaluate,
    linear_posynomial,
    sinr_ratio_constraint,
    tx_power,
)
from .scene import ChannelSet, Scene

__all__ = [
    "Infeasible",
    "StartInfeasible",
    "NumericalFailure",
    "Termination",
    "GpProblem",
    "SpProblem",
    "SolveTrace",
    "solve_gp",
    "solve_sp",
    "find_feasible_start",
    "build_joint_mrc_problem",
    "build_txonly_problem",
    "max_constraint_ratio",
    "VARIABLE_FLOOR",
]

VARIABLE_FLOOR = 1e-9  # positive lower bound keeping log-space well defined
_DUALITY_MEASURE = 1e-9
_BARRIER_GROWTH = 10.0
_MAX_HALVINGS = 40


class Infeasible(Exception):
    """No strictly feasible point exists (or none could be found)."""


class StartInfeasible(Exception):
    """The supplied starting point violates the original ratio constraints."""


class NumericalFailure(Exception):
    """The damped Newton iteration stalled; details are in the message."""


class Termination(Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class GpProblem:
    """Minimize a posynomial subject to posynomial constraints ``f(x) <= 1``.

    ``bounds`` defines the variable set: every variable used by the
    objective or a constraint must have finite positive bounds.
    """

    objective: Posynomial
    constraints: tuple[Posynomial, ...]
    bounds: Mapping[VarId, tuple[float, float]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "bounds", dict(self.bounds))
        if not self.objective.terms:
            raise ValueError("objective posynomial is empty")
        for var, (lo, hi) in self.bounds.items():
            if not (0 < lo < hi) or not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"bad bounds for {var}: ({lo!r}, {hi!r})")
        used = self.objective.variables()
        for c in self.constraints:
            used |= c.variables()
        missing = used - set(self.bounds)
        if missing:
            raise ValueError(f"variables without bounds: {sorted(map(str, missing))}")


@dataclass(frozen=True)
class SpProblem:
    """Posynomial objective with ratio constraints ``num/den <= 1``."""

    objective: Posynomial
    ratio_constraints: tuple[tuple[Posynomial, Posynomial], ...]
    bounds: Mapping[VarId, tuple[float, float]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratio_constraints", tuple(self.ratio_constraints))
        object.__setattr__(self, "bounds", dict(self.bounds))
        if not self.objective.terms:
            raise ValueError("objective posynomial is empty")
        for num, den in self.ratio_constraints:
            if not den.terms:
                raise ValueError(f"ratio constraint with empty denominator (num: {num})")


@dataclass
class SolveTrace:
    """Per-iteration record of one successive-condensation run.

    ``objectives[0]`` is the objective at the starting point; entry q is
    the value after the q-th condensed subproblem. ``weights[q]`` holds
    the condensation weight vector of each ratio constraint used to
    build subproblem q+1. The objective sequence never increases.
    """

    objectives: list[float] = field(default_factory=list)
    assignments: list[dict[VarId, float]] = field(default_factory=list)
    weights: list[list[np.ndarray]] = field(default_factory=list)
    termination: Termination = Termination.MAX_ITERATIONS

    @property
    def iterations(self) -> int:
        return len(self.objectives) - 1


class _LogSumExp:
    """Log of a posynomial under the substitution x = exp(y)."""

    __slots__ = ("a", "b")

    def __init__(self, posy: Posynomial, var_index: Mapping[VarId, int]):
        n_terms = len(posy.terms)
        self.a = np.zeros((n_terms, len(var_index)))
        self.b = np.empty(n_terms)
        for t, m in enumerate(posy.terms):
            self.b[t] = math.log(m.coefficient)
            for var, e in m.exponents.items():
                self.a[t, var_index[var]] = e

    def value(self, y: np.ndarray) -> float:
        z = self.a @ y + self.b
        zmax = z.max()
        return float(zmax + math.log(np.exp(z - zmax).sum()))

    def value_grad_hess(self, y: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        z = self.a @ y + self.b
        zmax = z.max()
        ez = np.exp(z - zmax)
        total = ez.sum()
        s = ez / total
        grad = self.a.T @ s
        hess = (self.a * s[:, None]).T @ self.a - np.outer(grad, grad)
        return float(zmax + math.log(total)), grad, hess


def _solve_newton_system(hess: np.ndarray, grad: np.ndarray) -> np.ndarray:
    # Late barrier stages produce Hessians whose diagonal spans many
    # orders of magnitude; symmetric Jacobi scaling keeps the solve
    # accurate where a raw factorization loses the step direction.
    d = np.sqrt(np.clip(np.diag(hess), 1e-30, None))
    scaled = hess / np.outer(d, d)
    rhs = -grad / d
    ridge = 0.0
    for _ in range(6):
        try:
            step = np.linalg.solve(
                scaled + ridge * np.eye(scaled.shape[0]), rhs
            )
        except np.linalg.LinAlgError:
            step = None
        if step is not None and np.all(np.isfinite(step)):
            return step / d
        ridge = 1e-12 if ridge == 0.0 else ridge * 100.0
    raise NumericalFailure("Newton system could not be solved (singular Hessian)")


def _stage_tolerance(tolerance: float, t: float) -> float:
    """Newton-decrement target for one barrier stage.

    A fixed absolute decrement is unreachable in float64 once ``t`` is
    large (the barrier objective scales with ``t``, so so does the
    decrement's noise floor). Loosening the centering proportionally to
    ``t`` adds a duality-gap term of order sqrt(tol·t)/t, which stays
    orders of magnitude below the stopping measure.
    """
    return max(tolerance, min(1e-2, 1e-13 * t))


def _damped_newton(
    fun: Callable[[np.ndarray, bool], object],
    y0: np.ndarray,
    tol: float,
    max_iters: int,
    context: str,
) -> np.ndarray:
    """Minimize a smooth strictly convex barrier objective.

    ``fun(y, True)`` returns (value, gradient, Hessian); ``fun(y, False)``
    returns the value alone (+inf outside the barrier domain). Stops when
    the Newton decrement drops below ``tol``; a line search that cannot
    reduce the merit function within the halving budget raises
    :class:`NumericalFailure` unless the decrement is already at the
    numeric floor.
    """
    y = np.asarray(y0, dtype=float).copy()
    f, grad, hess = fun(y, True)
    if not math.isfinite(f):
        raise NumericalFailure(f"{context}: starting point outside barrier domain")
    lam2 = math.inf
    for _ in range(max_iters):
        step = _solve_newton_system(hess, grad)
        lam2 = float(-(grad @ step))
        if lam2 / 2.0 <= tol:
            return y
        alpha = 1.0
        slope = -lam2
        for _ in range(_MAX_HALVINGS):
            cand = y + alpha * step
            fc = fun(cand, False)
            if fc <= f + 1e-2 * alpha * slope:
                break
            alpha *= 0.5
        else:
            if lam2 / 2.0 <= 1e-6 * (1.0 + abs(f)):
                return y  # progress limited by floating point, already near optimal
            raise NumericalFailure(
                f"{context}: line search stalled after {_MAX_HALVINGS} halvings "
                f"(decrement {lam2:.3e}, value {f:.6e})"
            )
        y = cand
        f, grad, hess = fun(y, True)
    if lam2 / 2.0 <= 1e3 * tol:
        return y
    raise NumericalFailure(
        f"{context}: Newton iteration cap {max_iters} reached with decrement {lam2:.3e}"
    )


def _make_barrier_fun(
    t: float,
    objective: _LogSumExp,
    constraints: Sequence[_LogSumExp],
    lo: np.ndarray,
    hi: np.ndarray,
):
    n = lo.size

    def fun(y: np.ndarray, derivs: bool):
        dl = y - lo
        du = hi - y
        if np.any(dl <= 0) or np.any(du <= 0):
            return math.inf if not derivs else (math.inf, None, None)
        if not derivs:
            val = t * objective.value(y)
            for c in constraints:
                phi = c.value(y)
                if phi >= 0:
                    return math.inf
                val -= math.log(-phi)
            return val - float(np.log(dl).sum() + np.log(du).sum())
        val, grad, hess = objective.value_grad_hess(y)
        val *= t
        grad = t * grad
        hess = t * hess
        for c in constraints:
            phi, g, h = c.value_grad_hess(y)
            if phi >= 0:
                return math.inf, None, None
            val -= math.log(-phi)
            grad += g / (-phi)
            hess += np.outer(g, g) / phi**2 + h / (-phi)
        val -= float(np.log(dl).sum() + np.log(du).sum())
        grad += 1.0 / du - 1.0 / dl
        hess[np.diag_indices(n)] += 1.0 / dl**2 + 1.0 / du**2
        return val, grad, hess

    return fun


def _make_phase1_fun(
    t: float, constraints: Sequence[_LogSumExp], lo: np.ndarray, hi: np.ndarray
):
    n = lo.size

    def fun(z: np.ndarray, derivs: bool):
        y = z[:-1]
        s = z[-1]
        dl = y - lo
        du = hi - y
        if np.any(dl <= 0) or np.any(du <= 0):
            return math.inf if not derivs else (math.inf, None, None)
        if not derivs:
            val = t * s
            for c in constraints:
                gap = s - c.value(y)
                if gap <= 0:
                    return math.inf
                val -= math.log(gap)
            return val - float(np.log(dl).sum() + np.log(du).sum())
        val = t * s
        grad = np.zeros(n + 1)
        hess = np.zeros((n + 1, n + 1))
        grad[-1] = t
        for c in constraints:
            phi, g, h = c.value_grad_hess(y)
            gap = s - phi
            if gap <= 0:
                return math.inf, None, None
            val -= math.log(gap)
            grad[:-1] += g / gap
            grad[-1] -= 1.0 / gap
            hess[:n, :n] += np.outer(g, g) / gap**2 + h / gap
            hess[:n, -1] -= g / gap**2
            hess[-1, :n] -= g / gap**2
            hess[-1, -1] += 1.0 / gap**2
        val -= float(np.log(dl).sum() + np.log(du).sum())
        grad[:-1] += 1.0 / du - 1.0 / dl
        hess[np.diag_indices(n)] += 1.0 / dl**2 + 1.0 / du**2
        return val, grad, hess

    return fun


def _feasible_point(
    constraints: Sequence[_LogSumExp],
    lo: np.ndarray,
    hi: np.ndarray,
    y0: np.ndarray | None,
    tol: float,
    max_newton_iters: int,
) -> tuple[np.ndarray, float]:
    """Barrier phase: minimize the worst log-constraint value over the box.

    Returns ``(y, max_phi)``; ``max_phi < 0`` means ``y`` is strictly
    feasible. Exits early once a comfortably interior point is found.
    """
    margin = 1e-9 * (hi - lo)
    y = (lo + hi) / 2.0 if y0 is None else np.clip(y0, lo + margin, hi - margin)
    if not constraints:
        return y, -math.inf
    phis = [c.value(y) for c in constraints]
    max_phi = max(phis)
    if max_phi < -1e-7:
        return y, max_phi
    z = np.append(y, max_phi + 1.0)
    m_total = len(constraints) + 2 * lo.size
    t = 1.0
    while True:
        z = _damped_newton(
            _make_phase1_fun(t, constraints, lo, hi),
            z,
            _stage_tolerance(tol, t),
            max_newton_iters,
            "phase-1",
        )
        y = z[:-1]
        max_phi = max(c.value(y) for c in constraints)
        if max_phi < -1e-7 or m_total / t < _DUALITY_MEASURE:
            return y, max_phi
        t *= _BARRIER_GROWTH


def _compile(problem: GpProblem):
    variables = sorted(problem.bounds, key=VarId.sort_key)
    var_index = {v: i for i, v in enumerate(variables)}
    lo = np.array([math.log(problem.bounds[v][0]) for v in variables])
    hi = np.array([math.log(problem.bounds[v][1]) for v in variables])
    objective = _LogSumExp(problem.objective, var_index)
    constraints = [
        _LogSumExp(c, var_index) for c in problem.constraints if c.terms
    ]
    return variables, lo, hi, objective, constraints


def solve_gp(
    problem: GpProblem,
    tolerance: float = 1e-8,
    max_newton_iters: int = 200,
    *,
    warm_start: Mapping[VarId, float] | None = None,
) -> dict[VarId, float]:
    """Solve a geometric program to the stated duality measure.

    Runs a feasibility phase when no strictly feasible warm start is
    supplied, then follows the central path. The returned assignment
    satisfies every constraint strictly (below ``1 + 1e-8``) and its
    objective is within the barrier duality gap of the optimum.

    Raises :class:`Infeasible` when no strictly feasible point exists and
    :class:`NumericalFailure` when Newton progress stalls.
    """
    variables, lo, hi, objective, constraints = _compile(problem)
    margin = 1e-9 * (hi - lo)

    y = None
    y_hint = None
    if warm_start is not None and all(v in warm_start for v in variables):
        y_hint = np.clip(
            np.array([math.log(warm_start[v]) for v in variables]),
            lo + margin,
            hi - margin,
        )
        if all(c.value(y_hint) < -1e-9 for c in constraints):
            y = y_hint
    if y is None:
        y, max_phi = _feasible_point(
            constraints, lo, hi, y_hint, tolerance, max_newton_iters
        )
        if max_phi >= 0:
            raise Infeasible(
                f"no strictly feasible point (best max log-constraint {max_phi:.3e})"
            )

    m_total = len(constraints) + 2 * lo.size
    t = 1.0
    while True:
        y = _damped_newton(
            _make_barrier_fun(t, objective, constraints, lo, hi),
            y,
            _stage_tolerance(tolerance, t),
            max_newton_iters,
            f"barrier t={t:g}",
        )
        if m_total / t < _DUALITY_MEASURE:
            break
        t *= _BARRIER_GROWTH
    return {v: math.exp(y[i]) for i, v in enumerate(variables)}


def max_constraint_ratio(
    problem: SpProblem | GpProblem, point: Mapping[VarId, float]
) -> float:
    """Largest constraint value at ``point`` (``num/den`` for ratio forms)."""
    worst = 0.0
    if isinstance(problem, GpProblem):
        for con in problem.constraints:
            if con.terms:
                worst = max(worst, evaluate(con, point))
        return worst
    for num, den in problem.ratio_constraints:
        if not num.terms:
            continue
        worst = max(worst, evaluate(num, point) / evaluate(den, point))
    return worst


def _condensed_gp(
    problem: SpProblem, point: Mapping[VarId, float]
) -> tuple[GpProblem, list[np.ndarray]]:
    constraints = []
    weights = []
    for num, den in problem.ratio_constraints:
        weights.append(condensation_weights(den, point))
        if num.terms:
            constraints.append(num / condense(den, point))
    return (
        GpProblem(problem.objective, tuple(constraints), problem.bounds),
        weights,
    )


def solve_sp(
    problem: SpProblem,
    start: Mapping[VarId, float],
    rel_tol: float = 1e-6,
    max_outer_iters: int = 50,
) -> tuple[dict[VarId, float], SolveTrace]:
    """Successive condensation from a feasible starting point.

    Each round condenses every ratio denominator at the incumbent,
    solves the resulting geometric program, and accepts the solution if
    it improves the objective (the incumbent is kept otherwise, which
    makes the recorded objective sequence monotone). Stops when the
    relative improvement falls below ``rel_tol`` or after
    ``max_outer_iters`` rounds. The final point always satisfies the
    original ratio constraints.
    """
    x = {v: float(val) for v, val in start.items()}
    ratio = max_constraint_ratio(problem, x)
    if ratio > 1.0 + 1e-6:
        raise StartInfeasible(
            f"starting point violates the ratio constraints (max ratio {ratio:.6g})"
        )
    obj = evaluate(problem.objective, x)
    trace = SolveTrace(objectives=[obj], assignments=[dict(x)])
    for _ in range(max_outer_iters):
        gp, weights = _condensed_gp(problem, x)
        trace.weights.append(weights)
        try:
            cand = solve_gp(gp, warm_start=x)
        except Infeasible as exc:
            raise NumericalFailure(
                f"condensed subproblem reported infeasible from a feasible incumbent: {exc}"
            ) from exc
        cand_obj = evaluate(problem.objective, cand)
        if cand_obj > obj:
            cand, cand_obj = x, obj  # keep the incumbent; monotone by construction
        trace.objectives.append(cand_obj)
        trace.assignments.append(dict(cand))
        improved = (obj - cand_obj) / max(obj, 1e-300)
        x, obj = dict(cand), cand_obj
        if improved < rel_tol:
            trace.termination = Termination.CONVERGED
            break
    final_ratio = max_constraint_ratio(problem, x)
    if final_ratio > 1.0 + 1e-6:
        raise NumericalFailure(
            f"exit point violates the original constraints (max ratio {final_ratio:.6g})"
        )
    return x, trace


def _naive_start(problem: SpProblem, scene: Scene) -> dict[VarId, float]:
    start = {}
    n_targets = scene.n_targets
    for var, (lo_v, hi_v) in problem.bounds.items():
        if var.kind is VarKind.TX_POWER:
            val = scene.p_max / n_targets
        else:
            val = scene.sensors.alpha_max
        start[var] = min(max(val, lo_v), hi_v)
    return start


def find_feasible_start(problem: SpProblem, scene: Scene) -> dict[VarId, float]:
    """Feasible starting point for :func:`solve_sp`.

    Tries the maximum-power loading (every target at ``p_max/N``, every
    sensor at ``alpha_max``) first. Otherwise runs condensed feasibility
    phases that maximize the constraint slack, re-expanding at each new
    point; raises :class:`Infeasible` once the attainable slack stops
    improving while some constraint ratio still exceeds one.
    """
    x = _naive_start(problem, scene)
    if max_constraint_ratio(problem, x) <= 1.0 + 1e-9:
        return x
    variables = sorted(problem.bounds, key=VarId.sort_key)
    var_index = {v: i for i, v in enumerate(variables)}
    lo = np.array([math.log(problem.bounds[v][0]) for v in variables])
    hi = np.array([math.log(problem.bounds[v][1]) for v in variables])
    best_ratio = math.inf
    for _ in range(25):
        condensed = []
        for num, den in problem.ratio_constraints:
            if num.terms:
                condensed.append(_LogSumExp(num / condense(den, x), var_index))
        y0 = np.array([math.log(x[v]) for v in variables])
        y, _ = _feasible_point(condensed, lo, hi, y0, 1e-8, 200)
        x = {v: math.exp(y[i]) for i, v in enumerate(variables)}
        ratio = max_constraint_ratio(problem, x)
        if ratio <= 1.0 + 1e-9:
            return x
        if ratio >= best_ratio - 1e-9:
            raise Infeasible(
                f"feasibility phase stalled with max constraint ratio {ratio:.6g}"
            )
        best_ratio = ratio
    raise Infeasible(
        f"feasibility phase did not reach the feasible set (max ratio {best_ratio:.6g})"
    )


def _delta_coefficients(scene: Scene) -> np.ndarray:
    a = object_steering_matrix(scene)
    u = mrt_precoder(a[: scene.n_targets])
    _, coefs = incident_powers(
        scene, Precoder(directions=u, powers=np.ones(scene.n_targets))
    )
    return coefs


def _power_cap_constraint(scene: Scene) -> tuple[Posynomial, Posynomial]:
    num = linear_posynomial(
        {tx_power(t): 1.0 / scene.p_max for t in range(scene.n_targets)}
    )
    den = Posynomial((Monomial(1.0, {}),))
    return num, den


def build_joint_mrc_problem(scene: Scene, channels: ChannelSet) -> SpProblem:
    """Joint transmit-power and amplification design under MRC.

    Objective is the total resource ``sum(p) + sum(alpha)``; one ratio
    constraint per target enforces its SINR demand and one more caps the
    total transmit power at ``p_max``.
    """
    n = scene.n_targets
    k = scene.sensors.sensor_count
    coefs = _delta_coefficients(scene)
    objective = linear_posynomial(
        {tx_power(t): 1.0 for t in range(n)}
    ) + linear_posynomial({amplification(i): 1.0 for i in range(k)})
    ratios = []
    for j in range(n):
        terms = build_mrc_sinr_signomial(j, scene, channels, coefs)
        ratios.append(sinr_ratio_constraint(terms, scene.sinr_demands[j]))
    ratios.append(_power_cap_constraint(scene))
    bounds: dict[VarId, tuple[float, float]] = {}
    for t in range(n):
        bounds[tx_power(t)] = (VARIABLE_FLOOR, scene.p_max)
    for i in range(k):
        bounds[amplification(i)] = (VARIABLE_FLOOR, scene.sensors.alpha_max)
    return SpProblem(objective, tuple(ratios), bounds)


def build_txonly_problem(
    scene: Scene, channels: ChannelSet, combiner: str
) -> SpProblem:
    """Transmit-power-only design with every amplification frozen at its cap.

    The frozen amplification budget stays in the objective as a constant
    so objective values remain comparable with the joint design. With
    ``combiner="zf"`` the interference term is identically zero and each
    SINR constraint reduces to a noise-over-signal ratio; MRC keeps its
    interference terms, which are plain posynomials in the powers once
    the amplifications are constants.
    """
    n = scene.n_targets
    k = scene.sensors.sensor_count
    alpha = np.full(k, scene.sensors.alpha_max)
    coefs = _delta_coefficients(scene)
    q = scene.response_powers
    objective = linear_posynomial({tx_power(t): 1.0 for t in range(n)}) + Monomial(
        float(k * scene.sensors.alpha_max), {}
    )

    def delta_posy(i: int, scale: float) -> Posynomial:
        return linear_posynomial(
            {tx_power(t): float(coefs[i, t]) * scale for t in range(n)}
        )

    ratios: list[tuple[Posynomial, Posynomial]] = []
    if combiner == "mrc":
        g, f = channels.g, channels.f
        fn2 = np.sum(np.abs(f) ** 2, axis=1)
        sigma_n = scene.sensors.sensor_noise_var
        sigma_fc = scene.fusion.fc_noise_var
        for j in range(n):
            psi = scene.sinr_demands[j]
            self_gain = float(np.sum(alpha * np.abs(g[j]) ** 2 * fn2))
            den = delta_posy(j, float(q[j]) * self_gain**2)
            num = Posynomial(())
            for i in range(scene.n_objects):
                if i == j:
                    continue
                cross = abs(np.sum(alpha * g[j] * g[i].conj() * fn2)) ** 2
                num = num + delta_posy(i, float(q[i]) * float(cross) * psi)
            noise = float(
                np.sum(sigma_n * alpha**2 * np.abs(g[j]) ** 2 * fn2**2)
            ) + sigma_fc * self_gain
            num = num + Monomial(psi * noise, {})
            ratios.append((num, den))
    elif combiner == "zf":
        eq = equivalent_channels(channels, alpha, scene.sensors.sensor_noise_var)
        comb = zf_combiner(eq, n)
        for j in range(n):
            psi = scene.sinr_demands[j]
            v = comb.columns[j]
            gain = abs(np.vdot(v, eq.w[j])) ** 2
            noise = float(np.real(np.vdot(v, eq.noise_cov_sensor @ v)))
            noise += scene.fusion.fc_noise_var * float(np.real(np.vdot(v, v)))
            num = Posynomial((Monomial(psi * noise, {}),))
            den = delta_posy(j, float(q[j]) * float(gain))
            ratios.append((num, den))
    else:
        raise ValueError(f"unknown combiner {combiner!r} (expected 'mrc' or 'zf')")
    ratios.append(_power_cap_constraint(scene))
    bounds = {tx_power(t): (VARIABLE_FLOOR, scene.p_max) for t in range(n)}
    return SpProblem(objective, tuple(ratios), bounds)
