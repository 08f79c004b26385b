"""Signed-monomial algebra over the positive design variables.

Expressions are built over named positive variables — per-target
transmit powers and per-sensor amplification factors — and stay
immutable after construction. Terms with identical exponent maps are
merged on construction and merged coefficients below ``COEFF_DROP_TOL``
in magnitude are dropped, which keeps condensation weights well
defined.

The module also provides the modelling layer used by the solver: the
expansion of the MRC SINR of a target into its desired / interference /
noise pieces, the sign check that decides whether the interference
expansion is a posynomial, and the monomial condensation bound used by
the successive-approximation loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

from .scene import ChannelSet, Scene

__all__ = [
    "COEFF_DROP_TOL",
    "UnboundVariable",
    "EmptyPosynomial",
    "VarKind",
    "VarId",
    "tx_power",
    "amplification",
    "Monomial",
    "Posynomial",
    "Signomial",
    "linear_posynomial",
    "evaluate",
    "split_signomial",
    "condense",
    "condensation_weights",
    "CrossTermReport",
    "lemma1_check",
    "MrcSinrTerms",
    "build_mrc_sinr_signomial",
    "sinr_ratio_constraint",
]

COEFF_DROP_TOL = 1e-15


class UnboundVariable(KeyError):
    """A variable in the expression has no value in the assignment."""


class EmptyPosynomial(ValueError):
    """Condensation of a posynomial with no terms is undefined."""


class VarKind(Enum):
    TX_POWER = "p"
    AMPLIFICATION = "alpha"


_KIND_ORDER = {VarKind.TX_POWER: 0, VarKind.AMPLIFICATION: 1}


@dataclass(frozen=True)
class VarId:
    kind: VarKind
    index: int

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_ORDER[self.kind], self.index)

    def __str__(self) -> str:
        return f"{self.kind.value}[{self.index}]"


def tx_power(index: int) -> VarId:
    return VarId(VarKind.TX_POWER, index)


def amplification(index: int) -> VarId:
    return VarId(VarKind.AMPLIFICATION, index)


def _fmt_coeff(c: float) -> str:
    return f"{c:.6g}"


@dataclass(frozen=True, eq=False)
class Monomial:
    """``coefficient * prod(var ** exponent)`` with a nonzero signed coefficient."""

    coefficient: float
    exponents: Mapping[VarId, float]

    def __post_init__(self) -> None:
        c = float(self.coefficient)
        if c == 0.0 or not math.isfinite(c):
            raise ValueError(f"monomial coefficient must be nonzero and finite, got {c!r}")
        exps = {}
        for var, e in self.exponents.items():
            e = float(e)
            if not math.isfinite(e):
                raise ValueError(f"exponent of {var} is not finite: {e!r}")
            if e != 0.0:
                exps[var] = e
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "exponents", MappingProxyType(exps))

    def _exp_key(self) -> tuple:
        return tuple(sorted((v.sort_key(), e) for v, e in self.exponents.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.coefficient == other.coefficient and dict(self.exponents) == dict(
            other.exponents
        )

    def __mul__(self, other: Union["Monomial", float]):
        if isinstance(other, Monomial):
            exps = dict(self.exponents)
            for v, e in other.exponents.items():
                exps[v] = exps.get(v, 0.0) + e
            return Monomial(self.coefficient * other.coefficient, exps)
        if isinstance(other, (int, float)):
            return Monomial(self.coefficient * float(other), dict(self.exponents))
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = [_fmt_coeff(self.coefficient)]
        for v, e in sorted(self.exponents.items(), key=lambda item: item[0].sort_key()):
            parts.append(str(v) if e == 1.0 else f"{v}^{e:g}")
        return "*".join(parts)


def _merge_terms(terms: Iterable[Monomial]) -> tuple[Monomial, ...]:
    acc: dict[tuple, list] = {}
    for m in terms:
        key = m._exp_key()
        slot = acc.get(key)
        if slot is None:
            acc[key] = [m.coefficient, dict(m.exponents)]
        else:
            slot[0] += m.coefficient
    merged = [
        Monomial(c, exps)
        for _, (c, exps) in sorted(acc.items())
        if abs(c) >= COEFF_DROP_TOL
    ]
    return tuple(merged)


def _mul_term_lists(
    a: Iterable[Monomial], b: Iterable[Monomial]
) -> tuple[Monomial, ...]:
    return _merge_terms(x * y for x in a for y in b)


@dataclass(frozen=True, eq=False)
class Posynomial:
    """Sum of monomials with positive coefficients; may be empty (value 0)."""

    terms: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        merged = _merge_terms(self.terms)
        for m in merged:
            if m.coefficient < 0:
                raise ValueError(f"posynomial term has negative coefficient: {m}")
        object.__setattr__(self, "terms", merged)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Posynomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: Union["Posynomial", Monomial]) -> "Posynomial":
        if isinstance(other, Posynomial):
            return Posynomial(self.terms + other.terms)
        if isinstance(other, Monomial):
            return Posynomial(self.terms + (other,))
        return NotImplemented

    def __mul__(self, other: Union["Posynomial", Monomial, float]) -> "Posynomial":
        if isinstance(other, Posynomial):
            return Posynomial(_mul_term_lists(self.terms, other.terms))
        if isinstance(other, Monomial):
            return Posynomial(tuple(m * other for m in self.terms))
        if isinstance(other, (int, float)):
            if other <= 0:
                raise ValueError("posynomial scaling factor must be positive")
            return Posynomial(tuple(m * float(other) for m in self.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Monomial) -> "Posynomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        inv = Monomial(
            1.0 / other.coefficient, {v: -e for v, e in other.exponents.items()}
        )
        return self * inv

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v in m.exponents}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(m) for m in self.terms)


@dataclass(frozen=True, eq=False)
class Signomial:
    """Sum of monomials with coefficients of either sign."""

    terms: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _merge_terms(self.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: Union["Signomial", Posynomial, Monomial]) -> "Signomial":
        if isinstance(other, (Signomial, Posynomial)):
            return Signomial(self.terms + other.terms)
        if isinstance(other, Monomial):
            return Signomial(self.terms + (other,))
        return NotImplemented

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v in m.exponents}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = str(self.terms[0])
        for m in self.terms[1:]:
            if m.coefficient < 0:
                out += f" - {Monomial(-m.coefficient, dict(m.exponents))}"
            else:
                out += f" + {m}"
        return out


def linear_posynomial(coeffs: Mapping[VarId, float]) -> Posynomial:
    """Posynomial ``sum(c_v * v)`` from nonnegative coefficients (zeros skipped)."""
    terms = []
    for v, c in coeffs.items():
        if c < 0:
            raise ValueError(f"negative linear coefficient for {v}: {c!r}")
        if c != 0.0:
            terms.append(Monomial(float(c), {v: 1.0}))
    return Posynomial(tuple(terms))


def _term_value(m: Monomial, assignment: Mapping[VarId, float]) -> float:
    val = m.coefficient
    for var, e in m.exponents.items():
        if var not in assignment:
            raise UnboundVariable(str(var))
        x = assignment[var]
        if x <= 0:
            raise ValueError(f"variable {var} must be assigned a positive value, got {x!r}")
        val *= x**e
    return val


def evaluate(
    expr: Union[Monomial, Posynomial, Signomial], assignment: Mapping[VarId, float]
) -> float:
    """Evaluate an expression at a positive assignment."""
    terms = (expr,) if isinstance(expr, Monomial) else expr.terms
    return float(sum(_term_value(m, assignment) for m in terms))


def split_signomial(s: Union[Signomial, Posynomial]) -> tuple[Posynomial, Posynomial]:
    """Split into (plus, minus) posynomials with ``s = plus - minus``."""
    plus = tuple(m for m in s.terms if m.coefficient > 0)
    minus = tuple(
        Monomial(-m.coefficient, dict(m.exponents)) for m in s.terms if m.coefficient < 0
    )
    return Posynomial(plus), Posynomial(minus)


def _log_term_values(posy: Posynomial, point: Mapping[VarId, float]) -> np.ndarray:
    logs = np.empty(len(posy.terms))
    for t, m in enumerate(posy.terms):
        acc = math.log(m.coefficient)
        for var, e in m.exponents.items():
            if var not in point:
                raise UnboundVariable(str(var))
            x = point[var]
            if x <= 0:
                raise ValueError(f"variable {var} must be positive, got {x!r}")
            acc += e * math.log(x)
        logs[t] = acc
    return logs


def condensation_weights(posy: Posynomial, point: Mapping[VarId, float]) -> np.ndarray:
    """Normalized term weights of ``posy`` at ``point`` (they sum to one)."""
    if not posy.terms:
        raise EmptyPosynomial("cannot condense a posynomial with no terms")
    logs = _log_term_values(posy, point)
    shifted = np.exp(logs - logs.max())
    return shifted / shifted.sum()


def condense(posy: Posynomial, point: Mapping[VarId, float]) -> Monomial:
    """Best monomial lower bound of ``posy`` that is tight at ``point``.

    Weighting each term by its share of the total value at ``point`` and
    forming the weighted geometric mean gives a monomial that bounds the
    posynomial from below everywhere (weighted AM-GM) and equals it at
    the expansion point.
    """
    if len(posy.terms) == 1:
        return posy.terms[0]
    weights = condensation_weights(posy, point)
    log_coef = 0.0
    exps: dict[VarId, float] = {}
    for w, m in zip(weights, posy.terms):
        if w == 0.0:
            continue
        log_coef += w * (math.log(m.coefficient) - math.log(w))
        for var, e in m.exponents.items():
            exps[var] = exps.get(var, 0.0) + w * e
    return Monomial(math.exp(log_coef), exps)


@dataclass(frozen=True)
class CrossTermReport:
    """Outcome of the interference cross-term sign check.

    ``violations`` lists quadruples ``(target, object, sensor_k, sensor_l)``
    whose cross term has a negative real part.
    """

    posynomial: bool
    violations: tuple[tuple[int, int, int, int], ...]


def lemma1_check(channels: ChannelSet, n_targets: int) -> CrossTermReport:
    """Decide whether every interference expansion has nonnegative coefficients.

    The interference power seen by target j expands over sensor pairs
    (k, l) with coefficients proportional to
    ``Re(g_jk * conj(g_ik) * conj(g_jl) * g_il)``. When every such real
    part is nonnegative for every interfering object i, the expansion is
    a posynomial for every target.
    """
    g = channels.g
    n_obj, k_count = g.shape
    violations = []
    for j in range(n_targets):
        for i in range(n_obj):
            if i == j:
                continue
            for k in range(k_count):
                for l in range(k + 1, k_count):
                    val = (g[j, k] * g[i, k].conj() * g[j, l].conj() * g[i, l]).real
                    if val < 0:
                        violations.append((j, i, k, l))
    return CrossTermReport(not violations, tuple(violations))


@dataclass(frozen=True)
class MrcSinrTerms:
    """Symbolic pieces of one target's MRC SINR.

    The SINR of target ``target`` equals
    ``sigma_des / (sigma_int + sigma_ns + sigma_nfc)`` with every piece a
    function of the transmit powers and amplification factors.
    """

    target: int
    sigma_des: Posynomial
    sigma_int: Signomial
    sigma_ns: Posynomial
    sigma_nfc: Posynomial


def build_mrc_sinr_signomial(
    j: int, scene: Scene, channels: ChannelSet, delta_coefs: np.ndarray
) -> MrcSinrTerms:
    """Expand the MRC SINR pieces of target ``j`` over the design variables.

    ``delta_coefs`` is the incident-power coefficient map (one row per
    object, one column per target beam), so object i's incident power is
    the linear form ``delta_coefs[i] @ p``.
    """
    q = scene.response_powers
    g, f = channels.g, channels.f
    k_count = channels.sensor_count
    fn2 = np.sum(np.abs(f) ** 2, axis=1)
    alpha_vars = [amplification(k) for k in range(k_count)]

    def delta_posy(i: int) -> Posynomial:
        return linear_posynomial(
            {tx_power(t): float(delta_coefs[i, t]) for t in range(scene.n_targets)}
        )

    b = np.abs(g[j]) ** 2 * fn2
    lin_b = linear_posynomial({alpha_vars[k]: float(b[k]) for k in range(k_count)})
    sigma_des = delta_posy(j) * lin_b * lin_b * float(q[j])

    int_terms: list[Monomial] = []
    for i in range(scene.n_objects):
        if i == j:
            continue
        h = g[j] * g[i].conj() * fn2
        quad: list[tuple[float, dict[VarId, float]]] = []
        for k in range(k_count):
            hk2 = abs(h[k]) ** 2
            if hk2 != 0.0:
                quad.append((hk2, {alpha_vars[k]: 2.0}))
            for l in range(k + 1, k_count):
                c = 2.0 * (h[k] * h[l].conj()).real
                if c != 0.0:
                    quad.append((c, {alpha_vars[k]: 1.0, alpha_vars[l]: 1.0}))
        for t in range(scene.n_targets):
            ct = float(delta_coefs[i, t]) * float(q[i])
            if ct == 0.0:
                continue
            for c, aexp in quad:
                exps = dict(aexp)
                exps[tx_power(t)] = 1.0
                int_terms.append(Monomial(ct * c, exps))
    sigma_int = Signomial(tuple(int_terms))

    sn2 = scene.sensors.sensor_noise_var
    ns_terms = [
        Monomial(float(sn2 * np.abs(g[j, k]) ** 2 * fn2[k] ** 2), {alpha_vars[k]: 2.0})
        for k in range(k_count)
        if np.abs(g[j, k]) ** 2 * fn2[k] ** 2 != 0.0
    ]
    sigma_ns = Posynomial(tuple(ns_terms))

    fc2 = scene.fusion.fc_noise_var
    nfc_terms = [
        Monomial(float(fc2 * np.abs(g[j, k]) ** 2 * fn2[k]), {alpha_vars[k]: 1.0})
        for k in range(k_count)
        if np.abs(g[j, k]) ** 2 * fn2[k] != 0.0
    ]
    sigma_nfc = Posynomial(tuple(nfc_terms))

    return MrcSinrTerms(
        target=j,
        sigma_des=sigma_des,
        sigma_int=sigma_int,
        sigma_ns=sigma_ns,
        sigma_nfc=sigma_nfc,
    )


def sinr_ratio_constraint(
    terms: MrcSinrTerms, psi: float
) -> tuple[Posynomial, Posynomial]:
    """Rearrange ``SINR >= psi`` into ``numerator / denominator <= 1``.

    The interference signomial is split into its positive and negative
    parts; the negative part moves into the denominator so both sides
    are posynomials and the constraint is exact.
    """
    if psi <= 0:
        raise ValueError(f"SINR demand must be positive, got {psi!r}")
    plus, minus = split_signomial(terms.sigma_int)
    numerator = (plus + terms.sigma_ns + terms.sigma_nfc) * psi
    denominator = terms.sigma_des + minus * psi
    return numerator, denominator
