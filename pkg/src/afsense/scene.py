"""Problem-instance types for an RF probing sensor network.

A scene couples a planar transmit array, passive reflecting objects
(targets of interest followed by clutter), a bank of amplify-and-forward
sensors, and a multi-antenna fusion center, together with the transmit
power budget and the per-target SINR demands that drive the allocation
problem.

All types are frozen and safe to share between worker threads. Channel
generation is a pure function of the scene dimensions and a seed.
Constructors are deliberately permissive so diagnostic tooling can
inspect bad instances; :func:`validate_scene` reports every violated
invariant instead of raising on the first one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ObjectKind",
    "ArrayGeometry",
    "SceneObject",
    "SensorNetwork",
    "FusionCenter",
    "Scene",
    "ChannelSet",
    "SceneIssue",
    "generate_channels",
    "validate_scene",
    "scene_is_valid",
]


class ObjectKind(Enum):
    TARGET = "target"
    CLUTTER = "clutter"


@dataclass(frozen=True)
class ArrayGeometry:
    """Planar transmit array with half-wavelength element spacing."""

    m_count: int
    mprime_count: int

    @property
    def element_count(self) -> int:
        return self.m_count * self.mprime_count


@dataclass(frozen=True)
class SceneObject:
    """A passive reflector illuminated by the array.

    ``response_power`` is the second-order moment of the object's
    scattering response (its expected reflected-power gain).
    """

    kind: ObjectKind
    azimuth_deg: float
    elevation_deg: float
    response_power: float


@dataclass(frozen=True)
class SensorNetwork:
    """Single-antenna amplify-and-forward sensors with a shared amplification cap."""

    sensor_count: int
    alpha_max: float
    sensor_noise_var: float


@dataclass(frozen=True)
class FusionCenter:
    antenna_count: int
    fc_noise_var: float


@dataclass(frozen=True)
class Scene:
    """Complete problem instance.

    ``objects`` must list targets first, then clutter; ``sinr_demands``
    holds one SINR threshold per target, in target order.
    """

    geometry: ArrayGeometry
    objects: tuple[SceneObject, ...]
    sensors: SensorNetwork
    fusion: FusionCenter
    p_max: float
    sinr_demands: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "sinr_demands", tuple(float(x) for x in self.sinr_demands))

    @property
    def n_targets(self) -> int:
        return sum(1 for o in self.objects if o.kind is ObjectKind.TARGET)

    @property
    def n_clutters(self) -> int:
        return sum(1 for o in self.objects if o.kind is ObjectKind.CLUTTER)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def response_powers(self) -> np.ndarray:
        return np.array([o.response_power for o in self.objects], dtype=float)


@dataclass(frozen=True)
class ChannelSet:
    """One realization of all propagation channels.

    ``g[i, k]`` is the scalar gain from object ``i`` to sensor ``k``;
    ``f[k]`` is the length-R vector channel from sensor ``k`` to the
    fusion center.
    """

    g: np.ndarray
    f: np.ndarray

    @property
    def n_objects(self) -> int:
        return self.g.shape[0]

    @property
    def sensor_count(self) -> int:
        return self.g.shape[1]

    @property
    def antenna_count(self) -> int:
        return self.f.shape[1]


def generate_channels(scene: Scene, seed: int) -> ChannelSet:
    """Draw one i.i.d. unit-variance circularly-symmetric Gaussian realization.

    The draw is a pure function of the scene dimensions and ``seed``:
    ``g`` is filled first, then ``f``, each as real-then-imaginary
    standard normal blocks scaled by 1/sqrt(2), so identical inputs give
    bit-identical channels.
    """
    rng = np.random.default_rng(seed)
    n_obj = scene.n_objects
    k = scene.sensors.sensor_count
    r = scene.fusion.antenna_count
    scale = 1.0 / math.sqrt(2.0)
    g = scale * (rng.standard_normal((n_obj, k)) + 1j * rng.standard_normal((n_obj, k)))
    f = scale * (rng.standard_normal((k, r)) + 1j * rng.standard_normal((k, r)))
    return ChannelSet(g=g, f=f)


@dataclass(frozen=True)
class SceneIssue:
    severity: str  # "error" or "warning"
    message: str


def _is_count(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def validate_scene(scene: Scene) -> list[SceneIssue]:
    """Report every violated scene invariant.

    Returns an empty list for a valid scene. Entries with severity
    ``"error"`` make the scene unusable; ``"warning"`` flags conditions
    that only rule out specific processing choices (currently: too few
    total sensor antennas for zero-forcing).
    """
    issues: list[SceneIssue] = []

    def err(msg: str) -> None:
        issues.append(SceneIssue("error", msg))

    geo = scene.geometry
    if not _is_count(geo.m_count) or geo.m_count < 1:
        err(f"array m_count must be a positive integer, got {geo.m_count!r}")
    if not _is_count(geo.mprime_count) or geo.mprime_count < 1:
        err(f"array mprime_count must be a positive integer, got {geo.mprime_count!r}")

    if not scene.objects:
        err("scene has no objects")
    n_targets = scene.n_targets
    if n_targets == 0:
        err("scene has no targets")
    seen_clutter = False
    for idx, obj in enumerate(scene.objects):
        if obj.kind is ObjectKind.CLUTTER:
            seen_clutter = True
        elif seen_clutter:
            err(f"object {idx} is a target listed after clutter; targets must come first")
        if not (obj.response_power > 0 and math.isfinite(obj.response_power)):
            err(f"object {idx} response_power must be positive and finite, got {obj.response_power!r}")
        for name in ("azimuth_deg", "elevation_deg"):
            val = getattr(obj, name)
            if not math.isfinite(val):
                err(f"object {idx} {name} is not finite: {val!r}")

    sn = scene.sensors
    if not _is_count(sn.sensor_count) or sn.sensor_count < 1:
        err(f"sensor_count must be a positive integer, got {sn.sensor_count!r}")
    if not (sn.alpha_max > 0 and math.isfinite(sn.alpha_max)):
        err(f"alpha_max must be positive and finite, got {sn.alpha_max!r}")
    if not (sn.sensor_noise_var > 0 and math.isfinite(sn.sensor_noise_var)):
        err(f"sensor_noise_var must be positive and finite, got {sn.sensor_noise_var!r}")

    fc = scene.fusion
    if not _is_count(fc.antenna_count) or fc.antenna_count < 1:
        err(f"fusion antenna_count must be a positive integer, got {fc.antenna_count!r}")
    if not (fc.fc_noise_var > 0 and math.isfinite(fc.fc_noise_var)):
        err(f"fc_noise_var must be positive and finite, got {fc.fc_noise_var!r}")

    if not (scene.p_max > 0 and math.isfinite(scene.p_max)):
        err(f"p_max must be positive and finite, got {scene.p_max!r}")

    if len(scene.sinr_demands) != n_targets:
        err(
            f"sinr_demands has {len(scene.sinr_demands)} entries for {n_targets} targets"
        )
    for idx, psi in enumerate(scene.sinr_demands):
        if not (psi > 0 and math.isfinite(psi)):
            err(f"sinr_demands[{idx}] must be positive and finite, got {psi!r}")

    if (
        _is_count(sn.sensor_count)
        and _is_count(fc.antenna_count)
        and scene.objects
        and sn.sensor_count * fc.antenna_count < scene.n_objects
    ):
        issues.append(
            SceneIssue(
                "warning",
                "total sensor-to-fusion dimension "
                f"{sn.sensor_count}*{fc.antenna_count} is below the object count "
                f"{scene.n_objects}; zero-forcing combining is not applicable",
            )
        )

    return issues


def scene_is_valid(scene: Scene) -> bool:
    return not any(i.severity == "error" for i in validate_scene(scene))
