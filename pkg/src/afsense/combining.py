"""Amplify-and-forward signal chain: stacked channels, combiners, SINR."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .beamforming import Precoder, incident_powers, mrt_precoder, object_steering_matrix
from .scene import ChannelSet, Scene

__all__ = [
    "RankDeficient",
    "NoiseMismatch",
    "CombinerScheme",
    "EquivalentChannels",
    "Combiner",
    "equivalent_channels",
    "mrc_combiner",
    "zf_combiner",
    "sinr",
    "mrc_sinr_closed_form",
    "mutual_information",
]

ZF_CONDITION_LIMIT = 1e12


class RankDeficient(Exception):
    """The stacked channel matrix cannot be inverted for zero-forcing."""


class NoiseMismatch(Exception):
    """Closed-form MRC SINR requires equal sensor and fusion-center noise power."""


class CombinerScheme(Enum):
    MRC = "mrc"
    ZF = "zf"
    CUSTOM = "custom"


@dataclass(frozen=True)
class EquivalentChannels:
    """Stacked end-to-end channels seen at the fusion center.

    ``w[i]`` is the length ``K*R`` equivalent channel of object ``i``
    (sensor blocks of length R, block k scaled by sqrt(alpha_k)*g_ik);
    ``noise_cov_sensor`` is the block-diagonal covariance of the
    forwarded sensor noise.
    """

    w: np.ndarray  # (n_objects, K*R)
    noise_cov_sensor: np.ndarray  # (K*R, K*R)
    sensor_count: int
    antenna_count: int


@dataclass(frozen=True)
class Combiner:
    """One receive vector per target, stacked as rows."""

    columns: np.ndarray  # (n_targets, K*R)
    scheme: CombinerScheme


def equivalent_channels(
    channels: ChannelSet, alphas: np.ndarray, sensor_noise_var: float
) -> EquivalentChannels:
    """Stack the per-sensor forwarded channels and the forwarded-noise covariance."""
    alphas = np.asarray(alphas, dtype=float)
    g, f = channels.g, channels.f
    k, r = f.shape
    blocks = np.sqrt(alphas)[None, :, None] * g[:, :, None] * f[None, :, :]
    w = blocks.reshape(g.shape[0], k * r)
    cov = np.zeros((k * r, k * r), dtype=complex)
    for i in range(k):
        fk = f[i]
        cov[i * r : (i + 1) * r, i * r : (i + 1) * r] = (
            alphas[i] * sensor_noise_var * np.outer(fk, fk.conj())
        )
    return EquivalentChannels(w=w, noise_cov_sensor=cov, sensor_count=k, antenna_count=r)


def mrc_combiner(eq: EquivalentChannels, n_targets: int) -> Combiner:
    """Maximum-ratio combining: each target's receive vector is its own channel."""
    return Combiner(columns=eq.w[:n_targets].copy(), scheme=CombinerScheme.MRC)


def zf_combiner(eq: EquivalentChannels, n_targets: int) -> Combiner:
    """Zero-forcing receive vectors: interference from every other object is nulled.

    Raises :class:`RankDeficient` when the stacked channel matrix cannot
    have full column rank (K*R below the object count) or when its Gram
    matrix is numerically singular.
    """
    w = eq.w
    n_obj, kr = w.shape
    if kr < n_obj:
        raise RankDeficient(
            f"zero-forcing needs K*R >= object count, got {kr} < {n_obj}"
        )
    wmat = w.T  # (K*R, n_objects)
    gram = wmat.conj().T @ wmat
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > ZF_CONDITION_LIMIT:
        raise RankDeficient(
            f"stacked channel Gram matrix is ill-conditioned (cond={cond:.3e})"
        )
    v = np.linalg.solve(gram, wmat.conj().T).conj().T  # (K*R, n_objects)
    # One refinement pass keeps the unit-gain residual near machine precision.
    resid = np.eye(n_obj) - wmat.conj().T @ v
    v = v + wmat @ np.linalg.solve(gram, resid)
    return Combiner(columns=v[:, :n_targets].T.copy(), scheme=CombinerScheme.ZF)


def sinr(
    j: int,
    combiner: Combiner,
    eq: EquivalentChannels,
    deltas: np.ndarray,
    response_powers: np.ndarray,
    fc_noise_var: float,
) -> float:
    """SINR of target ``j`` after combining.

    ``deltas`` and ``response_powers`` cover every object (targets
    first). A zero combining vector returns 0 by convention.
    """
    v = combiner.columns[j]
    w = eq.w
    desired = deltas[j] * response_powers[j] * abs(np.vdot(v, w[j])) ** 2
    interference = 0.0
    for i in range(w.shape[0]):
        if i == j:
            continue
        interference += deltas[i] * response_powers[i] * abs(np.vdot(v, w[i])) ** 2
    noise_sensor = float(np.real(np.vdot(v, eq.noise_cov_sensor @ v)))
    noise_fc = fc_noise_var * float(np.real(np.vdot(v, v)))
    denom = interference + noise_sensor + noise_fc
    if denom == 0.0:
        return 0.0
    return desired / denom


def mrc_sinr_closed_form(
    j: int,
    powers: np.ndarray,
    alphas: np.ndarray,
    scene: Scene,
    channels: ChannelSet,
) -> float:
    """MRC SINR of target ``j`` evaluated from the factored expression.

    Requires equal sensor and fusion-center noise power (raises
    :class:`NoiseMismatch` otherwise). Agrees with :func:`sinr` under an
    MRC combiner to floating-point accuracy.
    """
    sigma2 = scene.sensors.sensor_noise_var
    if scene.fusion.fc_noise_var != sigma2:
        raise NoiseMismatch(
            "closed form assumes equal noise powers, got sensor "
            f"{sigma2!r} vs fusion {scene.fusion.fc_noise_var!r}"
        )
    powers = np.asarray(powers, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    a = object_steering_matrix(scene)
    u = mrt_precoder(a[: scene.n_targets])
    deltas, _ = incident_powers(scene, Precoder(directions=u, powers=powers))
    q = scene.response_powers
    g, f = channels.g, channels.f
    fn2 = np.sum(np.abs(f) ** 2, axis=1)  # ||f_k||^2

    self_gain = float(np.sum(alphas * np.abs(g[j]) ** 2 * fn2))
    desired = deltas[j] * q[j] * self_gain**2
    interference = 0.0
    for i in range(scene.n_objects):
        if i == j:
            continue
        cross = np.sum(alphas * g[j] * g[i].conj() * fn2)
        interference += deltas[i] * q[i] * abs(cross) ** 2
    noise_sensor = float(np.sum(sigma2 * alphas**2 * np.abs(g[j]) ** 2 * fn2**2))
    noise_fc = sigma2 * self_gain
    return desired / (interference + noise_sensor + noise_fc)


def mutual_information(rho: float) -> float:
    """Gaussian-signalling mutual information in bits for SINR ``rho``."""
    return math.log2(1.0 + rho)
