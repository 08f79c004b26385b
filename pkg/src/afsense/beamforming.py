"""Steering vectors, matched transmit beams, and per-object incident powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .scene import ArrayGeometry, ObjectKind, Scene

__all__ = [
    "SteeringVector",
    "Precoder",
    "steering_vector",
    "object_steering_matrix",
    "mrt_precoder",
    "incident_powers",
]


@dataclass(frozen=True)
class SteeringVector:
    """Array response of the planar transmit array for one direction.

    Entries have unit modulus and the vector has squared norm equal to
    the element count.
    """

    entries: np.ndarray


@dataclass(frozen=True)
class Precoder:
    """Per-target transmit beams (unit-norm rows) and their power loading."""

    directions: np.ndarray  # (n_targets, element_count)
    powers: np.ndarray  # (n_targets,)


def steering_vector(
    azimuth_deg: float, elevation_deg: float, geometry: ArrayGeometry
) -> SteeringVector:
    """Array response for a direction given in degrees.

    Entry (m, m') is ``exp(j*pi*(m*sin(az)*sin(el) + m'*cos(el)))`` with
    m over the horizontal axis and m' over the vertical axis; the
    flattened layout has m' varying fastest.
    """
    theta = math.radians(azimuth_deg)
    phi = math.radians(elevation_deg)
    m = np.arange(geometry.m_count)
    mp = np.arange(geometry.mprime_count)
    phase = np.pi * (
        math.sin(theta) * math.sin(phi) * m[:, None] + math.cos(phi) * mp[None, :]
    )
    return SteeringVector(np.exp(1j * phase).reshape(-1))


def object_steering_matrix(scene: Scene) -> np.ndarray:
    """Steering vectors of every scene object, stacked as rows (targets first)."""
    rows = [
        steering_vector(o.azimuth_deg, o.elevation_deg, scene.geometry).entries
        for o in scene.objects
    ]
    return np.array(rows)


def mrt_precoder(target_steering: Sequence[SteeringVector] | np.ndarray) -> np.ndarray:
    """Unit-norm transmit beams matched to the target steering vectors.

    Accepts a sequence of :class:`SteeringVector` or a matrix with one
    steering vector per row; returns the matching unit rows.
    """
    if isinstance(target_steering, np.ndarray):
        mat = np.atleast_2d(target_steering)
    else:
        mat = np.array([sv.entries for sv in target_steering])
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    return mat / norms


def incident_powers(scene: Scene, precoder: Precoder) -> tuple[np.ndarray, np.ndarray]:
    """Expected per-object incident signal powers and their coefficient map.

    Returns ``(deltas, coefs)`` where ``deltas = coefs @ precoder.powers``.
    ``coefs[i, j]`` is the squared magnitude of the projection of beam j
    onto object i's steering vector; for a target's own beam this is
    exactly the array element count (full beamforming gain). Clutter
    rows collect leakage from every beam.
    """
    a = object_steering_matrix(scene)
    proj = a.conj() @ precoder.directions.T  # (n_objects, n_targets)
    coefs = np.abs(proj) ** 2
    gain = scene.geometry.element_count
    for j, obj in enumerate(scene.objects):
        if obj.kind is ObjectKind.TARGET:
            coefs[j, j] = gain
    deltas = coefs @ np.asarray(precoder.powers, dtype=float)
    return deltas, coefs
