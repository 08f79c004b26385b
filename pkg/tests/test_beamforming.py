"""Planar-array steering, transmit beams, and incident powers."""

import math

import numpy as np
import pytest

from afsense.beamforming import (
    Precoder,
    incident_powers,
    mrt_precoder,
    object_steering_matrix,
    steering_vector,
)
from afsense.scene import ArrayGeometry

from test_scene import make_scene


def steering_reference(az_deg, el_deg, geom):
    """Scalar re-derivation: one entry at a time, row index m' fastest."""
    az = math.radians(az_deg)
    el = math.radians(el_deg)
    out = np.empty(geom.m_count * geom.mprime_count, dtype=complex)
    i = 0
    for m in range(geom.m_count):
        for mp in range(geom.mprime_count):
            phase = math.pi * (m * math.sin(az) * math.sin(el) + mp * math.cos(el))
            out[i] = complex(math.cos(phase), math.sin(phase))
            i += 1
    return out


class TestSteeringVector:
    def test_matches_scalar_reference(self):
        rng = np.random.default_rng(0)
        geom = ArrayGeometry(3, 4)
        for _ in range(50):
            az = rng.uniform(0.0, 90.0)
            el = rng.uniform(0.0, 90.0)
            got = steering_vector(az, el, geom).entries
            want = steering_reference(az, el, geom)
            np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)

    def test_unit_modulus(self):
        geom = ArrayGeometry(4, 4)
        a = steering_vector(33.0, 71.0, geom).entries
        np.testing.assert_allclose(np.abs(a), 1.0, atol=1e-12)

    def test_endfire_in_plane(self):
        # azimuth 90, elevation 90: the row phase term is pi*m, the
        # column term vanishes -> entries alternate in blocks of M'.
        a = steering_vector(90.0, 90.0, ArrayGeometry(2, 2)).entries
        np.testing.assert_allclose(a, [1, 1, -1, -1], atol=1e-12)

    def test_zenith(self):
        # elevation 0: row term vanishes, column phase is pi*m'.
        a = steering_vector(10.0, 0.0, ArrayGeometry(2, 2)).entries
        np.testing.assert_allclose(a, [1, -1, 1, -1], atol=1e-12)

    def test_object_matrix_rows(self):
        scene = make_scene()
        mat = object_steering_matrix(scene)
        assert mat.shape == (scene.n_objects, scene.geometry.element_count)
        for row, obj in zip(mat, scene.objects):
            want = steering_reference(obj.azimuth_deg, obj.elevation_deg, scene.geometry)
            np.testing.assert_allclose(row, want, atol=1e-12)


class TestMrtPrecoder:
    def test_unit_norm_aligned(self):
        scene = make_scene()
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        for beam, a in zip(beams, mat):
            np.testing.assert_allclose(np.linalg.norm(beam), 1.0, atol=1e-12)
            # colinear with the steering vector
            inner = abs(np.vdot(beam, a))
            np.testing.assert_allclose(
                inner, np.linalg.norm(beam) * np.linalg.norm(a), atol=1e-10
            )

    def test_accepts_steering_objects(self):
        geom = ArrayGeometry(2, 3)
        vecs = [steering_vector(10.0, 20.0, geom), steering_vector(50.0, 60.0, geom)]
        beams = mrt_precoder(vecs)
        assert beams.shape == (2, 6)
        np.testing.assert_allclose(np.linalg.norm(beams, axis=1), 1.0, atol=1e-12)


class TestIncidentPowers:
    def test_diagonal_is_element_count(self):
        scene = make_scene(m=3, mprime=5)
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        powers = np.array([1.0, 1.0])
        _, coefs = incident_powers(scene, Precoder(directions=beams, powers=powers))
        for j in range(scene.n_targets):
            assert coefs[j, j] == scene.geometry.element_count

    def test_linear_in_powers(self):
        scene = make_scene()
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        p1 = np.array([1.0, 2.0])
        p2 = np.array([0.5, 3.0])
        d1, coefs = incident_powers(scene, Precoder(beams, p1))
        d2, _ = incident_powers(scene, Precoder(beams, p2))
        np.testing.assert_allclose(d1, coefs @ p1, rtol=1e-12)
        np.testing.assert_allclose(d2, coefs @ p2, rtol=1e-12)

    def test_monte_carlo_oracle(self):
        # delta_j must equal E|a_j^H s|^2 for s a superposition of the
        # beams carrying independent unit-power symbols.
        scene = make_scene()
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        powers = np.array([2.0, 0.7])
        deltas, _ = incident_powers(scene, Precoder(beams, powers))

        rng = np.random.default_rng(42)
        n_samp = 200_000
        x = (
            rng.standard_normal((n_samp, scene.n_targets))
            + 1j * rng.standard_normal((n_samp, scene.n_targets))
        ) / np.sqrt(2)
        s = (x * np.sqrt(powers)) @ beams
        received = s @ mat.conj().T
        estimate = np.mean(np.abs(received) ** 2, axis=0)
        np.testing.assert_allclose(estimate, deltas, rtol=0.02)

    def test_sidelobe_coupling_positive(self):
        # a finite array always leaks some power toward other objects
        scene = make_scene()
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        _, coefs = incident_powers(scene, Precoder(beams, np.ones(2)))
        assert coefs.shape == (scene.n_objects, scene.n_targets)
        assert np.all(coefs >= 0.0)
        assert np.all(coefs <= scene.geometry.element_count + 1e-9)
