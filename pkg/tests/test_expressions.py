"""Signed-monomial algebra, condensation, and SINR expression building."""

import math

import numpy as np
import pytest

from afsense.beamforming import Precoder, incident_powers, mrt_precoder, object_steering_matrix
from afsense.combining import equivalent_channels, mrc_combiner, sinr
from afsense.posynomials import (
    EmptyPosynomial,
    Monomial,
    Posynomial,
    Signomial,
    UnboundVariable,
    amplification,
    build_mrc_sinr_signomial,
    condensation_weights,
    condense,
    evaluate,
    lemma1_check,
    linear_posynomial,
    sinr_ratio_constraint,
    split_signomial,
    tx_power,
)
from afsense.scene import ChannelSet, generate_channels

from test_scene import make_scene

X = tx_power(0)
Y = tx_power(1)
A = amplification(0)


def random_posynomial(rng, variables, max_terms=6):
    terms = []
    for _ in range(rng.integers(1, max_terms + 1)):
        exps = {
            v: float(rng.uniform(-2.0, 2.0))
            for v in variables
            if rng.random() < 0.8
        }
        terms.append(Monomial(float(rng.uniform(0.1, 5.0)), exps))
    return Posynomial(terms)


def random_point(rng, variables):
    return {v: float(rng.uniform(0.2, 4.0)) for v in variables}


class TestMonomialAlgebra:
    def test_zero_exponents_dropped(self):
        m = Monomial(2.0, {X: 0.0, Y: 1.5})
        assert X not in m.exponents
        assert m.exponents[Y] == 1.5

    def test_zero_coefficient_rejected(self):
        with pytest.raises(ValueError):
            Monomial(0.0, {X: 1.0})

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            Monomial(float("inf"), {})

    def test_equality(self):
        assert Monomial(2.0, {X: 1.0}) == Monomial(2.0, {X: 1.0, Y: 0.0})
        assert Monomial(2.0, {X: 1.0}) != Monomial(2.0, {X: 1.5})

    def test_product(self):
        m = Monomial(2.0, {X: 1.0}) * Monomial(3.0, {X: -1.0, Y: 2.0})
        assert m.coefficient == pytest.approx(6.0)
        assert m.exponents == {Y: 2.0}

    def test_evaluate(self):
        m = Monomial(3.0, {X: 2.0, Y: -1.0})
        assert evaluate(m, {X: 2.0, Y: 4.0}) == pytest.approx(3.0)


class TestPosynomialAlgebra:
    def test_merge_identical_terms(self):
        p = Posynomial([Monomial(1.0, {X: 1.0}), Monomial(2.5, {X: 1.0})])
        assert len(p.terms) == 1
        assert p.terms[0].coefficient == pytest.approx(3.5)

    def test_negative_after_merge_rejected(self):
        with pytest.raises(ValueError):
            Posynomial([Monomial(1.0, {X: 1.0}), Monomial(-2.0, {X: 1.0})])

    def test_cancellation_to_zero_allowed(self):
        p = Posynomial([Monomial(1.0, {X: 1.0}), Monomial(-1.0, {X: 1.0})])
        assert not p.terms

    def test_empty_posynomial_evaluates_to_zero(self):
        assert evaluate(Posynomial([]), {}) == 0.0

    def test_sum_and_product_consistent(self):
        rng = np.random.default_rng(0)
        for _ in range(40):
            p = random_posynomial(rng, (X, Y))
            q = random_posynomial(rng, (X, Y))
            point = random_point(rng, (X, Y))
            vp, vq = evaluate(p, point), evaluate(q, point)
            assert evaluate(p + q, point) == pytest.approx(vp + vq, rel=1e-12)
            assert evaluate(p * q, point) == pytest.approx(vp * vq, rel=1e-12)

    def test_division_by_monomial(self):
        p = Posynomial([Monomial(1.0, {X: 2.0}), Monomial(1.0, {X: 1.0})])
        q = p / Monomial(1.0, {X: 1.0})
        assert evaluate(q, {X: 3.0}) == pytest.approx(4.0)

    def test_unbound_variable(self):
        p = Posynomial([Monomial(1.0, {X: 1.0, Y: 1.0})])
        with pytest.raises(UnboundVariable):
            evaluate(p, {X: 1.0})

    def test_nonpositive_point_rejected(self):
        p = Posynomial([Monomial(1.0, {X: 1.0})])
        with pytest.raises(ValueError):
            evaluate(p, {X: 0.0})

    def test_linear_posynomial(self):
        p = linear_posynomial({X: 2.0, Y: 0.0, A: 1.0})
        assert len(p.terms) == 2
        assert evaluate(p, {X: 1.0, A: 3.0}) == pytest.approx(5.0)
        with pytest.raises(ValueError):
            linear_posynomial({X: -1.0})

    def test_variables_listed(self):
        p = Posynomial([Monomial(1.0, {X: 1.0}), Monomial(2.0, {A: -0.5})])
        assert p.variables() == {X, A}


class TestSignomialSplit:
    def test_round_trip(self):
        rng = np.random.default_rng(1)
        for _ in range(40):
            terms = [
                Monomial(float(rng.uniform(-3, 3) or 1.0), {X: float(rng.integers(-2, 3))})
                for _ in range(5)
            ]
            s = Signomial(terms)
            plus, minus = split_signomial(s)
            point = {X: float(rng.uniform(0.3, 3.0))}
            want = sum(
                m.coefficient * point[X] ** m.exponents.get(X, 0.0) for m in terms
            )
            got = evaluate(plus, point) - evaluate(minus, point)
            assert got == pytest.approx(want, abs=1e-10)

    def test_minus_part_coefficients_positive(self):
        s = Signomial([Monomial(-2.0, {X: 1.0}), Monomial(1.0, {Y: 1.0})])
        plus, minus = split_signomial(s)
        assert all(m.coefficient > 0 for m in minus.terms)
        assert evaluate(minus, {X: 2.0}) == pytest.approx(4.0)


class TestCondensation:
    def test_two_term_frozen_case(self):
        # 1 + x at x0 = 1: equal shares, bound 2*sqrt(x)
        p = Posynomial([Monomial(1.0, {}), Monomial(1.0, {X: 1.0})])
        w = condensation_weights(p, {X: 1.0})
        np.testing.assert_allclose(w, [0.5, 0.5])
        m = condense(p, {X: 1.0})
        assert m.coefficient == pytest.approx(2.0, rel=1e-12)
        assert m.exponents[X] == pytest.approx(0.5)

    def test_tangency(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            p = random_posynomial(rng, (X, Y, A))
            point = random_point(rng, (X, Y, A))
            m = condense(p, point)
            assert evaluate(m, point) == pytest.approx(
                evaluate(p, point), rel=1e-12
            )

    def test_global_lower_bound(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            p = random_posynomial(rng, (X, Y))
            anchor = random_point(rng, (X, Y))
            m = condense(p, anchor)
            for _ in range(50):
                probe = {
                    X: float(rng.uniform(0.01, 50.0)),
                    Y: float(rng.uniform(0.01, 50.0)),
                }
                assert evaluate(m, probe) <= evaluate(p, probe) * (1 + 1e-12)

    def test_single_term_exact(self):
        m0 = Monomial(3.0, {X: -1.5})
        p = Posynomial([m0])
        m = condense(p, {X: 0.7})
        assert m == m0

    def test_empty_rejected(self):
        with pytest.raises(EmptyPosynomial):
            condense(Posynomial([]), {X: 1.0})


class TestLemmaCheck:
    def test_hand_built_violation(self):
        g = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
        f = np.ones((2, 3), dtype=complex)
        report = lemma1_check(ChannelSet(g=g, f=f), n_targets=1)
        assert not report.posynomial
        assert report.violations == ((0, 1, 0, 1),)

    def test_aligned_channels_pass(self):
        g = np.ones((2, 3), dtype=complex)
        f = np.ones((3, 4), dtype=complex)
        report = lemma1_check(ChannelSet(g=g, f=f), n_targets=2)
        assert report.posynomial
        assert report.violations == ()

    def test_single_sensor_always_passes(self):
        # the cross term needs two distinct sensors; K = 1 has none
        rng = np.random.default_rng(4)
        g = rng.standard_normal((3, 1)) + 1j * rng.standard_normal((3, 1))
        f = rng.standard_normal((1, 4)) + 1j * rng.standard_normal((1, 4))
        report = lemma1_check(ChannelSet(g=g, f=f), n_targets=2)
        assert report.posynomial


def mrc_assignment(scene, rng):
    point = {}
    for t in range(scene.n_targets):
        point[tx_power(t)] = float(rng.uniform(0.2, 3.0))
    for k in range(scene.sensors.sensor_count):
        point[amplification(k)] = float(rng.uniform(0.1, scene.sensors.alpha_max))
    return point


class TestSinrExpressionOracle:
    def test_matches_signal_chain(self):
        # the symbolic SINR ratio must agree with the numeric receive
        # chain at arbitrary operating points
        for seed in range(20):
            scene = make_scene()
            channels = generate_channels(scene, seed)
            mat = object_steering_matrix(scene)
            beams = mrt_precoder(mat[: scene.n_targets])
            _, coefs = incident_powers(
                scene, Precoder(beams, np.ones(scene.n_targets))
            )
            rng = np.random.default_rng(seed + 500)
            point = mrc_assignment(scene, rng)
            powers = np.array(
                [point[tx_power(t)] for t in range(scene.n_targets)]
            )
            alphas = np.array(
                [point[amplification(k)] for k in range(scene.sensors.sensor_count)]
            )
            deltas = coefs @ powers
            eq = equivalent_channels(channels, alphas, scene.sensors.sensor_noise_var)
            comb = mrc_combiner(eq, scene.n_targets)
            for j in range(scene.n_targets):
                terms = build_mrc_sinr_signomial(j, scene, channels, coefs)
                plus, minus = split_signomial(terms.sigma_int)
                denom = (
                    evaluate(plus, point)
                    - evaluate(minus, point)
                    + evaluate(terms.sigma_ns, point)
                    + evaluate(terms.sigma_nfc, point)
                )
                symbolic = evaluate(terms.sigma_des, point) / denom
                numeric = sinr(
                    j, comb, eq, deltas, scene.response_powers, scene.fusion.fc_noise_var
                )
                assert symbolic == pytest.approx(numeric, rel=1e-9)

    def test_ratio_constraint_equivalence(self):
        # num/den <= 1 exactly when the SINR meets the demand
        scene = make_scene()
        channels = generate_channels(scene, 0)
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        _, coefs = incident_powers(scene, Precoder(beams, np.ones(scene.n_targets)))
        terms = build_mrc_sinr_signomial(0, scene, channels, coefs)
        plus, minus = split_signomial(terms.sigma_int)
        rng = np.random.default_rng(6)
        for _ in range(50):
            point = mrc_assignment(scene, rng)
            denom = (
                evaluate(plus, point)
                - evaluate(minus, point)
                + evaluate(terms.sigma_ns, point)
                + evaluate(terms.sigma_nfc, point)
            )
            rho = evaluate(terms.sigma_des, point) / denom
            for psi in (0.5 * rho, rho * 2.0):
                num, den = sinr_ratio_constraint(terms, psi)
                ratio = evaluate(num, point) / evaluate(den, point)
                assert (ratio <= 1.0) == (rho >= psi - 1e-12)

    def test_ratio_constraint_rejects_bad_demand(self):
        scene = make_scene()
        channels = generate_channels(scene, 0)
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        _, coefs = incident_powers(scene, Precoder(beams, np.ones(scene.n_targets)))
        terms = build_mrc_sinr_signomial(0, scene, channels, coefs)
        with pytest.raises(ValueError):
            sinr_ratio_constraint(terms, 0.0)

    def test_term_shapes(self):
        scene = make_scene()
        channels = generate_channels(scene, 1)
        mat = object_steering_matrix(scene)
        beams = mrt_precoder(mat[: scene.n_targets])
        _, coefs = incident_powers(scene, Precoder(beams, np.ones(scene.n_targets)))
        terms = build_mrc_sinr_signomial(0, scene, channels, coefs)
        k = scene.sensors.sensor_count
        # desired part: p_t * alpha_k * alpha_l over every beam that
        # illuminates the target and every sensor pair
        assert len(terms.sigma_des.terms) == scene.n_targets * (k * (k + 1) // 2)
        for m in terms.sigma_des.terms:
            assert m.coefficient > 0
            assert sum(e for v, e in m.exponents.items() if v.kind.value == "alpha") == 2
            assert sum(e for v, e in m.exponents.items() if v.kind.value == "p") == 1
        # sensor-noise part: alpha_k^2, one per sensor
        assert len(terms.sigma_ns.terms) == k
        for m in terms.sigma_ns.terms:
            assert set(e for e in m.exponents.values()) == {2.0}
        # forwarded fusion-noise part: alpha_k, one per sensor
        assert len(terms.sigma_nfc.terms) == k
        for m in terms.sigma_nfc.terms:
            assert set(e for e in m.exponents.values()) == {1.0}
