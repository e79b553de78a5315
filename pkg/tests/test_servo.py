#!/usr/bin/env python3
"""
Tests for the pan PID law, miss handling and the PanServo wrapper.
"""

import math

import numpy as np
import pytest

from src.data.models import CameraGeometry, PidGains, ServoLimits
from src.tracking.servo import (
    PanServo,
    ServoState,
    error_to_degrees,
    hold_on_miss,
    pid_step,
    pixel_error,
)

GOLDEN_GAINS = PidGains(kp=0.02, ki=0.001, kd=0.005, dt=0.05)
GOLDEN_ERRORS = [100.0, 80.0, 60.0, 40.0, 20.0]
# Hand-executed: e_sum 5, 9, 12, 14, 15; e_diff 2000, -400, -400, -400, -400.
GOLDEN_THETA = [12.005, 11.614, 10.826, 9.64, 8.055]


class TestConversions:

    @pytest.mark.parametrize("x, expected", [(320, 0), (384, 64), (256, -64)])
    def test_pixel_error(self, x, expected):
        assert pixel_error(x, 320) == expected

    @pytest.mark.parametrize("e, expected", [(0, 0.0), (320, 30.0), (64, 6.0)])
    def test_error_to_degrees(self, e, expected):
        assert error_to_degrees(e, CameraGeometry()) == pytest.approx(expected, abs=1e-12)


class TestPidStep:

    def test_zero_gains_hold_angle(self, rng):
        state = ServoState(theta=3.0)
        gains = PidGains(kp=0.0, ki=0.0, kd=0.0, dt=0.1)
        for e in rng.normal(0, 200, size=20):
            assert pid_step(state, gains, float(e)) == 3.0

    def test_proportional_step(self):
        state = ServoState()
        assert pid_step(state, PidGains(kp=0.01, ki=0.0, kd=0.0, dt=0.1), 100.0) == pytest.approx(1.0, abs=1e-12)

    def test_golden_trace(self):
        state = ServoState.initial(ServoLimits(), GOLDEN_GAINS)
        trace = [pid_step(state, GOLDEN_GAINS, e) for e in GOLDEN_ERRORS]
        np.testing.assert_allclose(trace, GOLDEN_THETA, rtol=0, atol=1e-12)
        assert state.e_sum == pytest.approx(15.0, abs=1e-12)
        assert state.e_prev == 20.0

    def test_proportional_only_increment(self, rng):
        gains = PidGains(kp=0.013, ki=0.0, kd=0.0, dt=0.05)
        state = ServoState(theta_min=-1e9, theta_max=1e9)
        for e in rng.uniform(-300, 300, size=50):
            before = state.theta
            after = pid_step(state, gains, float(e))
            assert after - before == pytest.approx(gains.kp * e, abs=1e-9)

    def test_doubling_error_doubles_increment(self):
        gains = PidGains(kp=0.02, ki=0.0, kd=0.0, dt=0.05)
        single = pid_step(ServoState(), gains, 37.0)
        double = pid_step(ServoState(), gains, 74.0)
        assert double == pytest.approx(2 * single, abs=1e-12)

    def test_clamp_holds_under_fuzzing(self):
        rng = np.random.default_rng(7)
        gains = PidGains(kp=0.5, ki=0.3, kd=0.05, dt=0.05)
        state = ServoState(theta_min=-45.0, theta_max=30.0, e_sum_limit=500.0)
        errors = rng.standard_cauchy(10 ** 6) * 100.0
        for e in errors:
            theta = pid_step(state, gains, float(e))
            assert -45.0 <= theta <= 30.0
            assert abs(state.e_sum) <= 500.0

    def test_anti_windup_clamp(self):
        gains = PidGains(kp=0.0, ki=0.001, kd=0.0, dt=0.05)
        state = ServoState(e_sum_limit=10.0)
        for _ in range(100):
            pid_step(state, gains, 100.0)
        assert state.e_sum == 10.0
        for _ in range(3):
            pid_step(state, gains, -1000.0)
        assert state.e_sum == -10.0

    def test_default_windup_limit_reaches_theta_max(self):
        state = ServoState.initial(ServoLimits(), PidGains(ki=0.002))
        assert state.e_sum_limit == pytest.approx(90.0 / 0.002)
        assert ServoState.initial(ServoLimits(), PidGains(ki=0.0)).e_sum_limit == math.inf

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            ServoState(theta_min=10.0, theta_max=-10.0)
        with pytest.raises(ValueError):
            ServoState(e_sum_limit=0.0)


class TestHoldOnMiss:

    def test_hold_keeps_angle(self):
        state = ServoState(theta=12.5)
        assert [hold_on_miss(state) for _ in range(3)] == [12.5, 12.5, 12.5]

    def test_fresh_state_miss(self):
        assert hold_on_miss(ServoState()) == 0.0

    def test_memory_frozen_across_miss(self):
        gains = PidGains(kp=0.0, ki=0.0, kd=1.0, dt=0.05)
        state = ServoState()
        first = pid_step(state, gains, 50.0)
        e_sum = state.e_sum
        hold_on_miss(state)
        assert state.e_prev == 50.0 and state.e_sum == e_sum
        # derivative term is zero because e_prev survived the miss
        assert pid_step(state, gains, 50.0) == first


class TestPanServo:

    def test_update_reports_error(self):
        servo = PanServo(PidGains(kp=0.01, ki=0.0, kd=0.0, dt=0.1))
        theta, e = servo.update(420.0)
        assert e == 100.0
        assert theta == pytest.approx(1.0, abs=1e-12)

    def test_miss_returns_none(self):
        servo = PanServo()
        servo.update(400.0)
        theta = servo.state.theta
        assert servo.update(None) == (theta, None)

    def test_reset_restores_initial_angle(self):
        servo = PanServo(limits=ServoLimits(theta_init_deg=5.0))
        servo.update(600.0)
        servo.reset()
        assert servo.state.theta == 5.0
        assert servo.state.e_sum == 0.0 and servo.state.e_prev == 0.0
