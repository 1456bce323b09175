import cmath
import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbjacobi import (
    NumericalError,
    PreconditionError,
    Verdict,
    ZeroSet,
    arg_mod_pi,
    arg_sum,
    classify_config,
    localization,
    phase,
    phase_increment,
    phase_trace,
    write_hodograph_csv,
)
from helpers import random_nonreal_points

ROOT_OF_1_PLUS_I = 2.0 ** 0.25 * cmath.exp(1j * math.pi / 8)


def upper_set(*zs):
    return ZeroSet.classify(zs)


class TestArgModPi:
    def test_imaginary_unit(self):
        assert arg_mod_pi(1j) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_lower_half(self):
        # pi + Arg(-1-i) = pi - 3pi/4
        assert arg_mod_pi(-1 - 1j) == pytest.approx(math.pi / 4, abs=1e-15)

    def test_real(self):
        assert arg_mod_pi(3.0) == 0.0
        assert arg_mod_pi(-2.0) == 0.0

    def test_zero_rejected(self):
        with pytest.raises(PreconditionError):
            arg_mod_pi(0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(-50, 50),
        st.floats(-50, 50).filter(lambda y: abs(y) > 1e-6),
    )
    def test_pi_periodicity_and_cotangent_form(self, x, y):
        z = complex(x, y)
        assert arg_mod_pi(z) == pytest.approx(arg_mod_pi(-z), abs=1e-12)
        # arccot(Re/Im) on (0, pi)
        assert arg_mod_pi(z) == pytest.approx(math.atan2(1.0, x / y), rel=1e-12, abs=1e-12)
        assert 0.0 < arg_mod_pi(z) < math.pi


class TestPhase:
    def test_single_zero_at_origin(self):
        assert phase(upper_set(1j), 0.0) == pytest.approx(-math.pi / 2, abs=1e-15)

    def test_limit_at_plus_infinity(self):
        # far-field value of the continuous branch tends to zero
        assert abs(phase(upper_set(1j), 1e12)) < 1e-11

    def test_purely_imaginary_values_at_real_part_zeros(self):
        # h = z^2 - i z - 1 has Re h(t) = t^2 - 1 on the real line, so the
        # phase is congruent to pi/2 mod pi exactly at t = +-1
        zeros = upper_set((math.sqrt(3) + 1j) / 2, (-math.sqrt(3) + 1j) / 2)
        for t in (1.0, -1.0):
            val = phase(zeros, t)
            assert math.cos(val) == pytest.approx(0.0, abs=1e-14)

    def test_real_zero_rejected(self):
        with pytest.raises(PreconditionError):
            phase(ZeroSet.classify([1.0 + 0j, 1j]), 0.0)


class TestPhaseIncrement:
    def test_two_upper(self):
        inc = phase_increment(upper_set(1j, 2j))
        assert inc.symbolic == pytest.approx(2 * math.pi)
        assert inc.numeric == pytest.approx(2 * math.pi, abs=1e-6)

    def test_balanced(self):
        inc = phase_increment(upper_set(1j, -1j))
        assert inc.symbolic == 0.0
        assert abs(inc.numeric) < 1e-6

    def test_single_lower(self):
        inc = phase_increment(upper_set(-3j))
        assert inc.symbolic == pytest.approx(-math.pi)
        assert inc.numeric == pytest.approx(-math.pi, abs=1e-6)

    def test_real_zero_rejected(self):
        with pytest.raises(PreconditionError):
            phase_increment(ZeroSet.classify([2.0]))

    def test_agreement_on_random_sets(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(1, 11))
            zs = ZeroSet.classify(random_nonreal_points(rng, n))
            inc = phase_increment(zs)
            assert abs(inc.symbolic - inc.numeric) <= 1e-6


class TestTrace:
    def test_steps_bounded(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            zs = ZeroSet.classify(random_nonreal_points(rng, n))
            samples = phase_trace(zs)
            phis = np.array([s.phi for s in samples])
            assert np.max(np.abs(np.diff(phis))) < math.pi / 2

    def test_monotone_for_upper_half_sets(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            pts = random_nonreal_points(rng, n)
            zs = ZeroSet.classify(pts.real + 1j * np.abs(pts.imag))
            samples = phase_trace(zs)
            phis = np.array([s.phi for s in samples])
            assert np.all(np.diff(phis) > 0)

    def test_csv_export(self, tmp_path):
        path = tmp_path / "trace.csv"
        zs = upper_set(1j, -1j)
        rows = write_hodograph_csv(zs, path)
        with open(path) as fh:
            reader = csv.reader(fh)
            header = next(reader)
            body = list(reader)
        assert header == ["t", "re_h", "im_h", "phi"]
        assert len(body) == rows
        # 17 significant digits: values round-trip exactly, h = z^2 + 1
        t, re_h, im_h, _phi = map(float, body[0])
        assert re_h == pytest.approx(t * t + 1, rel=1e-15)
        assert im_h == 0.0


class TestArgSum:
    def test_single(self):
        assert arg_sum(upper_set(1j)) == pytest.approx(math.pi / 2)

    def test_square_roots_of_one_plus_i(self):
        zs = upper_set(ROOT_OF_1_PLUS_I, -ROOT_OF_1_PLUS_I)
        assert arg_sum(zs) == pytest.approx(math.pi / 4, abs=1e-14)

    def test_two_plus_i(self):
        assert arg_sum(upper_set(2 + 1j)) == pytest.approx(math.atan(0.5), abs=1e-15)

    def test_scaling_invariance(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            n = int(rng.integers(1, 9))
            zs = random_nonreal_points(rng, n)
            c = rng.uniform(0.1, 10.0)
            a = arg_sum(ZeroSet.classify(zs))
            b = arg_sum(ZeroSet.classify(c * zs))
            assert a == pytest.approx(b, abs=1e-12)


class TestClassifyConfig:
    def test_equal(self):
        rep = classify_config(upper_set(ROOT_OF_1_PLUS_I, -ROOT_OF_1_PLUS_I), 1 + 1j, 0.0)
        assert rep.verdict is Verdict.EQUAL
        assert (rep.n_plus, rep.n_minus, rep.s) == (1, 1, 1)

    def test_less_symmetric_pair(self):
        w = cmath.exp(1j * math.pi / 12)
        rep = classify_config(ZeroSet.classify([w, -w]), 1 + 1j, 0.0)
        assert rep.verdict is Verdict.LESS
        assert rep.arg_sum == pytest.approx(math.pi / 6, abs=1e-14)

    def test_less_single(self):
        rep = classify_config(upper_set(2 + 1j), 1 + 1j, 0.0)
        assert rep.verdict is Verdict.LESS

    def test_neither(self):
        rep = classify_config(upper_set(1j, 3j), 1 + 1j, 0.0)
        assert rep.verdict is Verdict.NEITHER

    def test_real_zero_flagged(self):
        rep = classify_config(ZeroSet.classify([1.5, 1j]), 1 + 1j, 0.0)
        assert rep.verdict is Verdict.HAS_REAL_ZERO
        assert math.isnan(rep.arg_sum)

    def test_shift_detects_real_zero(self):
        rep = classify_config(upper_set(1.5 + 1j, 2j), 1 + 1j, xi=1.5)
        assert rep.verdict is not Verdict.HAS_REAL_ZERO
        rep2 = classify_config(ZeroSet.classify([1.5 + 0j, 2j]), 1 + 1j, xi=1.5)
        assert rep2.verdict is Verdict.HAS_REAL_ZERO

    def test_angle_ordering_invariant(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            alpha = complex(rng.uniform(-5, 5), rng.uniform(0.01, 5))
            rep = classify_config(upper_set(1j), alpha, 0.0)
            assert 0 < rep.a2 < rep.a1 < math.pi

    def test_lower_half_alpha_rejected(self):
        with pytest.raises(PreconditionError):
            classify_config(upper_set(1j), 1 - 1j, 0.0)


class TestLocalization:
    def test_one_negative_zero(self):
        zeros = upper_set((math.sqrt(3) + 1j) / 2, (-math.sqrt(3) + 1j) / 2)
        loc = localization(zeros)
        assert loc.s == 1 and not loc.at_boundary
        assert arg_sum(zeros) == pytest.approx(math.pi, abs=1e-14)

    def test_boundary_single(self):
        loc = localization(upper_set(1j))
        assert loc.at_boundary and loc.s == 0

    def test_boundary_pair(self):
        zeros = upper_set(cmath.exp(1j * math.pi / 6), cmath.exp(1j * math.pi / 3))
        loc = localization(zeros)
        assert loc.at_boundary and loc.s == 0

    def test_lower_zero_rejected(self):
        with pytest.raises(PreconditionError):
            localization(ZeroSet.classify([1j, -1j]))
