import math

import numpy as np
import pytest

from hbjacobi import (
    HermitianMatrix,
    JacobiMatrix,
    PreconditionError,
    char_polys,
    eigen,
    is_strictly_interlacing,
    lanczos_reduce,
    reconstruct,
    roots,
    spectral_weights,
)
from helpers import coupled_jacobi, even_interlacing, jacobi_error, random_jacobi, random_jacobi_separated

FREE = JacobiMatrix((0.0, 0.0), (1.0,))


class TestJacobiMatrix:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            JacobiMatrix((), ())
        with pytest.raises(PreconditionError):
            JacobiMatrix((0.0, 0.0), (0.0,))
        with pytest.raises(PreconditionError):
            JacobiMatrix((0.0, 0.0), (-1.0,))
        with pytest.raises(PreconditionError):
            JacobiMatrix((0.0, 0.0), (1.0, 2.0))

    def test_dense(self):
        np.testing.assert_array_equal(FREE.dense(), [[0, 1], [1, 0]])

    def test_truncated(self):
        J = JacobiMatrix((1.0, 2.0, 3.0), (0.5, 0.25))
        assert J.truncated() == JacobiMatrix((2.0, 3.0), (0.25,))
        assert J.truncated(2) == JacobiMatrix((3.0,), ())

    def test_json_round_trip(self):
        J = JacobiMatrix((1.0, -2.0), (0.3,))
        assert JacobiMatrix.from_dict(J.as_dict()) == J


class TestCharPolys:
    def test_free_two_site(self):
        polys = char_polys(FREE)
        np.testing.assert_array_equal(polys[0].coeffs, [-1, 0, 1])
        np.testing.assert_array_equal(polys[1].coeffs, [0, 1])
        np.testing.assert_array_equal(polys[2].coeffs, [1])

    def test_shifted_two_site(self):
        polys = char_polys(JacobiMatrix((1.0, 1.0), (1.0,)))
        np.testing.assert_array_equal(polys[0].coeffs, [0, -2, 1])  # z(z-2)
        np.testing.assert_array_equal(polys[1].coeffs, [-1, 1])

    def test_single_site(self):
        polys = char_polys(JacobiMatrix((3.5,), ()))
        np.testing.assert_array_equal(polys[0].coeffs, [-3.5, 1])

    def test_degrees_and_monic(self):
        rng = np.random.default_rng(22)
        J = random_jacobi(rng, 7)
        polys = char_polys(J)
        assert [p.degree for p in polys] == [7 - j for j in range(8)]
        assert all(p.is_monic for p in polys)

    def test_agrees_with_eigensolver(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            J = random_jacobi_separated(rng, int(rng.integers(1, 11)), 0.05)
            lam = np.sort([z.real for z in roots(char_polys(J)[0]).zeros])
            np.testing.assert_allclose(lam, eigen(J), atol=1e-9)


class TestEigen:
    def test_free(self):
        np.testing.assert_allclose(eigen(FREE), [-1, 1], atol=1e-14)

    def test_shifted(self):
        np.testing.assert_allclose(eigen(JacobiMatrix((1.0, 1.0), (1.0,))), [0, 2], atol=1e-14)

    def test_truncation_interlaces(self):
        rng = np.random.default_rng(24)
        for _ in range(40):
            J = coupled_jacobi(rng, int(rng.integers(2, 12)), w_floor=1e-6)
            assert is_strictly_interlacing(eigen(J), eigen(J.truncated()))


class TestWeights:
    def test_positive_unit_sum(self):
        rng = np.random.default_rng(25)
        for _ in range(40):
            J = random_jacobi_separated(rng, int(rng.integers(2, 13)), 0.05)
            w = spectral_weights(eigen(J), eigen(J.truncated()))
            assert np.all(w > 0)
            assert math.fsum(map(float, w)) == pytest.approx(1.0, abs=1e-10)


class TestReconstruct:
    def test_free(self):
        assert jacobi_error(reconstruct([-1, 1], [0]), FREE) < 1e-14

    def test_shifted(self):
        J = reconstruct([0, 2], [1])
        assert jacobi_error(J, JacobiMatrix((1.0, 1.0), (1.0,))) < 1e-14

    def test_single(self):
        assert reconstruct([4.2], []).b[0] == pytest.approx(4.2)

    def test_round_trip_from_matrix(self):
        rng = np.random.default_rng(26)
        for _ in range(60):
            n = int(rng.integers(1, 13))
            J = coupled_jacobi(rng, n, w_floor=1e-6)
            mu = eigen(J.truncated()) if n > 1 else []
            Jr = reconstruct(eigen(J), mu)
            assert jacobi_error(J, Jr) < 1e-6

    def test_round_trip_from_spectra(self):
        rng = np.random.default_rng(29)
        for _ in range(40):
            n = int(rng.integers(2, 13))
            lam, mu = even_interlacing(rng, n, span=0.1 * n)  # merged gaps >= 0.1
            J = reconstruct(lam, mu)
            np.testing.assert_allclose(eigen(J), lam, atol=1e-8)
            np.testing.assert_allclose(eigen(J.truncated()), mu, atol=1e-8)

    def test_interlacing_violation_rejected(self):
        with pytest.raises(PreconditionError):
            reconstruct([-1, 1], [2])


class TestLanczos:
    def test_two_level(self):
        H = np.diag([1.0, -1.0]).astype(complex)
        res = lanczos_reduce(H, np.array([1.0, 1.0]) / math.sqrt(2))
        assert res.k == 2
        assert jacobi_error(res.jacobi, FREE) < 1e-12
        np.testing.assert_allclose(res.basis @ res.basis.conj().T, np.eye(2), atol=1e-12)

    def test_eigenvector_start_terminates_early(self):
        res = lanczos_reduce(np.eye(2, dtype=complex), np.array([1.0, 0.0]))
        assert res.k == 1
        assert res.jacobi == JacobiMatrix((1.0,), ())

    def test_tridiagonal_passthrough(self):
        J = JacobiMatrix((0.4, -1.0, 2.0), (0.5, 1.5))
        res = lanczos_reduce(J.dense().astype(complex), np.eye(3)[0])
        assert res.k == 3
        assert jacobi_error(res.jacobi, J) < 1e-12
        np.testing.assert_allclose(res.basis, np.eye(3), atol=1e-12)

    def test_reduction_properties(self):
        rng = np.random.default_rng(27)
        for _ in range(25):
            n = int(rng.integers(2, 15))
            A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            H = (A + A.conj().T) / 2
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            res = lanczos_reduce(H, v)
            assert res.k == n  # random vectors are cyclic almost surely
            S = res.basis
            hmax = np.max(np.abs(H))
            assert np.max(np.abs(S @ H @ S.conj().T - res.jacobi.dense())) <= 1e-10 * hmax
            np.testing.assert_allclose(S @ S.conj().T, np.eye(n), atol=1e-12)
            sv = S @ v
            assert abs(sv[0]) == pytest.approx(np.linalg.norm(v), rel=1e-12)
            np.testing.assert_allclose(sv[1:], 0, atol=1e-10 * np.linalg.norm(v))

    def test_repeated_eigenvalue_not_cyclic(self):
        rng = np.random.default_rng(28)
        # a repeated eigenvalue caps the Krylov dimension below n for every v
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        H = q @ np.diag([2.0, 2.0, -1.0, 0.5]).astype(complex) @ q.conj().T
        res = lanczos_reduce(H, rng.normal(size=4) + 1j * rng.normal(size=4))
        assert res.k == 3

    def test_zero_vector_rejected(self):
        with pytest.raises(PreconditionError):
            lanczos_reduce(np.eye(2, dtype=complex), np.zeros(2))

    def test_non_hermitian_rejected(self):
        with pytest.raises(PreconditionError):
            HermitianMatrix(np.array([[0, 1], [2, 0]], dtype=complex))

    def test_hermitian_json_round_trip(self):
        H = HermitianMatrix(np.array([[1.0, 1j], [-1j, 0.5]]))
        H2 = HermitianMatrix.from_dict(H.as_dict())
        np.testing.assert_array_equal(H.entries, H2.entries)
