import math
import random
from fractions import Fraction

import numpy as np
import pytest

from minitori.scalars import sqrt_field
from minitori.symmetric import (SymMatrix, determinant, inverse,
                                is_positive_definite, logdet, psd_sqrt,
                                trace_inner)
from conftest import random_rational_pd


class TestTraceInner:
    def test_identity(self):
        i3 = SymMatrix.identity(3)
        assert trace_inner(i3, i3) == 3

    def test_inverse_pairing(self, rng):
        for n in (2, 3, 4):
            q = random_rational_pd(rng, n)
            assert trace_inner(q, inverse(q)) == n

    def test_diag_against_offdiag(self):
        d = SymMatrix.diag([1, 2])
        off = SymMatrix([[0, 1], [1, 0]])
        # tr(diag(1,2) . offdiag) expands to 0 by hand
        assert trace_inner(d, off) == 0

    def test_bilinearity(self, rng):
        for _ in range(10):
            a = random_rational_pd(rng, 3)
            b = random_rational_pd(rng, 3)
            c = random_rational_pd(rng, 3)
            al = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            be = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            lhs = trace_inner(a.scale(al) + b.scale(be), c)
            rhs = al * trace_inner(a, c) + be * trace_inner(b, c)
            assert lhs == rhs

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            trace_inner(SymMatrix.identity(2), SymMatrix.identity(3))


class TestPositiveDefinite:
    def test_identity(self):
        assert is_positive_definite(SymMatrix.identity(3)) is True

    def test_indefinite_diag(self):
        assert is_positive_definite(SymMatrix.diag([1, -1])) is False

    def test_degenerate_half_matrix(self):
        # diagonal 1, off-diagonal -1/2: determinant zero by cofactor expansion
        h = Fraction(-1, 2)
        m = SymMatrix([[1, h, h], [h, 1, h], [h, h, 1]])
        assert determinant(m) == 0
        assert is_positive_definite(m) is False

    def test_float_borderline_indeterminate(self):
        eps = 1e-16
        m = SymMatrix([[1.0, 1.0], [1.0, 1.0 + eps]])
        assert is_positive_definite(m) is None

    def test_float_clear_cases(self):
        assert is_positive_definite(SymMatrix([[2.0, 0.1], [0.1, 3.0]])) is True
        assert is_positive_definite(SymMatrix([[1.0, 2.0], [2.0, 1.0]])) is False

    def test_algebraic_certified(self):
        w = sqrt_field(2).generator()
        f = w.field
        m = SymMatrix([[f.from_rational(2), w], [w, f.from_rational(2)]])  # eigs 2 +- sqrt2
        assert is_positive_definite(m) is True
        m2 = SymMatrix([[f.from_rational(1), w], [w, f.from_rational(1)]])  # det = 1 - 2 < 0
        assert is_positive_definite(m2) is False


class TestInverse:
    def test_diag(self):
        assert inverse(SymMatrix.diag([1, 4])) == SymMatrix.diag([1, Fraction(1, 4)])

    def test_random_multiply_oracle(self, rng):
        for _ in range(5):
            q = random_rational_pd(rng, 4)
            prod = q.matmul(inverse(q))
            for i in range(4):
                for j in range(4):
                    assert prod[i][j] == (1 if i == j else 0)

    def test_involution(self, rng):
        q = random_rational_pd(rng, 3)
        assert inverse(inverse(q)) == q

    def test_singular(self):
        with pytest.raises(ValueError):
            inverse(SymMatrix([[1, 1], [1, 1]]))

    def test_algebraic_inverse_round_trip(self):
        from minitori.constructions import catalog
        data = catalog("quadratic-s9")
        qinv = inverse(data.q)
        prod = data.q.matmul(qinv)
        for i in range(3):
            for j in range(3):
                want = 1 if i == j else 0
                assert (prod[i][j] - want).is_zero()
        # unit norms survive the round trip far below 1e-10
        for c in data.y:
            assert abs(float(data.q.quad_form(c)) - 1.0) <= 1e-15


class TestLogdet:
    def test_identity(self):
        assert logdet(SymMatrix.identity(4)) == 0.0

    def test_diag_e(self):
        e = math.e
        assert abs(logdet(SymMatrix([[e, 0.0], [0.0, e]])) - 2.0) < 1e-14

    def test_eigenvalue_product_oracle(self, rng):
        nprng = np.random.default_rng(7)
        for _ in range(10):
            b = nprng.normal(size=(4, 4))
            q = SymMatrix.from_numpy(b @ b.T + 0.5 * np.eye(4))
            eig = np.linalg.eigvalsh(q.to_numpy())
            assert abs(logdet(q) - float(np.sum(np.log(eig)))) <= 1e-12

    def test_rejects_non_pd(self):
        with pytest.raises(ValueError):
            logdet(SymMatrix.diag([1, -1]))

    def test_strict_concavity_along_segments(self):
        nprng = np.random.default_rng(11)
        for _ in range(10):
            a = nprng.normal(size=(3, 3))
            b = nprng.normal(size=(3, 3))
            qa = SymMatrix.from_numpy(a @ a.T + np.eye(3))
            qb = SymMatrix.from_numpy(b @ b.T + np.eye(3))
            for t in (0.25, 0.5, 0.75):
                mix = SymMatrix.from_numpy(t * qa.to_numpy() + (1 - t) * qb.to_numpy())
                assert logdet(mix) > t * logdet(qa) + (1 - t) * logdet(qb) - 1e-12


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(psd_sqrt(SymMatrix.identity(4)), np.eye(4))

    def test_diag(self):
        r = psd_sqrt(SymMatrix.diag([4, 9]))
        assert np.allclose(r, np.diag([2.0, 3.0]))

    def test_random_psd_residual(self):
        nprng = np.random.default_rng(3)
        for _ in range(8):
            b = nprng.normal(size=(5, 3))
            s = SymMatrix.from_numpy(b @ b.T)  # rank deficient PSD
            r = psd_sqrt(s)
            assert np.max(np.abs(r @ r - s.to_numpy())) <= 1e-10

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            psd_sqrt(SymMatrix.diag([1.0, -0.5]))
