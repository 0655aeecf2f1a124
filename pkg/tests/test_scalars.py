import math
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from minitori.scalars import (AlgebraicField, AlgebraicScalar, count_real_roots,
                              factor_min_poly, format_rational,
                              irreducible_degree_le4, is_rational_square,
                              isolate_real_roots, parse_rational, poly_eval,
                              rational_roots, refine_root, sqrt_field,
                              squarefree_part)


class TestRationalWire:
    def test_round_trip(self):
        for s in ("3", "-7/2", "0", "10801/443880"):
            assert format_rational(parse_rational(s)) == s

    def test_whole_numbers_drop_denominator(self):
        assert format_rational(Fraction(8, 4)) == "2"

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    def test_parse_format_identity(self, p, q):
        x = Fraction(p, q)
        assert parse_rational(format_rational(x)) == x


class TestSquares:
    def test_examples(self):
        assert is_rational_square(Fraction(9, 4))
        assert not is_rational_square(Fraction(2))
        assert not is_rational_square(Fraction(-1))

    def test_squarefree_part(self):
        assert squarefree_part(10801 * 36) == 10801
        assert squarefree_part(553) == 553
        assert squarefree_part(-12) == -3
        assert squarefree_part(1) == 1


class TestIrreducibility:
    def test_published_cubic(self):
        assert irreducible_degree_le4([-33, 149, -160, 50])

    def test_published_quartic(self):
        # -14700 x^4 - 23240 x^3 + 1079 x^2 + 10730 x + 1507
        assert irreducible_degree_le4([1507, 10730, 1079, -23240, -14700])

    def test_biquadratic_splits(self):
        assert not irreducible_degree_le4([-1, 0, 0, 0, 1])  # x^4 - 1

    def test_degree_guard(self):
        with pytest.raises(ValueError):
            irreducible_degree_le4([1, 0, 0, 0, 0, 1])

    def test_quadratic_pair_split_detected(self):
        # (x^2 + x + 1)(x^2 - x + 1) = x^4 + x^2 + 1, no rational roots
        assert not irreducible_degree_le4([1, 0, 1, 0, 1])

    def test_against_sympy(self, rng):
        x = sp.symbols("x")
        for _ in range(120):
            deg = rng.randint(1, 4)
            coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
            ours = irreducible_degree_le4(coeffs)
            theirs = sp.Poly(sum(c * x**i for i, c in enumerate(coeffs)), x).is_irreducible
            assert ours == theirs, coeffs

    def test_rational_roots(self):
        assert rational_roots([-33, 149, -160, 50]) == []
        assert set(rational_roots([-2, 1, -2, 1])) == {Fraction(2)}  # (x-2)(x^2+1)


class TestRootIsolation:
    def test_isolates_all_real_roots(self, rng):
        for _ in range(40):
            deg = rng.randint(2, 4)
            coeffs = [rng.randint(-8, 8) for _ in range(deg)] + [rng.randint(1, 8)]
            import numpy as np
            real = sorted(r.real for r in np.roots(list(reversed(coeffs)))
                          if abs(r.imag) < 1e-9)
            # collapse numerically repeated roots; isolation reports distinct ones
            distinct = []
            for r in real:
                if not distinct or abs(r - distinct[-1]) > 1e-6:
                    distinct.append(r)
            intervals = isolate_real_roots(coeffs)
            assert len(intervals) == len(distinct)
            for (lo, hi), r in zip(intervals, distinct):
                assert float(lo) - 1e-6 <= r <= float(hi) + 1e-6

    def test_refine(self):
        (lo, hi), = [iv for iv in isolate_real_roots([-2, 0, 1]) if iv[1] > 0]
        lo2, hi2 = refine_root([-2, 0, 1], lo, hi, Fraction(1, 10**12))
        assert abs(float((lo2 + hi2) / 2) - math.sqrt(2)) < 1e-11

    def test_count_real_roots(self):
        assert count_real_roots([-2, 0, 1], 0, 2) == 1
        assert count_real_roots([-2, 0, 1], -2, 2) == 2

    def test_factor_min_poly(self):
        # x^4 - 1: the root in (1/2, 3/2) is 1, minpoly x - 1
        assert factor_min_poly([-1, 0, 0, 0, 1], Fraction(1, 2), Fraction(3, 2)) == (-1, 1)
        # x^4 - 4: root sqrt(2) has minpoly x^2 - 2
        assert factor_min_poly([-4, 0, 0, 0, 1], Fraction(1), Fraction(2)) == (-2, 0, 1)


class TestAlgebraicScalar:
    def test_sqrt_two_arithmetic(self):
        f = sqrt_field(2)
        w = f.generator()
        assert (w * w).as_fraction() == 2
        assert ((1 + w) * (1 - w)).as_fraction() == -1
        assert (w / w).as_fraction() == 1
        inv = (1 + w).inverse()
        assert ((1 + w) * inv).as_fraction() == 1

    def test_signs_and_comparison(self):
        f = sqrt_field(2)
        w = f.generator()
        assert w.sign() == 1
        assert (w - 2).sign() == -1
        assert (w - Fraction(141421356, 10**8)).sign() == 1
        assert w > 1
        assert w < Fraction(3, 2)
        assert abs(float(w) - math.sqrt(2)) < 1e-15

    def test_zero_sign(self):
        f = sqrt_field(5)
        w = f.generator()
        assert (w - w).sign() == 0

    def test_refinement_is_monotone(self):
        f = sqrt_field(3)
        lo0, hi0 = f.interval
        for _ in range(30):
            f.refine()
            lo, hi = f.interval
            assert lo0 <= lo < hi <= hi0
            assert poly_eval(f.minpoly, lo) * poly_eval(f.minpoly, hi) < 0
            lo0, hi0 = lo, hi

    def test_cubic_field(self):
        f = AlgebraicField((-33, 149, -160, 50), (Fraction(5, 16), Fraction(21, 64)))
        a = f.generator()
        # the generator satisfies its minimal polynomial
        val = 50 * a**3 - 160 * a**2 + 149 * a - 33
        assert val.is_zero()
        assert abs(float(a) - 0.321060780647883) < 1e-12

    def test_quartic_field_division(self):
        f = AlgebraicField((-1507, -10730, -1079, 23240, 14700),
                           (Fraction(-5, 32), Fraction(-9, 64)))
        a = f.generator()
        x = (3 * a**2 - a + 1) / (a + 2)
        assert ((a + 2) * x - (3 * a**2 - a + 1)).is_zero()

    def test_mixed_field_rejected(self):
        w2 = sqrt_field(2).generator()
        w3 = sqrt_field(3).generator()
        with pytest.raises(TypeError):
            _ = w2 + w3

    def test_reducible_minpoly_rejected(self):
        with pytest.raises(ValueError):
            AlgebraicField((-1, 0, 1), (0, 2))  # x^2 - 1

    def test_interval_must_isolate(self):
        with pytest.raises(ValueError):
            AlgebraicField((-2, 0, 1), (-2, 2))  # both roots of x^2 - 2
