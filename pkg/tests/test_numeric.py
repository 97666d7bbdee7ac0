import cmath
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcont.analysis import regular_zero_count
from parcont.groebner import GroebnerBasis, buchberger
from parcont.ideals import sample_generic_point
from parcont.numeric import (
    SINGULAR,
    ComplexPoint,
    RootFindingError,
    TrackerConfig,
    UnsupportedShape,
    aberth,
    backward_error,
    cluster,
    solve_triangular,
    track_path,
    univariate_roots,
    verify_count_numerically,
)
from parcont.poly import VariableContext

from .conftest import P

X = VariableContext(("x",))
X12 = VariableContext(("x1", "x2"))


def quadratic_formula(a, b, c):
    d = cmath.sqrt(b * b - 4 * a * c)
    return [(-b + d) / (2 * a), (-b - d) / (2 * a)]


def _match(found, expected, tol):
    found = sorted(found, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    expected = sorted(expected, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    return len(found) == len(expected) and all(abs(a - b) < tol for a, b in zip(found, expected))


class TestUnivariate:
    def test_quadratic(self):
        roots = [p[0] for p in univariate_roots(P(X, "x^2 + 3*x + 2"))]
        assert _match(roots, quadratic_formula(1, 3, 2), 1e-10)

    def test_double_root(self):
        roots = [p[0] for p in univariate_roots(P(X, "x^2 - 2*x + 1"))]
        assert len(roots) == 2 and all(abs(z - 1) < 1e-6 for z in roots)
        assert len(cluster(univariate_roots(P(X, "x^2 - 2*x + 1")))) == 1

    def test_linear(self):
        assert univariate_roots(P(X, "x")) == [ComplexPoint((0j,))]

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            univariate_roots(X.const(3))

    def test_nonconvergence_carries_partial(self):
        with pytest.raises(RootFindingError) as info:
            aberth([1, 0, 0, 0, -1], max_iter=1)
        assert len(info.value.partial) == 4

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda c: c[0] != 0))
    def test_count_and_residual(self, coeffs):
        roots = aberth(coeffs)
        assert len(roots) == len(coeffs) - 1
        norm = np.linalg.norm(coeffs)
        for z in roots:
            assert backward_error(coeffs, z) < 1e-10
            assert abs(np.polyval(coeffs, z)) / norm < 1e-10

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 9), st.integers(-9, 9), st.integers(-9, 9))
    def test_quadratic_oracle(self, a, b, c):
        roots = aberth([a, b, c])
        exp = quadratic_formula(a, b, c)
        if abs(exp[0] - exp[1]) > 1e-3:
            assert _match(roots, exp, 1e-8)


class TestTriangular:
    def test_example2_at_two(self):
        G = buchberger([P(X12, "x2 - 3"), P(X12, "x1^2 - 3*x1 + 2")])
        pts = sorted((round(p[0].real, 8), round(p[1].real, 8)) for p in solve_triangular(G))
        assert pts == [(1, 3), (2, 3)]

    def test_quadratic(self):
        pts = sorted(round(p[0].real, 8) for p in solve_triangular(buchberger([P(X, "x^2 + 3*x + 2")])))
        assert pts == [-2, -1]

    def test_linear(self):
        pts = solve_triangular(buchberger([P(X12, "x1 - 5"), P(X12, "x2 - 7")]))
        assert len(pts) == 1 and np.allclose(pts[0].array(), [5, 7])

    def test_coupled(self):
        # x1 depends on x2 through the coefficients
        G = buchberger([P(X12, "x2^2 - 4"), P(X12, "x1 - x2 - 1")])
        pts = sorted((round(p[0].real, 8), round(p[1].real, 8)) for p in solve_triangular(G))
        assert pts == [(-1, -2), (3, 2)]

    def test_unsupported_shape(self):
        G = GroebnerBasis(X12, (P(X12, "x1*x2 - 1"), P(X12, "x2^2 - 1")))
        with pytest.raises(UnsupportedShape, match="unsupported shape"):
            solve_triangular(G)
        with pytest.raises(UnsupportedShape, match="unsupported shape"):
            solve_triangular(GroebnerBasis(X12, (P(X12, "x2 - 1"),)))


class TestTracking:
    Q1 = {"a": 1, "b": 3, "c": 2}
    Q2 = {"a": 1, "b": -5, "c": 6}

    def test_roots_move_to_target(self, ex1):
        ends = []
        for x0 in (-1, -2):
            r = track_path(ex1, self.Q2, self.Q1, [complex(x0)])
            assert r.converged and r.final_residual < TrackerConfig().end_tol
            ends.append(r.end[0])
        assert _match(ends, [2, 3], 1e-6)
        assert abs(ends[0] - ends[1]) > 1e-6

    def test_constant_homotopy(self, ex1):
        r = track_path(ex1, self.Q1, self.Q1, [complex(-1)])
        assert r.converged and r.steps == 1 and abs(r.end[0] + 1) < 1e-12

    def test_toward_discriminant(self, ex1):
        r = track_path(ex1, {"a": 1, "b": -2, "c": 1}, self.Q1, [complex(-1)])
        assert r.status == SINGULAR or r.final_jacobian_det < 1e-4

    def test_bad_start_rejected(self, ex1):
        with pytest.raises(ValueError, match="start"):
            track_path(ex1, self.Q2, self.Q1, [complex(0.5)])

    def test_example2_tracks(self, ex2):
        starts = solve_triangular(buchberger([P(X12, "x2 - 3"), P(X12, "x1^2 - 3*x1 + 2")]))
        ends = [track_path(ex2, {"a": 5}, {"a": 2}, s) for s in starts]
        assert all(r.converged for r in ends)
        got = sorted(round(r.end[0].real, 6) for r in ends)
        assert got == [1, 5]
        assert all(abs(r.end[1] - 3) < 1e-8 for r in ends)


class TestAgreement:
    def test_examples(self, ex1, ex2):
        assert verify_count_numerically(ex1, {"a": 1, "b": 3, "c": 2}) == 2
        assert verify_count_numerically(ex1, {"a": 1, "b": -2, "c": 1}) == 0
        assert verify_count_numerically(ex2, {"a": 2}) == 2
        assert verify_count_numerically(ex2, {"a": 1}) == 0

    @pytest.mark.parametrize("which", ["ex1", "ex2"])
    def test_generic_points(self, which, request):
        F = request.getfixturevalue(which)
        sat = request.getfixturevalue(which + "_sat")
        rng = random.Random(9)
        for _ in range(10):
            q = sample_generic_point(sat, rng)
            assert verify_count_numerically(F, q) == regular_zero_count(F, q)
