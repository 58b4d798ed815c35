"""Solver tests: places, indicial roots, rational solutions, hyperexp factors.

Expected values are frozen from hand computation (indicial substitution
x^rho, explicit solution checks) or planted via lclm of first-order factors.
"""

import random
from fractions import Fraction

import pytest

import oracles
from oracles import op, poly, rf
from pvt.errors import CandidateExplosion, IrregularPlace
from pvt.ore import DiffOp, op_apply, op_lclm, op_right_divide
from pvt.rational import P_X, Poly, RatFn
from pvt.solve import (
    AlgebraicNumber,
    Place,
    hyperexp_right_factors,
    indicial_roots,
    polynomial_solutions,
    rational_solutions,
    singular_points,
)

Q = Fraction

AIRY = op(1, 0, (-1, 0))                                   # D^2 - x
REMARK = op(1, rf(1, (2, 0)), rf(-1, (4, 0)))              # D^2 + 1/(2x) D - 1/(4x)
CAUCHY2 = op(1, 0, rf(-2, (1, 0, 0)))                      # D^2 - 2/x^2


class TestSingularPoints:
    def test_airy(self):
        pts = singular_points(AIRY)
        assert len(pts) == 1
        assert pts[0].is_infinity
        assert pts[0].regular is False

    def test_remark_operator(self):
        pts = singular_points(REMARK)
        assert [str(p) for p in pts] == ["x", "infinity"]
        assert pts[0].regular is True
        assert pts[1].regular is False

    def test_cauchy(self):
        pts = singular_points(CAUCHY2)
        assert [str(p) for p in pts] == ["x", "infinity"]
        assert pts[0].regular is True
        assert pts[1].regular is True

    def test_removable_content(self):
        # x*D^2 + x has the content x cleared away: no finite places
        l = DiffOp([rf((1, 0)), rf(0), rf((1, 0))])
        pts = singular_points(l)
        assert len(pts) == 1 and pts[0].is_infinity


class TestIndicialRoots:
    def test_cauchy_at_zero(self):
        assert indicial_roots(CAUCHY2, Place.finite(P_X)) == [Q(-1), Q(2)]

    def test_cauchy_at_infinity(self):
        assert indicial_roots(CAUCHY2, Place.infinity()) == [Q(-2), Q(1)]

    def test_ordinary_point(self):
        assert indicial_roots(op(1, 0, 0), Place.finite(P_X)) == [Q(0), Q(1)]

    def test_remark_at_zero(self):
        assert indicial_roots(REMARK, Place.finite(P_X)) == [Q(0), Q(1, 2)]

    def test_airy_at_infinity_irregular(self):
        with pytest.raises(IrregularPlace):
            indicial_roots(AIRY, Place.infinity())

    def test_finite_irregular(self):
        l = op(1, 0, rf(-1, (1, 0, 0, 0)))   # D^2 - 1/x^3
        with pytest.raises(IrregularPlace):
            indicial_roots(l, Place.finite(P_X))

    def test_double_root_reported_once(self):
        l = op(1, rf(1, (1, 0)), 0)          # x D^2 + D: indicial rho^2
        assert indicial_roots(l, Place.finite(P_X)) == [Q(0)]

    def test_algebraic_roots(self):
        # x^2 D^2 + x D - 2: indicial rho^2 - 2
        l = op(1, rf(1, (1, 0)), rf(-2, (1, 0, 0)))
        got = indicial_roots(l, Place.finite(P_X))
        assert got == [AlgebraicNumber(poly(1, 0, -2))]

    def test_degree_two_place_rational(self):
        # (x^2+2) D + 2x annihilates 1/(x^2+2): exponent -1 there
        l = DiffOp([rf((2, 0)), rf((1, 0, 2))])
        got = indicial_roots(l, Place.finite(poly(1, 0, 2)))
        assert got == [Q(-1)]

    def test_degree_two_place_residue_field_root(self):
        # D - 4/(x^2-2): exponents are +-sqrt(2) at the roots of x^2-2
        l = DiffOp([rf(-4, (1, 0, -2)), rf(1)])
        got = indicial_roots(l, Place.finite(poly(1, 0, -2)))
        assert got == [AlgebraicNumber(poly(1, 0, -2))]


class TestPolynomialSolutions:
    def test_d2(self):
        assert polynomial_solutions(op(1, 0, 0)) == [poly(1), poly(1, 0)]

    def test_d3(self):
        got = polynomial_solutions(op(1, 0, 0, 0))
        assert got == [poly(1), poly(1, 0), poly(1, 0, 0)]

    def test_cauchy(self):
        assert polynomial_solutions(CAUCHY2) == [poly(1, 0, 0)]

    def test_exponential_has_none(self):
        assert polynomial_solutions(op(1, -1)) == []

    def test_euler_degree_three(self):
        # x D - 3 annihilates x^3
        l = DiffOp([rf(-3), rf((1, 0))])
        assert polynomial_solutions(l) == [poly(1, 0, 0, 0)]

    def test_airy(self):
        assert polynomial_solutions(AIRY) == []


class TestRationalSolutions:
    def test_cauchy(self):
        got = rational_solutions(CAUCHY2)
        assert got == [rf((1, 0, 0)), rf(1, (1, 0))]

    def test_airy_empty(self):
        assert rational_solutions(AIRY) == []

    def test_remark_empty(self):
        assert rational_solutions(REMARK) == []

    def test_polynomials_subsumed(self):
        assert rational_solutions(op(1, 0, 0)) == [rf(1), rf((1, 0))]

    def test_every_output_annihilated(self):
        for l in (CAUCHY2, op(1, 0, 0), REMARK, AIRY):
            for y in rational_solutions(l):
                assert op_apply(l, y).is_zero()

    def test_planted_spans(self):
        rng = random.Random(7)
        done = 0
        while done < 12:
            r1 = _random_ratfn(rng)
            r2 = _random_ratfn(rng)
            if r1.is_zero() or r2.is_zero() or (r1 / r2).derivative().is_zero():
                continue
            l = op_lclm(_log_deriv_op(r1), _log_deriv_op(r2))
            got = rational_solutions(l)
            assert oracles.span_equal(got, [r1, r2])
            for y in got:
                assert op_apply(l, y).is_zero()
            done += 1


def _random_ratfn(rng):
    num = Poly([Q(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))])
    den = Poly([Q(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))])
    if not num or not den:
        return RatFn(Poly([]))
    return RatFn(num, den)


def _log_deriv_op(r):
    """D - r'/r, annihilating r."""
    return DiffOp([-(r.derivative() / r), rf(1)])


class TestHyperexpFactors:
    def test_own_factor(self):
        l = DiffOp([rf(-1, (1, 0)), rf(1)])
        got = hyperexp_right_factors(l)
        assert [f.u for f in got] == [rf(1, (1, 0))]

    def test_exp_and_linear(self):
        # solutions e^x and x+1
        l = op(1, rf((-1, -1), (1, 0)), rf(1, (1, 0)))
        got = hyperexp_right_factors(l)
        assert [f.u for f in got] == [rf(1), rf(1, (1, 1))]

    def test_remark_has_none(self):
        assert hyperexp_right_factors(REMARK) == []

    def test_remark_normal_form_has_none(self):
        r = rf((4, -3), (16, 0, 0))
        assert hyperexp_right_factors(DiffOp([-r, rf(0), rf(1)])) == []

    def test_airy_has_none(self):
        assert hyperexp_right_factors(AIRY) == []

    def test_gaussian_exponential(self):
        l = DiffOp([rf((-1, 0)), rf(1)])     # D - x
        got = hyperexp_right_factors(l)
        assert [f.u for f in got] == [rf((1, 0))]

    def test_d2_representatives(self):
        got = hyperexp_right_factors(op(1, 0, 0))
        assert [f.u for f in got] == [rf(0), rf(1, (1, 0))]

    def test_same_class_integer_shift(self):
        # x^(1/2) and x^(3/2): same class, both representatives recovered
        l = op_lclm(DiffOp([rf(-1, (2, 0)), rf(1)]),
                    DiffOp([rf(-3, (2, 0)), rf(1)]))
        got = [f.u for f in hyperexp_right_factors(l)]
        assert rf(1, (2, 0)) in got
        assert rf(3, (2, 0)) in got

    def test_algebraic_residue_at_degree_two_place(self):
        # D - 4/(x^2-2): residue-field exponents, factor still rational
        l = DiffOp([rf(-4, (1, 0, -2)), rf(1)])
        got = hyperexp_right_factors(l)
        assert [f.u for f in got] == [rf(4, (1, 0, -2))]

    def test_every_factor_divides(self):
        cases = [
            op(1, rf((-1, -1), (1, 0)), rf(1, (1, 0))),
            op(1, 0, 0),
            DiffOp([rf((-1, 0)), rf(1)]),
        ]
        for l in cases:
            for f in hyperexp_right_factors(l):
                assert op_right_divide(l, f.as_operator())[1].is_zero()

    def test_planted_factors_recovered(self):
        rng = random.Random(11)
        done = 0
        while done < 8:
            c = Q(rng.randint(1, 3))
            r = _random_ratfn(rng)
            if r.is_zero() or r.derivative().is_zero():
                continue
            u1 = RatFn.const(c)
            u2 = r.derivative() / r
            if u1 == u2:
                continue
            l = op_lclm(DiffOp([-u1, rf(1)]), DiffOp([-u2, rf(1)]))
            got = [f.u for f in hyperexp_right_factors(l)]
            assert u1 in got
            assert u2 in got
            for u in got:
                assert op_right_divide(l, DiffOp([-u, rf(1)]))[1].is_zero()
            done += 1

    def test_candidate_explosion(self):
        r = rf(0)
        for c in range(10):
            r = r + rf(3, poly(16)) / rf((1, -c)) ** 2
        l = DiffOp([r, rf(0), rf(1)])
        with pytest.raises(CandidateExplosion) as e:
            hyperexp_right_factors(l)
        assert e.value.count > 512

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            hyperexp_right_factors(DiffOp([rf(1)]))
