"""Tower construction, element arithmetic, derivation, annihilators.

Frozen values: in the sqrt(x) tower the generator satisfies D - 1/(2x);
t + 1/t over the e^(sqrt x) tower satisfies D^2 + (1/(2x))D - 1/(4x) and
nothing of order 1; the Riccati generator (w' = x - w^2) admits no
annihilator up to order 6.
"""

import random
from fractions import Fraction

import pytest

from oracles import op, poly, rf
from pvt.errors import DivisionByZero, IllFormedTower, TowerMismatch
from pvt.ore import DiffOp
from pvt.rational import R_ONE, R_X, RatFn
from pvt.tower import (ALGEBRAIC, EXPONENTIAL, PRIMITIVE, RATIONAL_ODE,
                       AnnihilatorResult, Generator, Tower, TowerElem,
                       apply_op, elem_arith, elem_derive, elem_is_zero,
                       minimal_annihilator, monomial_coordinates,
                       tower_build)

Q = Fraction


def sqrt_tower():
    return tower_build([
        Generator("s", ALGEBRAIC, [lambda env: -env["x"], 0, 1]),
    ])


def exp_sqrt_tower():
    return tower_build([
        Generator("s", ALGEBRAIC, [lambda env: -env["x"], 0, 1]),
        Generator("t", EXPONENTIAL, lambda env: 1 / (2 * env["s"])),
    ])


def log_tower():
    return tower_build([
        Generator("l", PRIMITIVE, lambda env: 1 / env["x"]),
    ])


def riccati_tower():
    return tower_build([
        Generator("w", RATIONAL_ODE, lambda env: env["x"] - env["w"] ** 2),
    ])


class TestBuild:
    def test_sqrt_derivative(self):
        tw = sqrt_tower()
        s = tw.gen("s")
        assert tw.derivative("s") == 1 / (2 * s)
        assert str(tw.derivative("s")) == "(1/(2*x))*s"

    def test_log_derivative(self):
        tw = log_tower()
        assert tw.derivative("l") == tw.elem(rf(1, (1, 0)))

    def test_riccati_derivative(self):
        tw = riccati_tower()
        w = tw.gen("w")
        assert tw.derivative("w") == tw.x() - w * w

    def test_exponential_derivative(self):
        tw = exp_sqrt_tower()
        s, t = tw.gen("s"), tw.gen("t")
        assert tw.derivative("t") == t / (2 * s)

    def test_forward_reference(self):
        with pytest.raises(IllFormedTower):
            tower_build([
                Generator("a", PRIMITIVE, lambda env: env["b"]),
                Generator("b", PRIMITIVE, 1),
            ])

    def test_primitive_cannot_use_itself(self):
        with pytest.raises(IllFormedTower):
            tower_build([Generator("a", PRIMITIVE, lambda env: env["a"])])

    def test_zero_denominator(self):
        with pytest.raises(IllFormedTower):
            tower_build([
                Generator("a", PRIMITIVE, lambda env: 1 / (env["x"] - env["x"])),
            ])

    def test_non_squarefree_minpoly(self):
        # (T - x)^2 = T^2 - 2xT + x^2
        with pytest.raises(IllFormedTower):
            tower_build([
                Generator("s", ALGEBRAIC,
                          [lambda env: env["x"] ** 2,
                           lambda env: -2 * env["x"], 1]),
            ])

    def test_bad_names(self):
        for name in ("x", "X", "2s", "s s", ""):
            with pytest.raises(IllFormedTower):
                tower_build([Generator(name, PRIMITIVE, 1)])
        with pytest.raises(IllFormedTower):
            tower_build([Generator("a", PRIMITIVE, 1),
                         Generator("a", PRIMITIVE, 1)])

    def test_constant_minpoly(self):
        with pytest.raises(IllFormedTower):
            tower_build([Generator("s", ALGEBRAIC, [1])])

    def test_degree_one_minpoly_reduces(self):
        tw = tower_build([Generator("s", ALGEBRAIC,
                                    [lambda env: -env["x"], 1])])
        assert tw.gen("s") == tw.x()


class TestArithmetic:
    def test_algebraic_reduction(self):
        tw = sqrt_tower()
        s = tw.gen("s")
        assert s * s == tw.x()
        assert (s * s - tw.x()).is_zero()
        assert s ** 3 == tw.x() * s

    def test_algebraic_inverse(self):
        tw = sqrt_tower()
        s = tw.gen("s")
        assert 1 / s == s / tw.x()
        assert (1 / s) * s == tw.elem(1)

    def test_field_cancellation(self):
        tw = exp_sqrt_tower()
        t = tw.gen("t")
        assert (t * t) / t == t
        assert t + 0 == t
        assert str((t ** 2 + 1) / t) == "(t^2 + 1)/t"

    def test_division_by_zero(self):
        tw = log_tower()
        with pytest.raises(DivisionByZero):
            tw.gen("l") / 0
        with pytest.raises(DivisionByZero):
            1 / (tw.gen("l") - tw.gen("l"))

    def test_tower_mismatch(self):
        with pytest.raises(TowerMismatch):
            log_tower().gen("l") + riccati_tower().gen("w")

    def test_elem_arith_dispatch(self):
        tw = log_tower()
        l = tw.gen("l")
        assert elem_arith("add", l, 1) == l + 1
        assert elem_arith("sub", l, l).is_zero()
        assert elem_arith("mul", l, l) == l ** 2
        assert elem_arith("div", l, l) == tw.elem(1)
        with pytest.raises(ValueError):
            elem_arith("pow", l, l)

    def test_elem_is_zero(self):
        tw = sqrt_tower()
        s = tw.gen("s")
        assert elem_is_zero(s * s - tw.x())
        assert not elem_is_zero(s - 1)
        assert elem_is_zero(tw.elem(0) / (tw.x() + 1))

    def test_negative_powers(self):
        tw = exp_sqrt_tower()
        t = tw.gen("t")
        assert t ** -2 == 1 / (t * t)

    def test_base_embedding(self):
        tw = log_tower()
        assert tw.elem(rf((1, 2), (1, 0))) == (tw.x() + 2) / tw.x()


class TestDerivation:
    def test_minpoly_relation_respected(self):
        tw = sqrt_tower()
        s = tw.gen("s")
        assert (s * s).derive() == tw.elem(1)
        assert (s * s - tw.x()).derive().is_zero()

    def test_riccati_chain_rule(self):
        tw = riccati_tower()
        w = tw.gen("w")
        assert (w * w).derive() == 2 * w * (tw.x() - w * w)

    def test_quotient_rule(self):
        tw = log_tower()
        l = tw.gen("l")
        u = 1 / (l + 1)
        assert u.derive() == -(1 / tw.x()) * u * u

    def test_leibniz_and_linearity_random(self):
        tw = exp_sqrt_tower()
        s, t, x = tw.gen("s"), tw.gen("t"), tw.x()
        rng = random.Random(5)
        pool = [s, t, x, s + 1, t + s, 1 / t, x * s - 2, t ** 2, 1 / (x + 1)]
        for _ in range(60):
            u = rng.choice(pool)
            v = rng.choice(pool)
            c = Q(rng.randint(-4, 4))
            assert (u * v).derive() == u.derive() * v + u * v.derive()
            assert (u + v * c).derive() == u.derive() + v.derive() * c

    def test_elem_derive_alias(self):
        tw = log_tower()
        assert elem_derive(tw.gen("l")) == tw.elem(rf(1, (1, 0)))


class TestFormatting:
    def test_round_trip_values(self):
        tw = exp_sqrt_tower()
        s, t = tw.gen("s"), tw.gen("t")
        assert str(s) == "s"
        assert str(t + 1 / t) == "(t^2 + 1)/t"
        assert str(s * t) == "s*t"
        assert str(-2 * t + 1) == "-2*t + 1"
        assert str(tw.elem(0)) == "0"

    def test_deterministic(self):
        tw = exp_sqrt_tower()
        a = tw.gen("t") + tw.gen("s")
        b = tw.gen("s") + tw.gen("t")
        assert str(a) == str(b)
        assert a == b


class TestCoordinates:
    def test_monomials(self):
        tw = exp_sqrt_tower()
        s, t = tw.gen("s"), tw.gen("t")
        coords = monomial_coordinates([t + 1 / t, s * t])
        assert coords[0] == {(0, 1): R_ONE, (0, -1): R_ONE}
        assert coords[1] == {(1, 1): R_ONE}

    def test_nonmonomial_denominator_cleared(self):
        tw = log_tower()
        l = tw.gen("l")
        u = 1 / (l + 1)
        coords = monomial_coordinates([u, u * (l + 1)])
        # both scaled by (l+1): [1, l+1]
        assert coords[0] == {(0,): R_ONE}
        assert coords[1] == {(0,): R_ONE, (1,): R_ONE}


class TestAnnihilator:
    def test_sqrt_generator(self):
        tw = sqrt_tower()
        res = minimal_annihilator(tw.gen("s"), 3)
        assert res.found and res.order == 1
        assert res.operator == op(1, rf(-1, (2, 0)))

    def test_remark_element(self):
        tw = exp_sqrt_tower()
        t = tw.gen("t")
        res = minimal_annihilator(t + 1 / t, 4)
        assert res.found and res.order == 2
        assert res.operator == op(1, rf(1, (2, 0)), rf(-1, (4, 0)))

    def test_riccati_not_found(self):
        tw = riccati_tower()
        res = minimal_annihilator(tw.gen("w"), 6)
        assert not res.found
        assert res.cap == 6
        assert repr(res) == "NotFoundWithinCap(6)"

    def test_log(self):
        tw = log_tower()
        res = minimal_annihilator(tw.gen("l"), 3)
        assert res.found and res.order == 2
        assert res.operator == op(1, rf(1, (1, 0)), 0)

    def test_base_elements(self):
        tw = log_tower()
        res = minimal_annihilator(tw.elem(R_X), 2)
        assert res.found and res.order == 1
        assert res.operator == op(1, rf(-1, (1, 0)))
        res = minimal_annihilator(tw.elem(5), 2)
        assert res.operator == op(1, 0)
        res = minimal_annihilator(tw.elem(0), 2)
        assert res.found and res.operator == op(1, 0)

    def test_found_verifies(self):
        tw = exp_sqrt_tower()
        y = tw.gen("t") + 1 / tw.gen("t")
        res = minimal_annihilator(y, 4)
        assert apply_op(res.operator, y).is_zero()

    def test_minimality_is_per_order(self):
        # t satisfies the order-1 equation D - 1/(2s) over the tower but
        # nothing of order 1 over Q(x); order 2 is the first hit
        tw = exp_sqrt_tower()
        res = minimal_annihilator(tw.gen("t"), 4)
        assert res.order == 2

    def test_bad_order(self):
        with pytest.raises(ValueError):
            minimal_annihilator(log_tower().gen("l"), 0)


class TestAnnihilatorProperties:
    def test_planted_first_order(self):
        # y = x^k * t^j has y'/y = k/x + j*(1/(2x))*s ... only j = 0 keeps
        # it over Q(x); check pure base multiples stay order 1
        tw = exp_sqrt_tower()
        rng = random.Random(11)
        for _ in range(10):
            k = rng.randint(1, 4)
            y = tw.x() ** k * Q(rng.randint(1, 9))
            res = minimal_annihilator(y, 2)
            assert res.found and res.order == 1
            assert apply_op(res.operator, y).is_zero()

    def test_sum_of_solutions_order_bound(self):
        # l and x each satisfy order <= 2; their sum satisfies order <= 4
        tw = log_tower()
        y = tw.gen("l") + tw.x()
        res = minimal_annihilator(y, 4)
        assert res.found
        assert apply_op(res.operator, y).is_zero()
