"""Liouvillian decision tests.

Frozen values: the half-exponent operator has normal form
r = (4x-3)/(16x^2) and degree-2 Riccati minpoly T^2 - (1/(2x))T + C with
C = 1/(16x^2) - 1/(4x) (trace of omega = 1/(4x) +- 1/(2 sqrt x)); the
exponent-difference triple (1/2, 1/3, 1/3) gives a tetrahedral equation
that must land in case 3 with degree 4.
"""

from fractions import Fraction

import pytest

from oracles import op, poly, rf
from pvt.errors import NotOrderTwo
from pvt.kovacic import KovacicVerdict, format_tpoly, kovacic
from pvt.ore import DiffOp
from pvt.rational import R_ONE, R_ZERO, RatFn

Q = Fraction

AIRY = op(1, 0, (-1, 0))
REMARK = op(1, rf(1, (2, 0)), rf(-1, (4, 0)))


def tetrahedral_r():
    return (rf(-3, (16, 0, 0))
            + rf(-2, 9) / rf((1, -1)) ** 2
            + rf(3, 16) / (rf((1, 0)) * rf((1, -1))))


class TestVerdicts:
    def test_airy_nonliouvillian(self):
        v = kovacic(AIRY)
        assert not v.liouvillian
        assert v.case is None
        assert v.r == rf((1, 0))

    def test_d2_case1_omega_zero(self):
        v = kovacic(op(1, 0, 0))
        assert v.case == 1
        assert v.omega == R_ZERO

    def test_exponential_case1(self):
        v = kovacic(op(1, 0, -1))          # solutions e^(+-x)
        assert v.case == 1
        assert v.omega in (rf(1), rf(-1))

    def test_euler_case1(self):
        # x^2 y'' = 2 y has solutions x^2, 1/x
        v = kovacic(op(1, 0, rf(-2, (1, 0, 0))))
        assert v.case == 1

    def test_remark_case2(self):
        v = kovacic(REMARK)
        assert v.case == 2
        assert v.r == rf((4, -3), (16, 0, 0))
        b = -v.minpoly[1]
        c = v.minpoly[0]
        assert b == rf(1, (2, 0))
        assert c == rf(1, (16, 0, 0)) - rf(1, (4, 0))
        assert v.minpoly[2] == R_ONE

    def test_remark_normal_form_direct(self):
        l = DiffOp([-tetrahedral_r() * 0 - rf((4, -3), (16, 0, 0)), R_ZERO, R_ONE])
        v = kovacic(l)
        assert v.case == 2

    def test_case2_second_dihedral(self):
        # solutions x^(1/4) e^(+-2 sqrt x): omega = 1/(4x) + 1/sqrt(x),
        # trace 1/(2x), product 1/(16x^2) - 1/x
        r = rf((16, -3), (16, 0, 0))
        v = kovacic(DiffOp([-r, R_ZERO, R_ONE]))
        assert v.case == 2
        assert -v.minpoly[1] == rf(1, (2, 0))
        assert v.minpoly[0] == rf(1, (16, 0, 0)) - rf(1, (1, 0))

    def test_whittaker_irrational_mu_nonliouvillian(self):
        # y'' = (1/4 + 3/(16x^2)) y has mu = sqrt7/4, no liouvillian solutions
        r = rf((4, 0, 3), (16, 0, 0))
        v = kovacic(DiffOp([-r, R_ZERO, R_ONE]))
        assert not v.liouvillian

    def test_tetrahedral_case3(self):
        l = DiffOp([-tetrahedral_r(), R_ZERO, R_ONE])
        v = kovacic(l)
        assert v.case == 3
        assert len(v.minpoly) == 5          # degree 4
        assert v.minpoly[-1] == R_ONE

    def test_irrational_pole_unsupported(self):
        # poles at +-sqrt2 survive cases 1 and 2 but the case 3 exponent
        # sets need rational pole locations, so the decision must abstain
        from pvt.errors import CaseThreeUnsupported
        r = rf(1, (1, 0, -2))
        with pytest.raises(CaseThreeUnsupported):
            kovacic(DiffOp([-r, R_ZERO, R_ONE]))

    def test_case3_budget(self):
        from pvt.errors import BudgetExceeded
        l = DiffOp([-tetrahedral_r(), R_ZERO, R_ONE])
        with pytest.raises(BudgetExceeded):
            kovacic(l, case3_budget_ms=0)

    def test_wrong_order(self):
        with pytest.raises(NotOrderTwo):
            kovacic(op(1, 0))
        with pytest.raises(NotOrderTwo):
            kovacic(op(1, 0, 0, 0))

    def test_determinism(self):
        assert kovacic(REMARK) == kovacic(REMARK)
        assert kovacic(AIRY) == kovacic(AIRY)


class TestConsistency:
    def test_case1_minpoly_is_linear(self):
        v = kovacic(op(1, 0, 0))
        assert list(v.minpoly) == [-v.omega, R_ONE]

    def test_rational_solution_forces_case1(self):
        # operators with rational solutions planted
        cases = [
            op(1, 0, 0),
            op(1, rf(-2, (1, 0)), rf(2, (1, 0, 0))),   # solutions x, x^2
            op(1, rf((-1, -1), (1, 0)), rf(1, (1, 0))),  # solutions e^x, x+1
        ]
        for l in cases:
            assert kovacic(l).case == 1

    def test_verdict_invariance_identity(self):
        # white-box: the stored minpoly satisfies P_x + P_T (r - T^2) = 0 mod P
        from pvt.kovacic import _riccati_invariant
        for l in (REMARK, op(1, 0, 0), op(1, 0, -1)):
            v = kovacic(l)
            assert _riccati_invariant(list(v.minpoly), v.r)
        v3 = kovacic(DiffOp([-tetrahedral_r(), R_ZERO, R_ONE]))
        assert _riccati_invariant(list(v3.minpoly), v3.r)

    def test_gauge_recorded(self):
        v = kovacic(REMARK)
        assert v.gauge == rf(1, (4, 0))


class TestFormatting:
    def test_minpoly_text(self):
        v = kovacic(REMARK)
        s = format_tpoly(v.minpoly)
        assert s == "T^2 - (1/(2*x))*T - (4*x - 1)/(16*x^2)"
