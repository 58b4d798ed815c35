"""Liouvillian decision for order-2 operators.

The operator is put in normal form z'' = r z, and the associated Riccati
equation w' + w^2 = r is searched for a solution omega that is rational
(case 1), quadratic (case 2, via the symmetric square), or algebraic of
degree 4, 6, or 12 (case 3, via the classical exponent-family search).
A verdict is only issued after the candidate minimal polynomial passes the
exact invariance check P_x + P_T (r - T^2) = 0 mod P, so no false
liouvillian verdicts are possible; NonLiouvillian means every case failed.
"""

import itertools
import math
import time
from fractions import Fraction

from . import linalg
from .errors import BudgetExceeded, CaseThreeUnsupported
from .limits import CASE3_BUDGET_MS, CASE3_ENABLED
from .ore import DiffOp, op_normal_form2
from .rational import P_ONE, Poly, Q, R_ONE, R_ZERO, RatFn, poly_factor
from .solve import AlgebraicNumber, hyperexp_right_factors

__all__ = ["AlgebraicNumber", "KovacicVerdict", "kovacic", "format_tpoly"]


# ---------------------------------------------------------------------------
# polynomials in T over Q(x), as ascending RatFn coefficient lists


def _tp_trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def _tp_add(a, b):
    out = list(a) + [R_ZERO] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _tp_trim(out)


def _tp_mul(a, b):
    if not a or not b:
        return []
    out = [R_ZERO] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if not c.is_zero():
            for j, d in enumerate(b):
                out[i + j] = out[i + j] + c * d
    return _tp_trim(out)


def _tp_rem(a, b):
    """Remainder of a by b (b monic in T)."""
    a = list(a)
    n = len(b) - 1
    while len(a) - 1 >= n:
        c = a[-1]
        k = len(a) - 1 - n
        if not c.is_zero():
            for j, d in enumerate(b):
                a[k + j] = a[k + j] - c * d
        a.pop()
    return _tp_trim(a)


def _tp_dx(a):
    return _tp_trim([c.derivative() for c in a])


def _tp_dt(a):
    return _tp_trim([a[j] * j for j in range(1, len(a))])


def _riccati_invariant(p, r):
    """True when P_x + P_T * (r - T^2) = 0 mod P: every root of P solves
    the Riccati equation w' + w^2 = r."""
    q = _tp_add(_tp_dx(p), _tp_mul(_tp_dt(p), [r, R_ZERO, -R_ONE]))
    return not _tp_rem(q, p)


def format_tpoly(coeffs, tvar="T"):
    """Canonical text for a polynomial in T over Q(x)."""
    return DiffOp(list(coeffs)).format(dvar=tvar)


class KovacicVerdict:
    """Outcome of the decision: case index with minimal polynomial of the
    Riccati solution omega, or NonLiouvillian."""

    __slots__ = ("case", "omega", "minpoly", "r", "gauge", "witness")

    def __init__(self, case, omega, minpoly, r, gauge, witness):
        self.case = case
        self.omega = omega
        self.minpoly = tuple(minpoly) if minpoly is not None else None
        self.r = r
        self.gauge = gauge
        self.witness = witness

    @property
    def liouvillian(self):
        return self.case is not None

    def __repr__(self):
        if not self.liouvillian:
            return "KovacicVerdict(NonLiouvillian)"
        return "KovacicVerdict(case %d, %s)" % (
            self.case, format_tpoly(self.minpoly))

    def __eq__(self, other):
        if not isinstance(other, KovacicVerdict):
            return NotImplemented
        return (self.case == other.case and self.minpoly == other.minpoly
                and self.r == other.r and self.gauge == other.gauge)


def _frac_sqrt(q):
    """Exact square root of a nonnegative Fraction, or None."""
    if q < 0:
        return None
    a = math.isqrt(q.numerator)
    b = math.isqrt(q.denominator)
    if a * a != q.numerator or b * b != q.denominator:
        return None
    return Fraction(a, b)


def _poly_sqrt(p):
    """Exact polynomial square root, or None."""
    if not p:
        return Poly([])
    if p.degree % 2:
        return None
    lc = _frac_sqrt(p.lc)
    if lc is None:
        return None
    h = p.degree // 2
    s = [Q(0)] * (h + 1)
    s[h] = lc
    for k in range(h - 1, -1, -1):
        # coefficient of x^(h+k) in s^2 must match p
        acc = Q(0)
        for i in range(k + 1, h):
            j = h + k - i
            if k < j <= h:
                acc += s[i] * s[j]
        target = p.coeffs[h + k] if h + k <= p.degree else Q(0)
        s[k] = (target - acc) / (2 * lc)
    cand = Poly(s)
    if cand * cand == p:
        return cand
    return None


def _ratfn_sqrt(f):
    """Exact square root in Q(x), or None."""
    if f.is_zero():
        return R_ZERO
    g = _poly_sqrt(f.num * f.den)
    if g is None:
        return None
    return RatFn(g, f.den)


def _verdict_case1(omega, r, gauge):
    minpoly = (-omega, R_ONE)
    return KovacicVerdict(
        1, omega, minpoly, r, gauge,
        "z = exp(int(%s)) solves z'' = r z" % omega)


def _case1(r, gauge):
    found = []
    for f in hyperexp_right_factors(DiffOp([-r, R_ZERO, R_ONE])):
        if _riccati_invariant([-f.u, R_ONE], r):
            found.append(f.u)
    if not found:
        return None
    omega = min(found, key=lambda u: u.sort_key())
    return _verdict_case1(omega, r, gauge)


def _case2(r, gauge):
    # products of two solutions of z'' = r z satisfy the symmetric square
    rp = r.derivative()
    l3 = DiffOp([-(rp + rp), -(r + r + r + r), R_ZERO, R_ONE])
    rational = []
    quadratic = []
    for f in hyperexp_right_factors(l3):
        b = f.u
        c = (b.derivative() + b * b - r - r) / 2
        disc = b * b - c * 4
        root = _ratfn_sqrt(disc)
        if root is not None:
            for omega in ((b + root) / 2, (b - root) / 2):
                if _riccati_invariant([-omega, R_ONE], r):
                    rational.append(omega)
            continue
        p = [c, -b, R_ONE]
        if _riccati_invariant(p, r):
            quadratic.append(p)
    if rational:
        return _verdict_case1(min(rational, key=lambda u: u.sort_key()), r, gauge)
    if not quadratic:
        return None
    p = min(quadratic, key=lambda q: tuple(c.sort_key() for c in q))
    return KovacicVerdict(
        2, None, p, r, gauge,
        "omega of degree 2 over Q(x): %s = 0" % format_tpoly(p))


def _pole_data(factors, r):
    """[(c, order, b)] over rational finite poles, with b the coefficient of
    (x-c)^-2; None when some pole sits at a non-rational point (the exponent
    sets cannot be enumerated over Q there)."""
    out = []
    for f, mult in factors:
        if f.degree == 0:
            continue
        if f.degree > 1:
            return None
        c = -f.coeffs[0] / f.coeffs[1]
        b = Q(0)
        if mult >= 2:
            b = (r * RatFn(f ** 2))(c)
        out.append((c, mult, b))
    return out


def _exponent_set(order, b, n):
    """Candidate local exponents E at a pole (or infinity) for degree n."""
    if order == 1:
        return [Q(12)]
    s = _frac_sqrt(1 + 4 * b)
    out = set()
    if s is None:
        out.add(Q(6))
    else:
        for k in range(-(n // 2), n // 2 + 1):
            e = 6 + Fraction(12 * k, n) * s
            if e.denominator == 1:
                out.add(e)
    return sorted(out)


def _case3_family(r, n, d, poles, e_list):
    """Try one exponent family: solve the linear recursion for a nonzero P
    of degree <= d with P_{-1} = 0, and return the monic minimal polynomial
    candidate for omega, or None."""
    s_poly = P_ONE
    for c, _, _ in poles:
        s_poly = s_poly * Poly([-c, Q(1)])
    theta = R_ZERO
    for (c, _, _), e in zip(poles, e_list):
        theta = theta + RatFn(Poly.const(e * Fraction(n, 12)), Poly([-c, Q(1)]))
    s_rat = RatFn(s_poly)
    a_rat = s_rat * theta
    b_rat = s_rat * s_rat * r
    if a_rat.den.degree != 0 or b_rat.den.degree != 0:
        return None
    a_pol = a_rat.num          # S*theta, a polynomial since poles match S
    b_pol = b_rat.num          # S^2*r, polynomial: pole orders <= 2
    sp = s_poly.derivative()

    # unknown P = sum a_j x^j, j <= d; run the recursion symbolically with
    # polynomial entries per unknown
    cols = [Poly.x_power(j) for j in range(d + 1)]
    seq = []  # seq[i][j]: P_i contribution of unknown j, i from n down
    pn = [-cj for cj in cols]
    seq.append(pn)
    prev2 = None
    prev = pn
    for i in range(n, -1, -1):
        cur = []
        for j in range(d + 1):
            t = -(s_poly * prev[j].derivative()) + (sp * (n - i) - a_pol) * prev[j]
            if prev2 is not None:
                t = t - b_pol * prev2[j] * ((n - i) * (i + 1))
            cur.append(t)
        seq.append(cur)
        prev2, prev = prev, cur
    pm1 = seq[-1]
    maxdeg = max([t.degree for t in pm1] + [0])
    rows = []
    for deg in range(maxdeg + 1):
        rows.append([t.coeffs[deg] if deg <= t.degree else Q(0) for t in pm1])
    basis = linalg.nullspace(rows, d + 1, Q(0), Q(1))
    if not basis:
        return None
    p = Poly(basis[0]).monic()
    # rebuild the concrete P_i sequence and assemble the minimal polynomial
    pi = [-p]
    for i in range(n, -1, -1):
        t = -(s_poly * pi[-1].derivative()) + (sp * (n - i) - a_pol) * pi[-1]
        if len(pi) >= 2:
            t = t - b_pol * pi[-2] * ((n - i) * (i + 1))
        pi.append(t)
    if pi[-1]:
        return None
    coeffs = []
    for i in range(n + 1):
        num = RatFn(s_poly) ** i * RatFn(pi[n - i])
        coeffs.append(num / Q(math.factorial(n - i)))
    lead = coeffs[-1]
    return [c / lead for c in coeffs]


def _case3(r, gauge, budget_ms):
    if r.is_zero():
        return None
    # necessary conditions: finite poles of order <= 2, order >= 2 at infinity
    v_inf = r.den.degree - r.num.degree
    if v_inf < 2:
        return None
    factors = [(f, m) for f, m in poly_factor(r.den) if f.degree > 0]
    if any(m > 2 for _, m in factors):
        return None
    poles = _pole_data(factors, r)
    if poles is None:
        raise CaseThreeUnsupported(
            "case 3 needs rational pole locations for exponent sets")
    b_inf = r.num.lc / r.den.lc if v_inf == 2 else Q(0)
    deadline = time.monotonic() + budget_ms / 1000.0
    for n in (4, 6, 12):
        e_inf_set = _exponent_set(2, b_inf, n)
        e_sets = [_exponent_set(mult, b, n) for _, mult, b in poles]
        for e_inf in e_inf_set:
            for e_list in itertools.product(*e_sets):
                if time.monotonic() > deadline:
                    raise BudgetExceeded(budget_ms)
                d = Fraction(n, 12) * (e_inf - sum(e_list, Q(0)))
                if d.denominator != 1 or d < 0:
                    continue
                p = _case3_family(r, n, int(d), poles, e_list)
                if p is not None and _riccati_invariant(p, r):
                    return KovacicVerdict(
                        3, None, p, r, gauge,
                        "omega of degree %d over Q(x): %s = 0"
                        % (n, format_tpoly(p)))
    return None


def kovacic(l, case3_budget_ms=None):
    """Decide liouvillian solvability of the order-2 operator l.

    Returns the least case index that succeeds; the verdict's minimal
    polynomial always passes the exact Riccati invariance check.
    """
    r, gauge = op_normal_form2(l)
    verdict = _case1(r, gauge)
    if verdict is not None:
        return verdict
    verdict = _case2(r, gauge)
    if verdict is not None:
        return verdict
    if not CASE3_ENABLED:
        possible = (not r.is_zero()
                    and r.den.degree - r.num.degree >= 2
                    and all(m <= 2 for f, m in poly_factor(r.den)
                            if f.degree > 0))
        if possible:
            raise CaseThreeUnsupported("case 3 disabled by configuration")
        return KovacicVerdict(None, None, None, r, gauge,
                              "no liouvillian solutions")
    budget = CASE3_BUDGET_MS if case3_budget_ms is None else case3_budget_ms
    verdict = _case3(r, gauge, budget)
    if verdict is not None:
        return verdict
    return KovacicVerdict(None, None, None, r, gauge,
                          "no liouvillian solutions")
