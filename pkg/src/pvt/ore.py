"""The Ore ring Q(x)[D] of linear differential operators.

Multiplication follows the commutation rule D*a = a*D + a'; right division
is Euclidean, GCRD is the Euclidean remainder sequence, and LCLM is found
by linear algebra on D-power remainders.  Coefficients stay rational
functions throughout (denominators carry singularity information).
"""

from fractions import Fraction

from . import linalg
from .errors import DivisionByZeroOperator, NotOrderTwo
from .rational import Poly, R_ONE, R_ZERO, RatFn

_HALF = Fraction(1, 2)


def _coerce_coeff(v):
    if isinstance(v, RatFn):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFn.const(v)
    if isinstance(v, Poly):
        return RatFn(v)
    return None


class DiffOp:
    """Operator sum(coeffs[k] * D^k) with RatFn coefficients.

    >>> L = D_OP * DiffOp([RatFn.x()])       # D * x
    >>> str(L)
    'x*D + 1'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = []
        for c in coeffs:
            cc = _coerce_coeff(c)
            if cc is None:
                raise TypeError("bad coefficient %r" % (c,))
            cs.append(cc)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ratfn(cls, f):
        return cls([f])

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return R_ZERO
        return self.coeffs[-1]

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return R_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("DiffOp", self.coeffs))

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs])

    def __add__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DiffOp(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return op_mul(self, other)

    def __rmul__(self, other):
        other = _coerce_op(other)
        if other is None:
            return NotImplemented
        return op_mul(other, self)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative operator power")
        out = DiffOp([R_ONE])
        for _ in range(n):
            out = op_mul(out, self)
        return out

    def monic(self):
        if not self:
            return self
        lc = self.lc
        if lc == R_ONE:
            return self
        return DiffOp([c / lc for c in self.coeffs])

    def apply(self, y):
        return op_apply(self, y)

    def format(self, var="x", dvar="D"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.order, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            neg = c.is_negative()
            mag = -c if neg else c
            if k == 0:
                body = mag.format(var)
            else:
                dpow = dvar if k == 1 else "%s^%d" % (dvar, k)
                if mag == R_ONE:
                    body = dpow
                else:
                    cs = mag.format(var)
                    if ("+" in cs[1:]) or ("-" in cs[1:]) or ("/" in cs):
                        cs = "(%s)" % cs
                    body = "%s*%s" % (cs, dpow)
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "DiffOp(%s)" % self.format()

    def sort_key(self):
        return (self.order, tuple(c.sort_key() for c in self.coeffs))


def _coerce_op(v):
    if isinstance(v, DiffOp):
        return v
    c = _coerce_coeff(v)
    if c is None:
        return None
    return DiffOp([c])


OP_ZERO = DiffOp([])
OP_ONE = DiffOp([R_ONE])
D_OP = DiffOp([R_ZERO, R_ONE])


def op_mul(l1, l2):
    """Ore product: op_apply(op_mul(l1, l2), y) = l1(l2(y)).

    Built by accumulating c1[k] * (D^k composed with l2), where composing
    with D shifts the coefficient vector and adds its derivative.
    """
    if not l1 or not l2:
        return OP_ZERO
    current = list(l2.coeffs)          # D^0 * l2
    out = [R_ZERO] * (l1.order + l2.order + 1)
    for k in range(l1.order + 1):
        c = l1.coeffs[k]
        if not c.is_zero():
            for j, b in enumerate(current):
                if not b.is_zero():
                    out[j] = out[j] + c * b
        if k < l1.order:
            nxt = [R_ZERO] * (len(current) + 1)
            for j, b in enumerate(current):
                if not b.is_zero():
                    nxt[j + 1] = nxt[j + 1] + b
                    nxt[j] = nxt[j] + b.derivative()
            current = nxt
    return DiffOp(out)


def op_right_divide(l, b):
    """(Q, R) with l = Q*b + R and order(R) < order(b)."""
    if not b:
        raise DivisionByZeroOperator("right division by the zero operator")
    q = OP_ZERO
    r = l
    while r and r.order >= b.order:
        k = r.order - b.order
        c = r.lc / b.lc
        t = DiffOp([R_ZERO] * k + [c])
        q = q + t
        r = r - op_mul(t, b)
    return q, r


def op_gcrd(l1, l2):
    """Monic greatest common right divisor."""
    if not l1 and not l2:
        raise ValueError("gcrd of two zero operators")
    a, b = l1, l2
    while b:
        a, b = b, op_right_divide(a, b)[1]
    return a.monic()


def op_lclm(l1, l2):
    """Monic least common left multiple, by linear algebra on D-powers.

    For ascending candidate order N, solve for c_0..c_{N-1} making
    D^N + sum c_k D^k vanish modulo both inputs; the first solvable N is
    minimal, and N = order(l1)+order(l2) always works.
    """
    if not l1 or not l2:
        raise ValueError("lclm needs nonzero operators")
    n1, n2 = l1.order, l2.order
    rems1 = _dpower_remainders(l1, n1 + n2)
    rems2 = _dpower_remainders(l2, n1 + n2)
    for n in range(max(n1, n2), n1 + n2 + 1):
        rows = []
        rhs = []
        for rems, nn in ((rems1, n1), (rems2, n2)):
            for slot in range(nn):
                rows.append([rems[k].coeff(slot) for k in range(n)])
                rhs.append(-rems[n].coeff(slot))
        sol = linalg.solve(rows, rhs, R_ZERO)
        if sol is not None:
            return DiffOp(sol + [R_ONE])
    raise AssertionError("lclm bound violated")  # unreachable by theory


def _dpower_remainders(l, up_to):
    """Remainders of D^k modulo l for k = 0..up_to."""
    lm = l.monic()
    rems = [OP_ONE]
    for _ in range(up_to):
        r = op_mul(D_OP, rems[-1])
        if r.order >= lm.order:
            r = r - op_mul(DiffOp([R_ZERO] * (r.order - lm.order) + [r.lc]), lm)
        rems.append(r)
    return rems


def op_apply(l, y):
    """sum coeffs[k] * y^(k); y is any value with derivative() and
    arithmetic compatible with RatFn coefficients."""
    acc = None
    d = y
    for k in range(l.order + 1):
        c = l.coeffs[k]
        if not c.is_zero():
            term = d * c
            acc = term if acc is None else acc + term
        if k < l.order:
            d = d.derivative()
    if acc is None:
        return y - y
    return acc


def op_normal_form2(l):
    """(r, gauge) with z'' = r z the normal form of monic order-2 l.

    Substituting y = z * exp(-int gauge) with gauge = p/2 removes the
    first-order term: r = p^2/4 + p'/2 - q.
    """
    if l.order != 2:
        raise NotOrderTwo(l.order)
    lm = l.monic()
    p = lm.coeffs[1]
    q = lm.coeffs[0]
    r = p * p * Fraction(1, 4) + p.derivative() * _HALF - q
    return r, p * _HALF
