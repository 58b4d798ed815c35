"""Differential field towers over Q(x).

A tower adjoins generators one at a time: algebraic (monic squarefree
minimal polynomial over the field below), primitive (t' = b), exponential
(t' = a*t), or a solution of a rational ODE (t' = rhs, rhs rational in x,
the earlier generators, and t itself).  Non-algebraic generators are
treated as independent indeterminates; the builder does not look for
hidden relations.

Elements live in a recursive canonical form.  At a transcendental layer
an element is a reduced fraction of polynomials in that generator (gcd
divided out, denominator monic over the layer below); at an algebraic
layer it is a polynomial of degree below the minimal polynomial.  With
that normalization equality is identity of representations.

minimal_annihilator writes y, y', ..., y^(k) as Q(x)-combinations of
generator monomials and searches, order by order, for a monic linear
dependency by exact linear algebra.  Success certifies that y satisfies
a linear differential equation over Q(x); failure at every order up to
the cap is reported as such, since each order's search is exhaustive.
"""

import re
from fractions import Fraction

from . import linalg
from .errors import (BasisExplosion, DivisionByZero, IllFormedTower,
                     Inconclusive, TowerMismatch)
from .limits import MONOMIAL_CAP
from .ore import DiffOp
from .rational import Poly, R_ONE, R_ZERO, RatFn

__all__ = [
    "ALGEBRAIC", "PRIMITIVE", "EXPONENTIAL", "RATIONAL_ODE",
    "Generator", "Tower", "TowerElem", "AnnihilatorResult",
    "tower_build", "elem_arith", "elem_derive", "elem_is_zero",
    "minimal_annihilator", "apply_op", "monomial_coordinates",
    "exact_coordinates",
]

ALGEBRAIC = "algebraic"
PRIMITIVE = "primitive"
EXPONENTIAL = "exponential"
RATIONAL_ODE = "rational_ode"

_KINDS = (ALGEBRAIC, PRIMITIVE, EXPONENTIAL, RATIONAL_ODE)
_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")
_CLEAR_PASSES = 32


class Generator:
    """One tower layer: a name, a kind, and the defining data.

    data is a single payload (Primitive b, Exponential a, RationalODE rhs)
    or a sequence of payloads for Algebraic (minpoly coefficients in
    ascending T-degree).  A payload is a base value (int, Fraction, Poly,
    RatFn, TowerElem) or a callable receiving {"x": x, name: elem, ...}
    for the generators already in scope.
    """

    __slots__ = ("name", "kind", "data", "independent")

    def __init__(self, name, kind, data, independent=True):
        self.name = name
        self.kind = kind
        self.data = data
        self.independent = independent

    def __repr__(self):
        return "Generator(%r, %r)" % (self.name, self.kind)


# ---------------------------------------------------------------------------
# recursive representation: level 0 = RatFn, level k = (num, den) with
# num/den tuples of level k-1 coefficients for the k-th generator


def _is_alg(tw, k):
    return tw.generators[k - 1].kind == ALGEBRAIC


def _e_is_zero(tw, k, a):
    if k == 0:
        return a.is_zero()
    return not a[0]


def _e_is_one(tw, k, a):
    return a == tw._one[k]


def _p_trim(tw, k, p):
    p = list(p)
    while p and _e_is_zero(tw, k - 1, p[-1]):
        p.pop()
    return tuple(p)


def _p_add(tw, k, a, b):
    out = list(a) + [tw._zero[k - 1]] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = _e_add(tw, k - 1, out[i], c)
    return _p_trim(tw, k, out)


def _p_neg(tw, k, a):
    return tuple(_e_neg(tw, k - 1, c) for c in a)


def _p_sub(tw, k, a, b):
    return _p_add(tw, k, a, _p_neg(tw, k, b))


def _p_scale(tw, k, a, c):
    return _p_trim(tw, k, [_e_mul(tw, k - 1, v, c) for v in a])


def _p_mul(tw, k, a, b):
    if not a or not b:
        return ()
    out = [tw._zero[k - 1]] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if _e_is_zero(tw, k - 1, c):
            continue
        for j, d in enumerate(b):
            out[i + j] = _e_add(tw, k - 1, out[i + j], _e_mul(tw, k - 1, c, d))
    return _p_trim(tw, k, out)


def _p_divmod(tw, k, a, b):
    b = _p_trim(tw, k, b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv = _e_inv(tw, k - 1, b[-1])
    r = list(_p_trim(tw, k, a))
    q = {}
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = _e_mul(tw, k - 1, r[-1], inv)
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] = _e_sub(tw, k - 1, r[shift + i],
                                  _e_mul(tw, k - 1, c, bc))
        r.pop()
        while r and _e_is_zero(tw, k - 1, r[-1]):
            r.pop()
    if q:
        qt = tuple(q.get(i, tw._zero[k - 1]) for i in range(max(q) + 1))
    else:
        qt = ()
    return qt, tuple(r)


def _p_monic(tw, k, a):
    if not a:
        return a
    lc = a[-1]
    if _e_is_one(tw, k - 1, lc):
        return a
    return _p_scale(tw, k, a, _e_inv(tw, k - 1, lc))


def _p_gcd(tw, k, a, b):
    a = _p_trim(tw, k, a)
    b = _p_trim(tw, k, b)
    while b:
        _, r = _p_divmod(tw, k, a, b)
        a, b = b, r
    return _p_monic(tw, k, a)


def _p_ext_gcd(tw, k, a, b):
    """(g, u) with u*a = g modulo b."""
    r0, r1 = _p_trim(tw, k, a), _p_trim(tw, k, b)
    s0, s1 = (tw._one[k - 1],), ()
    while r1:
        q, r = _p_divmod(tw, k, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _p_sub(tw, k, s0, _p_mul(tw, k, q, s1))
    return r0, s0


def _e_norm(tw, k, num, den):
    num = _p_trim(tw, k, num)
    den = _p_trim(tw, k, den)
    if not den:
        raise DivisionByZero("tower element has zero denominator")
    if not num:
        return ((), (tw._one[k - 1],))
    g = _p_gcd(tw, k, num, den)
    if len(g) > 1:
        num = _p_divmod(tw, k, num, g)[0]
        den = _p_divmod(tw, k, den, g)[0]
    lc = den[-1]
    if not _e_is_one(tw, k - 1, lc):
        inv = _e_inv(tw, k - 1, lc)
        num = _p_scale(tw, k, num, inv)
        den = _p_scale(tw, k, den, inv)
    return (num, den)


def _e_add(tw, k, a, b):
    if k == 0:
        return a + b
    n1, d1 = a
    n2, d2 = b
    if _is_alg(tw, k):
        return (_p_add(tw, k, n1, n2), d1)
    if d1 == d2:
        return _e_norm(tw, k, _p_add(tw, k, n1, n2), d1)
    num = _p_add(tw, k, _p_mul(tw, k, n1, d2), _p_mul(tw, k, n2, d1))
    return _e_norm(tw, k, num, _p_mul(tw, k, d1, d2))


def _e_neg(tw, k, a):
    if k == 0:
        return -a
    return (_p_neg(tw, k, a[0]), a[1])


def _e_sub(tw, k, a, b):
    return _e_add(tw, k, a, _e_neg(tw, k, b))


def _e_mul(tw, k, a, b):
    if k == 0:
        return a * b
    n1, d1 = a
    n2, d2 = b
    num = _p_mul(tw, k, n1, n2)
    if _is_alg(tw, k):
        return (_p_divmod(tw, k, num, tw._minpoly[k - 1])[1], d1)
    return _e_norm(tw, k, num, _p_mul(tw, k, d1, d2))


def _e_inv(tw, k, a):
    if k == 0:
        if a.is_zero():
            raise DivisionByZero("division by zero tower element")
        return R_ONE / a
    num, den = a
    if not num:
        raise DivisionByZero("division by zero tower element")
    if _is_alg(tw, k):
        g, u = _p_ext_gcd(tw, k, num, tw._minpoly[k - 1])
        if len(g) != 1:
            raise DivisionByZero(
                "zero divisor modulo the minimal polynomial of %s"
                % tw.generators[k - 1].name)
        inv = _e_inv(tw, k - 1, g[0])
        return (_p_trim(tw, k, _p_scale(tw, k, u, inv)), den)
    return _e_norm(tw, k, den, num)


def _e_div(tw, k, a, b):
    return _e_mul(tw, k, a, _e_inv(tw, k, b))


def _rep_is_negative(tw, k, a):
    """Sign of the leading coefficient chain (canonical form)."""
    if k == 0:
        return a.is_negative()
    num = a[0]
    if not num:
        return False
    return _rep_is_negative(tw, k - 1, num[-1])


def _lift(tw, k, rep, to):
    while k < to:
        num = () if _e_is_zero(tw, k, rep) else (rep,)
        rep = (num, (tw._one[k],))
        k += 1
    return rep


def _drop(tw, k, rep, target):
    """Lower a rep to the given level, or fail if later generators occur."""
    while k > target:
        num, den = rep
        if len(num) > 1 or len(den) > 1 or not _e_is_one(tw, k - 1, den[0]):
            raise IllFormedTower(
                "generator data may only use earlier generators")
        rep = num[0] if num else tw._zero[k - 1]
        k -= 1
    return rep


# ---------------------------------------------------------------------------
# derivation: full-height chain rule using the generators' stored derivatives


def _derive_elem(tw, k, rep):
    """Derivative of a level-k rep, returned as a full-height TowerElem."""
    if k == 0:
        return TowerElem(tw, _lift(tw, 0, rep.derivative(), tw.n))
    num, den = rep
    dnum = _derive_poly(tw, k, num)
    if len(den) == 1 and _e_is_one(tw, k - 1, den[0]):
        return dnum
    dden = _derive_poly(tw, k, den)
    e = TowerElem(tw, _lift(tw, k, rep, tw.n))
    den_elem = TowerElem(tw, _lift(tw, k, (den, (tw._one[k - 1],)), tw.n))
    return (dnum - e * dden) / den_elem


def _derive_poly(tw, k, p):
    """d/dx of sum(p[j] * g_k^j) as a full-height TowerElem."""
    g = tw.gen(tw.generators[k - 1].name)
    total = tw.elem(0)
    tail = tw.elem(0)
    for j, c in enumerate(p):
        total = total + _derive_elem(tw, k - 1, c) * g ** j
        if j:
            tail = tail + TowerElem(tw, _lift(tw, k - 1, c, tw.n)) \
                * g ** (j - 1) * j
    if not tail.is_zero():
        total = total + tw._deriv[k - 1] * tail
    return total


# ---------------------------------------------------------------------------
# printing


def _fmt_elem(tw, k, rep):
    if k == 0:
        return rep.format()
    num, den = rep
    ns, nterms = _fmt_poly(tw, k, num)
    if len(den) == 1 and _e_is_one(tw, k - 1, den[0]):
        return ns
    if nterms > 1:
        ns = "(%s)" % ns
    ds, dterms = _fmt_poly(tw, k, den)
    if dterms > 1 or "*" in ds or "/" in ds:
        ds = "(%s)" % ds
    return "%s/%s" % (ns, ds)


def _fmt_poly(tw, k, p):
    if not p:
        return "0", 1
    var = tw.generators[k - 1].name
    parts = []
    nterms = 0
    for j in range(len(p) - 1, -1, -1):
        c = p[j]
        if _e_is_zero(tw, k - 1, c):
            continue
        nterms += 1
        neg = _rep_is_negative(tw, k - 1, c)
        mag = _e_neg(tw, k - 1, c) if neg else c
        if j == 0:
            body = _fmt_elem(tw, k - 1, mag)
        else:
            vpow = var if j == 1 else "%s^%d" % (var, j)
            if _e_is_one(tw, k - 1, mag):
                body = vpow
            else:
                cs = _fmt_elem(tw, k - 1, mag)
                if ("+" in cs[1:]) or ("-" in cs[1:]) or ("/" in cs):
                    cs = "(%s)" % cs
                body = "%s*%s" % (cs, vpow)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts), nterms


# ---------------------------------------------------------------------------
# elements


class TowerElem:
    """An element of a tower field, always in canonical reduced form."""

    __slots__ = ("tower", "rep")

    def __init__(self, tower, rep):
        self.tower = tower
        self.rep = rep

    def _coerce(self, v):
        if isinstance(v, TowerElem):
            if v.tower is not self.tower:
                raise TowerMismatch("elements belong to different towers")
            return v
        if isinstance(v, (int, Fraction, Poly, RatFn)):
            return self.tower.elem(v)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_add(tw, tw.n, self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_sub(tw, tw.n, self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_sub(tw, tw.n, o.rep, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_mul(tw, tw.n, self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_div(tw, tw.n, self.rep, o.rep))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tw = self.tower
        return TowerElem(tw, _e_div(tw, tw.n, o.rep, self.rep))

    def __neg__(self):
        tw = self.tower
        return TowerElem(tw, _e_neg(tw, tw.n, self.rep))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        tw = self.tower
        base = self
        if n < 0:
            base = TowerElem(tw, _e_inv(tw, tw.n, self.rep))
            n = -n
        out = tw.elem(1)
        for _ in range(n):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        tw = self.tower
        return _e_is_zero(tw, tw.n, self.rep)

    def derive(self):
        tw = self.tower
        return _derive_elem(tw, tw.n, self.rep)

    def format(self):
        tw = self.tower
        return _fmt_elem(tw, tw.n, self.rep)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "TowerElem(%s)" % self.format()


# ---------------------------------------------------------------------------
# towers


class Tower:
    """An ordered sequence of generators over Q(x), with their derivatives
    installed at build time.

    >>> tw = Tower([Generator("s", ALGEBRAIC, [RatFn.x() * -1, 0, 1])])
    >>> str(tw.derivative("s"))      # 1/(2s) written over the power basis
    '(1/(2*x))*s'
    >>> str(tw.gen("s") ** 2)
    'x'
    """

    __slots__ = ("generators", "_minpoly", "_deriv", "_one", "_zero",
                 "_index")

    def __init__(self, generators):
        gens = tuple(generators)
        seen = set()
        for g in gens:
            if not isinstance(g, Generator):
                raise IllFormedTower("expected Generator, got %r" % (g,))
            if not _NAME.match(g.name) or g.name == "x":
                raise IllFormedTower("bad generator name %r" % (g.name,))
            if g.name in seen:
                raise IllFormedTower("duplicate generator %r" % (g.name,))
            if g.kind not in _KINDS:
                raise IllFormedTower("unknown generator kind %r" % (g.kind,))
            seen.add(g.name)
        self.generators = gens
        self._index = {g.name: i for i, g in enumerate(gens)}
        n = len(gens)
        self._zero = [R_ZERO]
        self._one = [R_ONE]
        for k in range(1, n + 1):
            self._zero.append(((), (self._one[k - 1],)))
            self._one.append(((self._one[k - 1],), (self._one[k - 1],)))
        self._minpoly = {}
        self._deriv = [None] * n
        env = {"x": self.elem(RatFn.x())}
        for i, g in enumerate(gens):
            if g.kind == ALGEBRAIC:
                self._install_algebraic(i, g, env)
            elif g.kind == RATIONAL_ODE:
                env[g.name] = self.gen(g.name)
                rhs = self._payload(env, g.data)
                self._deriv[i] = rhs
            else:
                a = self._payload(env, g.data)
                _drop(self, self.n, a.rep, i)    # earlier generators only
                env[g.name] = self.gen(g.name)
                if g.kind == PRIMITIVE:
                    self._deriv[i] = a
                else:
                    self._deriv[i] = a * env[g.name]

    def _payload(self, env, data):
        try:
            if isinstance(data, (int, Fraction, Poly, RatFn, TowerElem)):
                value = data
            elif callable(data):
                value = data(dict(env))
            else:
                raise IllFormedTower("bad generator data %r" % (data,))
            return self.elem(value)
        except KeyError as exc:
            raise IllFormedTower("unknown name %s in generator data" % exc)
        except DivisionByZero as exc:
            raise IllFormedTower("zero denominator in generator data: %s"
                                 % exc)

    def _install_algebraic(self, i, g, env):
        if not isinstance(g.data, (list, tuple)):
            raise IllFormedTower(
                "algebraic generator needs a coefficient sequence")
        coeffs = [_drop(self, self.n, self._payload(env, c).rep, i)
                  for c in g.data]
        level = i + 1
        coeffs = list(_p_trim(self, level, coeffs))
        if len(coeffs) < 2:
            raise IllFormedTower("minimal polynomial of %s is constant"
                                 % g.name)
        try:
            p = _p_monic(self, level, tuple(coeffs))
            dp = _p_trim(self, level, [
                _e_mul(self, i, c, _lift(self, 0, RatFn.const(j), i))
                for j, c in enumerate(p)][1:])
            if len(_p_gcd(self, level, p, dp)) > 1:
                raise IllFormedTower(
                    "minimal polynomial of %s is not squarefree" % g.name)
            self._minpoly[i] = p
            env[g.name] = self.gen(g.name)
            # implicit differentiation: s' = -P_x(s) / P_T(s)
            s = env[g.name]
            p_x = self.elem(0)
            p_t = self.elem(0)
            for j, c in enumerate(p):
                p_x = p_x + _derive_elem(self, i, c) * s ** j
                if j:
                    p_t = p_t + TowerElem(self, _lift(self, i, c, self.n)) \
                        * s ** (j - 1) * j
            self._deriv[i] = -p_x / p_t
        except DivisionByZero as exc:
            raise IllFormedTower("degenerate minimal polynomial of %s: %s"
                                 % (g.name, exc))

    @property
    def n(self):
        return len(self.generators)

    def names(self):
        return [g.name for g in self.generators]

    def gen(self, name):
        i = self._index[name]
        num = (self._zero[i], self._one[i])
        if self.generators[i].kind == ALGEBRAIC and len(self._minpoly[i]) < 3:
            num = _p_divmod(self, i + 1, num, self._minpoly[i])[1]
        return TowerElem(self, _lift(self, i + 1, (num, (self._one[i],)),
                                     self.n))

    def x(self):
        return self.elem(RatFn.x())

    def derivative(self, name):
        return self._deriv[self._index[name]]

    def elem(self, v):
        if isinstance(v, TowerElem):
            if v.tower is not self:
                raise TowerMismatch("element belongs to a different tower")
            return v
        if isinstance(v, (int, Fraction)):
            v = RatFn.const(v)
        elif isinstance(v, Poly):
            v = RatFn(v)
        if not isinstance(v, RatFn):
            raise TypeError("cannot make a tower element from %r" % (v,))
        return TowerElem(self, _lift(self, 0, v, self.n))


def tower_build(generators):
    """Build a tower, validating names, minpolys, and generator data."""
    return Tower(generators)


def elem_arith(op, u, v):
    """Field arithmetic dispatch: op in {add, sub, mul, div}."""
    if not isinstance(u, TowerElem):
        u, v = v.tower.elem(u), v
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "div":
        return u / v
    raise ValueError("unknown operation %r" % (op,))


def elem_derive(u):
    return u.derive()


def elem_is_zero(u):
    return u.is_zero()


# ---------------------------------------------------------------------------
# monomial coordinates and the annihilator search


class _NonMonomial(Exception):
    def __init__(self, multiplier):
        self.multiplier = multiplier


def _expand(tw, k, rep, out, key):
    if k == 0:
        if not rep.is_zero():
            out[key] = rep
        return
    num, den = rep
    shift = 0
    if not (len(den) == 1 and _e_is_one(tw, k - 1, den[0])):
        # only a pure generator power divides out of the monomial basis
        if any(not _e_is_zero(tw, k - 1, c) for c in den[:-1]):
            lifted = _lift(tw, k, (den, (tw._one[k - 1],)), tw.n)
            raise _NonMonomial(TowerElem(tw, lifted))
        shift = len(den) - 1
    for j, c in enumerate(num):
        _expand(tw, k - 1, c, out,
                key[:k - 1] + (j - shift,) + key[k:])


def monomial_coordinates(elems):
    """Write the elements as Q(x)-combinations of generator monomials
    (integer powers, negative allowed for transcendental layers), after
    scaling all of them by one common nonzero multiplier.  Returns a dict
    per element, keyed by exponent tuples."""
    tw = elems[0].tower
    scaled = list(elems)
    for _ in range(_CLEAR_PASSES):
        try:
            out = []
            for e in scaled:
                d = {}
                _expand(tw, tw.n, e.rep, d, (0,) * tw.n)
                out.append(d)
            return out
        except _NonMonomial as exc:
            scaled = [e * exc.multiplier for e in scaled]
    raise Inconclusive("tower denominators did not reduce to monomials")


class AnnihilatorResult:
    """Found(operator, order) or NotFoundWithinCap(cap)."""

    __slots__ = ("operator", "order", "cap")

    def __init__(self, operator, order, cap):
        self.operator = operator
        self.order = order
        self.cap = cap

    @property
    def found(self):
        return self.operator is not None

    def __eq__(self, other):
        if not isinstance(other, AnnihilatorResult):
            return NotImplemented
        return (self.operator == other.operator and self.order == other.order
                and self.cap == other.cap)

    def __repr__(self):
        if self.found:
            return "Found(%s, order %d)" % (self.operator.format(),
                                            self.order)
        return "NotFoundWithinCap(%d)" % self.cap


def apply_op(l, y):
    """Apply an operator with Q(x) coefficients to a tower element."""
    out = y.tower.elem(0)
    cur = y
    for i, c in enumerate(l.coeffs):
        if i:
            cur = cur.derive()
        out = out + cur * c
    return out


def minimal_annihilator(y, max_order, cap=MONOMIAL_CAP):
    """Smallest monic operator over Q(x) annihilating y, searched order by
    order with exact linear algebra on the monomial coordinates of the
    derivatives.  Minimality holds because each order's search is
    exhaustive relative to the representation."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if y.is_zero():
        return AnnihilatorResult(DiffOp([R_ZERO, R_ONE]), 1, None)
    derivs = [y]
    for k in range(1, max_order + 1):
        derivs.append(derivs[-1].derive())
        coords = monomial_coordinates(derivs)
        support = sorted(set().union(*coords))
        if len(support) > cap:
            raise BasisExplosion(len(support), cap)
        rows = [[coords[i].get(m, R_ZERO) for i in range(k)]
                for m in support]
        rhs = [-coords[k].get(m, R_ZERO) for m in support]
        sol = linalg.solve(rows, rhs, R_ZERO)
        if sol is None:
            continue
        l = DiffOp(list(sol) + [R_ONE])
        check = apply_op(l, y)
        assert check.is_zero()
        return AnnihilatorResult(l, k, None)
    return AnnihilatorResult(None, None, max_order)
