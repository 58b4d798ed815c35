"""Local analysis and closed-form solvers over Q(x).

Finds polynomial and rational solutions of L(y) = 0 and first-order right
factors D - u with u rational (hyperexponential solutions).  Everything is
driven by indicial polynomials at the singular places and, at irregular
places, by Newton polygon slopes; ramified exponential parts (non-integer
slopes) are deliberately out of scope, so a factor is reported exactly when
one exists with u in Q(x) reachable through unramified local data.
"""

import itertools
from fractions import Fraction

from . import linalg
from .errors import CandidateExplosion, IrregularPlace
from .limits import HYPEREXP_CAP
from .ore import D_OP, OP_ONE, DiffOp
from .rational import (
    P_ONE,
    P_X,
    Poly,
    Q,
    R_ONE,
    R_ZERO,
    RatFn,
    poly_ext_gcd,
    poly_factor,
    poly_gcd,
    poly_lcm,
    rational_roots,
)


class AlgebraicNumber:
    """Root of a monic irreducible minpoly over Q; index selects one root
    (by the ascending real/lexicographic order of an exact isolation) when
    a specific conjugate matters, and None means the conjugacy class."""

    __slots__ = ("minpoly", "index")

    def __init__(self, minpoly, index=None):
        self.minpoly = minpoly.monic()
        self.index = index

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.minpoly == other.minpoly and self.index == other.index

    def __hash__(self):
        return hash(("AlgebraicNumber", self.minpoly.coeffs, self.index))

    def __repr__(self):
        if self.index is None:
            return "AlgebraicNumber(%s)" % self.minpoly
        return "AlgebraicNumber(%s, index=%d)" % (self.minpoly, self.index)

    def sort_key(self):
        return self.minpoly.sort_key()


class Place:
    """A finite place (monic irreducible Poly) or the place at infinity."""

    __slots__ = ("kind", "factor", "regular")

    def __init__(self, kind, factor=None, regular=None):
        self.kind = kind
        self.factor = factor
        self.regular = regular

    @classmethod
    def finite(cls, factor, regular=None):
        return cls("finite", factor.monic(), regular)

    @classmethod
    def infinity(cls, regular=None):
        return cls("infinity", None, regular)

    @property
    def is_infinity(self):
        return self.kind == "infinity"

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.kind == other.kind and self.factor == other.factor

    def __hash__(self):
        return hash((self.kind, self.factor.coeffs if self.factor else None))

    def __repr__(self):
        if self.is_infinity:
            return "Place(infinity)"
        return "Place(%s)" % self.factor

    def __str__(self):
        return "infinity" if self.is_infinity else str(self.factor)


class FirstOrderFactor:
    """Right factor D - u; op_right_divide(L, as_operator()) has remainder 0."""

    __slots__ = ("u",)

    def __init__(self, u):
        self.u = u

    def as_operator(self):
        return DiffOp([-self.u, R_ONE])

    def __eq__(self, other):
        if not isinstance(other, FirstOrderFactor):
            return NotImplemented
        return self.u == other.u

    def __hash__(self):
        return hash(("FirstOrderFactor", self.u))

    def __repr__(self):
        return "FirstOrderFactor(%s)" % self.u

    def sort_key(self):
        return self.u.sort_key()


# ---------------------------------------------------------------------------
# cleared coefficients and local data


def _cleared(l):
    """Polynomial coefficients of l with denominators cleared and the
    common polynomial factor removed."""
    m = P_ONE
    for c in l.coeffs:
        m = poly_lcm(m, c.den)
    out = [c.num * (m // c.den) for c in l.coeffs]
    g = Poly([])
    for a in out:
        g = poly_gcd(g, a)
    if g.degree > 0:
        out = [a // g for a in out]
    return out


def _poly_val(a, p):
    """Multiplicity of p in a != 0."""
    v = 0
    while True:
        q, r = divmod(a, p)
        if r:
            return v
        a = q
        v += 1


def _mod(a, p):
    return a % p


def _mod_inv(a, p):
    g, s, _ = poly_ext_gcd(a % p, p)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo %s" % p)
    return s % p


def _lc_at(a, p, v):
    """Residue of a / p^v modulo p (nonzero when v is the multiplicity)."""
    for _ in range(v):
        a = a // p
    return a % p


def _infinity_op(l):
    """The operator rewritten at infinity: x = 1/z, D_x = -z^2 D_z.

    Coefficients are rational functions in z (same machinery, new variable).
    """
    t = DiffOp([R_ZERO, RatFn(Poly([Q(0), Q(0), Q(-1)]))])
    out = DiffOp([])
    pw = OP_ONE
    for i, a in enumerate(l.coeffs):
        if i:
            pw = pw * t
        az = a.subst_reciprocal()
        if not az.is_zero():
            out = out + DiffOp([az]) * pw
    return out


_FALLING = [[Q(1)]]  # coefficient lists of r(r-1)...(r-i+1), ascending in r


def _falling(i):
    while len(_FALLING) <= i:
        prev = _FALLING[-1]
        k = len(_FALLING) - 1
        nxt = [Q(0)] * (len(prev) + 1)
        for j, c in enumerate(prev):
            nxt[j + 1] += c
            nxt[j] -= c * k
        _FALLING.append(nxt)
    return _FALLING[i]


def _indicial_coeffs(cleared, p):
    """Indicial polynomial at finite place p, as coefficient list in the
    exponent variable over the residue field Q[x]/(p); second value is the
    level set attaining min(v_i - i)."""
    data = [(i, _poly_val(a, p)) for i, a in enumerate(cleared) if a]
    m = min(v - i for i, v in data)
    level = [(i, v) for i, v in data if v - i == m]
    pbar = _mod(p.derivative(), p)
    out = [Poly([]) for _ in range(max(i for i, _ in level) + 1)]
    for i, v in level:
        lc = _lc_at(cleared[i], p, v)
        scale = lc
        for _ in range(i):
            scale = _mod(scale * pbar, p)
        for j, c in enumerate(_falling(i)):
            if c:
                out[j] = _mod(out[j] + scale * c, p)
    while out and not out[-1]:
        out.pop()
    return out, [i for i, _ in level]


def _field_roots(coeffs, p):
    """Roots in the residue field Q[x]/(p) of sum(coeffs[j] * T^j), found
    exactly for T-degree 1, and as shared rational roots otherwise (the
    complete rational list when deg p = 1).  Returned as reduced Polys."""
    cs = [_mod(c, p) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) <= 1:
        return []
    if len(cs) == 2:
        root = _mod(-cs[0] * _mod_inv(cs[1], p), p)
        return [root]
    if p.degree == 1:
        q = Poly([c.coeffs[0] if c else Q(0) for c in cs])
        return [Poly.const(r) for r in rational_roots(q)]
    # shared rational roots across x-coordinates
    g = Poly([])
    maxd = max(c.degree for c in cs)
    for d in range(maxd + 1):
        jd = Poly([c.coeffs[d] if d <= c.degree else Q(0) for c in cs])
        g = poly_gcd(g, jd)
    if g.degree < 1:
        return []
    return [Poly.const(r) for r in rational_roots(g)]


def _as_rational(e):
    """Fraction for a constant residue element, else None."""
    if e.degree <= 0:
        return e.coeffs[0] if e else Q(0)
    return None


def _element_minpoly(e, p):
    """Minimal polynomial over Q of the residue class e mod p, via the
    characteristic polynomial of multiplication by e on Q[x]/(p)."""
    n = p.degree
    cols = []
    b = _mod(e, p)
    for j in range(n):
        v = _mod(b * Poly.x_power(j), p)
        cols.append([v.coeffs[i] if i <= v.degree else Q(0) for i in range(n)])
    # det(T*I - M) over Q(T), reusing the rational-function machinery
    rows = []
    for i in range(n):
        rows.append([
            RatFn(P_X) - RatFn(Poly.const(cols[j][i])) if i == j
            else RatFn(Poly.const(-cols[j][i]))
            for j in range(n)
        ])
    char = linalg.determinant(rows, R_ZERO, R_ONE)
    cp = char.num.monic()
    g = poly_gcd(cp, cp.derivative())
    return (cp // g).monic()


# ---------------------------------------------------------------------------
# public surface: places, indicial roots, solvers


def singular_points(l):
    """Finite singular places (factors of the cleared leading coefficient)
    plus the place at infinity, each tagged regular/irregular."""
    if not l:
        raise ValueError("zero operator")
    cs = _cleared(l)
    n = l.order
    places = []
    for f, _ in poly_factor(cs[-1]):
        if f.degree < 1:
            continue
        coeffs, level = _indicial_coeffs(cs, f)
        places.append(Place.finite(f, regular=(n in level)))
    places.sort(key=lambda pl: pl.factor.sort_key())
    zc = _cleared(_infinity_op(l))
    _, zlevel = _indicial_coeffs(zc, P_X)
    places.append(Place.infinity(regular=(n in zlevel)))
    return places


def indicial_roots(l, place):
    """Roots of the indicial polynomial at the place, rational ones as
    Fractions and the rest bundled as AlgebraicNumber classes.

    Exponent convention at infinity: the local parameter is z = 1/x, so a
    solution ~ x^d has root -d (x^2 gives -2, 1/x gives +1).
    """
    if not l:
        raise ValueError("zero operator")
    if place.is_infinity:
        cs = _cleared(_infinity_op(l))
        p = P_X
    else:
        cs = _cleared(l)
        p = place.factor
    coeffs, _ = _indicial_coeffs(cs, p)
    if len(coeffs) - 1 < l.order:
        raise IrregularPlace(str(place))
    rats = []
    algs = []
    if len(coeffs) == 2:
        e = _mod(-coeffs[0] * _mod_inv(coeffs[1], p), p)
        r = _as_rational(e)
        if r is not None:
            rats.append(r)
        else:
            algs.append(AlgebraicNumber(_element_minpoly(e, p)))
    elif p.degree == 1:
        q = Poly([c.coeffs[0] if c else Q(0) for c in coeffs])
        for f, _ in poly_factor(q):
            if f.degree == 1:
                rats.append(-f.coeffs[0] / f.coeffs[1])
            elif f.degree > 1:
                algs.append(AlgebraicNumber(f))
    else:
        maxd = max(c.degree for c in coeffs)
        g = Poly([])
        for d in range(maxd + 1):
            jd = Poly([c.coeffs[d] if d <= c.degree else Q(0) for c in coeffs])
            g = poly_gcd(g, jd)
        if g.degree >= 1:
            for f, _ in poly_factor(g):
                if f.degree == 1:
                    rats.append(-f.coeffs[0] / f.coeffs[1])
                elif f.degree > 1:
                    algs.append(AlgebraicNumber(f))
    rats = sorted(set(rats))
    algs = sorted(set(algs), key=lambda a: a.sort_key())
    return rats + algs


def _infinity_degree_bound(l):
    """Largest d >= 0 with -d an integer root of the indicial polynomial at
    infinity (valid at irregular infinity too: negative exponents never kill
    the falling factorials), or None when no polynomial degree is possible."""
    zc = _cleared(_infinity_op(l))
    coeffs, _ = _indicial_coeffs(zc, P_X)
    best = None
    for e in _field_roots(coeffs, P_X):
        r = _as_rational(e)
        if r is not None and r.denominator == 1 and r <= 0:
            d = -int(r)
            if best is None or d > best:
                best = d
    return best


def polynomial_solutions(l):
    """Q-basis of polynomial solutions of l(y) = 0, sorted canonically."""
    if not l:
        raise ValueError("zero operator")
    bound = _infinity_degree_bound(l)
    if bound is None:
        return []
    cs = _cleared(l)
    cols = []
    maxdeg = 0
    for j in range(bound + 1):
        # l applied to x^j, cleared: sum cs[i] * j(j-1)...(j-i+1) x^(j-i)
        acc = Poly([])
        ff = Q(1)
        for i, a in enumerate(cs):
            if i > j:
                break
            if i:
                ff *= j - (i - 1)
            if a and ff:
                acc = acc + a * Poly.x_power(j - i, ff)
        cols.append(acc)
        if acc.degree > maxdeg:
            maxdeg = acc.degree
    rows = []
    for d in range(maxdeg + 1):
        rows.append([c.coeffs[d] if d <= c.degree else Q(0) for c in cols])
    basis = linalg.nullspace(rows, bound + 1, Q(0), Q(1))
    out = [Poly(v).monic() for v in basis]
    out.sort(key=lambda q: q.sort_key())
    return out


def rational_solutions(l):
    """Q-basis of solutions in Q(x): pole orders are bounded by negative
    integer indicial roots at the finite singular places (the bound holds at
    irregular places as well), then polynomial solutions of the shifted
    operator finish the job."""
    if not l:
        raise ValueError("zero operator")
    cs = _cleared(l)
    den = P_ONE
    for f, _ in poly_factor(cs[-1]):
        if f.degree < 1:
            continue
        coeffs, _ = _indicial_coeffs(cs, f)
        worst = 0
        for e in _field_roots(coeffs, f):
            r = _as_rational(e)
            if r is not None and r.denominator == 1 and r < 0:
                worst = max(worst, -int(r))
        for _ in range(worst):
            den = den * f
    shifted = l * DiffOp([RatFn(P_ONE, den)])
    out = [RatFn(q, den) for q in polynomial_solutions(shifted)]
    out.sort(key=lambda r: r.sort_key())
    return out


# ---------------------------------------------------------------------------
# hyperexponential right factors


def op_twist(l, s):
    """Operator with y = exp(int s) * Y substituted: sum a_i (D + s)^i."""
    base = D_OP + DiffOp([s])
    out = DiffOp([l.coeff(0)])
    pw = OP_ONE
    for i in range(1, l.order + 1):
        pw = pw * base
        a = l.coeff(i)
        if not a.is_zero():
            out = out + DiffOp([a]) * pw
    return out


def _residue_candidates(l, p):
    """Local parts e * p'/p for exponent classes e at the finite place p,
    one representative per class modulo integer shifts."""
    cs = _cleared(l)
    coeffs, _ = _indicial_coeffs(cs, p)
    roots = _field_roots(coeffs, p)
    roots.sort(key=lambda e: (e.coeffs[0] if e else Q(0), e.coeffs))
    kept = []
    for e in roots:
        redundant = False
        for f in kept:
            d = e - f
            if d.degree <= 0 and (not d or d.coeffs[0].denominator == 1):
                redundant = True
                break
        if not redundant:
            kept.append(e)
    out = []
    for e in kept:
        num = _mod(e * p.derivative(), p)
        out.append(RatFn(num, p))
    return out


def _local_parts(l, p, max_k, at_inf):
    """Complete local candidate parts of u at the place p, recursing through
    Newton polygon slopes (integer k >= 2 only; ramified parts are skipped).
    At infinity (z-world) residue parts are omitted: they are absorbed by
    finite residues and the rational remainder."""
    cs = _cleared(l)
    data = [(i, _poly_val(a, p)) for i, a in enumerate(cs) if a]
    out = []
    ks = set()
    for (i, vi), (j, vj) in itertools.combinations(data, 2):
        num = vj - vi
        den = j - i
        if num % den == 0:
            k = num // den
            if 2 <= k and (max_k is None or k <= max_k):
                ks.add(k)
    for k in sorted(ks, reverse=True):
        m = min(v - k * i for i, v in data)
        level = [i for i, v in data if v - k * i == m]
        if len(level) < 2:
            continue
        chi = [Poly([]) for _ in range(max(level) + 1)]
        for i in level:
            chi[i] = _lc_at(cs[i], p, dict(data)[i])
        for w in _field_roots(chi, p):
            if not w:
                continue
            term = RatFn(w, p ** k)
            rest = _local_parts(op_twist(l, term), p, k - 1, at_inf)
            for r in rest:
                out.append(term + r)
    if at_inf:
        out.append(R_ZERO)
    else:
        out.extend(_residue_candidates(l, p))
    seen = set()
    uniq = []
    for s in out:
        if s not in seen:
            seen.add(s)
            uniq.append(s)
    return uniq


def hyperexp_right_factors(l):
    """All first-order right factors D - u with u in Q(x), one representative
    per basis element of each exponential class found by the local search.

    Every returned u is exact (verified against the construction: u is
    s + R'/R for an exact rational solution R of the twisted operator).
    """
    if l.order < 1:
        raise ValueError("operator order must be at least 1")
    cs = _cleared(l)
    lists = []
    for f, _ in poly_factor(cs[-1]):
        if f.degree < 1:
            continue
        cands = _local_parts(l, f, None, at_inf=False)
        if not cands:
            return []
        lists.append(cands)
    zop = _infinity_op(l)
    zcands = _local_parts(zop, P_X, None, at_inf=True)
    inf_list = []
    seen = set()
    x2 = RatFn(Poly([Q(0), Q(0), Q(1)]))
    for sz in zcands:
        sx = -(sz.subst_reciprocal()) / x2
        if sx not in seen:
            seen.add(sx)
            inf_list.append(sx)
    lists.append(inf_list)
    count = 1
    for cands in lists:
        count *= len(cands)
    if count > HYPEREXP_CAP:
        raise CandidateExplosion(count, HYPEREXP_CAP)
    twists = set()
    for combo in itertools.product(*lists):
        s = R_ZERO
        for part in combo:
            s = s + part
        twists.add(s)
    found = set()
    for s in sorted(twists, key=lambda t: t.sort_key()):
        for r in rational_solutions(op_twist(l, s)):
            found.add(s + r.derivative() / r)
    out = [FirstOrderFactor(u) for u in sorted(found, key=lambda u: u.sort_key())]
    return out
