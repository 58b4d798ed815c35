"""Exact arithmetic over Q, Q[x], and Q(x) with the derivation d/dx.

Polynomials are dense coefficient tuples of fractions.Fraction indexed by
degree; the zero polynomial has degree -1 (sentinel).  Rational functions
are kept in reduced canonical form (coprime, monic denominator), so value
equality is structural equality.

Factorization over Q is squarefree decomposition (Yun) + rational-root
extraction + mod-p irreducibility certificates + Kronecker interpolation
splitting for residual parts of degree 4..bound; residual parts that can
be neither certified nor split within the bound raise FactorDegreeExceeded.
"""

import itertools
from fractions import Fraction

from .errors import DivisionByZero, FactorDegreeExceeded
from .limits import FACTOR_BOUND

Q = Fraction


# ---------------------------------------------------------------------------
# integer factoring (divisor enumeration for rational roots and Kronecker)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    import math
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def int_factor(n):
    """Prime factorization of n >= 1 as a dict prime -> exponent."""
    out = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out

def int_divisors(n):
    """Sorted positive divisors of n (n != 0).

    >>> int_divisors(12)
    [1, 2, 3, 4, 6, 12]
    """
    fac = int_factor(abs(n))
    divs = [1]
    for p, e in sorted(fac.items()):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# polynomials

def _trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


class Poly:
    """Dense univariate polynomial over Q.

    >>> p = Poly([Q(-1), Q(0), Q(1)])   # x^2 - 1
    >>> str(p)
    'x^2 - 1'
    >>> str(p.derivative())
    '2*x'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _trim([Q(c) for c in coeffs])

    @classmethod
    def const(cls, c):
        return cls([Q(c)])

    @classmethod
    def x_power(cls, k, c=1):
        return cls([Q(0)] * k + [Q(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([Q(other)])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([Q(other)])
        if isinstance(other, Poly):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return Poly([])
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([Q(1)])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([]), self
        quot = [Q(0)] * (dq + 1)
        dlc = other.lc
        dlen = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + dlen - 1] / dlc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self:
            return self
        lc = self.lc
        if lc == 1:
            return self
        return Poly([c / lc for c in self.coeffs])

    def __call__(self, point):
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def reversed(self, at_degree=None):
        """Coefficients reversed as a degree-(at_degree) polynomial."""
        d = self.degree if at_degree is None else at_degree
        out = [Q(0)] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(out)

    def format(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            elif mag == 1:
                body = var if d == 1 else "%s^%d" % (var, d)
            else:
                body = "%s*%s" % (mag, var) if d == 1 else "%s*%s^%d" % (mag, var, d)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format("x")

    def __repr__(self):
        return "Poly(%s)" % self.format("x")

    def sort_key(self):
        return (self.degree, self.coeffs)


P_ZERO = Poly([])
P_ONE = Poly([Q(1)])
P_X = Poly([Q(0), Q(1)])


def poly_gcd(a, b):
    """Monic gcd in Q[x]."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = P_ONE, P_ZERO
    t0, t1 = P_ZERO, P_ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        lc = r0.lc
        r0 = r0.monic()
        s0 = Poly([c / lc for c in s0.coeffs])
        t0 = Poly([c / lc for c in t0.coeffs])
    return r0, s0, t0


def poly_lcm(a, b):
    if not a or not b:
        return P_ZERO
    return ((a * b) // poly_gcd(a, b)).monic()


def _int_primitive(p):
    """(content, primitive) with content > 0 rational, primitive integer
    coefficients whose gcd is 1; sign stays with the polynomial."""
    import math
    if not p:
        return Q(1), p
    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs:
        if c:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    content = Q(num_gcd, den_lcm)
    return content, Poly([c / content for c in p.coeffs])


def squarefree_decomposition(p):
    """Yun's algorithm: [(g_i, i)] with p = lc * prod g_i^i, g_i monic
    squarefree and pairwise coprime."""
    p = p.monic()
    if p.degree <= 0:
        return []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    out = []
    b = p // g
    c = p.derivative() // g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def rational_roots(p):
    """Sorted rational roots of p != 0 (without multiplicity).

    >>> rational_roots(Poly([Q(0), Q(-1), Q(0), Q(1)]))   # x^3 - x
    [Fraction(-1, 1), Fraction(0, 1), Fraction(1, 1)]
    """
    if not p:
        raise ValueError("zero polynomial")
    roots = []
    coeffs = list(p.coeffs)
    k = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    if k:
        roots.append(Q(0))
    p = Poly(coeffs)
    if p.degree < 1:
        return sorted(roots)
    _, pp = _int_primitive(p)
    a0 = abs(pp.coeffs[0].numerator)
    an = abs(pp.lc.numerator)
    for dn in int_divisors(a0):
        for dd in int_divisors(an):
            for cand in (Q(dn, dd), Q(-dn, dd)):
                if cand not in roots and pp(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# mod-p certificates and Kronecker splitting

def _gp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gp_mod(a, f, p):
    a = [c % p for c in a]
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k] * inv % p
        if c:
            for j in range(df + 1):
                a[k - df + j] = (a[k - df + j] - c * f[j]) % p
    return _gp_trim(a[:df])


def _gp_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gp_mod(out, f, p)


def _gp_rem(a, b, p):
    r = _gp_trim([c % p for c in a])
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while r and len(r) - 1 >= db:
        c = r[-1] * inv % p
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] = (r[shift + j] - c * b[j]) % p
        r = _gp_trim(r)
    return r


def _gp_div(a, b, p):
    r = _gp_trim([c % p for c in a])
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    if len(r) - 1 < db:
        return []
    q = [0] * (len(r) - db)
    while r and len(r) - 1 >= db:
        c = r[-1] * inv % p
        shift = len(r) - 1 - db
        q[shift] = c
        for j in range(db + 1):
            r[shift + j] = (r[shift + j] - c * b[j]) % p
        r = _gp_trim(r)
    return _gp_trim(q)


def _gp_gcd(a, b, p):
    a = _gp_trim([c % p for c in a])
    b = _gp_trim([c % p for c in b])
    while b:
        a, b = b, _gp_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _gp_powmod(base, e, f, p):
    out = [1]
    b = _gp_mod(list(base), f, p)
    while e:
        if e & 1:
            out = _gp_mulmod(out, b, f, p)
        b = _gp_mulmod(b, b, f, p)
        e >>= 1
    return out


def _mod_p_factor_degrees(p_int, prime):
    """Multiset of irreducible-factor degrees of p_int mod prime, or None
    when the reduction degenerates (lc vanishes or not squarefree)."""
    f = [c.numerator % prime for c in p_int.coeffs]
    if f[-1] == 0:
        return None
    deriv = _gp_trim([i * c % prime for i, c in enumerate(f)][1:])
    if not deriv or len(_gp_gcd(f, deriv, prime)) > 1:
        return None
    degrees = []
    g = list(f)
    h = _gp_mod([0, 1], g, prime)
    d = 0
    while len(g) - 1 >= 1:
        d += 1
        if 2 * d > len(g) - 1:
            degrees.append(len(g) - 1)
            break
        h = _gp_powmod(h, prime, g, prime)
        hx = list(h) + [0] * (2 - len(h))
        hx[1] = (hx[1] - 1) % prime
        cap = _gp_gcd(_gp_trim(hx), g, prime)
        if len(cap) > 1:
            deg_cap = len(cap) - 1
            degrees.extend([d] * (deg_cap // d))
            g = _gp_div(g, cap, prime)
            if len(g) - 1 >= 1:
                h = _gp_mod(h, g, prime)
    return degrees


def _subset_sums(multiset, total):
    bits = 1
    for d in multiset:
        bits |= bits << d
    return {k for k in range(total + 1) if (bits >> k) & 1}


_KRONECKER_CAP = 200000


def _kronecker_factor(h, allowed_degrees, bound):
    """A monic factor of h with degree in allowed_degrees, or None.

    h is squarefree with no rational roots; integer-primitive internally.
    """
    _, hz = _int_primitive(h)
    n = hz.degree

    def points():
        yield 0
        k = 1
        while True:
            yield k
            yield -k
            k += 1

    pts_all = list(itertools.islice(points(), n + 2))
    vals_all = [hz(Q(pt)) for pt in pts_all]
    for k in sorted(d for d in allowed_degrees if 1 <= d <= n // 2):
        pts = pts_all[:k + 1]
        vals = vals_all[:k + 1]
        check_pt, check_val = pts_all[k + 1], vals_all[k + 1]
        div_lists = []
        for i, v in enumerate(vals):
            ds = int_divisors(int(v))
            if i == 0:
                div_lists.append(ds)  # sign symmetry: fix first positive
            else:
                div_lists.append([d for t in ds for d in (t, -t)])
        total = 1
        for ds in div_lists:
            total *= len(ds)
        if total > _KRONECKER_CAP:
            raise FactorDegreeExceeded(h.degree, bound)
        # Lagrange basis for the chosen points
        basis = []
        for i, pi in enumerate(pts):
            num = P_ONE
            den = Q(1)
            for j, pj in enumerate(pts):
                if i != j:
                    num = num * Poly([Q(-pj), Q(1)])
                    den *= Q(pi - pj)
            basis.append((num, den))
        basis_at_check = [b(Q(check_pt)) / d for b, d in basis]
        for combo in itertools.product(*div_lists):
            gval = sum(Q(c) * bv for c, bv in zip(combo, basis_at_check))
            if gval == 0 or gval.denominator != 1 or check_val % gval != 0:
                continue
            g = P_ZERO
            for c, (b, d) in zip(combo, basis):
                g = g + b * (Q(c) / d)
            if g.degree != k:
                continue
            if any(c.denominator != 1 for c in g.coeffs):
                continue
            if not (hz % g):
                return g.monic()
    return None


_CERT_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _factor_squarefree_part(g, bound):
    """Factor a monic squarefree polynomial with no rational roots."""
    if g.degree <= 0:
        return []
    if g.degree <= 3:
        return [g]  # no rational roots: degree 2/3 are irreducible over Q
    _, gz = _int_primitive(g)
    allowed = set(range(g.degree + 1))
    usable = 0
    for prime in _CERT_PRIMES:
        degs = _mod_p_factor_degrees(gz, prime)
        if degs is None:
            continue
        usable += 1
        allowed &= _subset_sums(degs, g.degree)
        if not (allowed - {0, g.degree}):
            return [g]
        if usable >= 6:
            break
    if g.degree > bound:
        raise FactorDegreeExceeded(g.degree, bound)
    f = _kronecker_factor(g, allowed, bound)
    if f is None:
        return [g]
    rest = (g // f).monic()
    return (_factor_squarefree_part(f, bound)
            + _factor_squarefree_part(rest, bound))


def poly_factor(p, bound=None):
    """Irreducible monic factors of p != 0 with multiplicities.

    The product of the factors (with multiplicities) times lc(p) equals p.
    Raises FactorDegreeExceeded when a residual part of degree > bound can
    be neither certified irreducible nor split.

    >>> [(str(f), m) for f, m in poly_factor(Poly([Q(0), Q(-1), Q(0), Q(1)]))]
    [('x', 1), ('x - 1', 1), ('x + 1', 1)]
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if bound is None:
        bound = FACTOR_BOUND
    out = {}
    for part, mult in squarefree_decomposition(p):
        factors = []
        for r in rational_roots(part):
            factors.append(Poly([-r, Q(1)]))
        rest = part
        for f in factors:
            rest = rest // f
        factors.extend(_factor_squarefree_part(rest.monic(), bound))
        for f in factors:
            out[f] = out.get(f, 0) + mult
    return sorted(out.items(), key=lambda fm: fm[0].sort_key())


# ---------------------------------------------------------------------------
# rational functions

class RatFn:
    """Reduced rational function num/den over Q, den monic.

    >>> f = RatFn(Poly([Q(1), Q(0), Q(1)]), P_X)   # (x^2+1)/x
    >>> str(f.derivative())
    '(x^2 - 1)/x^2'
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE):
        if isinstance(num, (int, Fraction)):
            num = Poly([Q(num)])
        if isinstance(den, (int, Fraction)):
            den = Poly([Q(den)])
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = P_ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lc = den.lc
            if lc != 1:
                num = Poly([c / lc for c in num.coeffs])
                den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(Poly([Q(c)]))

    @classmethod
    def x(cls):
        return cls(P_X)

    @classmethod
    def from_fraction(cls, num, den):
        return cls(num) / cls(den)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFn", self.num.coeffs, self.den.coeffs))

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __add__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        return RatFn(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_ratfn(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return (RatFn.const(1) / self) ** (-n)
        return RatFn(self.num ** n, self.den ** n)

    def derivative(self):
        return RatFn(self.num.derivative() * self.den
                     - self.num * self.den.derivative(),
                     self.den * self.den)

    def __call__(self, point):
        d = self.den(point)
        if d == 0:
            raise DivisionByZero("pole at evaluation point")
        return self.num(point) / d

    def valuation(self, factor):
        """Order of vanishing at the monic irreducible `factor` (negative
        at a pole); raises on the zero function."""
        if not self.num:
            raise ValueError("valuation of zero")
        v = 0
        n = self.num
        while True:
            q, r = divmod(n, factor)
            if r:
                break
            n = q
            v += 1
        d = self.den
        while True:
            q, r = divmod(d, factor)
            if r:
                break
            d = q
            v -= 1
        return v

    def subst_reciprocal(self):
        """f(1/x) as a rational function of x."""
        dn, dd = self.num.degree, self.den.degree
        if dn < 0:
            return self
        d = max(dn, dd)
        num = self.num.reversed(d)
        den = self.den.reversed(d)
        return RatFn(num, den)

    def shift_num_den(self):
        """(N, D) integer-primitive with self = N/D and lc(D) > 0."""
        cn, np_ = _int_primitive(self.num)
        cd, dp = _int_primitive(self.den)
        c = cn / cd
        return np_ * c.numerator, dp * c.denominator

    def is_negative(self):
        """Sign of the leading numerator coefficient (canonical form)."""
        return bool(self.num) and self.num.lc < 0

    def format(self, var="x"):
        if not self.num:
            return "0"
        n, d = self.shift_num_den()
        if d == P_ONE:
            return n.format(var)
        ns = n.format(var)
        if sum(1 for c in n.coeffs if c) > 1:
            ns = "(%s)" % ns
        ds = d.format(var)
        if _den_needs_parens(d):
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    def __str__(self):
        return self.format("x")

    def __repr__(self):
        return "RatFn(%s)" % self.format("x")

    def sort_key(self):
        """Canonical total order: simplest first, then larger leading
        numerator coefficient first."""
        return (self.den.degree, self.num.degree,
                tuple(-c for c in reversed(self.num.coeffs)),
                self.den.coeffs)


def _den_needs_parens(d):
    terms = sum(1 for c in d.coeffs if c)
    if terms > 1:
        return True
    return d.degree > 0 and d.lc != 1


def _coerce_ratfn(v):
    if isinstance(v, RatFn):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFn.const(v)
    if isinstance(v, Poly):
        return RatFn(v)
    return None


R_ZERO = RatFn(P_ZERO)
R_ONE = RatFn(P_ONE)
R_X = RatFn(P_X)


# ---------------------------------------------------------------------------
# partial fractions

def partial_fractions(f, bound=None):
    """(polynomial part, [(factor, exponent, numerator), ...]) with
    f = poly + sum num/(factor^exponent) and deg(num) < deg(factor).

    >>> pp, parts = partial_fractions(RatFn(Poly([Q(1), Q(0), Q(1)]),
    ...                                     Poly([Q(0), Q(-1), Q(1)])))
    >>> str(pp), [(str(p), e, str(n)) for p, e, n in parts]
    ('1', [('x', 1, '-1'), ('x - 1', 1, '2')])
    """
    poly_part, rem = divmod(f.num, f.den)
    parts = []
    if rem:
        for factor, mult in poly_factor(f.den, bound=bound):
            cofactor = f.den // factor ** mult
            pk = factor ** mult
            # rem/den = A/factor^mult + (rest over cofactor)
            g, s, t = poly_ext_gcd(cofactor, pk)
            # s*cofactor + t*pk = 1, so rem/den = rem*s/pk + rem*t/cofactor
            a = (rem * s) % pk
            for e in range(mult, 0, -1):
                a, digit = divmod(a, factor)
                if digit:
                    parts.append((factor, e, digit))
    parts.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return poly_part, parts
