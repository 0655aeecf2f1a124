"""Exact scalar arithmetic: rationals, integer polynomials, and real algebraic numbers.

Three scalar regimes are used throughout the package:

* exact rationals (``fractions.Fraction``),
* real algebraic numbers of degree <= 4, represented as polynomials in a
  field generator whose minimal polynomial and isolating interval are stored
  (:class:`AlgebraicField` / :class:`AlgebraicScalar`),
* binary64 floats for optimization inner loops.

Sign determination for algebraic scalars is certified: the value is evaluated
with exact rational interval arithmetic over the generator's isolating
interval, which is bisected until the sign is unambiguous.  A nonzero element
of the field cannot vanish at the generator (the minimal polynomial is
irreducible), so the loop terminates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]


# ---------------------------------------------------------------------------
# rational parsing / formatting ("p/q" wire format)

def parse_rational(text: str) -> Fraction:
    """Parse a 'p/q' (or plain 'p') string into a Fraction."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Rat) -> str:
    """Canonical 'p/q' string (denominator omitted when 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_rational_square(x: Rat) -> bool:
    """True iff x is the square of a rational number."""
    x = Fraction(x)
    if x < 0:
        return False
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    return pn * pn == x.numerator and pd * pd == x.denominator


def rational_sqrt(x: Rat) -> Fraction:
    """Exact square root of a rational square."""
    x = Fraction(x)
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficients low -> high

def poly_trim(p: Sequence[Rat]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in p]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_degree(p: Sequence[Rat]) -> int:
    p = poly_trim(p)
    return len(p) - 1  # degree of the zero polynomial is -1


def poly_eval(p: Sequence[Rat], x: Rat) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([Fraction(p[i] if i < len(p) else 0) + Fraction(q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_neg(p):
    return tuple(-Fraction(c) for c in p)


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += Fraction(a) * Fraction(b)
    return poly_trim(out)


def poly_scale(p, s):
    return poly_trim([Fraction(c) * Fraction(s) for c in p])


def poly_divmod(p, q):
    """Quotient and remainder over the rationals."""
    p = list(poly_trim(p))
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        s = p[-1] / q[-1]
        k = len(p) - len(q)
        quot[k] = s
        for i, c in enumerate(q):
            p[k + i] -= s * c
        while p and p[-1] == 0:
            p.pop()
    return poly_trim(quot), poly_trim(p)


def poly_deriv(p):
    return poly_trim([Fraction(i) * Fraction(c) for i, c in enumerate(p)][1:])


def poly_gcd(p, q):
    p, q = poly_trim(p), poly_trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if p:
        p = poly_scale(p, 1 / Fraction(p[-1]))  # monic
    return p


def poly_content_primitive(p: Sequence[Rat]) -> tuple[Fraction, tuple[int, ...]]:
    """Split p = content * primitive with integer, content-1 primitive part.

    The primitive part has positive leading coefficient.
    """
    p = poly_trim(p)
    if not p:
        return Fraction(0), ()
    den = math.lcm(*[Fraction(c).denominator for c in p])
    ints = [int(Fraction(c) * den) for c in p]
    g = math.gcd(*[abs(c) for c in ints])
    sign = 1 if ints[-1] > 0 else -1
    prim = tuple(sign * c // g for c in ints)
    return Fraction(sign * g, den), prim


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation

def sturm_sequence(p) -> list[tuple[Fraction, ...]]:
    p = poly_trim(p)
    seq = [p, poly_deriv(p)]
    while seq[-1]:
        rem = poly_divmod(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append(poly_neg(rem))
    return [s for s in seq if s]


def _sign_variations(seq, x: Fraction) -> int:
    signs = []
    for s in seq:
        v = poly_eval(s, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo: Rat, hi: Rat) -> int:
    """Number of distinct real roots of p in (lo, hi], via Sturm's theorem."""
    seq = sturm_sequence(p)
    return _sign_variations(seq, Fraction(lo)) - _sign_variations(seq, Fraction(hi))


def root_bound(p) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    p = poly_trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals, each containing exactly one real root of p.

    Intervals are returned in increasing order and have endpoints that are
    not roots themselves.  Works on the square-free part of p, so repeated
    roots are reported once.
    """
    p = poly_trim(p)
    if poly_degree(p) <= 0:
        return []
    g = poly_gcd(p, poly_deriv(p))
    if poly_degree(g) > 0:
        p = poly_divmod(p, g)[0]
    seq = sturm_sequence(p)
    B = root_bound(p)
    lo, hi = -B, B
    # endpoints of the initial interval are not roots (strict Cauchy bound)
    total = _sign_variations(seq, lo) - _sign_variations(seq, hi)
    out: list[tuple[Fraction, Fraction]] = []

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        while poly_eval(p, mid) == 0:
            mid = (a + mid) / 2
        left = _sign_variations(seq, a) - _sign_variations(seq, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(lo, hi, total)
    return sorted(out)


def refine_root(p, lo: Fraction, hi: Fraction, width: Rat) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of p until hi - lo <= width."""
    width = Fraction(width)
    flo = poly_eval(p, lo)
    if flo == 0:
        return lo, lo
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = poly_eval(p, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# irreducibility over Q for degree <= 4

def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: Sequence[int]) -> list[Fraction]:
    """All rational roots of an integer polynomial."""
    _, prim = poly_content_primitive(p)
    if not prim:
        return []
    roots = set()
    if prim[0] == 0:
        roots.add(Fraction(0))
        while prim and prim[0] == 0:
            prim = prim[1:]
        if len(prim) <= 1:
            return sorted(roots)
    for num in _divisors(prim[0]):
        for den in _divisors(prim[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if poly_eval(prim, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _quartic_quadratic_factors(p: tuple[int, ...]):
    """Integer quadratics (f, g) with f*g = p, or None (p primitive, degree 4)."""
    a4, a3, a2, a1, a0 = p[4], p[3], p[2], p[1], p[0]

    def check(b2, b1, b0, c2, c1, c0):
        f = (b0, b1, b2)
        g = (c0, c1, c2)
        prod = poly_mul(f, g)
        if tuple(int(x) for x in prod) == tuple(p):
            return f, g
        return None

    for b2 in _divisors(a4):
        if a4 % b2 != 0:
            continue
        c2 = a4 // b2
        for b0 in _divisors(a0):
            for b0s in (b0, -b0):
                if b0s == 0 or a0 % b0s != 0:
                    continue
                c0 = a0 // b0s
                # unknowns b1, c1:  c2*b1 + b2*c1 = a3 ;  c0*b1 + b0s*c1 = a1
                det = c2 * b0s - b2 * c0
                if det != 0:
                    b1f = Fraction(a3 * b0s - b2 * a1, det)
                    c1f = Fraction(c2 * a1 - a3 * c0, det)
                    if b1f.denominator == 1 and c1f.denominator == 1:
                        got = check(b2, int(b1f), b0s, c2, int(c1f), c0)
                        if got:
                            return got
                else:
                    # degenerate pair: b1 satisfies c2*b1^2 - a3*b1 + (a2 - b0s*c2 - b2*c0)*b2 = 0
                    if a1 * b2 != b0s * a3:
                        continue
                    qa, qb, qc = c2, -a3, (a2 - b0s * c2 - b2 * c0) * b2
                    disc = qb * qb - 4 * qa * qc
                    if disc < 0:
                        continue
                    s = math.isqrt(disc)
                    if s * s != disc:
                        continue
                    for num in (-qb + s, -qb - s):
                        if num % (2 * qa) == 0:
                            b1 = num // (2 * qa)
                            c1f = Fraction(a3 - c2 * b1, b2)
                            if c1f.denominator == 1:
                                got = check(b2, b1, b0s, c2, int(c1f), c0)
                                if got:
                                    return got
    return None


def irreducible_degree_le4(p: Sequence[int]) -> bool:
    """Irreducibility of an integer polynomial of degree <= 4 over the rationals.

    Degree 1 is irreducible; degree 2 and 3 reduce to the rational-root test;
    degree 4 additionally requires ruling out a product of two rational
    quadratics, which by Gauss's lemma can be searched over integer
    factorizations of the leading and constant coefficients.
    """
    _, prim = poly_content_primitive(p)
    deg = len(prim) - 1
    if deg < 1:
        raise ValueError("constant or zero polynomial")
    if deg > 4:
        raise ValueError("degrees above 4 are not supported")
    if deg == 1:
        return True
    if rational_roots(prim):
        return False
    if deg <= 3:
        return True
    return _quartic_quadratic_factors(prim) is None


def factor_min_poly(p: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[int, ...]:
    """Minimal polynomial of the unique root of p in (lo, hi), degree <= 4.

    Returns the primitive integer irreducible factor of p vanishing on the
    interval's root.  p itself need not be irreducible.
    """
    _, prim = poly_content_primitive(p)
    deg = len(prim) - 1
    if deg > 4:
        raise ValueError("degrees above 4 are not supported")
    if count_real_roots(prim, lo, hi) != 1:
        raise ValueError("interval does not isolate exactly one root")
    if irreducible_degree_le4(prim):
        return prim
    work = prim
    factors: list[tuple[int, ...]] = []
    for r in rational_roots(work):
        lin = (-r.numerator, r.denominator)
        while True:
            q, rem = poly_divmod(work, lin)
            if rem:
                break
            factors.append(lin)
            _, work = poly_content_primitive(q)
            if len(work) - 1 < 1:
                break
    if len(work) - 1 >= 1:
        if len(work) - 1 == 4 and not irreducible_degree_le4(work):
            split = _quartic_quadratic_factors(work)
            assert split is not None
            factors.extend(split)
        else:
            factors.append(work)
    for f in factors:
        if count_real_roots(f, lo, hi) == 1:
            _, fprim = poly_content_primitive(f)
            return fprim
    raise ValueError("no factor vanishes on the interval")


# ---------------------------------------------------------------------------
# real algebraic numbers

class AlgebraicField:
    """Real number field Q(w) with w a designated root of an integer polynomial.

    The generator is pinned by an isolating interval (lo, hi) containing
    exactly one real root of the minimal polynomial.  The interval only ever
    shrinks (bisection keeping the sign change), so the designated root never
    changes; narrowing is an internal cache shared by all elements.
    """

    __slots__ = ("minpoly", "_lo", "_hi", "_flo_sign")

    def __init__(self, minpoly: Sequence[int], interval: tuple[Rat, Rat]):
        content, prim = poly_content_primitive(minpoly)
        if content == 0:
            raise ValueError("zero polynomial")
        deg = len(prim) - 1
        if deg < 2 or deg > 4:
            raise ValueError("field generator degree must be 2, 3 or 4")
        if not irreducible_degree_le4(prim):
            raise ValueError("minimal polynomial is reducible over Q")
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if not lo < hi:
            raise ValueError("empty isolating interval")
        flo, fhi = poly_eval(prim, lo), poly_eval(prim, hi)
        if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
            raise ValueError("interval endpoints must bracket a sign change")
        if count_real_roots(prim, lo, hi) != 1:
            raise ValueError("interval must isolate exactly one root")
        self.minpoly = prim
        self._lo, self._hi = lo, hi
        self._flo_sign = 1 if flo > 0 else -1

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def refine(self) -> None:
        """Halve the isolating interval, preserving the sign change."""
        mid = (self._lo + self._hi) / 2
        fm = poly_eval(self.minpoly, mid)
        if fm == 0:
            # cannot happen for an irreducible minpoly of degree >= 2
            raise ArithmeticError("rational root of an irreducible polynomial")
        if (1 if fm > 0 else -1) == self._flo_sign:
            self._lo = mid
        else:
            self._hi = mid

    def refine_to(self, width: Rat) -> None:
        width = Fraction(width)
        while self._hi - self._lo > width:
            self.refine()

    def generator(self) -> "AlgebraicScalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return AlgebraicScalar(self, coeffs)

    def from_rational(self, x: Rat) -> "AlgebraicScalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(x)
        return AlgebraicScalar(self, coeffs)

    def element(self, coeffs: Sequence[Rat]) -> "AlgebraicScalar":
        return AlgebraicScalar(self, coeffs)

    def __eq__(self, other):
        return (isinstance(other, AlgebraicField)
                and self.minpoly == other.minpoly
                and self._overlaps(other))

    def _overlaps(self, other: "AlgebraicField") -> bool:
        return self._lo < other._hi and other._lo < self._hi

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        lo, hi = self.interval
        return f"AlgebraicField(minpoly={list(self.minpoly)}, root in ({float(lo):.6g}, {float(hi):.6g}))"


def sqrt_field(d: int) -> AlgebraicField:
    """The field Q(sqrt(d)) for a positive non-square integer d."""
    if d <= 0 or math.isqrt(d) ** 2 == d:
        raise ValueError("d must be a positive non-square integer")
    r = math.isqrt(d)
    return AlgebraicField((-d, 0, 1), (r, r + 1))


def _interval_mul(a, b):
    products = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(products), max(products)


class AlgebraicScalar:
    """Element of an :class:`AlgebraicField`, stored as a polynomial in the generator."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: AlgebraicField, coeffs: Sequence[Rat]):
        deg = field.degree
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            c = list(self._reduce(field, c))
        c += [Fraction(0)] * (deg - len(c))
        self.field = field
        self.coeffs = tuple(c)

    @staticmethod
    def _reduce(field: AlgebraicField, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        mp = field.minpoly
        deg = len(mp) - 1
        lead = Fraction(mp[-1])
        c = list(coeffs)
        for k in range(len(c) - 1, deg - 1, -1):
            s = c[k] / lead
            if s:
                for i in range(deg):
                    c[k - deg + i] -= s * mp[i]
            c[k] = Fraction(0)
        return tuple(c[:deg])

    # -- coercion helpers ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraicScalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise TypeError("cannot mix elements of different fields")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicScalar(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicScalar(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        raw = poly_mul(self.coeffs, o.coeffs)
        return AlgebraicScalar(self.field, list(raw))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid: s*self + t*minpoly = gcd = const
        a = poly_trim(self.coeffs)
        b = poly_trim(self.field.minpoly)
        s0, s1 = (Fraction(1),), ()
        while b:
            q, r = poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, poly_add(s0, poly_neg(poly_mul(q, s1)))
        # a is the (constant) gcd since minpoly is irreducible
        if poly_degree(a) != 0:
            raise ArithmeticError("gcd with irreducible minpoly is not constant")
        inv = poly_scale(s0, 1 / a[0])
        return AlgebraicScalar(self.field, list(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- sign, comparison, conversion ----------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def _interval_value(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.field.interval
        acc = (Fraction(0), Fraction(0))
        for c in reversed(self.coeffs):
            acc = _interval_mul(acc, (lo, hi))
            acc = (acc[0] + c, acc[1] + c)
        return acc

    def sign(self) -> int:
        """Certified sign: -1, 0 or +1."""
        if self.is_zero():
            return 0
        if self.is_rational():
            c = self.coeffs[0]
            return 1 if c > 0 else -1
        for _ in range(20000):
            vlo, vhi = self._interval_value()
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.field.refine()
        raise ArithmeticError("sign determination did not converge")

    def approx(self, eps: Rat = Fraction(1, 10**17)) -> Fraction:
        """Rational approximation within eps of the true value."""
        eps = Fraction(eps)
        for _ in range(20000):
            vlo, vhi = self._interval_value()
            if vhi - vlo < eps:
                return (vlo + vhi) / 2
            self.field.refine()
        raise ArithmeticError("approximation did not converge")

    def __float__(self) -> float:
        return float(self.approx(Fraction(1, 10**17)))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError("unsupported comparison")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"AlgebraicScalar({list(self.coeffs)} ~ {float(self):.12g})"


Scalar = Union[int, Fraction, float, AlgebraicScalar]


def scalar_to_float(x: Scalar) -> float:
    if isinstance(x, AlgebraicScalar):
        return float(x)
    return float(x)


def exact_scalar(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction, AlgebraicScalar))


# ---------------------------------------------------------------------------
# integer squarefree decomposition (canonical quadratic generators)

def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    import random as _random
    rng = _random.Random(0xC0FFEE ^ n)
    while True:
        x = rng.randrange(2, n)
        y, c, d = x, rng.randrange(1, n), 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        # Miller-Rabin (deterministic for 64-bit, probabilistic above)
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def squarefree_part(n: int) -> int:
    """The squarefree d with n = d * k^2, preserving sign."""
    if n == 0:
        return 0
    sign = 1 if n > 0 else -1
    d = 1
    for p, e in _factorize(abs(n)).items():
        if e % 2 == 1:
            d *= p
    return sign * d
