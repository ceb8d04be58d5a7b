"""Exact scalars: elements of cyclotomic fields Q(zeta_n) with rational coordinates.

A value is stored as a coefficient vector over the power basis
1, z, ..., z^(phi(n)-1) of Q(zeta_n), reduced modulo the n-th cyclotomic
polynomial.  Values at different conductors compare equal through the
coherent embeddings zeta_n = zeta_m^(m/n) for n | m, so mixing gauge roots
of different orders never requires a global conductor choice.

Everything here is exact; no floating point is involved anywhere.
"""

from fractions import Fraction
from math import gcd


def lcm(a, b):
    return a // gcd(a, b) * b


def euler_phi(n):
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# -- integer/rational polynomial helpers (dense, lowest degree first) --------

def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b == 0:
                continue
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    # q must be monic
    p = list(p)
    dq = len(q) - 1
    quot = [0] * max(1, len(p) - dq)
    while len(p) - 1 >= dq and any(c != 0 for c in p):
        shift = len(p) - 1 - dq
        c = p[-1]
        quot[shift] = c
        for i in range(len(q)):
            p[shift + i] -= c * q[i]
        p = _poly_trim(p)
        if len(p) - 1 < dq:
            break
    return _poly_trim(quot), _poly_trim(p)


_CYCLO_CACHE = {1: (-1, 1)}


def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial (monic, integer)."""
    if n in _CYCLO_CACHE:
        return list(_CYCLO_CACHE[n])
    num = [0] * n + [1]
    num[0] = -1  # x^n - 1
    rem = list(num)
    for d in divisors(n):
        if d == n:
            continue
        rem, r = _poly_divmod(rem, cyclotomic_poly(d))
        if _poly_trim(r) != [0]:
            raise ArithmeticError(f"cyclotomic division had remainder at n={n}")
    _CYCLO_CACHE[n] = tuple(rem)
    return rem


_POWER_CACHE = {}


def _power_basis(n, e):
    """Representation of zeta_n^e on the power basis, as a tuple of ints."""
    e %= n
    key = (n, e)
    if key in _POWER_CACHE:
        return _POWER_CACHE[key]
    phi = euler_phi(n)
    if e < phi:
        vec = tuple(1 if i == e else 0 for i in range(phi))
    else:
        _, rem = _poly_divmod([0] * e + [1], cyclotomic_poly(n))
        rem = list(rem) + [0] * (phi - len(rem))
        vec = tuple(rem[:phi])
    _POWER_CACHE[key] = vec
    return vec


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Cyclotomic:
    """An element of Q(zeta_n), n the conductor, in reduced power-basis form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        phi = euler_phi(n)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coordinates at conductor {n}, got {len(coeffs)}")
        if n > 1 and all(c == 0 for c in coeffs[1:]):
            # the value is rational; store it at conductor 1
            n, coeffs = 1, coeffs[:1]
        self.n = n
        self.coeffs = coeffs

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(r):
        return Cyclotomic(1, (Fraction(r),))

    @staticmethod
    def zeta(n, k=1):
        """The root of unity e^(2 pi i k / n), exactly."""
        if n < 1:
            raise ValueError("conductor must be positive")
        k %= n
        g = gcd(k, n)
        n, k = n // g, k // g
        if n == 1:
            return Cyclotomic.from_rational(1)
        base = _power_basis(n, k)
        return Cyclotomic(n, tuple(Fraction(c) for c in base))

    # -- conductor plumbing ---------------------------------------------------

    def _lift_coeffs(self, m):
        """Coordinate vector of the value in Q(zeta_m); requires n | m.

        Returns a raw list (not auto-reduced to a smaller conductor), so
        vectors at a common conductor stay aligned for arithmetic.
        """
        if m == self.n:
            return list(self.coeffs)
        if m % self.n != 0:
            raise ValueError(f"cannot lift conductor {self.n} into {m}")
        step = m // self.n
        phi = euler_phi(m)
        out = [_ZERO] * phi
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for i, b in enumerate(_power_basis(m, j * step)):
                if b:
                    out[i] += c * b
        return out

    def lift(self, m):
        return Cyclotomic(m, tuple(self._lift_coeffs(m)))

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        m = lcm(self.n, other.n)
        return self._lift_coeffs(m), other._lift_coeffs(m), m

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        a, b, m = self._pair(other)
        return Cyclotomic(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return Cyclotomic.from_rational(other) - self

    def __mul__(self, other):
        a, b, m = self._pair(other)
        prod = _poly_mul(a, b)
        _, rem = _poly_divmod(prod, [Fraction(c) for c in cyclotomic_poly(m)])
        phi = euler_phi(m)
        rem = list(rem) + [_ZERO] * (phi - len(rem))
        return Cyclotomic(m, tuple(rem[:phi]))

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugation, i.e. zeta_n -> zeta_n^(-1)."""
        if self.n == 1:
            return self
        phi = euler_phi(self.n)
        out = [_ZERO] * phi
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for i, b in enumerate(_power_basis(self.n, self.n - j if j else 0)):
                if b:
                    out[i] += c * b
        return Cyclotomic(self.n, tuple(out))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.n == 1:
            return Cyclotomic(1, (1 / self.coeffs[0],))
        # extended Euclid in Q[x] against the (irreducible) cyclotomic polynomial
        phi_poly = [Fraction(c) for c in cyclotomic_poly(self.n)]
        r0, r1 = phi_poly, _poly_trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_trim(r1) != [Fraction(0)] and _poly_trim(r1) != [0]:
            lead = Fraction(1) / r1[-1]
            r1n = [c * lead for c in r1]
            s1n = [c * lead for c in s1]
            q, r = _poly_divmod(r0, r1n)
            qs = _poly_mul(q, s1n)
            s = [a - b for a, b in zip(s0 + [Fraction(0)] * len(qs), qs + [Fraction(0)] * len(s0))]
            r0, s0, r1, s1 = r1n, s1n, _poly_trim(r), _poly_trim(s)
        if len(r0) != 1:
            raise ArithmeticError("gcd with cyclotomic polynomial is not constant")
        inv = [c / r0[0] for c in s0]
        phi = euler_phi(self.n)
        _, rem = _poly_divmod(inv, phi_poly)
        rem = list(rem) + [_ZERO] * (phi - len(rem))
        return Cyclotomic(self.n, tuple(rem[:phi]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        return self * other.inverse()

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.n == 1 and self.coeffs[0] == 1

    def is_rational(self):
        return self.n == 1

    def as_fraction(self):
        if self.n != 1:
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # mutable-free but deliberately unhashable: compare, don't key

    # -- rendering ------------------------------------------------------------

    def __repr__(self):
        return f"Cyclotomic({self.text()})"

    def text(self):
        if self.n == 1:
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"zeta({self.n})^{j}" if j > 1 else f"zeta({self.n})")
            else:
                mono = f"zeta({self.n})^{j}" if j > 1 else f"zeta({self.n})"
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        if self.n == 1:
            return str(self.coeffs[0])
        return {"conductor": self.n, "coeffs": [str(c) for c in self.coeffs]}


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)
MINUS_ONE = Cyclotomic.from_rational(-1)
I = Cyclotomic.zeta(4)


class RootOfUnity:
    """A root of unity e^(2 pi i t), t in Q/Z, under multiplication.

    This is the value carrier for window functions, coboundaries and
    characters: the group law is addition of fractions mod 1, which keeps
    character tables hashable and cheap.  Convert with to_scalar() when a
    value enters the convolution algebra.
    """

    __slots__ = ("t",)

    def __init__(self, t):
        t = Fraction(t)
        self.t = t - (t.numerator // t.denominator)  # reduce into [0, 1)

    @staticmethod
    def one():
        return RootOfUnity(0)

    @staticmethod
    def minus_one():
        return RootOfUnity(Fraction(1, 2))

    @staticmethod
    def of_order(n, k=1):
        return RootOfUnity(Fraction(k, n))

    def __mul__(self, other):
        return RootOfUnity(self.t + other.t)

    def inverse(self):
        return RootOfUnity(-self.t)

    def conjugate(self):
        return self.inverse()

    def __pow__(self, k):
        return RootOfUnity(self.t * k)

    def is_one(self):
        return self.t == 0

    def to_scalar(self):
        return Cyclotomic.zeta(self.t.denominator, self.t.numerator)

    def __eq__(self, other):
        return isinstance(other, RootOfUnity) and self.t == other.t

    def __hash__(self):
        return hash(("rootofunity", self.t))

    def __repr__(self):
        return f"RootOfUnity({self.t})"

    def text(self):
        if self.t == 0:
            return "1"
        if self.t == Fraction(1, 2):
            return "-1"
        return f"zeta({self.t.denominator})^{self.t.numerator}"
