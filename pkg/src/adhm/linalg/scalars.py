"""Exact scalar fields: rationals (``fractions.Fraction``), prime fields and Q(t).

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
and univariate rational functions are small immutable classes that mix freely
with Python ints (and, for :class:`RatFunc`, with Fractions).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class Fp:
    """Element of the prime field F_p (p odd)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return Fp(1, self.p) / Fp(pow(self.v, -n, self.p), self.p)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class GF:
    """Factory for elements of F_p: ``F = GF(5); F(3)``."""

    def __init__(self, p: int):
        if p == 2 or not is_probable_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p

    def __call__(self, v) -> Fp:
        if isinstance(v, Fraction):
            return Fp(v.numerator, self.p) / v.denominator
        return Fp(int(v), self.p)

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q: tuples of Fractions, low degree first,
# no trailing zeros (the zero polynomial is the empty tuple)


def ptrim(a) -> tuple:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def padd(a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return ptrim(out)


def pneg(a) -> tuple:
    return tuple(-c for c in a)


def psub(a, b) -> tuple:
    return padd(a, pneg(b))


def pmul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pscale(a, c) -> tuple:
    return ptrim(x * c for x in a)


def pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return (), ptrim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        q[k] = c
        if c:
            for m, y in enumerate(b):
                a[k + m] = a[k + m] - c * y
    return ptrim(q), ptrim(a[:db])


def pexactdiv(a, b) -> tuple:
    q, r = pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def pmonic(a) -> tuple:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return tuple(a)
    return tuple(c / lead for c in a)


def pgcd(a, b) -> tuple:
    """Monic gcd (the zero polynomial if both are zero)."""
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _q(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RatFunc:
    """Element of Q(t): reduced num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,), _reduced=False):
        num = ptrim(_q(c) for c in num)
        den = ptrim(_q(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = (Fraction(1),)
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num = pexactdiv(num, g)
                    den = pexactdiv(den, g)
                lead = den[-1]
                if lead != 1:
                    num = tuple(c / lead for c in num)
                    den = tuple(c / lead for c in den)
        self.num = num
        self.den = den

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((0, 1), (1,), _reduced=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = _q(c)
        return cls((c,) if c else (), (Fraction(1),), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return NotImplemented

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc(padd(self.num, o.num), (Fraction(1),), _reduced=True)
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num), self.den)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc()
            return RatFunc(pscale(self.num, other), self.den, _reduced=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc()
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc(pmul(self.num, o.num), (Fraction(1),), _reduced=True)
        return RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(1) / (self ** (-n))
        out = RatFunc.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def has_pole_at(self, x=0) -> bool:
        return peval(self.den, _q(x)) == 0

    def __call__(self, x):
        d = peval(self.den, _q(x))
        if d == 0:
            raise ZeroDivisionError(f"pole at t={x}")
        return peval(self.num, _q(x)) / d

    def __repr__(self):
        return f"RatFunc({[str(c) for c in self.num]}, {[str(c) for c in self.den]})"

    def __str__(self):
        n = _pstr(self.num)
        if self.is_polynomial():
            return n
        return f"({n})/({_pstr(self.den)})"


def _pstr(a) -> str:
    if not a:
        return "0"
    terms = []
    for k, c in enumerate(a):
        if not c:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if mon and c == 1:
            terms.append(mon)
        elif mon and c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}{'*' + mon if mon else ''}")
    return " + ".join(terms).replace("+ -", "- ")


def scalar_to_str(x) -> str:
    if isinstance(x, Fp):
        return str(x.v)
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    raise TypeError(f"no string form for {type(x).__name__}")
