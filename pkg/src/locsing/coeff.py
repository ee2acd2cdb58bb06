"""Exact coefficient fields: Q, F_p, Q(t) and F_p(t).

Field objects do the arithmetic; elements are stored "raw" inside
polynomials so the hot loops stay cheap:

=========  ==========================  =====================
field      raw element                 public element
=========  ==========================  =====================
Q          ``fractions.Fraction``      ``Fraction``
F_p        ``int`` in ``[0, p)``       :class:`PrimeFieldElement`
Q(t)       :class:`RationalFunction`   :class:`RationalFunction`
F_p(t)     :class:`RationalFunction`   :class:`RationalFunction`
=========  ==========================  =====================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral

from .errors import (
    BadPoint,
    BadPrime,
    DivisionByZero,
    FieldMismatch,
    InputError,
    NotPrime,
)

MAX_MODULUS = 2**61

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set is exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
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


def primes_from(start: int = 2):
    """Yield the primes >= start in increasing order."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def check_prime(p) -> int:
    if not isinstance(p, Integral) or isinstance(p, bool):
        raise NotPrime(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p >= MAX_MODULUS:
        raise NotPrime(f"modulus {p} exceeds 2^61")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


# ---------------------------------------------------------------------------
# fields


class Field:
    """Interface shared by the four coefficient fields."""

    characteristic = 0
    has_parameter = False

    zero = None
    one = None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def is_one(self, a) -> bool:
        return a == self.one

    def from_int(self, k: int):
        raise NotImplementedError

    def convert(self, x):
        raise NotImplementedError

    def element(self, raw):
        """Wrap a raw coefficient as a public element."""
        return raw

    def format(self, a) -> str:
        raise NotImplementedError

    def split_sign(self, a):
        """Return ``(negative, |a|)`` for printing."""
        return False, a

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.descriptor


@dataclass(frozen=True)
class RationalField(Field):
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def convert(self, x):
        if isinstance(x, bool):
            raise FieldMismatch("booleans are not coefficients")
        if isinstance(x, (Integral, Fraction)):
            return Fraction(x)
        if isinstance(x, RationalFunction) and x.is_constant():
            return self.convert(x.constant_value())
        raise FieldMismatch(f"cannot interpret {x!r} as a rational number")

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def format(self, a):
        return str(a)

    def split_sign(self, a):
        return (a < 0, -a) if a < 0 else (False, a)

    @property
    def descriptor(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", check_prime(self.p))

    zero = 0
    one = 1

    @property
    def characteristic(self):
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, k):
        return k % self.p

    def convert(self, x):
        if isinstance(x, bool):
            raise FieldMismatch("booleans are not coefficients")
        if isinstance(x, Integral):
            return int(x) % self.p
        if isinstance(x, Fraction):
            return reduce_mod_p(x, self.p).value
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise FieldMismatch(f"element of F_{x.p} used in F_{self.p}")
            return x.value
        if isinstance(x, RationalFunction) and x.is_constant():
            return self.convert(x.constant_value())
        raise FieldMismatch(f"cannot interpret {x!r} in F_{self.p}")

    def element(self, raw):
        return PrimeFieldElement(raw, self.p)

    def format(self, a):
        return str(a)

    @property
    def descriptor(self):
        return f"F:{self.p}"


QQ = RationalField()


@dataclass(frozen=True)
class RationalFunctionField(Field):
    """K(t) for K = Q or F_p; the parameter is always named ``t``."""

    base: Field = QQ

    has_parameter = True

    def __post_init__(self):
        if not isinstance(self.base, (RationalField, PrimeField)):
            raise InputError("rational function fields need base Q or F_p")

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def zero(self):
        return RationalFunction((), None, self.base)

    @property
    def one(self):
        return RationalFunction((self.base.one,), None, self.base)

    def gen(self):
        return RationalFunction((self.base.zero, self.base.one), None, self.base)

    def is_zero(self, a):
        return not a.num

    def is_one(self, a):
        return a.den == (self.base.one,) and a.num == (self.base.one,)

    def inv(self, a):
        return a.inverse()

    def from_int(self, k):
        return RationalFunction((self.base.from_int(k),), None, self.base)

    def convert(self, x):
        if isinstance(x, RationalFunction):
            if x.base != self.base:
                raise FieldMismatch(f"element of {x.base}(t) used in {self}")
            return x
        return RationalFunction((self.base.convert(x),), None, self.base)

    def format(self, a):
        return str(a)

    def split_sign(self, a):
        if isinstance(self.base, RationalField) and a.num and a.num[-1] < 0:
            return True, -a
        return False, a

    @property
    def descriptor(self):
        return "Qt" if isinstance(self.base, RationalField) else f"Ft:{self.base.p}"


_FIELD_RE = re.compile(r"^(Q|Qt|F:(\d+)|Ft:(\d+))$")


def parse_field(text: str) -> Field:
    """Parse the field syntax ``Q``, ``F:<p>``, ``Qt``, ``Ft:<p>``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise InputError(f"unknown field {text!r}; expected Q, F:<p>, Qt or Ft:<p>")
    tag = m.group(1)
    if tag == "Q":
        return QQ
    if tag == "Qt":
        return RationalFunctionField(QQ)
    if m.group(2) is not None:
        return PrimeField(int(m.group(2)))
    return RationalFunctionField(PrimeField(int(m.group(3))))


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, Integral) and not isinstance(other, bool):
            return int(other) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.p, self.p)

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.p}")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o, self.p) * self.inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def reduce_mod_p(q, p: int) -> PrimeFieldElement:
    """Image of a rational number in F_p.

    >>> reduce_mod_p(Fraction(3, 2), 5)
    PrimeFieldElement(value=4, p=5)
    """
    p = check_prime(p)
    q = Fraction(q)
    if q.denominator % p == 0:
        raise BadPrime(f"{p} divides the denominator of {q}")
    return PrimeFieldElement(q.numerator * pow(q.denominator, -1, p) % p, p)


def field_of(x) -> Field:
    if isinstance(x, bool):
        raise FieldMismatch("booleans are not field elements")
    if isinstance(x, (Integral, Fraction)):
        return QQ
    if isinstance(x, PrimeFieldElement):
        return PrimeField(x.p)
    if isinstance(x, RationalFunction):
        return RationalFunctionField(x.base)
    raise FieldMismatch(f"{x!r} is not a field element")


def field_arith(a, b, op: str):
    """``a <op> b`` for op in add/sub/mul/div; both operands from one field."""
    K = field_of(a)
    if field_of(b) != K:
        raise FieldMismatch(f"{field_of(a)} and {field_of(b)}")
    ra, rb = K.convert(a), K.convert(b)
    if op == "add":
        r = K.add(ra, rb)
    elif op == "sub":
        r = K.sub(ra, rb)
    elif op == "mul":
        r = K.mul(ra, rb)
    elif op == "div":
        r = K.div(ra, rb)
    else:
        raise ValueError(f"unknown operation {op!r}")
    return K.element(r)


# ---------------------------------------------------------------------------
# univariate polynomials in t, dense tuples low -> high degree


def _utrim(K, a):
    a = list(a)
    while a and K.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def _uadd(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return _utrim(K, out)


def _uneg(K, a):
    return tuple(K.neg(c) for c in a)


def _usub(K, a, b):
    return _uadd(K, a, _uneg(K, b))


def _umul(K, a, b):
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _utrim(K, out)


def _uscale(K, a, c):
    return _utrim(K, [K.mul(x, c) for x in a])


def _udivmod(K, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    inv_lc = K.inv(b[-1])
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = K.mul(r[-1], inv_lc)
        shift = len(r) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = K.sub(r[i + shift], K.mul(c, y))
        r = list(_utrim(K, r))
    return _utrim(K, q), tuple(r)


def _umonic(K, a):
    if not a:
        return a
    return _uscale(K, a, K.inv(a[-1]))


def _int_primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if g == 0:
        return ()
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _int_prem(a, b):
    """Pseudo-remainder of integer polynomials (no exact division needed)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _ugcd(K, a, b):
    """Monic gcd; over Q via the primitive pseudo-remainder sequence."""
    if not a:
        return _umonic(K, b)
    if not b:
        return _umonic(K, a)
    if isinstance(K, RationalField):
        def to_int(p):
            den = 1
            for c in p:
                den = den * c.denominator // math.gcd(den, c.denominator)
            return _int_primitive([int(c * den) for c in p])

        x, y = to_int(a), to_int(b)
        if len(x) < len(y):
            x, y = y, x
        while y:
            x, y = y, _int_primitive(_int_prem(x, y))
        lc = x[-1]
        return tuple(Fraction(c, lc) for c in x)
    x, y = a, b
    while y:
        x, y = y, _udivmod(K, x, y)[1]
    return _umonic(K, x)


def _ueval(K, a, c):
    acc = K.zero
    for coef in reversed(a):
        acc = K.add(K.mul(acc, c), coef)
    return acc


def _uformat(K, a, var="t"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if K.is_zero(c):
            continue
        neg, c = K.split_sign(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = K.format(c)
        elif K.is_one(c):
            body = mono
        else:
            body = f"{K.format(c)}*{mono}"
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class RationalFunction:
    """Element of K(t) kept as num/den with gcd 1 and monic denominator."""

    __slots__ = ("base", "num", "den")

    def __init__(self, num, den=None, base: Field = QQ, _normalized=False):
        object.__setattr__(self, "base", base)
        K = base
        num = _utrim(K, num)
        den = (K.one,) if den is None else _utrim(K, den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not _normalized and len(den) > 1 and num:
            g = _ugcd(K, num, den)
            if len(g) > 1:
                num = _udivmod(K, num, g)[0]
                den = _udivmod(K, den, g)[0]
        if not num:
            den = (K.one,)
        elif not K.is_one(den[-1]):
            inv = K.inv(den[-1])
            num, den = _uscale(K, num, inv), _uscale(K, den, inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den, self.base, True))

    @classmethod
    def t(cls, base: Field = QQ):
        return cls((base.zero, base.one), None, base)

    @classmethod
    def constant(cls, c, base: Field = QQ):
        return cls((base.convert(c),), None, base)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self):
        return len(self.den) == 1

    def constant_value(self):
        return self.num[0] if self.num else self.base.zero

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.base != self.base:
                raise FieldMismatch(f"{self.base}(t) and {other.base}(t)")
            return other
        if isinstance(other, (Integral, Fraction, PrimeFieldElement)) and not isinstance(other, bool):
            return RationalFunction((self.base.convert(other),), None, self.base)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.base
        if self.den == o.den:
            return RationalFunction(_uadd(K, self.num, o.num), self.den, K)
        num = _uadd(K, _umul(K, self.num, o.den), _umul(K, o.num, self.den))
        return RationalFunction(num, _umul(K, self.den, o.den), K)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_uneg(self.base, self.num), self.den, self.base, _normalized=True)

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
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.base
        if not self.num or not o.num:
            return RationalFunction((), None, K)
        # cross-cancel before multiplying to keep degrees small
        g1 = _ugcd(K, self.num, o.den)
        g2 = _ugcd(K, o.num, self.den)
        n1, d2 = _udivmod(K, self.num, g1)[0], _udivmod(K, o.den, g1)[0]
        n2, d1 = _udivmod(K, o.num, g2)[0], _udivmod(K, self.den, g2)[0]
        return RationalFunction(_umul(K, n1, n2), _umul(K, d1, d2), K, _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        return RationalFunction(self.den, self.num, self.base, _normalized=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction((self.base.one,), None, self.base)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.base == other.base and self.num == other.num and self.den == other.den
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash((self.base, self.num, self.den))

    def evaluate(self, c):
        """Value at t = c; raises BadPoint at a pole."""
        K = self.base
        c = K.convert(c)
        d = _ueval(K, self.den, c)
        if K.is_zero(d):
            raise BadPoint(f"t = {K.format(c)} is a pole of {self}")
        return K.div(_ueval(K, self.num, c), d)

    def __str__(self):
        K = self.base
        num = _uformat(K, self.num)
        if len(self.den) == 1:
            return num
        den = _uformat(K, self.den)
        if sum(1 for c in self.num if not K.is_zero(c)) > 1:
            num = f"({num})"
        den_terms = sum(1 for c in self.den if not K.is_zero(c))
        if den_terms > 1 or not K.is_one(self.den[-1]) or len(self.den) > 2:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"
