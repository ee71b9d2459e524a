"""Exact arithmetic in Z[q] and its fraction field, plus truncated q-series.

Everything downstream is built on three immutable value types:

* :class:`QPoly` -- dense integer polynomial in ``q``;
* :class:`QRat` -- reduced quotient of two ``QPoly`` values;
* :class:`QSeries` -- power series in ``q`` truncated at a fixed degree.

No floating point is used anywhere.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from typing import Iterable, Sequence, Union


class ExpansionError(ArithmeticError):
    """A rational function cannot be expanded as a power series at q = 0."""


class DomainError(ValueError):
    """An argument lies outside the integer domain an operation supports."""


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPoly:
    """Polynomial in ``q`` with arbitrary-precision integer coefficients.

    ``coeffs[k]`` is the coefficient of ``q**k``; the tuple never ends in 0.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _strip(tuple(int(c) for c in coeffs))

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPoly":
        if k < 0:
            raise DomainError("QPoly cannot hold negative powers of q")
        return cls._raw((0,) * k + (c,)) if c else ZERO_POLY

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls._raw((c,)) if c else ZERO_POLY

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def valuation(self) -> int:
        """Exponent of the lowest nonzero term (raises on zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of zero polynomial")

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def max_norm(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    # -- ring operations -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO_POLY
            return QPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        return QPoly._raw(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result, base = ONE_POLY, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q**k``; negative k drops that many low zero terms."""
        if not self.coeffs or k == 0:
            return self
        if k < 0:
            if any(self.coeffs[:-k]):
                raise ArithmeticError("shift would leave a negative power of q")
            return QPoly._raw(self.coeffs[-k:])
        return QPoly._raw((0,) * k + self.coeffs)

    def exquo(self, other: "QPoly") -> "QPoly":
        """Exact quotient over Z; raises ArithmeticError if not exact."""
        q, r = _divmod_exact(self.coeffs, other.coeffs)
        if r is None or r:
            raise ArithmeticError("polynomial division is not exact")
        return QPoly._raw(q)

    def divides(self, other: "QPoly") -> bool:
        q, r = _divmod_exact(other.coeffs, self.coeffs)
        return r is not None and not r

    def primitive(self) -> "QPoly":
        c = self.content()
        if c in (0, 1):
            return self
        if self.lead < 0:
            c = -c
        return QPoly._raw(tuple(x // c for x in self.coeffs))

    def at_one(self) -> int:
        return sum(self.coeffs)

    # -- rendering -----------------------------------------------------
    def __str__(self):
        return _render_terms(((k, Fraction(c)) for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"QPoly({list(self.coeffs)!r})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "QPoly":
        return cls(int(c) for c in data)


ZERO_POLY = QPoly._raw(())
ONE_POLY = QPoly._raw((1,))
Q_POLY = QPoly._raw((0, 1))

_KRONECKER_MIN = 48


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        return _mul_kronecker(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _pack(coeffs: Sequence[int], bits: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << bits) + c
    return acc


def _unpack(value: int, bits: int, length: int) -> list[int]:
    """Balanced base-2**bits digits of ``value`` (inverse of :func:`_pack`)."""
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(length):
        d = value & mask
        value >>= bits
        if d >= half:
            d -= 1 << bits
            value += 1
        out.append(d)
    return out


def _mul_kronecker(a, b):
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    prod = _pack(a, bits) * _pack(b, bits)
    return _strip(_unpack(prod, bits, len(a) + len(b) - 1))


def _divmod_exact(a: tuple[int, ...], b: tuple[int, ...]):
    """Long division over Z. Returns (quotient, remainder) or (None, None)
    when a quotient coefficient is not integral."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        t, r = divmod(c, lb)
        if r:
            return None, None
        quo[k - db] = t
        for j in range(db + 1):
            rem[k - db + j] -= t * b[j]
    return _strip(quo), _strip(rem[:db])


# -- gcd ----------------------------------------------------------------

def _poly_from_int(value: int, xi: int) -> tuple[int, ...]:
    """Recover the polynomial with coefficients in (-xi/2, xi/2] whose value
    at ``xi`` is ``value``."""
    out = []
    while value:
        d = value % xi
        if d > xi // 2:
            d -= xi
        out.append(d)
        value = (value - d) // xi
    return tuple(out)


def _prs_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Primitive polynomial remainder sequence; slow but always correct."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        # pseudo-remainder of a by b
        r = list(a.coeffs)
        lb = b.lead
        db = b.degree
        while len(r) - 1 >= db and any(r):
            k = len(r) - 1
            c = r[k]
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[k - db + j] -= c * b.coeffs[j]
            r = list(_strip(r))
        a, b = b, QPoly(r).primitive()
    return a.primitive()


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Greatest common divisor in Z[q], normalised with positive lead.

    Uses the heuristic evaluation gcd, falling back to a primitive
    remainder sequence if the heuristic does not certify a result.
    """
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    else:
        g = _gcd_nonzero(a, b)
    return -g if g.lead < 0 else g


def _gcd_nonzero(a: QPoly, b: QPoly) -> QPoly:
    ca, cb = a.content(), b.content()
    c = gcd(ca, cb)
    if a.degree == 0 or b.degree == 0:
        return QPoly.const(c)
    # strip common powers of q first; cheap and common in this domain
    va, vb = a.valuation(), b.valuation()
    v = min(va, vb)
    pa = QPoly._raw(tuple(x // ca for x in a.coeffs[va:]))
    pb = QPoly._raw(tuple(x // cb for x in b.coeffs[vb:]))
    if pa.degree == 0 or pb.degree == 0:
        return QPoly.const(c).shift(v)
    if pa == pb or pa == -pb:
        return (pa.primitive() * c).shift(v)
    bound = 2 * min(pa.max_norm(), pb.max_norm()) + 29
    xi = max(min(bound, 99 * isqrt(bound)),
             2 * min(pa.max_norm() // abs(pa.lead), pb.max_norm() // abs(pb.lead)) + 2)
    for _ in range(6):
        fa, fb = pa(xi), pb(xi)
        if fa and fb:
            h = gcd(fa, fb)
            cand = QPoly._raw(_poly_from_int(h, xi)).primitive()
            if cand.degree >= 0 and cand.divides(pa) and cand.divides(pb):
                return (cand * c).shift(v)
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011
    return (_prs_gcd(pa, pb) * c).shift(v)


# -- rational functions -------------------------------------------------

Scalar = Union[int, QPoly, "QRat", Fraction]


class QRat:
    """Element of Q(q) in canonical form ``num/den``.

    Canonical means gcd(num, den) = 1 in Z[q] and ``den`` has a positive
    leading coefficient, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar = 0, den: Scalar = 1):
        n, d = _as_frac(num)
        n2, d2 = _as_frac(den)
        n, d = n * d2, d * n2
        if d.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        self.num, self.den = _reduce(n, d)

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> "QRat":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def qpow(cls, k: int) -> "QRat":
        """The monomial ``q**k`` for any integer k."""
        if k >= 0:
            return cls._raw(QPoly.monomial(k), ONE_POLY)
        return cls._raw(ONE_POLY, QPoly.monomial(-k))

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, QRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, QPoly, Fraction)):
            return self == QRat(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field operations ------------------------------------------------
    def __neg__(self):
        return QRat._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return QRat._raw(self.num + other.num, ONE_POLY)
            return QRat(self.num + other.num, self.den)
        if other.den.is_one():
            return QRat._raw(self.num + other.num * self.den, self.den)
        if self.den.is_one():
            return QRat._raw(self.num * other.den + other.num, other.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            return QRat._from_unreduced(self.num * other.den + other.num * self.den,
                                        self.den * other.den, coprime_dens=True)
        da, db = self.den.exquo(g), other.den.exquo(g)
        return QRat(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QRat._raw(self.num * other.num, ONE_POLY)
        k = other._qpower()
        if k is not None:
            return self._shift(k, other.num.lead)
        k = self._qpower()
        if k is not None:
            return other._shift(k, self.num.lead)
        # cross-cancel before multiplying to keep sizes small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.exquo(g1)
        d2 = other.den if g1.is_one() else other.den.exquo(g1)
        n2 = other.num if g2.is_one() else other.num.exquo(g2)
        d1 = self.den if g2.is_one() else self.den.exquo(g2)
        num, den = n1 * n2, d1 * d2
        if den.lead < 0:
            num, den = -num, -den
        return QRat._raw(num, den)

    __rmul__ = __mul__

    def _qpower(self) -> int | None:
        """k when self is c*q^k for an integer c, else None."""
        n, d = self.num.coeffs, self.den.coeffs
        if any(n[:-1]) or any(d[:-1]) or d[-1] != 1:
            return None
        if len(d) > 1 and abs(n[-1]) != 1:
            return None
        return len(n) - len(d)

    def _shift(self, k: int, c: int) -> "QRat":
        """self * c * q^k without a gcd: only powers of q can cancel."""
        num, den = self.num, self.den
        if c != 1:
            if den.is_one() or abs(c) == 1:
                num = num * c
            else:
                r = self._shift(k, 1)
                return QRat(r.num * c, r.den)
        if k > 0:
            v = min(k, den.valuation())
            if v:
                den = den.shift(-v)
            num = num.shift(k - v)
        elif k < 0:
            v = min(-k, num.valuation())
            if v:
                num = num.shift(-v)
            den = den.shift(-k - v)
        if den.lead < 0:
            num, den = -num, -den
        return QRat._raw(num, den)

    def inverse(self) -> "QRat":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.lead < 0:
            num, den = -num, -den
        return QRat._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QRat._raw(self.num ** e, self.den ** e)

    @classmethod
    def _from_unreduced(cls, num: QPoly, den: QPoly, coprime_dens: bool = False):
        # With coprime denominators only the numerator can share factors
        # with the product; the general reduction handles that.
        return cls(num, den)

    # -- evaluation / conversion ----------------------------------------
    def at_one(self) -> Fraction:
        """Exact value at q = 1; raises if the reduced denominator vanishes."""
        d = self.den.at_one()
        if d == 0:
            raise ZeroDivisionError("rational function has a pole at q = 1")
        return Fraction(self.num.at_one(), d)

    def evaluate(self, x) -> Fraction:
        return Fraction(self.num(Fraction(x))) / Fraction(self.den(Fraction(x)))

    def series(self, order: int) -> "QSeries":
        return expand_series(self, order)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"QRat({self.num.coeffs!r}, {self.den.coeffs!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "QRat":
        return cls(QPoly.from_json(data["num"]), QPoly.from_json(data["den"]))


def _as_frac(x) -> tuple[QPoly, QPoly]:
    if isinstance(x, QRat):
        return x.num, x.den
    if isinstance(x, QPoly):
        return x, ONE_POLY
    if isinstance(x, int):
        return QPoly.const(x), ONE_POLY
    if isinstance(x, Fraction):
        return QPoly.const(x.numerator), QPoly.const(x.denominator)
    raise TypeError(f"cannot interpret {type(x).__name__} as an element of Q(q)")


def _coerce(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, QPoly, Fraction)):
        return QRat(x)
    return NotImplemented


def _reduce(n: QPoly, d: QPoly) -> tuple[QPoly, QPoly]:
    if n.is_zero():
        return ZERO_POLY, ONE_POLY
    if not d.is_one():
        g = poly_gcd(n, d)
        if not g.is_one():
            n, d = n.exquo(g), d.exquo(g)
    if d.lead < 0:
        n, d = -n, -d
    return n, d


ZERO = QRat._raw(ZERO_POLY, ONE_POLY)
ONE = QRat._raw(ONE_POLY, ONE_POLY)
Q = QRat._raw(Q_POLY, ONE_POLY)


# -- q-combinatorial primitives -------------------------------------------

@lru_cache(maxsize=None)
def q_number(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise DomainError("q_number expects n >= 0")
    return QPoly._raw((1,) * n)


def q_int(n: int) -> QRat:
    """[n]_q = (1 - q^n)/(1 - q) for any integer n, as a QRat."""
    if n >= 0:
        return QRat._raw(q_number(n), ONE_POLY)
    return -QRat.qpow(n) * QRat._raw(q_number(-n), ONE_POLY)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise DomainError("q_factorial expects n >= 0")
    if n <= 1:
        return ONE_POLY
    return q_factorial(n - 1) * q_number(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial coefficient; 0 outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return ZERO_POLY
    if k == 0 or k == n:
        return ONE_POLY
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


@lru_cache(maxsize=None)
def qq_poch(n: int) -> QPoly:
    """(q;q)_n as a polynomial."""
    if n < 0:
        raise DomainError("(q;q)_n expects n >= 0")
    out = ONE_POLY
    for i in range(1, n + 1):
        out = out * (ONE_POLY - QPoly.monomial(i))
    return out


def q_pochhammer_scalar(a: Scalar, n: int) -> QRat:
    """(a;q)_n = prod_{i<n} (1 - a q^i)."""
    if n < 0:
        raise DomainError("q_pochhammer_scalar expects n >= 0")
    a = _coerce(a)
    out = ONE
    for i in range(n):
        out = out * (ONE - a * QRat.qpow(i))
        if out.is_zero():
            return ZERO
    return out


def q_gamma_int(k: int) -> QRat:
    """Gamma_q(k) = (q;q)_{k-1}/(1-q)^{k-1} = [k-1]_q! for integers k >= 1."""
    if k < 1:
        raise DomainError(f"Gamma_q is only supported at positive integers, got {k}")
    return QRat._raw(q_factorial(k - 1), ONE_POLY)


# -- truncated series -----------------------------------------------------

class QSeries:
    """Power series sum_{k<=order} c_k q^k with rational coefficients.

    Arithmetic between series truncates at the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_counts(cls, counts: dict[int, int], order: int) -> "QSeries":
        """Series from an exponent -> multiplicity map (entries past order dropped)."""
        cs = [0] * (order + 1)
        for k, c in counts.items():
            if k < 0:
                raise ExpansionError("negative exponent in a power series")
            if k <= order:
                cs[k] += c
        return cls(cs, order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def _align(self, other):
        if isinstance(other, QSeries):
            return min(self.order, other.order), other
        if isinstance(other, (QRat, QPoly, int, Fraction)):
            return self.order, expand_series(_coerce(other), self.order)
        raise TypeError(f"cannot combine QSeries with {type(other).__name__}")

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs[: order + 1], min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __add__(self, other):
        n, other = self._align(other)
        return QSeries((a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), n)

    __radd__ = __add__

    def __neg__(self):
        return QSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        n, other = self._align(other)
        return QSeries((a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries((c * other for c in self.coeffs), self.order)
        n, other = self._align(other)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return QSeries(out, n)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        return _render_terms(enumerate(self.coeffs)) + f" + O(q^{self.order + 1})"

    def __repr__(self):
        return f"QSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def expand_series(r: Scalar, order: int) -> QSeries:
    """Maclaurin expansion of ``r`` through ``q**order``."""
    r = _coerce(r)
    if r is NotImplemented:
        raise TypeError("expand_series expects a QRat-compatible value")
    if order < 0:
        raise ValueError("series order must be >= 0")
    d0 = r.den[0]
    if d0 == 0:
        raise ExpansionError("denominator vanishes at q = 0")
    den = r.den.coeffs
    num = r.num.coeffs
    out: list[Fraction] = []
    inv = Fraction(1, d0)
    for k in range(order + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv)
    return QSeries(out, order)


# -- rendering / serialization -------------------------------------------

def _render_terms(terms) -> str:
    parts = []
    for k, c in terms:
        if not c:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def dumps(value) -> str:
    """Canonical JSON text for QPoly/QRat/QSeries values."""
    return json.dumps(value.to_json(), sort_keys=True)


def binomial_at_one_check(n: int, k: int) -> bool:
    return q_binomial(n, k).at_one() == (comb(n, k) if 0 <= k <= n else 0)
