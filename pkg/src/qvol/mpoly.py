"""Sparse multivariate Laurent polynomials with coefficients in Q(q).

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name, with no
zero exponents; the empty tuple is the constant monomial.  Variables are
plain strings such as ``"x1"`` or ``"w1_2_3"``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .qalg import ONE, ZERO, QPoly, QRat

Monomial = tuple  # tuple[tuple[str, int], ...]


def natural_key(name: str):
    """Sort key that orders ``x2`` before ``x10``."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.findall(r"\d+|\D+", name))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def _as_qrat(c) -> QRat:
    return c if isinstance(c, QRat) else QRat(c)


class MLaurent:
    """Element of Q(q)[x_1^{±1}, ..., x_k^{±1}] stored as ``{monomial: QRat}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                c = _as_qrat(c)
                if not c.is_zero():
                    t[tuple(sorted((v, e) for v, e in m if e))] = c
        self.terms: dict[Monomial, QRat] = t

    @classmethod
    def _raw(cls, terms: dict) -> "MLaurent":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "MLaurent":
        c = _as_qrat(c)
        return cls._raw({(): c} if not c.is_zero() else {})

    @classmethod
    def var(cls, name: str, exp: int = 1, coeff=ONE) -> "MLaurent":
        coeff = _as_qrat(coeff)
        if coeff.is_zero():
            return cls._raw({})
        return cls._raw({((name, exp),) if exp else (): coeff})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=ONE) -> "MLaurent":
        return cls({tuple(exps.items()): coeff})

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> QRat:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> list[str]:
        names = {v for m in self.terms for v, _ in m}
        return sorted(names, key=natural_key)

    def degree_in(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of ``name`` over all terms."""
        exps = [dict(m).get(name, 0) for m in self.terms]
        return (min(exps), max(exps)) if exps else (0, 0)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self.terms for _, e in m)

    def by_power(self, name: str) -> dict[int, "MLaurent"]:
        """Split as sum_e name^e * coeff_e with coeff_e free of ``name``."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, k in m:
                if v == name:
                    e = k
                else:
                    rest.append((v, k))
            bucket = out.setdefault(e, {})
            rest = tuple(rest)
            bucket[rest] = c
        return {e: MLaurent._raw(t) for e, t in out.items()}

    # -- arithmetic ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MLaurent):
            return self.terms == other.terms
        if isinstance(other, (int, QRat, QPoly)):
            return self == MLaurent.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return MLaurent._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del t[m]
                else:
                    t[m] = s
        return MLaurent._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, QRat, QPoly)):
            c = _as_qrat(other)
            if c.is_zero():
                return MLaurent._raw({})
            if c.is_one():
                return self
            return MLaurent._raw({m: v * c for m, v in self.terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) < len(self.terms):
            a, b = other, self
        else:
            a, b = self, other
        t: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = t.get(m)
                t[m] = c if s is None else s + c
        return MLaurent._raw({m: c for m, c in t.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (m, c), = self.terms.items()
            return MLaurent._raw({_mono_pow(m, k): c ** k})
        if self.is_monomial():
            (m, c), = self.terms.items()
            return MLaurent._raw({_mono_pow(m, k): c ** k})
        out = MLaurent.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, QRat, QPoly)):
            return self * _as_qrat(other).inverse()
        other = _coerce(other)
        if other.is_monomial():
            return self * other ** -1
        return self.exquo(other)

    def exquo(self, other: "MLaurent") -> "MLaurent":
        """Exact division of polynomials (lex order on sorted variable names)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        order = sorted(set(self.variables()) | set(other.variables()), key=natural_key)

        def key(m):
            d = dict(m)
            return tuple(d.get(v, 0) for v in order)

        lead_m = max(other.terms, key=key)
        lead_c = other.terms[lead_m]
        inv_lead = _mono_pow(lead_m, -1)
        rem = self
        quo: dict = {}
        guard = 0
        while not rem.is_zero():
            m = max(rem.terms, key=key)
            qm = _mono_mul(m, inv_lead)
            if any(e < 0 for _, e in qm) and self.is_polynomial() and other.is_polynomial():
                raise ArithmeticError("multivariate division is not exact")
            qc = rem.terms[m] / lead_c
            quo[qm] = quo.get(qm, ZERO) + qc
            rem = rem - MLaurent._raw({qm: qc}) * other
            guard += 1
            if guard > 10 ** 6:
                raise ArithmeticError("multivariate division did not terminate")
        return MLaurent._raw({m: c for m, c in quo.items() if not c.is_zero()})

    # -- substitution ---------------------------------------------------------
    def subs(self, mapping: Mapping[str, "MLaurent"]) -> "MLaurent":
        """Simultaneously replace variables by Laurent polynomials.

        Variables raised to negative powers must map to monomials.
        """
        if not mapping:
            return self
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            r = cache.get(key)
            if r is None:
                r = cache[key] = mapping[v] ** e
            return r

        out = MLaurent._raw({})
        acc: dict = {}
        for m, c in self.terms.items():
            kept = []
            factor = None
            for v, e in m:
                if v in mapping:
                    p = power(v, e)
                    factor = p if factor is None else factor * p
                else:
                    kept.append((v, e))
            if factor is None:
                s = acc.get(m)
                acc[m] = c if s is None else s + c
                continue
            if factor.is_zero():
                continue
            kept = tuple(kept)
            for fm, fc in factor.terms.items():
                mm = _mono_mul(kept, fm)
                v = c * fc
                s = acc.get(mm)
                acc[mm] = v if s is None else s + v
        out = MLaurent._raw({m: c for m, c in acc.items() if not c.is_zero()})
        return out

    def substitute_qpowers(self, assignment: Mapping[str, int]) -> QRat:
        """Evaluate at x_v = q^{assignment[v]} for every variable."""
        pos: dict[int, QRat] = {}
        for m, c in self.terms.items():
            k = 0
            for v, e in m:
                try:
                    k += e * assignment[v]
                except KeyError:
                    raise KeyError(f"variable {v} is not assigned") from None
            pos[k] = pos[k] + c if k in pos else c
        return _sum_qshifted(pos)

    # -- rendering -------------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lex order (highest total degree first)."""
        names = self.variables()

        def key(item):
            m = dict(item[0])
            vec = tuple(m.get(v, 0) for v in names)
            return (-sum(vec), tuple(-x for x in vec))

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in sorted(m, key=lambda t: natural_key(t[0])))
            if not mono:
                parts.append(_coef_text(c))
            elif c.is_one():
                parts.append(mono)
            elif (-c).is_one():
                parts.append("-" + mono)
            else:
                parts.append(f"{_coef_text(c)}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MLaurent({str(self)!r})"


def _coef_text(c: QRat) -> str:
    if c.den.is_one() and c.num.degree <= 0:
        return str(c.num)
    return f"({c})"


def _coerce(x):
    if isinstance(x, MLaurent):
        return x
    if isinstance(x, (int, QRat, QPoly)):
        return MLaurent.const(x)
    return NotImplemented


def _sum_qshifted(pos: Mapping[int, QRat]) -> QRat:
    """Sum of c_k q^k over a dict k -> c_k with possibly negative k."""
    if not pos:
        return ZERO
    if all(c.den.is_one() for c in pos.values()):
        lo = min(pos)
        base = min(lo, 0)
        acc = QPoly()
        for k, c in pos.items():
            acc = acc + c.num.shift(k - base)
        return QRat(acc, QPoly.monomial(-base)) if base else QRat(acc)
    total = ZERO
    for k, c in pos.items():
        total = total + c * QRat.qpow(k)
    return total


def X(name: str) -> MLaurent:
    return MLaurent.var(name)


def xs(prefix: str, n: int, start: int = 1) -> list[str]:
    return [f"{prefix}{i}" for i in range(start, start + n)]


# -- partitions ---------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Integer partition; trailing zeros are dropped on construction."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"not a partition: {p}")
        while p and p[-1] == 0:
            p = p[:-1]
        object.__setattr__(self, "parts", p)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def delta(cls, n: int) -> "Partition":
        """delta_n = (n-1, n-2, ..., 1, 0)."""
        return cls(tuple(range(n - 1, -1, -1)))

    def __len__(self):
        return len(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part lookup, zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ValueError(f"partition {self.parts} has more than {n} parts")
        return self.parts + (0,) * (n - len(self.parts))

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def b(self) -> int:
        return sum(i * p for i, p in enumerate(self.parts))

    def add(self, other: "Partition | Sequence[int]", n: int | None = None) -> "Partition":
        o = other.parts if isinstance(other, Partition) else tuple(other)
        n = max(len(self.parts), len(o)) if n is None else n
        a = self.padded(n)
        b = tuple(o) + (0,) * (n - len(o))
        return Partition(tuple(x + y for x, y in zip(a, b)))

    def __add__(self, other):
        return self.add(other)

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(self[i] >= other[i] for i in range(1, len(other) + 1))

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self.parts, 1) for j in range(1, p + 1)]

    def hook(self, i: int, j: int) -> int:
        return self[i] - j + self.transpose()[j] - i + 1

    def durfee(self) -> int:
        return sum(1 for i, p in enumerate(self.parts, 1) if p >= i)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(size: int, max_len: int | None = None, max_part: int | None = None):
    """All partitions of ``size`` with the given bounds, in reverse lex order."""
    max_len = size if max_len is None else max_len
    max_part = size if max_part is None else max_part

    def rec(rem, cap, slots):
        if rem == 0:
            yield ()
            return
        if slots == 0:
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in rec(rem - p, p, slots - 1):
                yield (p,) + rest

    for t in rec(size, max_part, max_len):
        yield Partition(t)


def partitions_upto(max_size: int, max_len: int | None = None, max_part: int | None = None):
    for k in range(max_size + 1):
        yield from partitions(k, max_len, max_part)


# -- symmetric-function building blocks ------------------------------------------

def vandermonde_bar(names: Sequence[str]) -> MLaurent:
    """prod_{i<j} (x_j - x_i)."""
    out = MLaurent.const(1)
    for j in range(len(names)):
        for i in range(j):
            out = out * (X(names[j]) - X(names[i]))
    return out


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def alternant_exps(exps: Sequence[int], names: Sequence[str]) -> MLaurent:
    """det(x_j^{exps_i}) expanded as a signed sum over permutations."""
    n = len(names)
    if len(exps) != n:
        raise ValueError("need one exponent per variable")
    terms = {}
    for p in permutations(range(n)):
        m = tuple(sorted((names[p[i]], exps[i]) for i in range(n) if exps[i]))
        terms[m] = terms.get(m, 0) + _perm_sign(p)
    return MLaurent({m: c for m, c in terms.items() if c})


def alternant(lam: Partition, names: Sequence[str]) -> MLaurent:
    """a_lambda = det(x_j^{lambda_i + n - i})."""
    n = len(names)
    lp = lam.padded(n)
    return alternant_exps([lp[i] + n - 1 - i for i in range(n)], names)


@lru_cache(maxsize=None)
def _schur_cached(parts: tuple[int, ...], names: tuple[str, ...]) -> MLaurent:
    n = len(names)
    if n == 0:
        if parts:
            raise ValueError("nonempty partition in zero variables")
        return MLaurent.const(1)
    lam = Partition(parts)
    num = alternant(lam, names)
    den = alternant(Partition(), names)
    return num.exquo(den)


def schur(lam: Partition, names: Sequence[str]) -> MLaurent:
    """Schur polynomial s_lambda as the quotient of alternants."""
    if len(lam) > len(names):
        return MLaurent.const(0)
    return _schur_cached(lam.parts, tuple(names))


def pochhammer_factor(c: QRat, i: str, j: str | None, k: int) -> MLaurent:
    """(c x_i / x_j; q)_k as a Laurent polynomial (j=None drops the x_j)."""
    if k < 0:
        raise ValueError("pochhammer length must be >= 0")
    c = _as_qrat(c)
    base = MLaurent.var(i, 1, c)
    if j is not None:
        base = base * MLaurent.var(j, -1)
    out = MLaurent.const(1)
    for t in range(k):
        out = out * (1 - base * QRat.qpow(t))
    return out


def pochhammer(expr: MLaurent, k: int) -> MLaurent:
    """(expr; q)_k for an arbitrary Laurent polynomial ``expr``."""
    out = MLaurent.const(1)
    for t in range(k):
        out = out * (1 - expr * QRat.qpow(t))
    return out


def substitute_qpowers(f: MLaurent, assignment: Mapping[str, int]) -> QRat:
    return f.substitute_qpowers(assignment)


def q_point(names: Sequence[str], exps: Iterable[int]) -> dict[str, int]:
    return dict(zip(names, exps))


def symmetric_swap(f: MLaurent, a: str, b: str) -> MLaurent:
    return f.subs({a: X(b), b: X(a)})
