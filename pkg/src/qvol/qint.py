"""Jackson q-integration over chains, order polytopes and scaled domains.

Bounds are represented as :class:`MLaurent` monomials (``c * q^k * y`` or a
constant ``q^k``) or as the zero polynomial.  Integration order is always
given innermost variable first.

Two independent engines are provided:

* :func:`qint_simplex` / :func:`qint_order_polytope` integrate over chains,
  using the linear-extension decomposition for posets;
* :func:`qint_region` evaluates the iterated integral of a domain cut out by
  inequalities ``x_u <= q^c x_w`` directly from the section bounds, splitting
  the domain when the section bound is a genuine max/min.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import Iterable, Mapping, Sequence

from .mpoly import MLaurent, X
from .poset import (DEFAULT_MAX_EXTENSIONS, Poset, check_labeling, des,
                    inverse_perm, linear_extensions, maj)
from .qalg import ONE, ZERO, QPoly, QRat, q_factorial, q_int, q_pochhammer_scalar

ONE_NODE = "1"


class IntegrationError(ArithmeticError):
    pass


class NonIntegrableError(IntegrationError):
    """The integrand contains x^-1 in the integration variable."""


class PoleAtZeroError(IntegrationError):
    """0 would be raised to a nonpositive power."""


class AmbiguousBounds(IntegrationError):
    """A section bound is a max/min that cannot be resolved symbolically."""


def qp(k: int, coeff=ONE) -> MLaurent:
    """The constant bound coeff * q^k."""
    return MLaurent.const(QRat.qpow(k) * coeff)


ZERO_BOUND = MLaurent()


def as_bound(b) -> MLaurent:
    if isinstance(b, MLaurent):
        if len(b.terms) > 1:
            raise IntegrationError(f"bound {b} is not a monomial")
        return b
    if isinstance(b, (int, QRat, QPoly)):
        b = QRat(b) if not isinstance(b, QRat) else b
        if b.is_zero():
            return ZERO_BOUND
        return MLaurent.const(b)
    if isinstance(b, str):
        return X(b)
    raise TypeError(f"cannot use {b!r} as an integration bound")


# -- one variable -----------------------------------------------------------------

_INV_QINT: dict[int, QRat] = {}


def _inv_qint(k: int) -> QRat:
    r = _INV_QINT.get(k)
    if r is None:
        r = _INV_QINT[k] = q_int(k).inverse()
    return r


def qint_1d(f: MLaurent, var: str, lo, hi) -> MLaurent:
    """Jackson integral of ``f`` in ``var`` from ``lo`` to ``hi``.

    Each monomial ``var^e`` integrates to (hi^{e+1} - lo^{e+1}) / [e+1]_q.
    """
    lo, hi = as_bound(lo), as_bound(hi)
    if lo == hi:
        return MLaurent()
    out = MLaurent()
    for e, g in sorted(f.by_power(var).items()):
        k = e + 1
        if k == 0:
            raise NonIntegrableError(f"{var}^-1 is not q-integrable")
        if lo.is_zero() or hi.is_zero():
            if k < 0:
                raise PoleAtZeroError(f"{var}^{e} has a pole at 0")
        diff = hi ** k if not hi.is_zero() else MLaurent()
        if not lo.is_zero():
            diff = diff - lo ** k
        out = out + g * diff * _inv_qint(k)
    return out


def raw_jackson_partial(e: int, lo_exp: int | None, hi_exp: int, terms: int) -> dict[int, int]:
    """Partial sums of the defining series for x^e on [q^lo, q^hi] (lo None
    means 0), returned as exponent -> coefficient of (1-q) * sum.

    (1-q) sum_{i<terms} (f(b q^i) b q^i - f(a q^i) a q^i) with b = q^hi.
    """
    out: dict[int, int] = {}
    for i in range(terms):
        k = (hi_exp + i) * (e + 1)
        out[k] = out.get(k, 0) + 1
        if lo_exp is not None:
            k = (lo_exp + i) * (e + 1)
            out[k] = out.get(k, 0) - 1
    return out


# -- chains ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexSpec:
    """The domain a <= x_{chain[0]} <= ... <= x_{chain[-1]} <= b.

    ``chain`` lists variable names; ``order`` is the integration order
    (innermost first) and defaults to the natural order of names.
    """

    chain: tuple[str, ...]
    lower: object = 0
    upper: object = 1
    order: tuple[str, ...] | None = None

    def integration_order(self) -> tuple[str, ...]:
        if self.order is not None:
            if sorted(self.order) != sorted(self.chain):
                raise IntegrationError("integration order must be a permutation of the chain variables")
            return self.order
        from .mpoly import natural_key
        return tuple(sorted(self.chain, key=natural_key))


def qint_simplex(f: MLaurent, spec: SimplexSpec) -> QRat | MLaurent:
    """Iterated integral over a chain; each step's bounds are the nearest
    remaining chain neighbours (or the endpoints)."""
    lo_end, hi_end = as_bound(spec.lower), as_bound(spec.upper)
    remaining = list(spec.chain)
    g = f
    for v in spec.integration_order():
        k = remaining.index(v)
        lo = X(remaining[k - 1]) if k > 0 else lo_end
        hi = X(remaining[k + 1]) if k + 1 < len(remaining) else hi_end
        g = qint_1d(g, v, lo, hi)
        remaining.pop(k)
    return _maybe_scalar(g)


def _maybe_scalar(g: MLaurent):
    return g.constant_value() if g.is_constant() else g


def chain_names(perm: Sequence[int], prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in perm)


def simplex_volume(perm: Sequence[int], r: int | None = None, s: int = 0) -> QRat:
    """q-volume of q^r <= x_{perm_1} <= ... <= x_{perm_n} <= q^s (r None: 0)."""
    n = len(perm)
    spec = SimplexSpec(chain_names(perm), 0 if r is None else qp(r), qp(s),
                       chain_names(range(1, n + 1)))
    return qint_simplex(MLaurent.const(1), spec)


def truncated_simplex_closed_form(perm: Sequence[int], a: QRat, b: QRat) -> QRat:
    """b^n q^maj (a q^{-des}/b; q)_n / [n]_q!."""
    n = len(perm)
    return (b ** n * QRat.qpow(maj(perm)) * q_pochhammer_scalar(a * QRat.qpow(-des(perm)) / b, n)
            / QRat(q_factorial(n)))


# -- order polytopes via linear extensions ---------------------------------------

def integration_order_from_labeling(P: Poset, omega: Sequence[int] | None) -> tuple[str, ...]:
    """Variables ordered by label: the element labelled 1 is innermost."""
    w = tuple(omega) if omega else tuple(range(1, P.n + 1))
    check_labeling(w, P.n)
    inv = inverse_perm(w)
    return tuple(P.name(i) for i in inv)


def qint_order_polytope(f: MLaurent, P: Poset, omega: Sequence[int] | None = None,
                        r: int | None = None, s: int = 0,
                        method: str = "decomposition",
                        cap: int | None = DEFAULT_MAX_EXTENSIONS) -> QRat | MLaurent:
    """Integral of ``f`` over the order polytope of P inside [q^r, q^s]^n
    (``r=None`` means lower bound 0), integrating in the order given by the
    labeling (label 1 innermost).

    ``method="decomposition"`` sums chain integrals over linear extensions;
    ``method="direct"`` uses the section-bound region engine.
    """
    order = integration_order_from_labeling(P, omega)
    if method == "direct":
        rels = [(P.name(i), P.name(j), 0) for i, j in P.covers]
        for i in range(1, P.n + 1):
            rels.append((P.name(i), ONE_NODE, s))
            if r is not None:
                rels.append((ONE_NODE, P.name(i), -r))
        return qint_region(f, order, rels)
    if method != "decomposition":
        raise ValueError(f"unknown method {method}")
    lo = 0 if r is None else qp(r)
    hi = qp(s)
    total = MLaurent()
    for t in linear_extensions(P, None, cap):
        spec = SimplexSpec(tuple(P.name(i) for i in t), lo, hi, order)
        total = total + _as_ml(qint_simplex(f, spec))
    return _maybe_scalar(total)


def _as_ml(x) -> MLaurent:
    return x if isinstance(x, MLaurent) else MLaurent.const(x)


# -- direct region engine -------------------------------------------------------------

NEG = None  # no known relation


class _Closure:
    """Max-plus closure: best[u][w] = largest c with x_u <= q^c x_w implied."""

    def __init__(self, nodes: Sequence[str], rels: Iterable[tuple[str, str, int]]):
        self.nodes = list(nodes)
        self.idx = {v: i for i, v in enumerate(self.nodes)}
        n = len(self.nodes)
        M = [[None] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = 0
        for u, w, c in rels:
            a, b = self.idx[u], self.idx[w]
            if M[a][b] is None or c > M[a][b]:
                M[a][b] = c
        for k in range(n):
            Mk = M[k]
            for i in range(n):
                mik = M[i][k]
                if mik is None:
                    continue
                Mi = M[i]
                for j in range(n):
                    mkj = Mk[j]
                    if mkj is not None and (Mi[j] is None or mik + mkj > Mi[j]):
                        Mi[j] = mik + mkj
        self.M = M

    def get(self, u, w):
        return self.M[self.idx[u]][self.idx[w]]

    def degenerate(self) -> bool:
        return any(self.M[i][i] > 0 for i in range(len(self.nodes)))

    def relations(self, keep: Iterable[str]) -> list[tuple[str, str, int]]:
        keep = [v for v in self.nodes if v in set(keep)]
        out = []
        for u in keep:
            for w in keep:
                if u != w:
                    c = self.get(u, w)
                    if c is not None:
                        out.append((u, w, c))
        return out


def _bound_expr(node: str, c: int) -> MLaurent:
    if node == ONE_NODE:
        return qp(c)
    return MLaurent.var(node, 1, QRat.qpow(c))


def qint_region(f: MLaurent, order: Sequence[str],
                relations: Iterable[tuple[str, str, int]],
                params: Sequence[str] = (),
                param_relations: Iterable[tuple[str, str, int]] = ()) -> QRat | MLaurent:
    """Iterated integral of ``f`` over {x >= 0 : x_u <= q^c x_w for (u, w, c)}.

    ``order`` lists integration variables innermost first; ``params`` are
    symbolic variables that stay in the result (``param_relations`` records
    what is known about them).  The node ``"1"`` stands for the constant 1,
    so ``(v, "1", s)`` means x_v <= q^s and ``("1", v, -r)`` means q^r <= x_v.
    """
    rels = list(relations) + list(param_relations)
    nodes = [ONE_NODE] + list(params) + list(order)
    seen = set(nodes)
    for u, w, _ in rels:
        for v in (u, w):
            if v not in seen:
                raise IntegrationError(f"relation mentions unknown variable {v}")
    return _maybe_scalar(_region(f, list(order), nodes, rels, bool(params)))


def _dominant(cands: list[tuple[str, int]], cl: _Closure, upper: bool):
    """Candidate bound that is implied to be the min (upper) / max (lower)."""
    for w0, c0 in cands:
        ok = True
        for w, c in cands:
            if w == w0:
                continue
            if upper:
                # q^c0 x_w0 <= q^c x_w  <=>  x_w0 <= q^{c-c0} x_w
                m = cl.get(w0, w)
                if m is None or m < c - c0:
                    ok = False
                    break
            else:
                # q^c x_w <= q^c0 x_w0  <=>  x_w <= q^{c0-c} x_w0
                m = cl.get(w, w0)
                if m is None or m < c0 - c:
                    ok = False
                    break
        if ok:
            return w0, c0
    return None


def _region(f: MLaurent, order: list[str], nodes: list[str],
            rels: list[tuple[str, str, int]], has_params: bool) -> MLaurent:
    cl = _Closure(nodes, rels)
    if cl.degenerate():
        return MLaurent()
    g = f
    remaining = list(order)
    while remaining:
        v = remaining[0]
        others = [w for w in nodes if w != v]
        ups = [(w, cl.get(v, w)) for w in others if cl.get(v, w) is not None]
        # x_w <= q^m x_v  => x_v >= q^{-m} x_w
        los = [(w, -cl.get(w, v)) for w in others if cl.get(w, v) is not None]
        if not ups:
            raise IntegrationError(f"variable {v} is unbounded above")
        hi = _dominant(ups, cl, True)
        lo = _dominant(los, cl, False) if los else ("0", 0)
        if hi is None or lo is None:
            if has_params:
                raise AmbiguousBounds(f"section bound of {v} is not a single monomial")
            cands = ups if hi is None else los
            (w1, c1), (w2, c2) = _first_incomparable(cands, cl)
            # Split along the hyperplane x_a = q^d x_b where a is integrated
            # before b.  Lower Jackson endpoints are exclusive, so the two
            # closed half-spaces partition the lattice points.
            a, ca, b, cb = (w1, c1, w2, c2) if _rank(w1, order) < _rank(w2, order) else (w2, c2, w1, c1)
            d = cb - ca
            base = cl.relations([w for w in nodes if w not in order or w in remaining])
            keep_nodes = [w for w in nodes if w not in order or w in remaining]
            left = _region(g, remaining, keep_nodes, base + [(a, b, d)], has_params)
            right = _region(g, remaining, keep_nodes, base + [(b, a, -d)], has_params)
            return left + right
        lo_b = ZERO_BOUND if lo[0] == "0" else _bound_expr(*lo)
        hi_b = _bound_expr(*hi)
        g = qint_1d(g, v, lo_b, hi_b)
        remaining.pop(0)
        nodes = [w for w in nodes if w != v]
        cl = _Closure(nodes, cl.relations(nodes))
    return g


def _rank(w: str, order: Sequence[str]) -> int:
    return order.index(w) if w in order else len(order)


def _first_incomparable(cands, cl):
    for a in range(len(cands)):
        for b in range(a + 1, len(cands)):
            w1, c1 = cands[a]
            w2, c2 = cands[b]
            m12, m21 = cl.get(w1, w2), cl.get(w2, w1)
            if not ((m12 is not None and m12 >= c2 - c1) or (m21 is not None and m21 >= c1 - c2)):
                return (w1, c1), (w2, c2)
    raise AmbiguousBounds("no incomparable pair found")


# -- scaled domains and finite sums ----------------------------------------------------

@dataclass(frozen=True)
class QDomain:
    """{q^{r_i} <= x_i <= q^{s_i}} with relations q^{t_ij} x_i <= x_j and an
    integration order (innermost first), over variables x1..xn."""

    n: int
    r: tuple[int, ...]
    s: tuple[int, ...]
    relations: tuple[tuple[int, int, int], ...] = ()
    order: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.r) != self.n or len(self.s) != self.n:
            raise ValueError("box bounds must have length n")
        for ri, si in zip(self.r, self.s):
            if not (ri >= si >= 0):
                raise ValueError("need r_i >= s_i >= 0")
        for i, j, _ in self.relations:
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"bad relation pair ({i},{j})")
        if self.order is None:
            object.__setattr__(self, "order", tuple(range(1, self.n + 1)))
        elif sorted(self.order) != list(range(1, self.n + 1)):
            raise ValueError("order must be a permutation of 1..n")
        object.__setattr__(self, "relations", tuple(sorted(self.relations)))

    def names(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.n + 1)]

    def to_json(self) -> dict:
        return {"n": self.n, "r": list(self.r), "s": list(self.s),
                "relations": [list(t) for t in self.relations], "order": list(self.order)}

    @classmethod
    def from_json(cls, d: dict) -> "QDomain":
        return cls(int(d["n"]), tuple(d["r"]), tuple(d["s"]),
                   tuple(tuple(t) for t in d.get("relations", ())),
                   tuple(d["order"]) if d.get("order") else None)


def qsum_domain(f: MLaurent, D: QDomain) -> QRat:
    """(1-q)^n sum f(q^k) q^{|k|} over lattice points of D, with relation
    (i, j, t) read as t + k_i >= k_j when i is integrated before j and as
    t + k_i > k_j otherwise."""
    n = D.n
    pos = {v: p for p, v in enumerate(D.order)}
    checks = []
    for i, j, t in D.relations:
        checks.append((i - 1, j - 1, t, pos[i] > pos[j]))
    names = D.names()
    terms = [(tuple(dict(m).get(v, 0) + 1 for v in names), c) for m, c in f.terms.items()]
    for m, _ in f.terms.items():
        for v, _e in m:
            if v not in names:
                raise IntegrationError(f"integrand variable {v} is not in the domain")
    counts: list[dict[int, int]] = [dict() for _ in terms]
    for k in product(*(range(D.s[i], D.r[i]) for i in range(n))):
        ok = True
        for a, b, t, strict in checks:
            d = t + k[a] - k[b]
            if d < 0 or (strict and d == 0):
                ok = False
                break
        if not ok:
            continue
        for idx, (ex, _) in enumerate(terms):
            e = 0
            for ei, ki in zip(ex, k):
                e += ei * ki
            cnt = counts[idx]
            cnt[e] = cnt.get(e, 0) + 1
    total = ZERO
    for (ex, c), cnt in zip(terms, counts):
        if cnt:
            total = total + c * _laurent_counts(cnt)
    return total * QRat(QPoly([1, -1])) ** n


def _laurent_counts(cnt: Mapping[int, int]) -> QRat:
    lo = min(cnt)
    base = min(lo, 0)
    cs = [0] * (max(cnt) - base + 1)
    for k, c in cnt.items():
        cs[k - base] += c
    return QRat(QPoly(cs), QPoly.monomial(-base))


def qint_domain(f: MLaurent, D: QDomain) -> QRat:
    """The same domain integrated symbolically by the region engine."""
    names = D.names()
    rels = []
    for i, j, t in D.relations:
        rels.append((names[i - 1], names[j - 1], -t))
    for i in range(D.n):
        rels.append((names[i], ONE_NODE, D.s[i]))
        rels.append((ONE_NODE, names[i], -D.r[i]))
    return qint_region(f, [names[i - 1] for i in D.order], rels)


def change_order(D: QDomain, sigma: Sequence[int]) -> QDomain:
    """Re-express D for the integration order sigma, shifting t_ij by -1 when
    a relation goes from strict to weak and by +1 for the reverse."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, D.n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    pi_pos = {v: p for p, v in enumerate(D.order)}
    si_pos = {v: p for p, v in enumerate(sigma)}
    rels = []
    for i, j, t in D.relations:
        was_strict = pi_pos[i] > pi_pos[j]
        now_strict = si_pos[i] > si_pos[j]
        if was_strict and not now_strict:
            t -= 1
        elif now_strict and not was_strict:
            t += 1
        rels.append((i, j, t))
    return replace(D, relations=tuple(rels), order=sigma)


# -- switching two integrations -------------------------------------------------------

@dataclass(frozen=True)
class FubiniDefect:
    inner_x: QRat
    inner_y: QRat
    lhs: QRat
    rhs: QRat

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def fubini_defect(f: MLaurent, a, b, x: str = "x", y: str = "y") -> FubiniDefect:
    """Difference of the two integration orders over a <= x <= y <= b and the
    single integral (1-q) int_a^b x f(x, x) d_qx."""
    inner_x = qint_simplex(f, SimplexSpec((x, y), a, b, (x, y)))
    inner_y = qint_simplex(f, SimplexSpec((x, y), a, b, (y, x)))
    diag = f.subs({y: X(x)}) * X(x)
    rhs = _as_ml(qint_1d(diag, x, a, b)) * QRat(QPoly([1, -1]))
    inner_x, inner_y = _scalar(inner_x), _scalar(inner_y)
    return FubiniDefect(inner_x, inner_y, inner_x - inner_y, _scalar(rhs))


def _scalar(v) -> QRat:
    if isinstance(v, MLaurent):
        return v.constant_value()
    return v
