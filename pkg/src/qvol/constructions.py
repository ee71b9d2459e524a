"""Poset builders (forests, Selberg posets, Schur posets) and the chain
attachment / interlacing identities, each checked by evaluating both sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import comb
from typing import Sequence

from .mpoly import MLaurent, Partition, X, pochhammer, schur, vandermonde_bar
from .poset import Poset, des, maj
from .qalg import ONE, QPoly, QRat, q_factorial, q_int, q_number
from .qint import (ONE_NODE, SimplexSpec, qint_1d, qint_order_polytope, qint_region,
                   qint_simplex)


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of an identity, evaluated independently."""

    name: str
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _qrat(v) -> QRat:
    if isinstance(v, MLaurent):
        return v.constant_value()
    return v


def qfact(n: int) -> QRat:
    return QRat(q_factorial(n))


# -- forests ---------------------------------------------------------------------------

def hooks(P: Poset) -> list[int]:
    """h(x) = #{y : y <= x} for every element."""
    return [1 + bin(P.down_masks[i]).count("1") for i in range(P.n)]


@dataclass(frozen=True)
class Forest:
    poset: Poset

    def __post_init__(self):
        if not self.poset.is_forest():
            raise ValueError("every element of a forest has at most one upper cover")

    @property
    def n(self) -> int:
        return self.poset.n

    def parent(self, i: int) -> int | None:
        up = self.poset.upper_covers[i - 1]
        return up[0] if up else None

    @cached_property
    def hooks(self) -> list[int]:
        return hooks(self.poset)

    def hook_product_inverse(self) -> QRat:
        den = QPoly([1])
        for h in self.hooks:
            den = den * q_number(h)
        return QRat(1, den)


def build_forest_Fa(F: Forest, a: Sequence[int]) -> Forest:
    """Attach a_i new leaves below x_i.  Original elements keep indices
    1..n; leaves follow, named l{i}_{k}."""
    if len(a) != F.n:
        raise ValueError("need one a_i per element")
    n = F.n
    rels = list(F.poset.covers)
    names = list(F.poset.var_names)
    idx = n
    for i, ai in enumerate(a, 1):
        for k in range(1, ai + 1):
            idx += 1
            rels.append((idx, i))
            names.append(f"l{i}_{k}")
    return Forest(Poset(idx, tuple(rels), tuple(names)))


def forest_from_parents(parents: Sequence[int | None]) -> Forest:
    rels = tuple((i, p) for i, p in enumerate(parents, 1) if p)
    return Forest(Poset(len(parents), rels))


def _forest_code(parents: Sequence[int | None]) -> str:
    n = len(parents)
    children: dict[int, list[int]] = {i: [] for i in range(n + 1)}
    for i, p in enumerate(parents, 1):
        children[p or 0].append(i)

    def enc(v):
        return "(" + "".join(sorted(enc(c) for c in children[v])) + ")"

    return enc(0)


def forests_up_to_iso(n: int) -> list[Forest]:
    """One naturally labeled forest per isomorphism class (parents have
    larger labels), in a deterministic order."""
    seen: dict[str, tuple] = {}

    def rec(i, parents):
        if i > n:
            code = _forest_code(parents)
            seen.setdefault(code, tuple(parents))
            return
        for p in [None] + list(range(i + 1, n + 1)):
            parents.append(p)
            rec(i + 1, parents)
            parents.pop()

    rec(1, [])
    return [forest_from_parents(seen[c]) for c in sorted(seen)]


# The forest used in the worked hook-length example: x1,x2 < x3 < x5 > x4,
# x7,x8 < x9 and x6 isolated.
EXAMPLE_FOREST = Forest(Poset(9, ((1, 3), (2, 3), (3, 5), (4, 5), (7, 9), (8, 9))))
EXAMPLE_FOREST_A = (0, 3, 2, 1, 2, 3, 0, 2, 1)


def qint_forest_iterated(f: MLaurent, F: Forest) -> QRat:
    """Iterated integral over O(F) for a naturally labeled forest: x_i runs
    over [0, parent(x_i)] (or [0, 1] at a root), innermost first."""
    if not F.poset.is_natural():
        raise ValueError("forest must be naturally labeled")
    g = f
    for i in range(1, F.n + 1):
        p = F.parent(i)
        g = qint_1d(g, F.poset.name(i), 0, X(F.poset.name(p)) if p else 1)
    return g.constant_value()


def forest_monomial(F: Forest, a: Sequence[int]) -> MLaurent:
    return MLaurent.monomial({F.poset.name(i): e for i, e in enumerate(a, 1) if e})


def check_forest_hooks(F: Forest, a: Sequence[int], method: str = "iterated") -> IdentityCheck:
    f = forest_monomial(F, a)
    if method == "iterated":
        lhs = qint_forest_iterated(f, F)
    else:
        lhs = _qrat(qint_order_polytope(f, F.poset, method=method))
    return IdentityCheck("forest-hook", lhs, build_forest_Fa(F, a).hook_product_inverse())


# -- Selberg poset ---------------------------------------------------------------------

@dataclass(frozen=True)
class SelbergPoset:
    """P(n, r, s, m) with elements indexed by their position in the word W,
    so the identity labeling is the W labeling."""

    n: int
    r: int
    s: int
    m: int
    poset: Poset
    word: tuple[str, ...]

    @property
    def N(self) -> int:
        return self.poset.n


def selberg_size(n: int, r: int, s: int, m: int) -> int:
    return n * (r + s + 1) + 2 * m * comb(n, 2)


def build_selberg_poset(n: int, r: int, s: int, m: int) -> SelbergPoset:
    if n < 1 or r < 0 or s < 0 or m < 1:
        raise ValueError("need n >= 1, r, s >= 0, m >= 1")
    word: list[str] = []
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for i, j in pairs:
        word += [f"w{i}_{j}_{k}" for k in range(1, m + 1)]
    for i, j in pairs:
        word += [f"w{j}_{i}_{k}" for k in range(1, m + 1)]
    for i in range(1, n + 1):
        word += [f"y{i}_{a}" for a in range(1, r + 1)]
    word += [f"x{i}" for i in range(1, n + 1)]
    for i in range(1, n + 1):
        word += [f"z{i}_{b}" for b in range(1, s + 1)]
    pos = {w: k for k, w in enumerate(word, 1)}

    def chain(names):
        return [(pos[names[t]], pos[names[t + 1]]) for t in range(len(names) - 1)]

    rels = []
    for i, j in pairs:
        rels += chain([f"x{i}"] + [f"w{i}_{j}_{k}" for k in range(1, m + 1)] + [f"x{j}"])
        rels += chain([f"x{i}"] + [f"w{j}_{i}_{k}" for k in range(m, 0, -1)] + [f"x{j}"])
    for i in range(1, n + 1):
        rels += chain([f"y{i}_{a}" for a in range(1, r + 1)] + [f"x{i}"]
                      + [f"z{i}_{b}" for b in range(1, s + 1)])
    P = Poset(len(word), tuple(rels), tuple(word))
    return SelbergPoset(n, r, s, m, P, tuple(word))


def maj_selberg_closed_form(n: int, r: int, s: int, m: int) -> QRat:
    """Product formula for the maj generating function of P(n, r, s, m)."""
    N = selberg_size(n, r, s, m)
    c2, c3 = comb(n, 2), comb(n, 3)
    out = QRat.qpow(comb(m, 2) * c2 + (r + 1) * m * c2 + 2 * m * m * c3) * qfact(N)
    out = out / (qfact(r) ** n * qfact(s) ** n * qfact(m) ** (2 * c2))
    for j in range(1, n + 1):
        out = out * qfact(r + (j - 1) * m) * qfact(s + (j - 1) * m) * qfact(j * m - 1)
        out = out / (qfact(r + s + 1 + (n + j - 2) * m) * qfact(m - 1))
    return out


# -- Schur poset -----------------------------------------------------------------------

@dataclass(frozen=True)
class SchurPoset:
    """Cells of the shifted diagram (delta_{n+1} + lambda)^*, diagonal k
    cells named d{k}_{i} with i counted from the southeast.  The 0-diagonal
    cells are named x1..xn.

    ``poset0`` contains every cell, ``poset`` drops the 0-diagonal.  Element
    indices follow the integration order: highest diagonal first, and within a
    diagonal from southeast to northwest.
    """

    n: int
    lam: Partition
    diag_sizes: tuple[int, ...]
    poset0: Poset
    poset: Poset

    def cell_name(self, k: int, i: int) -> str:
        return f"x{i}" if k == 0 else f"d{k}_{i}"


def shifted_cells(n: int, lam: Partition) -> list[tuple[int, int]]:
    """Cells (row, col) of (delta_{n+1} + lambda)^*: row i has columns i..n+lambda_i."""
    lp = lam.padded(n)
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + lp[i - 1] + 1)]


def build_schur_poset(n: int, lam: Partition) -> SchurPoset:
    lp = lam.padded(n)
    top = (lp[0] + n - 1) if n else 0
    sizes = tuple(sum(1 for i in range(1, n + 1) if n - i + lp[i - 1] >= k) for k in range(top + 1))
    cells = shifted_cells(n, lam)
    cellset = set(cells)

    def label(c):
        i, j = c
        k = j - i
        return k, sizes[k] + 1 - i

    def name(c):
        k, t = label(c)
        return f"x{t}" if k == 0 else f"d{k}_{t}"

    ordered = sorted(cells, key=lambda c: (-label(c)[0], label(c)[1]))
    # a cell is smaller than its north and west neighbours
    rel_cells = []
    for (i, j) in cells:
        for nb in ((i - 1, j), (i, j - 1)):
            if nb in cellset:
                rel_cells.append(((i, j), nb))

    def make(keep):
        idx = {c: t for t, c in enumerate(keep, 1)}
        rels = tuple((idx[a], idx[b]) for a, b in rel_cells if a in idx and b in idx)
        return Poset(len(keep), rels, tuple(name(c) for c in keep))

    P0 = make(ordered)
    P = make([c for c in ordered if label(c)[0] > 0])
    return SchurPoset(n, lam, sizes, P0, P)


def interlacing_relations(outer: Sequence[str], inner: Sequence[str]) -> list[tuple[str, str, int]]:
    """Relations for inner < outer in the interlacing order.

    One fewer inner variable: y_i <= z_i <= y_{i+1}.  Same number:
    z_1 <= y_1 <= z_2 <= ... <= z_n <= y_n.
    """
    a, b = len(outer), len(inner)
    rels = []
    if b == a - 1:
        for i in range(b):
            rels += [(outer[i], inner[i], 0), (inner[i], outer[i + 1], 0)]
    elif b == a:
        for i in range(b):
            rels.append((inner[i], outer[i], 0))
            if i > 0:
                rels.append((outer[i - 1], inner[i], 0))
    else:
        raise ValueError("interlacing needs the inner sequence to have the same or one fewer entries")
    return rels


def schur_poset_volume(n: int, lam: Partition, mu: Partition) -> QRat:
    """Truncated q-volume of the Schur poset with the 1-diagonal boxed by the
    fixed point x = q^{mu + delta_n}, integrating highest diagonal first."""
    SP = build_schur_poset(n, lam)
    P = SP.poset
    e = [mu.padded(n)[j] + n - 1 - j for j in range(n)]  # x_j = q^{e_j}
    rels = [(P.name(i), P.name(j), 0) for i, j in P.covers]
    rels += [(P.name(i), ONE_NODE, 0) for i in range(1, P.n + 1)]
    a1 = SP.diag_sizes[1] if len(SP.diag_sizes) > 1 else 0
    full = len(lam) == n
    for j in range(1, a1 + 1):
        v = f"d1_{j}"
        if not full:
            lo, hi = e[j - 1], e[j]
        else:
            lo, hi = (e[j - 2] if j >= 2 else None), e[j - 1]
        rels.append((v, ONE_NODE, hi))
        if lo is not None:
            rels.append((ONE_NODE, v, -lo))
    order = [P.name(i) for i in range(1, P.n + 1)]
    if not order:
        return ONE
    return _qrat(qint_region(MLaurent.const(1), order, rels))


def schur_factorial_prefactor(n: int, lam: Partition) -> QRat:
    lp = lam.padded(n)
    out = ONE
    for j in range(1, n + 1):
        out = out * qfact(lp[j - 1] + n - j)
    return out


def check_schur_poset(n: int, lam: Partition, mu: Partition) -> IdentityCheck:
    """s_lambda(x) Dbar(x) at x = q^{mu+delta_n} against the Schur-poset volume."""
    names = [f"x{i}" for i in range(1, n + 1)]
    point = {names[j]: mu.padded(n)[j] + n - 1 - j for j in range(n)}
    lhs = (schur(lam, names) * vandermonde_bar(names)).substitute_qpowers(point)
    rhs = schur_factorial_prefactor(n, lam) * schur_poset_volume(n, lam, mu)
    return IdentityCheck("schur-poset", lhs, rhs)


def schur_delta_symbolic(n: int, lam: Partition) -> IdentityCheck:
    """The nested interlacing integral with x1 <= ... <= xn left symbolic."""
    SP = build_schur_poset(n, lam)
    sizes = SP.diag_sizes
    diag = [[SP.cell_name(k, i) for i in range(1, sizes[k] + 1)] for k in range(len(sizes))]
    rels = []
    for k in range(1, len(sizes)):
        rels += interlacing_relations(diag[k - 1], diag[k])
    order = [v for k in range(len(sizes) - 1, 0, -1) for v in diag[k]]
    params = diag[0]
    prel = [(params[i], params[i + 1], 0) for i in range(n - 1)]
    vol = qint_region(MLaurent.const(1), order, rels, params, prel)
    vol = vol if isinstance(vol, MLaurent) else MLaurent.const(vol)
    lhs = schur(lam, params) * vandermonde_bar(params)
    return IdentityCheck("schur-delta", lhs, vol * schur_factorial_prefactor(n, lam))


# -- interlacing lemmas ----------------------------------------------------------------

def check_schur_interlacing(lam: Partition, n: int) -> IdentityCheck:
    """s_lambda(y) Dbar(y) = prod [lambda_i+n-i]_q * int_{z < y} ... symbolically.

    With l(lambda) < n the inner z has n-1 entries and the integrand is
    s_lambda(z) Dbar(z); with l(lambda) = n it has n entries and s_{lambda-1^n}.
    """
    ys = [f"y{i}" for i in range(1, n + 1)]
    lp = lam.padded(n)
    if len(lam) < n:
        zs = [f"z{i}" for i in range(1, n)]
        inner_lam = lam
        count = n - 1
    else:
        zs = [f"z{i}" for i in range(1, n + 1)]
        inner_lam = Partition(tuple(p - 1 for p in lp))
        count = n
    const = ONE
    for i in range(1, count + 1):
        const = const * q_int(lp[i - 1] + n - i)
    integrand = schur(inner_lam, zs) * vandermonde_bar(zs)
    rels = interlacing_relations(ys, zs)
    val = qint_region(integrand, zs, rels, ys, [(ys[i], ys[i + 1], 0) for i in range(n - 1)])
    val = val if isinstance(val, MLaurent) else MLaurent.const(val)
    lhs = schur(lam, ys) * vandermonde_bar(ys)
    return IdentityCheck("schur-interlacing", lhs, val * const)


def _extend_poset(P: Poset, new_names: Sequence[str], new_rels, before: bool) -> Poset:
    """Add elements named ``new_names`` either before (indices 1..k) or after
    the existing ones.  ``new_rels`` uses names."""
    k = len(new_names)
    old_names = list(P.var_names)
    if before:
        names = list(new_names) + old_names
        shift = k
        rels = [(i + shift, j + shift) for i, j in P.covers]
    else:
        names = old_names + list(new_names)
        rels = list(P.covers)
    idx = {v: t for t, v in enumerate(names, 1)}
    rels += [(idx[a], idx[b]) for a, b in new_rels]
    return Poset(len(names), tuple(rels), tuple(names))


def verify_scaredy_cat(P: Poset, t: int, m: int, f: MLaurent | None = None) -> IdentityCheck:
    """int_{O(P)} x_t^m f = [m]! int_{O(Q)} f with a chain y_1<...<y_m<x_t
    integrated innermost."""
    f = MLaurent.const(1) if f is None else f
    xt = P.name(t)
    lhs = qint_order_polytope(f * X(xt) ** m, P)
    ys = [f"y{i}" for i in range(1, m + 1)]
    rels = [(ys[i], ys[i + 1]) for i in range(m - 1)] + ([(ys[-1], xt)] if m else [])
    Q = _extend_poset(P, ys, rels, before=True)
    rhs = qint_order_polytope(f, Q) * qfact(m)
    return IdentityCheck("scaredy-cat", _qrat(lhs), _qrat(rhs))


def verify_happy_cat(P: Poset, s: int, m: int, f: MLaurent | None = None) -> IdentityCheck:
    """int_{O(P)} (q x_s; q)_m f = [m]! int_{O(Q)} f with x_s<y_1<...<y_m
    integrated outermost."""
    f = MLaurent.const(1) if f is None else f
    xs = P.name(s)
    lhs = qint_order_polytope(f * pochhammer(X(xs) * QRat.qpow(1), m), P)
    ys = [f"y{i}" for i in range(1, m + 1)]
    rels = ([(xs, ys[0])] if m else []) + [(ys[i], ys[i + 1]) for i in range(m - 1)]
    Q = _extend_poset(P, ys, rels, before=False)
    rhs = qint_order_polytope(f, Q) * qfact(m)
    return IdentityCheck("happy-cat", _qrat(lhs), _qrat(rhs))


def verify_attach_chain(P: Poset, s: int, t: int, m: int, rho: Sequence[int],
                        f: MLaurent | None = None, variant: int = 1) -> IdentityCheck:
    """Chain x_s < y_{rho_1} < ... < y_{rho_m} < x_t inserted between x_s <= x_t.

    variant 1: integrand q^maj x_t^m (q^{-des} x_s/x_t; q)_m, y's innermost.
    variant 2: q^{1-des} instead, y's integrated right after x_s.
    """
    if not P.leq(s, t):
        raise ValueError("need x_s <= x_t in P")
    f = MLaurent.const(1) if f is None else f
    xs, xt = P.name(s), P.name(t)
    shift = -des(rho) if variant == 1 else 1 - des(rho)
    base = X(xs) * MLaurent.var(xt, -1) * QRat.qpow(shift)
    factor = pochhammer(base, m) * X(xt) ** m * QRat.qpow(maj(rho))
    lhs = qint_order_polytope(f * factor, P)
    ys = [f"y{i}" for i in range(1, m + 1)]
    chain = [xs] + [ys[r - 1] for r in rho] + [xt]
    rels = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    if variant == 1:
        Q = _extend_poset(P, ys, rels, before=True)
        rhs = qint_order_polytope(f, Q)
    else:
        Q = _extend_poset(P, ys, rels, before=False)
        n = P.n
        # integration order x_1..x_s, y_1..y_m, x_{s+1}..x_n as a labeling
        order = list(range(1, s + 1)) + list(range(n + 1, n + m + 1)) + list(range(s + 1, n + 1))
        omega = [0] * (n + m)
        for lab, el in enumerate(order, 1):
            omega[el - 1] = lab
        rhs = qint_order_polytope(f, Q, omega)
    return IdentityCheck(f"attach-chain-{variant}", _qrat(lhs), _qrat(rhs * qfact(m)))


def verify_interlacing(P: Poset, chain: Sequence[int], lam: Partition,
                       f: MLaurent | None = None) -> IdentityCheck:
    """Insert a chain z interlacing the chain y = (x_{chain_1} < ...) of P.

    l(lambda) < n: n-1 new elements y_i < z_i < y_{i+1}, integrand s_lambda(z).
    l(lambda) = n: n new elements z_i < y_i < z_{i+1}, integrand s_{lambda-1^n}(z).
    New variables are integrated innermost.
    """
    f = MLaurent.const(1) if f is None else f
    n = len(chain)
    for a, b in zip(chain, chain[1:]):
        if not P.less(a, b):
            raise ValueError("chain elements must increase in P")
    ys = [P.name(c) for c in chain]
    lp = lam.padded(n)
    lhs = qint_order_polytope(schur(lam, ys) * vandermonde_bar(ys) * f, P)
    if len(lam) < n:
        zs = [f"z{i}" for i in range(1, n)]
        rels = [(ys[i], zs[i]) for i in range(n - 1)] + [(zs[i], ys[i + 1]) for i in range(n - 1)]
        inner, count = lam, n - 1
    else:
        zs = [f"z{i}" for i in range(1, n + 1)]
        rels = [(zs[i], ys[i]) for i in range(n)] + [(ys[i], zs[i + 1]) for i in range(n - 1)]
        inner, count = Partition(tuple(p - 1 for p in lp)), n
    Q = _extend_poset(P, zs, rels, before=True)
    const = ONE
    for i in range(1, count + 1):
        const = const * q_int(lp[i - 1] + n - i)
    rhs = qint_order_polytope(schur(inner, zs) * vandermonde_bar(zs) * f, Q) * const
    return IdentityCheck("interlacing", _qrat(lhs), _qrat(rhs))


# -- beta-type integrals -----------------------------------------------------------------

def qbeta_check(n: int, m: int) -> IdentityCheck:
    """int_0^1 x^n (xq; q)_m d_qx = [n]! [m]! / [n+m+1]!."""
    f = X("x") ** n * pochhammer(X("x") * QRat.qpow(1), m)
    lhs = qint_1d(f, "x", 0, 1).constant_value()
    return IdentityCheck("q-beta", lhs, qfact(n) * qfact(m) / qfact(n + m + 1))


def qbeta_via_chain(n: int, m: int) -> QRat:
    """[n]! [m]! times the q-volume of a chain with n + m + 1 elements."""
    vol = qint_order_polytope(MLaurent.const(1), Poset.chain(list(range(1, n + m + 2))))
    return qfact(n) * qfact(m) * _qrat(vol)


def dirichlet_integrand(k: Sequence[int]) -> MLaurent:
    """y_1^{k_1} (q y_n; q)_{k_{n+1}} prod_{i>=2} y_i^{k_i} (q y_{i-1}/y_i; q)_{k_i}."""
    n = len(k) - 1
    ys = [f"y{i}" for i in range(1, n + 1)]
    f = X(ys[0]) ** k[0] * pochhammer(X(ys[-1]) * QRat.qpow(1), k[n])
    for i in range(1, n):
        f = f * X(ys[i]) ** k[i] * pochhammer(X(ys[i - 1]) * MLaurent.var(ys[i], -1) * QRat.qpow(1), k[i])
    return f


def dirichlet_check(k: Sequence[int]) -> IdentityCheck:
    n = len(k) - 1
    ys = tuple(f"y{i}" for i in range(1, n + 1))
    lhs = _qrat(qint_simplex(dirichlet_integrand(k), SimplexSpec(ys, 0, 1, ys)))
    rhs = ONE
    for ki in k:
        rhs = rhs * qfact(ki)
    return IdentityCheck("dirichlet", lhs, rhs / qfact(n + sum(k)))


def andrews_askey_k(r: int, s: int, k1: int, k2: int) -> int:
    return k1 + k2 + 1 if s >= 1 else k1


def andrews_askey_check(r: int, s: int, k1: int, k2: int, a=None, b=None) -> IdentityCheck:
    """int_a^b x^r (a q^{-k1}/x; q)_r (x q^{-k2}/b; q)_s d_qx against
    [r]![s]!/[n]! b^{r+1} q^{(k-k1)(r+1)} (a q^{-k}/b; q)_n.

    ``a`` and ``b`` are bounds (MLaurent monomials); by default they stay
    symbolic as variables a and b.
    """
    n = r + s + 1
    k = andrews_askey_k(r, s, k1, k2)
    A = X("a") if a is None else (a if isinstance(a, MLaurent) else MLaurent.const(a))
    B = X("b") if b is None else (b if isinstance(b, MLaurent) else MLaurent.const(b))
    x = X("x")
    f = x ** r * pochhammer(A * QRat.qpow(-k1) * x ** -1, r) * pochhammer(x * QRat.qpow(-k2) * B ** -1, s)
    lhs = qint_1d(f, "x", A, B)
    rhs = (B ** (r + 1) * pochhammer(A * QRat.qpow(-k) * B ** -1, n)
           * (qfact(r) * qfact(s) / qfact(n) * QRat.qpow((k - k1) * (r + 1))))
    if lhs.is_constant() and rhs.is_constant():
        return IdentityCheck("andrews-askey", lhs.constant_value(), rhs.constant_value())
    return IdentityCheck("andrews-askey", lhs, rhs)


# -- descent identities ------------------------------------------------------------------

def descent_pochhammer_check(n: int, a=None) -> IdentityCheck:
    """sum_pi q^maj (a q^{-des}; q)_n = (1-a)^n [n]!  (a symbolic by default)."""
    A = X("a") if a is None else (a if isinstance(a, MLaurent) else MLaurent.const(a))
    lhs = MLaurent()
    for p in permutations(range(1, n + 1)):
        lhs = lhs + pochhammer(A * QRat.qpow(-des(p)), n) * QRat.qpow(maj(p))
    rhs = (1 - A) ** n * qfact(n)
    if lhs.is_constant() and rhs.is_constant():
        return IdentityCheck("maj-pochhammer", lhs.constant_value(), rhs.constant_value())
    return IdentityCheck("maj-pochhammer", lhs, rhs)


def majdes1_rhs(n: int, k: int) -> QRat:
    """q^{-C(k,2)} C(n,k) [k]_q! [n-k]_q!, the a^k coefficient of the
    (a q^{-des}; q)_n identity."""
    return QRat.qpow(-comb(k, 2)) * comb(n, k) * qfact(k) * qfact(n - k)


def majdes2_rhs(n: int, t) -> QRat | MLaurent:
    """(1-q)^{-n} sum_i C(n,i) (-q)^i (t;q)_i (q^{i+1} t; q)_{n-i}."""
    T = t if isinstance(t, MLaurent) else MLaurent.const(t)
    total = MLaurent()
    for i in range(n + 1):
        term = pochhammer(T, i) * pochhammer(T * QRat.qpow(i + 1), n - i)
        total = total + term * (comb(n, i) * (-1) ** i) * QRat.qpow(i)
    total = total * QRat(1, QPoly([1, -1]) ** n)
    return total.constant_value() if total.is_constant() else total


def des_maj_sum(n: int, t) -> QRat | MLaurent:
    """sum over S_n of t^des q^maj by enumeration."""
    T = t if isinstance(t, MLaurent) else MLaurent.const(t)
    total = MLaurent()
    for p in permutations(range(1, n + 1)):
        total = total + T ** des(p) * QRat.qpow(maj(p))
    return total.constant_value() if total.is_constant() else total


def carlitz_series(n: int, order: int) -> MLaurent:
    """(t;q)_{n+1} sum_{i<=order} [i+1]^n t^i truncated to t-degree ``order``."""
    T = X("t")
    s = MLaurent()
    for i in range(order + 1):
        s = s + T ** i * QRat(q_number(i + 1) ** n)
    prod = pochhammer(T, n + 1) * s
    return MLaurent({m: c for m, c in prod.terms.items() if dict(m).get("t", 0) <= order})


def cover_digraph(P: Poset):
    import networkx as nx
    G = nx.DiGraph()
    G.add_nodes_from(range(1, P.n + 1))
    G.add_edges_from(P.covers)
    return G


def posets_isomorphic(P: Poset, Q: Poset) -> bool:
    import networkx as nx
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return False
    return nx.is_isomorphic(cover_digraph(P), cover_digraph(Q))


def schur_poset_shift_isomorphic(n: int, lam: Partition) -> bool:
    """Dropping the 0-diagonal of the rank-n poset leaves the full rank n-1 poset."""
    if len(lam) > n - 1:
        raise ValueError("need l(lambda) <= n - 1")
    return posets_isomorphic(build_schur_poset(n, lam).poset, build_schur_poset(n - 1, lam).poset0)
