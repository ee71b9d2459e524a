"""The q-Selberg integral at integer parameters, evaluated by several
independent routes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .constructions import build_selberg_poset, qfact, selberg_size
from .mpoly import MLaurent, X, pochhammer, symmetric_swap, vandermonde_bar
from .poset import Poset, maj_gf
from .qalg import QRat, q_gamma_int
from .qint import SimplexSpec, qint_order_polytope, qint_simplex


@dataclass(frozen=True)
class SelbergSpec:
    n: int
    alpha: int
    beta: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.alpha < 1 or self.beta < 1 or self.m < 1:
            raise ValueError("need n, alpha, beta, m >= 1")

    @property
    def r(self) -> int:
        return self.alpha - 1

    @property
    def s(self) -> int:
        return self.beta - 1

    @property
    def N(self) -> int:
        return selberg_size(self.n, self.r, self.s, self.m)

    @classmethod
    def from_poset_params(cls, n: int, r: int, s: int, m: int) -> "SelbergSpec":
        return cls(n, r + 1, s + 1, m)

    def names(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.n + 1)]


def _pair_factor(xi: MLaurent, xj: MLaurent, lo: int, count: int) -> MLaurent:
    """prod_{k<count} (x_j - q^{lo+k} x_i) = x_j^count (q^lo x_i/x_j; q)_count."""
    out = MLaurent.const(1)
    for k in range(count):
        out = out * (xj - xi * QRat.qpow(lo + k))
    return out


def selberg_integrand(spec: SelbergSpec) -> MLaurent:
    xs = [X(v) for v in spec.names()]
    f = MLaurent.const(1)
    for x in xs:
        f = f * x ** spec.r * pochhammer(x * QRat.qpow(1), spec.s)
    for j in range(spec.n):
        for i in range(j):
            f = f * _pair_factor(xs[i], xs[j], 1 - spec.m, 2 * spec.m - 1)
    return f * vandermonde_bar(spec.names())


def selberg_direct(spec: SelbergSpec) -> QRat:
    """Iterated integral over 0 <= x_1 <= ... <= x_n <= 1, x_1 innermost."""
    names = tuple(spec.names())
    return qint_simplex(selberg_integrand(spec), SimplexSpec(names, 0, 1, names))


def selberg_closed_form(spec: SelbergSpec) -> QRat:
    n, a, b, m = spec.n, spec.alpha, spec.beta, spec.m
    out = QRat.qpow(a * m * comb(n, 2) + 2 * m * m * comb(n, 3))
    for j in range(1, n + 1):
        out = out * q_gamma_int(a + (j - 1) * m) * q_gamma_int(b + (j - 1) * m) * q_gamma_int(j * m)
        out = out / (q_gamma_int(a + b + (n + j - 2) * m) * q_gamma_int(m))
    return out


def _poset_prefactor(spec: SelbergSpec) -> QRat:
    c2 = comb(spec.n, 2)
    return (QRat.qpow(-comb(spec.m, 2) * c2) * qfact(spec.r) ** spec.n
            * qfact(spec.s) ** spec.n * qfact(spec.m) ** (2 * c2))


def selberg_via_poset(spec: SelbergSpec) -> QRat:
    """Prefactor / [N]! times the maj generating function of the Selberg poset."""
    SP = build_selberg_poset(spec.n, spec.r, spec.s, spec.m)
    return _poset_prefactor(spec) * QRat(maj_gf(SP.poset)) / qfact(SP.N)


def selberg_poset_volume(spec: SelbergSpec, method: str = "direct") -> QRat:
    """Prefactor times the q-volume of the Selberg poset in the W order."""
    SP = build_selberg_poset(spec.n, spec.r, spec.s, spec.m)
    vol = qint_order_polytope(MLaurent.const(1), SP.poset, method=method)
    return _poset_prefactor(spec) * vol


def askey_integrand(spec: SelbergSpec) -> MLaurent:
    xs = [X(v) for v in spec.names()]
    f = MLaurent.const(1)
    for x in xs:
        f = f * x ** spec.r * pochhammer(x * QRat.qpow(1), spec.s)
    for j in range(spec.n):
        for i in range(j):
            f = f * _pair_factor(xs[i], xs[j], 1 - spec.m, 2 * spec.m)
    return f


def askey_direct(spec: SelbergSpec) -> QRat:
    """Cube integral as a sum over the n! chains of the antichain."""
    return qint_order_polytope(askey_integrand(spec), Poset.antichain(spec.n))


def askey_iterated(spec: SelbergSpec) -> QRat:
    """Cube integral with each variable over [0, 1] independently."""
    from .qint import qint_1d
    g = askey_integrand(spec)
    for v in spec.names():
        g = qint_1d(g, v, 0, 1)
    return g.constant_value()


def askey_closed_form(spec: SelbergSpec) -> QRat:
    n, a, b, m = spec.n, spec.alpha, spec.beta, spec.m
    out = QRat.qpow(a * m * comb(n, 2) + 2 * m * m * comb(n, 3))
    for j in range(1, n + 1):
        out = out * q_gamma_int(a + (j - 1) * m) * q_gamma_int(b + (j - 1) * m) * q_gamma_int(1 + j * m)
        out = out / (q_gamma_int(a + b + (n + j - 2) * m) * q_gamma_int(1 + m))
    return out


def classical_selberg(n: int, alpha: int, beta: int, gamma: int) -> Fraction:
    """prod Gamma(a+j g) Gamma(b+j g) Gamma(1+(j+1) g) / (Gamma(a+b+(n+j-1) g) Gamma(1+g))."""
    out = Fraction(1)
    for j in range(n):
        out *= Fraction(factorial(alpha + j * gamma - 1) * factorial(beta + j * gamma - 1)
                        * factorial((j + 1) * gamma),
                        factorial(alpha + beta + (n + j - 1) * gamma - 1) * factorial(gamma))
    return out


def closed_form_at_one(spec: SelbergSpec) -> Fraction:
    """q = 1 value of the closed form; every bracket [k]_q becomes k."""
    return selberg_closed_form(spec).at_one()


def quotient_is_antisymmetric(spec: SelbergSpec) -> bool:
    """integrand / Dbar(x) is a polynomial that changes sign under every
    adjacent transposition (so the integrand itself is symmetric)."""
    names = spec.names()
    quot = selberg_integrand(spec).exquo(vandermonde_bar(names))
    return all(symmetric_swap(quot, names[i], names[i + 1]) == -quot for i in range(spec.n - 1))


def split_factor_check(m: int) -> bool:
    """x2^{2m-1}(q^{1-m}x1/x2;q)_{2m-1}(x2-x1) = x2^m(q^{1-m}x1/x2;q)_m x2^m(x1/x2;q)_m."""
    x1, x2 = X("x1"), X("x2")
    lhs = _pair_factor(x1, x2, 1 - m, 2 * m - 1) * (x2 - x1)
    rhs = _pair_factor(x1, x2, 1 - m, m) * _pair_factor(x1, x2, 0, m)
    return lhs == rhs


@dataclass(frozen=True)
class SelbergRoutes:
    spec: SelbergSpec
    values: dict

    @property
    def agree(self) -> bool:
        vals = list(self.values.values())
        return all(v == vals[0] for v in vals)


ROUTES = {
    "direct": selberg_direct,
    "closed": selberg_closed_form,
    "poset": selberg_via_poset,
}


def selberg_routes(spec: SelbergSpec, routes=("direct", "closed", "poset")) -> SelbergRoutes:
    return SelbergRoutes(spec, {r: ROUTES[r](spec) for r in routes})


def small_poset_specs(max_size: int = 8) -> list[SelbergSpec]:
    """Every (n, r, s, m) whose Selberg poset has at most ``max_size`` elements."""
    out = []
    for n in range(1, max_size + 1):
        for m in range(1, max_size + 1):
            if n * 1 + 2 * m * comb(n, 2) > max_size:
                continue
            for r in range(max_size):
                for s in range(max_size):
                    if selberg_size(n, r, s, m) <= max_size:
                        if n == 1 and m > 1:
                            continue  # m plays no role without pairs
                        out.append(SelbergSpec.from_poset_params(n, r, s, m))
    return out
