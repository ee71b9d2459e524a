"""q-Ehrhart functions and series of Delta(P).

Delta(P) is the set of x in [0,1]^n with x_i >= x_j whenever x_i <=_P x_j,
strictly when additionally i > j.  Two-variable objects are kept as lists of
coefficients in t with q-rational entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .constructions import qfact
from .mpoly import MLaurent, X
from .poset import Poset, des_maj_table, ppartition_gf_bounded
from .qalg import ONE, ZERO, QPoly, QRat, q_binomial, q_int
from .qint import QDomain, qint_order_polytope, qsum_domain


class EhrhartError(ArithmeticError):
    """Two evaluations of the same Ehrhart quantity disagree."""


@dataclass(frozen=True)
class QEhrhartPolynomial:
    """E(m) = sum_k coeffs[k] * [m]_q^k."""

    coeffs: tuple[QRat, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> QRat:
        return self.coeffs[-1]

    def __call__(self, m: int) -> QRat:
        y = q_int(m)
        out, p = ZERO, ONE
        for c in self.coeffs:
            out = out + c * p
            p = p * y
        return out

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def _one_minus_q_pow(k: int) -> QRat:
    return QRat(QPoly([1, -1]) ** k)


def eq_ehrhart_lattice(P: Poset, m: int) -> QPoly:
    """Sum of q^{|sigma|} over (P, omega_n)-partitions with max <= m."""
    n = P.n
    return ppartition_gf_bounded(P, None, [0] * n, [m + 1] * n)


def eq_ehrhart_maj(P: Poset, m: int) -> QPoly:
    """sum over L(P) of q^maj * qbinom(m + n - des, n)."""
    n = P.n
    out = QPoly()
    for d, poly in des_maj_table(P).items():
        out = out + poly * q_binomial(m + n - d, n)
    return out


def eq_ehrhart(P: Poset, m: int) -> QPoly:
    if m < 0:
        raise ValueError("dilation must be nonnegative")
    a, b = eq_ehrhart_lattice(P, m), eq_ehrhart_maj(P, m)
    if a != b:
        raise EhrhartError(f"lattice sum {a} differs from the maj/des formula {b}")
    return a


def delta_points(P: Poset, m: int):
    """Lattice points of m * Delta(P), straight from the inequalities."""
    pairs = P.strict_pairs()
    for x in product(range(m + 1), repeat=P.n):
        if all(x[i - 1] > x[j - 1] if i > j else x[i - 1] >= x[j - 1] for i, j in pairs):
            yield x


def order_polytope_points(P: Poset, m: int):
    """Lattice points of m * O(P): x_i <= x_j whenever x_i <=_P x_j."""
    pairs = P.strict_pairs()
    for x in product(range(m + 1), repeat=P.n):
        if all(x[i - 1] <= x[j - 1] for i, j in pairs):
            yield x


def _points_poly(points) -> QPoly:
    cs: list[int] = []
    for x in points:
        s = sum(x)
        if s >= len(cs):
            cs += [0] * (s + 1 - len(cs))
        cs[s] += 1
    return QPoly(cs)


def eq_ehrhart_bruteforce(P: Poset, m: int) -> QPoly:
    return _points_poly(delta_points(P, m))


def eq_ehrhart_order_polytope(P: Poset, m: int) -> QPoly:
    return _points_poly(order_polytope_points(P, m))


def eq_ehrhart_volume(P: Poset, m: int, method: str = "sum") -> QRat:
    """(1-q)^{-n} times the q-volume of O(P) inside [q^{m+1}, 1]^n."""
    n = P.n
    if method == "sum":
        D = QDomain(n, (m + 1,) * n, (0,) * n, tuple((i, j, 0) for i, j in P.covers))
        vol = qsum_domain(MLaurent.const(1), D)
    else:
        vol = qint_order_polytope(MLaurent.const(1), P, r=m + 1, s=0, method="direct")
    return vol / _one_minus_q_pow(n)


def _solve(rows: list[list[QRat]], rhs: list[QRat]) -> list[QRat]:
    """Gauss-Jordan elimination over QRat for a square nonsingular system."""
    n = len(rows)
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if not a[i][col].is_zero())
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for i in range(n):
            if i != col and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def fit_in_qint(values: Callable[[int], QRat | QPoly], degree: int, extra: int | None = None) -> QEhrhartPolynomial:
    """Interpolate values(m) at m = 0..degree as a polynomial in [m]_q and
    confirm it at ``extra`` further points (default ``degree``)."""
    ys = [q_int(m) for m in range(degree + 1)]
    rows = [[y ** k for k in range(degree + 1)] for y in ys]
    rhs = [QRat(values(m)) if not isinstance(values(m), QRat) else values(m) for m in range(degree + 1)]
    E = QEhrhartPolynomial(tuple(_solve(rows, rhs)))
    extra = degree if extra is None else extra
    for m in range(degree + 1, degree + 1 + extra):
        got = values(m)
        if E(m) != (got if isinstance(got, QRat) else QRat(got)):
            raise EhrhartError(f"interpolant disagrees with the function at m={m}")
    return E


def fit_ehrhart_polynomial(P: Poset) -> QEhrhartPolynomial:
    """Interpolate at m = 0..n and confirm at 2n further dilations."""
    return fit_in_qint(lambda m: eq_ehrhart(P, m), P.n, 2 * P.n)


def leading_coefficient_formula(P: Poset) -> QRat:
    """Top coefficient in [m]_q: each qbinom(m+n-d, n) contributes
    q^{C(n+1,2) - n d} / [n]_q! since [m+j]_q = [j]_q + q^j [m]_q."""
    n = P.n
    out = ZERO
    for d, poly in des_maj_table(P).items():
        out = out + QRat(poly) * QRat.qpow(n * (n + 1) // 2 - n * d)
    return out / qfact(n)


def limit_coefficient(E: QEhrhartPolynomial) -> QRat:
    """lim_{m -> oo} E(m) / [m]_q^n = sum_k c_k (1-q)^{n-k} for 0 < q < 1."""
    n = E.degree
    out = ZERO
    for k, c in enumerate(E.coeffs):
        out = out + c * _one_minus_q_pow(n - k)
    return out


def chapoton_volume(P: Poset) -> QRat:
    """[n]_q! times the leading coefficient of E_q(O(P), m), found by
    fitting brute-force lattice counts."""
    E = fit_in_qint(lambda m: eq_ehrhart_order_polytope(P, m), P.n)
    return qfact(P.n) * E.leading


# -- series in t ------------------------------------------------------------------------

@dataclass(frozen=True)
class EhrhartSeries:
    """sum_d numerator[d] t^d / (t; q)_{n+1}."""

    numerator: dict
    n: int

    def t_coefficients(self, order: int) -> list[QPoly]:
        """Coefficients of t^0..t^order."""
        # 1/(t;q)_{n+1} = prod_i sum_k t^k q^{ik}
        inv = [QPoly([1])] + [QPoly()] * order
        for i in range(self.n + 1):
            new = [QPoly()] * (order + 1)
            for a in range(order + 1):
                if inv[a].is_zero():
                    continue
                for k in range(order + 1 - a):
                    new[a + k] = new[a + k] + inv[a] * QPoly.monomial(i * k)
            inv = new
        out = [QPoly()] * (order + 1)
        for d, poly in self.numerator.items():
            for a in range(order + 1 - d):
                out[d + a] = out[d + a] + poly * inv[a]
        return out

    def at_qpower(self, s: int) -> QRat:
        """Value at t = q^s."""
        num = ZERO
        for d, poly in self.numerator.items():
            num = num + QRat(poly) * QRat.qpow(s * d)
        den = ONE
        for i in range(self.n + 1):
            den = den * (ONE - QRat.qpow(s + i))
        return num / den

    def to_json(self) -> dict:
        return {"n": self.n, "numerator": {str(d): p.to_json() for d, p in sorted(self.numerator.items())}}


def ehrhart_series(P: Poset) -> EhrhartSeries:
    return EhrhartSeries(des_maj_table(P), P.n)


def ehrhart_series_matches(P: Poset, order: int = 6) -> bool:
    coeffs = ehrhart_series(P).t_coefficients(order)
    return all(coeffs[m] == eq_ehrhart(P, m) for m in range(order + 1))


def ehrhart_series_integral(P: Poset, s: int) -> QRat:
    """(1-q)^{-(n+1)} times the integral of x0^{s-1} over O(P'), where P' has
    a new minimum x0 integrated first."""
    if s < 1:
        raise ValueError("only t = q^s with s >= 1 is supported")
    Pp = P.add_minimum().with_names(["x0"] + [f"x{i}" for i in range(1, P.n + 1)])
    vol = qint_order_polytope(X("x0") ** (s - 1), Pp)
    return vol / _one_minus_q_pow(P.n + 1)


def ehrhart_series_integral_check(P: Poset, s: int) -> tuple[QRat, QRat]:
    return ehrhart_series(P).at_qpower(s), ehrhart_series_integral(P, s)


def qbinom_series_check(n: int, d: int, order: int = 8) -> bool:
    """sum_m t^m qbinom(m+n-d, n) = t^d / (t;q)_{n+1} as t-series."""
    lhs = [q_binomial(m + n - d, n) for m in range(order + 1)]
    rhs = EhrhartSeries({d: QPoly([1])}, n).t_coefficients(order)
    return lhs == rhs


def macmahon_check(n: int, order: int = 6) -> bool:
    """For the antichain the series coefficients are [m+1]_q^n."""
    coeffs = ehrhart_series(Poset.antichain(n)).t_coefficients(order)
    return all(coeffs[m] == QPoly([1] * (m + 1)) ** n for m in range(order + 1))
