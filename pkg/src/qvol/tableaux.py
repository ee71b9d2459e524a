"""Reverse plane partitions, Gelfand-Tsetlin patterns and their generating
functions.

Infinite sums are compared as truncated power series.  An object that
contributes q^d has every entry at most d, so enumerating with total size
at most d is a complete certificate for the first d+1 coefficients whenever
the weight has nonnegative valuation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Sequence

from .constructions import qfact, schur_poset_volume
from .mpoly import MLaurent, Partition, partitions_upto, schur, vandermonde_bar
from .qalg import ONE, QPoly, QRat, QSeries, expand_series, q_pochhammer_scalar, qq_poch
from .qint import SimplexSpec, qint_simplex
from .selberg import SelbergSpec, selberg_closed_form

Cell = tuple[int, int]


# -- shapes -----------------------------------------------------------------------------

@dataclass(frozen=True)
class RPPShape:
    """A (possibly shifted) diagram.  ``diag`` is the number of main-diagonal
    cells (i, i); rdiag reads them from (diag, diag) back to (1, 1)."""

    kind: str
    cells: tuple[Cell, ...]
    nu: Partition | None = None

    @classmethod
    def normal(cls, nu: Partition) -> "RPPShape":
        return cls("normal", tuple(nu.cells()), nu)

    @classmethod
    def shifted(cls, n: int, lam: Partition) -> "RPPShape":
        lp = lam.padded(n)
        cells = tuple((i, j) for i in range(1, n + 1) for j in range(i, n + lp[i - 1] + 1))
        return cls("shifted", cells)

    @classmethod
    def square(cls, n: int, lam: Partition = Partition(()), mu: Partition = Partition(())) -> "RPPShape":
        """(n^n) with lambda attached on the right and mu' below."""
        rows = [n + p for p in lam.padded(n)] + list(mu.transpose().parts)
        nu = Partition(tuple(rows))
        return cls("normal", tuple(nu.cells()), nu)

    @cached_property
    def cellset(self) -> frozenset:
        return frozenset(self.cells)

    @cached_property
    def diag(self) -> int:
        k = 0
        while (k + 1, k + 1) in self.cellset:
            k += 1
        return k

    def hook(self, c: Cell) -> int:
        if self.nu is None:
            raise ValueError("hooks are only defined for ordinary diagrams")
        return self.nu.hook(*c)

    def chi(self, c: Cell) -> int:
        d = self.nu.durfee() if self.nu is not None else self.diag
        return 1 if c[0] <= d and c[1] <= d else 0

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class RPP:
    shape: RPPShape
    entries: tuple[int, ...]

    def __getitem__(self, c: Cell) -> int:
        return self.entries[self.shape.cells.index(c)]

    @property
    def size(self) -> int:
        return sum(self.entries)

    @property
    def rdiag(self) -> Partition:
        d = self.shape.diag
        return Partition(tuple(self[(i, i)] for i in range(d, 0, -1)))

    @property
    def trace(self) -> int:
        return self.rdiag.size

    def is_valid(self) -> bool:
        cs = self.shape.cellset
        vals = dict(zip(self.shape.cells, self.entries))
        for (i, j), v in vals.items():
            if v < 0:
                return False
            for nb in ((i + 1, j), (i, j + 1)):
                if nb in cs and vals[nb] < v:
                    return False
        return True


def rpp_from_rows(shape: RPPShape, rows: Sequence[Sequence[int]]) -> RPP:
    vals = {}
    for i, row in enumerate(rows, 1):
        start = i if shape.kind == "shifted" else 1
        for k, v in enumerate(row):
            vals[(i, start + k)] = v
    if set(vals) != set(shape.cells):
        raise ValueError("rows do not match the shape")
    return RPP(shape, tuple(vals[c] for c in shape.cells))


# -- enumeration ------------------------------------------------------------------------

def _fill(shape: RPPShape, fixed: dict[Cell, int], max_entry: int | None,
          max_size: int | None) -> Iterator[tuple[int, ...]]:
    cells = sorted(shape.cells)
    cs = shape.cellset
    index = {c: k for k, c in enumerate(cells)}
    left = [index.get((i, j - 1)) for i, j in cells]
    up = [index.get((i - 1, j)) for i, j in cells]
    # every cell is bounded by the fixed cells weakly southeast of it
    cap = []
    for (i, j) in cells:
        bounds = [v for (a, b), v in fixed.items() if a >= i and b >= j]
        if max_entry is not None:
            bounds.append(max_entry)
        cap.append(min(bounds) if bounds else None)
    fixed_after = [0] * (len(cells) + 1)
    for k in range(len(cells) - 1, -1, -1):
        fixed_after[k] = fixed_after[k + 1] + fixed.get(cells[k], 0)
    vals = [0] * len(cells)
    n = len(cells)

    def rec(k, total):
        if k == n:
            yield tuple(vals)
            return
        lo = 0
        if left[k] is not None:
            lo = vals[left[k]]
        if up[k] is not None and vals[up[k]] > lo:
            lo = vals[up[k]]
        c = cells[k]
        if c in fixed:
            v = fixed[c]
            if v < lo:
                return
            vals[k] = v
            yield from rec(k + 1, total + v)
            return
        hi = cap[k]
        if max_size is not None:
            room = max_size - total - fixed_after[k + 1]
            hi = room if hi is None else min(hi, room)
        if hi is None:
            raise ValueError("enumeration needs a finite cutoff")
        for v in range(lo, hi + 1):
            vals[k] = v
            yield from rec(k + 1, total + v)

    if all(c in cs for c in fixed):
        order = [shape.cells.index(c) for c in cells]
        for t in rec(0, 0):
            out = [0] * n
            for k, pos in enumerate(order):
                out[pos] = t[k]
            yield tuple(out)


def _rdiag_fixed(shape: RPPShape, rdiag: Partition | None) -> dict[Cell, int]:
    if rdiag is None:
        return {}
    d = shape.diag
    if len(rdiag) > d:
        return {(0, 0): 0}  # impossible constraint, handled by caller
    rp = rdiag.padded(d)
    return {(d + 1 - k, d + 1 - k): rp[k - 1] for k in range(1, d + 1)}


def enumerate_rpp(shape: RPPShape, rdiag: Partition | None = None,
                  max_entry: int | None = None, max_size: int | None = None) -> Iterator[RPP]:
    fixed = _rdiag_fixed(shape, rdiag)
    if (0, 0) in fixed:
        return
    for t in _fill(shape, fixed, max_entry, max_size):
        yield RPP(shape, t)


def rpp_stat_counts(shape: RPPShape, max_size: int, rdiag: Partition | None = None) -> Counter:
    """Counter of (|T|, tr(T), rdiag(T)) over RPPs with |T| <= max_size."""
    out: Counter = Counter()
    for T in enumerate_rpp(shape, rdiag, max_size=max_size):
        out[(T.size, T.trace, T.rdiag.parts)] += 1
    return out


def series_from_stats(counts: Counter, degree: int, a: int = 0) -> QSeries:
    """sum q^{|T| + a tr(T)} from (size, tr, rdiag) counts."""
    c: Counter = Counter()
    for (size, tr, _), k in counts.items():
        c[size + a * tr] += k
    return QSeries.from_counts(c, degree)


def rpp_series(shape: RPPShape, degree: int, a: int = 0, rdiag: Partition | None = None) -> QSeries:
    return series_from_stats(rpp_stat_counts(shape, degree, rdiag), degree, a)


# -- Gelfand-Tsetlin patterns -----------------------------------------------------------

@dataclass(frozen=True)
class GTPattern:
    """Rows j = 1..n, row j holding x_{i,j} for i = 1 - lambda_j .. n + 1 - j."""

    n: int
    lam: Partition
    mu: Partition
    rows: tuple[tuple[int, ...], ...]

    def index_range(self, j: int) -> range:
        return range(1 - self.lam.padded(self.n)[j - 1], self.n + 2 - j)

    def entry(self, i: int, j: int) -> int | None:
        if not 1 <= j <= self.n:
            return None
        rng = self.index_range(j)
        if i not in rng:
            return None
        return self.rows[j - 1][i - rng.start]

    @property
    def size(self) -> int:
        return sum(sum(r) for r in self.rows)

    def is_admissible(self) -> bool:
        mp = self.mu.padded(self.n)
        for j in range(1, self.n + 1):
            rng = self.index_range(j)
            if len(self.rows[j - 1]) != len(rng):
                return False
            for i in rng:
                x = self.entry(i, j)
                if x < 0:
                    return False
                above, right = self.entry(i, j + 1), self.entry(i + 1, j)
                if above is not None and above < x:
                    return False
                if right is not None and x < right:
                    return False
            if self.entry(self.n + 1 - j, j) != mp[self.n - j]:
                return False
        return True

    def to_rpp(self) -> RPP:
        """Rotate by 180 degrees: T(j, c) = x_{n+1-c, j}."""
        shape = RPPShape.shifted(self.n, self.lam)
        return RPP(shape, tuple(self.entry(self.n + 1 - c, j) for j, c in shape.cells))


def gt_from_rows_top_down(n: int, lam: Partition, mu: Partition, rows: Sequence[Sequence[int]]) -> GTPattern:
    """Build a pattern from rows listed top (j = n) to bottom (j = 1)."""
    return GTPattern(n, lam, mu, tuple(tuple(r) for r in reversed(rows)))


def enumerate_gt(n: int, lam: Partition, mu: Partition, max_entry: int | None = None,
                 max_size: int | None = None) -> Iterator[GTPattern]:
    """Patterns filled row by row from the top, each row right to left."""
    lp, mp = lam.padded(n), mu.padded(n)
    ranges = {j: range(1 - lp[j - 1], n + 2 - j) for j in range(1, n + 1)}
    fixed_below = {j: sum(mp[n - k] for k in range(1, j)) for j in range(1, n + 2)}
    rows: dict[int, list[int]] = {}

    def fill_row(j, pos, row, total):
        rng = ranges[j]
        idx = list(rng)
        if pos < 0:
            rows[j] = row[::-1]
            yield from next_row(j - 1, total)
            return
        i = idx[pos]
        if pos == len(idx) - 1:
            v = mp[n - j]
            if j < n and i in ranges[j + 1] and rows[j + 1][i - ranges[j + 1].start] < v:
                return
            yield from fill_row(j, pos - 1, row + [v], total + v)
            return
        lo = row[-1]
        hi = max_entry
        if j < n and i in ranges[j + 1]:
            a = rows[j + 1][i - ranges[j + 1].start]
            hi = a if hi is None else min(hi, a)
        if max_size is not None:
            room = max_size - total - fixed_below[j]
            hi = room if hi is None else min(hi, room)
        if hi is None:
            raise ValueError("enumeration needs a finite cutoff")
        for v in range(lo, hi + 1):
            yield from fill_row(j, pos - 1, row + [v], total + v)

    def next_row(j, total):
        if j == 0:
            yield GTPattern(n, lam, mu, tuple(tuple(rows[k]) for k in range(1, n + 1)))
            return
        yield from fill_row(j, len(ranges[j]) - 1, [], total)

    if n == 0:
        return
    yield from next_row(n, 0)


# -- closed forms -----------------------------------------------------------------------

def _qpt(n: int, mu: Partition) -> dict[str, int]:
    mp = mu.padded(n)
    return {f"x{j}": mp[j - 1] + n - j for j in range(1, n + 1)}


def _names(n: int) -> list[str]:
    return [f"x{j}" for j in range(1, n + 1)]


def schur_delta_at(n: int, lam: Partition, mu: Partition) -> QRat:
    """s_lambda(q^{mu+delta_n}) Dbar(q^{mu+delta_n})."""
    return (schur(lam, _names(n)) * vandermonde_bar(_names(n))).substitute_qpowers(_qpt(n, mu))


def schur_principal(n: int, lam: Partition) -> QRat:
    """s_lambda(1, q, ..., q^{n-1})."""
    return schur(lam, _names(n)).substitute_qpowers({f"x{j}": j - 1 for j in range(1, n + 1)})


def _shifted_b(n: int, lam: Partition) -> int:
    return Partition.delta(n + 1).add(lam, n).b()


def _poch_prod(n: int, lam: Partition) -> QRat:
    lp = lam.padded(n)
    out = ONE
    for j in range(1, n + 1):
        out = out * QRat(qq_poch(lp[j - 1] + n - j))
    return out


def _mu_delta_size(n: int, mu: Partition) -> int:
    return mu.size + comb(n, 2)


def gf_rpp_fixed_rdiag(n: int, lam: Partition, mu: Partition) -> QRat:
    """Closed form for the shifted RPPs of (delta_{n+1}+lambda)^* with rdiag mu."""
    return (QRat.qpow(_mu_delta_size(n, mu) - _shifted_b(n, lam)) / _poch_prod(n, lam)
            * schur_delta_at(n, lam, mu))


def rpp_fixed_rdiag_via_poset(n: int, lam: Partition, mu: Partition) -> QRat:
    """The same sum from the truncated q-volume of the Schur poset:
    q^{|mu+delta| - b} V / (1-q)^{C(n,2)+|lambda|}."""
    N = comb(n, 2) + lam.size
    V = schur_poset_volume(n, lam, mu)
    return QRat.qpow(_mu_delta_size(n, mu) - _shifted_b(n, lam)) * V / QRat(QPoly([1, -1]) ** N)


def gf_gt(n: int, lam: Partition, mu: Partition, form: int = 1) -> QRat:
    if form == 1:
        out = QRat.qpow(mu.size - lam.b()) * schur_principal(n, mu)
        out = out * (schur(lam, _names(n)).substitute_qpowers(_qpt(n, mu)))
        for j in range(1, n + 1):
            out = out * QRat(qq_poch(n - j)) / QRat(qq_poch(lam.padded(n)[j - 1] + n - j))
        return out
    b = Partition.delta(n).add(lam, n).b()
    return QRat.qpow(mu.size - b) / _poch_prod(n, lam) * schur_delta_at(n, lam, mu)


def gf_square_arms(n: int, lam: Partition, mu: Partition, rho: Partition) -> QRat:
    """RPPs of (n^n) + lambda right + mu' below, with rdiag rho."""
    e = comb(n, 2) - _shifted_b(n, lam) - _shifted_b(n, mu) + _mu_delta_size(n, rho)
    names = _names(n)
    f = schur(lam, names) * schur(mu, names) * vandermonde_bar(names) ** 2
    return QRat.qpow(e) / (_poch_prod(n, lam) * _poch_prod(n, mu)) * f.substitute_qpowers(_qpt(n, rho))


def square_arms_via_durfee(n: int, lam: Partition, mu: Partition, rho: Partition) -> QRat:
    """q^{-|rho|} times the two shifted fixed-rdiag sums, each from the Schur poset."""
    return (QRat.qpow(-rho.size) * rpp_fixed_rdiag_via_poset(n, lam, rho)
            * rpp_fixed_rdiag_via_poset(n, mu, rho))


def chain_integral(f: MLaurent, n: int) -> QRat:
    names = tuple(_names(n))
    v = qint_simplex(f, SimplexSpec(names, 0, 1, names))
    return v.constant_value() if isinstance(v, MLaurent) else v


def _xpow(n: int, e: int) -> MLaurent:
    return MLaurent.monomial({v: e for v in _names(n)}) if e else MLaurent.const(1)


def _one_minus_q_pow(k: int) -> QRat:
    return QRat(QPoly([1, -1]) ** k)


def warnaar_integral(n: int, lam: Partition, mu: Partition, alpha: int) -> QRat:
    names = _names(n)
    f = schur(lam, names) * schur(mu, names) * _xpow(n, alpha - 1) * vandermonde_bar(names) ** 2
    return chain_integral(f, n)


def warnaar_closed_form(n: int, lam: Partition, mu: Partition, alpha: int) -> QRat:
    lp, mp = lam.padded(n), mu.padded(n)
    out = _one_minus_q_pow(n) * QRat.qpow(alpha * comb(n, 2) + 2 * comb(n, 3))
    out = out * schur_principal(n, lam) * schur_principal(n, mu)
    for i in range(1, n):
        out = out * QRat(qq_poch(i)) ** 2
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out = out / QRat(QPoly([1]) - QPoly.monomial(alpha + 2 * n - i - j + lp[i - 1] + mp[j - 1]))
    return out


def trace_gf_via_integral(n: int, lam: Partition, mu: Partition, a: int) -> QRat:
    """Trace generating function of RPP(nu) from the integral with x^a."""
    e = (1 - a) * comb(n, 2) - _shifted_b(n, lam) - _shifted_b(n, mu)
    return (QRat.qpow(e) / (_poch_prod(n, lam) * _poch_prod(n, mu))
            * warnaar_integral(n, lam, mu, a + 1) / _one_minus_q_pow(n))


def gf_trace_nu(nu: Partition, a: int) -> QRat:
    """prod over cells of 1/(1 - q^{a chi(u) + h(u)})."""
    shape = RPPShape.normal(nu)
    den = QPoly([1])
    for c in shape.cells:
        den = den * (QPoly([1]) - QPoly.monomial(a * shape.chi(c) + shape.hook(c)))
    return QRat(1, den)


def gf_shifted_trace(n: int, lam: Partition, a: int) -> QRat:
    """Schur-product form of the shifted trace generating function at x = q^a."""
    lp = list(lam.padded(n)) + [0]
    out = QRat.qpow(-lam.b()) * schur_principal(n, lam)
    for j in range(1, n + 1):
        out = out * QRat(qq_poch(j - 1)) / QRat(qq_poch(lp[j - 1] + n - j))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out = out / QRat(QPoly([1]) - QPoly.monomial(a + 1 + 2 * n - i - j + lp[i - 1] + lp[j]))
    return out


def gansner_integral(n: int, lam: Partition, alpha: int) -> QRat:
    names = _names(n)
    return chain_integral(schur(lam, names) * _xpow(n, alpha - 1) * vandermonde_bar(names), n)


def gansner_closed_form(n: int, lam: Partition, alpha: int) -> QRat:
    lp = list(lam.padded(n)) + [0]
    out = _one_minus_q_pow(n) * QRat.qpow(alpha * comb(n, 2) + comb(n, 3)) * schur_principal(n, lam)
    for i in range(1, n):
        out = out * QRat(qq_poch(i))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out = out / QRat(QPoly([1]) - QPoly.monomial(alpha + 2 * n - i - j + lp[i - 1] + lp[j]))
    return out


def shifted_trace_via_integral(n: int, lam: Partition, a: int) -> QRat:
    e = -a * comb(n, 2) - _shifted_b(n, lam)
    return QRat.qpow(e) / _poch_prod(n, lam) * gansner_integral(n, lam, a + 1) / _one_minus_q_pow(n)


# -- square shape with the Selberg-type weight -------------------------------------------

def wt_factor(rdiag: Partition, n: int, b: int, m: int) -> QRat:
    """The part of wt_{a,b,m} that depends only on rdiag."""
    rp = rdiag.padded(n)
    v = [rp[i] + n - 1 - i for i in range(n)]
    out = ONE
    for vi in v:
        out = out * q_pochhammer_scalar(QRat.qpow(vi + 1), b)
    for i in range(n):
        for j in range(i + 1, n):
            num = QRat.qpow(v[j] * (2 * m - 1)) * q_pochhammer_scalar(QRat.qpow(1 - m + v[i] - v[j]), 2 * m - 1)
            out = out * num / (QRat.qpow(v[j]) - QRat.qpow(v[i]))
    return out


def wt_abm(T: RPP, a: int, b: int, m: int) -> QRat:
    cells = T.shape.cells
    n = T.shape.diag
    if T.shape.nu is None or T.shape.nu != Partition((n,) * n) or len(cells) != n * n:
        raise ValueError("wt_{a,b,m} is defined on square shapes")
    return QRat.qpow(T.size + a * T.trace) * wt_factor(T.rdiag, n, b, m)


def square_weighted_series(n: int, a: int, b: int, m: int, degree: int) -> QSeries:
    """sum over RPP(n^n) of wt_{a,b,m}, truncated; grouped by rdiag."""
    shape = RPPShape.square(n)
    by_diag: dict[tuple, Counter] = {}
    for (size, tr, rd), k in rpp_stat_counts(shape, degree).items():
        by_diag.setdefault(rd, Counter())[size + a * tr] += k
    total = QSeries([0], degree)
    for rd in sorted(by_diag):
        fac = wt_factor(Partition(rd), n, b, m)
        if fac.is_zero():
            continue
        total = total + QSeries.from_counts(by_diag[rd], degree) * expand_series(fac, degree)
    return total


def gf_square_weighted(n: int, a: int, b: int, m: int) -> QRat:
    """Product formula for the sum of wt_{a,b,m} over RPP(n^n)."""
    e = (1 - a + m + a * m) * comb(n, 2) - 2 * comb(n + 1, 3) + 2 * m * m * comb(n, 3)
    out = QRat.qpow(e) / _one_minus_q_pow(n * n)
    for j in range(1, n + 1):
        out = out * qfact(a + (j - 1) * m) * qfact(b + (j - 1) * m) * qfact(j * m - 1)
        out = out / (qfact(a + b + (n + j - 2) * m + 1) * qfact(m - 1) * qfact(j - 1) ** 2)
    return out


def square_weighted_via_selberg(n: int, a: int, b: int, m: int) -> QRat:
    e = (-1 - a) * comb(n, 2) - 2 * comb(n, 3)
    den = _one_minus_q_pow(n)
    for j in range(1, n):
        den = den * QRat(qq_poch(j)) ** 2
    return QRat.qpow(e) / den * selberg_closed_form(SelbergSpec(n, a + 1, b + 1, m))


def square_weighted_m1(n: int, a: int, b: int) -> QRat:
    out = ONE / _one_minus_q_pow(n * n)
    for j in range(1, n + 1):
        out = out * qfact(a + j - 1) * qfact(b + j - 1) / (qfact(a + b + n + j - 1) * qfact(j - 1))
    return out


# -- sums over strict points --------------------------------------------------------------

def par_sum_series(f: MLaurent, n: int, degree: int) -> QSeries:
    """sum over mu in Par_n with |mu + delta_n| <= degree of q^{|mu+delta|} f(q^{mu+delta})."""
    total = QSeries([0], degree)
    for mu in partitions_upto(max(degree - comb(n, 2), -1), max_len=n):
        e = _mu_delta_size(n, mu)
        if e > degree:
            continue
        total = total + expand_series(QRat.qpow(e) * f.substitute_qpowers(_qpt(n, mu)), degree)
    return total


def par_integral(f: MLaurent, n: int) -> QRat:
    return chain_integral(f, n) / _one_minus_q_pow(n)
