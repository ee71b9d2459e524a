"""Finite posets on {1..n}, labelings, linear extensions and (P, omega)-partitions."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterator, Sequence

from .qalg import QPoly

DEFAULT_MAX_EXTENSIONS = 10 ** 7


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured cap."""


class PosetError(ValueError):
    pass


# -- permutation statistics ---------------------------------------------------

def descents(w: Sequence[int]) -> list[int]:
    """1-based descent positions of a word."""
    return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]


def des(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def maj(w: Sequence[int]) -> int:
    return sum(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def inv(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def inverse_perm(w: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(w)
    for i, v in enumerate(w, 1):
        out[v - 1] = i
    return tuple(out)


def poly_from_counts(counts: Counter | dict) -> QPoly:
    if not counts:
        return QPoly()
    top = max(counts)
    cs = [0] * (top + 1)
    for k, c in counts.items():
        cs[k] += c
    return QPoly(cs)


# -- poset ----------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """Strict partial order on elements 1..n given by (i, j) pairs meaning x_i < x_j.

    ``relations`` may be any generating set; ``covers`` is the transitive
    reduction.  ``names`` optionally maps each element to a variable name
    (defaults to ``x1..xn``).
    """

    n: int
    relations: tuple[tuple[int, int], ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rel = tuple(sorted({(int(i), int(j)) for i, j in self.relations}))
        for i, j in rel:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise PosetError(f"bad relation ({i},{j}) for n={self.n}")
        object.__setattr__(self, "relations", rel)
        if self.names is not None and len(self.names) != self.n:
            raise PosetError("names must have one entry per element")
        # closure check for cycles
        up = self.up_masks
        for i in range(self.n):
            if up[i] >> i & 1:
                raise PosetError("relations contain a cycle")

    # closure as bitmasks: up_masks[i] = set of j (0-based) with x_{i+1} < x_{j+1}
    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        n = self.n
        up = [0] * n
        for i, j in self.relations:
            up[i - 1] |= 1 << (j - 1)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                acc = m
                k = m
                while k:
                    b = k & -k
                    acc |= up[b.bit_length() - 1]
                    k ^= b
                if acc != m:
                    up[i] = acc
                    changed = True
        return tuple(up)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, m in enumerate(self.up_masks):
            k = m
            while k:
                b = k & -k
                down[b.bit_length() - 1] |= 1 << i
                k ^= b
        return tuple(down)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        up = self.up_masks
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if up[i] >> j & 1:
                    # cover iff no k with i<k<j
                    if not any(up[i] >> k & 1 and up[k] >> j & 1 for k in range(self.n)):
                        out.append((i + 1, j + 1))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lc = [[] for _ in range(self.n)]
        for i, j in self.covers:
            lc[j - 1].append(i)
        return tuple(tuple(x) for x in lc)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        uc = [[] for _ in range(self.n)]
        for i, j in self.covers:
            uc[i - 1].append(j)
        return tuple(tuple(x) for x in uc)

    def less(self, i: int, j: int) -> bool:
        """x_i <_P x_j."""
        return bool(self.up_masks[i - 1] >> (j - 1) & 1)

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.less(i, j) or self.less(j, i)

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 1) if self.less(i, j)]

    def name(self, i: int) -> str:
        return self.names[i - 1] if self.names else f"x{i}"

    @property
    def var_names(self) -> list[str]:
        return [self.name(i) for i in range(1, self.n + 1)]

    # -- constructors / transforms -----------------------------------------------
    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, ())

    @classmethod
    def chain(cls, order: Sequence[int]) -> "Poset":
        """Chain x_{order[0]} < x_{order[1]} < ..."""
        n = len(order)
        return cls(n, tuple((order[k], order[k + 1]) for k in range(n - 1)))

    def dual(self) -> "Poset":
        return Poset(self.n, tuple((j, i) for i, j in self.covers), self.names)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Rename element i to perm[i-1]."""
        names = None
        if self.names:
            names = [None] * self.n
            for i, p in enumerate(perm, 1):
                names[p - 1] = self.names[i - 1]
            names = tuple(names)
        return Poset(self.n, tuple((perm[i - 1], perm[j - 1]) for i, j in self.covers), names)

    def add_minimum(self) -> "Poset":
        """New element 1 below everything; old element i becomes i+1."""
        rel = [(i + 1, j + 1) for i, j in self.covers]
        rel += [(1, i + 1) for i in range(1, self.n + 1)]
        names = None
        if self.names:
            names = ("x0",) + self.names
        return Poset(self.n + 1, tuple(rel), names)

    def with_names(self, names: Sequence[str]) -> "Poset":
        return Poset(self.n, self.relations, tuple(names))

    def is_natural(self, omega: Sequence[int] | None = None) -> bool:
        w = omega or tuple(range(1, self.n + 1))
        return all(w[i - 1] < w[j - 1] for i, j in self.covers)

    def is_forest(self) -> bool:
        """Every element has at most one upper cover."""
        return all(len(u) <= 1 for u in self.upper_covers)

    def to_json(self, omega: Sequence[int] | None = None) -> dict:
        d = {"n": self.n, "covers": [list(c) for c in self.covers]}
        if omega is not None:
            d["omega"] = list(omega)
        return d

    @classmethod
    def from_json(cls, data: dict) -> tuple["Poset", tuple[int, ...]]:
        n = int(data["n"])
        p = cls(n, tuple(tuple(c) for c in data.get("covers", ())))
        omega = tuple(data.get("omega") or range(1, n + 1))
        check_labeling(omega, n)
        return p, omega

    def __str__(self):
        return f"Poset(n={self.n}, covers={list(self.covers)})"


def check_labeling(omega: Sequence[int], n: int) -> None:
    if sorted(omega) != list(range(1, n + 1)):
        raise PosetError(f"labeling {list(omega)} is not a bijection onto 1..{n}")


def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


# -- linear extensions ------------------------------------------------------------

def count_linear_extensions(P: Poset) -> int:
    """Exact count via the down-set recursion."""
    n = P.n
    down = P.down_masks
    full = (1 << n) - 1
    ways = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for mask, c in ways.items():
            for i in range(n):
                if not mask >> i & 1 and down[i] & ~mask == 0:
                    m2 = mask | 1 << i
                    nxt[m2] = nxt.get(m2, 0) + c
        ways = nxt
    return ways.get(full, 0)


def linear_extensions(P: Poset, omega: Sequence[int] | None = None,
                      cap: int | None = DEFAULT_MAX_EXTENSIONS,
                      first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield the Jordan-Hoelder words omega(t_1)...omega(t_n) in lexicographic
    order of the underlying element sequence.

    ``first`` restricts to extensions starting with that element, which lets
    callers partition the traversal.
    """
    n = P.n
    w = tuple(omega) if omega else _identity(n)
    check_labeling(w, n)
    if cap is not None:
        total = count_linear_extensions(P)
        if total > cap:
            raise CapExceeded(f"{total} linear extensions exceed the cap {cap}")
    down = P.down_masks
    seq: list[int] = []

    def rec(mask):
        if len(seq) == n:
            yield tuple(w[t - 1] for t in seq)
            return
        cands = range(n) if not (first is not None and not seq) else [first - 1]
        for i in cands:
            if not mask >> i & 1 and down[i] & ~mask == 0:
                seq.append(i + 1)
                yield from rec(mask | 1 << i)
                seq.pop()

    yield from rec(0)


def count_extensions_recursive(P: Poset) -> int:
    """Delete-a-minimal-element recursion; an independent oracle for counts."""
    def rec(elems: frozenset) -> int:
        if not elems:
            return 1
        total = 0
        for x in elems:
            if not any(P.less(y, x) for y in elems):
                total += rec(elems - {x})
        return total

    return rec(frozenset(range(1, P.n + 1)))


def _stat_dp(P: Poset, omega: Sequence[int] | None, track_des: bool):
    """Down-set DP; returns Counter of maj (or (des, maj)) over L(P, omega)."""
    n = P.n
    w = tuple(omega) if omega else _identity(n)
    check_labeling(w, n)
    down = P.down_masks
    # state: (mask, last) -> Counter
    states: dict = {(0, -1): Counter({(0, 0): 1})}
    for pos in range(n):
        nxt: dict = {}
        for (mask, last), cnt in states.items():
            for i in range(n):
                if mask >> i & 1 or down[i] & ~mask:
                    continue
                is_des = last >= 0 and w[last] > w[i]
                key = (mask | 1 << i, i)
                tgt = nxt.setdefault(key, Counter())
                for (d, mj), c in cnt.items():
                    if is_des:
                        tgt[(d + 1, mj + pos)] += c
                    else:
                        tgt[(d, mj)] += c
        states = nxt
    total: Counter = Counter()
    for cnt in states.values():
        total.update(cnt)
    if track_des:
        return total
    out: Counter = Counter()
    for (d, mj), c in total.items():
        out[mj] += c
    return out


def maj_gf(P: Poset, omega: Sequence[int] | None = None) -> QPoly:
    """sum over L(P, omega) of q^maj."""
    return poly_from_counts(_stat_dp(P, omega, False))


def maj_gf_enum(P: Poset, omega: Sequence[int] | None = None, cap: int | None = DEFAULT_MAX_EXTENSIONS) -> QPoly:
    return poly_from_counts(Counter(maj(w) for w in linear_extensions(P, omega, cap)))


def des_maj_table(P: Poset, omega: Sequence[int] | None = None) -> dict[int, QPoly]:
    """des -> polynomial in q of maj over extensions with that many descents."""
    tab: dict[int, Counter] = {}
    for (d, mj), c in _stat_dp(P, omega, True).items():
        tab.setdefault(d, Counter())[mj] += c
    return {d: poly_from_counts(c) for d, c in sorted(tab.items())}


# -- (P, omega)-partitions ---------------------------------------------------------

def _topological_order(P: Poset) -> list[int]:
    return list(next(linear_extensions(P, None, cap=None)))


def ppartition_gf_bounded(P: Poset, omega: Sequence[int] | None,
                          lower: Sequence[int], upper: Sequence[int],
                          weights: Sequence[int] | None = None) -> QPoly:
    """Sum of q^{sum_i w_i sigma(x_i)} over (P, omega)-partitions with
    lower[i] <= sigma(x_i) < upper[i]  (weights default to 1).

    Dynamic programming along a linear extension, keeping only the values
    of already placed elements that still have unplaced upper covers.
    """
    n = P.n
    w = tuple(omega) if omega else _identity(n)
    check_labeling(w, n)
    wt = tuple(weights) if weights else (1,) * n
    if any(upper[i] <= lower[i] for i in range(n)):
        return QPoly()
    order = _topological_order(P)
    pos = {x: k for k, x in enumerate(order)}
    # last time each element is needed
    last_use = {x: pos[x] for x in order}
    for x in order:
        for y in P.upper_covers[x - 1]:
            last_use[x] = max(last_use[x], pos[y])
    active: list[int] = []
    states: dict[tuple, Counter] = {(): Counter({0: 1})}
    for k, x in enumerate(order):
        lo, hi = lower[x - 1], upper[x - 1] - 1
        lcs = P.lower_covers[x - 1]
        idx = [active.index(y) for y in lcs]
        strict = [w[y - 1] > w[x - 1] for y in lcs]
        new_active = active + [x]
        keep = [i for i, y in enumerate(new_active) if last_use[y] > k]
        nxt: dict[tuple, Counter] = {}
        for vals, cnt in states.items():
            top = hi
            for i, s in zip(idx, strict):
                top = min(top, vals[i] - 1 if s else vals[i])
            for v in range(lo, top + 1):
                full = vals + (v,)
                key = tuple(full[i] for i in keep)
                tgt = nxt.get(key)
                if tgt is None:
                    tgt = nxt[key] = Counter()
                sh = wt[x - 1] * v
                for e, c in cnt.items():
                    tgt[e + sh] += c
        states = nxt
        active = [new_active[i] for i in keep]
    total: Counter = Counter()
    for cnt in states.values():
        total.update(cnt)
    if total and min(total) < 0:
        raise PosetError("negative weights are not supported")
    return poly_from_counts(total)


def ppartitions_bruteforce(P: Poset, omega: Sequence[int] | None,
                           lower: Sequence[int], upper: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Plain nested-loop enumeration of bounded (P, omega)-partitions."""
    from itertools import product
    n = P.n
    w = tuple(omega) if omega else _identity(n)
    pairs = P.strict_pairs()
    for sig in product(*(range(lower[i], upper[i]) for i in range(n))):
        ok = True
        for i, j in pairs:
            a, b = sig[i - 1], sig[j - 1]
            if a < b or (a == b and w[i - 1] > w[j - 1]):
                ok = False
                break
        if ok:
            yield sig


# -- generating posets -------------------------------------------------------------

def _canonical_key(n: int, pairs: frozenset) -> tuple:
    best = None
    for p in permutations(range(1, n + 1)):
        key = tuple(sorted((p[i - 1], p[j - 1]) for i, j in pairs))
        if best is None or key < best:
            best = key
    return best


def naturally_labeled_posets(n: int) -> Iterator[Poset]:
    """All posets on 1..n whose identity labeling is natural (i < j only)."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if all((i, l) in rel for (i, j) in rel for (k, l) in rel if j == k):
            yield Poset(n, tuple(sorted(rel)))


def posets_up_to_iso(n: int) -> list[Poset]:
    """One naturally labeled representative per isomorphism class, in a
    deterministic order (by number of relations, then canonical key)."""
    seen: dict[tuple, Poset] = {}
    for P in naturally_labeled_posets(n):
        key = _canonical_key(n, frozenset(P.strict_pairs()))
        if key not in seen:
            seen[key] = P
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


def all_labeled_posets(n: int) -> list[Poset]:
    """Every poset on 1..n (distinct relation sets)."""
    out: dict[tuple, Poset] = {}
    for P in posets_up_to_iso(n):
        for p in permutations(range(1, n + 1)):
            Q = P.relabel(p)
            out.setdefault(tuple(sorted(Q.strict_pairs())), Q)
    return [out[k] for k in sorted(out)]


def random_poset(n: int, rng, density: float = 0.4) -> Poset:
    """Random DAG closure, then a random relabeling."""
    rel = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < density]
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return Poset(n, tuple(rel)).relabel(perm)


def load_poset(path: str) -> tuple[Poset, tuple[int, ...]]:
    with open(path) as fh:
        return Poset.from_json(json.load(fh))
