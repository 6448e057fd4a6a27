"""
Permutations of [1..n] in one-line notation, the right weak order, the strong
Bruhat order and Demazure products.

Position ``i`` (1-based) of a permutation holds ``w(i)``. Multiplying by the
simple transposition ``tau_i`` on the right swaps the entries in positions
``i`` and ``i+1``.

>>> w = Permutation([5, 1, 3, 2, 4])
>>> sorted(w.inversions())
[(1, 5), (2, 3), (2, 5), (3, 5), (4, 5)]
>>> w.length()
5
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "PairSet",
    "identity",
    "longest",
    "all_permutations",
    "from_inversions",
    "from_noninversions",
    "weak_leq",
    "weak_covers_up",
    "weak_covers_down",
    "weak_join",
    "weak_meet",
    "interval",
    "bruhat_leq",
    "demazure_product",
    "transitive_closure",
]

# set of pairs (a, b) with 1 <= a < b <= n
PairSet = frozenset


@lru_cache(maxsize=1 << 16)
def _pair_sets(word: tuple) -> tuple[frozenset, frozenset]:
    # (inversions, noninversions); cached since the harness asks for the same permutations many times
    n = len(word)
    pos = [0] * (n + 1)
    for i, v in enumerate(word):
        pos[v] = i
    inv, ninv = [], []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            (inv if pos[b] < pos[a] else ninv).append((a, b))
    return frozenset(inv), frozenset(ninv)


class Permutation(tuple):
    """
    A permutation of [1..n], stored as its one-line word.

    Being a tuple, it hashes, compares and serializes like one. Comparison
    operators are tuple comparisons; use :func:`weak_leq` or
    :func:`bruhat_leq` for the orders.
    """

    __slots__ = ()

    def __new__(cls, word: Iterable[int] = ()):
        word = tuple(int(v) for v in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word!r} is not a permutation of 1..{len(word)}")
        return super().__new__(cls, word)

    @classmethod
    def _trusted(cls, word: Iterable[int]) -> "Permutation":
        return super().__new__(cls, tuple(word))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Read ``"23145"``, ``"2,3,1,4,5"`` or ``"[2, 3, 1, 4, 5]"``."""
        text = text.strip().strip("[]")
        if "," in text or " " in text.strip():
            parts = [p for p in text.replace(",", " ").split() if p]
        else:
            parts = list(text)
        return cls(int(p) for p in parts)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __repr__(self) -> str:
        return f"Permutation({list(self)!r})"

    def __str__(self) -> str:
        if len(self) < 10:
            return "".join(map(str, self))
        return " ".join(map(str, self))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation._trusted(inv)

    def positions(self) -> list[int]:
        """``positions()[v]`` is the 1-based position of value ``v`` (index 0 unused)."""
        pos = [0] * (len(self) + 1)
        for i, v in enumerate(self):
            pos[v] = i + 1
        return pos

    def compose(self, other: "Permutation") -> "Permutation":
        """The product ``self * other``, i.e. ``i -> self(other(i))``."""
        return Permutation._trusted(self[j - 1] for j in other)

    def times_simple(self, i: int) -> "Permutation":
        """Right multiplication by ``tau_i``: swap positions ``i`` and ``i+1``."""
        w = list(self)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation._trusted(w)

    def inversions(self) -> frozenset:
        """Pairs ``(a, b)``, ``a < b``, such that ``b`` appears before ``a``."""
        return _pair_sets(self)[0]

    def noninversions(self) -> frozenset:
        return _pair_sets(self)[1]

    def length(self) -> int:
        w = self
        return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])

    def is_inversion(self, a: int, b: int) -> bool:
        """Whether ``(min, max)`` of the two values is an inversion."""
        if a > b:
            a, b = b, a
        return self.index(b) < self.index(a)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def longest(n: int) -> Permutation:
    return Permutation._trusted(range(n, 0, -1))


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n, sorted by length then lexicographically."""
    perms = [Permutation._trusted(p) for p in permutations(range(1, n + 1))]
    return sorted(perms, key=lambda p: (p.length(), p))


def _from_before(n: int, before) -> Permutation:
    # before(a, b) for a < b says whether a precedes b
    pos = [0] * (n + 1)
    for v in range(1, n + 1):
        ahead = sum(1 for u in range(1, v) if before(u, v))
        ahead += sum(1 for u in range(v + 1, n + 1) if not before(v, u))
        pos[v] = ahead + 1
    word = [0] * n
    for v in range(1, n + 1):
        if not 1 <= pos[v] <= n or word[pos[v] - 1]:
            raise ValueError("pair set is not the inversion set of a permutation")
        word[pos[v] - 1] = v
    w = Permutation._trusted(word)
    return w


def from_inversions(n: int, inv: Iterable[tuple[int, int]]) -> Permutation:
    """The permutation whose inversion set is ``inv``; raises if there is none."""
    inv = frozenset(inv)
    w = _from_before(n, lambda a, b: (a, b) not in inv)
    if w.inversions() != inv:
        raise ValueError("pair set is not the inversion set of a permutation")
    return w


def from_noninversions(n: int, ninv: Iterable[tuple[int, int]]) -> Permutation:
    ninv = frozenset(ninv)
    w = _from_before(n, lambda a, b: (a, b) in ninv)
    if w.noninversions() != ninv:
        raise ValueError("pair set is not the noninversion set of a permutation")
    return w


def _check_same_size(p: Sequence[int], s: Sequence[int]) -> None:
    if len(p) != len(s):
        raise ValueError(f"size mismatch: {len(p)} vs {len(s)}")


def weak_leq(p: Permutation, s: Permutation) -> bool:
    """Right weak order: inclusion of inversion sets."""
    _check_same_size(p, s)
    return p.inversions() <= s.inversions()


def weak_covers_up(p: Permutation) -> set[Permutation]:
    return {p.times_simple(i) for i in range(1, len(p)) if p[i - 1] < p[i]}


def weak_covers_down(p: Permutation) -> set[Permutation]:
    return {p.times_simple(i) for i in range(1, len(p)) if p[i - 1] > p[i]}


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Transitive closure of a relation on [1..n] given as ordered pairs."""
    reach = [[False] * (n + 1) for _ in range(n + 1)]
    for a, b in pairs:
        reach[a][b] = True
    for k in range(1, n + 1):
        rk = reach[k]
        for i in range(1, n + 1):
            ri = reach[i]
            if ri[k]:
                for j in range(1, n + 1):
                    if rk[j]:
                        ri[j] = True
    return {(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if reach[i][j]}


@lru_cache(maxsize=65536)
def weak_join(p: Permutation, s: Permutation) -> Permutation:
    """
    Least upper bound in the weak order.

    The inversion set of the join is the transitive closure of the union of
    the two inversion sets, read as "``b`` precedes ``a``" relations.
    """
    _check_same_size(p, s)
    n = len(p)
    precedes = {(b, a) for a, b in p.inversions() | s.inversions()}
    closed = transitive_closure(n, precedes)
    return from_inversions(n, {(a, b) for b, a in closed})


@lru_cache(maxsize=65536)
def weak_meet(p: Permutation, s: Permutation) -> Permutation:
    """Greatest lower bound in the weak order, dually through noninversions."""
    _check_same_size(p, s)
    n = len(p)
    closed = transitive_closure(n, p.noninversions() | s.noninversions())
    return from_noninversions(n, closed)


def interval(w: Permutation, bottom: Permutation | None = None) -> list[Permutation]:
    """The weak order interval ``[bottom, w]`` (``bottom`` defaults to the identity)."""
    n = len(w)
    if bottom is None:
        bottom = identity(n)
    seen = {bottom}
    stack = [bottom]
    inv_w = w.inversions()
    while stack:
        p = stack.pop()
        for s in weak_covers_up(p):
            if s not in seen and s.inversions() <= inv_w:
                seen.add(s)
                stack.append(s)
    if not weak_leq(bottom, w):
        return []
    return sorted(seen, key=lambda p: (p.length(), p))


@lru_cache(maxsize=4096)
def _rank_table(w: tuple) -> tuple[tuple[int, ...], ...]:
    # r[i][j] = #{a <= i : w(a) >= j}
    n = len(w)
    table = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        prev, row, v = table[i - 1], table[i], w[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if v >= j else 0)
    return tuple(tuple(row) for row in table)


def bruhat_leq(p: Sequence[int], s: Sequence[int]) -> bool:
    """Strong Bruhat order via dominance of rank tables."""
    _check_same_size(p, s)
    n = len(p)
    rp, rs = _rank_table(tuple(p)), _rank_table(tuple(s))
    for i in range(1, n + 1):
        a, b = rp[i], rs[i]
        for j in range(1, n + 1):
            if a[j] > b[j]:
                return False
    return True


def demazure_product(word: Iterable[int], n: int) -> Permutation:
    """
    Product of ``tau_i`` for ``i`` in ``word``, left to right, where a letter
    is applied only when it makes the permutation longer.

    >>> demazure_product([1, 2, 1], 3)
    Permutation([3, 2, 1])
    >>> demazure_product([1, 1], 2)
    Permutation([2, 1])
    """
    w = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"generator index {i} out of range for S_{n}")
        if w[i - 1] < w[i]:
            w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation._trusted(w)


def iter_subword_products(word: Sequence[int], n: int) -> Iterator[Permutation]:
    """Products of every subword of ``word`` (as plain group products)."""
    for mask in range(1 << len(word)):
        w = list(range(1, n + 1))
        for k, i in enumerate(word):
            if mask >> k & 1:
                w[i - 1], w[i] = w[i], w[i - 1]
        yield Permutation._trusted(w)
