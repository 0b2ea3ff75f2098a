"""Partial-rank sequences B_sigma(k) and the hit-set A_sigma.

For a permutation sigma of [n] (we keep the 0-indexed Permutation and
shift: sigma(q) below means image[q-1] compared as integers),

    B_sigma(k) = #{1 <= q <= k : sigma(q) <= sigma(k)},   1 <= k <= n
    A_sigma    = {B_sigma(k) : k in [n]}

B_sigma(k) is the rank of sigma(k) among the first k values, so
B_sigma(1) = 1 always.  b_of_k is the same quantity for the ranking of
{alpha*q} directly, with exact comparisons; it agrees with a_set applied
to sos_perm.

The gap machinery: max_gap is the largest spacing between consecutive
elements of A (with sentinels 0 and n+1), so "every interval of length L
inside [1, n] meets A" is exactly max_gap <= L.  gap_check verifies that
with L = ceil(sqrt(32*n*D)) for a supplied discrepancy upper bound D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import QrpermError, SizeRefusedError
from .families import Permutation, sos_perm
from .quadirr import QuadraticIrrational, frac_compare, frac_float


def b_of_k(alpha, k: int) -> int:
    """#{1 <= q <= k : {q*alpha} <= {k*alpha}}, exact."""
    if k < 1:
        raise QrpermError("k must be >= 1")
    return sum(1 for q in range(1, k + 1) if frac_compare(alpha, q, k) <= 0)


class _Fenwick:
    """Counting Fenwick tree over values 0..size-1."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, i: int):
        i += 1
        while i <= self.size:
            self.tree[i] += 1
            i += i & (-i)

    def count_below(self, i: int) -> int:
        """Number of inserted values < i."""
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & (-i)
        return total


def b_sequence(sigma: Permutation) -> list[int]:
    """B_sigma(k) for k = 1..n, O(n log n)."""
    fen = _Fenwick(sigma.n)
    out = []
    for k in range(1, sigma.n + 1):
        v = sigma.image[k - 1]
        out.append(fen.count_below(v) + 1)  # +1: q = k counts itself
        fen.add(v)
    return out


@dataclass(frozen=True)
class ASet:
    n: int
    values: tuple[int, ...]  # sorted, duplicates removed
    max_gap: int             # max spacing with sentinels 0 and n+1
    count: int               # |A intersect [1, n]|
    widest_empty: tuple[int, int] | None  # [lo, hi] missing A, or None

    def contains_in_every_window(self, length: int) -> bool:
        return self.max_gap <= length


def a_set(sigma: Permutation) -> ASet:
    values = tuple(sorted(set(b_sequence(sigma))))
    n = sigma.n
    fenced = (0,) + values + (n + 1,)
    max_gap = 0
    widest = None
    for lo, hi in zip(fenced, fenced[1:]):
        if hi - lo > max_gap:
            max_gap = hi - lo
            widest = (lo + 1, hi - 1) if hi - lo > 1 else None
    return ASet(n, values, max_gap, len(values), widest)


def _ceil_sqrt_fraction(x: Fraction) -> int:
    """Smallest integer L with L*L >= x, exact."""
    if x <= 0:
        return 0
    num, den = x.numerator, x.denominator
    L = math.isqrt(num // den)
    while L * L * den < num:
        L += 1
    return L


@dataclass(frozen=True)
class GapCheck:
    ok: bool
    required_length: int     # ceil(sqrt(32 * n * d_upper))
    max_gap: int
    widest_empty: tuple[int, int] | None


def gap_check(sigma: Permutation, d_upper) -> GapCheck:
    """Does every interval of length ceil(sqrt(32*n*D)) inside [1, n]
    contain an element of A_sigma?  d_upper must dominate D(sigma)."""
    d_upper = Fraction(d_upper)
    if d_upper < 0:
        raise QrpermError("discrepancy bound must be >= 0")
    ranks = a_set(sigma)
    needed = _ceil_sqrt_fraction(32 * sigma.n * d_upper)
    return GapCheck(ranks.max_gap <= needed, needed, ranks.max_gap,
                    ranks.widest_empty)


@dataclass(frozen=True)
class PrefixStar:
    """max over s <= n of the star discrepancy (count scale) of the
    first s points {alpha}, {2 alpha}, ..., {s alpha}."""
    value: Fraction | float
    argmax_s: int
    final: Fraction | float   # the s = n value


def max_prefix_star(alpha, n: int) -> PrefixStar:
    """Star discrepancy of every prefix of ({s*alpha})_{s<=n}, maximised.

    The candidate set is the same one real_star_disc uses; the trick is
    that the rank bookkeeping across prefixes only needs the *order* of
    the fractional parts, and sos_perm already certifies that order
    exactly.  The linear term s*{x*alpha} is evaluated in floats whose
    error (a few ulps from frac_float) is far below the 1/n**2 gap
    floor for a quadratic irrational, so the returned float is correct
    to ~1e-11 absolute.  Rational alpha takes an all-integer path and
    returns an exact Fraction.
    """
    if n < 1:
        raise QrpermError("need n >= 1")
    if isinstance(alpha, QuadraticIrrational):
        sigma = sos_perm(n, alpha)
        g = np.asarray(sigma.image, dtype=np.int64)
        keys = np.array([frac_float(alpha, s) for s in range(1, n + 1)])
        cnt = np.zeros(n, dtype=np.int64)
        best = -1.0
        best_s = 1
        final = 0.0
        for s in range(1, n + 1):
            cnt += g >= g[s - 1]
            lin = s * keys[:s]
            at = np.abs(cnt[:s] - lin)
            before = np.abs(cnt[:s] - 1 - lin)
            here = float(max(at.max(), before.max()))
            if here > best:
                best, best_s = here, s
            if s == n:
                final = here
        return PrefixStar(best, best_s, final)

    alpha = Fraction(alpha)
    den = alpha.denominator
    if den * (n + 1) >= 2**62:
        raise SizeRefusedError("denominator too large for the exact "
                               "integer sweep")
    r = np.array([(alpha.numerator * s) % den for s in range(1, n + 1)],
                 dtype=np.int64)
    cnt_le = np.zeros(n, dtype=np.int64)
    cnt_lt = np.zeros(n, dtype=np.int64)
    best_num = -1
    best_s = 1
    final_num = 0
    for s in range(1, n + 1):
        cnt_le += r >= r[s - 1]
        cnt_lt += r > r[s - 1]
        lin = s * r[:s]
        at = np.abs(den * cnt_le[:s] - lin)
        before = np.abs(den * cnt_lt[:s] - lin)
        here = int(max(at.max(), before.max()))
        if here > best_num:
            best_num, best_s = here, s
        if s == n:
            final_num = here
    return PrefixStar(Fraction(best_num, den), best_s,
                      Fraction(final_num, den))
