"""Interval discrepancy of permutations, exactly.

All interval counts are integers, so every discrepancy here is an exact
rational with denominator n: the deviation of sigma(I) against J is
(n*|sigma(I) cap J| - |I|*|J|) / n and we track integer numerators
throughout, converting to Fraction only at the API boundary.

    d_star(sigma)   max over initial intervals I = [0,a), J = [0,b).
                    O(n^2) time: grow I one element at a time and rescan
                    the deviation numerator g(b) = n*|S cap [0,b)| - a*b.
    d_exact(sigma)  max over all cyclic interval pairs.  Complementing I
                    or J negates the signed deviation and maps wrapping
                    intervals to non-wrapping ones, so the sweep only
                    anchors non-wrapping I and reads the best J off
                    max(g) - min(g) of the prefix deviation.  Cubic; the
                    size cap refuses anything above it.
    d_zero(sigma)   max over non-wrapping pairs only.  By the same
                    complement identity this equals d_exact; it is kept
                    as its own entry point because callers ask for the
                    linear-interval quantity by name.

real_star_disc handles finite multisets in [0, 1) and returns the
closed-interval and half-open conventions separately (for finite sets
the suprema agree, but callers should not have to know that).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import QrpermError, SizeRefusedError
from .families import Permutation
from .intervals import Interval

D_EXACT_CAP = 512
_BLOCK = 128


def set_discrepancy(s_set, t_set, n: int) -> Fraction:
    """| |S cap T| - |S|*|T|/n | for arbitrary subsets of Z_n."""
    s = frozenset(s_set)
    t = frozenset(t_set)
    for x in s | t:
        if not 0 <= x < n:
            raise QrpermError(f"element {x} outside Z_{n}")
    return Fraction(abs(n * len(s & t) - len(s) * len(t)), n)


def d_star(sigma: Permutation) -> Fraction:
    """Initial-interval discrepancy, exact, O(n^2) time / O(n) space
    (constant-width blocks of grow steps are processed vectorized)."""
    n = sigma.n
    if n == 1:
        return Fraction(0, 1)
    img = np.asarray(sigma.image, dtype=np.int64)
    brange = np.arange(n + 1, dtype=np.int64)
    scaled_count = np.zeros(n + 1, dtype=np.int64)  # n * |S cap [0, b)|
    best = 0
    for start in range(0, n, _BLOCK):
        blk = img[start:start + _BLOCK]
        rows = np.cumsum(blk[:, None] < brange[None, :], axis=0,
                         dtype=np.int64)
        a_col = np.arange(start + 1, start + 1 + len(blk),
                          dtype=np.int64)[:, None]
        g = scaled_count[None, :] + n * rows - a_col * brange[None, :]
        best = max(best, int(np.abs(g, out=g).max()))
        scaled_count += n * rows[-1]
    return Fraction(best, n)


def _max_pair_deviation(img: np.ndarray, n: int) -> int:
    """max over non-wrapping I, J of |n*|sigma(I) cap J| - |I|*|J||.

    For an anchored growing I the signed deviation of J = [c, d) is
    g(d) - g(c) with g(b) = n*|S cap [0,b)| - |I|*b, so the best J is
    max(g) - min(g).
    """
    brange = np.arange(n + 1, dtype=np.int64)
    best = 0
    for i in range(n):
        scaled_count = np.zeros(n + 1, dtype=np.int64)
        for start in range(i, n, _BLOCK):
            blk = img[start:start + _BLOCK]
            rows = np.cumsum(blk[:, None] < brange[None, :], axis=0,
                             dtype=np.int64)
            lengths = np.arange(start - i + 1, start - i + 1 + len(blk),
                                dtype=np.int64)[:, None]
            g = scaled_count[None, :] + n * rows - lengths * brange[None, :]
            spread = g.max(axis=1) - g.min(axis=1)
            best = max(best, int(spread.max()))
            scaled_count += n * rows[-1]
    return best


def d_exact(sigma: Permutation, cap: int = D_EXACT_CAP) -> Fraction:
    """Discrepancy over all cyclic interval pairs, exact.

    Wrapping I or J are covered through their non-wrapping complements
    (complementing either argument negates the signed deviation), so
    only non-wrapping pairs are enumerated.  Refuses n > cap.
    """
    n = sigma.n
    if n > cap:
        raise SizeRefusedError(
            f"d_exact is cubic; n = {n} exceeds cap {cap}")
    if n == 1:
        return Fraction(0, 1)
    img = np.asarray(sigma.image, dtype=np.int64)
    return Fraction(_max_pair_deviation(img, n), n)


def d_zero(sigma: Permutation, cap: int = D_EXACT_CAP) -> Fraction:
    """Discrepancy over non-wrapping interval pairs only.

    Numerically this equals d_exact: the complement identity that
    justifies d_exact's reduced enumeration is an equality between the
    two maxima, not just a bound.
    """
    n = sigma.n
    if n > cap:
        raise SizeRefusedError(
            f"d_zero is cubic; n = {n} exceeds cap {cap}")
    if n == 1:
        return Fraction(0, 1)
    img = np.asarray(sigma.image, dtype=np.int64)
    return Fraction(_max_pair_deviation(img, n), n)


@dataclass(frozen=True)
class RealStarDisc:
    closed: object     # sup over [0, x], 0 <= x <= 1
    half_open: object  # sup over [0, x)


def real_star_disc(points) -> RealStarDisc:
    """Star discrepancy of a finite multiset in [0, 1), both interval
    conventions.  Exact if the points are Fractions, float otherwise."""
    pts = sorted(points)
    m = len(pts)
    if m == 0:
        return RealStarDisc(0, 0)
    if pts[0] < 0 or pts[-1] >= 1:
        raise QrpermError("points must lie in [0, 1)")
    closed = None
    half_open = None
    count_before = 0
    i = 0
    while i < m:
        v = pts[i]
        j = i
        while j < m and pts[j] == v:
            j += 1
        count_at = j
        # closed: |F(v) - v*m| attained, |F(v^-) - v*m| approached
        c = max(abs(count_at - v * m), abs(count_before - v * m))
        # half-open: |G(v) - v*m| attained, |G(v^+) - v*m| approached;
        # G(v) = count_before, G(v^+) = count_at, so the same two values
        h = max(abs(count_before - v * m), abs(count_at - v * m))
        closed = c if closed is None else max(closed, c)
        half_open = h if half_open is None else max(half_open, h)
        count_before = count_at
        i = j
    return RealStarDisc(closed, half_open)


def interval_hit(sigma: Permutation, i_int: Interval, j_int: Interval) -> bool:
    """Is sigma(I) cap J nonempty?"""
    if i_int.n != sigma.n or j_int.n != sigma.n:
        raise QrpermError("interval modulus mismatch")
    return any(j_int.contains(sigma.image[x]) for x in i_int.members())


def min_hitting_length(n: int, d_upper) -> int:
    """Smallest integer L with L^2 > n * d_upper: intervals at least
    this long on both sides force sigma(I) cap J nonempty."""
    d_upper = Fraction(d_upper)
    thresh = n * d_upper
    L = math.isqrt((thresh.numerator // thresh.denominator) + 1)
    while Fraction(L * L) <= thresh:
        L += 1
    while L > 1 and Fraction((L - 1) * (L - 1)) > thresh:
        L -= 1
    return L


def verify_interval_hits(sigma: Permutation, d_upper):
    """Check sigma(I) cap J != empty for every pair with both lengths
    >= min_hitting_length.  Returns None or a counterexample (I, J)."""
    n = sigma.n
    min_len = min_hitting_length(n, d_upper)
    if min_len > n:
        return None
    for start in range(n):
        for length in range(min_len, n + 1):
            ivl = Interval(n, start, length)
            hit_vals = sorted(sigma.image[x] for x in ivl.members())
            if len(hit_vals) == n:
                break  # sigma(I) is everything; longer I only grows it
            # J misses sigma(I) iff J fits inside a cyclic gap between
            # consecutive image values
            worst_gap = 0
            worst_at = 0
            prev = hit_vals[-1] - n
            for v in hit_vals:
                if v - prev - 1 > worst_gap:
                    worst_gap = v - prev - 1
                    worst_at = (prev + 1) % n
                prev = v
            if worst_gap >= min_len:
                return ivl, Interval(n, worst_at, min_len)
    return None


@dataclass(frozen=True)
class DiscrepancyReport:
    n: int
    family: str
    params: tuple[tuple[str, str], ...]
    d_star: Fraction
    d_exact: Fraction | None   # None when n exceeded the cap
    d_zero: Fraction | None
    d_lower: Fraction          # d_star
    d_upper: Fraction          # d_exact when known, else 4 * d_star
    ratio_log2: float | None   # d_upper / log2(n), None for n < 2
    ratio_sqrt: float
    ratio_sqrt_log: float | None

    def to_json(self) -> str:
        def frac(x):
            return None if x is None else {"num": x.numerator,
                                           "den": x.denominator}
        return json.dumps({
            "n": self.n,
            "family": self.family,
            "params": dict(self.params),
            "d_star": frac(self.d_star),
            "d_exact": frac(self.d_exact),
            "d_zero": frac(self.d_zero),
            "d_lower": frac(self.d_lower),
            "d_upper": frac(self.d_upper),
            "d_star_float": float(self.d_star),
            "d_upper_float": float(self.d_upper),
            "ratio_log2": self.ratio_log2,
            "ratio_sqrt": self.ratio_sqrt,
            "ratio_sqrt_log": self.ratio_sqrt_log,
        }, sort_keys=True)


def build_report(sigma: Permutation,
                 cap: int = D_EXACT_CAP) -> DiscrepancyReport:
    """Discrepancy report with the sandwich fallback above the cap."""
    n = sigma.n
    ds = d_star(sigma)
    if n <= cap:
        de = d_exact(sigma, cap)
        upper = de
    else:
        de = None
        upper = 4 * ds
    val = float(upper)
    return DiscrepancyReport(
        n=n, family=sigma.family, params=sigma.params,
        d_star=ds, d_exact=de, d_zero=de,
        d_lower=ds, d_upper=upper,
        ratio_log2=(val / math.log2(n)) if n >= 2 else None,
        ratio_sqrt=val / math.sqrt(n),
        ratio_sqrt_log=(val / math.sqrt(n * math.log(n)))
        if n >= 2 else None,
    )
