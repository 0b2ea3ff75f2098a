"""Quasirandomness statistics for permutations of Z_n.

These are the finite-size witnesses behind the equivalence between
low interval discrepancy and the other pseudorandomness properties:
pattern counts on restrictions, the signed 2-subsequence imbalance,
separability deviations, the normalized interval exponential sum, and
the translation-overlap sum.

Pattern conventions: a pattern is a tuple like (0, 1, 2) or (1, 0)
giving the rank order demanded of sigma on an increasing tuple of
positions.  Restrictions take the positions of I whose image lands in
J, ordered by position as plain integers (wrapping intervals enumerate
their members in integer order too), and compare image values.

Counting costs: length-2 patterns use merge counting (O(n log n),
capped at n = 10^6); length-3 patterns use the pairwise order matrices
U, D and one matrix product per relation triple (O(n^2) memory, capped
at n = 2000).  Exact: all counts fit comfortably inside float64's
integer range before conversion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .discrepancy import D_EXACT_CAP, d_exact, d_star
from .errors import QrpermError, SizeRefusedError
from .expsums import _roots
from .families import Permutation
from .intervals import Interval

PATTERN3_CAP = 2000
PATTERN2_CAP = 10 ** 6
EIGEN_CAP = 4096


def _validate_pattern(tau) -> tuple[int, ...]:
    tau = tuple(tau)
    if not 1 <= len(tau) <= 3:
        raise QrpermError("patterns of length 1..3 only")
    if sorted(tau) != list(range(len(tau))):
        raise QrpermError(f"{tau} is not a pattern (ranks 0..m-1)")
    return tau


def _merge_count_inversions(vals: np.ndarray) -> int:
    """Pairs i < j with vals[i] > vals[j], by merge counting."""
    if len(vals) <= 1:
        return 0
    mid = len(vals) // 2
    left, right = np.sort(vals[:mid]), vals[mid:]
    inv = _merge_count_inversions(vals[:mid])
    inv += _merge_count_inversions(right)
    pos = np.searchsorted(left, right, side="right")
    inv += int((len(left) - pos).sum())
    return inv


def _count_seq(values, tau: tuple[int, ...]) -> int:
    """Occurrences of tau in a sequence of distinct integers."""
    r = len(values)
    m = len(tau)
    if r < m:
        return 0
    if m == 1:
        return r
    vals = np.asarray(values, dtype=np.int64)
    if m == 2:
        inv = _merge_count_inversions(vals.copy())
        total = r * (r - 1) // 2
        return inv if tau == (1, 0) else total - inv
    lt = vals[:, None] < vals[None, :]
    upper = np.triu(np.ones((r, r), dtype=bool), k=1)
    u_mat = (lt & upper).astype(np.float64)
    d_mat = (~lt & upper).astype(np.float64)
    r12 = u_mat if tau[0] < tau[1] else d_mat
    r23 = u_mat if tau[1] < tau[2] else d_mat
    r13 = u_mat if tau[0] < tau[2] else d_mat
    return int(round(((r12 @ r23) * r13).sum()))


def pattern_count(sigma: Permutation, tau) -> int:
    """X^tau(sigma): occurrences of the pattern on the full domain."""
    tau = _validate_pattern(tau)
    if len(tau) == 3 and sigma.n > PATTERN3_CAP:
        raise SizeRefusedError(
            f"length-3 patterns capped at n = {PATTERN3_CAP}")
    if len(tau) == 2 and sigma.n > PATTERN2_CAP:
        raise SizeRefusedError(
            f"length-2 patterns capped at n = {PATTERN2_CAP}")
    return _count_seq(sigma.image, tau)


@dataclass(frozen=True)
class RestrictedCount:
    count: int
    size: int  # |I cap sigma^{-1}(J)|


def restriction(sigma: Permutation, i_int: Interval,
                j_int: Interval) -> list[int]:
    """Positions x in I with sigma(x) in J, in increasing integer order."""
    if i_int.n != sigma.n or j_int.n != sigma.n:
        raise QrpermError("interval modulus mismatch")
    return sorted(x for x in i_int.members()
                  if j_int.contains(sigma.image[x]))


def restricted_pattern_count(sigma: Permutation, tau, i_int: Interval,
                             j_int: Interval) -> RestrictedCount:
    """X^tau on the subsequence of sigma restricted to I cap
    sigma^{-1}(J)."""
    tau = _validate_pattern(tau)
    pos = restriction(sigma, i_int, j_int)
    if len(tau) == 3 and len(pos) > PATTERN3_CAP:
        raise SizeRefusedError(
            f"length-3 patterns capped at size {PATTERN3_CAP}")
    values = [sigma.image[x] for x in pos]
    return RestrictedCount(_count_seq(values, tau), len(pos))


def two_subseq_stat(sigma: Permutation, i_int: Interval,
                    j_int: Interval) -> int:
    """Signed imbalance X^(01) - X^(10) on the restriction."""
    pos = restriction(sigma, i_int, j_int)
    vals = np.asarray([sigma.image[x] for x in pos], dtype=np.int64)
    r = len(vals)
    inv = _merge_count_inversions(vals.copy()) if r else 0
    return (r * (r - 1) // 2 - inv) - inv


def separability_stat(sigma: Permutation, i_int: Interval, j_int: Interval,
                      k_int: Interval, kp_int: Interval) -> Fraction:
    """| #{x in K cap I : sigma(x) in K' cap J}
         - |K cap I| * |K' cap J| / n |, exact."""
    n = sigma.n
    for ivl in (i_int, j_int, k_int, kp_int):
        if ivl.n != n:
            raise QrpermError("interval modulus mismatch")
    ki = [x for x in k_int.members() if i_int.contains(x)]
    kj = [y for y in kp_int.members() if j_int.contains(y)]
    kj_set = frozenset(kj)
    hits = sum(1 for x in ki if sigma.image[x] in kj_set)
    return Fraction(abs(n * hits - len(ki) * len(kj)), n)


@dataclass(frozen=True)
class EigenvalueStat:
    value: float        # max over k, I of |sum| / |k|^alpha
    alpha: float
    k: int
    interval: Interval
    magnitude: float    # |sum_{s in sigma(I)} e(-k s / n)| at the argmax


def eigenvalue_stat(sigma: Permutation, alpha: float,
                    cap: int = EIGEN_CAP) -> EigenvalueStat:
    """max over 1 <= k <= n/2 and cyclic intervals I of
    |sum_{s in sigma(I)} e(-k*s/n)| / k^alpha.

    Negative k duplicate positive k in magnitude, so only positive
    representatives are scanned.  For every k the full-circle sum is 0,
    so wrapping intervals are reached through complements of
    non-wrapping ones.
    """
    n = sigma.n
    if n > cap:
        raise SizeRefusedError(f"n = {n} exceeds cap {cap}")
    if alpha <= 0:
        raise QrpermError("alpha must be positive")
    if n < 2:
        raise QrpermError("n must be >= 2")
    roots = _roots(n)
    img = np.asarray(sigma.image, dtype=np.int64)
    cols = np.arange(n + 1, dtype=np.int64)[None, :]
    best = None
    chunk = 256
    for k in range(1, n // 2 + 1):
        w = roots[(-k * img) % n]
        prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(w)))
        total = prefix[-1]
        norm = float(k) ** alpha
        for u0 in range(0, n, chunk):
            u1 = min(u0 + chunk, n)
            diff = prefix[None, :] - prefix[u0:u1, None]  # (u, v): P_v - P_u
            invalid = cols <= np.arange(u0, u1, dtype=np.int64)[:, None]
            for shifted, wrapped in ((np.abs(diff), False),
                                     (np.abs(total - diff), True)):
                shifted[invalid] = -1.0
                flat = int(np.argmax(shifted))
                u_rel, v = divmod(flat, n + 1)
                cand = float(shifted[u_rel, v]) / norm
                if best is None or cand > best[0]:
                    best = (cand, k, u0 + u_rel, v, wrapped)
    _, k, u, v, wrapped = best
    if wrapped and v - u == n:
        # complement of the full interval is empty; fall back to full
        ivl = Interval(n, 0, n)
    elif wrapped:
        ivl = Interval(n, v % n, n - (v - u))
    else:
        ivl = Interval(n, u, v - u)
    mag = abs(sum(complex(roots[(-k * sigma.image[x]) % n])
                  for x in ivl.members()))
    return EigenvalueStat(mag / float(k) ** alpha, alpha, k, ivl, mag)


def translation_stat(sigma: Permutation, i_int: Interval,
                     j_int: Interval) -> Fraction:
    """sum over shifts k of (|sigma(I) cap (J + k)| - |I||J|/n)^2, exact."""
    n = sigma.n
    if i_int.n != n or j_int.n != n:
        raise QrpermError("interval modulus mismatch")
    s_ind = np.zeros(n, dtype=np.int64)
    for x in i_int.members():
        s_ind[sigma.image[x]] = 1
    j_ind = j_int.indicator()
    ab = i_int.length * j_int.length
    total = 0
    for k in range(n):
        c = int(s_ind @ np.roll(j_ind, k))
        total += (n * c - ab) ** 2
    return Fraction(total, n * n)


@dataclass(frozen=True)
class PropertyProfile:
    """One-permutation summary of the quasirandomness statistics.

    Probes are fixed so profiles are comparable: halves H1 = [0, n/2),
    H2 = [n/2, n) for separability and translation, the full domain for
    the 2-subsequence imbalance, alpha for the eigenvalue statistic.
    """

    n: int
    family: str
    params: tuple[tuple[str, str], ...]
    ub: Fraction                 # discrepancy upper bound used
    two_s: int                   # X^(01) - X^(10), full domain
    sp_max: Fraction             # max separability deviation over halves
    e_alpha: float
    e_alpha_max: float
    t_sum: Fraction              # translation stat on (H1, H1)
    pattern_counts: tuple[tuple[tuple[int, ...], int], ...]

    def to_json(self) -> str:
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}
        return json.dumps({
            "n": self.n,
            "family": self.family,
            "params": dict(self.params),
            "ub": frac(self.ub),
            "two_s": self.two_s,
            "sp_max": frac(self.sp_max),
            "e_alpha": self.e_alpha,
            "e_alpha_max": self.e_alpha_max,
            "t_sum": frac(self.t_sum),
            "pattern_counts": {
                "".join(str(t) for t in tau): c
                for tau, c in self.pattern_counts},
        }, sort_keys=True)


def property_profile(sigma: Permutation, alpha: float = 0.5,
                     exact_cap: int = D_EXACT_CAP) -> PropertyProfile:
    n = sigma.n
    if n < 2:
        raise QrpermError("profiles need n >= 2")
    h = n // 2
    first = Interval(n, 0, h)
    second = Interval(n, h, n - h)
    full = Interval(n, 0, n)
    ub = d_exact(sigma) if n <= exact_cap else 4 * d_star(sigma)
    sp = max(separability_stat(sigma, a, b, full, full)
             for a in (first, second) for b in (first, second))
    patterns = [(0, 1), (1, 0)]
    if n <= PATTERN3_CAP:
        patterns += [(0, 1, 2), (0, 2, 1), (1, 0, 2),
                     (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    counts = tuple((tau, pattern_count(sigma, tau)) for tau in patterns)
    eig = eigenvalue_stat(sigma, alpha) if n <= EIGEN_CAP else None
    return PropertyProfile(
        n=n, family=sigma.family, params=sigma.params, ub=ub,
        two_s=two_subseq_stat(sigma, full, full),
        sp_max=sp, e_alpha=alpha,
        e_alpha_max=eig.value if eig else math.nan,
        t_sum=translation_stat(sigma, first, first),
        pattern_counts=counts)
