"""Exponential-sum kernels: e(x) = exp(2*pi*i*x).

Angles are always derived from exact integer residues (k*sigma(s) mod n
and friends), never from accumulated floats, and scalar kernels sum with
math.fsum, so the only rounding left is the final cos/sin evaluation.
Magnitude comparisons in tests budget 1e-9 per term.

Kernels:

    weyl_sum(points, k)              A(k) = sum e(k*x_i) for reals x_i
    incomplete_sigma_sum(sigma,k,m)  sum_{s<m} e(k*sigma(s)/n)
    twisted_full_sum(sigma, k, a)    sum_s e((k*sigma(s) + a*s)/n)
    kloosterman(p, a, b)             sum over units e((a*s + b*s^-1)/p)
    gauss_power_sum(p, a, k, M)      sum_{s=1..M} e(a*s^k/p)
    w_sum(p, a, c, theta, t)         sum_k |sum_x e((a th^x + c th^xk)/p)|
    interval_fourier(J, k)           sum_{x in J} e(-k*x/n)

plus the Erdos-Turan bound, its minimizing companion, the completion
inequality check (max window sum vs max twisted full sum times
1 + ln n), and the incomplete-sum maximum used for the
Polya-Vinogradov-style calibration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidGeneratorError, NotAUnitError, QrpermError
from .families import Permutation
from .intervals import Interval
from .modular import as_prime, mod_inv, multiplicative_order


@dataclass(frozen=True)
class SumValue:
    re: float
    im: float
    terms: int
    kernel: str
    params: tuple[tuple[str, str], ...] = ()

    @property
    def magnitude(self) -> float:
        return math.hypot(self.re, self.im)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


def _params(**kw) -> tuple[tuple[str, str], ...]:
    return tuple(sorted((k, str(v)) for k, v in kw.items()))


def e(x: float) -> complex:
    """exp(2*pi*i*x)."""
    return cmath.exp(2j * math.pi * x)


@lru_cache(maxsize=64)
def _roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def _fsum_terms(residues, n: int, terms: int, kernel: str, params) -> SumValue:
    angles = [2 * math.pi * (r % n) / n for r in residues]
    re = math.fsum(math.cos(a) for a in angles)
    im = math.fsum(math.sin(a) for a in angles)
    return SumValue(re, im, terms, kernel, params)


def weyl_sum(points, k: int) -> SumValue:
    if k == 0:
        raise QrpermError("k must be nonzero")
    pts = list(points)
    re = math.fsum(math.cos(2 * math.pi * ((k * x) % 1.0)) for x in pts)
    im = math.fsum(math.sin(2 * math.pi * ((k * x) % 1.0)) for x in pts)
    return SumValue(re, im, len(pts), "weyl", _params(k=k))


def incomplete_sigma_sum(sigma: Permutation, k: int, m: int) -> SumValue:
    """sum_{s=0}^{m-1} e(k*sigma(s)/n)."""
    n = sigma.n
    if not 1 <= m <= n:
        raise QrpermError(f"m = {m} outside [1, {n}]")
    residues = (k * sigma.image[s] for s in range(m))
    return _fsum_terms(residues, n, m, "incomplete",
                       _params(k=k, m=m, family=sigma.family))


def twisted_full_sum(sigma: Permutation, k: int, a: int) -> SumValue:
    """sum_{s=0}^{n-1} e((k*sigma(s) + a*s)/n)."""
    n = sigma.n
    residues = (k * sigma.image[s] + a * s for s in range(n))
    return _fsum_terms(residues, n, n, "twisted",
                       _params(k=k, a=a, family=sigma.family))


def kloosterman(p, a: int, b: int) -> SumValue:
    """K(a, b; p) = sum over s in Z_p^* of e((a*s + b*s^{-1})/p)."""
    p = as_prime(p)
    residues = (a * s + b * mod_inv(s, p) for s in range(1, p))
    return _fsum_terms(residues, p, p - 1, "kloosterman",
                       _params(p=p, a=a, b=b))


def gauss_power_sum(p, a: int, k: int, m_terms: int) -> SumValue:
    """S(a, k, M) = sum_{s=1}^{M} e(a*s^k/p).

    The complete sum M = p vanishes exactly when gcd(k, p-1) = 1 (the
    power map permutes the residues); incomplete sums do not.
    """
    p = as_prime(p)
    if not 1 <= m_terms <= p:
        raise QrpermError(f"M = {m_terms} outside [1, {p}]")
    if k < 1:
        raise QrpermError("exponent k must be >= 1")
    residues = (a * pow(s, k, p) for s in range(1, m_terms + 1))
    return _fsum_terms(residues, p, m_terms, "gauss",
                       _params(p=p, a=a, k=k, M=m_terms))


def w_sum(p, a: int, c: int, theta: int, t: int) -> SumValue:
    """W_{a,c}(t) = sum_{k=1}^{t} |sum_{x=1}^{t} e((a*th^x + c*th^{xk})/p)|.

    theta must have multiplicative order exactly t.  The value is a
    nonnegative real; it is returned in re with im = 0.
    """
    p = as_prime(p)
    if c % p == 0:
        raise NotAUnitError(c, p, p)
    order = multiplicative_order(theta, p)
    if order != t:
        raise InvalidGeneratorError(theta, p, order)
    roots = _roots(p)
    pow_x = [0] * (t + 1)  # theta^x mod p, x = 0..t
    pow_x[0] = 1
    for x in range(1, t + 1):
        pow_x[x] = pow_x[x - 1] * theta % p
    inner_mags = []
    for k in range(1, t + 1):
        base = pow(theta, k, p)
        cur = 1
        idx = np.empty(t, dtype=np.int64)
        for x in range(1, t + 1):
            cur = cur * base % p
            idx[x - 1] = (a * pow_x[x] + c * cur) % p
        inner_mags.append(abs(roots[idx].sum()))
    total = math.fsum(inner_mags)
    return SumValue(total, 0.0, t * t, "w",
                    _params(p=p, a=a, c=c, theta=theta, t=t))


def interval_fourier(j_int: Interval, k: int) -> SumValue:
    """J~(k) = sum_{x in J} e(-k*x/n) for an interval J of Z_n.

    k is reduced to its representative in (-n/2, n/2]; k = 0 mod n is
    refused.  |J~(k)| <= n / (2|k|) for every interval.
    """
    n = j_int.n
    k %= n
    if k == 0:
        raise QrpermError("k must be nonzero mod n")
    if k > n // 2:
        k -= n
    residues = (-k * x for x in j_int.members())
    return _fsum_terms(residues, n, j_int.length, "interval_fourier",
                       _params(n=n, k=k, start=j_int.start,
                               length=j_int.length))


def erdos_turan_bound(points, k_max: int, c_const: float = 4.0) -> float:
    """C * (m/K + sum_{k=1}^{K} |A(k)|/k) for reals in [0, 1)."""
    if k_max < 1:
        raise QrpermError("K must be >= 1")
    pts = np.asarray(list(points), dtype=np.float64)
    m = len(pts)
    ks = np.arange(1, k_max + 1, dtype=np.float64)
    mags = np.abs(np.exp(2j * np.pi * ks[:, None] * pts[None, :]).sum(axis=1))
    return c_const * (m / k_max + float((mags / ks).sum()))


def erdos_turan_min(points, k_limit: int,
                    c_const: float = 4.0) -> tuple[int, float]:
    """(K*, bound*) minimizing the Erdos-Turan bound over K <= k_limit."""
    if k_limit < 1:
        raise QrpermError("K limit must be >= 1")
    pts = np.asarray(list(points), dtype=np.float64)
    m = len(pts)
    ks = np.arange(1, k_limit + 1, dtype=np.float64)
    mags = np.abs(np.exp(2j * np.pi * ks[:, None] * pts[None, :]).sum(axis=1))
    tail = np.cumsum(mags / ks)
    bounds = c_const * (m / ks + tail)
    best = int(np.argmin(bounds))
    return best + 1, float(bounds[best])


@dataclass(frozen=True)
class CompletionReport:
    n: int
    k: int
    max_window: float     # max over cyclic windows of |sum e(k sigma/n)|
    max_twisted: float    # max over a of |twisted full sum|
    ratio: float
    bound: float          # 1 + ln n
    ok: bool


def completion_check(sigma: Permutation, k: int,
                     cap: int = 4096) -> CompletionReport:
    """Completion inequality: every incomplete window sum is at most
    (1 + ln n) times the worst twisted complete sum."""
    n = sigma.n
    if n > cap:
        raise QrpermError(f"n = {n} exceeds cap {cap}")
    if k % n == 0:
        raise QrpermError("k must be nonzero mod n")
    roots = _roots(n)
    vals = roots[(k * np.asarray(sigma.image, dtype=np.int64)) % n]
    # max over a of |sum_s vals[s] e(as/n)|: a DFT of vals
    max_twisted = float(np.abs(np.fft.fft(vals)).max())
    prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(vals)))
    total = prefix[-1]
    best = abs(total)  # the full window
    for u in range(n + 1):
        delta = prefix[u + 1:] - prefix[u]
        if len(delta):
            best = max(best, float(np.abs(delta).max()),
                       float(np.abs(total - delta).max()))
    bound = 1.0 + math.log(n)
    ratio = best / max_twisted if max_twisted > 0 else math.inf
    return CompletionReport(n, k, best, max_twisted, ratio, bound,
                            ratio <= bound + 1e-9)


def max_incomplete_sum(sigma: Permutation) -> tuple[float, int, int]:
    """max over k != 0 and prefix lengths m of |incomplete_sigma_sum|,
    returned as (magnitude, k, m)."""
    n = sigma.n
    roots = _roots(n)
    img = np.asarray(sigma.image, dtype=np.int64)
    best = (0.0, 1, 1)
    for k in range(1, n):
        prefix = np.abs(np.cumsum(roots[(k * img) % n]))
        m = int(np.argmax(prefix))
        if prefix[m] > best[0]:
            best = (float(prefix[m]), k, m + 1)
    return best
