"""Continued fractions, continuants, and bounded-quotient searches.

Expansions are exact.  Finite expansions are canonical (last partial
quotient >= 2, except the single-term integer case), so every rational
has one representation and denominators of [0; a_1..a_m] are exactly the
continuants K(a_1..a_m).

Quadratic irrationals get the classical (P + sqrt(D))/Q surd recurrence
with period detection on the (P, Q) state, so golden -> [1; (1)],
sqrt(2) -> [1; (2)], sqrt(3) -> [1; (1, 2)] terminate with an explicit
periodic tail instead of a truncation.

bounded_average_check is the "bounded in average by B" predicate (every
prefix mean of the partial quotients is <= B), and zaremba_search scans
numerators k coprime to n for the expansion of k/n with the smallest
maximal quotient, breaking ties by maximal prefix average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import QrpermError
from .quadirr import QuadraticIrrational, floor_surd


@dataclass(frozen=True)
class ContinuedFraction:
    """[a0; q_1, q_2, ...] with an optional periodic tail.

    periodic_tail = i means quotients[i:] repeats forever; None means
    the expansion is finite (and canonical: last quotient >= 2 unless
    the value is an integer and quotients is empty).
    """

    a0: int
    quotients: tuple[int, ...]
    periodic_tail: int | None = None

    def __post_init__(self):
        if any(q < 1 for q in self.quotients):
            raise QrpermError("partial quotients must be >= 1")
        if self.periodic_tail is not None:
            if not 0 <= self.periodic_tail < len(self.quotients):
                raise QrpermError("periodic tail index out of range")
        elif self.quotients and self.quotients[-1] < 2:
            raise QrpermError("canonical finite form needs last quotient >= 2")

    def quotient(self, i: int) -> int:
        """Partial quotient a_i, i >= 1, unrolling the periodic tail."""
        if i < 1:
            raise QrpermError("quotient index starts at 1")
        idx = i - 1
        if idx < len(self.quotients):
            return self.quotients[idx]
        if self.periodic_tail is None:
            raise QrpermError(f"finite expansion has no quotient a_{i}")
        period = len(self.quotients) - self.periodic_tail
        return self.quotients[self.periodic_tail
                              + (idx - self.periodic_tail) % period]

    def __str__(self) -> str:
        if self.periodic_tail is None:
            body = ", ".join(str(q) for q in self.quotients)
            return f"[{self.a0}; {body}]" if body else f"[{self.a0}]"
        head = ", ".join(str(q) for q in self.quotients[:self.periodic_tail])
        tail = ", ".join(str(q) for q in self.quotients[self.periodic_tail:])
        sep = ", " if head else ""
        return f"[{self.a0}; {head}{sep}({tail})]"


def cf_of_rational(num: int, den: int) -> ContinuedFraction:
    """Canonical expansion of num/den via the Euclidean algorithm."""
    if den == 0:
        raise QrpermError("zero denominator")
    if den < 0:
        num, den = -num, -den
    a0 = num // den
    rem = num - a0 * den
    quotients: list[int] = []
    a, b = den, rem
    while b:
        q, r = divmod(a, b)
        quotients.append(q)
        a, b = b, r
    # canonical form: fold a trailing 1 into its predecessor (a lone
    # quotient 1 cannot occur: den/rem > 1 whenever 0 < rem < den)
    if len(quotients) >= 2 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1
    return ContinuedFraction(a0, tuple(quotients))


def cf_of_quadratic(alpha: QuadraticIrrational,
                    max_terms: int = 10_000) -> ContinuedFraction:
    """Expansion of a quadratic irrational with exact period detection."""
    # normalize to (P + sqrt(D)) / Q with the sqrt coefficient +1
    if alpha.b > 0:
        p_, d_, q_ = alpha.a, alpha.b * alpha.b * alpha.d, alpha.c
    else:
        p_, d_, q_ = -alpha.a, alpha.b * alpha.b * alpha.d, -alpha.c
    if (d_ - p_ * p_) % q_:
        p_ *= abs(q_)
        d_ *= q_ * q_
        q_ *= abs(q_)
    terms: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    while len(terms) <= max_terms:
        state = (p_, q_)
        if state in seen:
            k0, k = seen[state], len(terms)
            if k0 == 0:
                # purely periodic from a0: rotate the block one step so
                # it starts at a_1
                block = terms[1:k] + terms[0:1]
                return ContinuedFraction(terms[0], tuple(block), 0)
            return ContinuedFraction(terms[0], tuple(terms[1:k]), k0 - 1)
        seen[state] = len(terms)
        a_i = floor_surd(p_, 1, d_, q_)
        terms.append(a_i)
        p_next = a_i * q_ - p_
        q_next = (d_ - p_next * p_next) // q_
        p_, q_ = p_next, q_next
    raise QrpermError(f"period not closed within {max_terms} terms")


def _quotient_stream(cf: ContinuedFraction):
    i = 1
    while True:
        try:
            yield cf.quotient(i)
        except QrpermError:
            return
        i += 1


def convergents(cf: ContinuedFraction, m: int) -> list[Fraction]:
    """First m convergents p_s/q_s in lowest terms.

    The degenerate convergent a0/1 counts only when a0 != 0, so for
    values in (0, 1) the list starts at [a0; a_1].  Raises if a finite
    expansion has fewer than m convergents.
    """
    if m < 0:
        raise QrpermError("m must be >= 0")
    out: list[Fraction] = []
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    if cf.a0 != 0 and m > 0:
        out.append(Fraction(h, k))
    stream = _quotient_stream(cf)
    while len(out) < m:
        try:
            a = next(stream)
        except StopIteration:
            raise QrpermError(
                f"expansion has only {len(out)} convergents, wanted {m}")
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        out.append(Fraction(h, k))
    return out


def continuant(quotients) -> int:
    """K(a_1, ..., a_m): the denominator of [0; a_1, ..., a_m].  K() = 1."""
    q_prev, q = 1, 1
    first = True
    for a in quotients:
        if a < 1:
            raise QrpermError("partial quotients must be >= 1")
        if first:
            q = a
            first = False
        else:
            q_prev, q = q, a * q + q_prev
    return q


@dataclass(frozen=True)
class AverageCheck:
    ok: bool
    bound: Fraction
    max_prefix_average: Fraction
    witness_prefix: int | None  # length of the first violating prefix


def bounded_average_check(quotients, bound) -> AverageCheck:
    """Is every prefix mean of the quotients <= bound?  Exact."""
    bound = Fraction(bound)
    if bound <= 0:
        raise QrpermError("bound must be positive")
    quotients = tuple(quotients)
    total = 0
    witness = None
    best = Fraction(0)
    for m, a in enumerate(quotients, start=1):
        total += a
        avg = Fraction(total, m)
        if avg > best:
            best = avg
        if witness is None and avg > bound:
            witness = m
    return AverageCheck(witness is None, bound, best, witness)


@dataclass(frozen=True)
class ZarembaResult:
    n: int
    bound: Fraction
    k: int
    quotients: tuple[int, ...]
    max_quotient: int
    max_prefix_average: Fraction
    certifies: bool  # winner's expansion is bounded in average by bound


def zaremba_search(n: int, bound) -> ZarembaResult:
    """Best numerator k coprime to n: minimize the maximal partial
    quotient of k/n, then the maximal prefix average, then k itself.

    certifies reports whether the winner's expansion is bounded in
    average by `bound`, i.e. whether this k witnesses n's membership in
    the continuant set F(bound).
    """
    if n < 2:
        raise QrpermError("n must be >= 2")
    bound = Fraction(bound)
    best = None
    for k in range(1, n):
        if math.gcd(k, n) != 1:
            continue
        quot = cf_of_rational(k, n).quotients
        maxq = max(quot)
        chk = bounded_average_check(quot, bound)
        key = (maxq, chk.max_prefix_average, k)
        if best is None or key < best[0]:
            best = (key, k, quot, maxq, chk)
    assert best is not None  # k = 1 is always coprime
    _, k, quot, maxq, chk = best
    return ZarembaResult(n, bound, k, quot, maxq, chk.max_prefix_average,
                         chk.ok)
