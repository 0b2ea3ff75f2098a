"""Parameter scans and their deterministic CSV/JSON emission.

Every scan returns a flat list of ScanRecord rows.  Exact rational
statistics keep their numerator/denominator; everything float-valued is
stored as the float itself.  Emission sorts the rows by a fixed key and
writes the timing column as 0, so a scan re-run with a different worker
count produces a byte-identical CSV body (the measured wall time goes
into the JSON summary instead, where nobody diffs it).

Workers: the point lists are embarrassingly parallel, so scans fan out
over a fork pool when workers > 1 and run inline otherwise.  Worker
payloads are plain tuples of ints/strings to keep pickling boring.
"""

from __future__ import annotations

import hashlib
import json
import math
import multiprocessing
import os
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cfrac import cf_of_quadratic, cf_of_rational, zaremba_search
from .discrepancy import d_star
from .errors import QrpermError
from .expsums import _roots
from .families import psi, sos_perm
from .modular import is_prime
from .quadirr import QuadraticIrrational, parse_alpha
from .ranksets import a_set, gap_check, max_prefix_star

CSV_COLUMNS = ("family", "n_or_p", "params", "statistic",
               "value_num", "value_den_or_float", "normalized",
               "wall_time_ms")


@dataclass(frozen=True)
class ScanRecord:
    family: str
    n_or_p: int
    params: tuple[tuple[str, str], ...]
    statistic: str
    value_num: int | None       # exact value = num/den when den is set
    value_den: int | None
    value_float: float | None   # used when the value is inherently float
    normalized: float | None


def rec_q(family: str, n: int, params, stat: str, value,
          normalized: float | None = None) -> ScanRecord:
    f = Fraction(value)
    return ScanRecord(family, n, _canon_params(params), stat,
                      f.numerator, f.denominator, None, normalized)


def rec_f(family: str, n: int, params, stat: str, value: float,
          normalized: float | None = None) -> ScanRecord:
    return ScanRecord(family, n, _canon_params(params), stat,
                      None, None, float(value), normalized)


def _canon_params(params) -> tuple[tuple[str, str], ...]:
    if not params:
        return ()
    if isinstance(params, dict):
        params = params.items()
    return tuple(sorted((str(k), str(v)) for k, v in params))


def _params_str(params: tuple[tuple[str, str], ...]) -> str:
    return ";".join(f"{k}={v}" for k, v in params)


def _sort_key(r: ScanRecord):
    return (r.n_or_p, r.family, _params_str(r.params), r.statistic)


def _pool_map(fn, points, workers: int):
    if workers <= 1 or len(points) <= 1:
        return [fn(pt) for pt in points]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(workers, len(points))) as pool:
        return pool.map(fn, points, chunksize=1)


# ---------------------------------------------------------------- psi scan

def _psi_prime(p: int) -> list[ScanRecord]:
    vals: list[Fraction] = []
    for k in range(1, p):
        vals.append(d_star(psi(p, k)))
    total = sum(vals, Fraction(0))
    mean = total / (p - 1)
    best = min(vals)
    argmin = 1 + vals.index(best)   # smallest k on ties
    lnp = math.log(p)
    cf = cf_of_rational(argmin, p)
    quots = cf.quotients
    out = [
        rec_q("psi-scan", p, (), "mean_dstar", mean,
              float(mean) / lnp**2),
        rec_q("psi-scan", p, (), "mean_dstar_log2sq", mean,
              float(mean) / math.log2(p)**2),
        rec_q("psi-scan", p, {"k": argmin}, "min_dstar", best,
              float(best) / lnp),
        rec_q("psi-scan", p, {"k": argmin}, "min_dstar_log2", best,
              float(best) / math.log2(p)),
        rec_q("psi-scan", p, {"k": argmin}, "argmin_cf_max_quotient",
              max(quots)),
        rec_q("psi-scan", p, {"k": argmin}, "argmin_cf_quotient_sum",
              sum(quots)),
    ]
    return out


def scan_psi(pmin: int, pmax: int, workers: int = 1) -> list[ScanRecord]:
    """For every prime p in [pmin, pmax]: mean and min over k of
    D*(psi_k), with log-power normalizations in both bases, and the
    continued fraction shape of the minimising k/p."""
    points = [p for p in range(max(pmin, 3), pmax + 1) if is_prime(p)]
    out: list[ScanRecord] = []
    for chunk in _pool_map(_psi_prime, points, workers):
        out.extend(chunk)
    return sorted(out, key=_sort_key)


# -------------------------------------------------------------- gauss scan

def _gauss_prime(args: tuple[int, tuple[int, ...]]) -> list[ScanRecord]:
    p, a_values = args
    roots = _roots(p)
    scale = float(p) ** 0.75
    out: list[ScanRecord] = []
    best = -1.0
    best_at = (0, 0)
    for k in range(2, p - 1):
        if math.gcd(k, p - 1) != 1:
            continue
        pw = np.array([pow(s, k, p) for s in range(1, p + 1)],
                      dtype=np.int64)
        for a in a_values:
            if a % p == 0:
                continue
            cum = np.cumsum(roots[(a * pw) % p])
            mags = np.abs(cum)
            m_star = 1 + int(np.argmax(mags))
            peak = float(mags[m_star - 1])
            out.append(rec_f("gauss-scan", p, {"k": k, "a": a % p},
                             "max_incomplete", peak, peak / scale))
            out.append(rec_f("gauss-scan", p, {"k": k, "a": a % p},
                             "argmax_m", float(m_star), m_star / p))
            out.append(rec_f("gauss-scan", p, {"k": k, "a": a % p},
                             "complete_mag", float(abs(cum[-1]))))
            if peak > best:
                best, best_at = peak, (k, a % p)
    if best >= 0.0:
        out.append(rec_f("gauss-scan", p,
                         {"k": best_at[0], "a": best_at[1]},
                         "p_max_incomplete", best, best / scale))
    return out


def scan_gauss(pmin: int, pmax: int, a_values=(1,),
               workers: int = 1) -> list[ScanRecord]:
    """Incomplete power sums S(a, k, M) = sum_{s<=M} e(a s^k / p) over
    every admissible exponent k (gcd(k, p-1) = 1, 1 < k < p-1), scanned
    over all cut points M, normalized by p^{3/4}; one global-max row
    per prime."""
    a_values = tuple(a_values)
    points = [(p, a_values) for p in range(max(pmin, 5), pmax + 1)
              if is_prime(p)]
    out: list[ScanRecord] = []
    for chunk in _pool_map(_gauss_prime, points, workers):
        out.extend(chunk)
    return sorted(out, key=_sort_key)


# ---------------------------------------------------------------- sos scan

def _cf_profile(alpha, n: int) -> tuple[int, int, int]:
    """(m, sum, max) of the partial quotients a_1..a_m where m is the
    last index whose convergent denominator is still <= n."""
    if isinstance(alpha, QuadraticIrrational):
        cf = cf_of_quadratic(alpha)
    else:
        alpha = Fraction(alpha)
        cf = cf_of_rational(alpha.numerator, alpha.denominator)
    h, k = cf.a0, 1
    h_prev, k_prev = 1, 0
    quots: list[int] = []
    i = 0
    while True:
        try:
            a = cf.quotient(i + 1)
        except QrpermError:
            break
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        if k > n:
            break
        quots.append(a)
        i += 1
        if i > 4 * int(math.log(n + 1, 1.6)) + 8:
            break   # denominators grow at least like Fibonacci
    if not quots:
        return (0, 0, 0)
    return (len(quots), sum(quots), max(quots))


def _sos_point(args: tuple[str, int]) -> list[ScanRecord]:
    label, n = args
    alpha = parse_alpha(label)
    # rational alpha has honest ties once n reaches the denominator;
    # scans always break them by position (smaller s first)
    sigma = sos_perm(n, alpha, tie_break=not isinstance(
        alpha, QuadraticIrrational))
    ds = d_star(sigma)
    prefix = max_prefix_star(alpha, n)
    log2n = math.log2(n) if n > 1 else 1.0
    pm = dict(alpha=label)
    out = [
        rec_q("sos-scan", n, pm, "dstar", ds, float(ds) / log2n),
        rec_f("sos-scan", n, pm, "max_prefix_star", float(prefix.value),
              float(prefix.value) / log2n),
        rec_f("sos-scan", n, pm, "argmax_prefix", float(prefix.argmax_s),
              prefix.argmax_s / n),
        rec_q("sos-scan", n, pm, "discrelation_ok",
              int(float(ds) <= 2.0 * float(prefix.value) + 1e-9)),
        rec_f("sos-scan", n, pm, "discrelation_ratio",
              float(ds) / (2.0 * float(prefix.value))),
    ]
    m, qsum, qmax = _cf_profile(alpha, n)
    if m:
        out.append(rec_q("sos-scan", n, pm, "cf_quotient_sum", qsum,
                         float(ds) / (qsum + m)))
        out.append(rec_q("sos-scan", n, pm, "cf_max_quotient", qmax))
    return out


def scan_sos(alpha_labels, n_list, workers: int = 1) -> list[ScanRecord]:
    """Sos permutations beta_alpha: exact D*, the prefix star
    discrepancy of ({s*alpha}), and the discrepancy-transfer check
    D*(beta_alpha) <= 2 * max_s d*."""
    for label in alpha_labels:
        parse_alpha(label)          # fail fast on typos, outside the pool
    points = [(label, int(n)) for label in alpha_labels for n in n_list]
    if not points:
        raise QrpermError("empty sos scan")
    out: list[ScanRecord] = []
    for chunk in _pool_map(_sos_point, points, workers):
        out.extend(chunk)
    return sorted(out, key=_sort_key)


# ------------------------------------------------- rank-set / target scan

def scan_obryant(alpha_label: str, limit: int,
                 targets=()) -> list[ScanRecord]:
    """Which values does {B_alpha(k) : k <= limit} hit?  Also the density
    |A| against sqrt(n / ln n) and the largest element-free interval
    against the sqrt(32 n D) guarantee."""
    alpha = parse_alpha(alpha_label)
    sigma = sos_perm(limit, alpha)
    ranks = a_set(sigma)
    d_up = 4 * d_star(sigma)
    gc = gap_check(sigma, d_up)
    pm = dict(alpha=alpha_label)
    out = [
        rec_q("obryant", limit, pm, "aset_size", ranks.count,
              ranks.count / math.sqrt(limit / math.log(limit))),
        rec_q("obryant", limit, pm, "max_gap", ranks.max_gap,
              ranks.max_gap / gc.required_length),
        rec_q("obryant", limit, pm, "gap_ok", int(gc.ok)),
    ]
    hit = set(ranks.values)
    for t in targets:
        out.append(rec_q("obryant", limit, dict(alpha=alpha_label, target=t),
                         "target_hit", int(int(t) in hit)))
    return sorted(out, key=_sort_key)


def scan_zaremba(nmin: int, nmax: int, bound) -> list[ScanRecord]:
    """Best bounded-quotient numerator for each denominator n."""
    bound = Fraction(bound)
    out: list[ScanRecord] = []
    for n in range(max(nmin, 2), nmax + 1):
        z = zaremba_search(n, bound)
        out.append(rec_q("zaremba", n, {"k": z.k}, "max_quotient",
                         z.max_quotient, float(z.max_quotient / bound)))
        out.append(rec_q("zaremba", n, {"k": z.k}, "max_prefix_avg",
                         z.max_prefix_average))
        out.append(rec_q("zaremba", n, {"k": z.k}, "certified",
                         int(z.certifies)))
    return sorted(out, key=_sort_key)


# ------------------------------------------------------------- emission

@dataclass(frozen=True)
class EmitResult:
    csv_path: str
    summary_path: str
    body_sha256: str
    rows: int


def _fmt_float(x: float) -> str:
    return repr(float(x))


def csv_rows(records: list[ScanRecord]) -> list[str]:
    rows = [",".join(CSV_COLUMNS)]
    for r in sorted(records, key=_sort_key):
        if r.value_den is not None:
            vnum, vden = str(r.value_num), str(r.value_den)
        else:
            vnum, vden = "", _fmt_float(r.value_float)
        norm = _fmt_float(r.normalized) if r.normalized is not None else ""
        rows.append(",".join((r.family, str(r.n_or_p),
                              _params_str(r.params), r.statistic,
                              vnum, vden, norm, "0")))
    return rows


def emit(records: list[ScanRecord], out_dir: str, base: str,
         config_echo: dict, wall_time_ms: float | None = None) -> EmitResult:
    """Write <base>.csv and <base>_summary.json under out_dir.

    The CSV body (header + data rows, not the leading config comment) is
    what the summary's sha256 covers; the comment line is excluded
    because it echoes knobs like the worker count that must not perturb
    the digest.
    """
    os.makedirs(out_dir, exist_ok=True)
    seen = set()
    for r in records:
        key = (r.family, r.n_or_p, r.params, r.statistic)
        if key in seen:
            raise QrpermError(f"duplicate scan record {key}")
        seen.add(key)
    body = csv_rows(records)
    digest = hashlib.sha256(
        ("\n".join(body) + "\n").encode()).hexdigest()
    echo = " ".join(f"{k}={config_echo[k]}" for k in sorted(config_echo))
    csv_path = os.path.join(out_dir, base + ".csv")
    with open(csv_path, "w") as fh:
        fh.write(f"# config: {echo}\n")
        fh.write("\n".join(body) + "\n")

    per_stat: dict[str, list[float]] = {}
    for r in records:
        v = r.value_float if r.value_float is not None else (
            r.value_num / r.value_den)
        per_stat.setdefault(r.statistic, []).append(float(v))
    from . import __version__
    summary = {
        "version": __version__,
        "config": {k: str(v) for k, v in sorted(config_echo.items())},
        "rows": len(records),
        "csv_body_sha256": digest,
        "wall_time_ms": None if wall_time_ms is None else round(
            wall_time_ms, 3),
        "statistics": {
            stat: {"count": len(vals), "min": min(vals),
                   "max": max(vals),
                   "mean": math.fsum(vals) / len(vals)}
            for stat, vals in sorted(per_stat.items())
        },
    }
    summary_path = os.path.join(out_dir, base + "_summary.json")
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EmitResult(csv_path, summary_path, digest, len(records))


def write_plot_data(records: list[ScanRecord], path: str,
                    statistic: str) -> int:
    """Tidy (x, y, series) rows for one statistic, ready for gnuplot or
    a notebook; y is the normalized column when present."""
    rows = ["x,y,series"]
    for r in sorted(records, key=_sort_key):
        if r.statistic != statistic:
            continue
        if r.normalized is not None:
            y = _fmt_float(r.normalized)
        elif r.value_float is not None:
            y = _fmt_float(r.value_float)
        else:
            y = _fmt_float(r.value_num / r.value_den)
        series = _params_str(r.params) or r.family
        rows.append(f"{r.n_or_p},{y},{series}")
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    return len(rows) - 1


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, (time.perf_counter() - t0) * 1000.0
