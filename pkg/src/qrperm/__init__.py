"""Quasirandomness toolkit for arithmetic permutation families.

Interval discrepancy (exact, over the rationals), exponential sum
evidence, continued fraction machinery, rank-set analysis for Sos
permutations, and parameter scans over the classical families
psi / lambda / eta / rho.
"""

from .cfrac import (AverageCheck, ContinuedFraction, ZarembaResult,
                    bounded_average_check, cf_of_quadratic, cf_of_rational,
                    continuant, convergents, zaremba_search)
from .discrepancy import (DiscrepancyReport, RealStarDisc, build_report,
                          d_exact, d_star, d_zero, interval_hit,
                          min_hitting_length, real_star_disc,
                          set_discrepancy, verify_interval_hits)
from .errors import (AmbiguousOrderError, InvalidGeneratorError,
                     InvalidModulusError, NotAPermutationError,
                     NotAUnitError, QrpermError, SizeRefusedError)
from .expsums import (CompletionReport, SumValue, completion_check, e,
                      erdos_turan_bound, erdos_turan_min, gauss_power_sum,
                      incomplete_sigma_sum, interval_fourier, kloosterman,
                      max_incomplete_sum, twisted_full_sum, w_sum, weyl_sum)
from .families import (Permutation, bit_reversal, compose, eta_power,
                       from_text, identity_perm, invert, lambda_inv, psi,
                       random_perm, reversal_perm, rho_exp, sos_perm,
                       to_text)
from .intervals import Interval, all_intervals
from .modular import (PrimeModulus, euler_phi, factorize,
                      find_primitive_root, is_prime, is_primitive_root,
                      mod_inv, mod_pow, multiplicative_order)
from .qrstats import (EigenvalueStat, PropertyProfile, eigenvalue_stat,
                      pattern_count, property_profile,
                      restricted_pattern_count, restriction,
                      separability_stat, translation_stat, two_subseq_stat)
from .quadirr import (QuadraticIrrational, alpha_label, floor_multiple,
                      floor_surd, frac_compare, frac_float, golden,
                      is_square_free, parse_alpha, sign_of_surd, sqrt_irr)
from .ranksets import (ASet, GapCheck, PrefixStar, a_set, b_of_k,
                       b_sequence, gap_check, max_prefix_star)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
