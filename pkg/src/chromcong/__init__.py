"""Exact verification of chromatic congruences, Hall counts, Harer-Zagier
Euler characteristics and the Bernoulli congruences they imply."""

from .arith import INFINITY, is_p_integral, qbinom, residue_qzp, vp
from .bernoulli import (bernoulli, carlitz_check, cohen_check, kummer_check,
                        von_staudt_clausen_check, zeta_neg)
from .chromatic import (GroupProfile, SubgroupClassRecord, bq_sum, format_profile,
                        height_sum, limit_convergence_check, parse_profile,
                        section7_check, section7_profile)
from .counting import (AbelianPType, brown_quillen_sum_finite, frobenius_count,
                       gen_tuples_bruteforce, hall_gen_count, theoremB_finite_check,
                       tuple_class_sum)
from .groups import FiniteGroup, catalog, group_from_name
from .moduli import (chi_orb_closed, chi_orb_punctured, chi_q, count_residue_tuples,
                     n_closed_prime_power, prop61_check, thm611_check)
from .verdict import OracleMismatch, Status, Verdict

__version__ = "0.1.0"
