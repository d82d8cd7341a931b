"""Exact residue-current factorizations of fundamental cycles of monomial ideals."""
from .cycles import Cycle, MonomialIdeal, fundamental_cycle, length_along, minimal_primes, multiplicity_along
from .engine import Case, Report, demo_embedded, demo_nonpure, run_case, verify_ci, verify_cm, verify_nonpure, verify_universal

__all__ = [
    "Case",
    "Cycle",
    "MonomialIdeal",
    "Report",
    "demo_embedded",
    "demo_nonpure",
    "fundamental_cycle",
    "length_along",
    "minimal_primes",
    "multiplicity_along",
    "run_case",
    "verify_ci",
    "verify_cm",
    "verify_nonpure",
    "verify_universal",
]
