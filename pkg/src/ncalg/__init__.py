"""Finitely presented graded algebras over Q: truncated noncommutative
Groebner bases, Hilbert series, quadratic duals, Koszulity and PBW tests,
graded Betti numbers, and morphism verification."""

from .core import Alphabet, ModP, MonomialOrder, NCPolynomial, Word, commutator, compare, multiply
from .presentations import (
    LinearSubstitution,
    ParseError,
    Presentation,
    apply_substitution,
    column_sum_substitution,
    mccool_cohomology,
    parse_presentation,
    substituted_u_g,
    u_g,
    u_g_mod_h,
    u_g_mod_h_dual,
)
from .groebner import Ambiguity, GroebnerBasis, compute_gb, find_ambiguities, normal_form
from .hilbert import HilbertSeries, brute_force_hilbert, hilbert_series, reference_series

__version__ = "0.1.0"
