"""Statistic-preserving bijections between pattern-avoiding permutation
classes, inversion-sequence codings and exact series checks for their
common counting sequence."""

from .bijections import alpha, beta, classify, decompose_type_I, decompose_type_II, phi, psi
from .errors import InvalidWordError, InvariantError, PreconditionError, StructureError
from .genfun import (
    closed_form_coefficients,
    count_by_succession,
    f_poly,
    parameters,
    successors,
    verify_algebraic_equation,
    verify_satu_equation,
    verify_section21,
)
from .invseq import inv_statistics, lehmer_code, ms_code, ms_decode, seq_contains
from .permcore import avoiders, contains_pattern, enumerate_class, parse_word, statistics

__version__ = "0.1.0"
