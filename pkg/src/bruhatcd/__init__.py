"""cd-indices of Bruhat intervals: Coxeter groups, graded posets, zipping,
and the structural recursion that builds an interval from smaller ones."""

from .coxeter import (
    CoxeterMatrix,
    CoxeterSystem,
    Element,
    bruhat_interval,
    bruhat_leq,
    dihedral,
    generic,
    parse_element,
    symmetric,
    universal,
)
from .flags import ab_index, cd_index, flag_f, flag_h, flag_index
from .polynomials import AbPolynomial, CdPolynomial, ab_to_cd, cd_to_ab
from .poset import GradedPoset, is_eulerian, is_thin
from .recursion import CdRecursion, cd_index_interval, zipping_sequence

__all__ = [
    "AbPolynomial",
    "CdPolynomial",
    "CdRecursion",
    "CoxeterMatrix",
    "CoxeterSystem",
    "Element",
    "GradedPoset",
    "ab_index",
    "ab_to_cd",
    "bruhat_interval",
    "bruhat_leq",
    "cd_index",
    "cd_index_interval",
    "cd_to_ab",
    "dihedral",
    "flag_f",
    "flag_h",
    "flag_index",
    "generic",
    "is_eulerian",
    "is_thin",
    "parse_element",
    "symmetric",
    "universal",
    "zipping_sequence",
]
