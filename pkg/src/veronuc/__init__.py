"""Nuclei of Veronese varieties over finite fields, computed two ways."""

from .gf import Field, FieldElement, enumerate_elements, field_new, parse_field_spec
from .mono import (
    EmptyCase,
    base_p_digits,
    carry_free,
    classify_empty,
    count_nonvanishing,
    enumerate_exponents,
    multinomial_exact,
    multinomial_mod_p,
    nucleus_dim_formula,
    rank,
    span_of_powers_dim,
    unrank,
)
from .exlin import MatrixF, Subspace, intersect, nullspace, rowspace, rref, subspace_equal
from .vero import NucleusReport, VeroContext, nucleus_bruteforce, verify

__version__ = "0.1.0"

__all__ = [
    "Field", "FieldElement", "enumerate_elements", "field_new", "parse_field_spec",
    "EmptyCase", "base_p_digits", "carry_free", "classify_empty", "count_nonvanishing",
    "enumerate_exponents", "multinomial_exact", "multinomial_mod_p", "nucleus_dim_formula",
    "rank", "span_of_powers_dim", "unrank",
    "MatrixF", "Subspace", "intersect", "nullspace", "rowspace", "rref", "subspace_equal",
    "NucleusReport", "VeroContext", "nucleus_bruteforce", "verify",
]
