"""Exact constructions of linear strands of determinantal resolutions and the
Lie superalgebra actions on them."""

from .partitions import Partition, SkewShape, transpose, p_rs, pq_rs, rect_complement
from .symfunc import SchurSum, PairSchurSum, dim_schur, lr_coeff, jpw_character, lascoux_character

__all__ = ["Partition", "SkewShape", "transpose", "p_rs", "pq_rs", "rect_complement",
           "SchurSum", "PairSchurSum", "dim_schur", "lr_coeff", "jpw_character",
           "lascoux_character"]

__version__ = "0.1.0"
