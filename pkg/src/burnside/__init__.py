"""Exact spectral analysis of the binary Burnside process on C_2^n."""

from .eigenbasis import SpectrumEntry, beta, f_vector, full_basis, g_vector, sq_norm_closed, t_scalar
from .tableaux import Tableau, column_reading, enumerate_tableaux, gamma, tau_word
from .tensor import Subset, TensorVector, inner_product

__all__ = [
    "SpectrumEntry",
    "Subset",
    "Tableau",
    "TensorVector",
    "beta",
    "column_reading",
    "enumerate_tableaux",
    "f_vector",
    "full_basis",
    "g_vector",
    "gamma",
    "inner_product",
    "sq_norm_closed",
    "t_scalar",
    "tau_word",
]
