"""Golden lattices over Z[theta] and symmetric Hilbert modular forms for Q(sqrt 5)."""

from .ring import ETA, ETA_INV, PHI, THETA, KElem, RElem
from .qseries import QExp
from .hmf import ExtremalResult, InsufficientPrecision, extremal_form, generators
from .rlattice import RGram, golden_check, goldenex, hilbert_theta, modular_family, trace_gram

__all__ = [
    "ETA", "ETA_INV", "PHI", "THETA", "KElem", "RElem", "QExp",
    "ExtremalResult", "InsufficientPrecision", "extremal_form", "generators",
    "RGram", "golden_check", "goldenex", "hilbert_theta", "modular_family", "trace_gram",
]
__version__ = "0.1.0"
