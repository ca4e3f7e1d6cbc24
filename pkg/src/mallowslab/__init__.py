"""Mallows permutations, first-order logic on permutations, and limit-law experiments."""

from . import limit, logic, mallows, perm, struct, towers
from .mallows import MallowsParams, RegenerativeStream, sample_mallows, sample_mallows_batch
from .perm import Perm

__version__ = "0.1.0"

__all__ = [
    "limit", "logic", "mallows", "struct", "perm", "towers", "MallowsParams", "RegenerativeStream",
    "sample_mallows", "sample_mallows_batch", "Perm", "__version__",
]
