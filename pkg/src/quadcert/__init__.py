"""Exact certification of monomial group actions on quadric intersections in P^7."""

__version__ = "0.1.0"

from .cyclotomic import CyclotomicNumber, root_of_unity

__all__ = [
    "CyclotomicNumber",
    "root_of_unity",
    "__version__",
]
