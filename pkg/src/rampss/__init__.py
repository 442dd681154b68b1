"""Linear ramp secret sharing from nested codes over prime fields.

Subpackages cover exact GF(q) linear algebra (gf), linear-code operations
and the exhaustive relative-weight oracle (codes), dealing / reconstruction
/ access profiles (sharing), monomial-Cartesian evaluation codes with
bound and witness machinery (cartesian), the scheme families built on them
(constructions), and the document/CLI surface (documents, cli).
"""

from .errors import (
    BudgetExceededError,
    NonRealizableSharesError,
    RampssError,
    TheoremScopeError,
    ValidationError,
    VerificationError,
)
from .gf import Matrix, PrimeField, Subspace
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "BudgetExceededError",
    "Matrix",
    "NonRealizableSharesError",
    "PrimeField",
    "RampssError",
    "Subspace",
    "TheoremScopeError",
    "ValidationError",
    "VerificationError",
]

__version__ = "0.1.0"
