"""Finite and interval-based contact algebras: axiom checks, point constructions, model search."""

__version__ = "0.1.0"

from .algebra import FiniteAlgebra, Region
from .checks import Axiom, check_axiom, holds, is_bca, is_bwca
from .contact import (
    ContactStructure,
    atom_graph_contact,
    contact,
    d_contact,
    full_contact,
    ll,
    overlap_contact,
    product_contact,
    separated,
    total_contact,
)
from .errors import (
    AlgebraMismatchError,
    ApproximationError,
    CapabilityError,
    ContactLabError,
    ParseError,
    PreconditionError,
)
from .reports import CheckReport, DepthReport, SearchOutcome, Status

__all__ = [
    "__version__",
    "FiniteAlgebra", "Region", "Axiom", "check_axiom", "holds", "is_bca", "is_bwca",
    "ContactStructure", "atom_graph_contact", "contact", "d_contact", "full_contact", "ll",
    "overlap_contact", "product_contact", "separated", "total_contact",
    "AlgebraMismatchError", "ApproximationError", "CapabilityError", "ContactLabError",
    "ParseError", "PreconditionError",
    "CheckReport", "DepthReport", "SearchOutcome", "Status",
]
