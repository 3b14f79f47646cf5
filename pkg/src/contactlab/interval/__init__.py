"""Regular open regions of subspaces of the real line with exact rational endpoints."""

from .nest import Nest, parse_nest
from .space import AmbientSpace, IntervalRegion, contact_T, ll_T, parse_ambient, parse_region

__all__ = ["AmbientSpace", "IntervalRegion", "Nest", "contact_T", "ll_T", "parse_ambient", "parse_nest", "parse_region"]
