"""Result records returned by checkers and searches, plus their JSON form."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from .algebra import Region


@dataclass(frozen=True)
class CheckReport:
    """Outcome of deciding one axiom or property on one structure.

    ``witness`` is present exactly when ``holds`` is false and instantiates
    the outermost universal quantifiers of the refuted sentence.
    """

    name: str
    holds: bool
    witness: Optional[tuple] = None
    note: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError(f"failed report {self.name!r} needs a witness")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class DepthReport:
    """Outcome of a prefix check on an infinite nest.

    ``certified`` is set only when a machine-checked tail rule turns the
    depth-bounded check into a statement about the whole nest; ``theorem``
    then names the result licensing it.
    """

    name: str
    holds: bool
    verified_to_depth: int
    certified: bool = False
    witness: Any = None
    note: str = ""
    theorem: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.certified and not self.holds and self.witness is None:
            raise ValueError(f"certified failure {self.name!r} needs a witness")

    def __bool__(self) -> bool:
        return self.holds


class Status(str, Enum):
    CONFIRMED = "theorem-confirmed"
    COUNTERMODEL = "countermodel-found"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of running one property over an enumeration range."""

    name: str
    status: Status
    models_checked: int = 0
    model: Any = None
    witness: Any = None
    note: str = ""
    expected: Optional[Status] = None

    @property
    def matches_expectation(self) -> bool:
        return self.expected is None or self.expected == self.status


def to_jsonable(obj: Any) -> Any:
    """Convert reports, regions and model objects to plain JSON data."""
    # local import keeps reports importable from contact/interval modules
    from .contact import ContactStructure
    from .interval.nest import Nest
    from .interval.space import IntervalRegion
    from .representatives import GFilter, RegionSet

    if isinstance(obj, (Region, IntervalRegion, RegionSet, GFilter, Nest)):
        return str(obj)
    if isinstance(obj, ContactStructure):
        return obj.describe()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, CheckReport):
        return {
            "kind": "check",
            "name": obj.name,
            "holds": obj.holds,
            "witness": to_jsonable(obj.witness),
            "note": obj.note,
            "details": to_jsonable(obj.details),
        }
    if isinstance(obj, DepthReport):
        return {
            "kind": "depth",
            "name": obj.name,
            "holds": obj.holds,
            "verified_to_depth": obj.verified_to_depth,
            "certified": obj.certified,
            "witness": to_jsonable(obj.witness),
            "note": obj.note,
            "theorem": obj.theorem,
            "details": to_jsonable(obj.details),
        }
    if isinstance(obj, SearchOutcome):
        return {
            "kind": "search",
            "name": obj.name,
            "status": obj.status.value,
            "expected": obj.expected.value if obj.expected else None,
            "models_checked": obj.models_checked,
            "model": to_jsonable(obj.model),
            "witness": to_jsonable(obj.witness),
            "note": obj.note,
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        if all(isinstance(v, Region) for v in obj):
            return [str(v) for v in sorted(obj, key=lambda r: r.code)]
        return sorted((to_jsonable(v) for v in obj), key=str)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)
