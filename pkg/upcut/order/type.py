from enum import auto, StrEnum
from typing import TypeAlias

import numpy as np
import numpy.typing as npt


Element: TypeAlias = str
Subset: TypeAlias = frozenset[str]
Relation: TypeAlias = npt.NDArray[np.bool_]
Table: TypeAlias = npt.NDArray[np.intp]

# The default limit on the size of exhaustive enumerations.
DEFAULT_CAP = 1_000_000


class Preserve(StrEnum):
    """The structure preserved by an isomorphism or embedding witness."""

    ORDER = auto()
    MEETS = auto()
    JOINS = auto()
    BOUNDS = auto()


class Axiom(StrEnum):
    """The three requirements on a closure operator."""

    INFLATIONARY = auto()
    MONOTONE = auto()
    IDEMPOTENT = auto()


class FamilyOrder(StrEnum):
    SUPERSET = auto()
    SUBSET = auto()


class Reading(StrEnum):
    """How to read the union-bar of the explicit restriction formula."""

    CLOSURE = auto()
    INTERSECTION = auto()
