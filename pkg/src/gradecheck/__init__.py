"""gradecheck: Groebner bases, Hilbert series and stretchedness tests for
standard graded rings over QQ and prime fields."""

from .errors import (
    ConsistencyError,
    GradecheckError,
    NotCohenMacaulayError,
    NotHomogeneousError,
    NotHSOPError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .fields import GF, QQ
from .groebner import Ideal, colon, ideal_equal, intersect, krull_dimension, normal_form, reduced_gb
from .hilbert import hilbert_function, hilbert_series, is_cohen_macaulay, socle
from .invariants import (
    GradedRing,
    check_hsop_super_stretched,
    classify_h_vector,
    countable_type_obstruction,
    has_minimal_multiplicity,
    is_minimal_reduction,
    is_stretched,
    is_super_stretched,
    ring_report,
)
from .polys import PolyRing, Polynomial

__version__ = "0.1.0"
