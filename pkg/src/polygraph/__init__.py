"""polygraph: an executable toolkit for single-vertex k-graph semigroups.

Validation of permutation presentations, unique-factorization normal
forms, enumeration and isomorphism classification, periodicity
certificates with symmetry lattices, exact relation-level star-algebra
arithmetic, and finitely correlated atomic representations on finite
abelian groups.
"""

__version__ = "0.1.0"

from .kgraph import (  # noqa: F401
    CubicViolation,
    InvalidPermutation,
    NotAPrefix,
    Presentation,
    PresentationError,
    WordError,
    concat,
    degree,
    extract_prefix,
    normal_form,
    validate_presentation,
    words_equal,
)
