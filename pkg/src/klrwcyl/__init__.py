"""Cylindrical KLRW diagram algebra and abelianized Coulomb branch computations.

Submodules:

- ``quiver``: framed quivers, circle configurations, matter weights
- ``strands``: taut diagrams, crossing counts, gradings, enumeration
- ``engine``: elementary steps, words, normal forms and composition
- ``laurent`` / ``coulomb``: exact rational functions and monopole formulas
- ``cylmodel``: marked-point lifting conditions
- ``cli``: command-line entry point
"""

from .coeffs import CoeffPoly
from .engine import (
    Morphism,
    Word,
    WordBuilder,
    compose,
    graded_compose,
    normal_form,
    oracle_compose,
    specialize,
)
from .errors import KLRWError
from .kernels import BACKEND
from .quiver import Configuration, Quiver, make_quiver, validate_configuration, validate_quiver
from .strands import TautDiagram, enumerate_taut, identity, make_taut

__all__ = [
    "BACKEND",
    "CoeffPoly",
    "Configuration",
    "KLRWError",
    "Morphism",
    "Quiver",
    "TautDiagram",
    "Word",
    "WordBuilder",
    "compose",
    "enumerate_taut",
    "graded_compose",
    "identity",
    "make_quiver",
    "make_taut",
    "normal_form",
    "oracle_compose",
    "specialize",
    "validate_configuration",
    "validate_quiver",
]
