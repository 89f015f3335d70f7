"""Exact K-theoretic Schubert calculus on flag varieties.

The engine computes, over arbitrary-precision integers and without any
floating point, the Schubert-structure-sheaf basis of the Grothendieck
ring of G/P, its three companion bases, structure constants and
line-bundle restriction coefficients, together with verification sweeps
for the sign and positivity identities these objects satisfy.
"""

from .errors import (
    BoundExceededError,
    ConfigError,
    IntegrityError,
    KflagError,
    NonzeroResidualError,
    NotDivisibleError,
    PoleAtOneError,
)
from .laurent import LaurentPoly
from .model import (
    EquivClass,
    ExpansionResult,
    SchubertModel,
    kadd,
    kdual,
    kmul,
    weyl_act,
)
from .ring import KClass, LineReport, SchubertRing, SignReport
from .roots import (
    ParabolicData,
    RootDatum,
    WeylElement,
    WeylGroup,
    build_root_datum,
    root_datum_from_cartan,
    weyl_dimension,
)
from .univariate import UniPoly, UniRational, sum_and_evaluate_at_one

__all__ = [
    "BoundExceededError",
    "ConfigError",
    "EquivClass",
    "ExpansionResult",
    "IntegrityError",
    "KClass",
    "KflagError",
    "LaurentPoly",
    "LineReport",
    "NonzeroResidualError",
    "NotDivisibleError",
    "ParabolicData",
    "PoleAtOneError",
    "RootDatum",
    "SchubertModel",
    "SchubertRing",
    "SignReport",
    "UniPoly",
    "UniRational",
    "WeylElement",
    "WeylGroup",
    "build_root_datum",
    "kadd",
    "kdual",
    "kmul",
    "root_datum_from_cartan",
    "sum_and_evaluate_at_one",
    "weyl_act",
    "weyl_dimension",
]

__version__ = "0.1.0"
