"""Two-term silting theory, tau-tilting reduction and tau-cluster morphism categories over finite fields."""

__version__ = "0.1.0"

from .errors import ArtifactError, TheoryViolation  # noqa: E402
from .fdalg import FDAlgebra, Module, PrimeField, QuiverPresentation, build_algebra, builtin_presentations  # noqa: E402
from .twoterm import SupportTauRigid, TwoTermCategory, TwoTermComplex  # noqa: E402
from .silting import ReducedAmbient, SiltingTheory  # noqa: E402
from .taured import TauSide  # noqa: E402
from .sequences import SequenceTools  # noqa: E402
from .cluster import FiniteCategory, FunctorData, build_M_C, build_M_Lambda, functor_F  # noqa: E402

__all__ = [
    "ArtifactError", "TheoryViolation",
    "FDAlgebra", "Module", "PrimeField", "QuiverPresentation", "build_algebra", "builtin_presentations",
    "SupportTauRigid", "TwoTermCategory", "TwoTermComplex",
    "ReducedAmbient", "SiltingTheory", "TauSide", "SequenceTools",
    "FiniteCategory", "FunctorData", "build_M_C", "build_M_Lambda", "functor_F",
]
