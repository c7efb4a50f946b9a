"""Exception hierarchy shared by every layer.

Errors fall into two groups. Input errors (a bad algebra file, a budget that is
too small) are the caller's fault. ``TheoryViolation`` and its subclasses mean a
property that should hold by construction failed, which is a bug or a
counterexample worth reporting.
"""


class ArtifactError(Exception):
    pass


class NotAdmissible(ArtifactError):
    pass


class FieldTooSmall(ArtifactError):
    pass


class AlgebraMismatch(ArtifactError):
    pass


class BudgetExceeded(ArtifactError):
    pass


class NotPresilting(ArtifactError):
    pass


class NotSupportTauRigid(ArtifactError):
    pass


class NotTauRigid(NotSupportTauRigid):
    pass


class NotProjective(ArtifactError):
    pass


class NotInjective(ArtifactError):
    pass


class NotInReduction(ArtifactError):
    pass


class NotRelativeProjective(ArtifactError):
    pass


class NotRelativeInjective(ArtifactError):
    pass


class NotCompatible(ArtifactError):
    pass


class InvalidSequence(ArtifactError):
    pass


class DuplicateEntry(InvalidSequence):
    pass


class TheoryViolation(ArtifactError):
    """A structural guarantee failed at runtime."""


class NotTwoTermReducible(TheoryViolation):
    pass


class MutationDegenerate(TheoryViolation):
    pass


class DecompositionFailed(TheoryViolation):
    pass


class NotDiscreteFibration(TheoryViolation):
    pass


class FunctorLawViolation(TheoryViolation):
    pass
