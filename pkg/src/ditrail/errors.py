"""Exception hierarchy shared by every module."""


class DitrailError(Exception):
    pass


class InputError(DitrailError, ValueError):
    """Malformed input: unknown vertices, empty sets, bad files."""


class ParseError(InputError):
    pass


class SpliceError(DitrailError):
    """Two trails cannot be composed (shared arc, missing vertex)."""


class ContractViolation(DitrailError):
    """A routine was handed an object that breaks its stated contract."""


class PreconditionError(DitrailError):
    """The hypotheses of a structural check are not met.

    Kept apart from ``LemmaViolation`` so that fuzzing campaigns can skip
    uninteresting samples without hiding real findings.
    """


class LemmaViolation(DitrailError):
    """A structural assertion failed although its hypotheses hold."""


class MoveInapplicable(DitrailError):
    pass


class ConstructionImpossible(DitrailError):
    pass


class BudgetExhausted(DitrailError):
    """The node-expansion cap of an exact search was reached.

    This is an *inconclusive* outcome; it never stands for "no".
    """

    def __init__(self, limit):
        super().__init__(f"search budget of {limit} expansions exhausted")
        self.limit = limit


class TheoremViolation(DitrailError):
    """A checker said the hypotheses hold but the exact oracle found no witness."""

    def __init__(self, theorem, instance):
        super().__init__(f"THEOREM-VIOLATION for {theorem}: {instance}")
        self.theorem = theorem
        self.instance = instance
