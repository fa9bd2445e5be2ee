"""Exception hierarchy shared by every layer of the engine."""


class TordiffError(Exception):
    """Base class for all engine errors."""


class RingMismatch(TordiffError):
    pass


class InexactDivision(TordiffError):
    """Raised when an exact division is requested but the divisor does not divide."""

    def __init__(self, dividend, divisor, remainder=None):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{divisor} does not divide {dividend}")


class ZeroPolynomial(TordiffError):
    pass


class ResourceCap(TordiffError):
    """A configured limit (degree, pair count, iteration count) was exceeded."""


class RankMismatch(TordiffError):
    pass


class IllDefinedMorphism(TordiffError):
    def __init__(self, relation, image):
        self.relation = relation
        self.image = image
        super().__init__(f"relation {relation} maps to {image} != 0")


class IllDefinedMap(TordiffError):
    pass


class CandidateRejected(TordiffError):
    def __init__(self, condition, detail=""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"candidate rejected ({condition}): {detail}")


class NotADomain(TordiffError):
    pass


class DegenerateHyperplane(TordiffError):
    pass


class DegreeOutOfRange(TordiffError):
    pass


class MethodInapplicable(TordiffError):
    pass


class DiagramInvalid(TordiffError):
    pass


class UnknownScenario(TordiffError):
    pass


class ParamOutOfRange(TordiffError):
    pass
