"""Exception hierarchy shared by every module."""


class EnriquesError(Exception):
    pass


class NotDivisible(EnriquesError, ValueError):
    pass


class NotIsometry(EnriquesError, ValueError):
    def __init__(self, row, col, got, expected):
        self.row, self.col, self.got, self.expected = row, col, got, expected
        super().__init__(
            f"M G M^T differs from G at ({row}, {col}): got {got}, expected {expected}")


class NonSymmetric(EnriquesError, ValueError):
    pass


class CurveSystemError(EnriquesError, ValueError):
    pass


class NotMinusTwo(CurveSystemError):
    def __init__(self, index, square):
        self.index = index
        super().__init__(f"curve {index} has self-intersection {square}, expected -2")


class NegativePairing(CurveSystemError):
    def __init__(self, i, j, value):
        self.i, self.j = i, j
        super().__init__(f"curves {i} and {j} meet negatively ({value})")


class Duplicate(CurveSystemError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"curves {i} and {j} have the same class")


class Inconsistent(EnriquesError):
    """Structural Dynkin label disagrees with the multiplicity vector."""


class DoubleDivisible(EnriquesError, ValueError):
    pass


class NotIsotropic(EnriquesError, ValueError):
    def __init__(self, index, square):
        self.index = index
        super().__init__(f"class {index} has square {square}, expected 0")


class UnknownGenerator(EnriquesError, KeyError):
    pass


class InvariantViolation(EnriquesError):
    pass


class NoFit(EnriquesError):
    pass


class Unbounded(EnriquesError):
    pass


class ProofStepFailed(EnriquesError):
    def __init__(self, step, detail=""):
        self.step = step
        self.detail = detail
        super().__init__(f"proof step {step!r} failed" + (f": {detail}" if detail else ""))


class UnresolvableCurve(EnriquesError):
    def __init__(self, entry, term, reason=""):
        self.entry, self.term = entry, term
        super().__init__(f"member {entry}, term {term}: cannot resolve curve"
                         + (f" ({reason})" if reason else ""))


class SchemaError(EnriquesError, ValueError):
    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")


class ValidationError(EnriquesError, ValueError):
    pass
