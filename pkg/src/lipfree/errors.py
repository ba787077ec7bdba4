"""Exception hierarchy shared by every module."""


class LipfreeError(Exception):
    """Base class for all library errors."""


class InvalidSpace(LipfreeError, ValueError):
    pass


class NotSymmetric(InvalidSpace):
    pass


class NotSeparated(InvalidSpace):
    pass


class TriangleViolation(InvalidSpace):
    def __init__(self, triple: tuple[int, int, int], excess: float):
        i, j, k = triple
        super().__init__(
            f"d({i},{k}) exceeds d({i},{j}) + d({j},{k}) by {excess:.3e}"
        )
        self.triple = triple
        self.excess = excess


class EmptySelection(LipfreeError, ValueError):
    pass


class SolverFailure(LipfreeError, RuntimeError):
    pass


class NotALineSpace(LipfreeError, ValueError):
    pass


class UnboundedD(LipfreeError, ValueError):
    pass


class BoundViolated(LipfreeError, AssertionError):
    pass


class EmptyAnnulus(LipfreeError, ValueError):
    pass


class NotBiLipschitz(LipfreeError, ValueError):
    pass


class NegativeShift(LipfreeError, ValueError):
    pass


class BadParams(LipfreeError, ValueError):
    pass


class ConfigError(LipfreeError, ValueError):
    pass
