"""Exception hierarchy shared by every module."""


class CycloError(Exception):
    """Base class; the CLI maps any subclass to exit code 1."""


class NotPrime(CycloError):
    def __init__(self, n):
        super().__init__(f"{n} is not prime")
        self.n = n


class CongruenceFailure(CycloError):
    def __init__(self, p, N):
        super().__init__(f"N={N} is not congruent to 1 mod p={p}")
        self.p, self.N = p, N


class NotAUnit(CycloError):
    pass


class RangeError(CycloError, ValueError):
    pass


class ExcludedCharacter(CycloError):
    pass


class DegenerateCharacters(CycloError):
    pass


class ValuationMismatch(CycloError):
    pass


class NotFound(CycloError):
    def __init__(self, bound):
        super().__init__(f"no solution with coefficients bounded by {bound}")
        self.bound = bound


class NotApplicable(CycloError):
    pass


class WrongP(CycloError):
    pass


class InternalError(CycloError):
    """An arithmetic assertion that can only fail through a bug."""
