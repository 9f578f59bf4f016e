"""Exception types shared by every module in the package."""


class CnumError(Exception):
    """Base class for domain errors."""

    code = "error"


class InvalidInput(CnumError, ValueError):
    code = "invalid input"


class NotSquarefree(InvalidInput):
    code = "not squarefree"


class NotPrime(InvalidInput):
    code = "not prime"


class InvalidDiscriminant(InvalidInput):
    code = "invalid discriminant"


class DiscriminantMismatch(InvalidInput):
    code = "discriminant mismatch"


class DiscriminantTooLarge(InvalidInput):
    code = "discriminant too large"


class WrongResidueClass(InvalidInput):
    code = "wrong residue class"


class TooManyPrimes(InvalidInput):
    code = "too many primes"


class SignMismatch(InvalidInput):
    code = "sign mismatch"


class SingularInput(InvalidInput):
    code = "singular input"


class OutOfSupportedRange(InvalidInput):
    code = "out of supported range"
