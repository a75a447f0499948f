"""Exception hierarchy shared by all qsi modules.

Every error raised by the package derives from QsiError so callers (and the
CLI exit-code mapping) can distinguish protocol degeneracies from malformed
input and from internal invariant violations.
"""


class QsiError(Exception):
    """Base class for all package errors."""


class InvalidModulus(QsiError):
    """Modulus is not an odd prime >= 5 coprime to 6, or is out of range."""


class ModulusMismatch(QsiError):
    """Two values from different prime fields were combined."""


class DivisionByZero(QsiError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class DimensionMismatch(QsiError):
    """Matrix/vector shapes are not conformable for the operation."""


class SingularMatrix(QsiError):
    """A square matrix required to be invertible is singular."""


class ZeroPolynomial(QsiError):
    """Factorization of the zero polynomial requested."""


class ZeroForm(QsiError):
    """An operation requires a nonzero form."""


class NoComponent(QsiError):
    """No bidegree-(2,2) component exists in the factored form."""


class AmbiguousComponent(QsiError):
    """More than one candidate (2,2) component; the key is not well defined.

    Carries the candidate list in ``candidates``.
    """

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class SingularCurve(QsiError):
    """The (2,2) curve is singular (discriminant combination vanishes)."""


class DegenerateChoice(QsiError):
    """A random choice produced a degenerate object (e.g. zero pullback)."""


class RetriesExhausted(QsiError):
    """Bounded resampling failed to produce a non-degenerate object."""


class RandomnessExhausted(RetriesExhausted):
    """Bounded random search for a structured element (e.g. a primitive
    polynomial) failed."""


class InvalidParameters(QsiError):
    """Protocol parameters violate their preconditions (e.g. m = 4)."""


class RankDeficient(QsiError):
    """Sampled point set did not reach the expected rank."""


class KeyFileError(QsiError):
    """Malformed or inconsistent serialized key material."""
