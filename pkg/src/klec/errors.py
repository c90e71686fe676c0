"""Exception types raised by the library.

``ConsistencyError`` subclasses signal violations of identities that are
supposed to hold unconditionally for the curve family; seeing one means an
implementation bug (or deliberately corrupted input), never a legitimate
run-time condition.
"""


class KlecError(Exception):
    """Base class for all library errors."""


class NonPrimeCharacteristic(KlecError):
    """The characteristic p is not a prime number."""


class EvenCharacteristic(KlecError):
    """p = 2 rejected; the whole theory assumes odd characteristic."""


class ReducibleModulus(KlecError):
    """A user-supplied field modulus is not irreducible."""


class NotASubfield(KlecError):
    """Relative trace/embedding requested for incompatible fields."""


class MixedPrimes(KlecError):
    """Arithmetic between cyclotomic integers of different conductors."""


class BadEmbeddingIndex(KlecError):
    """Complex embedding index outside 1..p-1."""


class ZeroGamma(KlecError):
    """Kloosterman sums require a nonzero parameter."""


class BudgetExceeded(KlecError):
    """An enumeration or oracle loop would exceed the operation budget."""


class RootFindingFailure(KlecError):
    """The simultaneous root iteration did not converge."""


class ConsistencyError(KlecError):
    """An identity that must hold for the family failed (bug trap)."""


class NotRational(ConsistencyError):
    """A cyclotomic integer expected to be rational has nonzero zeta part."""

    def __init__(self, coeffs):
        super().__init__(f"nonzero cyclotomic part in {coeffs}")
        self.coeffs = tuple(coeffs)


class DegenerateAngle(ConsistencyError):
    """A Kloosterman angle hit {0, pi/2, pi}; contradicts the p-adic unit fact."""


class NonSquarefreeDiscriminant(ConsistencyError):
    """wp_a(t)^2 - 4*gamma failed the squarefreeness check."""


class NoFunctionalEquation(ConsistencyError):
    """No sign makes the functional equation hold for the given polynomial."""


class NonIntegerShaOrder(ConsistencyError):
    """The BSD formula did not produce a positive integer."""


class ZeroCentralValue(ConsistencyError):
    """L(1/q) = 0; the central value never vanishes for this family."""


class MarginViolation(ConsistencyError):
    """An angle came closer to {0, pi/2, pi} than the proven margin."""
