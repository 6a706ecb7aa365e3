"""Exception types raised across the pipeline."""


class VirtresError(Exception):
    """Base class for all errors raised by this package."""


class NonSurjectiveLatticeMap(VirtresError):
    """The character map M_X -> M_Y is not onto."""


class NonInjectiveLatticeMap(VirtresError):
    """The map M_X -> Z^rays is not injective (fan rays do not span)."""


class ZeroDivisorInput(VirtresError):
    pass


class UnitIdeal(VirtresError):
    pass


class NotSimplicial(VirtresError):
    pass


class NonPositiveGrading(VirtresError):
    pass


class InvalidFan(VirtresError):
    pass


class TorsionClassGroupUnsupported(VirtresError):
    """Raised when the pushout group M' has torsion.

    In that case the defining ideal is only the radical of the lattice ideal
    and splits into components indexed by characters of the torsion part,
    which cannot be computed over the rationals.
    """

    citation = (
        "Lemma 2.2(1): when M' = Z^r + A has nontrivial torsion A, the defining "
        "ideal is an intersection of several toric primes; only the torsion-free "
        "case (A = 0, I prime) is supported"
    )

    def __init__(self, invariants):
        self.invariants = tuple(invariants)
        super().__init__(
            f"pushout group M' has torsion {self.invariants}; {self.citation}"
        )


class InconsistentDimensions(VirtresError):
    pass


class NonFiniteGeneratorSet(VirtresError):
    pass


class CapExceeded(VirtresError):
    """B-torsion could not be witnessed below the cap (inconclusive)."""

    def __init__(self, generator, cap):
        self.generator = generator
        self.cap = cap
        super().__init__(f"no power <= {cap} of {generator} annihilates the module")


class SchemaError(VirtresError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path or '.'}: {message}")


class IndexOutOfRange(SchemaError):
    pass
