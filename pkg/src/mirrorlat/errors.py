"""Exception hierarchy shared by all modules."""


class MirrorLatError(Exception):
    """Base class for library errors."""


class DimensionMismatch(MirrorLatError, ValueError):
    pass


class ZeroVectorError(MirrorLatError, ValueError):
    pass


class NotPrimitiveError(MirrorLatError, ValueError):
    pass


class NotIsotropicError(MirrorLatError, ValueError):
    pass


class DependentBasisError(MirrorLatError, ValueError):
    pass


class NotSaturatedError(MirrorLatError, ValueError):
    pass


class NoPartnerError(MirrorLatError, ValueError):
    """No w with pair(v, w) = 1 exists."""


class OrbitError(MirrorLatError, ValueError):
    """The isometry construction could not be carried out."""


class NotNilpotentError(MirrorLatError, ValueError):
    pass


class DegeneratePairingError(MirrorLatError, ValueError):
    pass


class InvariantError(MirrorLatError, ValueError):
    """A type invariant does not hold. ``invariant`` names it."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


class InputError(MirrorLatError, ValueError):
    """Malformed input file or argument."""
