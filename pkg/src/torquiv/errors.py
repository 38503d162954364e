"""Exception types raised across the package."""


class TorquivError(Exception):
    """Base class for all errors raised by torquiv."""


class InvalidFan(TorquivError, ValueError):
    pass


class NotComplete(TorquivError, ValueError):
    pass


class NotSmooth(TorquivError, ValueError):
    pass


class TorsionClassGroup(TorquivError, ValueError):
    pass


class InvalidDegMatrix(TorquivError, ValueError):
    pass


class LengthMismatch(TorquivError, ValueError):
    pass


class NoLift(TorquivError, ValueError):
    pass


class Unbounded(TorquivError, ValueError):
    """A polyhedron expected to be bounded has a nonzero recession cone."""


class UnboundedRegion(Unbounded):
    """A cohomology region R_I(D) is unbounded.

    This only happens for a subset that is not forbidden or for a fan that
    is not complete, so it signals a broken invariant.
    """


class CyclicHoms(TorquivError, ValueError):
    pass


class DuplicateClass(TorquivError, ValueError):
    pass


class BadLabelDegree(TorquivError, ValueError):
    pass


class BadOrientation(TorquivError, ValueError):
    pass


class UnknownKey(TorquivError, KeyError):
    pass


class NoCollection(TorquivError, KeyError):
    pass


class NoSuchEdge(TorquivError, KeyError):
    pass


class NonCommuting(TorquivError, ArithmeticError):
    pass


class NonLineBundleWarning(UserWarning):
    """Some vertex of a quiver is a rank one reflexive sheaf that is not Cartier."""
