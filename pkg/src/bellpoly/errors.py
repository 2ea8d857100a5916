"""Exception types shared across the package."""


class BellPolyError(Exception):
    """Base class for every domain error raised by this package."""


class InsufficientPrefix(BellPolyError):
    """A moment sequence is shorter than the evaluation requires.

    Raised instead of silently zero-padding, which would mask
    configuration bugs in verification grids.
    """


class NonZeroRemainder(BellPolyError):
    """Exact polynomial division left a nonzero remainder."""


class NotNormalized(BellPolyError):
    """An operation required a sequence with first moment equal to 1."""


class DegenerateT(BellPolyError):
    """The derivative-order shorthand r*(n-k)+s*k vanished off the diagonal."""


class FamilyTooShort(BellPolyError):
    """A polynomial family was materialized to a smaller index than needed."""


class ZeroAlpha(BellPolyError):
    """alpha = 0 was passed to a formula that divides by a power of alpha."""


class ZeroFirstMoment(BellPolyError):
    """The first moment vanished where a formula divides by it."""


class ZeroGamma(BellPolyError):
    """The gamma normalizer of a generalized builder vanished."""


class UnboundedSum(BellPolyError):
    """A configuration would require a genuinely infinite sum.

    Auxiliary sequences are finite-support by construction, so this is
    unreachable through the public API; it is kept so callers embedding
    their own sequence types get a precise failure.
    """


class ConfigError(BellPolyError):
    """A run configuration failed validation."""
