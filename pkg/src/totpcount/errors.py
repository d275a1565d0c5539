"""Exception types shared across the package."""


class TotpcountError(Exception):
    """Base class for totpcount-specific errors."""


class NotInTreeError(TotpcountError):
    """A tree oracle was queried with a node that is not in the tree."""


class MalformedInstanceError(TotpcountError):
    """A self-reducible instance violated its declared bounds during replay."""


class SizeGuardError(TotpcountError):
    """An enumeration or representation guard was exceeded."""


class UnsupportedFamilyError(TotpcountError):
    """The given input family is not supported by this solver."""


class ParseError(TotpcountError):
    """An input file does not conform to its declared format."""
