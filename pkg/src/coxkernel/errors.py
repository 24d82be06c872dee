"""Exception hierarchy shared by all coxkernel modules."""


class CoxKernelError(Exception):
    """Base class for all errors raised by coxkernel."""


class InputError(CoxKernelError):
    """Malformed or schema-violating input data."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class NotPointedError(CoxKernelError):
    """Operation requires a pointed cone or monoid."""


class EnumerationBoundError(CoxKernelError):
    """A bounded lattice enumeration did not certify completeness."""


class FaithfulnessError(CoxKernelError):
    """Grading is not injective on the monoid's group of differences."""


class TorusFactorError(CoxKernelError):
    """Fan rays do not span the ambient lattice over the rationals."""


class ConstructionError(CoxKernelError):
    """Data fails the invariants required to build the requested object."""
