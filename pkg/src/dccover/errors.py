"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates the documented preconditions."""


class CapError(RuntimeError):
    """A desk-scale enumeration limit would be exceeded."""
