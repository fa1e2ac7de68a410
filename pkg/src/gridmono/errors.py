"""Exception types shared across the package."""


class CapacityError(Exception):
    """An exact computation was requested on a grid too large for it."""


class IntegrityError(Exception):
    """An internal invariant that should be unbreakable was broken.

    Raised instead of silently repairing: it indicates a construction bug
    (or a falsified combinatorial claim) and must surface.
    """


class NotGoodError(ValueError):
    """A routing operation was invoked on a pair that is not layered."""


class FormatError(ValueError):
    """A serialized function or poset file is malformed."""
