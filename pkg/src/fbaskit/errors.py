"""Exception hierarchy shared across the package."""


class FbaskitError(Exception):
    """Base class for all package errors."""


class EmptyUniverse(FbaskitError):
    """The node universe is empty (n = 0)."""


class UniverseTooLarge(FbaskitError):
    """The universe exceeds what the engine supports (bitset: n <= 64,
    brute-force oracle: configurable cap)."""


class UniverseMismatch(FbaskitError):
    """Two objects refer to universes of different sizes."""


class IndexOutOfRange(FbaskitError):
    """A node index falls outside [0, n)."""

    def __init__(self, owner, index):
        super().__init__(f"slice of node {owner} references index {index} outside the universe")
        self.owner = owner
        self.index = index


class OwnerMissing(FbaskitError):
    """A quorum slice does not contain its owning node."""

    def __init__(self, owner, slice_members):
        super().__init__(f"slice {sorted(slice_members)} of node {owner} does not contain {owner}")
        self.owner = owner
        self.slice_members = frozenset(slice_members)


class DeletedEverything(FbaskitError):
    """A deletion would remove every node of the FBAS."""


class InvalidParams(FbaskitError):
    """Parameters violate a documented precondition."""


class SchemaMismatch(FbaskitError):
    """A serialized artifact does not match the expected schema."""


class EmptyInput(FbaskitError):
    """An aggregation was given no records."""
