"""Error types shared across the package."""


class CapExceededError(RuntimeError):
    """A requested computation exceeds a configured resource cap."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what} {requested} exceeds cap {cap}")


class TableRangeError(RuntimeError):
    """A query needs values beyond the built prime table; build a larger sieve."""

    def __init__(self, needed: int, limit: int):
        self.needed = needed
        self.limit = limit
        super().__init__(
            f"query needs coverage up to {needed} but table limit is {limit}; "
            f"sieve a larger range"
        )
