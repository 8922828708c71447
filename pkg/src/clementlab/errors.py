"""Exception types shared across the package."""


class ClementLabError(ValueError):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class InvalidDimensionError(ClementLabError):
    pass


class NonPositiveProductError(ClementLabError):
    """Raised when an off-diagonal product (or radicand) is not strictly positive.

    ``index`` is the 1-based position k of the offending pair.
    """

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(
            f"off-diagonal product at k={index} is {value!r}; "
            "a real symmetric form requires every product to be > 0"
        )


class UnsupportedParityError(ClementLabError):
    pass


class InvalidParameterError(ClementLabError):
    pass


class PoleError(ClementLabError):
    pass


class InconsistentSweepError(ClementLabError):
    pass
