"""Exception types shared across modules."""


class VerificationError(AssertionError):
    """A mathematical identity the library checks did not hold.

    ``payload`` carries a JSON-friendly counterexample when one exists.
    """

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}
