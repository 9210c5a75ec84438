class PatternError(ValueError):
    """Invalid pattern input.

    ``where`` locates the offending field (e.g. ``"coefficients[1].nonzeros[0]"``)
    when the error comes from parsing a document.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class CertificateError(RuntimeError):
    """A produced certificate failed its own verification.

    This always indicates a bug; ``violations`` lists the failed constraints.
    """

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        detail = "; ".join(self.violations[:5])
        super().__init__(f"{message}: {detail}" if detail else message)


class TruncationWarning(UserWarning):
    """Coefficients with index >= k were supplied; they do not enter T_k."""
