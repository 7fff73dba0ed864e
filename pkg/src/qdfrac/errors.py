"""Exception types shared across the package."""


class QDBreakdown(ArithmeticError):
    """Division by a vanishing tableau entry (a zero Hankel determinant)."""

    def __init__(self, k, n, what="e"):
        self.k = k
        self.n = n
        self.what = what
        super().__init__(f"QD breakdown: zero divisor {what}[{k}][{n}]")


class IdentityError(AssertionError):
    """An exact identity that must hold did not."""


class DomainError(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


class PrecisionExhausted(ArithmeticError):
    pass


class PrimeTooLarge(ValueError):
    pass


class SingularCurve(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
