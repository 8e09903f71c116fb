"""Exception types. Each carries a short machine-readable ``reason`` slug."""


class OrthodecError(Exception):
    reason = "error"


class RingSpecError(OrthodecError, ValueError):
    reason = "bad-ring"


class NonUnit(OrthodecError, ArithmeticError):
    reason = "non-unit"


class NoSolution(OrthodecError, ArithmeticError):
    reason = "no-solution"


class NotClosed(OrthodecError):
    reason = "not-closed"


class NotInAlgebra(OrthodecError, ValueError):
    reason = "not-in-algebra"


class EvenCharacteristic(OrthodecError, ValueError):
    reason = "even-characteristic"


class UnsupportedFamily(OrthodecError, ValueError):
    reason = "unsupported-family"


class UnsupportedSize(OrthodecError, ValueError):
    reason = "unsupported-size"


class OddSize(OrthodecError, ValueError):
    reason = "odd-size"


class FactorMismatch(OrthodecError, ValueError):
    reason = "factor-mismatch"


class BudgetExceeded(OrthodecError):
    reason = "budget-exceeded"


class CertificateError(OrthodecError, ValueError):
    reason = "malformed-certificate"
