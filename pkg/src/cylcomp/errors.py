"""Shared exception types.

Errors are grouped by what went wrong, not where: input validation,
resource budgets, and soundness failures map to distinct CLI exit codes.
"""


class CylcompError(Exception):
    """Base class for all package errors."""


class ValidationError(CylcompError):
    """Bad input: parameters, formats, or preconditions."""


class ResourceError(CylcompError):
    """A computation exceeded its configured budget."""


# -- parameters / graphs ----------------------------------------------------

class NotEnoughCoprimes(ValidationError):
    pass


class InvalidRange(ValidationError):
    pass


class NonDivisorModulus(ValidationError):
    pass


class IncompatiblePartition(ValidationError):
    def __init__(self, u, v, reason=""):
        self.pair = (u, v)
        super().__init__(f"incompatible vertex classes for {u} and {v}: {reason}")


# -- formulas ---------------------------------------------------------------

class DegreeTooLarge(ValidationError):
    pass


class ChargeNotClassConstant(ValidationError):
    pass


class TooManyVariables(ResourceError):
    pass


class ParseError(ValidationError):
    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


# -- proofs -----------------------------------------------------------------

class UnsoundStep(ValidationError):
    def __init__(self, step_id, reason):
        self.step_id = step_id
        self.reason = reason
        super().__init__(f"step {step_id}: {reason}")


class NotARefutation(ValidationError):
    pass


class InvalidDag(ValidationError):
    pass


class InvalidTree(ValidationError):
    pass


class ResourceBudgetExceeded(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    pass


class ExpansionBudget(ResourceError):
    pass


class SearchBudgetExceeded(ResourceError):
    pass


# -- game -------------------------------------------------------------------

class StrategyStuck(CylcompError):
    """The scripted robber found no legal move; treated as a test failure."""


class InvariantBroken(CylcompError):
    """A controller's internal invariant failed during simulation."""


# -- CFI / lifting ----------------------------------------------------------

class NotCompressible(ValidationError):
    pass


class OrderInconsistent(ValidationError):
    pass


class VariableDomainMismatch(ValidationError):
    pass
