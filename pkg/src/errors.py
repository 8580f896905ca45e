"""Error types shared by the library and the command line.

Every error carries the process exit code the CLI should use for it.
"""


class QuadkitError(Exception):
    """Base class for all quadkit errors."""

    exit_code: int = 1


class ConfigError(QuadkitError, ValueError):
    """Invalid settings or environment."""

    exit_code = 2


class ParseError(QuadkitError, ValueError):
    """Malformed polynomial, truth-table or QUBO text."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingVariableError(QuadkitError, KeyError):
    """An assignment does not cover a variable of the polynomial."""

    exit_code = 2

    def __init__(self, var: int):
        self.var = var
        super().__init__(f"assignment does not cover variable {var}")

    def __str__(self) -> str:
        return self.args[0]


class LengthMismatchError(QuadkitError, ValueError):
    """Truth table length is not 2^n."""

    exit_code = 2


class DegreeExceededError(QuadkitError, ValueError):
    """Input degree is above what the operation supports."""

    exit_code = 2


class UnreachableDegreeError(QuadkitError, ValueError):
    """Requested substitutions cannot bring the degree down to 2."""

    exit_code = 2


class PreconditionError(QuadkitError, ValueError):
    """Coefficients lie outside the region a lemma is valid for."""

    exit_code = 2

    def __init__(self, lemma: str, branch: str):
        self.lemma = lemma
        self.branch = branch
        super().__init__(f"{lemma}: precondition failed ({branch})")


class InterpretationError(QuadkitError):
    """A lemma gadget was built but does not verify."""

    exit_code = 1


class InternalQuadratizationError(QuadkitError):
    """Neither the case plan nor the exhaustive fallback produced a gadget."""

    exit_code = 1


class BudgetExceededError(QuadkitError, ValueError):
    """Exhaustive enumeration would exceed the configured budget."""

    exit_code = 3


class VerificationFailedError(QuadkitError):
    """A quadratization does not reproduce the original function."""

    exit_code = 1
