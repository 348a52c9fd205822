"""Exception hierarchy shared by every clfbench module.

The three families map one-to-one onto the CLI exit codes: usage problems
exit with 1, data or I/O problems with 2 and numerical failures with 3.
"""


class ClfBenchError(Exception):
    exit_code = 1


class UsageError(ClfBenchError, ValueError):
    exit_code = 1


class UnknownClassifierError(UsageError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParameterRangeError(UsageError):
    pass


class UnknownFormatError(UsageError):
    pass


class EmptyGridError(UsageError):
    pass


class DataError(ClfBenchError, ValueError):
    exit_code = 2


class SpecValidationError(DataError):
    pass


class DatasetFormatError(DataError):
    pass


class MissingFamilyError(DataError):
    pass


class FamilyMismatchError(DataError):
    pass


class StratificationError(DataError):
    pass


class DimensionMismatchError(DataError):
    pass


class NumericalError(ClfBenchError, ArithmeticError):
    exit_code = 3


class SymmetryError(NumericalError):
    pass


class FeasibilityError(NumericalError):
    pass


class TrainingDivergenceError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message, worst_violation=None):
        super(ConvergenceError, self).__init__(message)
        self.worst_violation = worst_violation
