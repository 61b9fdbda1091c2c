# maninsigma/errors.py
"""
Exception hierarchy. Each class carries the CLI exit status it maps to:
 - 1: evaluation failed (overflow, singular chart, convention bug)
 - 3: the input could not be used (parse error, unknown catalog entry, bad shape)
Validation failures (exit 2) are reported through ValidationReport, not raised.
"""


class ManinSigmaError(RuntimeError):
    exit_code = 1


class EvaluationError(ManinSigmaError):
    exit_code = 1


class SingularMatrixError(EvaluationError):
    pass


class ChartBreakdown(EvaluationError):
    """a(g) is singular at the point: the coordinate chart does not cover it."""

    def __init__(self, point, det_a, detail="", matrix="a"):
        self.point = tuple(float(x) for x in point)
        self.det_a = float(det_a)
        self.matrix = matrix
        msg = f"chart breakdown at X={self.point}: |det {matrix}| = {abs(self.det_a):.3e}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class InputError(ManinSigmaError, ValueError):
    exit_code = 3


class ParseError(InputError):
    def __init__(self, message, source=None, line=None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(f"{where}{message}")


class CatalogError(InputError):
    pass


class ShapeError(InputError):
    pass
