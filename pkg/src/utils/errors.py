from typing import Optional


class Ap3Error(ValueError):
    """Base class for every error raised by the library."""


class InvalidInputError(Ap3Error):
    pass


class NotAMetricError(Ap3Error):
    pass


class InvalidParametersError(Ap3Error):
    pass


class BudgetExceededError(Ap3Error):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"exhaustive search needs {required} subsets but the budget is {budget}; "
            f"rerun with --budget {required} or more"
        )


class PointSetParseError(Ap3Error):
    def __init__(self, message: str, offset: Optional[int] = None, path: str = "$"):
        self.offset = offset
        self.path = path
        where = f"byte {offset}" if offset is not None else path
        super().__init__(f"{message} (at {where})")
