"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates an operation's precondition (bad vertex, bad params)."""


class CapacityError(RuntimeError):
    """An exact procedure exceeded its configured size or search guard."""


class BudgetExceededError(RuntimeError):
    """Raised by an oracle session when the query budget is exhausted.

    Carries the session's query count at the moment of exhaustion so callers
    (the race combinator, the experiment runner) can report exact totals.
    """

    def __init__(self, query_count: int):
        super().__init__(f"query budget exhausted after {query_count} queries")
        self.query_count = query_count


class ParameterTooSmallError(RuntimeError):
    """A peeling round made no progress: the degeneracy guess is too low."""


class RaceExhaustedError(RuntimeError):
    """Every race contender failed or ran out of budget."""

    def __init__(self, counts):
        super().__init__(f"all contenders exhausted: {counts}")
        self.counts = dict(counts)
