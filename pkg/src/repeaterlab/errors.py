class RepeaterLabError(Exception):
    """
    Base class for every error raised by RepeaterLab.

    Subclasses store their arguments as attributes so the command-line
    reporters can print a structured message via `details()`.
    """
    def __init__(self, message, **details):
        super().__init__(message)
        self._details = details
        for name, value in details.items():
            setattr(self, name, value)

    def details(self):
        return dict(self._details)


class ValidationError(RepeaterLabError):
    pass


class NumericalError(RepeaterLabError):
    pass


class NonSquare(ValidationError):
    def __init__(self, shape):
        super().__init__("Matrix must be square and non-empty, got shape {}".format(shape), shape=list(shape))


class RowSumViolation(ValidationError):
    def __init__(self, row, total):
        super().__init__("Row {} sums to {!r}, expected 1".format(row, total), row=row, total=total)


class EntryOutOfRange(ValidationError):
    def __init__(self, row, col, value):
        super().__init__("Entry ({}, {}) = {!r} is outside [0, 1]".format(row, col, value), row=row, col=col, value=value)


class EmptyRounds(ValidationError):
    def __init__(self):
        super().__init__("A multiheralded protocol needs at least one round")


class ProbabilityOutOfRange(ValidationError):
    def __init__(self, name, value):
        super().__init__("Probability {} = {!r} is outside [0, 1]".format(name, value), name=name, value=value)


class WrongHeraldCount(ValidationError):
    def __init__(self, expected, left, right):
        msg = "Expected {} heralding round(s) per link, got {} on the left and {} on the right"
        super().__init__(msg.format(expected, left, right), expected=expected, left=left, right=right)


class ZeroProbability(ValidationError):
    def __init__(self, name):
        super().__init__("Probability {} must be positive here".format(name), name=name)


class ArgumentOutOfRange(ValidationError):
    def __init__(self, name, value, allowed=None):
        msg = "Argument {} = {!r} is out of range".format(name, value)
        if allowed:
            msg += " (allowed: {})".format(allowed)
        super().__init__(msg, name=name, value=value)


class HorizonTooLarge(ValidationError):
    def __init__(self, horizon, cap):
        super().__init__("Horizon {} exceeds the configured cap of {}".format(horizon, cap), horizon=horizon, cap=cap)


class SpecError(ValidationError):
    def __init__(self, message, **details):
        super().__init__(message, **details)


class NotConverged(NumericalError):
    def __init__(self, iterations):
        super().__init__("Power iteration did not converge after {} iterations".format(iterations), iterations=iterations)


class SingularSystem(NumericalError):
    def __init__(self, reason):
        super().__init__("Equilibrium system is singular: {}".format(reason), reason=reason)


class SingularMatrix(NumericalError):
    def __init__(self, target):
        msg = "I - Q is singular for target state {}; the target is not reachable from every other state".format(target)
        super().__init__(msg, target=target)


class NoReturnPath(NumericalError):
    def __init__(self, state):
        super().__init__("State {} never returns to itself".format(state), state=state)


class DegenerateChain(NumericalError):
    def __init__(self, reason):
        super().__init__("Degenerate chain: {}".format(reason), reason=reason)


class NonFiniteValue(NumericalError):
    def __init__(self, column, value):
        super().__init__("Column {} produced a non-finite value ({!r})".format(column, value), column=column, value=repr(value))


class StateInvariantError(NumericalError):
    def __init__(self, step, reason):
        super().__init__("Nested chain state invalid after step {}: {}".format(step, reason), step=step, reason=reason)
