"""Exception hierarchy shared across the package."""


class MdtdsError(Exception):
    """Base class for all library errors."""


class WordSyntaxError(MdtdsError, ValueError):
    """Malformed word or subgroup text."""


class ResourceLimitError(MdtdsError):
    """A traversal would visit more nodes than the configured cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"traversal needs {requested} nodes, cap is {cap}")
        self.requested = requested
        self.cap = cap


class EvaluationError(MdtdsError):
    """Base class for failures while evaluating maps along a word.

    ``word`` is attached by the evaluation layer once the failing word is
    known, so the message is rendered lazily.
    """

    noun = "evaluation failed"

    def __init__(self, value, word=None, detail=""):
        super().__init__()
        self.value = value
        self.word = word
        self.detail = detail

    def __str__(self) -> str:
        msg = f"{self.noun} at {self.value}"
        if self.word is not None:
            msg += f" while evaluating {self.word}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


class DomainViolationError(EvaluationError):
    """A map application left the family's domain interval."""

    noun = "value left the domain"


class ExactnessError(EvaluationError):
    """An exact-mode inverse does not exist in the rationals at this point."""

    noun = "no exact inverse"
