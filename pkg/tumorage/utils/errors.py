class TumorAgeError(Exception):
    """Base class of all errors raised by tumorage."""


class DomainError(TumorAgeError, ValueError):
    """A numeric argument lies outside the domain of the operation."""


class OutOfRangeError(DomainError):
    """A query lies outside the range covered by an age table."""


class InsufficientDataError(TumorAgeError, ValueError):
    """Too few samples to fit a model."""


class ConfigError(TumorAgeError, ValueError):
    """Invalid option value or option combination."""


class IngestError(TumorAgeError, ValueError):
    """An input file could not be parsed.

    Args:
        message (str): Error message.
        line_numbers (list[int]): 1-based line numbers of the offending rows.
    """

    def __init__(self, message, line_numbers=()):
        self.line_numbers = list(line_numbers)
        if self.line_numbers:
            shown = ', '.join(str(v) for v in self.line_numbers[:20])
            more = ' ...' if len(self.line_numbers) > 20 else ''
            message = f'{message} (lines: {shown}{more})'
        super().__init__(message)


class GrowthOverflowError(TumorAgeError, OverflowError):
    """A growth step produced a non-finite volume."""


class EmptyInputError(IngestError):
    """An input file has no content at all, not even a header."""
