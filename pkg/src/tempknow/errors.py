"""Exception types shared across the package."""


class TempKnowError(Exception):
    pass


class KAllPresent(TempKnowError):
    """A KALL node reached an operation that only understands single valuations."""


class NestedKAll(TempKnowError):
    pass


class FutureOperatorPresent(TempKnowError):
    """Until/Next found where only the past fragment is supported."""


class ResourceLimit(TempKnowError):
    pass


class NotAUnifier(TempKnowError):
    pass


class FormatError(TempKnowError):
    """Malformed model or witness file."""


class ParseError(TempKnowError):
    def __init__(self, message, span):
        self.message = message
        self.span = span
        super().__init__(f"{message} at {span.start}..{span.end}")
