"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`NonselectiveError`.
The CLI maps the three families below onto exit codes 1, 2 and 3.
"""


class NonselectiveError(Exception):
    exit_code = 1


class InvalidInput(NonselectiveError, ValueError):
    """Malformed or mathematically inadmissible input."""


class InvalidBasis(InvalidInput):
    """A supplied integral basis is not closed under multiplication."""


class Unsupported(InvalidInput):
    """The request is well posed but outside what can be decided exactly here."""


class UnsupportedPrime(Unsupported):
    """Dedekind's criterion does not apply at this prime."""


class ValidationError(InvalidInput):
    """An algebra specification violates a standing hypothesis."""


class MissingFixture(NonselectiveError, LookupError):
    exit_code = 2


class FixtureError(NonselectiveError):
    """Fixture content is internally inconsistent or fails its checksum."""


class SearchExhausted(NonselectiveError, RuntimeError):
    exit_code = 3

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
