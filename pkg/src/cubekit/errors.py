"""Exception hierarchy shared by every cubekit module."""


class CubekitError(Exception):
    """Base class for all library errors."""


class InputError(CubekitError):
    """Malformed input: bad names, duplicate members, wrong arguments."""


class DuplicateMember(InputError):
    pass


class DuplicateElement(InputError):
    pass


class UnknownElement(InputError):
    pass


class EmptyFamily(InputError):
    pass


class MemberNotInFamily(InputError):
    pass


class NotASubset(InputError):
    pass


class NotEssential(InputError):
    pass


class EmptyVertexSet(InputError):
    pass


class EmptyDomainDual(InputError):
    """The dual of a system over an empty domain would have an empty family."""


class NoEssentialElements(InputError):
    pass


class LoopsNotSupported(InputError):
    pass


class NotNeighbourhoodWG(CubekitError):
    """The neighbourhood system of the graph is not well-graded."""


class ParseError(InputError):
    def __init__(self, message, path=None, field=None):
        self.path = path
        self.field = field
        where = ""
        if path is not None:
            where += f"{path}: "
        if field is not None:
            where += f"[{field}] "
        super().__init__(where + message)


class CapExceeded(CubekitError):
    """A configured resource cap was exceeded."""


class DomainTooLarge(CapExceeded):
    pass


class VertexCapExceeded(CapExceeded):
    pass


class SizeTooLarge(CapExceeded):
    pass


class InvariantViolation(CubekitError):
    """An internal consistency check failed. This always indicates a bug."""
