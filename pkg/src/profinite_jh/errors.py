"""Exception hierarchy shared by all modules."""


class GroupError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GroupError):
    pass


class BoundExceeded(GroupError):
    """An enumeration or search would grow past its configured bound."""


class NotNormal(GroupError):
    pass


class InvalidHom(GroupError):
    pass


class TrivialGroup(GroupError):
    pass


class NotSimple(GroupError):
    pass


class NotSolvable(GroupError):
    pass


class Ambiguous(GroupError):
    """Two simple groups share order and fingerprint and could not be told apart."""


class InvalidMap(GroupError):
    def __init__(self, level, reason=""):
        self.level = level
        super().__init__(f"InvalidMap({level}): {reason}" if reason else f"InvalidMap({level})")


class NotSurjective(GroupError):
    def __init__(self, level):
        self.level = level
        super().__init__(f"NotSurjective({level})")


class IncompatibleSubgroup(GroupError):
    pass


class PreconditionViolated(GroupError):
    pass
