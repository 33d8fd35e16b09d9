"""Exception hierarchy shared by all klab modules."""


class KlabError(Exception):
    """Base class for every error raised by klab."""


class InvalidParameter(KlabError, ValueError):
    pass


class InvalidInput(KlabError, ValueError):
    pass


class DisconnectedFamily(InvalidParameter):
    """All n vertical edges deleted; the resulting graph is disconnected."""


class NotConnected(KlabError, ValueError):
    pass


class NotMirrorSymmetric(KlabError, ValueError):
    pass


class NotConnectedSpectrum(KlabError, ValueError):
    """The spectrum does not carry exactly one zero eigenvalue."""


class SingularCubic(KlabError, ZeroDivisionError):
    pass


class Inconsistency(KlabError, ArithmeticError):
    """A value that must be integral by theory came out otherwise."""
