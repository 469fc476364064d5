"""Exceptions raised by fgmplate

Every error derives from :py:class:`FGMPlateError`, and the ones caused by
bad input also derive from :py:class:`ValueError` so callers that only
know about the builtin types still catch them.

"""


class FGMPlateError(Exception):
    """Base class for all fgmplate errors"""


class DomainError(FGMPlateError, ValueError):
    """A coordinate lies outside the region where a quantity is defined"""


class InvalidParameterError(FGMPlateError, ValueError):
    """A physical or numerical parameter is out of its allowed range"""


class ConfigError(FGMPlateError, ValueError):
    """An analysis configuration could not be read or validated

    Parameters
    ----------
    message : str
        Description of the problem
    path : str, optional
        Colon-separated path of the offending option, e.g. ``layup:n``
    line : int, optional
        Line in the config file, for syntax errors

    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = []
        if path:
            where.append("option '{}'".format(path))
        if line is not None:
            where.append("line {}".format(line))
        if where:
            message = "{}: {}".format(", ".join(where), message)
        super(ConfigError, self).__init__(message)


class SolverError(FGMPlateError, RuntimeError):
    """A linear or eigenvalue solve failed"""


class SingularSystemError(SolverError):
    """The constrained stiffness or mass matrix is not positive definite

    Parameters
    ----------
    message : str
        Description of the failure
    suspects : list of str, optional
        DOF labels that are the most likely cause (unconstrained
        rigid-body or mechanism directions)

    """

    def __init__(self, message, suspects=None):
        self.suspects = list(suspects or [])
        if self.suspects:
            message = "{} (suspect DOFs: {})".format(message, ", ".join(self.suspects))
        super(SingularSystemError, self).__init__(message)


class AcceptanceError(FGMPlateError):
    """Computed results disagree with bundled reference values"""
