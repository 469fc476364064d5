"""
Warnings that are always printed by default.

Raised for modelling choices the user must know about when reading a
result, such as a default material constant standing in for a missing
one. Messages raised inside :func:`recording` are also collected so a
study can list them in its provenance block.
"""

from contextlib import contextmanager
import warnings


class AlwaysWarning(UserWarning):
    def __init__(self, *args, **kwargs):
        super(AlwaysWarning, self).__init__(*args, **kwargs)


class AssumptionWarning(AlwaysWarning):
    """A modelling constant or convention chosen on the user's behalf"""


warnings.simplefilter("always", AlwaysWarning)

# Open recorders, innermost last
_recorders = []


def alwayswarn(message, category=AlwaysWarning):
    for notes in _recorders:
        if message not in notes:
            notes.append(message)
    warnings.warn(message, category, stacklevel=2)


@contextmanager
def recording():
    """Collect the messages of :func:`alwayswarn` raised in this process

    Yields
    ------
    list of str
        Messages in the order first raised, without repeats

    Examples
    --------
    >>> with recording() as notes:
    ...     alwayswarn("default alpha used")
    >>> notes
    ['default alpha used']
    """
    notes = []
    _recorders.append(notes)
    try:
        yield notes
    finally:
        _recorders.remove(notes)
