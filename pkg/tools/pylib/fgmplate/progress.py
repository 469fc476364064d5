# -*- coding: utf-8 -*-
"""Console progress bar for parameter sweeps"""

from __future__ import division

from sys import stderr


class CaseProgress(object):
    """Progress of a sweep over a known number of cases

    Draws on standard error so that table output sent to standard output
    stays clean. A disabled bar accepts the same calls and draws nothing.

    Parameters
    ----------
    total : int
        Number of cases in the sweep
    label : str, optional
        Text shown in front of the bar
    enabled : bool, optional
        Draw anything at all
    width : int, optional
        Length of the bar in characters
    ascii : bool, optional
        Use '#' for the filled part instead of a block character
    stream : file-like, optional
        Where to draw (default: standard error)

    Examples
    --------
    ::

        bar = CaseProgress(len(cases), label="modal")
        for case in cases:
            run(case)
            bar.advance()
        bar.finish()
    """

    def __init__(self, total, label="Cases", enabled=True, width=20, ascii=False, stream=None):
        self.total = int(total)
        self.label = label
        self.enabled = enabled
        self.width = width
        self.cursor = "#" if ascii else u"█"
        self.stream = stream if stream is not None else stderr
        self.done = 0
        self.draw()

    @property
    def fraction(self):
        if self.total <= 0:
            return 1.0
        return min(self.done / self.total, 1.0)

    def render(self):
        block = int(round(self.width * self.fraction))
        return u"\r{label}: [{bar:-<{width}}] {done}/{total} {percent:6.2f}%".format(
            label=self.label, bar=self.cursor * block, width=self.width, done=self.done,
            total=self.total, percent=100 * self.fraction)

    def draw(self):
        if self.enabled:
            self.stream.write(self.render())
            self.stream.flush()

    def advance(self, count=1):
        self.done += count
        self.draw()

    def finish(self):
        """Move off the bar line once the sweep ends"""
        if self.enabled:
            self.stream.write(u"\n")
            self.stream.flush()
