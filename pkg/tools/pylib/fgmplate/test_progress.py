import io

from .progress import CaseProgress


def test_bar_counts_cases():
    stream = io.StringIO()
    bar = CaseProgress(4, label="modal", width=8, ascii=True, stream=stream)
    bar.advance()
    assert bar.fraction == 0.25
    assert bar.render() == u"\rmodal: [##------] 1/4  25.00%"
    bar.advance(3)
    bar.finish()
    assert stream.getvalue().endswith(u"\rmodal: [########] 4/4 100.00%\n")


def test_disabled_bar_is_silent():
    stream = io.StringIO()
    bar = CaseProgress(2, enabled=False, stream=stream)
    bar.advance()
    bar.finish()
    assert stream.getvalue() == u""


def test_empty_sweep_is_complete():
    assert CaseProgress(0, enabled=False).fraction == 1.0
