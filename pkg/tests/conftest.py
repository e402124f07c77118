import pytest

from shiftmorita.shift import TransitionMatrix, parse_matrix

DIAMOND_TEXT = "a b c\n110\n011\n111"


@pytest.fixture(scope="session")
def diamond() -> TransitionMatrix:
    """Three-letter running example whose class order is a diamond."""
    return parse_matrix(DIAMOND_TEXT)


@pytest.fixture(scope="session")
def diamond_graph(diamond):
    from shiftmorita.labelled_graph import build_graph

    return build_graph(diamond)


def mx(text: str) -> TransitionMatrix:
    return parse_matrix(text)
