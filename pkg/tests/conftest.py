import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flowpreserve.graph import DiGraph


@pytest.fixture
def diamond():
    # s=0, a=1, b=2, t=3; edge ids 0:(s,a) 1:(s,b) 2:(a,t) 3:(b,t)
    return DiGraph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def path3():
    # s=0 -> a=1 -> t=2
    return DiGraph.from_edges(3, [(0, 1), (1, 2)])
