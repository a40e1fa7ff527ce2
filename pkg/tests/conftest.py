import random

import pytest
from hypothesis import settings, strategies as st

from digitopo import catalog
from digitopo.core import Adjacency, DigitalImage
from digitopo.oracle import random_loop

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def mss18():
    return catalog.mss18()


@pytest.fixture(scope="session")
def mss6():
    return catalog.mss6()


def points(n, lo=-2, hi=2):
    return st.tuples(*[st.integers(lo, hi)] * n)


@st.composite
def images(draw, n=None, max_size=9, lo=0, hi=3):
    """Small images in Z^1..Z^3 with any c_u adjacency."""
    n = n or draw(st.integers(1, 3))
    u = draw(st.integers(1, n))
    pts = draw(st.sets(points(n, lo, hi), min_size=1, max_size=max_size))
    return DigitalImage(pts, Adjacency(n, u))


@st.composite
def loops(draw, X=None, max_len=12):
    """A random loop in X (or in a drawn image), based at a drawn point."""
    X = X or draw(images())
    base = draw(st.sampled_from(X.points))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_loop(X, base, max_len, rng)


@st.composite
def paths(draw, X=None, max_len=10):
    """A random walk (not necessarily closed)."""
    X = X or draw(images())
    cur = draw(st.sampled_from(X.points))
    seq = [cur]
    for _ in range(draw(st.integers(0, max_len))):
        cur = draw(st.sampled_from((cur,) + X.adjacency_lists[cur]))
        seq.append(cur)
    from digitopo.homotopy import DigitalPath

    return DigitalPath(X, seq)
