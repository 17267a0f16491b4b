import pytest

from termdepth import Signature, parse_term


@pytest.fixture
def sig2():
    return Signature({"f": 2})


@pytest.fixture
def sig3():
    return Signature({"g": 3})


@pytest.fixture
def sig23():
    return Signature({"f1": 2, "f2": 3})


@pytest.fixture
def sig124():
    return Signature({"g1": 1, "g2": 2, "g4": 4})


@pytest.fixture
def binary_terms(sig2):
    """The worked composition example over the binary signature."""
    return {
        "t1": parse_term("f(x1,f(x1,x2))", sig2),
        "t2": parse_term("f(x2,x1)", sig2),
        "s1": parse_term("f(f(x2,x2),x1)", sig2),
        "s2": parse_term("f(f(x1,x1),x2)", sig2),
    }


@pytest.fixture
def mixed_terms(sig23):
    """The worked per-variable depth example over the (2,3) signature."""
    return {
        "t1": parse_term("f2(f1(x1,x1),f1(x1,x2),x3)", sig23),
        "t2": parse_term("f1(f2(x1,x1,x2),x1)", sig23),
        "t3": parse_term("f1(f2(x1,x3,x3),x1)", sig23),
        "s": parse_term("f2(f1(x1,x2),x2,x3)", sig23),
    }
