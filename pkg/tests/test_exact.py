from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmckay.errors import ConfigurationError
from qmckay.exact import as_matrix, identity, mat_inverse, mat_mul


def test_identity_shape():
    assert identity(2) == [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
    ]


def test_inverse_of_known_matrix():
    m = as_matrix([[2, -1], [-1, 2]])
    inv = mat_inverse(m)
    assert inv == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    assert mat_mul(m, inv) == identity(2)


def test_singular_matrix_rejected():
    with pytest.raises(ConfigurationError):
        mat_inverse(as_matrix([[1, 2], [2, 4]]))


def test_ragged_matrix_rejected():
    with pytest.raises(ConfigurationError):
        as_matrix([[1, 2], [3]])


def test_shape_mismatch_rejected():
    with pytest.raises(ConfigurationError):
        mat_mul([[1, 2]], [[1, 2]])


@st.composite
def invertible_matrices(draw):
    # unit upper and lower triangulars multiply to an invertible matrix
    n = draw(st.integers(min_value=1, max_value=4))
    entry = st.integers(min_value=-4, max_value=4)
    lower = [
        [draw(entry) if i > j else (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    upper = [
        [draw(entry) if i < j else (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    return mat_mul(as_matrix(lower), as_matrix(upper))


@settings(max_examples=40, deadline=None)
@given(invertible_matrices())
def test_inverse_round_trip(m):
    inv = mat_inverse(m)
    assert mat_mul(m, inv) == identity(len(m))
    assert mat_mul(inv, m) == identity(len(m))
