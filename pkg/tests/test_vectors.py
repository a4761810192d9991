import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghostwriter.errors import DimensionMismatch, ZeroVector
from ghostwriter.vindex import EmbeddingVector, cosine, normalize


def test_three_four_five_triangle():
    v = normalize([3.0, 4.0])
    assert v.values == pytest.approx([0.6, 0.8])
    assert v.normalized


def test_unit_vector_unchanged_within_tight_tolerance():
    v = normalize([1.0, 0.0, 0.0])
    assert abs(v.values[0] - 1.0) <= 1e-9
    assert abs(np.linalg.norm(v.values) - 1.0) <= 1e-9


def test_zero_vector_rejected():
    with pytest.raises(ZeroVector):
        normalize([0.0, 0.0])


def test_cosine_identical_unit_vectors_is_one():
    v = normalize([0.3, -0.2, 0.9])
    assert cosine(v, v) == pytest.approx(1.0, abs=1e-9)


def test_cosine_orthogonal_is_zero():
    a = EmbeddingVector(np.array([1.0, 0.0]), normalized=True)
    b = EmbeddingVector(np.array([0.0, 1.0]), normalized=True)
    assert cosine(a, b) == 0.0


def test_cosine_analytic_value_inverse_sqrt_two():
    a = EmbeddingVector(np.array([1.0, 1.0]))
    b = EmbeddingVector(np.array([1.0, 0.0]))
    assert cosine(a, b) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-6)


def test_cosine_dimension_mismatch():
    a = EmbeddingVector(np.array([1.0, 0.0]))
    b = EmbeddingVector(np.array([1.0, 0.0, 0.0]))
    with pytest.raises(DimensionMismatch):
        cosine(a, b)


@settings(max_examples=150, deadline=None)
@given(
    raw=st.lists(
        st.floats(min_value=-100, max_value=100, allow_nan=False),
        min_size=2,
        max_size=16,
    )
)
def test_cosine_symmetry_and_norm_property(raw):
    array = np.asarray(raw)
    if np.linalg.norm(array) < 1e-9:
        return
    v = normalize(array)
    assert abs(np.linalg.norm(v.values) - 1.0) <= 1e-6
    other = normalize(array[::-1].copy())
    assert cosine(v, other) == pytest.approx(cosine(other, v), abs=1e-9)
