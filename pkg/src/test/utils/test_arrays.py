from hypothesis import given
import hypothesis.extra.numpy as np_st
import hypothesis.strategies as st
import itertools
import numpy as np

from utils.arrays import mode_product, nd_cartesian, nd_cartesian_grid, thin_evenly

@given(
    arrays=st.lists(np_st.arrays(np_st.integer_dtypes(), np_st.array_shapes(min_dims=1, max_dims=1, max_side=4)), min_size=1, max_size=4)
)
def test_nd_cartesian(arrays):
    nd_result = [tuple(x) for x in nd_cartesian(*arrays).tolist()]
    itertools_result = list(itertools.product(*arrays))
    assert nd_result == itertools_result


def test_nd_cartesian_complex():
    grid = nd_cartesian_grid(np.array([1j, 2]), np.array([3, 4j, 5]))
    assert grid.shape == (2, 3, 2)
    assert grid.dtype == np.complex128
    assert grid[0, 1].tolist() == [1j, 4j]
    assert nd_cartesian(np.array([1, 2]), repeat=2).tolist() == [[1, 1], [1, 2], [2, 1], [2, 2]]


@given(
    shape=np_st.array_shapes(min_dims=1, max_dims=3, max_side=4),
    rows=st.integers(1, 4),
    data=st.data(),
)
def test_mode_product(shape, rows, data):
    axis = data.draw(st.integers(0, len(shape) - 1))
    tensor = data.draw(np_st.arrays(np.float64, shape, elements=st.floats(-10, 10)))
    matrix = data.draw(np_st.arrays(np.float64, (rows, shape[axis]), elements=st.floats(-10, 10)))
    result = mode_product(tensor, matrix, axis)
    expected = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
    assert result.shape == shape[:axis] + (rows,) + shape[axis + 1:]
    assert np.allclose(result, expected)


def test_thin_evenly():
    a = np.arange(10)
    assert thin_evenly(a, 20) is a
    assert thin_evenly(a, 0).tolist() == []
    assert thin_evenly(a, 2).tolist() == [0, 9]
    assert thin_evenly(a, 4).tolist() == [0, 3, 6, 9]


@given(count=st.integers(2, 50), length=st.integers(1, 50))
def test_thin_evenly_keeps_ends(count, length):
    a = np.arange(length)
    thinned = thin_evenly(a, count)
    assert len(thinned) <= count
    assert thinned[-1] == length - 1
    assert thinned[0] == 0
    assert np.all(np.diff(thinned) > 0)
