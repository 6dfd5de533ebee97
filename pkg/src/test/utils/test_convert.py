import numpy as np
import pytest

from utils.convert import to_complex, to_order, to_points, to_positive, to_var_id


def test_to_order():
    assert to_order(3) == 3
    assert to_order(2.0) == 2
    assert to_order(np.int64(0)) == 0
    for bad in (-1, 1.5, 'x', None):
        with pytest.raises(ValueError):
            to_order(bad)


def test_to_var_id():
    assert to_var_id(4) == 4
    assert to_var_id('z12') == 12
    assert to_var_id('7') == 7
    for bad in ('z', 'w1', 'z-1', -2, 'z1.5', None):
        with pytest.raises(ValueError):
            to_var_id(bad)


def test_to_positive():
    assert to_positive('0.5') == 0.5
    for bad in (0, -1, float('inf'), float('nan'), 'eps'):
        with pytest.raises(ValueError, match='epsilon'):
            to_positive(bad, 'epsilon')


def test_to_complex():
    assert to_complex(2) == 2 + 0j
    assert to_complex(np.complex64(1 + 2j)) == 1 + 2j
    assert to_complex((0.5, -1)) == 0.5 - 1j
    with pytest.raises(ValueError):
        to_complex((1, 2, 3))
    with pytest.raises(ValueError):
        to_complex('i')


def test_to_points():
    assert to_points([1, 2j]).shape == (1, 2)
    assert to_points([[1], [2]], dimensions=1).shape == (2, 1)
    with pytest.raises(ValueError, match='3 columns'):
        to_points([[1, 2]], dimensions=3)
    with pytest.raises(ValueError):
        to_points(np.zeros((2, 2, 2)))
