import pytest

from geometry.catalog import format_domain, parse_domain, parse_shape
from geometry.planar import Annulus, Disc, MobiusDisc, Rect, SineComb


def test_parse_domain():
    pd = parse_domain("""
        z1 disc 0 0 0.5   # the first factor
        2 rect 0 0 1 1
        z3 mobius 1 0.5i 0 2-1i
        z4 sinecomb
        z5 annulus 0 0 0.3 1
    """)
    assert pd.variables == (1, 2, 3, 4, 5)
    assert pd.domain(1) == Disc(0, 0.5)
    assert pd.domain(2) == Rect(0, 0, 1, 1)
    assert pd.domain(3) == MobiusDisc(1, 0.5j, 0, 2 - 1j)
    assert pd.domain(4) == SineComb()
    assert pd.domain(5) == Annulus(0, 0.3, 1)


def test_default_and_resolution():
    pd = parse_domain("z2 rect 0 0 1 1\ndefault disc 0 0 1", variables=[1, 2, 3], resolution=0.05)
    assert pd.variables == (1, 2, 3)
    assert pd.domain(1) == pd.domain(3) == Disc(0, 1)
    assert pd.resolution == 0.05
    with pytest.raises(ValueError, match="No domain given for z2"):
        parse_domain("z1 disc 0 0 1", variables=[1, 2])


@pytest.mark.parametrize('text, message', [
    ("z1 disc 0 0", "line 1"),
    ("z1 disc 0 0 1\nz1 disc 0 0 2", "line 2"),
    ("\nz1 square 1", "line 2"),
    ("x disc 0 0 1", "line 1"),
    ("z1 mobius z1 0 0 1", "line 1"),
    ("z1 disc 0 0 -1", "line 1"),
])
def test_malformed_lines(text, message):
    with pytest.raises(ValueError, match=message):
        parse_domain(text)


def test_parse_shape_errors():
    with pytest.raises(ValueError):
        parse_shape([])
    with pytest.raises(ValueError):
        parse_shape(['sinecomb', '1'])


def test_format_domain_reads_back():
    text = "z1 disc 0.5 -1 0.25\nz2 mobius 1+1i 0.5 0.25i 2\nz3 rect 0 0 2 1"
    pd = parse_domain(text)
    assert parse_domain(format_domain(pd)) == pd
