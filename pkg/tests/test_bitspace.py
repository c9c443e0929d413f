import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitscape.bitspace import (
    DEFAULT_SPACE_CAP,
    Bitstring,
    dec,
    enumerate_space,
    hamming,
    hinge,
    hinge_shape,
    neighbors,
    unhinge,
)
from bitscape.errors import CapacityError, DimensionError, DomainError


def test_bitstring_from_text():
    b = Bitstring("10110")
    assert b.n == 5
    assert b.value == 22
    assert str(b) == "10110"
    assert b.bits == (1, 0, 1, 1, 0)
    assert b.ones() == 3


def test_bitstring_from_value_roundtrip():
    b = Bitstring.from_value(11, 6)
    assert str(b) == "001011"
    assert dec(b) == 11


def test_bitstring_indexing_is_msb_first():
    b = Bitstring("100")
    assert (b[0], b[1], b[2]) == (1, 0, 0)
    assert list(b) == [1, 0, 0]


def test_bitstring_rejects_garbage():
    with pytest.raises(DomainError):
        Bitstring("10a1")
    with pytest.raises(DomainError):
        Bitstring("")
    with pytest.raises(DomainError):
        Bitstring.from_value(8, 3)
    with pytest.raises(DomainError):
        Bitstring.from_value(-1, 3)


def test_flip():
    b = Bitstring("0000")
    assert str(b.flip(0)) == "1000"
    assert str(b.flip(3)) == "0001"
    assert b.flip(1).flip(1) == b


def test_hamming_examples():
    assert hamming(Bitstring("0000"), Bitstring("0000")) == 0
    assert hamming(Bitstring("1010"), Bitstring("0101")) == 4
    with pytest.raises(DimensionError):
        hamming(Bitstring("10"), Bitstring("100"))


def test_neighbors_are_all_hamming_one():
    b = Bitstring("0110")
    nb = neighbors(b)
    assert len(nb) == 4
    assert len(set(nb)) == 4
    assert all(hamming(b, x) == 1 for x in nb)


def test_hinge_shape_gives_grid_extents():
    assert hinge_shape(6) == (8, 8)
    assert hinge_shape(5) == (8, 4)  # odd length: extra bit goes to x
    with pytest.raises(DimensionError):
        hinge_shape(1)


def test_hinge_example():
    # 101101 -> first half 101 = 5, second half 101 = 5
    assert hinge(Bitstring("101101")) == (5, 5)
    assert hinge(Bitstring("11100")) == (7, 0)


def test_unhinge_inverts_hinge():
    for v in range(32):
        b = Bitstring.from_value(v, 5)
        assert unhinge(hinge(b), 5) == b


def test_enumerate_space_order_and_size():
    space = list(enumerate_space(3))
    assert [dec(b) for b in space] == list(range(8))


def test_enumerate_space_cap():
    with pytest.raises(CapacityError):
        list(enumerate_space(DEFAULT_SPACE_CAP + 1))
    # explicit cap override allows going past the default
    assert sum(1 for _ in enumerate_space(4, cap=4)) == 16
    with pytest.raises(CapacityError):
        list(enumerate_space(5, cap=4))


@given(st.integers(min_value=1, max_value=14), st.data())
def test_value_roundtrip_property(n, data):
    v = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    b = Bitstring.from_value(v, n)
    assert Bitstring(str(b)) == b
    assert b.value == v


@given(st.integers(min_value=1, max_value=12), st.data())
def test_hamming_symmetry_property(n, data):
    a = Bitstring.from_value(data.draw(st.integers(0, (1 << n) - 1)), n)
    b = Bitstring.from_value(data.draw(st.integers(0, (1 << n) - 1)), n)
    assert hamming(a, b) == hamming(b, a)
    assert (hamming(a, b) == 0) == (a == b)


@given(st.integers(min_value=2, max_value=12), st.data())
def test_hinge_bijection_property(n, data):
    v = data.draw(st.integers(0, (1 << n) - 1))
    b = Bitstring.from_value(v, n)
    x, y = hinge(b)
    nx, ny = hinge_shape(n)
    assert 0 <= x < nx
    assert 0 <= y < ny
    assert unhinge((x, y), n) == b
