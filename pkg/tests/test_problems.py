import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitscape.bitspace import Bitstring
from bitscape.errors import (
    DimensionError,
    DomainError,
    DuplicateRowError,
    IncompleteTableError,
    TableFormatError,
)
from bitscape.problems import (
    NKModel,
    TabulatedLandscape,
    load_table,
    make_nk,
    make_onemax,
    make_sin2dec,
    make_two_trap,
    penalize,
    regularize,
    save_table,
    with_threshold_violation,
)
from oracles import nk_value


def B(text):
    return Bitstring(text)


def test_sin2dec_values():
    L = make_sin2dec(6)
    assert L.f(B("000000")) == 0.0
    assert L.f(B("000001")) == math.sin(2)
    assert L.f(B("111110")) == pytest.approx(-0.9956869868891794, abs=1e-15)
    assert L.name == "sin2dec_n6"


def test_onemax_counts_down_to_all_ones():
    L = make_onemax(5)
    assert L.f(B("00000")) == 5.0
    assert L.f(B("11111")) == 0.0
    assert L.f(B("10101")) == 2.0


def test_two_trap_has_deceptive_second_trap():
    L = make_two_trap(4)
    assert L.f(B("0000")) == 0.0
    assert L.f(B("1111")) == 0.5
    assert L.f(B("0001")) == 1.0
    assert L.f(B("0111")) == 1.5


def test_landscape_rejects_wrong_length():
    L = make_onemax(4)
    with pytest.raises(DimensionError):
        L.evaluate(B("00000"))


def test_landscape_source_tokens_are_unique():
    a = make_sin2dec(6)
    b = make_sin2dec(6)
    assert a.source != b.source
    assert a.source.startswith("sin2dec_n6#")


def test_nk_model_shape():
    m = NKModel.generate(6, 2, seed=1)
    assert m.n == 6 and m.k == 2
    assert len(m.neighbor_lists) == 6
    assert m.neighbor_lists[0] == (1, 2)
    assert m.neighbor_lists[5] == (0, 1)  # wraps around
    assert len(m.tables) == 6
    assert all(len(row) == 8 for row in m.tables)
    assert all(0.0 <= v < 1.0 for row in m.tables for v in row)


def test_nk_requires_k_below_n():
    with pytest.raises(DomainError):
        NKModel.generate(4, 4, seed=0)


def test_nk_deterministic_per_seed():
    a = make_nk(8, 2, 5)
    b = make_nk(8, 2, 5)
    c = make_nk(8, 2, 6)
    x = B("10110100")
    assert a.f(x) == b.f(x)
    assert a.f(x) != c.f(x)


def test_nk_matches_straight_line_reference():
    m = NKModel.generate(9, 3, seed=11)
    L = make_nk(9, 3, 11)
    for v in (0, 1, 137, 255, 511):
        b = Bitstring.from_value(v, 9)
        assert L.f(b) == pytest.approx(nk_value(m, v), abs=1e-15)


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=3),
       st.integers(min_value=0, max_value=100), st.data())
def test_nk_values_bounded(n, k, seed, data):
    if k >= n:
        k = n - 1
    L = make_nk(n, k, seed)
    v = data.draw(st.integers(0, (1 << n) - 1))
    assert 0.0 <= L.f(Bitstring.from_value(v, n)) < 1.0


def test_regularize_tilts_plateaus():
    L = regularize(make_onemax(4), 0.5)
    assert L.f(B("0000")) == 4.0
    assert L.f(B("1000")) == 3.0 + 0.5 / 4
    assert "|f+0.5*ones/n" in L.name


def test_regularize_zero_is_identity_on_values():
    base = make_sin2dec(6)
    L = regularize(base, 0.0)
    for v in range(64):
        b = Bitstring.from_value(v, 6)
        assert L.f(b) == base.f(b)


def test_regularize_rejects_negative():
    with pytest.raises(DomainError):
        regularize(make_onemax(3), -0.1)


def test_threshold_violation_and_feasibility():
    L = with_threshold_violation(make_onemax(4), tau=2.0)
    assert L.violation_of(B("1111")) == 0.0
    assert L.is_feasible(B("0011"))
    assert L.violation_of(B("0000")) == 2.0
    assert not L.is_feasible(B("0000"))


def test_penalize_requires_violation():
    from bitscape.errors import ConfigError

    with pytest.raises(ConfigError):
        penalize(make_onemax(4), 1.0)


def test_penalize_leaves_feasible_points_alone():
    base = with_threshold_violation(make_onemax(4), tau=2.0)
    L = penalize(base, lam=3.0)
    assert L.f(B("1111")) == base.f(B("1111"))
    assert L.f(B("0111")) == base.f(B("0111"))
    # infeasible points pay lambda times the violation
    assert L.f(B("0000")) == 4.0 + 3.0 * 2.0
    assert L.violation is not None


def test_table_roundtrip(tmp_path):
    base = make_sin2dec(4)
    values = tuple(base.f(Bitstring.from_value(v, 4)) for v in range(16))
    table = TabulatedLandscape(n=4, fitness=values, violation=None, name="toy")
    path = tmp_path / "toy.csv"
    save_table(table, path)
    loaded = load_table(path)
    assert loaded.n == 4
    assert loaded.fitness == values
    L = loaded.landscape()
    assert L.f(B("0101")) == values[5]


def test_table_with_violation_roundtrip(tmp_path):
    table = TabulatedLandscape(
        n=2,
        fitness=(3.0, 1.0, 2.0, 0.0),
        violation=(0.0, 0.5, 0.0, 1.25),
        name="v",
    )
    path = tmp_path / "v.csv"
    save_table(table, path)
    loaded = load_table(path)
    assert loaded.violation == (0.0, 0.5, 0.0, 1.25)
    L = loaded.landscape()
    assert not L.is_feasible(B("11"))
    assert L.is_feasible(B("10"))


def test_load_table_maximize_negates(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("bits,fitness\n0,1.5\n1,-2.0\n", encoding="utf-8")
    loaded = load_table(path, maximize=True)
    assert loaded.fitness == (-1.5, 2.0)


def test_load_table_ignores_comments_and_blank_lines(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("# a comment\nbits,fitness\n\n0,1.0\n1,2.0\n", encoding="utf-8")
    assert load_table(path).fitness == (1.0, 2.0)


def test_load_table_requires_every_row(tmp_path):
    path = tmp_path / "i.csv"
    path.write_text("bits,fitness\n00,1.0\n01,2.0\n10,3.0\n", encoding="utf-8")
    with pytest.raises(IncompleteTableError):
        load_table(path)


def test_load_table_rejects_duplicates(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("bits,fitness\n0,1.0\n0,2.0\n", encoding="utf-8")
    with pytest.raises(DuplicateRowError):
        load_table(path)


def test_load_table_rejects_bad_header(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("solution,value\n0,1.0\n1,2.0\n", encoding="utf-8")
    with pytest.raises(TableFormatError):
        load_table(path)


def test_load_table_rejects_mixed_lengths(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("bits,fitness\n00,1.0\n010,2.0\n", encoding="utf-8")
    with pytest.raises(TableFormatError):
        load_table(path)
