import itertools

import pytest

from dm4.catalog import CATALOG, catalog_lookup, name_of, rows
from dm4.core import ELEMENTS, decode_table, dual, input_tuples
from golden_tables import BINARY_FIGURES, NAMED, TERNARY_B_SLICES, ternary_value


@pytest.mark.parametrize("name", sorted(BINARY_FIGURES))
def test_binary_figure_tables(name):
    assert str(CATALOG[name]) == "".join(BINARY_FIGURES[name])


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_functions(name):
    assert str(CATALOG[name]) == NAMED[name]


@pytest.mark.parametrize("name", sorted(TERNARY_B_SLICES))
def test_ternary_tables(name):
    f = CATALOG[name]
    for x, y, z in input_tuples(3):
        assert f(x, y, z) == ternary_value(name, x, y, z), (name, x, y, z)


def test_discriminator():
    d = CATALOG["disc"]
    for x, y, z, u in itertools.product(ELEMENTS, repeat=4):
        assert d(x, y, z, u) == (z if x == y else u)


def test_rows_helper():
    assert CATALOG["meet"] == rows("tfnb", "ffff", "nfnf", "bffb")


def test_stated_conflation_dualities():
    conf = lambda name: dual(CATALOG[name], "conflation")
    assert conf("mnp2_1") == CATALOG["mnp2_3"]
    assert conf("mnp2_2") == CATALOG["mnp2_4"]
    assert conf("id_b_to_n") == CATALOG["id_n_to_b"]
    assert conf("t_n_to_n") == CATALOG["t_b_to_b"]


def test_lookup_and_reverse_lookup():
    assert catalog_lookup("box") == decode_table("tfff")
    assert name_of(decode_table("tfff")) == "box"
    assert name_of(decode_table("nnnt")) is None
    with pytest.raises(KeyError):
        catalog_lookup("no_such_function")
