"""Filtration validation and the two text formats."""

from fractions import Fraction

import pytest

import corpus
from phfield.errors import FiltrationError, ParseError
from phfield.filtration import (
    Filtration,
    explicit_cell,
    parse_explicit,
    parse_simplicial,
    simplex,
    write_explicit,
    write_simplicial,
)


def test_vertices_sorted_and_distinct():
    c = simplex([2, 0, 1])
    assert c.vertices == (0, 1, 2)
    with pytest.raises(FiltrationError):
        simplex([1, 1])


def test_missing_facet_names_cell():
    with pytest.raises(FiltrationError, match="cell 3"):
        Filtration([simplex([0]), simplex([1]), simplex([0, 2])])


def test_explicit_reference_must_be_earlier_and_lower_dim():
    v = explicit_cell(0, [])
    with pytest.raises(FiltrationError, match="cell 2"):
        Filtration([v, explicit_cell(1, [(2, 1)])])
    with pytest.raises(FiltrationError, match="dimension"):
        Filtration([v, explicit_cell(2, [(1, 1)])])


def test_explicit_boundary_squared_checked():
    # two vertices, one edge with a sign error repeated twice: d(d(x)) != 0
    cells = [
        explicit_cell(0, []),
        explicit_cell(0, []),
        explicit_cell(1, [(1, 1), (2, 1)]),   # should be -1, +1 for a real edge
        explicit_cell(1, [(1, -1), (2, 1)]),
        explicit_cell(2, [(3, 1), (4, 1)]),
    ]
    with pytest.raises(FiltrationError, match="d\\(d\\(x\\)\\)"):
        Filtration(cells)


def test_truncate_every_prefix_is_valid():
    f = corpus.fixture_filtrations(include_large=False)[3][1]  # mobius-3
    for k in range(f.n_cells + 1):
        g = f.truncate(k)
        Filtration(g.cells)  # re-validate
        assert g.n_cells == k


def test_parse_simplicial_with_comments_and_blanks():
    text = "# a filtration\n\n0 0\n0 1\n1 0 1  # label: 0.5\n"
    f = parse_simplicial(text)
    assert f.n_cells == 3
    assert f.cells[2].label == 0.5


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as e:
        parse_simplicial("0 0\n1 0\n")
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_simplicial("0 0\nnope\n")
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_explicit("0 0\n1 2 1 1\n")
    assert e.value.line == 2


def test_simplicial_round_trip_is_byte_stable():
    for name, f in corpus.fixture_filtrations(include_large=False):
        if not all(c.is_simplicial for c in f.cells):
            continue
        text = write_simplicial(f)
        g = parse_simplicial(text)
        assert g == f, name
        assert write_simplicial(g) == text, name


def test_explicit_round_trip_is_byte_stable():
    f = corpus.filled_triangle()
    text = write_explicit(f)
    g = parse_explicit(text)
    assert write_explicit(g) == text
    # vertices become explicit cells with empty chains
    assert all(not c.is_simplicial for c in g.cells)
    assert [c.dim for c in g.cells] == [c.dim for c in f.cells]


def test_labels_round_trip_rational_and_float():
    f = Filtration([
        simplex([0], label=Fraction(1, 3)),
        simplex([1], label=0.1),
        simplex([0, 1], label=2.5),
    ])
    g = parse_simplicial(write_simplicial(f))
    assert g.cells[0].label == Fraction(1, 3)
    assert g.cells[1].label == 0.1
    assert g == f


def test_labels_property():
    f = corpus.filled_triangle()
    assert f.labels is None
    g = Filtration([simplex([0], label=1.0), simplex([1])])
    assert g.labels == (1.0, None)


def test_without_dims_above_remaps_explicit_chains():
    f = parse_explicit(write_explicit(corpus.filled_triangle()))
    sub, kept = f.without_dims_above(1)
    assert sub.n_cells == 6
    assert kept == [1, 2, 3, 4, 5, 6]
    Filtration(sub.cells)  # still valid
