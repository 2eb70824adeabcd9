"""Column reduction, twist equivalence, and diagram extraction."""

import pytest

import corpus
from phfield.boundary import build_boundary_matrix
from phfield.diagram import Diagram
from phfield.domains import Q, Z, PrimeField
from phfield.errors import DomainError
from phfield.filtration import Filtration
from phfield.generators import cap, mobius_filtration, mobius_circle_index, p_fold_annulus
from phfield.oracle import _field_rank
from phfield.reduction import compute_diagram, extract_diagram, reduce, replay_ops

FIELDS = (PrimeField(2), PrimeField(3), PrimeField(5), Q)


def test_reduce_requires_a_field():
    m = build_boundary_matrix(corpus.filled_triangle(), Z)
    with pytest.raises(DomainError):
        reduce(m)


def test_empty_filtration():
    f = Filtration([])
    d = compute_diagram(f, "q")
    assert d.pairs == ()
    assert d.n_cells == 0


def test_filled_triangle_lows_and_diagram():
    m = build_boundary_matrix(corpus.filled_triangle(), PrimeField(2))
    r = reduce(m)
    assert r.lows() == {2: 4, 3: 5, 6: 7}
    d = extract_diagram(r)
    assert d.degree_pairs(0) == ((1, None), (2, 4), (3, 5))
    assert d.degree_pairs(1) == ((6, 7),)


def test_single_vertex_diagram():
    from phfield.filtration import simplex

    d = compute_diagram(Filtration([simplex([0])]), "q")
    assert d.pairs == ((1, None, 0),)


def test_filled_triangle_diagram_over_q():
    d = compute_diagram(corpus.filled_triangle(), "q")
    assert d.degree_pairs(0) == ((1, None), (2, 4), (3, 5))
    assert d.degree_pairs(1) == ((6, 7),)


def test_distinct_lows_always():
    for name, f in corpus.random_filtrations(20, 60, seed=5):
        for field in FIELDS:
            r = reduce(build_boundary_matrix(f, field))
            r.lows()  # asserts pairwise-distinct lows internally


def test_replay_reproduces_reduced_columns():
    for name, f in corpus.fixture_filtrations(include_large=False):
        for field in (PrimeField(2), Q):
            m = build_boundary_matrix(f, field)
            for twist in (False, True):
                r = reduce(m, twist=twist, record_ops=True)
                assert replay_ops(m, r.ops) == r.matrix.columns, (name, twist)


def test_unit_upper_triangular_factorization():
    # Each recorded operation adds an earlier column to a later one, so the
    # accumulated transformation is unit upper triangular.
    m = build_boundary_matrix(corpus.fixture_filtrations()[5][1], Q)  # mobius-8
    r = reduce(m, record_ops=True)
    for op in r.ops:
        assert op[0] == "add"
        _, src, dst, _ = op
        assert src < dst


def test_zero_reduced_columns_are_spans_of_earlier_columns():
    # A reduced column vanishes exactly when the original column is linearly
    # dependent on the earlier ones.
    for field in (PrimeField(2), Q):
        for name, f in list(corpus.random_filtrations(6, 40, seed=9)) + [
            ("mobius-3", mobius_filtration(3))
        ]:
            m = build_boundary_matrix(f, field)
            r = reduce(m)
            n = m.n_cols
            nonzero_so_far = 0
            dense_rows = []  # original columns as rows, prefix by prefix
            for j in range(1, n + 1):
                vec = [field.zero] * n
                for row, c in m.column(j):
                    vec[row - 1] = c
                dense_rows.append(vec)
                if r.matrix.column(j):
                    nonzero_so_far += 1
                rank = _field_rank([list(v) for v in dense_rows], field)
                assert rank == nonzero_so_far, (name, j)


def test_twist_matches_no_twist_everywhere():
    for name, f in corpus.random_filtrations(15, 80, seed=31):
        for field in FIELDS:
            m = build_boundary_matrix(f, field)
            d_plain = extract_diagram(reduce(m, twist=False))
            d_twist = extract_diagram(reduce(m, twist=True))
            assert d_plain == d_twist, (name, field.name)


def test_diagram_death_degree_is_birth_degree_plus_one():
    for name, f in corpus.fixture_filtrations():
        dims = f.dims()
        d = compute_diagram(f, "zp:2")
        for b, death, q in d.pairs:
            assert dims[b - 1] == q
            if death is not None:
                assert dims[death - 1] == q + 1


def test_mobius_coarse_patterns():
    for segments in (3, 8):
        f = mobius_filtration(segments)
        cut = mobius_circle_index(segments)
        stage = lambda i: 1 if i <= cut else 2
        from phfield.analysis import coarsen_diagram

        d2 = coarsen_diagram(compute_diagram(f, "zp:2").restrict(1), stage, 2)
        dq = coarsen_diagram(compute_diagram(f, "q").restrict(1), stage, 2)
        assert d2.pairs == ((1, 2, 1), (2, None, 1))
        assert dq.pairs == ((1, None, 1),)


def test_mobius_q_has_single_infinite_degree_one_pair():
    d = compute_diagram(mobius_filtration(5), "q").restrict(1)
    infinite = [p for p in d.pairs if p[1] is None]
    assert len(infinite) == 1
    assert infinite[0][0] == mobius_circle_index(5)


def test_capped_annulus2_fields_differ_only_at_two():
    from phfield.analysis import diagrams_equal

    f = cap(p_fold_annulus(2, 5))
    dq = compute_diagram(f, "q")
    assert not diagrams_equal(compute_diagram(f, "zp:2"), dq).equal
    assert diagrams_equal(compute_diagram(f, "zp:3"), dq).equal


def test_graph_filtrations_are_field_independent():
    from phfield.analysis import diagrams_equal
    from phfield.generators import rips_filtration, uniform_pointcloud

    for seed in (1, 2, 3):
        pc = uniform_pointcloud(12, 2, seed)
        f = rips_filtration(pc, max_dim=1, max_radius=0.4)
        base = compute_diagram(f, "q")
        for field in ("zp:2", "zp:3", "zp:5"):
            assert diagrams_equal(compute_diagram(f, field), base).equal
