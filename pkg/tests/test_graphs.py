from itertools import permutations

import pytest

from torusqm.graphs import (
    CrossCheckError,
    GlobalGraph,
    assemble,
    assemble_total,
    automorphism_order,
    check_equal,
    enumerate_graphs_bounded,
    first_difference,
    graph_sum_S,
    orientations,
    parse_graph,
)
from torusqm.hurwitz import n_prime_series
from torusqm.quasimodular import sigma_series
from torusqm.series import QSeries, dq
from torusqm.triple import VertexFunction


def test_parse_and_sort():
    g = parse_graph("3-1, 1-2,2-2")
    assert g.n == 3
    assert g.edges == ((1, 2), (1, 3), (2, 2))
    assert g.loops == ((2, 2),)
    assert str(g) == "1-2,1-3,2-2"


def test_bad_vertex():
    with pytest.raises(ValueError):
        GlobalGraph(2, ((1, 3),))


def test_connectivity_and_valence():
    g = parse_graph("1-2,3-3", n=4)
    assert not g.is_connected()
    assert g.isolated() == [4]
    assert g.valence(3) == 2


def test_automorphisms_and_orientations():
    g = parse_graph("1-2,1-2,1-3,2-2")
    assert automorphism_order(g) == 2
    # loops have one orientation, other edges two
    assert sum(1 for _ in orientations(g)) == 8


def test_double_edge_closed_form():
    # widths must agree; heights give q^w/(1-q^w)^2 per opposite orientation
    order = 15
    g = parse_graph("1-2,1-2")
    total = sum((graph_sum_S(o, (0, 0), order) for o in orientations(g)), QSeries.zero(order))
    assert total == dq(sigma_series(1, order)) * 2


def test_single_loop():
    g = parse_graph("1-1")
    (o,) = orientations(g)
    assert graph_sum_S(o, (0,), 12) == sigma_series(1, 12)
    assert graph_sum_S(o, (2,), 12) == sigma_series(3, 12)


def test_odd_exponent_rejected():
    (o, _) = orientations(parse_graph("1-2"))
    with pytest.raises(ValueError):
        graph_sum_S(o, (1,), 5)


def test_graph_enumeration_counts():
    # one vertex with valence <= 4: one or two loops
    assert [len(g.edges) for g in enumerate_graphs_bounded([4])] == [1, 2]
    # two vertices with valence <= 2: every vertex needs an edge
    graphs = enumerate_graphs_bounded([2, 2])
    assert {str(g) for g in graphs} == {"1-2", "1-2,1-2", "1-1,2-2"}


def test_enumeration_closed_under_relabeling():
    graphs = set(enumerate_graphs_bounded([3, 3, 3]))
    for g in graphs:
        for p in permutations((1, 2, 3)):
            assert g.relabel(dict(zip((1, 2, 3), p))) in graphs


@pytest.mark.parametrize("profile", [((2,), (2,)), ((3,),), ((2, 2),), ((4,),)])
def test_assembly_matches_character_side(profile):
    assert assemble_total(profile, 10) == n_prime_series(profile, 10)


def test_parallel_assembly_is_identical():
    fs = [VertexFunction.f((2,)), VertexFunction.f((2,))]
    serial, d1 = assemble(fs, 6)
    parallel, d2 = assemble(fs, 6, workers=2)
    assert serial == parallel
    assert [(g, a) for g, a, _ in d1] == [(g, a) for g, a, _ in d2]


def test_empty_assembly():
    total, details = assemble([], 4)
    assert total == QSeries.constant(1, 4)


def test_check_equal_reports_index():
    a = QSeries([1, 2, 3, 4])
    b = QSeries([1, 2, 5, 4])
    assert first_difference(a, a) is None
    assert first_difference(a, b) == 2
    with pytest.raises(CrossCheckError) as exc:
        check_equal(a, b, "demo")
    assert exc.value.index == 2
