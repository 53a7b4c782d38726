import json

import networkx as nx
import pytest

from bitgraph_module.index import EdgeLabel, Index
from grid_module.grid import (
    AsymmetricGridError,
    Coord,
    Grid,
    Orientation,
    StructureRule,
    fundamental_region,
    validate,
)
from enumeration_module.masks import VoidMask
from network_module.licn import (
    SignedIndex,
    build_licn,
    fundamental_graph,
    fundamental_to_document,
    fundamental_to_dot,
    licn_to_document,
    licn_to_dot,
    region_void_count,
    vertex_for_answer,
)


def _rendered(vertices):
    return {v.render() for v in vertices}


def test_signed_index_negation():
    v = SignedIndex(False, Index(1, "2"))
    assert str(v) == "+1.2"
    assert str(-v) == "-1.2"
    assert -(-v) == v
    zero = SignedIndex(False, Index(0))
    assert -zero == zero
    assert str(zero) == "0"
    assert SignedIndex(True, Index(0)) == zero


def test_licn_all_white_3x3():
    l = build_licn(Grid.all_white(1))
    assert _rendered(l.across_vertices) == {"-1", "0", "+1"}
    assert _rendered(l.down_vertices) == {"-1", "0", "+1"}
    assert len(l.edges) == 9
    labels = {e.cell: e.label for e in l.edges}
    assert labels[Coord(1, 1)] is EdgeLabel.PLUS
    assert labels[Coord(-1, 1)] is EdgeLabel.MINUS
    assert labels[Coord(0, 1)] is EdgeLabel.ZERO


def test_licn_split_row_indices():
    g = Grid.from_voids(2, [Coord(0, 1)], symmetric=True)
    l = build_licn(g)
    by_cells = {a.coords: idx.render() for idx, a in l.across_vertices.items()}
    assert by_cells[(Coord(-2, 1), Coord(-1, 1))] == "+1.1"
    assert by_cells[(Coord(1, 1), Coord(2, 1))] == "+1.2"
    assert by_cells[(Coord(1, -1), Coord(2, -1))] == "-1.1"
    assert by_cells[(Coord(-2, -1), Coord(-1, -1))] == "-1.2"


def test_row_zero_answers_face_outward():
    g = Grid.from_voids(3, [Coord(1, 0)], symmetric=True)
    l = build_licn(g)
    by_cells = {a.coords: idx.render() for idx, a in l.across_vertices.items()}
    assert by_cells[(Coord(0, 0),)] == "0"
    assert by_cells[(Coord(2, 0), Coord(3, 0))] == "+0.1"
    assert by_cells[(Coord(-3, 0), Coord(-2, 0))] == "-0.1"


@pytest.mark.parametrize("voids", [[], [(0, 1)], [(2, 2)], [(0, 0), (1, 2)], [(-2, 1), (1, 0)]])
def test_licn_structure(voids):
    g = Grid.from_voids(2, voids, symmetric=True)
    l = build_licn(g)
    assert len(l.edges) == len(g.white_cells())
    assert {e.cell for e in l.edges} == set(g.white_cells())
    for e in l.edges:
        assert e.label is EdgeLabel.from_product(e.cell.i * e.cell.j)
    for idx, a in l.across_vertices.items():
        assert l.degree(Orientation.ACROSS, idx) == len(a)
        assert vertex_for_answer(l, a.rotated()) == -idx
    for idx, a in l.down_vertices.items():
        assert l.degree(Orientation.DOWN, idx) == len(a)
        assert vertex_for_answer(l, a.rotated()) == -idx


def test_asymmetric_grid_rejected():
    with pytest.raises(AsymmetricGridError):
        build_licn(Grid.from_voids(2, [Coord(2, 2)]))


def test_licn_tolerates_short_answers():
    g = Grid.from_voids(2, [Coord(0, 0)])
    assert not validate(g).valid
    assert len(build_licn(g).edges) == 24


def test_fundamental_graph_3x3():
    f = fundamental_graph(build_licn(Grid.all_white(1)))
    assert {e.cell for e in f.edges} == {Coord(0, 0), Coord(1, 0), Coord(-1, 1), Coord(0, 1), Coord(1, 1)}
    assert _rendered(f.across_vertices) == {"0", "+1"}
    assert _rendered(f.down_vertices) == {"-1", "0", "+1"}
    doc = fundamental_to_document(f)
    assert sorted(doc["across"]) == ["0", "±1"]


def test_fundamental_graph_5x5_all_white():
    assert len(fundamental_graph(build_licn(Grid.all_white(2))).edges) == 13


@pytest.mark.parametrize("bits", [0, 1, 5, 100, 4097, 8191])
def test_fundamental_edge_count(bits):
    g = VoidMask(2, bits).to_grid()
    f = fundamental_graph(build_licn(g))
    assert len(f.edges) == 13 - region_void_count(g)
    assert all(e.cell in fundamental_region(2) for e in f.edges)


def test_licn_connectivity_matches_grid(masks_n2):
    for mask in masks_n2[:400]:
        g = mask.to_grid()
        if not g.white_cells():
            continue
        graph = nx.Graph()
        for e in build_licn(g).edges:
            graph.add_edge(("A", e.across), ("D", e.down))
        grid_connected = validate(g).verdicts[StructureRule.CONNECTIVITY].passed
        assert nx.is_connected(graph) == grid_connected


def test_licn_exports():
    l = build_licn(Grid.all_white(1))
    doc = licn_to_document(l)
    assert json.loads(json.dumps(doc)) == doc
    assert doc["across"] == ["-1", "0", "+1"]
    assert {"across", "down", "label", "cell"} == set(doc["edges"][0])
    dot = licn_to_dot(l)
    assert dot.startswith("graph licn {")
    for color in ("blue", "purple", "red"):
        assert f"color={color}" in dot
    assert "±1" in fundamental_to_dot(fundamental_graph(l))
