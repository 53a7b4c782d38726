from collections import Counter

import pytest

from bitgraph_module.bitgraph import BitMultigraph, Edge, Part, validate_bit_multigraph, with_edges
from bitgraph_module.fold import (
    CellCollisionError,
    InconsistentFloorCountsError,
    InvalidEdgeLabelError,
    OutOfRangeError,
    crossword_multigraph,
    edge_cell,
    reconstruct_grid,
)
from bitgraph_module.index import EdgeLabel, Index
from grid_module.grid import Coord, Grid, Orientation, answers, validate
from network_module.licn import build_licn, fundamental_graph
from voiding_module.voiding import unvoided_graph, voided_from_grid


PLUS, ZERO, MINUS = EdgeLabel.PLUS, EdgeLabel.ZERO, EdgeLabel.MINUS


def multigraph(g: Grid) -> BitMultigraph:
    return crossword_multigraph(fundamental_graph(build_licn(g)))


def test_fold_all_white_3x3():
    m = multigraph(Grid.all_white(1))
    assert m.part_a == (Index(0), Index(1))
    assert m.part_b == (Index(0), Index(1))
    triples = Counter((str(e.a), str(e.b), e.label) for e in m.edges)
    assert triples == Counter(
        [("1", "1", PLUS), ("1", "1", MINUS), ("1", "0", ZERO), ("0", "1", ZERO), ("0", "0", ZERO)]
    )


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_fold_all_white_is_template(n):
    assert multigraph(Grid.all_white(n)) == unvoided_graph(n)


@pytest.mark.parametrize("voids", [[(0, 1)], [(2, 2)], [(0, 0), (1, 2)]])
def test_fold_preserves_edges(voids):
    g = Grid.from_voids(2, voids, symmetric=True)
    f = fundamental_graph(build_licn(g))
    m = crossword_multigraph(f)
    assert len(m.edges) == len(f.edges)
    assert Counter(e.label for e in m.edges) == Counter(e.label for e in f.edges)


def test_fold_degree_is_answer_length():
    g = Grid.from_voids(2, [(2, 2), (0, 1)], symmetric=True)
    m = multigraph(g)
    across = [a for a in answers(g) if a.orientation is Orientation.ACROSS and a.line_number > 0]
    lengths = sorted(len(a) for a in across)
    degrees = sorted(m.degree(Part.A, v) for v in m.part_a if v.int_part > 0)
    assert degrees == lengths


def test_centre_line_with_outward_answer():
    # row 0 is ...#...#... : the centre answer and one outward answer share line 0
    g = Grid.from_voids(5, [Coord(2, 0)], symmetric=True)
    assert validate(g).valid
    m = multigraph(g)
    assert m.floors(Part.A)[0] == (Index(0), Index(0, "1"))
    assert m.degree(Part.A, Index(0)) == 2
    assert m.degree(Part.A, Index(0, "1")) == 3
    assert m.floors(Part.B)[2] == (Index(2, "1"), Index(2, "2"))
    assert reconstruct_grid(m) == g


def test_edge_cell_mapping():
    assert edge_cell(2, 1, PLUS) == Coord(1, 2)
    assert edge_cell(2, 1, MINUS) == Coord(-1, 2)
    assert edge_cell(0, 2, ZERO) == Coord(2, 0)
    assert edge_cell(2, 0, ZERO) == Coord(0, 2)
    assert edge_cell(0, 0, ZERO) == Coord(0, 0)
    with pytest.raises(InvalidEdgeLabelError):
        edge_cell(1, 1, ZERO)
    with pytest.raises(InvalidEdgeLabelError):
        edge_cell(0, 1, PLUS)


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_reconstruct_template(n):
    assert reconstruct_grid(unvoided_graph(n)) == Grid.all_white(n)


def test_reconstruct_without_centre_edge():
    g = unvoided_graph(2)
    m = with_edges(g, (e for e in g.edges if not (e.a.is_zero and e.b.is_zero)))
    grid = reconstruct_grid(m)
    assert grid.voids() == [Coord(0, 0)]


def test_reconstruct_roundtrip_valid_grids(valid_grids_n2):
    for g in valid_grids_n2:
        m = multigraph(g)
        assert validate_bit_multigraph(m).valid
        assert reconstruct_grid(m) == g


def test_reconstruct_voided_graphs_all_masks(masks_n2):
    for mask in masks_n2[::7]:
        g = mask.to_grid()
        assert reconstruct_grid(voided_from_grid(g)) == g


def test_reconstruct_errors():
    with pytest.raises(InconsistentFloorCountsError):
        reconstruct_grid(BitMultigraph(part_a=(Index(0), Index(1)), part_b=(Index(0),), edges=()))

    with pytest.raises(OutOfRangeError):
        reconstruct_grid(
            BitMultigraph(
                part_a=(Index(0), Index(1)),
                part_b=(Index(0), Index(2)),
                edges=(Edge(Index(0), Index(2), ZERO),),
            )
        )

    with pytest.raises(CellCollisionError):
        reconstruct_grid(
            BitMultigraph(
                part_a=(Index(0), Index(1, "0"), Index(1, "1")),
                part_b=(Index(0), Index(1)),
                edges=(Edge(Index(1, "0"), Index(1), PLUS), Edge(Index(1, "1"), Index(1), PLUS)),
            )
        )
