# fold.py

import logging
from typing import Set

from bitgraph_module.bitgraph import BitGraphError, BitMultigraph, Edge, Part
from bitgraph_module.index import EdgeLabel
from grid_module.grid import Coord, Grid, rotate180
from network_module.licn import FundamentalGraph


logger = logging.getLogger(__name__)


class ReconstructionError(BitGraphError):
    pass


class InconsistentFloorCountsError(ReconstructionError):
    pass


class CellCollisionError(ReconstructionError):
    pass


class OutOfRangeError(ReconstructionError):
    pass


class InvalidEdgeLabelError(ReconstructionError):
    pass


def edge_cell(row: int, col: int, label: EdgeLabel) -> Coord:
    """
    Fundamental-region cell of an edge joining Across floor `row` and Down
    floor `col`, signed so that i*j carries the sign of `label`.
    """
    if label is EdgeLabel.ZERO:
        if row == 0:
            return Coord(col, 0)
        if col == 0:
            return Coord(0, row)
        raise InvalidEdgeLabelError(f"Zero-labeled edge between nonzero floors {row} and {col}")

    if row == 0 or col == 0:
        raise InvalidEdgeLabelError(f"Edge labeled {label.value} touches floor 0 (row={row}, col={col})")
    if label is EdgeLabel.PLUS:
        return Coord(col, row)
    return Coord(-col, row)


def crossword_multigraph(f: FundamentalGraph) -> BitMultigraph:
    """
    Fold the fundamental graph: Down vertices +x and -x merge into one vertex x,
    Across vertices keep their magnitudes. Each edge keeps its cell as a tag.
    """
    part_a = {v.magnitude for v in f.across_vertices}
    part_b = {v.magnitude for v in f.down_vertices}
    edges = tuple(Edge(a=e.across.magnitude, b=e.down.magnitude, label=e.label, cell=e.cell) for e in f.edges)
    return BitMultigraph(part_a=tuple(part_a), part_b=tuple(part_b), edges=edges)


def reconstruct_grid(g: BitMultigraph) -> Grid:
    floors_a = g.floors(Part.A)
    floors_b = g.floors(Part.B)
    if len(floors_a) != len(floors_b):
        raise InconsistentFloorCountsError(
            f"Part A has {len(floors_a)} floor sets but part B has {len(floors_b)}"
        )
    if not floors_a:
        raise InconsistentFloorCountsError("Graph has no vertices")
    n = len(floors_a) - 1

    white: Set[Coord] = set()
    for e in g.edges:
        row, col = e.a.int_part, e.b.int_part
        if row > n or col > n:
            raise OutOfRangeError(f"Edge {e} lies outside a grid with n={n}")
        c = edge_cell(row, col, e.label)
        if c in white:
            raise CellCollisionError(f"Two edges map to cell ({c.i},{c.j})")
        white.add(c)
        white.add(rotate180(c))

    full = Grid.all_white(n)
    voids = [c for c in full.coords() if c not in white]
    logger.debug("Reconstructed n=%d grid with %d voids", n, len(voids))
    return Grid.from_voids(n, voids)
