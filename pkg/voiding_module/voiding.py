# voiding.py

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from bitgraph_module.bitgraph import (
    BitMultigraph,
    Edge,
    canonicalize,
    equivalent,
    strip_isolated,
)
from bitgraph_module.fold import crossword_multigraph, edge_cell
from bitgraph_module.index import EdgeLabel, Index
from grid_module.grid import (
    AsymmetricGridError,
    Coord,
    Grid,
    fundamental_coords,
    in_fundamental_region,
)
from network_module.licn import build_licn, fundamental_graph


logger = logging.getLogger(__name__)


class VoidingError(ValueError):
    pass


class EdgeNotPresentError(VoidingError):
    pass


class AmbiguousComparisonError(VoidingError):
    """A same-label edge ties with the removed edge's endpoint, so rule 3(a) cannot pick a side."""


class NoSuchCellError(VoidingError):
    pass


def unvoided_graph(n: int) -> BitMultigraph:
    """
    The bit multigraph of the all-white (2n+1)x(2n+1) grid: a K_{n,n} of Plus
    edges, a K_{n,n} of Minus edges, and Zero edges from each zero vertex.
    """
    if n < 0:
        raise ValueError(f"Half-size must be nonnegative, got {n}")

    part = tuple(Index(k) for k in range(n + 1))
    edges: List[Edge] = []
    for row in range(1, n + 1):
        for col in range(1, n + 1):
            for label in (EdgeLabel.PLUS, EdgeLabel.MINUS):
                edges.append(Edge(Index(row), Index(col), label, edge_cell(row, col, label)))
    for k in range(1, n + 1):
        edges.append(Edge(Index(0), Index(k), EdgeLabel.ZERO, edge_cell(0, k, EdgeLabel.ZERO)))
        edges.append(Edge(Index(k), Index(0), EdgeLabel.ZERO, edge_cell(k, 0, EdgeLabel.ZERO)))
    edges.append(Edge(Index(0), Index(0), EdgeLabel.ZERO, Coord(0, 0)))
    return BitMultigraph(part_a=part, part_b=part, edges=tuple(edges))


# --- the voiding procedure ---


@dataclass(frozen=True)
class Reassignment:
    before: Edge
    after: Edge
    rules: Tuple[str, ...]


@dataclass(frozen=True)
class VoidStep:
    removed: Edge
    split_a: Tuple[Index, Index]
    split_b: Tuple[Index, Index]
    reassignments: Tuple[Reassignment, ...] = field(default=())

    def render(self) -> str:
        lines = [
            f"void {self.removed}: "
            f"A {self.removed.a} -> {self.split_a[0]},{self.split_a[1]}; "
            f"B {self.removed.b} -> {self.split_b[0]},{self.split_b[1]}"
        ]
        for r in self.reassignments:
            lines.append(f"  {r.before} -> {r.after} [{', '.join(r.rules)}]")
        return "\n".join(lines)


# rule names per side: (same label Zero/Plus, same label Minus, Plus, Zero, Minus)
_RULES = {
    "A": ("3a-i", "3a-ii", "3b-i", "3b-ii", "3b-iii"),
    "B": ("3a-iii", "3a-iv", "3b-iv", "3b-v", "3b-vi"),
}


def _reassign(
    side: str,
    label: EdgeLabel,
    other: Index,
    pivot: Index,
    removed_label: EdgeLabel,
    low: Index,
    high: Index,
) -> Tuple[Index, str]:
    """
    Pick the split (low = '0' vertex, high = '1' vertex) for an edge that
    touched the split vertex. `other` is its far endpoint, `pivot` the far
    endpoint of the removed edge.
    """
    same_up, same_minus, diff_plus, diff_zero, diff_minus = _RULES[side]

    if label is removed_label:
        if other == pivot:
            raise AmbiguousComparisonError(
                f"Edge labeled {label.value} ties with removed edge endpoint {pivot} on side {side}"
            )
        if label is EdgeLabel.MINUS:
            return (low if other > pivot else high), same_minus
        return (low if other < pivot else high), same_up

    if label is EdgeLabel.PLUS:
        return high, diff_plus
    if label is EdgeLabel.MINUS:
        return low, diff_minus
    return (high if removed_label is EdgeLabel.MINUS else low), diff_zero


def _find_edge(g: BitMultigraph, e: Edge) -> int:
    for pos, candidate in enumerate(g.edges):
        if e.cell is not None and candidate == e:
            return pos
        if e.cell is None and candidate.untagged() == e.untagged():
            return pos
    raise EdgeNotPresentError(f"Edge {e} is not in the graph")


def void_edge_traced(g: BitMultigraph, e: Edge) -> Tuple[BitMultigraph, VoidStep]:
    pos = _find_edge(g, e)
    removed = g.edges[pos]
    a, b, label = removed.a, removed.b, removed.label
    a0, a1 = a.split()
    b0, b1 = b.split()

    kept: List[Edge] = []
    moves: List[Reassignment] = []
    for k, x in enumerate(g.edges):
        if k == pos:
            continue
        new_a, new_b, rules = x.a, x.b, []
        if x.a == a:
            new_a, rule = _reassign("A", x.label, x.b, b, label, a0, a1)
            rules.append(rule)
        if x.b == b:
            new_b, rule = _reassign("B", x.label, x.a, a, label, b0, b1)
            rules.append(rule)
        if rules:
            moved = Edge(new_a, new_b, x.label, x.cell)
            moves.append(Reassignment(before=x, after=moved, rules=tuple(rules)))
            kept.append(moved)
        else:
            kept.append(x)

    voided = BitMultigraph(
        part_a=tuple(v for v in g.part_a if v != a) + (a0, a1),
        part_b=tuple(v for v in g.part_b if v != b) + (b0, b1),
        edges=tuple(kept),
    )
    step = VoidStep(removed=removed, split_a=(a0, a1), split_b=(b0, b1), reassignments=tuple(moves))
    logger.debug("%s", step.render())
    return voided, step


def void_edge(g: BitMultigraph, e: Edge) -> BitMultigraph:
    return void_edge_traced(g, e)[0]


def edge_for_cell(g: BitMultigraph, c: Coord) -> Edge:
    c = Coord(*c)
    if not in_fundamental_region(c):
        raise NoSuchCellError(f"Cell ({c.i},{c.j}) is outside the fundamental region")
    for e in g.edges:
        if e.cell == c:
            return e
    raise NoSuchCellError(f"No edge carries cell ({c.i},{c.j})")


def void_cells_traced(g: BitMultigraph, cells: Iterable[Coord]) -> Tuple[BitMultigraph, List[VoidStep]]:
    steps: List[VoidStep] = []
    for c in cells:
        g, step = void_edge_traced(g, edge_for_cell(g, c))
        steps.append(step)
    return g, steps


def void_cells(g: BitMultigraph, cells: Iterable[Coord]) -> BitMultigraph:
    return void_cells_traced(g, cells)[0]


def region_voids(g: Grid) -> List[Coord]:
    """Voids of `g` inside the fundamental region, in mask order."""
    return [c for c in fundamental_coords(g.n) if not g.is_cell(c)]


def voided_from_grid(g: Grid, order: Optional[Sequence[Coord]] = None) -> BitMultigraph:
    """
    Void the template of g's size at every fundamental-region void of g.
    `order` may permute those voids; any other cell set is rejected.
    """
    asym = g.first_asymmetry()
    if asym is not None:
        raise AsymmetricGridError(f"Grid is not 180° symmetric at ({asym.i},{asym.j})")

    voids = region_voids(g)
    if order is not None:
        order = [Coord(*c) for c in order]
        if sorted(order) != sorted(voids):
            raise VoidingError("Void order must be a permutation of the grid's fundamental-region voids")
        voids = order
    return void_cells(unvoided_graph(g.n), voids)


# --- crossword voids check ---


def side_sharing_places(g: Grid) -> int:
    """Places in the full grid where two voids share a side or a void meets the boundary."""
    places = 0
    for c in g.voids():
        for nb in (Coord(c.i + 1, c.j), Coord(c.i - 1, c.j), Coord(c.i, c.j + 1), Coord(c.i, c.j - 1)):
            if not g.in_bounds(nb):
                places += 2
            elif not g.is_cell(nb):
                places += 1
    # every void-void pair was seen from both sides
    return places // 2


class CrosswordVoidsReport(BaseModel):
    equivalent: bool
    cells_match: bool
    isolated_count: int
    full_grid_places: int
    centre_void: bool
    fundamental_prediction: int
    full_grid_match: bool
    fundamental_match: bool


def check_crossword_voids(g: Grid) -> CrosswordVoidsReport:
    voided = voided_from_grid(g)
    direct = crossword_multigraph(fundamental_graph(build_licn(g)))

    same = equivalent(voided, direct, ignore_isolated=True)
    cells_match = canonicalize(strip_isolated(voided)) == canonicalize(strip_isolated(direct))

    isolated = voided.isolated_count()
    places = side_sharing_places(g)
    centre_void = not g.is_cell(Coord(0, 0))
    # one half of the places lies in the fundamental region; a centre void also isolates one zero split per part
    prediction = places // 2 + (2 if centre_void else 0)

    return CrosswordVoidsReport(
        equivalent=same,
        cells_match=cells_match,
        isolated_count=isolated,
        full_grid_places=places,
        centre_void=centre_void,
        fundamental_prediction=prediction,
        full_grid_match=isolated == places,
        fundamental_match=isolated == prediction,
    )
