# licn.py

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

from bitgraph_module.index import EdgeLabel, Index, rank_fraction
from grid_module.grid import (
    Answer,
    AsymmetricGridError,
    Coord,
    Grid,
    Orientation,
    answers,
    in_fundamental_region,
)


logger = logging.getLogger(__name__)

ZERO_INDEX = Index(0)


@dataclass(frozen=True)
class SignedIndex:
    """Signed LICN vertex index; only the centre answer has magnitude 0 with no fraction."""

    negative: bool
    magnitude: Index

    def __post_init__(self):
        if self.negative and self.magnitude == ZERO_INDEX:
            object.__setattr__(self, "negative", False)

    def __neg__(self) -> "SignedIndex":
        if self.magnitude == ZERO_INDEX:
            return self
        return SignedIndex(not self.negative, self.magnitude)

    def render(self, folded: bool = False) -> str:
        if self.magnitude == ZERO_INDEX:
            return "0"
        if folded:
            return f"±{self.magnitude}"
        return f"{'-' if self.negative else '+'}{self.magnitude}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LicnEdge:
    across: SignedIndex
    down: SignedIndex
    label: EdgeLabel
    cell: Coord


@dataclass(frozen=True)
class Licn:
    """Labeled indexed crossword network of a symmetric grid."""

    n: int
    across_vertices: Dict[SignedIndex, Answer]
    down_vertices: Dict[SignedIndex, Answer]
    edges: Tuple[LicnEdge, ...]

    def degree(self, orientation: Orientation, v: SignedIndex) -> int:
        if orientation is Orientation.ACROSS:
            return sum(1 for e in self.edges if e.across == v)
        return sum(1 for e in self.edges if e.down == v)


@dataclass(frozen=True)
class FundamentalGraph:
    """The LICN restricted to edges whose cells lie in the fundamental region."""

    n: int
    across_vertices: Dict[SignedIndex, Answer]
    down_vertices: Dict[SignedIndex, Answer]
    edges: Tuple[LicnEdge, ...]


def _index_line(line_answers: List[Answer], line: int, center_line: bool) -> Dict[Answer, SignedIndex]:
    """
    Indices for the answers of one positive line (or the outward half of line 0),
    in orientation order. Fractions are 1..m, or empty for a lone answer.
    """
    if center_line:
        centre = [a for a in line_answers if Coord(0, 0) in a.coords]
        outward = [a for a in line_answers if a not in centre]
        table = {a: SignedIndex(False, ZERO_INDEX) for a in centre}
        for rank, a in enumerate(outward, start=1):
            table[a] = SignedIndex(False, Index(0, rank_fraction(rank, len(outward))))
        return table

    if len(line_answers) == 1:
        return {line_answers[0]: SignedIndex(False, Index(line))}
    return {
        a: SignedIndex(False, Index(line, rank_fraction(rank, len(line_answers))))
        for rank, a in enumerate(line_answers, start=1)
    }


def _positive_side(a: Answer) -> bool:
    """True for answers on the positive side of their line (or holding the centre)."""
    if a.line_number != 0:
        return a.line_number > 0
    if Coord(0, 0) in a.coords:
        return True
    if a.orientation is Orientation.ACROSS:
        return a.coords[0].i > 0
    return a.coords[0].j > 0


def _index_orientation(answer_list: List[Answer], orientation: Orientation) -> Dict[Answer, SignedIndex]:
    own = [a for a in answer_list if a.orientation is orientation]
    by_line: Dict[int, List[Answer]] = {}
    for a in own:
        if _positive_side(a):
            by_line.setdefault(a.line_number, []).append(a)

    table: Dict[Answer, SignedIndex] = {}
    for line, line_answers in by_line.items():
        # coords already run left to right / bottom to top, the positive orientation
        table.update(_index_line(line_answers, abs(line), center_line=(line == 0)))

    for a in own:
        if a not in table:
            mirror = a.rotated()
            if mirror not in table:
                raise AsymmetricGridError(f"Answer at {a.coords[0]} has no rotated partner")
            table[a] = -table[mirror]
    return table


def build_licn(g: Grid) -> Licn:
    asym = g.first_asymmetry()
    if asym is not None:
        raise AsymmetricGridError(f"Grid is not 180° symmetric at ({asym.i},{asym.j})")

    answer_list = answers(g)
    across = _index_orientation(answer_list, Orientation.ACROSS)
    down = _index_orientation(answer_list, Orientation.DOWN)

    across_of: Dict[Coord, SignedIndex] = {}
    down_of: Dict[Coord, SignedIndex] = {}
    for a, idx in across.items():
        for c in a.coords:
            across_of[c] = idx
    for a, idx in down.items():
        for c in a.coords:
            down_of[c] = idx

    edges = tuple(
        LicnEdge(across=across_of[c], down=down_of[c], label=EdgeLabel.from_product(c.i * c.j), cell=c)
        for c in g.white_cells()
    )
    logger.debug("LICN for n=%d: %d across, %d down, %d edges", g.n, len(across), len(down), len(edges))
    return Licn(
        n=g.n,
        across_vertices={idx: a for a, idx in across.items()},
        down_vertices={idx: a for a, idx in down.items()},
        edges=edges,
    )


def fundamental_graph(l: Licn) -> FundamentalGraph:
    kept = tuple(e for e in l.edges if in_fundamental_region(e.cell))
    across_keep = {e.across for e in kept}
    down_keep = {e.down for e in kept}
    return FundamentalGraph(
        n=l.n,
        across_vertices={v: a for v, a in l.across_vertices.items() if v in across_keep},
        down_vertices={v: a for v, a in l.down_vertices.items() if v in down_keep},
        edges=kept,
    )


# --- export ---


def ordered(vertices: Iterable[SignedIndex]) -> List[SignedIndex]:
    """Numeric order: negatives by descending magnitude, then zero and positives ascending."""
    vertices = list(vertices)
    negative = sorted((v for v in vertices if v.negative), key=lambda v: v.magnitude, reverse=True)
    rest = sorted((v for v in vertices if not v.negative), key=lambda v: v.magnitude)
    return negative + rest


def _edge_document(e: LicnEdge, folded: bool) -> Dict[str, Any]:
    return {
        "across": e.across.render(folded=folded),
        "down": e.down.render(),
        "label": e.label.value,
        "cell": [e.cell.i, e.cell.j],
    }


def _document(n: int, across, down, edges, folded: bool) -> Dict[str, Any]:
    return {
        "n": n,
        "across": [v.render(folded=folded) for v in ordered(across)],
        "down": [v.render() for v in ordered(down)],
        "edges": [_edge_document(e, folded) for e in edges],
    }


def licn_to_document(l: Licn) -> Dict[str, Any]:
    return _document(l.n, l.across_vertices, l.down_vertices, l.edges, folded=False)


def fundamental_to_document(f: FundamentalGraph) -> Dict[str, Any]:
    return _document(f.n, f.across_vertices, f.down_vertices, f.edges, folded=True)


def _dot(name: str, across, down, edges, folded: bool) -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=circle fontname=Arial];"]
    append = lines.append

    def node(prefix: str, v: SignedIndex, fold: bool) -> str:
        return f'"{prefix}:{v.render(folded=fold)}"'

    append('  subgraph cluster_across { label="Across";')
    for v in ordered(across):
        append(f'    {node("A", v, folded)} [label="{v.render(folded=folded)}"];')
    append("  }")
    append('  subgraph cluster_down { label="Down";')
    for v in ordered(down):
        append(f'    {node("D", v, False)} [label="{v.render()}"];')
    append("  }")
    for e in edges:
        append(f"  {node('A', e.across, folded)} -- {node('D', e.down, False)} [color={e.label.color}];")
    append("}")
    return "\n".join(lines)


def licn_to_dot(l: Licn) -> str:
    return _dot("licn", l.across_vertices, l.down_vertices, l.edges, folded=False)


def fundamental_to_dot(f: FundamentalGraph) -> str:
    return _dot("fundamental", f.across_vertices, f.down_vertices, f.edges, folded=True)


def region_void_count(g: Grid) -> int:
    return sum(1 for c in g.voids() if in_fundamental_region(c))


def vertex_for_answer(l: Licn, a: Answer) -> Optional[SignedIndex]:
    table = l.across_vertices if a.orientation is Orientation.ACROSS else l.down_vertices
    for idx, ans in table.items():
        if ans == a:
            return idx
    return None
