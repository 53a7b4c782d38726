# grid.py

import logging
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator


logger = logging.getLogger(__name__)

CELL_CHAR = "."
VOID_CHAR = "#"


class GridError(ValueError):
    """Base class for grid parsing and shape errors."""


class NonSquareError(GridError):
    pass


class EvenSideError(GridError):
    pass


class InvalidCharacterError(GridError):
    def __init__(self, row: int, col: int, char: str):
        self.row = row
        self.col = col
        self.char = char
        super().__init__(f"Invalid character {char!r} at text row {row}, column {col}")


class AsymmetricGridError(GridError):
    """Raised by constructions that need 180° rotational symmetry."""


class Coord(NamedTuple):
    """Puzzle coordinates: column i, row j, centre cell at (0, 0)."""

    i: int
    j: int


def rotate180(c: Coord) -> Coord:
    return Coord(-c.i, -c.j)


class Orientation(str, Enum):
    ACROSS = "across"
    DOWN = "down"


class Answer(BaseModel):
    """
    A maximal horizontal (Across) or vertical (Down) run of cells.
    line_number is the row for Across answers and the column for Down answers.
    Coords run left to right (Across) or bottom to top (Down).
    """

    model_config = ConfigDict(frozen=True)

    orientation: Orientation
    line_number: int
    coords: Tuple[Coord, ...]

    def __len__(self) -> int:
        return len(self.coords)

    def contains(self, c: Coord) -> bool:
        return c in self.coords

    def rotated(self) -> "Answer":
        return Answer(
            orientation=self.orientation,
            line_number=-self.line_number,
            coords=tuple(rotate180(c) for c in reversed(self.coords)),
        )


class Grid(BaseModel):
    """
    Square (2n+1)x(2n+1) crossword grid.
    cells[0] is the top row (j = +n); True marks a cell, False a void.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    cells: Tuple[Tuple[bool, ...], ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "Grid":
        side = 2 * self.n + 1
        if len(self.cells) != side or any(len(row) != side for row in self.cells):
            raise ValueError(f"Grid with n={self.n} needs {side}x{side} cells")
        return self

    @property
    def side(self) -> int:
        return 2 * self.n + 1

    @classmethod
    def all_white(cls, n: int) -> "Grid":
        side = 2 * n + 1
        return cls(n=n, cells=tuple((True,) * side for _ in range(side)))

    @classmethod
    def from_voids(cls, n: int, voids: Iterable[Coord], symmetric: bool = False) -> "Grid":
        """Build a grid whose voids are `voids` (plus their 180° images when `symmetric`)."""
        side = 2 * n + 1
        rows = [[True] * side for _ in range(side)]
        for raw in voids:
            c = Coord(*raw)
            targets = [c, rotate180(c)] if symmetric else [c]
            for t in targets:
                if not (-n <= t.i <= n and -n <= t.j <= n):
                    raise GridError(f"Void {tuple(t)} lies outside a grid with n={n}")
                rows[n - t.j][t.i + n] = False
        return cls(n=n, cells=tuple(tuple(r) for r in rows))

    def in_bounds(self, c: Coord) -> bool:
        return -self.n <= c.i <= self.n and -self.n <= c.j <= self.n

    def is_cell(self, c: Coord) -> bool:
        return self.cells[self.n - c.j][c.i + self.n]

    def coords(self) -> Iterator[Coord]:
        """All coordinates, top row first, left to right."""
        for j in range(self.n, -self.n - 1, -1):
            for i in range(-self.n, self.n + 1):
                yield Coord(i, j)

    def white_cells(self) -> List[Coord]:
        return [c for c in self.coords() if self.is_cell(c)]

    def voids(self) -> List[Coord]:
        return [c for c in self.coords() if not self.is_cell(c)]

    def first_asymmetry(self) -> Optional[Coord]:
        for c in self.coords():
            if self.is_cell(c) != self.is_cell(rotate180(c)):
                return c
        return None

    def is_symmetric(self) -> bool:
        return self.first_asymmetry() is None


# --- text and JSON forms ---


def parse_grid(text: str) -> Grid:
    """
    Parse newline-separated rows of '.' (cell) and '#' (void).
    The first text row is the top row j=+n. One trailing newline is accepted.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [line[:-1] if line.endswith("\r") else line for line in lines]

    side = len(lines)
    if side == 0 or any(len(line) != side for line in lines):
        widths = sorted({len(line) for line in lines})
        raise NonSquareError(f"Grid text has {side} rows of widths {widths}")
    if side % 2 == 0:
        raise EvenSideError(f"Grid side {side} is even")

    rows = []
    for r, line in enumerate(lines):
        row = []
        for col, ch in enumerate(line):
            if ch == CELL_CHAR:
                row.append(True)
            elif ch == VOID_CHAR:
                row.append(False)
            else:
                raise InvalidCharacterError(r, col, ch)
        rows.append(tuple(row))

    return Grid(n=(side - 1) // 2, cells=tuple(rows))


def serialize_grid(g: Grid) -> str:
    return "\n".join("".join(CELL_CHAR if v else VOID_CHAR for v in row) for row in g.cells)


class GridDocument(BaseModel):
    """JSON form of a grid: half-size plus the list of void coordinates."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=0)
    voids: List[Tuple[int, int]] = Field(default_factory=list)


def grid_to_json(g: Grid) -> str:
    doc = GridDocument(n=g.n, voids=[(c.i, c.j) for c in g.voids()])
    return doc.model_dump_json()


def grid_from_json(text: str) -> Grid:
    doc = GridDocument.model_validate_json(text)
    return Grid.from_voids(doc.n, [Coord(i, j) for i, j in doc.voids])


def load_grid(text: str) -> Grid:
    """Accept either the text form or the JSON form."""
    if text.lstrip().startswith("{"):
        return grid_from_json(text)
    return parse_grid(text)


# --- answers ---


def _runs(cells: List[Tuple[Coord, bool]]) -> List[Tuple[Coord, ...]]:
    runs: List[Tuple[Coord, ...]] = []
    current: List[Coord] = []
    for c, white in cells:
        if white:
            current.append(c)
        elif current:
            runs.append(tuple(current))
            current = []
    if current:
        runs.append(tuple(current))
    return runs


def answers(g: Grid) -> List[Answer]:
    """Across answers (top row first), then Down answers (left column first)."""
    n = g.n
    result: List[Answer] = []
    for j in range(n, -n - 1, -1):
        line = [(Coord(i, j), g.is_cell(Coord(i, j))) for i in range(-n, n + 1)]
        for run in _runs(line):
            result.append(Answer(orientation=Orientation.ACROSS, line_number=j, coords=run))
    for i in range(-n, n + 1):
        line = [(Coord(i, j), g.is_cell(Coord(i, j))) for j in range(-n, n + 1)]
        for run in _runs(line):
            result.append(Answer(orientation=Orientation.DOWN, line_number=i, coords=run))
    return result


def answer_lookup(answer_list: Iterable[Answer]) -> Dict[Tuple[Orientation, Coord], Answer]:
    """Map (orientation, cell) to the answer of that orientation holding the cell."""
    table: Dict[Tuple[Orientation, Coord], Answer] = {}
    for ans in answer_list:
        for c in ans.coords:
            table[(ans.orientation, c)] = ans
    return table


# --- structure rules ---


class StructureRule(str, Enum):
    CONNECTIVITY = "connectivity"
    ROTATIONAL_SYMMETRY = "rotational_symmetry"
    ANSWER_LENGTH = "answer_length"
    KEYED_SQUARES = "keyed_squares"
    FULL_DIMENSION = "full_dimension"


class RuleVerdict(BaseModel):
    rule: StructureRule
    passed: bool
    witness: Optional[Union[Coord, Answer]] = None
    detail: str = ""


class StructureReport(BaseModel):
    verdicts: Dict[StructureRule, RuleVerdict]

    @property
    def valid(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def failed_rules(self) -> List[StructureRule]:
        return [rule for rule, v in self.verdicts.items() if not v.passed]


MIN_ANSWER_LENGTH = 3


def white_cell_graph(g: Grid) -> nx.Graph:
    """4-neighbour adjacency graph on the cells of `g`."""
    graph = nx.Graph()
    for c in g.white_cells():
        graph.add_node(c)
        for nb in (Coord(c.i + 1, c.j), Coord(c.i, c.j + 1)):
            if g.in_bounds(nb) and g.is_cell(nb):
                graph.add_edge(c, nb)
    return graph


def _check_connectivity(g: Grid) -> RuleVerdict:
    graph = white_cell_graph(g)
    if graph.number_of_nodes() == 0:
        # no cells at all is treated as disconnected
        return RuleVerdict(rule=StructureRule.CONNECTIVITY, passed=False, detail="grid has no cells")
    first = next(iter(graph.nodes))
    component = nx.node_connected_component(graph, first)
    if len(component) == graph.number_of_nodes():
        return RuleVerdict(rule=StructureRule.CONNECTIVITY, passed=True)
    stray = min(set(graph.nodes) - component, key=lambda c: (-c.j, c.i))
    return RuleVerdict(
        rule=StructureRule.CONNECTIVITY,
        passed=False,
        witness=stray,
        detail=f"{nx.number_connected_components(graph)} components",
    )


def _check_symmetry(g: Grid) -> RuleVerdict:
    bad = g.first_asymmetry()
    return RuleVerdict(rule=StructureRule.ROTATIONAL_SYMMETRY, passed=bad is None, witness=bad)


def _check_answer_length(answer_list: List[Answer]) -> RuleVerdict:
    for ans in answer_list:
        if len(ans) < MIN_ANSWER_LENGTH:
            return RuleVerdict(
                rule=StructureRule.ANSWER_LENGTH,
                passed=False,
                witness=ans,
                detail=f"{ans.orientation.value} answer of length {len(ans)}",
            )
    return RuleVerdict(rule=StructureRule.ANSWER_LENGTH, passed=True)


def _check_keyed(g: Grid, answer_list: List[Answer]) -> RuleVerdict:
    table = answer_lookup(answer_list)
    for c in g.white_cells():
        if (Orientation.ACROSS, c) not in table or (Orientation.DOWN, c) not in table:
            return RuleVerdict(rule=StructureRule.KEYED_SQUARES, passed=False, witness=c)
    return RuleVerdict(rule=StructureRule.KEYED_SQUARES, passed=True)


def _check_full_dimension(g: Grid) -> RuleVerdict:
    n = g.n
    lines = [
        ("top row", [Coord(i, n) for i in range(-n, n + 1)]),
        ("bottom row", [Coord(i, -n) for i in range(-n, n + 1)]),
        ("left column", [Coord(-n, j) for j in range(-n, n + 1)]),
        ("right column", [Coord(n, j) for j in range(-n, n + 1)]),
    ]
    for name, line in lines:
        if not any(g.is_cell(c) for c in line):
            return RuleVerdict(
                rule=StructureRule.FULL_DIMENSION, passed=False, witness=line[0], detail=f"{name} is all voids"
            )
    return RuleVerdict(rule=StructureRule.FULL_DIMENSION, passed=True)


def validate(g: Grid) -> StructureReport:
    answer_list = answers(g)
    verdicts = [
        _check_connectivity(g),
        _check_symmetry(g),
        _check_answer_length(answer_list),
        _check_keyed(g, answer_list),
        _check_full_dimension(g),
    ]
    return StructureReport(verdicts={v.rule: v for v in verdicts})


# --- fundamental region ---


def fundamental_coords(n: int) -> List[Coord]:
    """Positive rows plus the nonnegative half of row 0, rows top to bottom, left to right."""
    coords = [Coord(i, j) for j in range(n, 0, -1) for i in range(-n, n + 1)]
    coords.extend(Coord(i, 0) for i in range(0, n + 1))
    return coords


def fundamental_region(n: int) -> FrozenSet[Coord]:
    return frozenset(fundamental_coords(n))


def in_fundamental_region(c: Coord) -> bool:
    return c.j > 0 or (c.j == 0 and c.i >= 0)
