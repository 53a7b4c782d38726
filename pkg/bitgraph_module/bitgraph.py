# bitgraph.py

from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from bitgraph_module.index import LABEL_RANK, EdgeLabel, Index, rank_fraction
from grid_module.grid import Coord


class BitGraphError(ValueError):
    pass


class IndexCollisionError(BitGraphError):
    """Two indices in one part name the same number, e.g. 1 and 1.0."""


class Part(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Part":
        return Part.B if self is Part.A else Part.A


@dataclass(frozen=True)
class Edge:
    """One edge of a bit multigraph; `cell` tags the fundamental-region cell it stands for."""

    a: Index
    b: Index
    label: EdgeLabel
    cell: Optional[Coord] = None

    def endpoint(self, part: Part) -> Index:
        return self.a if part is Part.A else self.b

    def untagged(self) -> Tuple[Index, Index, EdgeLabel]:
        return (self.a, self.b, self.label)

    def __str__(self) -> str:
        tag = f" cell=({self.cell.i},{self.cell.j})" if self.cell is not None else ""
        return f"({self.a},{self.b},{self.label.value}){tag}"


def _edge_key(e: Edge):
    cell = (0, e.cell.i, e.cell.j) if e.cell is not None else (-1, 0, 0)
    return (e.a.int_part, e.a.frac, e.b.int_part, e.b.frac, LABEL_RANK[e.label], cell)


def _check_part(name: str, indices: Tuple[Index, ...]) -> None:
    for lo, hi in zip(indices, indices[1:]):
        # numerically equal indices sort next to each other
        if lo.same_value(hi):
            raise IndexCollisionError(f"Part {name} holds colliding indices {lo} and {hi}")


@dataclass(frozen=True)
class BitMultigraph:
    """
    Balanced bipartite indexed tricolored multigraph.

    Parts are kept sorted and edges sorted, so two graphs with the same
    vertices and edge multiset compare equal.
    """

    part_a: Tuple[Index, ...]
    part_b: Tuple[Index, ...]
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        a = tuple(sorted(self.part_a))
        b = tuple(sorted(self.part_b))
        _check_part("A", a)
        _check_part("B", b)
        object.__setattr__(self, "part_a", a)
        object.__setattr__(self, "part_b", b)
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=_edge_key)))

        members_a, members_b = set(a), set(b)
        for e in self.edges:
            if e.a not in members_a or e.b not in members_b:
                raise BitGraphError(f"Edge {e} has an endpoint outside the vertex parts")

    def part(self, p: Part) -> Tuple[Index, ...]:
        return self.part_a if p is Part.A else self.part_b

    @cached_property
    def _incidence(self) -> Dict[Part, Dict[Index, List[Edge]]]:
        table: Dict[Part, Dict[Index, List[Edge]]] = {
            Part.A: {v: [] for v in self.part_a},
            Part.B: {v: [] for v in self.part_b},
        }
        for e in self.edges:
            table[Part.A][e.a].append(e)
            table[Part.B][e.b].append(e)
        return table

    def incident(self, p: Part, v: Index) -> List[Edge]:
        return self._incidence[p][v]

    def degree(self, p: Part, v: Index) -> int:
        return len(self._incidence[p][v])

    def isolated(self, p: Part) -> List[Index]:
        return [v for v in self.part(p) if not self._incidence[p][v]]

    def isolated_count(self) -> int:
        return len(self.isolated(Part.A)) + len(self.isolated(Part.B))

    @cached_property
    def _floors(self) -> Dict[Part, Dict[int, Tuple[Index, ...]]]:
        table: Dict[Part, Dict[int, Tuple[Index, ...]]] = {}
        for p in (Part.A, Part.B):
            grouped: Dict[int, List[Index]] = {}
            for v in self.part(p):
                grouped.setdefault(v.int_part, []).append(v)
            table[p] = {k: tuple(vs) for k, vs in sorted(grouped.items())}
        return table

    def floors(self, p: Part) -> Dict[int, Tuple[Index, ...]]:
        """floor value -> members in ascending order"""
        return self._floors[p]

    def label_counts(self) -> Counter:
        return Counter(e.label for e in self.edges)

    def describe(self) -> str:
        lines = [
            "A: " + " ".join(str(v) for v in self.part_a),
            "B: " + " ".join(str(v) for v in self.part_b),
        ]
        lines.extend(str(e) for e in self.edges)
        return "\n".join(lines)


@dataclass(frozen=True)
class FloorSet:
    part: Part
    floor_value: int
    members: Tuple[Index, ...]


def floor_sets(g: BitMultigraph, part: Part) -> List[FloorSet]:
    return [FloorSet(part=part, floor_value=k, members=members) for k, members in g.floors(part).items()]


def infer_half_size(g: BitMultigraph) -> int:
    """n as the floor-set count of part A minus one."""
    return len(g.floors(Part.A)) - 1


# --- validation ---


class BitGraphCheck(str, Enum):
    BALANCED = "balanced"
    DISTINCT_INDICES = "distinct_indices"
    ZERO_VERTICES = "zero_vertices"
    ZERO_EDGES = "zero_edges"
    NONZERO_EDGES = "nonzero_edges"


class BitGraphVerdict(BaseModel):
    check: BitGraphCheck
    passed: bool
    witness: Optional[str] = None


class BitGraphReport(BaseModel):
    verdicts: Dict[BitGraphCheck, BitGraphVerdict]

    @property
    def valid(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def validate_bit_multigraph(g: BitMultigraph) -> BitGraphReport:
    verdicts: List[BitGraphVerdict] = []

    balanced = len(g.part_a) == len(g.part_b)
    verdicts.append(
        BitGraphVerdict(
            check=BitGraphCheck.BALANCED,
            passed=balanced,
            witness=None if balanced else f"|A|={len(g.part_a)} |B|={len(g.part_b)}",
        )
    )

    # construction already rejects collisions; re-checked so reports stay complete
    distinct_witness = None
    for name, indices in (("A", g.part_a), ("B", g.part_b)):
        try:
            _check_part(name, indices)
        except IndexCollisionError as e:
            distinct_witness = str(e)
    verdicts.append(
        BitGraphVerdict(check=BitGraphCheck.DISTINCT_INDICES, passed=distinct_witness is None, witness=distinct_witness)
    )

    missing = [p.value for p in (Part.A, Part.B) if not any(v.is_zero for v in g.part(p))]
    verdicts.append(
        BitGraphVerdict(
            check=BitGraphCheck.ZERO_VERTICES,
            passed=not missing,
            witness=f"no zero vertex in part {','.join(missing)}" if missing else None,
        )
    )

    pair_counts = Counter((e.a, e.b) for e in g.edges)
    zero_witness = None
    zero_pairs = set()
    for e in g.edges:
        if not (e.a.is_zero or e.b.is_zero):
            continue
        if e.label is not EdgeLabel.ZERO:
            zero_witness = f"edge {e} touches a zero vertex but is labeled {e.label.value}"
            break
        if pair_counts[(e.a, e.b)] > 1:
            zero_witness = f"pair ({e.a},{e.b}) is joined by {pair_counts[(e.a, e.b)]} edges"
            break
        if e.a.is_zero and e.b.is_zero:
            zero_pairs.add((e.a, e.b))
    if zero_witness is None and len(zero_pairs) > 1:
        zero_witness = f"{len(zero_pairs)} adjacent pairs of zero vertices"
    verdicts.append(BitGraphVerdict(check=BitGraphCheck.ZERO_EDGES, passed=zero_witness is None, witness=zero_witness))

    triple_counts = Counter(e.untagged() for e in g.edges if not (e.a.is_zero or e.b.is_zero))
    nonzero_witness = None
    for (a, b, label), count in triple_counts.items():
        if label is EdgeLabel.ZERO:
            nonzero_witness = f"zero-labeled edge between nonzero vertices {a} and {b}"
            break
        if count > 1:
            nonzero_witness = f"{count} edges labeled {label.value} between {a} and {b}"
            break
    verdicts.append(
        BitGraphVerdict(check=BitGraphCheck.NONZERO_EDGES, passed=nonzero_witness is None, witness=nonzero_witness)
    )

    return BitGraphReport(verdicts={v.check: v for v in verdicts})


# --- canonical form and equivalence ---


def canonical_names(g: BitMultigraph, p: Part) -> Dict[Index, Index]:
    """Rank-based renaming within each floor set: singleton -> k, otherwise k.0, k.1, ..."""
    mapping: Dict[Index, Index] = {}
    for k, members in g.floors(p).items():
        if len(members) == 1:
            mapping[members[0]] = Index(k)
            continue
        for rank, v in enumerate(members):
            mapping[v] = Index(k, rank_fraction(rank, len(members) - 1))
    return mapping


def relabel(g: BitMultigraph, map_a: Dict[Index, Index], map_b: Dict[Index, Index]) -> BitMultigraph:
    return BitMultigraph(
        part_a=tuple(map_a[v] for v in g.part_a),
        part_b=tuple(map_b[v] for v in g.part_b),
        edges=tuple(replace(e, a=map_a[e.a], b=map_b[e.b]) for e in g.edges),
    )


def canonicalize(g: BitMultigraph) -> BitMultigraph:
    return relabel(g, canonical_names(g, Part.A), canonical_names(g, Part.B))


def strip_isolated(g: BitMultigraph) -> BitMultigraph:
    isolated_a = set(g.isolated(Part.A))
    isolated_b = set(g.isolated(Part.B))
    return BitMultigraph(
        part_a=tuple(v for v in g.part_a if v not in isolated_a),
        part_b=tuple(v for v in g.part_b if v not in isolated_b),
        edges=g.edges,
    )


def structure_key(g: BitMultigraph) -> Tuple:
    """Everything but the cell tags."""
    return (g.part_a, g.part_b, tuple(sorted((_edge_key(e)[:5] for e in g.edges))))


def equivalent(g1: BitMultigraph, g2: BitMultigraph, ignore_isolated: bool = False) -> bool:
    if ignore_isolated:
        g1, g2 = strip_isolated(g1), strip_isolated(g2)
    return structure_key(canonicalize(g1)) == structure_key(canonicalize(g2))


def with_edges(g: BitMultigraph, edges: Iterable[Edge]) -> BitMultigraph:
    return BitMultigraph(part_a=g.part_a, part_b=g.part_b, edges=tuple(edges))
