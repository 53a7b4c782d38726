# conditions.py

import logging
import math
from collections import Counter
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Set, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from bitgraph_module.bitgraph import BitMultigraph, Edge, Part, infer_half_size
from bitgraph_module.index import EdgeLabel, Index
from conditions_module.registry import CONDITION_REGISTRY, register_condition


logger = logging.getLogger(__name__)


class ConditionId(str, Enum):
    C1_SQUARENESS = "C1_Squareness"
    C2_WORD_LENGTH = "C2_WordLength"
    C3_CONNECTIVITY = "C3_Connectivity"
    C4_EDGE_VERTEX_COUNT = "C4_EdgeVertexCount"
    C5A_ZERO_FLOOR_EDGES = "C5a_ZeroFloorEdges"
    C5B_NONZERO_FLOOR_EDGES = "C5b_NonzeroFloorEdges"
    C5C_NO_DOUBLES = "C5c_NoDoubles"
    C5D_BLUE_ABOVE_RED = "C5d_BlueAboveRed"
    C5E_PURPLE_IN_BETWEEN = "C5e_PurpleInBetween"
    C5F_MAXIMAL_SAME_LABEL = "C5f_MaximalSameLabel"
    C5G_BLUE_SWEEP = "C5g_BlueSweep"
    C5H_RED_SWEEP = "C5h_RedSweep"
    C5I_PURPLE_SWEEP = "C5i_PurpleSweep"


# checks that need C1 to define the floors 0..n
NEEDS_SQUARENESS = {cid for cid in ConditionId if cid.value[:2] in ("C4", "C5")}

MIN_WORD_LENGTH = 3


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


class VertexRef(BaseModel):
    part: Part
    index: str

    def resolve(self) -> Tuple[Part, Index]:
        return self.part, Index.parse(self.index)

    def __str__(self) -> str:
        return f"{self.part.value}:{self.index}"


class ConditionLocus(BaseModel):
    """
    Where a failure was found: the part, floor set, label or vertices that the
    single-site check needs. `rule` names the sub-check for conditions with more
    than one.
    """

    rule: Optional[str] = None
    part: Optional[Part] = None
    floor: Optional[int] = None
    other_floor: Optional[int] = None
    label: Optional[EdgeLabel] = None
    vertices: List[VertexRef] = Field(default_factory=list)


class ConditionResult(BaseModel):
    condition: ConditionId
    verdict: Verdict
    witness: Optional[str] = None
    locus: Optional[ConditionLocus] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAIL


class ConditionReport(BaseModel):
    n: int
    verdicts: Dict[ConditionId, ConditionResult]
    sweep_gaps: Dict[str, List[int]] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.verdicts.values())

    def failures(self) -> List[ConditionId]:
        return [cid for cid, r in self.verdicts.items() if r.verdict is Verdict.FAIL]

    def to_summary(self) -> Dict[str, Dict[str, Any]]:
        """{condition: {"verdict", "witness", "locus", "details"}}"""
        return {
            cid.value: {
                "verdict": r.verdict.value,
                "witness": r.witness,
                "locus": r.locus.model_dump(mode="json", exclude_defaults=True) if r.locus else None,
                "details": r.details,
            }
            for cid, r in self.verdicts.items()
        }


def _result(
    cid: ConditionId,
    passed: bool,
    witness: Optional[str] = None,
    locus: Optional[ConditionLocus] = None,
    **details,
) -> ConditionResult:
    return ConditionResult(
        condition=cid,
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        witness=None if passed else witness,
        locus=None if passed else locus,
        details=details,
    )


def _not_applicable(cid: ConditionId, reason: str) -> ConditionResult:
    return ConditionResult(condition=cid, verdict=Verdict.NOT_APPLICABLE, details={"reason": reason})


def _vertex(p: Part, v: Index) -> str:
    return f"{p.value}:{v}"


def _ref(p: Part, v: Index) -> VertexRef:
    return VertexRef(part=p, index=str(v))


def _half_size(g: BitMultigraph, n: Optional[int]) -> int:
    return infer_half_size(g) if n is None else n


def _floor_edges(g: BitMultigraph, p: Part, members: Tuple[Index, ...]) -> List[Edge]:
    """E(V) for a floor set: each edge has exactly one endpoint in the part."""
    edges: List[Edge] = []
    for v in members:
        edges.extend(g.incident(p, v))
    return edges


def _size_one_floors(g: BitMultigraph, p: Part, floors, non_isolated: bool = False) -> int:
    table = g.floors(p)
    count = 0
    for k in floors:
        members = table.get(k, ())
        if len(members) != 1:
            continue
        if non_isolated and g.degree(p, members[0]) == 0:
            continue
        count += 1
    return count


# --- 1 to 4 ---


def _floor_presence(g: BitMultigraph, p: Part, k: int, n: int) -> Optional[str]:
    present = k in g.floors(p)
    if k <= n and not present:
        return f"{p.value} floor {k} missing"
    if k > n and present:
        return f"{p.value} floor {k} beyond n={n}"
    return None


@register_condition(ConditionId.C1_SQUARENESS)
def check_c1_squareness(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    expected = set(range(n + 1))
    for p in (Part.A, Part.B):
        # missing floors are at most n, extra ones above it
        for k in sorted(expected ^ set(g.floors(p))):
            witness = _floor_presence(g, p, k, n)
            if witness:
                return _result(ConditionId.C1_SQUARENESS, False, witness, ConditionLocus(part=p, floor=k), n=n)
    return _result(ConditionId.C1_SQUARENESS, True, n=n)


def answer_lengths(g: BitMultigraph) -> Dict[Tuple[Part, Index], int]:
    """
    Length of the answer each non-isolated vertex stands for. The endpoints of the
    Zero edge between two zero vertices hold the centre cell, whose answer
    reaches across the origin: length 2*degree - 1.
    """
    centre: Set[Tuple[Part, Index]] = set()
    for e in g.edges:
        if e.label is EdgeLabel.ZERO and e.a.is_zero and e.b.is_zero:
            centre.add((Part.A, e.a))
            centre.add((Part.B, e.b))

    lengths: Dict[Tuple[Part, Index], int] = {}
    for p in (Part.A, Part.B):
        for v in g.part(p):
            d = g.degree(p, v)
            if d == 0:
                continue
            lengths[(p, v)] = 2 * d - 1 if (p, v) in centre else d
    return lengths


def _short_answer(lengths: Dict[Tuple[Part, Index], int], p: Part, v: Index) -> Optional[str]:
    length = lengths.get((p, v))
    if length is not None and length < MIN_WORD_LENGTH:
        return f"{_vertex(p, v)} stands for an answer of length {length}"
    return None


@register_condition(ConditionId.C2_WORD_LENGTH)
def check_c2_word_length(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    lengths = answer_lengths(g)
    degrees = [g.degree(p, v) for (p, v) in lengths]
    literal = all(d >= MIN_WORD_LENGTH for d in degrees)

    witness, locus = None, None
    for p, v in lengths:
        witness = _short_answer(lengths, p, v)
        if witness:
            locus = ConditionLocus(part=p, vertices=[_ref(p, v)])
            break
    return _result(
        ConditionId.C2_WORD_LENGTH,
        witness is None,
        witness,
        locus,
        min_length=min(lengths.values()) if lengths else None,
        min_degree=min(degrees) if degrees else None,
        literal_degree_passed=literal,
    )


def _adjacency_graph(g: BitMultigraph) -> nx.Graph:
    graph = nx.Graph()
    for e in g.edges:
        graph.add_edge((Part.A, e.a), (Part.B, e.b))
    return graph


def _disconnected(graph: nx.Graph, stray: Tuple[Part, Index], anchor: Tuple[Part, Index]) -> Optional[str]:
    if stray in graph and anchor in graph and nx.has_path(graph, stray, anchor):
        return None
    return f"{_vertex(*stray)} is not connected to {_vertex(*anchor)}"


@register_condition(ConditionId.C3_CONNECTIVITY)
def check_c3_connectivity(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    graph = _adjacency_graph(g)
    if graph.number_of_nodes() == 0:
        return _result(
            ConditionId.C3_CONNECTIVITY, False, "graph has no edges", ConditionLocus(rule="no_edges"), components=0
        )
    components = nx.number_connected_components(graph)
    if components == 1:
        return _result(ConditionId.C3_CONNECTIVITY, True, components=1)

    anchor = (Part.A, g.edges[0].a)
    first = nx.node_connected_component(graph, anchor)
    stray = min(set(graph.nodes) - first, key=lambda pv: (pv[0].value, pv[1]))
    return _result(
        ConditionId.C3_CONNECTIVITY,
        False,
        _disconnected(graph, stray, anchor),
        ConditionLocus(vertices=[_ref(*stray), _ref(*anchor)]),
        components=components,
    )


def count_target(n: int) -> int:
    return 2 * n * n + 3 * n + 2


def triangular(m: int) -> int:
    return m * (m + 1) // 2


@register_condition(ConditionId.C4_EDGE_VERTEX_COUNT)
def check_c4_count(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    value = len(g.edges) + len(g.part_a)
    target = count_target(n)
    return _result(
        ConditionId.C4_EDGE_VERTEX_COUNT,
        value == target,
        f"e + k = {value}, expected {target}",
        ConditionLocus(rule="count"),
        value=value,
        target=target,
        triangular_plus_one=triangular(2 * n + 1) + 1,
    )


# --- 5(a) and 5(b): edge counts per floor set ---


def check_c5a_zero_floor(g: BitMultigraph, part: Part, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    members = g.floors(part).get(0, ())
    l = len(members)
    count = len(_floor_edges(g, part, members))
    target = n - l + 2
    singles = _size_one_floors(g, part.other, range(n + 1))
    singles_live = _size_one_floors(g, part.other, range(n + 1), non_isolated=True)

    witness = None
    if count != target:
        witness = f"|E({part.value} floor 0)| = {count}, expected n - l + 2 = {target}"
    elif count < singles:
        witness = f"|E({part.value} floor 0)| = {count} < {singles} size-1 floor sets in {part.other.value}"
    return _result(
        ConditionId.C5A_ZERO_FLOOR_EDGES,
        witness is None,
        witness,
        ConditionLocus(part=part, floor=0),
        part=part.value,
        l=l,
        count=count,
        size_one_opposite=singles,
        size_one_opposite_non_isolated=singles_live,
    )


def check_c5b_nonzero_floor(g: BitMultigraph, part: Part, k: int, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    members = g.floors(part).get(k, ())
    l = len(members)
    edges = _floor_edges(g, part, members)
    labels = Counter(e.label for e in edges)
    count = len(edges)
    target = 2 * n - l + 2

    # a zero floor set contributes at most one edge, so only nonzero floors need two
    singles = _size_one_floors(g, part.other, range(1, n + 1))
    singles_all = _size_one_floors(g, part.other, range(n + 1))
    singles_live = _size_one_floors(g, part.other, range(1, n + 1), non_isolated=True)

    name = f"{part.value} floor {k}"
    witness = None
    if count != target:
        witness = f"|E({name})| = {count}, expected 2n - l + 2 = {target}"
    elif labels[EdgeLabel.MINUS] > n or labels[EdgeLabel.PLUS] > n:
        witness = f"{name} has {labels[EdgeLabel.PLUS]} '+' and {labels[EdgeLabel.MINUS]} '-' edges, at most {n} each"
    elif labels[EdgeLabel.ZERO] > 1:
        witness = f"{name} has {labels[EdgeLabel.ZERO]} edges labeled 0"
    elif count < 2 * singles:
        witness = f"|E({name})| = {count} < 2 x {singles} size-1 nonzero floor sets in {part.other.value}"
    return _result(
        ConditionId.C5B_NONZERO_FLOOR_EDGES,
        witness is None,
        witness,
        ConditionLocus(part=part, floor=k),
        part=part.value,
        floor=k,
        l=l,
        count=count,
        literal_all_floors_passed=count >= 2 * singles_all,
        non_isolated_passed=count >= 2 * singles_live,
    )


def _combine(cid: ConditionId, results: List[ConditionResult]) -> ConditionResult:
    failed = [r for r in results if r.verdict is Verdict.FAIL]
    if failed:
        first = failed[0]
        return ConditionResult(
            condition=cid, verdict=Verdict.FAIL, witness=first.witness, locus=first.locus, details=first.details
        )
    return ConditionResult(condition=cid, verdict=Verdict.PASS, details={"checked": len(results)})


@register_condition(ConditionId.C5A_ZERO_FLOOR_EDGES)
def check_c5a(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    return _combine(ConditionId.C5A_ZERO_FLOOR_EDGES, [check_c5a_zero_floor(g, p, n) for p in (Part.A, Part.B)])


@register_condition(ConditionId.C5B_NONZERO_FLOOR_EDGES)
def check_c5b(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    results = [check_c5b_nonzero_floor(g, p, k, n) for p in (Part.A, Part.B) for k in range(1, n + 1)]
    return _combine(ConditionId.C5B_NONZERO_FLOOR_EDGES, results)


# --- 5(c) to 5(f) ---


def _double_edges(g: BitMultigraph, ka: int, kb: int, label: EdgeLabel) -> Optional[str]:
    count = sum(1 for e in g.edges if e.a.int_part == ka and e.b.int_part == kb and e.label is label)
    if count > 1:
        return f"{count} edges labeled {label.value} between A floor {ka} and B floor {kb}"
    return None


@register_condition(ConditionId.C5C_NO_DOUBLES)
def check_c5c_no_doubles(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    counts = Counter((e.a.int_part, e.b.int_part, e.label) for e in g.edges)
    for (ka, kb, label), count in sorted(counts.items(), key=lambda item: (item[0][0], item[0][1], item[0][2].value)):
        if count > 1:
            return _result(
                ConditionId.C5C_NO_DOUBLES,
                False,
                _double_edges(g, ka, kb, label),
                ConditionLocus(floor=ka, other_floor=kb, label=label),
            )
    return _result(ConditionId.C5C_NO_DOUBLES, True)


def _labels_between(g: BitMultigraph, p: Part, u: Index, w: Index) -> Set[EdgeLabel]:
    return {e.label for e in g.incident(p, u) if e.endpoint(p.other) == w}


def _blue_not_above_red(g: BitMultigraph, p: Part, u1: Index, u2: Index, w: Index) -> Optional[str]:
    low = _labels_between(g, p, u1, w)
    high = _labels_between(g, p, u2, w)
    if low == {EdgeLabel.MINUS} and high == {EdgeLabel.PLUS}:
        return None
    return (
        f"{_vertex(p, u1)} < {_vertex(p, u2)} meet {_vertex(p.other, w)} "
        f"with labels {sorted(l.value for l in low)} / {sorted(l.value for l in high)}"
    )


@register_condition(ConditionId.C5D_BLUE_ABOVE_RED)
def check_c5d_blue_above_red(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    for p in (Part.A, Part.B):
        # w sits in the other part; pairs u1 < u2 come from one nonzero floor set of p
        for w in g.part(p.other):
            if w.is_zero:
                continue
            by_floor: Dict[int, List[Index]] = {}
            for e in g.incident(p.other, w):
                u = e.endpoint(p)
                if not u.is_zero and u not in by_floor.get(u.int_part, []):
                    by_floor.setdefault(u.int_part, []).append(u)
            for members in by_floor.values():
                members.sort()
                for i, u1 in enumerate(members):
                    for u2 in members[i + 1:]:
                        witness = _blue_not_above_red(g, p, u1, u2, w)
                        if witness:
                            return _result(
                                ConditionId.C5D_BLUE_ABOVE_RED,
                                False,
                                witness,
                                ConditionLocus(part=p, vertices=[_ref(p, u1), _ref(p, u2), _ref(p.other, w)]),
                            )
    return _result(ConditionId.C5D_BLUE_ABOVE_RED, True)


def _purple_missing(g: BitMultigraph, p: Part, v: Index) -> Optional[str]:
    labels = {e.label for e in g.incident(p, v)}
    if EdgeLabel.PLUS in labels and EdgeLabel.MINUS in labels and EdgeLabel.ZERO not in labels:
        return f"{_vertex(p, v)} has '+' and '-' edges but no '0' edge"
    return None


@register_condition(ConditionId.C5E_PURPLE_IN_BETWEEN)
def check_c5e_purple_between(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    for p in (Part.A, Part.B):
        for v in g.part(p):
            witness = _purple_missing(g, p, v)
            if witness:
                return _result(
                    ConditionId.C5E_PURPLE_IN_BETWEEN, False, witness, ConditionLocus(part=p, vertices=[_ref(p, v)])
                )
    return _result(ConditionId.C5E_PURPLE_IN_BETWEEN, True)


def _same_label_off_extreme(g: BitMultigraph, p: Part, k: int, label: EdgeLabel, n: int) -> Optional[str]:
    members = g.floors(p).get(k, ())
    if n == 0 or not members:
        return None
    holder = members[-1] if label is EdgeLabel.PLUS else members[0]
    labelled = [e for e in _floor_edges(g, p, members) if e.label is label]
    if len(labelled) != n:
        return None
    stray = [e for e in labelled if e.endpoint(p) != holder]
    if not stray:
        return None
    extreme = "maximal" if label is EdgeLabel.PLUS else "minimal"
    return (
        f"{p.value} floor {k} has {n} '{label.value}' edges but {stray[0]} "
        f"is not on the {extreme} member {holder}"
    )


@register_condition(ConditionId.C5F_MAXIMAL_SAME_LABEL)
def check_c5f_maximal_same_label(g: BitMultigraph, n: Optional[int] = None) -> ConditionResult:
    n = _half_size(g, n)
    for p in (Part.A, Part.B):
        for k in g.floors(p):
            for label in (EdgeLabel.PLUS, EdgeLabel.MINUS):
                witness = _same_label_off_extreme(g, p, k, label, n)
                if witness:
                    return _result(
                        ConditionId.C5F_MAXIMAL_SAME_LABEL,
                        False,
                        witness,
                        ConditionLocus(part=p, floor=k, label=label),
                    )
    return _result(ConditionId.C5F_MAXIMAL_SAME_LABEL, True)


# --- 5(g) to 5(i): sweeps ---


class SweepOutcome(BaseModel):
    interval_passed: bool = True
    no_crossing_passed: bool = True
    gaps: List[int] = Field(default_factory=list)
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.interval_passed and self.no_crossing_passed


def sweep(g: BitMultigraph, p: Part, k: int, label: EdgeLabel, n: int, highest_first: bool) -> SweepOutcome:
    """
    With m_1 > ... > m_l the opposite floors not reached by `label` edges from
    floor set k, the i-th member (highest or lowest first) must reach exactly the
    floors strictly between m_{i-1} and m_i, where m_0 = inf and m_{l+1} = -1.
    Members past the (l+1)-th reach nothing. Vacuous without `label` edges.
    """
    members = g.floors(p).get(k, ())
    reach: Dict[Index, Set[int]] = {
        v: {e.endpoint(p.other).int_part for e in g.incident(p, v) if e.label is label} for v in members
    }
    reached = set().union(*reach.values()) if reach else set()
    if not reached:
        return SweepOutcome()

    gaps = sorted((x for x in range(n + 1) if x not in reached), reverse=True)
    bounds = [math.inf] + gaps + [-1]
    order = list(reversed(members)) if highest_first else list(members)
    outcome = SweepOutcome(gaps=gaps)

    for i, v in enumerate(order):
        if i + 1 < len(bounds):
            hi, lo = bounds[i], bounds[i + 1]
            expected = {x for x in range(n + 1) if lo < x < hi}
        else:
            expected = set()
        if reach[v] != expected:
            outcome.interval_passed = False
            outcome.witness = f"{_vertex(p, v)} reaches floors {sorted(reach[v])}, expected {sorted(expected)}"
            break

    # ascending members: blue and purple floors rise with the member, red floors fall
    rising = label is not EdgeLabel.MINUS
    live = [reach[v] for v in members if reach[v]]
    for lower, upper in zip(live, live[1:]):
        ok = max(lower) < min(upper) if rising else min(lower) > max(upper)
        if not ok:
            outcome.no_crossing_passed = False
            if outcome.witness is None:
                outcome.witness = f"'{label.value}' edges cross in {p.value} floor {k}: {sorted(lower)} vs {sorted(upper)}"
            break
    return outcome


_SWEEP_NAMES = {EdgeLabel.PLUS: "blue", EdgeLabel.MINUS: "red", EdgeLabel.ZERO: "purple"}

# blue and purple sweeps start from the highest member, red from the lowest
_HIGHEST_FIRST = {EdgeLabel.PLUS: True, EdgeLabel.ZERO: True, EdgeLabel.MINUS: False}


def _sweep_condition(
    cid: ConditionId,
    g: BitMultigraph,
    n: int,
    label: EdgeLabel,
    floors_of=None,
    gaps_out: Optional[Dict[str, List[int]]] = None,
) -> ConditionResult:
    interval_ok, crossing_ok = True, True
    witness, locus = None, None
    for p in (Part.A, Part.B):
        floors = floors_of(p) if floors_of else list(g.floors(p))
        for k in floors:
            outcome = sweep(g, p, k, label, n, _HIGHEST_FIRST[label])
            if gaps_out is not None and outcome.gaps:
                gaps_out[f"{_SWEEP_NAMES[label]} {p.value}{k}"] = outcome.gaps
            interval_ok &= outcome.interval_passed
            crossing_ok &= outcome.no_crossing_passed
            if witness is None and not outcome.passed:
                witness = outcome.witness
                locus = ConditionLocus(rule="sweep", part=p, floor=k, label=label)
    return _result(
        cid,
        interval_ok and crossing_ok,
        witness,
        locus,
        interval_passed=interval_ok,
        no_crossing_passed=crossing_ok,
    )


@register_condition(ConditionId.C5G_BLUE_SWEEP)
def check_c5g_blue_sweep(
    g: BitMultigraph, n: Optional[int] = None, gaps_out: Optional[Dict[str, List[int]]] = None
) -> ConditionResult:
    n = _half_size(g, n)
    return _sweep_condition(ConditionId.C5G_BLUE_SWEEP, g, n, EdgeLabel.PLUS, gaps_out=gaps_out)


@register_condition(ConditionId.C5H_RED_SWEEP)
def check_c5h_red_sweep(
    g: BitMultigraph, n: Optional[int] = None, gaps_out: Optional[Dict[str, List[int]]] = None
) -> ConditionResult:
    n = _half_size(g, n)
    return _sweep_condition(ConditionId.C5H_RED_SWEEP, g, n, EdgeLabel.MINUS, gaps_out=gaps_out)


def _zero_pair_off_minimal(g: BitMultigraph, p: Part, v: Index) -> Optional[str]:
    for e in g.incident(p, v):
        if e.a.is_zero and e.b.is_zero and v != g.floors(p)[0][0]:
            return f"zero-zero edge {e} uses {_vertex(p, v)}, not the minimal member of {p.value} floor 0"
    return None


def _zero_pair_minimal(g: BitMultigraph) -> Tuple[Optional[str], Optional[ConditionLocus]]:
    for e in g.edges:
        if not (e.a.is_zero and e.b.is_zero):
            continue
        for p in (Part.A, Part.B):
            v = e.endpoint(p)
            witness = _zero_pair_off_minimal(g, p, v)
            if witness:
                return witness, ConditionLocus(rule="zero_pair", part=p, vertices=[_ref(p, v)])
    return None, None


def _split_out_of_order(g: BitMultigraph, p: Part, z: Index, x: Index, y: Index) -> Optional[str]:
    """z in floor 0 of p meets x by a '0' edge; y shares the floor of x."""
    if not any(e.label is EdgeLabel.ZERO and e.endpoint(p.other) == x for e in g.incident(p, z)):
        return None
    labels = {f.label for f in g.incident(p.other, y)}
    if y > x and EdgeLabel.MINUS in labels:
        return f"{_vertex(p.other, y)} lies above {_vertex(p.other, x)} but has a '-' edge"
    if y < x and EdgeLabel.PLUS in labels:
        return f"{_vertex(p.other, y)} lies below {_vertex(p.other, x)} but has a '+' edge"
    return None


def _zero_neighbour_split(g: BitMultigraph) -> Tuple[Optional[str], Optional[ConditionLocus]]:
    for p in (Part.A, Part.B):
        for z in g.floors(p).get(0, ()):
            for e in g.incident(p, z):
                if e.label is not EdgeLabel.ZERO:
                    continue
                x = e.endpoint(p.other)
                for y in g.floors(p.other)[x.int_part]:
                    witness = _split_out_of_order(g, p, z, x, y)
                    if witness:
                        refs = [_ref(p, z), _ref(p.other, x), _ref(p.other, y)]
                        return witness, ConditionLocus(rule="zero_split", part=p, vertices=refs)
    return None, None


@register_condition(ConditionId.C5I_PURPLE_SWEEP)
def check_c5i_purple_sweep(
    g: BitMultigraph, n: Optional[int] = None, gaps_out: Optional[Dict[str, List[int]]] = None
) -> ConditionResult:
    n = _half_size(g, n)
    swept = _sweep_condition(
        ConditionId.C5I_PURPLE_SWEEP,
        g,
        n,
        EdgeLabel.ZERO,
        floors_of=lambda p: [0] if 0 in g.floors(p) else [],
        gaps_out=gaps_out,
    )
    pair_witness, pair_locus = _zero_pair_minimal(g)
    split_witness, split_locus = _zero_neighbour_split(g)
    passed = swept.verdict is Verdict.PASS and pair_witness is None and split_witness is None
    return _result(
        ConditionId.C5I_PURPLE_SWEEP,
        passed,
        swept.witness or pair_witness or split_witness,
        swept.locus or pair_locus or split_locus,
        sweep_passed=swept.verdict is Verdict.PASS,
        zero_pair_minimal_passed=pair_witness is None,
        zero_neighbour_split_passed=split_witness is None,
        **swept.details,
    )


_SWEEPS = {ConditionId.C5G_BLUE_SWEEP, ConditionId.C5H_RED_SWEEP, ConditionId.C5I_PURPLE_SWEEP}


def check_all(g: BitMultigraph, n: Optional[int] = None) -> ConditionReport:
    n = _half_size(g, n)
    squareness = CONDITION_REGISTRY[ConditionId.C1_SQUARENESS](g, n)
    gaps: Dict[str, List[int]] = {}

    verdicts: Dict[ConditionId, ConditionResult] = {}
    for cid in ConditionId:
        if cid is ConditionId.C1_SQUARENESS:
            verdicts[cid] = squareness
        elif cid in NEEDS_SQUARENESS and squareness.verdict is Verdict.FAIL:
            verdicts[cid] = _not_applicable(cid, "squareness failed")
        elif cid in _SWEEPS:
            verdicts[cid] = CONDITION_REGISTRY[cid](g, n, gaps_out=gaps)
        else:
            verdicts[cid] = CONDITION_REGISTRY[cid](g, n)

    report = ConditionReport(n=n, verdicts=verdicts, sweep_gaps=gaps)
    logger.debug("Conditions for n=%d: %s", n, "pass" if report.passed else report.failures())
    return report


# --- re-checking a single failure site ---


def _vertices(locus: ConditionLocus) -> List[Tuple[Part, Index]]:
    return [ref.resolve() for ref in locus.vertices]


def _recheck_connectivity(g: BitMultigraph, locus: ConditionLocus, n: int) -> Optional[str]:
    if locus.rule == "no_edges":
        return None if g.edges else "graph has no edges"
    stray, anchor = _vertices(locus)
    return _disconnected(_adjacency_graph(g), stray, anchor)


def _recheck_blue_above_red(g: BitMultigraph, locus: ConditionLocus, n: int) -> Optional[str]:
    (p, u1), (_, u2), (_, w) = _vertices(locus)
    return _blue_not_above_red(g, p, u1, u2, w)


def _recheck_purple(g: BitMultigraph, locus: ConditionLocus, n: int) -> Optional[str]:
    if locus.rule == "zero_pair":
        [(p, v)] = _vertices(locus)
        return _zero_pair_off_minimal(g, p, v)
    if locus.rule == "zero_split":
        (p, z), (_, x), (_, y) = _vertices(locus)
        return _split_out_of_order(g, p, z, x, y)
    return _recheck_sweep(g, locus, n)


def _recheck_sweep(g: BitMultigraph, locus: ConditionLocus, n: int) -> Optional[str]:
    outcome = sweep(g, locus.part, locus.floor, locus.label, n, _HIGHEST_FIRST[locus.label])
    return None if outcome.passed else outcome.witness


_RECHECKS: Dict[ConditionId, Callable[[BitMultigraph, ConditionLocus, int], Optional[str]]] = {
    ConditionId.C1_SQUARENESS: lambda g, loc, n: _floor_presence(g, loc.part, loc.floor, n),
    ConditionId.C2_WORD_LENGTH: lambda g, loc, n: _short_answer(answer_lengths(g), *_vertices(loc)[0]),
    ConditionId.C3_CONNECTIVITY: _recheck_connectivity,
    ConditionId.C4_EDGE_VERTEX_COUNT: lambda g, loc, n: check_c4_count(g, n).witness,
    ConditionId.C5A_ZERO_FLOOR_EDGES: lambda g, loc, n: check_c5a_zero_floor(g, loc.part, n).witness,
    ConditionId.C5B_NONZERO_FLOOR_EDGES: lambda g, loc, n: check_c5b_nonzero_floor(g, loc.part, loc.floor, n).witness,
    ConditionId.C5C_NO_DOUBLES: lambda g, loc, n: _double_edges(g, loc.floor, loc.other_floor, loc.label),
    ConditionId.C5D_BLUE_ABOVE_RED: _recheck_blue_above_red,
    ConditionId.C5E_PURPLE_IN_BETWEEN: lambda g, loc, n: _purple_missing(g, *_vertices(loc)[0]),
    ConditionId.C5F_MAXIMAL_SAME_LABEL: lambda g, loc, n: _same_label_off_extreme(g, loc.part, loc.floor, loc.label, n),
    ConditionId.C5G_BLUE_SWEEP: _recheck_sweep,
    ConditionId.C5H_RED_SWEEP: _recheck_sweep,
    ConditionId.C5I_PURPLE_SWEEP: _recheck_purple,
}


def recheck(g: BitMultigraph, result: ConditionResult, n: Optional[int] = None) -> ConditionResult:
    """
    Run only the check at the failure site `result.locus`. A failure found by
    the full check fails here too, with the same witness.
    """
    if result.locus is None:
        raise ValueError(f"{result.condition.value} result has no failure site to re-check")
    n = _half_size(g, n)
    witness = _RECHECKS[result.condition](g, result.locus, n)
    return _result(result.condition, witness is None, witness, result.locus)


def render_report(report: ConditionReport) -> str:
    lines = [f"n = {report.n}"]
    for cid, r in report.verdicts.items():
        line = f"{cid.value:<24} {r.verdict.value:<5}"
        if r.witness:
            line += f" {r.witness}"
        lines.append(line)
    lines.append("overall: " + ("pass" if report.passed else "fail"))
    return "\n".join(lines)
