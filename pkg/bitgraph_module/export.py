# export.py

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from bitgraph_module.bitgraph import BitGraphError, BitMultigraph, Edge, Part, infer_half_size
from bitgraph_module.index import EdgeLabel, Index
from grid_module.grid import Coord


class DocumentMismatchError(BitGraphError):
    pass


class EdgeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: str
    b: str
    label: Literal["-", "0", "+"]
    cell: Optional[Tuple[int, int]] = None


class GraphDocument(BaseModel):
    """JSON form of a bit multigraph: {"n", "A", "B", "edges"}."""

    model_config = ConfigDict(extra="forbid")

    n: int
    A: List[str]
    B: List[str]
    edges: List[EdgeDocument] = Field(default_factory=list)


def graph_to_document(g: BitMultigraph) -> GraphDocument:
    return GraphDocument(
        n=infer_half_size(g),
        A=[str(v) for v in g.part_a],
        B=[str(v) for v in g.part_b],
        edges=[
            EdgeDocument(
                a=str(e.a),
                b=str(e.b),
                label=e.label.value,
                cell=(e.cell.i, e.cell.j) if e.cell is not None else None,
            )
            for e in g.edges
        ],
    )


def graph_from_document(doc: GraphDocument) -> BitMultigraph:
    edges = tuple(
        Edge(
            a=Index.parse(e.a),
            b=Index.parse(e.b),
            label=EdgeLabel(e.label),
            cell=Coord(*e.cell) if e.cell is not None else None,
        )
        for e in doc.edges
    )
    g = BitMultigraph(
        part_a=tuple(Index.parse(v) for v in doc.A),
        part_b=tuple(Index.parse(v) for v in doc.B),
        edges=edges,
    )
    floors = infer_half_size(g)
    if floors != doc.n:
        raise DocumentMismatchError(f"Document says n={doc.n} but part A has floor sets for n={floors}")
    return g


def graph_to_json(g: BitMultigraph, indent: Optional[int] = None) -> str:
    return graph_to_document(g).model_dump_json(indent=indent)


def graph_from_json(text: str) -> BitMultigraph:
    return graph_from_document(GraphDocument.model_validate_json(text))


def _vertex_label(v: Index) -> str:
    # nonzero vertices stand for a ± pair of answers
    return str(v) if v.is_zero else f"±{v}"


def graph_to_dot(g: BitMultigraph, name: str = "bitgraph") -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=circle fontname=Arial];"]
    append = lines.append

    def node(p: Part, v: Index) -> str:
        return f'"{p.value}:{v}"'

    for p, title in ((Part.A, "Across"), (Part.B, "Down")):
        append(f'  subgraph cluster_{p.value} {{ label="{title}";')
        for v in g.part(p):
            style = " style=dashed" if g.degree(p, v) == 0 else ""
            append(f'    {node(p, v)} [label="{_vertex_label(v)}"{style}];')
        append("  }")

    for e in g.edges:
        append(f"  {node(Part.A, e.a)} -- {node(Part.B, e.b)} [color={e.label.color}];")
    append("}")
    return "\n".join(lines)
