from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from quatbrandt.errors import GraphError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int
    label: str = ""


@dataclass(frozen=True)
class Edge:
    index: int
    source: int
    target: int
    weight: int
    opposite: int | None = None
    half_edge: bool = False


class VertexRecord(BaseModel):
    id: int
    weight: int
    label: str = ""


class EdgeRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: int = Field(alias="from")
    target: int = Field(alias="to")
    weight: int
    opposite: int | None = None
    half: bool = False


class GraphRecord(BaseModel):
    format_version: int = FORMAT_VERSION
    kind: str
    name: str
    vertices: list[VertexRecord]
    edges: list[EdgeRecord]


@dataclass(frozen=True)
class WeightedGraph:
    """Vertices with weights and directed edges with weights, opposites and half-edge flags."""

    kind: str
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> list[list[int]]:
        n = self.order
        out = [[0] * n for _ in range(n)]
        for e in self.edges:
            out[e.source][e.target] += 1
        return out

    def weighted_adjacency(self) -> list[list[Fraction]]:
        """Ad_w[i][j] = sum over edges i -> j of w(v_i) / w(e)."""
        n = self.order
        out = [[Fraction(0)] * n for _ in range(n)]
        for e in self.edges:
            out[e.source][e.target] += Fraction(self.vertices[e.source].weight, e.weight)
        return out

    def has_opposites(self) -> bool:
        return any(e.opposite is not None for e in self.edges)

    def half_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.half_edge]

    def check_weights(self) -> None:
        for e in self.edges:
            if e.weight < 1 or self.vertices[e.source].weight % e.weight:
                raise GraphError(f"edge {e.index}: weight {e.weight} does not divide w(v{e.source})")

    def check_opposites(self) -> None:
        if not self.has_opposites():
            return
        for e in self.edges:
            if e.opposite is None:
                raise GraphError(f"edge {e.index} has no opposite")
            o = self.edges[e.opposite]
            if o.opposite != e.index:
                raise GraphError(f"opposite pairing is not an involution at edge {e.index}")
            if o.weight != e.weight:
                raise GraphError(f"edge {e.index} and its opposite carry different weights")
            if (o.source, o.target) != (e.target, e.source):
                raise GraphError(f"opposite of edge {e.index} does not reverse it")
            if e.half_edge != (e.opposite == e.index):
                raise GraphError(f"half-edge flag of edge {e.index} disagrees with its opposite")

    def to_networkx(self, *, directed: bool) -> nx.MultiGraph:
        G: nx.MultiGraph = nx.MultiDiGraph() if directed else nx.MultiGraph()
        for v in self.vertices:
            G.add_node(v.id, weight=v.weight)
        for e in self.edges:
            G.add_edge(e.source, e.target, key=e.index, weight=e.weight)
        return G

    def to_record(self) -> GraphRecord:
        return GraphRecord(
            kind=self.kind,
            name=self.name,
            vertices=[VertexRecord(id=v.id, weight=v.weight, label=v.label) for v in self.vertices],
            edges=[
                EdgeRecord(source=e.source, target=e.target, weight=e.weight, opposite=e.opposite, half=e.half_edge)
                for e in self.edges
            ],
        )

    @classmethod
    def from_record(cls, record: GraphRecord) -> WeightedGraph:
        """Rebuild a graph from its record; edge indices are positions in ``edges``."""
        if record.format_version != FORMAT_VERSION:
            raise GraphError(f"unsupported format_version {record.format_version}")
        if [v.id for v in record.vertices] != list(range(len(record.vertices))):
            raise GraphError("vertex ids must be 0..n-1 in order")
        n, m = len(record.vertices), len(record.edges)
        for idx, e in enumerate(record.edges):
            if not (0 <= e.source < n and 0 <= e.target < n):
                raise GraphError(f"edge {idx} has an endpoint outside the vertex set")
            if e.opposite is not None and not 0 <= e.opposite < m:
                raise GraphError(f"edge {idx} names a missing opposite {e.opposite}")
        G = cls(
            kind=record.kind,
            name=record.name,
            vertices=tuple(Vertex(v.id, v.weight, v.label) for v in record.vertices),
            edges=tuple(
                Edge(idx, e.source, e.target, e.weight, opposite=e.opposite, half_edge=e.half)
                for idx, e in enumerate(record.edges)
            ),
        )
        G.check_weights()
        G.check_opposites()
        return G

    @classmethod
    def from_json(cls, payload: str) -> WeightedGraph:
        return cls.from_record(GraphRecord.model_validate_json(payload))

    def to_json(self) -> str:
        return self.to_record().model_dump_json(by_alias=True, indent=2)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for v in self.vertices:
            label = v.label or str(v.id)
            lines.append(f'  v{v.id} [label="{label} (w={v.weight})", weight={v.weight}];')
        for e in self.edges:
            attrs = [f"weight={e.weight}", f'label="{e.weight}"', f"id={e.index}"]
            if e.opposite is not None:
                attrs.append(f"opposite={e.opposite}")
            if e.half_edge:
                attrs.append("half=true")
            lines.append(f"  v{e.source} -> v{e.target} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_connected(G: WeightedGraph) -> bool:
    """Strong connectivity for plain directed graphs, undirected reachability when opposites pair the edges."""
    if G.order == 0:
        return False
    if G.has_opposites():
        return nx.is_connected(G.to_networkx(directed=False))
    return nx.is_strongly_connected(G.to_networkx(directed=True))


def is_bipartite(G: WeightedGraph) -> bool:
    if any(e.source == e.target for e in G.edges):
        return False
    return nx.is_bipartite(G.to_networkx(directed=False))
