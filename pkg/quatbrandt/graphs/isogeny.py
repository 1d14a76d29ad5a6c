from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any, Hashable

from sympy import isprime

from quatbrandt.brandt.matrices import BrandtMatrix
from quatbrandt.enumeration.orbits import orbit_decomposition
from quatbrandt.errors import GraphError, InvalidInputError
from quatbrandt.graphs.weighted import Edge, Vertex, WeightedGraph
from quatbrandt.logging import get_logger

if TYPE_CHECKING:
    from quatbrandt.runtime.workbench import Workbench

logger = get_logger("quatbrandt.graphs")


def _check_level(g: int, ell: int, p: int) -> None:
    if g < 1:
        raise InvalidInputError(f"g must be >= 1, got {g}")
    if not isprime(ell):
        raise InvalidInputError(f"l must be prime, got {ell}")
    if not isprime(p):
        raise InvalidInputError(f"p must be prime, got {p}")
    if ell == p:
        raise InvalidInputError(f"l must differ from p (both {p})")


def _bench(g: int, p: int, workbench: Workbench | None) -> Workbench:
    if workbench is not None:
        if (workbench.g, workbench.p) != (g, p):
            raise InvalidInputError(f"workbench is for (g={workbench.g}, p={workbench.p}), not (g={g}, p={p})")
        return workbench
    from quatbrandt.runtime.workbench import get_workbench

    return get_workbench(g, p)


def big_graph_from_brandt(B: BrandtMatrix) -> WeightedGraph:
    """B_ij parallel edges i -> j, every vertex and edge of weight 1."""
    vertices = tuple(Vertex(i, 1) for i in range(B.h))
    edges: list[Edge] = []
    for i, row in enumerate(B.entries):
        for j, count in enumerate(row):
            for _ in range(count):
                edges.append(Edge(len(edges), i, j, 1))
    return WeightedGraph(kind="big", name=f"big_g{B.g}_l{B.n}_p{B.p}", vertices=vertices, edges=tuple(edges))


def little_graph_from_backend(backend: Any, ell: int, B: BrandtMatrix | None = None) -> WeightedGraph:
    """Orbits of level-l edges under Aut(source) x Aut(target).

    Edge weight is the stabilizer of the orbit; the opposite of an orbit is the
    orbit holding the dual of its representative.
    """
    classes = backend.classes
    h = classes.h
    vertices = tuple(Vertex(i, e) for i, e in enumerate(classes.aut_counts))
    raw: list[tuple[int, int, Hashable, int]] = []  # (source, target, representative, stabilizer)
    owner: dict[tuple[int, int, Hashable], int] = {}
    for i in range(h):
        for j in range(h):
            sols = backend.solutions(i, j, ell)
            orbits = orbit_decomposition(sols, backend.automorphisms(i), backend.automorphisms(j), backend.multiply)
            for orb in orbits:
                idx = len(raw)
                raw.append((i, j, orb.representative, orb.stabilizer))
                for m in orb.members:
                    owner[(i, j, m)] = idx
            logger.debug("little graph l=%d: %d -> %d has %d orbits", ell, i, j, len(orbits))

    edges: list[Edge] = []
    for idx, (i, j, rep, stab) in enumerate(raw):
        dual = backend.dual(i, j, ell, rep)
        opp = owner.get((j, i, dual))
        if opp is None:
            raise GraphError(f"edge {idx} ({i} -> {j}): dual is not an edge {j} -> {i}")
        edges.append(Edge(idx, i, j, stab, opposite=opp, half_edge=(opp == idx)))

    G = WeightedGraph(
        kind="little",
        name=f"little_g{classes.g}_l{ell}_p{classes.p}",
        vertices=vertices,
        edges=tuple(edges),
    )
    G.check_weights()
    G.check_opposites()
    if B is not None:
        expected = [[Fraction(x) for x in row] for row in B.entries]
        if G.weighted_adjacency() != expected:
            raise GraphError(f"weighted adjacency of {G.name} differs from B_{classes.g}({ell})")
    return G


def enhanced_from_little(little: WeightedGraph) -> WeightedGraph:
    """Bipartite double cover: e+ runs i -> h+j, e- runs h+i -> j, opp(e+) = (opp e)-."""
    if little.kind != "little":
        raise GraphError(f"enhanced graph needs a little graph, got {little.kind}")
    h = little.order
    vertices = tuple(Vertex(v.id, v.weight, f"{v.id}+") for v in little.vertices) + tuple(
        Vertex(h + v.id, v.weight, f"{v.id}-") for v in little.vertices
    )
    edges: list[Edge] = []
    for e in little.edges:
        if e.opposite is None:
            raise GraphError(f"edge {e.index} has no opposite")
        edges.append(Edge(2 * e.index, e.source, h + e.target, e.weight, opposite=2 * e.opposite + 1))
        edges.append(Edge(2 * e.index + 1, h + e.source, e.target, e.weight, opposite=2 * e.opposite))
    G = WeightedGraph(kind="enhanced", name=little.name.replace("little", "enhanced", 1), vertices=vertices, edges=tuple(edges))
    G.check_weights()
    G.check_opposites()
    return G


def big_graph(g: int, ell: int, p: int, *, workbench: Workbench | None = None) -> WeightedGraph:
    _check_level(g, ell, p)
    return big_graph_from_brandt(_bench(g, p, workbench).brandt(ell))


def little_graph(g: int, ell: int, p: int, *, workbench: Workbench | None = None) -> WeightedGraph:
    _check_level(g, ell, p)
    wb = _bench(g, p, workbench)
    return little_graph_from_backend(wb.backend, ell, wb.brandt(ell))


def enhanced_graph(g: int, ell: int, p: int, *, workbench: Workbench | None = None) -> WeightedGraph:
    return enhanced_from_little(little_graph(g, ell, p, workbench=workbench))


GRAPH_BUILDERS = {"big": big_graph, "little": little_graph, "enhanced": enhanced_graph}
