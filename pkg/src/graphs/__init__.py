"""
Graph invariants for edge and cover ideals
Cliques, minimal vertex covers, perfectness and bipartiteness of simple
graphs on vertices 1..s, and the resurgence bounds they give.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from utils import SizeGuardError, edge_bound_cap, max_dim

logger = logging.getLogger(__name__)


def build_graph(num_vertices: int, edges: Iterable[Sequence[int]]) -> nx.Graph:
    """Simple graph on 1..num_vertices; isolated vertices are kept"""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, num_vertices + 1))
    graph.add_edges_from(tuple(edge) for edge in edges)
    return graph


def bowtie_graph() -> nx.Graph:
    """Two triangles 123 and 567 joined by the path 1-4-5"""
    return build_graph(7, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (5, 6), (6, 7), (5, 7)])


@dataclass(frozen=True)
class GraphInvariants:
    omega: int
    alpha0: int
    perfect: bool
    bipartite: bool
    clique: Tuple[int, ...]
    cover: Tuple[int, ...]


@dataclass(frozen=True)
class CoverBound:
    value: Fraction
    exact: bool
    clique: Tuple[int, ...]


@dataclass(frozen=True)
class EdgeBound:
    value: Fraction
    subgraph: Tuple[int, ...]


def maximum_clique(graph: nx.Graph) -> Tuple[int, ...]:
    """Largest clique, lexicographically least among the largest"""
    if graph.number_of_nodes() == 0:
        return ()
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph)]
    return min(cliques, key=lambda c: (-len(c), c))


def clique_number(graph: nx.Graph) -> int:
    return len(maximum_clique(graph))


def minimal_vertex_covers(graph: nx.Graph) -> List[Tuple[int, ...]]:
    """Complements of the maximal independent sets, sorted"""
    nodes = set(graph.nodes)
    independent = nx.find_cliques(nx.complement(graph))
    return sorted(tuple(sorted(nodes - set(s))) for s in independent)


def covering_number(graph: nx.Graph) -> int:
    if graph.number_of_edges() == 0:
        return 0
    return min(len(cover) for cover in minimal_vertex_covers(graph))


def is_bipartite(graph: nx.Graph) -> bool:
    return nx.is_bipartite(graph)


def _is_induced_cycle(graph: nx.Graph, nodes: Sequence[int]) -> bool:
    sub = graph.subgraph(nodes)
    return all(d == 2 for _, d in sub.degree()) and nx.is_connected(sub)


def odd_holes(graph: nx.Graph) -> List[Tuple[int, ...]]:
    """Vertex sets of induced odd cycles of length >= 5"""
    nodes = sorted(graph.nodes)
    found = []
    for length in range(5, len(nodes) + 1, 2):
        for subset in combinations(nodes, length):
            if _is_induced_cycle(graph, subset):
                found.append(subset)
    return found


def induced_odd_cycles(graph: nx.Graph) -> List[Tuple[int, ...]]:
    """Vertex sets of all induced odd cycles, triangles included"""
    nodes = sorted(graph.nodes)
    found = []
    for length in range(3, len(nodes) + 1, 2):
        found += [s for s in combinations(nodes, length) if _is_induced_cycle(graph, s)]
    return found


def is_perfect(graph: nx.Graph, limit: Optional[int] = None) -> bool:
    """
    No odd hole and no odd antihole

    Raises:
        SizeGuardError: above POLYCOVER_MAX_DIM vertices
    """
    limit = limit or max_dim()
    if graph.number_of_nodes() > limit:
        raise SizeGuardError(f"is_perfect is limited to {limit} vertices")
    if odd_holes(graph):
        return False
    return not odd_holes(nx.complement(graph))


def graph_invariants(graph: nx.Graph) -> GraphInvariants:
    covers = minimal_vertex_covers(graph) if graph.number_of_edges() else [()]
    smallest = min(covers, key=lambda c: (len(c), c))
    clique = maximum_clique(graph)
    return GraphInvariants(
        omega=len(clique),
        alpha0=len(smallest),
        perfect=is_perfect(graph),
        bipartite=is_bipartite(graph),
        clique=clique,
        cover=smallest,
    )


def cover_resurgence_bound(graph: nx.Graph) -> CoverBound:
    """2(omega - 1)/omega, the exact rho_ic of the cover ideal when G is perfect"""
    clique = maximum_clique(graph)
    omega = len(clique)
    return CoverBound(Fraction(2 * (omega - 1), omega), is_perfect(graph), clique)


def edge_resurgence_lower_bound(graph: nx.Graph, raise_cap: bool = False) -> EdgeBound:
    """
    max over induced subgraphs H of 2 alpha0(H) / |V(H)|

    Raises:
        SizeGuardError: above the induced-subgraph cap
    """
    cap = edge_bound_cap(raise_cap)
    nodes = sorted(graph.nodes)
    if len(nodes) > cap:
        raise SizeGuardError(f"edge_resurgence_lower_bound is limited to {cap} vertices")
    best = Fraction(0)
    witness: Tuple[int, ...] = ()
    for size in range(1, len(nodes) + 1):
        for subset in combinations(nodes, size):
            value = Fraction(2 * covering_number(graph.subgraph(subset)), size)
            if value > best:
                best, witness = value, subset
    logger.debug("Edge bound %s from induced subgraph %s", best, witness)
    return EdgeBound(best, witness)
