"""
Unit tests for graph invariants and resurgence bounds
"""

import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

from graphs import (
    bowtie_graph,
    build_graph,
    cover_resurgence_bound,
    covering_number,
    edge_resurgence_lower_bound,
    graph_invariants,
    induced_odd_cycles,
    is_bipartite,
    is_perfect,
    maximum_clique,
    minimal_vertex_covers,
    odd_holes,
)
from ideals import alexander_dual, contains_ideal, cover_ideal, edge_ideal
from lp import ic_resurgence_of_squarefree, waldschmidt
from polyhedra import symbolic_polyhedron
from utils import SizeGuardError


def cycle(n):
    return build_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def family():
    """Small graphs with and without odd cycles, perfect and imperfect"""
    return {
        "triangle": cycle(3),
        "square": cycle(4),
        "pentagon": cycle(5),
        "hexagon": cycle(6),
        "path4": path(4),
        "k4": build_graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]),
        "paw": build_graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)]),
        "diamond": build_graph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]),
        "bull": build_graph(5, [(1, 2), (2, 3), (1, 3), (1, 4), (2, 5)]),
        "house": build_graph(5, [(1, 2), (2, 3), (3, 4), (1, 4), (3, 5), (4, 5)]),
        "bowtie": bowtie_graph(),
    }


def monomials_of(covers, n):
    return {tuple(int(v in cover) for v in range(1, n + 1)) for cover in covers}


class TestInvariants:
    """Test cliques, covers and perfectness"""

    def test_bowtie(self):
        """Two triangles joined through vertex 4"""
        invariants = graph_invariants(bowtie_graph())
        assert invariants.omega == 3
        assert invariants.alpha0 == 4
        assert invariants.perfect
        assert not invariants.bipartite
        assert invariants.clique == (1, 2, 3)
        assert invariants.cover == (1, 2, 5, 6)

    def test_bowtie_covers(self):
        """Nine minimal covers of sizes four and five"""
        covers = minimal_vertex_covers(bowtie_graph())
        assert len(covers) == 9
        assert covers == sorted(covers)
        assert (1, 2, 5, 6) in covers
        assert (2, 3, 4, 6, 7) in covers

    def test_square(self):
        """C4 is bipartite and perfect"""
        invariants = graph_invariants(cycle(4))
        assert invariants.bipartite
        assert invariants.perfect
        assert invariants.omega == 2
        assert invariants.alpha0 == 2

    def test_pentagon(self):
        """C5 is its own odd hole"""
        assert odd_holes(cycle(5)) == [(1, 2, 3, 4, 5)]
        assert not is_perfect(cycle(5))

    def test_odd_antihole(self):
        """The complement of C7 is not perfect"""
        assert not is_perfect(nx.complement(cycle(7)))

    def test_induced_odd_cycles(self):
        """Only the two triangles of the bowtie"""
        assert induced_odd_cycles(bowtie_graph()) == [(1, 2, 3), (5, 6, 7)]
        assert induced_odd_cycles(cycle(4)) == []

    def test_maximum_clique(self):
        """Lexicographically least among the largest cliques"""
        assert maximum_clique(bowtie_graph()) == (1, 2, 3)
        assert maximum_clique(path(3)) == (1, 2)
        assert covering_number(build_graph(3, [])) == 0

    def test_perfect_size_guard(self):
        """is_perfect refuses graphs above the limit"""
        with pytest.raises(SizeGuardError):
            is_perfect(cycle(4), limit=3)


class TestBounds:
    """Test the cover and edge resurgence bounds"""

    def test_cover_bound_triangle(self):
        """2(omega - 1)/omega = 4/3, exact for a perfect graph"""
        bound = cover_resurgence_bound(cycle(3))
        assert bound.value == Fraction(4, 3)
        assert bound.exact
        assert bound.clique == (1, 2, 3)

    def test_cover_bound_pentagon(self):
        """C5 gives the bound 1 but not exactly"""
        bound = cover_resurgence_bound(cycle(5))
        assert bound.value == 1
        assert not bound.exact

    def test_edge_bound_bowtie(self):
        """A triangle attains 2 * 2 / 3"""
        bound = edge_resurgence_lower_bound(bowtie_graph())
        assert bound.value == Fraction(4, 3)
        assert bound.subgraph == (1, 2, 3)

    def test_edge_bound_pentagon(self):
        """The whole cycle gives 6/5"""
        bound = edge_resurgence_lower_bound(cycle(5))
        assert bound.value == Fraction(6, 5)
        assert bound.subgraph == (1, 2, 3, 4, 5)

    def test_edge_bound_cap(self, monkeypatch):
        """Eleven vertices exceed the default sweep"""
        monkeypatch.delenv("POLYCOVER_EDGE_BOUND_CAP", raising=False)
        with pytest.raises(SizeGuardError):
            edge_resurgence_lower_bound(path(11))

    def test_edge_bound_cap_from_env(self, monkeypatch):
        """The cap is read from the environment"""
        monkeypatch.setenv("POLYCOVER_EDGE_BOUND_CAP", "3")
        with pytest.raises(SizeGuardError):
            edge_resurgence_lower_bound(path(4))
        assert edge_resurgence_lower_bound(path(3)).value == 1


class TestAgainstIdeals:
    """Compare the graph invariants with computations on edge and cover ideals"""

    def test_covers_are_the_alexander_dual(self):
        """Minimal vertex covers are the generators of the cover ideal"""
        for name, graph in family().items():
            n = graph.number_of_nodes()
            dual = alexander_dual(edge_ideal(graph))
            assert monomials_of(minimal_vertex_covers(graph), n) == set(dual.gens), name
            assert covering_number(graph) == min(sum(g) for g in dual.gens), name

    def test_odd_cycle_covers_contain_edges(self):
        """A minimal cover of an induced odd cycle is never independent"""
        checked = 0
        for name, graph in family().items():
            for odd_cycle in induced_odd_cycles(graph):
                for cover in minimal_vertex_covers(graph.subgraph(odd_cycle)):
                    assert any(graph.has_edge(u, v) for u, v in combinations(cover, 2)), (name, cover)
                    checked += 1
        assert checked > 0

    def test_cover_ideal_inside_edge_ideal(self):
        """Non-bipartite graphs: I_c(G) in I(G) and the Waldschmidt constants compare"""
        for name, graph in family().items():
            if is_bipartite(graph):
                continue
            I, J = edge_ideal(graph), cover_ideal(graph)
            assert contains_ideal(I, J), name
            assert waldschmidt(symbolic_polyhedron(I)) <= waldschmidt(symbolic_polyhedron(J)), name
        assert not contains_ideal(edge_ideal(cycle(4)), cover_ideal(cycle(4)))

    @pytest.mark.slow
    def test_cover_bound_against_lp(self):
        """2(omega - 1)/omega bounds rho_ic(I_c(G)) from below, exactly for perfect graphs"""
        for name, graph in family().items():
            bound = cover_resurgence_bound(graph)
            rho = ic_resurgence_of_squarefree(cover_ideal(graph)).value
            assert bound.value <= rho, name
            if bound.exact:
                assert bound.value == rho, name

    @pytest.mark.slow
    def test_edge_bound_against_lp(self):
        """Every induced subgraph bounds rho_ic(I(G)) from below"""
        for name, graph in family().items():
            bound = edge_resurgence_lower_bound(graph)
            rho = ic_resurgence_of_squarefree(edge_ideal(graph)).value
            assert bound.value <= rho, name

    def test_bowtie_edge_bound_is_attained(self):
        """The triangle of the bowtie already gives rho_ic(I(G)) = 4/3"""
        graph = bowtie_graph()
        bound = edge_resurgence_lower_bound(graph)
        assert bound.value == ic_resurgence_of_squarefree(edge_ideal(graph)).value == Fraction(4, 3)
        assert covering_number(graph.subgraph(bound.subgraph)) == 2
