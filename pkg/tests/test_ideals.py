"""
Unit tests for monomial ideals
"""

import sys
from functools import reduce
from pathlib import Path

import pytest

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

from graphs import bowtie_graph
from ideals import (
    Clutter,
    IrreducibleComponent,
    MonomialIdeal,
    alexander_dual,
    clutter_of,
    contains_ideal,
    contains_monomial,
    cover_ideal,
    edge_ideal,
    incidence_matrix,
    intersect,
    irreducible_decomposition,
    is_irreducible,
    is_primary,
    is_squarefree,
    minimal_primes,
    minimalize,
    multiply,
    power,
    radical,
    sum_ideals,
)
from utils import DimensionError, DomainError, InputError

EX71 = MonomialIdeal.from_strings(3, ["t1*t2^2", "t2*t3^2", "t1*t3^2"])
EX72 = MonomialIdeal.from_strings(4, ["t1*t2", "t3*t4^3", "t1*t3*t4^2", "t2*t3^3", "t3^3*t4^2"])
EX73 = MonomialIdeal.from_strings(
    3,
    [
        "t1^2", "t2^5", "t3^11", "t2*t3^9", "t2^2*t3^7", "t2^3*t3^5",
        "t2^4*t3^3", "t1*t3^6", "t1*t2*t3^4", "t1*t2^2*t3^2", "t1*t2^3",
    ],
)
TRIANGLE = MonomialIdeal.from_strings(3, ["t1*t2", "t2*t3", "t1*t3"])


class TestMonomialIdeal:
    """Test construction and membership"""

    def test_generators_sorted(self):
        """Generators are kept as a sorted antichain"""
        assert EX71.gens == ((0, 1, 2), (1, 0, 2), (1, 2, 0))
        assert EX71.to_strings() == ["t2*t3^2", "t1*t3^2", "t1*t2^2"]

    def test_minimalize(self):
        """Multiples of other generators are dropped"""
        assert minimalize([(1, 1), (1, 0), (2, 0)]).gens == ((1, 0),)
        assert len(EX73) == 11

    def test_zero_and_unit(self):
        """Empty input is the zero ideal; the monomial 1 gives the unit ideal"""
        assert minimalize([], 2).is_zero
        assert minimalize([(0, 0), (1, 0)]).is_unit
        assert EX71.is_proper
        with pytest.raises(InputError):
            minimalize([])

    def test_dimension_checks(self):
        """Generators must all live in the same ring"""
        with pytest.raises(DimensionError):
            minimalize([(1, 0), (1, 0, 0)])
        with pytest.raises(DimensionError):
            minimalize([(1, 0)], 3)

    def test_membership(self):
        """t^b is in I when some generator divides it"""
        assert (1, 1, 2) in EX71
        assert (1, 1, 1) not in EX71
        assert contains_monomial(EX71, (0, 3, 2))


class TestArithmetic:
    """Test ideal arithmetic"""

    def test_power(self):
        """(t1, t2)^2 = (t1^2, t1t2, t2^2)"""
        maximal = minimalize([(1, 0), (0, 1)])
        assert power(maximal, 2).gens == ((0, 2), (1, 1), (2, 0))
        assert power(maximal, 5) == multiply(power(maximal, 2), power(maximal, 3))

    def test_power_rejects_zero(self):
        """Powers start at n = 1"""
        with pytest.raises(DomainError):
            power(EX71, 0)

    def test_intersect_and_sum(self):
        """(t1) cap (t2) = (t1t2), (t1) + (t2) = (t1, t2)"""
        a = minimalize([(1, 0)])
        b = minimalize([(0, 1)])
        assert intersect(a, b).gens == ((1, 1),)
        assert sum_ideals(a, b).gens == ((0, 1), (1, 0))

    def test_contains_ideal(self):
        """I^2 is contained in I"""
        assert contains_ideal(EX71, power(EX71, 2))
        assert not contains_ideal(power(EX71, 2), EX71)

    def test_radical(self):
        """Radical and squarefreeness"""
        I = minimalize([(2, 1), (0, 3)])
        assert radical(I).gens == ((0, 1),)
        assert not is_squarefree(I)
        assert is_squarefree(TRIANGLE)


class TestDecomposition:
    """Test irreducible decompositions"""

    def test_three_generator_ideal(self):
        """(t2^2, t3^2) cap (t1, t3^2) cap (t1, t2)"""
        alphas = [q.alpha for q in irreducible_decomposition(EX71)]
        assert alphas == [(0, 2, 2), (1, 0, 2), (1, 1, 0)]

    def test_five_generator_ideal(self):
        """Four components in four variables"""
        alphas = [q.alpha for q in irreducible_decomposition(EX72)]
        assert alphas == [(0, 1, 0, 2), (0, 1, 1, 0), (1, 0, 1, 0), (1, 0, 3, 3)]

    def test_intersection_recovers_ideal(self):
        """Intersecting the components gives back I"""
        for I in (EX71, EX72, EX73, TRIANGLE):
            components = [q.ideal for q in irreducible_decomposition(I)]
            assert reduce(intersect, components) == I

    def test_primary_components(self):
        """Components of an ideal primary to (t1, t2, t3) use all three variables"""
        assert is_primary(EX73)
        assert all(all(q.alpha) for q in irreducible_decomposition(EX73))

    def test_component(self):
        """Component ideal and reciprocal"""
        q = IrreducibleComponent((0, 2, 2))
        assert q.ideal.gens == ((0, 0, 2), (0, 2, 0))
        assert q.reciprocal[1] == q.reciprocal[2] == 0.5
        assert q.reciprocal[0] == 0
        assert IrreducibleComponent((1, 1, 0)).contains(IrreducibleComponent((2, 1, 0)))

    def test_improper(self):
        """Zero and unit ideals have no decomposition"""
        with pytest.raises(DomainError):
            irreducible_decomposition(minimalize([], 2))
        with pytest.raises(DomainError):
            irreducible_decomposition(minimalize([(0, 0)]))

    def test_irreducible_and_primary(self):
        """Pure powers are irreducible; primary allows mixed terms in the same variables"""
        assert is_irreducible(minimalize([(2, 0), (0, 1)]))
        assert is_primary(minimalize([(2, 0), (0, 3), (1, 1)]))
        assert not is_primary(minimalize([(1, 1)]))


class TestDuals:
    """Test Alexander duals, edge and cover ideals"""

    def test_triangle_is_self_dual(self):
        """Minimal covers of a triangle are its edges"""
        assert alexander_dual(TRIANGLE) == TRIANGLE

    def test_path_dual(self):
        """Covers of the path 1-2-3 are {2} and {1, 3}"""
        path = minimalize([(1, 1, 0), (0, 1, 1)])
        assert alexander_dual(path).gens == ((0, 1, 0), (1, 0, 1))
        assert minimal_primes(path) == [(1,), (0, 2)]

    def test_dual_needs_squarefree(self):
        """Non-squarefree ideals have no Alexander dual here"""
        with pytest.raises(DomainError):
            alexander_dual(EX71)

    def test_bowtie_cover_ideal(self):
        """Nine minimal vertex covers of the bowtie"""
        J = cover_ideal(bowtie_graph())
        assert len(J) == 9
        assert (0, 1, 1, 1, 0, 1, 1) in J.gens
        assert (1, 1, 0, 0, 1, 1, 0) in J.gens
        assert all(sum(gen) in (4, 5) for gen in J.gens)

    def test_cover_ideal_inside_edge_ideal(self):
        """For a non-bipartite graph every cover contains an edge"""
        graph = bowtie_graph()
        assert contains_ideal(edge_ideal(graph), cover_ideal(graph))

    def test_edge_ideal(self):
        """Edge ideal from a graph or a clutter"""
        I = edge_ideal(bowtie_graph())
        assert len(I) == 8
        assert all(sum(gen) == 2 for gen in I.gens)
        clutter = Clutter.from_edges(3, [[1, 2], [2, 3], [1, 3]])
        assert edge_ideal(clutter) == TRIANGLE
        assert set(clutter_of(TRIANGLE).edges) == set(clutter.edges)

    def test_clutter_validation(self):
        """Edges must form an antichain inside the vertex set"""
        with pytest.raises(InputError):
            Clutter.from_edges(3, [[1, 2], [1, 2, 3]])
        with pytest.raises(InputError):
            Clutter.from_edges(2, [[1, 3]])
        assert Clutter.from_edges(3, [[1, 2], [2, 1]]).edges == (frozenset({0, 1}),)

    def test_incidence_matrix(self):
        """One column per generator"""
        assert incidence_matrix(EX71) == ((0, 1, 2), (1, 0, 2), (1, 2, 0))
