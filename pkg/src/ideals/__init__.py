"""
Monomial ideals
Monomials as exponent tuples, ideals as antichains of minimal generators,
ideal arithmetic, irreducible decomposition, Alexander duals, and the edge
and cover ideals of clutters.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from utils import DimensionError, DomainError, InputError, format_monomial, parse_monomial

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def divides(a: Monomial, b: Monomial) -> bool:
    """t^a divides t^b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def support(a: Monomial) -> Tuple[int, ...]:
    return tuple(i for i, x in enumerate(a) if x > 0)


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Monomial ideal of K[t1..ts] given by its minimal generators

    gens is always a lexicographically sorted antichain. The zero ideal has
    no generators; the unit ideal has the single generator 1.
    """

    num_vars: int
    gens: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise InputError("A monomial ideal needs at least one variable")
        for gen in self.gens:
            if len(gen) != self.num_vars:
                raise DimensionError(f"Generator {gen} does not have {self.num_vars} exponents")

    @classmethod
    def from_gens(cls, num_vars: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return minimalize(gens, num_vars)

    @classmethod
    def from_strings(cls, num_vars: int, texts: Iterable[str]) -> "MonomialIdeal":
        return minimalize((parse_monomial(text, num_vars) for text in texts), num_vars)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (tuple([0] * self.num_vars),)

    @property
    def is_proper(self) -> bool:
        return not self.is_zero and not self.is_unit

    def __contains__(self, monomial: Sequence[int]) -> bool:
        return contains_monomial(self, tuple(monomial))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def to_strings(self) -> List[str]:
        return [format_monomial(gen) for gen in self.gens]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True, order=True)
class IrreducibleComponent:
    """q_alpha = (t_i^alpha_i : alpha_i >= 1)"""

    alpha: Tuple[int, ...]

    def __post_init__(self):
        if not any(self.alpha):
            raise DomainError("An irreducible component needs a positive exponent")

    @property
    def ideal(self) -> MonomialIdeal:
        gens = []
        for i, power in enumerate(self.alpha):
            if power:
                gens.append(tuple(power if k == i else 0 for k in range(len(self.alpha))))
        return minimalize(gens, len(self.alpha))

    @property
    def reciprocal(self) -> Tuple[Fraction, ...]:
        """alpha^{-1}: 1/alpha_i on the support, 0 elsewhere"""
        return tuple(Fraction(1, a) if a else Fraction(0) for a in self.alpha)

    def contains(self, other: "IrreducibleComponent") -> bool:
        """q_other is contained in q_self"""
        for mine, theirs in zip(self.alpha, other.alpha):
            if theirs and not (mine and mine <= theirs):
                return False
        return True


@dataclass(frozen=True)
class Clutter:
    """
    Clutter on vertices 0..s-1

    Edges are frozensets forming an antichain under inclusion. Graph input
    is 1-based and converted on the way in.
    """

    num_vertices: int
    edges: Tuple[FrozenSet[int], ...] = field(default=())

    def __post_init__(self):
        if not self.edges:
            raise DomainError("A clutter needs at least one edge")
        for edge in self.edges:
            if not edge:
                raise InputError("Empty edge")
            if not all(0 <= v < self.num_vertices for v in edge):
                raise InputError(f"Edge {sorted(edge)} leaves the vertex set")
        for a, b in combinations(self.edges, 2):
            if a <= b or b <= a:
                raise InputError(f"Edges {sorted(a)} and {sorted(b)} are not an antichain")

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Iterable[int]], one_based: bool = True):
        shift = 1 if one_based else 0
        unique = sorted({frozenset(v - shift for v in edge) for edge in edges}, key=sorted)
        return cls(num_vertices, tuple(unique))

    @classmethod
    def from_graph(cls, graph) -> "Clutter":
        """Convert a networkx graph whose nodes are labelled 1..s"""
        return cls.from_edges(graph.number_of_nodes(), graph.edges())

    @property
    def is_graph(self) -> bool:
        return all(len(edge) == 2 for edge in self.edges)


# ---------------------------------------------------------------------------
# Ideal arithmetic
# ---------------------------------------------------------------------------


def minimalize(monomials: Iterable[Sequence[int]], num_vars: Optional[int] = None) -> MonomialIdeal:
    """
    Divisibility-minimal elements of a set of monomials

    An empty input gives the zero ideal, which needs num_vars.
    """
    candidates = sorted({tuple(m) for m in monomials}, key=lambda m: (sum(m), m))
    if not candidates:
        if num_vars is None:
            raise InputError("Cannot infer the number of variables of the zero ideal")
        return MonomialIdeal(num_vars, ())
    size = len(candidates[0])
    if num_vars is not None and size != num_vars:
        raise DimensionError(f"Monomials have {size} exponents, expected {num_vars}")
    if any(len(m) != size for m in candidates):
        raise DimensionError("Monomials live in rings of different dimension")
    if any(e < 0 for m in candidates for e in m):
        raise InputError("Negative exponent")
    kept: List[Monomial] = []
    for m in candidates:
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return MonomialIdeal(size, tuple(sorted(kept)))


def _same_ring(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.num_vars != J.num_vars:
        raise DimensionError(f"Ideals live in {I.num_vars} and {J.num_vars} variables")


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimalize((monomial_lcm(a, b) for a in I.gens for b in J.gens), I.num_vars)


def sum_ideals(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimalize(I.gens + J.gens, I.num_vars)


def multiply(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimalize((monomial_product(a, b) for a in I.gens for b in J.gens), I.num_vars)


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n by repeated squaring"""
    if n < 1:
        raise DomainError("Powers are taken for n >= 1")
    result: Optional[MonomialIdeal] = None
    base = I
    while n:
        if n & 1:
            result = base if result is None else multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def contains_monomial(I: MonomialIdeal, monomial: Sequence[int]) -> bool:
    if len(monomial) != I.num_vars:
        raise DimensionError("Monomial and ideal live in different rings")
    return any(divides(gen, monomial) for gen in I.gens)


def contains_ideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """J is contained in I"""
    _same_ring(I, J)
    return all(contains_monomial(I, gen) for gen in J.gens)


def incidence_matrix(I: MonomialIdeal) -> Tuple[Tuple[int, ...], ...]:
    """Columns are the generator exponents, returned as a tuple of columns"""
    return I.gens


def is_squarefree(I: MonomialIdeal) -> bool:
    return all(e <= 1 for gen in I.gens for e in gen)


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return minimalize((tuple(min(e, 1) for e in gen) for gen in I.gens), I.num_vars)


# ---------------------------------------------------------------------------
# Decompositions and duals
# ---------------------------------------------------------------------------


def _require_proper(I: MonomialIdeal) -> None:
    if I.is_zero:
        raise DomainError("The zero ideal has no irreducible decomposition")
    if I.is_unit:
        raise DomainError("The unit ideal has no irreducible decomposition")


def _split_components(gens: Tuple[Monomial, ...], num_vars: int, memo: Dict) -> Set[Monomial]:
    if gens in memo:
        return memo[gens]
    mixed = next((g for g in gens if len(support(g)) >= 2), None)
    if mixed is None:
        alpha = [0] * num_vars
        for gen in gens:
            (i,) = support(gen)
            alpha[i] = gen[i]
        found = {tuple(alpha)}
    else:
        i = support(mixed)[0]
        pure = tuple(mixed[i] if k == i else 0 for k in range(num_vars))
        rest = tuple(0 if k == i else mixed[k] for k in range(num_vars))
        left = minimalize(gens + (pure,), num_vars).gens
        right = minimalize(gens + (rest,), num_vars).gens
        found = _split_components(left, num_vars, memo) | _split_components(right, num_vars, memo)
    memo[gens] = found
    return found


def irreducible_decomposition(I: MonomialIdeal) -> List[IrreducibleComponent]:
    """
    Unique irredundant irreducible decomposition, sorted by alpha

    Recursive splitting I = (I + t_i^{a_i}) cap (I + t^{a - a_i e_i}) on a
    generator with at least two variables, until all generators are pure
    powers; non-minimal components are then dropped.
    """
    _require_proper(I)
    memo: Dict = {}
    components = [IrreducibleComponent(a) for a in _split_components(I.gens, I.num_vars, memo)]
    minimal = [
        q for q in components if not any(p != q and q.contains(p) for p in components)
    ]
    logger.debug("Decomposed %s into %d components (%d split states)", I, len(minimal), len(memo))
    return sorted(minimal)


def prime_ideal(num_vars: int, variables: Iterable[int]) -> MonomialIdeal:
    """(t_i : i in variables), 0-based"""
    return minimalize(
        (tuple(int(k == i) for k in range(num_vars)) for i in variables), num_vars
    )


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    """
    Alexander dual of a squarefree ideal: the ideal of minimal transversals

    Computed as the intersection of the primes (t_i : i in e) over the
    generators t_e, which enumerates exactly the minimal vertex covers.
    """
    _require_proper(I)
    if not is_squarefree(I):
        raise DomainError("The Alexander dual is defined for squarefree ideals")
    dual = MonomialIdeal(I.num_vars, (tuple([0] * I.num_vars),))
    for gen in I.gens:
        dual = intersect(dual, prime_ideal(I.num_vars, support(gen)))
    return dual


def minimal_primes(I: MonomialIdeal) -> List[Tuple[int, ...]]:
    """Supports (0-based) of the minimal primes of I"""
    return [support(gen) for gen in alexander_dual(radical(I)).gens]


def edge_ideal(clutter) -> MonomialIdeal:
    """I(C) = (t_e : e edge); accepts a Clutter or a networkx graph on 1..s"""
    if not isinstance(clutter, Clutter):
        clutter = Clutter.from_graph(clutter)
    gens = (tuple(int(v in edge) for v in range(clutter.num_vertices)) for edge in clutter.edges)
    return minimalize(gens, clutter.num_vertices)


def cover_ideal(clutter) -> MonomialIdeal:
    """I_c(C), the Alexander dual of the edge ideal"""
    return alexander_dual(edge_ideal(clutter))


def clutter_of(I: MonomialIdeal) -> Clutter:
    """Clutter whose edges are the supports of a squarefree ideal"""
    if not is_squarefree(I):
        raise DomainError("Only squarefree ideals define a clutter")
    _require_proper(I)
    return Clutter(I.num_vars, tuple(frozenset(support(gen)) for gen in I.gens))


def is_irreducible(I: MonomialIdeal) -> bool:
    _require_proper(I)
    return all(len(support(gen)) == 1 for gen in I.gens)


def is_primary(I: MonomialIdeal) -> bool:
    """
    Up to a permutation, I = (t1^a1, .., tr^ar, t^b1, .., t^bp) with every
    t^bj supported in {t1..tr}
    """
    _require_proper(I)
    pure = {support(gen)[0] for gen in I.gens if len(support(gen)) == 1}
    return all(set(support(gen)) <= pure for gen in I.gens)
