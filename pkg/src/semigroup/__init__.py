"""
Hilbert bases and filtrations
Hilbert bases of pointed cones, the filtration I_n = (t^a : a/n in Q(C))
of a covering polyhedron, and the normality, MFMC and equality tests
built on them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from exact import IntVector, determinant, lcm, parallelepiped_points
from ideals import (
    Monomial,
    MonomialIdeal,
    edge_ideal,
    irreducible_decomposition,
    is_squarefree,
    minimalize,
    power,
    support,
)
from lp import IcResurgence, ic_resurgence, waldschmidt
from polyhedra import (
    CoveringPolyhedron,
    IntCone,
    covering_polyhedron,
    irreducible_polyhedron,
    is_integral,
    newton_polyhedron,
    poly_equal,
    rees_cone,
    simis_cone,
    symbolic_polyhedron,
)
from utils import ConsistencyError, DomainError, SizeGuardError

logger = logging.getLogger(__name__)

# simplicial subcones examined before refusing a Hilbert basis computation
MAX_SIMPLICIAL_CANDIDATES = 250_000


@dataclass(frozen=True)
class HilbertBasis:
    """Minimal Hilbert basis, sorted lexicographically"""

    elements: Tuple[IntVector, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, vector) -> bool:
        return tuple(vector) in self.elements

    def of_degree(self, degree: int) -> List[IntVector]:
        """Elements whose last coordinate equals degree"""
        return [h for h in self.elements if h[-1] == degree]

    @property
    def degrees(self) -> List[int]:
        return sorted({h[-1] for h in self.elements})


def _reduce(candidates, cone: IntCone) -> List[IntVector]:
    """Keep the candidates that are not g + (h - g) with g another candidate"""
    ordered = sorted(candidates, key=lambda v: (sum(abs(x) for x in v), v))
    basis = []
    for h in ordered:
        reducible = False
        for g in ordered:
            if g == h:
                continue
            rest = tuple(a - b for a, b in zip(h, g))
            if any(rest) and cone.contains(rest):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return basis


def hilbert_basis(cone: IntCone) -> HilbertBasis:
    """
    Hilbert basis of a pointed full-dimensional cone

    Lattice points of the fundamental parallelepipeds of every simplicial
    subcone on the extreme rays, together with the rays, generate the
    monoid; the irreducible ones form the basis.
    """
    if not cone.is_pointed:
        raise DomainError("Hilbert bases are computed for pointed cones")
    if not cone.is_full_dimensional:
        raise DomainError("Hilbert bases are computed for full-dimensional cones")
    rays = cone.extreme_rays
    dim = cone.dim
    if comb(len(rays), dim) > MAX_SIMPLICIAL_CANDIDATES:
        raise SizeGuardError(
            f"{len(rays)} extreme rays in dimension {dim} give too many simplicial subcones"
        )
    candidates = set(rays)
    simplicial = 0
    for subset in combinations(rays, dim):
        if determinant(subset) == 0:
            continue
        simplicial += 1
        for point in parallelepiped_points(subset):
            if any(point):
                candidates.add(point)
    basis = _reduce(candidates, cone)
    logger.debug(
        "Hilbert basis: %d rays, %d simplicial cones, %d candidates, %d elements",
        len(rays),
        simplicial,
        len(candidates),
        len(basis),
    )
    return HilbertBasis(tuple(sorted(basis)))


# ---------------------------------------------------------------------------
# Filtrations
# ---------------------------------------------------------------------------


def _minimal_points(Q: CoveringPolyhedron, n: int) -> List[Monomial]:
    """
    Minimal a in N^s with <a, c_i> >= n for every column

    For a minimal a with a_k > 0, some column with c_{k,i} > 0 is violated
    by a - e_k, hence a_k <= floor(n / min_i c_{k,i}) + 1. A depth-first
    walk over that box stops extending as soon as the prefix is feasible.
    """
    s = Q.num_vars
    weights = []
    targets = []
    for column in Q.columns:
        scale = lcm(v.denominator for v in column)
        weights.append([int(v * scale) for v in column])
        targets.append(n * scale)
    bounds = []
    for k in range(s):
        positive = [column[k] for column in Q.columns if column[k] > 0]
        bounds.append(int(n / min(positive)) + 1 if positive else 0)
    suffix = [[0] * len(weights) for _ in range(s + 1)]
    for k in range(s - 1, -1, -1):
        suffix[k] = [suffix[k + 1][i] + bounds[k] * w[k] for i, w in enumerate(weights)]

    def feasible(point) -> bool:
        return all(
            sum(a * x for a, x in zip(point, w)) >= t for w, t in zip(weights, targets)
        )

    found: List[Monomial] = []
    prefix = [0] * s

    def visit(k: int, sums: List[int]) -> None:
        if all(total >= t for total, t in zip(sums, targets)):
            point = tuple(prefix[:k]) + (0,) * (s - k)
            minimal = all(
                not feasible(point[:i] + (point[i] - 1,) + point[i + 1:])
                for i in range(s)
                if point[i]
            )
            if minimal:
                found.append(point)
            return
        if k == s:
            return
        if any(total + rest < t for total, rest, t in zip(sums, suffix[k], targets)):
            return
        for value in range(bounds[k] + 1):
            prefix[k] = value
            visit(k + 1, [total + value * w[k] for total, w in zip(sums, weights)])
        prefix[k] = 0

    visit(0, [0] * len(weights))
    return found


class Filtration:
    """
    Filtration {I_n} of a covering polyhedron

    Ideals, the Hilbert basis of the Simis cone and the Waldschmidt
    constant are computed on first use and memoized on the handle.
    """

    def __init__(self, Q: CoveringPolyhedron, label: str = "Q(C)"):
        self.Q = Q
        self.label = label
        self._ideals: Dict[int, MonomialIdeal] = {}

    def __repr__(self) -> str:
        return f"Filtration({self.label}, s={self.Q.num_vars}, m={len(self.Q.columns)})"

    @classmethod
    def from_matrix(cls, columns, num_vars: Optional[int] = None) -> "Filtration":
        return cls(CoveringPolyhedron.from_columns(columns, num_vars))

    @classmethod
    def symbolic(cls, I: MonomialIdeal) -> "Filtration":
        """Symbolic filtration I^(n) of a squarefree ideal"""
        return cls(symbolic_polyhedron(I), "symbolic")

    @classmethod
    def integral_closure(cls, I: MonomialIdeal) -> "Filtration":
        """Filtration closure(I^n) of the Newton polyhedron"""
        return cls(newton_polyhedron(I).as_polyhedron(), "newton")

    @classmethod
    def irreducible(cls, I: MonomialIdeal) -> "Filtration":
        """I_n = closure(q_1^n) cap .. cap closure(q_m^n) over the irreducible components"""
        return cls(irreducible_polyhedron(I), "irreducible")

    @classmethod
    def isolated_components(cls, I: MonomialIdeal, acknowledge_normal_components: bool = False):
        """
        Symbolic filtration of a non-squarefree ideal from its isolated components

        Valid when the isolated components have distinct radicals and are
        normal; this is not checked and must be acknowledged.
        """
        if not acknowledge_normal_components:
            raise DomainError(
                "The isolated-component route assumes normal isolated components; "
                "acknowledge this explicitly"
            )
        components = irreducible_decomposition(I)
        supports = [frozenset(support(q.alpha)) for q in components]
        isolated = [
            q
            for q, mine in zip(components, supports)
            if not any(other < mine for other in supports)
        ]
        columns = tuple(q.reciprocal for q in isolated)
        return cls(CoveringPolyhedron(I.num_vars, columns), "isolated-components")

    def ideal(self, n: int) -> MonomialIdeal:
        if n < 1:
            raise DomainError("Filtration ideals are indexed by n >= 1")
        if n not in self._ideals:
            points = _minimal_points(self.Q, n)
            self._ideals[n] = minimalize(points, self.Q.num_vars)
            logger.debug("%r: I_%d has %d generators", self, n, len(self._ideals[n]))
        return self._ideals[n]

    def alpha(self, n: int) -> int:
        """Least degree of a generator of I_n"""
        return min(sum(gen) for gen in self.ideal(n).gens)

    @cached_property
    def hilbert_basis(self) -> HilbertBasis:
        return hilbert_basis(simis_cone(self.Q))

    @cached_property
    def waldschmidt(self) -> Fraction:
        return waldschmidt(self.Q)

    def ic_resurgence(self, assume_strict: bool = False) -> IcResurgence:
        return ic_resurgence(self.Q, newton_polyhedron(self.ideal(1)), assume_strict)


def filtration_ideal(F: Filtration, n: int) -> MonomialIdeal:
    return F.ideal(n)


def rees_filtration_generators(F: Filtration) -> List[Tuple[Monomial, int]]:
    """Generators t^a z^d of R(F) in positive degree, sorted by (d, a)"""
    return sorted(
        ((h[:-1], h[-1]) for h in F.hilbert_basis if h[-1] > 0),
        key=lambda item: (item[1], item[0]),
    )


def alpha_sequence(F: Filtration, N: int) -> List[int]:
    return [F.alpha(n) for n in range(1, N + 1)]


def is_strict(F: Filtration, N: int) -> bool:
    """I_{n+1} strictly inside I_n for every n < N"""
    for n in range(1, N):
        if F.ideal(n + 1).gens == F.ideal(n).gens:
            logger.info("%r is not strict: I_%d = I_%d", F, n, n + 1)
            return False
    return True


def integral_closure_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    return Filtration.integral_closure(I).ideal(n)


def symbolic_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if not is_squarefree(I):
        raise DomainError("symbolic_power needs a squarefree ideal")
    return Filtration.symbolic(I).ideal(n)


def is_complete(I: MonomialIdeal) -> bool:
    """I equals its integral closure"""
    return integral_closure_power(I, 1).gens == I.gens


@dataclass(frozen=True)
class Normality:
    normal: bool
    witness: Optional[Monomial] = None
    degree: Optional[int] = None

    def __bool__(self) -> bool:
        return self.normal


def is_normal(I: MonomialIdeal) -> Normality:
    """
    Normality of I from the Hilbert basis of its Rees cone

    A basis element (a, d) with d >= 2, or with d = 1 and t^a not a
    generator, gives t^a in closure(I^d) but not in I^d; the witness has
    least d, then least a.
    """
    basis = hilbert_basis(rees_cone(I))
    high = sorted(
        (h[-1], h[:-1])
        for h in basis
        if h[-1] >= 2 or (h[-1] == 1 and h[:-1] not in I.gens)
    )
    if not high:
        return Normality(True)
    degree, witness = high[0]
    return Normality(False, witness, degree)


def is_mfmc(clutter) -> bool:
    """Max-flow min-cut: Q(I) integral and I normal"""
    I = edge_ideal(clutter)
    return is_integral(covering_polyhedron(I)) and is_normal(I).normal


def np_equals_ip(I: MonomialIdeal) -> bool:
    return poly_equal(newton_polyhedron(I).as_polyhedron(), irreducible_polyhedron(I))


def _divisors(value: int) -> List[int]:
    return [d for d in range(1, value + 1) if value % d == 0]


def waldschmidt_period(F: Filtration) -> Tuple[int, Fraction]:
    """
    Least k dividing the lcm of the basis degrees with alpha(k)/k = alpha(2k)/2k = waldschmidt

    Raises:
        ConsistencyError: if no divisor attains the Waldschmidt constant
    """
    degrees = [d for d in F.hilbert_basis.degrees if d > 0]
    period = lcm(degrees)
    value = F.waldschmidt
    for k in _divisors(period):
        if Fraction(F.alpha(k), k) == value and Fraction(F.alpha(2 * k), 2 * k) == value:
            return k, value
    raise ConsistencyError(f"No divisor of {period} attains the Waldschmidt constant {value}")


def closure_equals_filtration(F: Filtration, N: int) -> bool:
    """
    closure(I_1^n) = I_n for all n, decided by integrality of Q

    The identity is checked for n <= N: a mismatch on an integral Q is an
    internal error; a non-integral Q with no mismatch up to N is logged.
    """
    verdict = is_integral(F.Q)
    closure = Filtration.integral_closure(F.ideal(1))
    mismatch = next(
        (n for n in range(1, N + 1) if closure.ideal(n).gens != F.ideal(n).gens), None
    )
    if verdict and mismatch is not None:
        raise ConsistencyError(f"Q is integral but closure(I_1^{mismatch}) != I_{mismatch}")
    if not verdict and mismatch is None:
        logger.warning("Q is not integral but closure(I_1^n) = I_n for every n <= %d", N)
    return verdict


def powers_equal_filtration(F: Filtration, N: int) -> bool:
    """I_1^n = I_n for all n, decided by integrality of Q and normality of I_1"""
    first = F.ideal(1)
    verdict = is_integral(F.Q) and is_normal(first).normal
    mismatch = next(
        (n for n in range(1, N + 1) if power(first, n).gens != F.ideal(n).gens), None
    )
    if verdict and mismatch is not None:
        raise ConsistencyError(f"Expected I_1^{mismatch} = I_{mismatch}")
    if not verdict and mismatch is None:
        logger.warning("I_1^n = I_n for every n <= %d although the verdict is negative", N)
    return verdict
