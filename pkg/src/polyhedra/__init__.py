"""
Covering polyhedra and rational cones
H- and V-representations of Q(C) = {x >= 0, xC >= 1}, Newton, irreducible
and symbolic polyhedra, Simis and Rees cones, and the double description
routine used to dualize cones.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from exact import (
    IntVector,
    QVector,
    dot,
    inverse,
    is_integral_vector,
    lcm,
    primitive,
    qvector,
    rank,
    solve_unique,
)
from ideals import MonomialIdeal, alexander_dual, irreducible_decomposition, is_squarefree
from utils import DimensionError, DomainError, InputError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Covering polyhedra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveringPolyhedron:
    """
    Q(C) = {x in R^s : x >= 0, <x, c_j> >= 1 for every column c_j}

    Columns are nonnegative and nonzero. The vertex list is computed once
    and cached.
    """

    num_vars: int
    columns: Tuple[QVector, ...]

    def __post_init__(self):
        if not self.columns:
            raise InputError("A covering matrix needs at least one column")
        for column in self.columns:
            if len(column) != self.num_vars:
                raise DimensionError(f"Column of length {len(column)} in dimension {self.num_vars}")
            if any(v < 0 for v in column):
                raise InputError("Covering matrices have nonnegative entries")
            if not any(column):
                raise InputError("Covering matrices have nonzero columns")

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], num_vars: Optional[int] = None):
        cols = tuple(qvector(c) for c in columns)
        if num_vars is None:
            if not cols:
                raise InputError("Cannot infer the dimension of an empty matrix")
            num_vars = len(cols[0])
        return cls(num_vars, cols)

    @property
    def constraints(self) -> List[Tuple[QVector, Fraction]]:
        """Rows (normal, rhs) of the H-rep: the s sign rows first, then the columns"""
        axis = [
            (tuple(Fraction(int(k == i)) for k in range(self.num_vars)), Fraction(0))
            for i in range(self.num_vars)
        ]
        return axis + [(column, Fraction(1)) for column in self.columns]

    @cached_property
    def vertices(self) -> Tuple[QVector, ...]:
        return tuple(enumerate_vertices(self))

    def contains(self, point: Sequence) -> bool:
        return contains_point(self, point)

    @property
    def entries_at_most_one(self) -> bool:
        return all(v <= 1 for column in self.columns for v in column)


def covering_polyhedron(I: MonomialIdeal) -> CoveringPolyhedron:
    """Q(I) = Q(A) with A the incidence matrix of the minimal generators"""
    if I.is_zero or I.is_unit:
        raise DomainError("Q(I) is defined for proper nonzero ideals")
    return CoveringPolyhedron.from_columns(I.gens, I.num_vars)


def enumerate_vertices(Q: CoveringPolyhedron) -> List[QVector]:
    """
    All vertices of Q(C) as basic feasible solutions

    A vertex is fixed by a zero set Z of coordinates and |F| = s - |Z|
    columns binding on the free coordinates F; every such square system
    with a unique feasible solution is solved exactly.
    """
    s = Q.num_vars
    found = set()
    solved = 0
    for free_count in range(1, s + 1):
        for free in combinations(range(s), free_count):
            restricted = [tuple(column[i] for i in free) for column in Q.columns]
            usable = [j for j, row in enumerate(restricted) if any(row)]
            for chosen in combinations(usable, free_count):
                solved += 1
                solution = solve_unique([restricted[j] for j in chosen], [1] * free_count)
                if solution is None or any(v < 0 for v in solution):
                    continue
                point = [Fraction(0)] * s
                for i, value in zip(free, solution):
                    point[i] = value
                point = tuple(point)
                if all(dot(point, column) >= 1 for column in Q.columns):
                    found.add(point)
    logger.debug("Solved %d binding systems, found %d vertices", solved, len(found))
    return sorted(found)


def vertex_certificate(Q: CoveringPolyhedron, point: Sequence) -> Optional[List[int]]:
    """
    Indices of the H-rep rows binding at a point (0..s-1 sign rows, s.. columns)

    Returns None unless the point is feasible with s independent binding rows.
    """
    point = qvector(point)
    if not contains_point(Q, point):
        return None
    binding = [k for k, (normal, rhs) in enumerate(Q.constraints) if dot(normal, point) == rhs]
    if rank([Q.constraints[k][0] for k in binding]) != Q.num_vars:
        return None
    return binding


def contains_point(Q: CoveringPolyhedron, point: Sequence) -> bool:
    point = qvector(point)
    if len(point) != Q.num_vars:
        raise DimensionError(f"Point of length {len(point)} in dimension {Q.num_vars}")
    return all(v >= 0 for v in point) and all(dot(point, c) >= 1 for c in Q.columns)


def is_integral(Q: CoveringPolyhedron) -> bool:
    return all(is_integral_vector(v) for v in Q.vertices)


def poly_equal(P: CoveringPolyhedron, Q: CoveringPolyhedron) -> bool:
    """Equality of blocking-type polyhedra by mutual vertex containment"""
    if P.num_vars != Q.num_vars:
        raise DimensionError("Polyhedra live in different dimensions")
    return all(contains_point(Q, v) for v in P.vertices) and all(
        contains_point(P, v) for v in Q.vertices
    )


@dataclass(frozen=True)
class NewtonHRep:
    """NP(I) = Q(B); n_j is the least positive integer with n_j beta_j integral"""

    num_vars: int
    columns: Tuple[QVector, ...]
    denominators: Tuple[int, ...]

    @classmethod
    def from_columns(cls, num_vars: int, columns: Iterable[Sequence]) -> "NewtonHRep":
        cols = tuple(sorted(qvector(c) for c in columns))
        return cls(num_vars, cols, tuple(lcm(v.denominator for v in c) for c in cols))

    def as_polyhedron(self) -> CoveringPolyhedron:
        return CoveringPolyhedron(self.num_vars, self.columns)

    def scaled(self, j: int) -> IntVector:
        """n_j * beta_j"""
        return tuple(int(v * self.denominators[j]) for v in self.columns[j])


def newton_polyhedron(I: MonomialIdeal) -> NewtonHRep:
    """NP(I) = Q(B) where the columns of B are the vertices of Q(I)"""
    return NewtonHRep.from_columns(I.num_vars, covering_polyhedron(I).vertices)


def irreducible_polyhedron(I: MonomialIdeal) -> CoveringPolyhedron:
    """IP(I) = Q(B) with columns alpha_i^{-1} over the irreducible components"""
    components = irreducible_decomposition(I)
    return CoveringPolyhedron(I.num_vars, tuple(q.reciprocal for q in components))


def symbolic_polyhedron(I: MonomialIdeal) -> CoveringPolyhedron:
    """Q(I^v), whose filtration is the symbolic filtration of a squarefree I"""
    if not is_squarefree(I):
        raise DomainError("The symbolic polyhedron is defined for squarefree ideals")
    return covering_polyhedron(alexander_dual(I))


def covering_from_facets(facets: Iterable[Sequence[int]]) -> NewtonHRep:
    """
    Read off Q(B) from the facets of a homogenized blocking polyhedron

    Facets (gamma, -d) with d > 0 become columns gamma / d; sign facets
    with last entry 0 and the facet z >= 0 are dropped.
    """
    facets = [tuple(f) for f in facets]
    if not facets:
        raise DomainError("No facets given")
    num_vars = len(facets[0]) - 1
    columns = [
        tuple(Fraction(g, -f[-1]) for g in f[:-1]) for f in facets if f[-1] < 0
    ]
    return NewtonHRep.from_columns(num_vars, columns)


# ---------------------------------------------------------------------------
# Rational cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntCone:
    """
    Pointed rational cone {x : <x, f> >= 0 for every facet f}

    Generators are integer vectors spanning the cone; facets are primitive
    integer normals.
    """

    dim: int
    generators: Tuple[IntVector, ...]
    facets: Tuple[IntVector, ...]

    def __post_init__(self):
        for vector in self.generators + self.facets:
            if len(vector) != self.dim:
                raise DimensionError(f"Vector {vector} is not in dimension {self.dim}")

    def contains(self, point: Sequence) -> bool:
        return all(dot(f, point) >= 0 for f in self.facets)

    @property
    def is_pointed(self) -> bool:
        return rank(self.facets) == self.dim

    @property
    def is_full_dimensional(self) -> bool:
        return rank(self.generators) == self.dim

    @cached_property
    def extreme_rays(self) -> Tuple[IntVector, ...]:
        """Primitive generators whose binding facets have rank dim - 1"""
        rays = set()
        for generator in self.generators:
            tight = [f for f in self.facets if dot(f, generator) == 0]
            if rank(tight) == self.dim - 1:
                rays.add(primitive(generator))
        return tuple(sorted(rays))


def _unit(dim: int, i: int) -> IntVector:
    return tuple(int(k == i) for k in range(dim))


def extreme_rays(inequalities: Iterable[Sequence], dim: int) -> List[IntVector]:
    """
    Extreme rays of the pointed cone {x : <a, x> >= 0 for every row a}

    Double description: start from a simplicial cone on d independent rows,
    then insert the remaining halfspaces one at a time, combining adjacent
    positive/negative ray pairs. Adjacency is decided combinatorially from
    the sets of tight rows.
    """
    rows = []
    for row in inequalities:
        if len(row) != dim:
            raise DimensionError(f"Inequality {tuple(row)} is not in dimension {dim}")
        if any(row):
            normal = primitive(row)
            if normal not in rows:
                rows.append(normal)

    basis: List[int] = []
    for k in range(len(rows)):
        if rank([rows[b] for b in basis] + [rows[k]]) > len(basis):
            basis.append(k)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise DomainError("The cone contains a line (inequalities have rank < dim)")

    inv = inverse([rows[b] for b in basis])
    rays = []
    for position in range(dim):
        ray = primitive([inv[i][position] for i in range(dim)])
        tight = frozenset(b for p, b in enumerate(basis) if p != position)
        rays.append((ray, tight))

    for index in range(len(rows)):
        if index in basis:
            continue
        row = rows[index]
        values = [dot(row, ray) for ray, _ in rays]
        positive = [r for r, v in zip(rays, values) if v > 0]
        negative = [(r, v) for r, v in zip(rays, values) if v < 0]
        updated = [r for r, v in zip(rays, values) if v > 0]
        updated += [(ray, tight | {index}) for (ray, tight), v in zip(rays, values) if v == 0]
        for (p_ray, p_tight), p_value in ((r, dot(row, r[0])) for r in positive):
            for (n_ray, n_tight), n_value in negative:
                common = p_tight & n_tight
                if len(common) < dim - 2:
                    continue
                if any(
                    other_tight >= common
                    for other_ray, other_tight in rays
                    if other_ray != p_ray and other_ray != n_ray
                ):
                    continue
                combined = [p_value * b - n_value * a for a, b in zip(p_ray, n_ray)]
                updated.append((primitive(combined), common | {index}))
        rays = updated
        logger.debug("Inserted halfspace %d/%d: %d rays", index + 1, len(rows), len(rays))

    return sorted({ray for ray, _ in rays})


def homogenized_facets(points: Iterable[Sequence]) -> List[IntVector]:
    """
    Facets of cone(e_1..e_s, (p, 1) for each point p)

    This is the homogenization of R_+^s + conv(points); normals satisfy
    <f, g> >= 0 on every generator.
    """
    points = [qvector(p) for p in points]
    if not points:
        raise DomainError("No points to homogenize")
    s = len(points[0])
    generators = [_unit(s + 1, i) for i in range(s)]
    generators += [primitive(tuple(p) + (Fraction(1),)) for p in points]
    return extreme_rays(generators, s + 1)


def rees_cone(I: MonomialIdeal) -> IntCone:
    """RC(I) = cone(e_1..e_s, (v_1, 1)..(v_q, 1))"""
    if I.is_zero or I.is_unit:
        raise DomainError("The Rees cone is defined for proper nonzero ideals")
    s = I.num_vars
    generators = tuple(_unit(s + 1, i) for i in range(s)) + tuple(g + (1,) for g in I.gens)
    return IntCone(s + 1, generators, tuple(homogenized_facets(I.gens)))


def rees_cone_facets(I: MonomialIdeal) -> List[IntVector]:
    """Irredundant primitive facet normals of RC(I), sorted lexicographically"""
    return list(rees_cone(I).facets)


def simis_cone(Q: CoveringPolyhedron) -> IntCone:
    """
    SC(Q) = {x in R^{s+1} : x >= 0, <x, (c_i, -1)> >= 0}

    Its extreme rays are e_1..e_s and the primitive multiples of (beta, 1)
    for the vertices beta of Q. Rows tight on fewer than s independent rays
    (redundant columns, implied sign conditions) are dropped.
    """
    s = Q.num_vars
    rows = [_unit(s + 1, i) for i in range(s + 1)]
    for column in Q.columns:
        normal = primitive(tuple(column) + (Fraction(-1),))
        if normal not in rows:
            rows.append(normal)
    generators = [_unit(s + 1, i) for i in range(s)]
    generators += [primitive(tuple(v) + (Fraction(1),)) for v in Q.vertices]
    facets = [f for f in rows if rank([g for g in generators if dot(f, g) == 0]) == s]
    return IntCone(s + 1, tuple(generators), tuple(facets))
