"""
Exact linear programming
Two-phase primal simplex over fractions with Bland's rule, and the two
applications built on it: the Waldschmidt constant of a covering polyhedron
and the ic-resurgence LP family of a filtration.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from exact import QVector, dot, is_integral_vector, qvector, rank
from ideals import MonomialIdeal, alexander_dual, is_squarefree
from polyhedra import (
    CoveringPolyhedron,
    NewtonHRep,
    covering_from_facets,
    rees_cone_facets,
    symbolic_polyhedron,
)
from utils import DimensionError, DomainError

logger = logging.getLogger(__name__)


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class Relation(str, Enum):
    GE = ">="
    LE = "<="
    EQ = "="


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: QVector
    relation: Relation
    rhs: Fraction

    def slack(self, point: Sequence) -> Fraction:
        return dot(self.coefficients, point) - self.rhs

    def satisfied(self, point: Sequence) -> bool:
        value = self.slack(point)
        if self.relation is Relation.GE:
            return value >= 0
        if self.relation is Relation.LE:
            return value <= 0
        return value == 0


@dataclass
class LinearProgram:
    """
    Exact LP with explicit relations

    Variables are free unless a row x_i >= 0 is stated.
    """

    sense: Sense
    objective: QVector
    constraints: List[Constraint] = field(default_factory=list)

    def __post_init__(self):
        self.objective = qvector(self.objective)
        for constraint in self.constraints:
            if len(constraint.coefficients) != self.num_vars:
                raise DimensionError("Constraint length differs from the objective length")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coefficients: Sequence, relation: Relation, rhs) -> "LinearProgram":
        coefficients = qvector(coefficients)
        if len(coefficients) != self.num_vars:
            raise DimensionError("Constraint length differs from the objective length")
        self.constraints.append(Constraint(coefficients, Relation(relation), Fraction(rhs)))
        return self

    def feasible(self, point: Sequence) -> bool:
        return all(c.satisfied(point) for c in self.constraints)

    def binding(self, point: Sequence) -> Tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.constraints) if c.slack(point) == 0)


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    value: Optional[Fraction] = None
    point: Optional[QVector] = None
    binding: Tuple[int, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class SimplexTableau:
    """
    Dense tableau for min c.x s.t. A x = b, x >= 0, b >= 0

    Reduced costs are kept as an extra row and updated on every pivot.
    """

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.A = rows
        self.b = rhs
        self.basis = basis
        self.n = len(rows[0]) if rows else 0
        self.m = len(rows)
        self.d: List[Fraction] = []
        self.pivots = 0

    def set_costs(self, costs: Sequence[Fraction]) -> None:
        self.d = list(costs)
        for i, var in enumerate(self.basis):
            weight = costs[var]
            if weight:
                self.d = [d - weight * a for d, a in zip(self.d, self.A[i])]

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        self.A[i] = [a / piv for a in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            f = self.A[k][j]
            if k != i and f:
                self.A[k] = [a - f * p for a, p in zip(self.A[k], self.A[i])]
                self.b[k] -= f * self.b[i]
        f = self.d[j]
        if f:
            self.d = [d - f * p for d, p in zip(self.d, self.A[i])]
        self.basis[i] = j
        self.pivots += 1

    def bland_step(self, allowed: Sequence[bool]) -> str:
        entering = next((j for j in range(self.n) if allowed[j] and self.d[j] < 0), None)
        if entering is None:
            return "optimal"
        candidates = [
            (self.b[i] / self.A[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.A[i][entering] > 0
        ]
        if not candidates:
            return "unbounded"
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return "go_on"

    def run(self, allowed: Sequence[bool]) -> str:
        while True:
            status = self.bland_step(allowed)
            if status != "go_on":
                return status

    def values(self) -> List[Fraction]:
        x = [Fraction(0)] * self.n
        for i, var in enumerate(self.basis):
            x[var] = self.b[i]
        return x


def _standard_form(lp: LinearProgram):
    """Split free variables, add slacks and one artificial per row"""
    n = lp.num_vars
    nonneg = set()
    kept: List[Constraint] = []
    for constraint in lp.constraints:
        nonzero = [i for i, a in enumerate(constraint.coefficients) if a]
        if (
            len(nonzero) == 1
            and constraint.relation is Relation.GE
            and constraint.rhs == 0
            and constraint.coefficients[nonzero[0]] > 0
        ):
            nonneg.add(nonzero[0])
        else:
            kept.append(constraint)

    # column layout: one column per nonneg variable, two per free variable
    columns: List[Tuple[int, int]] = []
    for i in range(n):
        columns.append((i, 1))
        if i not in nonneg:
            columns.append((i, -1))
    structural = len(columns)
    slack_count = sum(1 for c in kept if c.relation is not Relation.EQ)
    width = structural + slack_count + len(kept)

    rows, rhs, basis = [], [], []
    slack = structural
    for r, constraint in enumerate(kept):
        row = [Fraction(0)] * width
        for col, (var, sign) in enumerate(columns):
            row[col] = sign * constraint.coefficients[var]
        if constraint.relation is Relation.LE:
            row[slack] = Fraction(1)
            slack += 1
        elif constraint.relation is Relation.GE:
            row[slack] = Fraction(-1)
            slack += 1
        value = constraint.rhs
        if value < 0:
            row = [-a for a in row]
            value = -value
        artificial = structural + slack_count + r
        row[artificial] = Fraction(1)
        rows.append(row)
        rhs.append(value)
        basis.append(artificial)

    costs = [Fraction(0)] * width
    sign = 1 if lp.sense is Sense.MIN else -1
    for col, (var, direction) in enumerate(columns):
        costs[col] = sign * direction * lp.objective[var]
    return columns, structural + slack_count, width, rows, rhs, basis, costs


def _solve_once(lp: LinearProgram) -> LpSolution:
    columns, first_artificial, width, rows, rhs, basis, costs = _standard_form(lp)
    if not rows:
        if any(cost < 0 for cost in costs):
            return LpSolution(LpStatus.UNBOUNDED)
        point = tuple(Fraction(0) for _ in range(lp.num_vars))
        return LpSolution(LpStatus.OPTIMAL, Fraction(0), point, lp.binding(point))

    tableau = SimplexTableau(rows, rhs, basis)
    phase_one = [Fraction(int(j >= first_artificial)) for j in range(width)]
    tableau.set_costs(phase_one)
    tableau.run([True] * width)
    if sum(tableau.b[i] for i, v in enumerate(tableau.basis) if v >= first_artificial) > 0:
        return LpSolution(LpStatus.INFEASIBLE)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < tableau.m:
        if tableau.basis[i] >= first_artificial:
            j = next((j for j in range(first_artificial) if tableau.A[i][j] != 0), None)
            if j is None:
                del tableau.A[i], tableau.b[i], tableau.basis[i]
                tableau.m -= 1
                continue
            tableau.pivot(i, j)
        i += 1

    tableau.set_costs(costs)
    allowed = [j < first_artificial for j in range(width)]
    if tableau.run(allowed) == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED)

    x = tableau.values()
    point = [Fraction(0)] * lp.num_vars
    for col, (var, direction) in enumerate(columns):
        point[var] += direction * x[col]
    point = tuple(point)
    logger.debug("Simplex finished after %d pivots", tableau.pivots)
    return LpSolution(LpStatus.OPTIMAL, dot(lp.objective, point), point, lp.binding(point))


def solve(lp: LinearProgram, lexicographic: bool = False) -> LpSolution:
    """
    Solve an LP exactly

    Args:
        lp: The program
        lexicographic: Among optimal vertices return the lexicographically
            largest, by maximizing the coordinates one after another over the
            optimal face; stops at the first coordinate unbounded there

    Returns:
        LpSolution with status, value, optimal vertex and binding rows
    """
    solution = _solve_once(lp)
    if not lexicographic or not solution.is_optimal:
        return solution

    face = LinearProgram(lp.sense, lp.objective, list(lp.constraints))
    face.add(lp.objective, Relation.EQ, solution.value)
    point = solution.point
    for k in range(lp.num_vars):
        unit = [int(i == k) for i in range(lp.num_vars)]
        stage = _solve_once(LinearProgram(Sense.MAX, unit, list(face.constraints)))
        if not stage.is_optimal:
            break
        point = stage.point
        face.add(unit, Relation.EQ, stage.value)
    return LpSolution(LpStatus.OPTIMAL, dot(lp.objective, point), point, lp.binding(point))


def has_vertex_certificate(lp: LinearProgram, point: Sequence) -> bool:
    """Feasible with binding rows of full rank"""
    if not lp.feasible(point):
        return False
    rows = [lp.constraints[k].coefficients for k in lp.binding(point)]
    return rank(rows) == lp.num_vars


# ---------------------------------------------------------------------------
# Waldschmidt constant
# ---------------------------------------------------------------------------


def waldschmidt_program(Q: CoveringPolyhedron) -> LinearProgram:
    """min y_1 + .. + y_s over y >= 0, yC >= 1"""
    s = Q.num_vars
    lp = LinearProgram(Sense.MIN, [1] * s)
    for i in range(s):
        lp.add([int(k == i) for k in range(s)], Relation.GE, 0)
    for column in Q.columns:
        lp.add(column, Relation.GE, 1)
    return lp


def waldschmidt_solution(Q: CoveringPolyhedron) -> LpSolution:
    solution = solve(waldschmidt_program(Q), lexicographic=True)
    if not solution.is_optimal:
        raise DomainError(f"Waldschmidt program ended {solution.status.value}")
    return solution


def waldschmidt(Q: CoveringPolyhedron) -> Fraction:
    """Waldschmidt constant of the filtration of Q(C)"""
    return waldschmidt_solution(Q).value


# ---------------------------------------------------------------------------
# ic-resurgence
# ---------------------------------------------------------------------------


class StrictnessEvidence(str, Enum):
    ENTRIES_AT_MOST_ONE = "entries-at-most-one"
    INTEGRAL_VERTEX = "integral-vertex"
    USER_OVERRIDE = "user-override"
    UNVERIFIED = "strictness unverified"


def strictness_evidence(Q: CoveringPolyhedron, assume_strict: bool = False) -> StrictnessEvidence:
    """Sufficient conditions for I_{n+1} to be strictly inside I_n"""
    if Q.entries_at_most_one:
        return StrictnessEvidence.ENTRIES_AT_MOST_ONE
    if any(is_integral_vector(v) for v in Q.vertices):
        return StrictnessEvidence.INTEGRAL_VERTEX
    if assume_strict:
        return StrictnessEvidence.USER_OVERRIDE
    return StrictnessEvidence.UNVERIFIED


@dataclass(frozen=True)
class IcResurgence:
    value: Fraction
    evidence: StrictnessEvidence
    column: Optional[int] = None
    witness_facet: Optional[Tuple[int, ...]] = None
    vertex: Optional[QVector] = None
    per_column: Tuple[Fraction, ...] = ()
    note: Optional[str] = None

    @property
    def strictness_verified(self) -> bool:
        return self.evidence is not StrictnessEvidence.UNVERIFIED


def resurgence_program(Q: CoveringPolyhedron, scaled_beta: Sequence[int], n: int) -> LinearProgram:
    """
    LP of column j in variables y_1..y_{s+3}, maximizing y_{s+1}

    <y, c_i> - y_{s+1} >= 0, y_{s+1} >= y_{s+3}, y_1..y_s >= 0, y_{s+3} >= 0,
    n y_{s+2} - <y, n beta> >= y_{s+3}, y_{s+2} = 1
    """
    s = Q.num_vars
    width = s + 3
    objective = [0] * width
    objective[s] = 1
    lp = LinearProgram(Sense.MAX, objective)
    for column in Q.columns:
        lp.add(list(column) + [-1, 0, 0], Relation.GE, 0)
    lp.add([0] * s + [1, 0, -1], Relation.GE, 0)
    for i in range(s):
        lp.add([int(k == i) for k in range(width)], Relation.GE, 0)
    lp.add([0] * (s + 2) + [1], Relation.GE, 0)
    lp.add([-b for b in scaled_beta] + [0, n, -1], Relation.GE, 0)
    lp.add([0] * (s + 1) + [1, 0], Relation.EQ, 1)
    return lp


def ic_resurgence(
    Q: CoveringPolyhedron, np: NewtonHRep, assume_strict: bool = False
) -> IcResurgence:
    """
    rho_ic of the filtration of Q(C) as the maximum of the column LPs

    Args:
        Q: Covering polyhedron of the filtration (columns c_i)
        np: H-rep of NP(I_1) (columns beta_j with denominators n_j)
        assume_strict: Accept strictness without a sufficient condition

    Raises:
        DomainError: if some column LP is unbounded
    """
    if Q.num_vars != np.num_vars:
        raise DimensionError("Filtration and Newton polyhedron live in different dimensions")
    evidence = strictness_evidence(Q, assume_strict)
    if evidence is StrictnessEvidence.UNVERIFIED:
        logger.warning("No sufficient condition for strictness holds; result is tagged")

    values: List[Fraction] = []
    for j in range(len(np.columns)):
        solution = solve(resurgence_program(Q, np.scaled(j), np.denominators[j]))
        if solution.status is not LpStatus.OPTIMAL:
            raise DomainError(
                f"Column {j} LP is {solution.status.value}: strictness violated or malformed input"
            )
        values.append(solution.value)
    best = max(values)

    # witness: maximizing column of least degree, then lexicographic
    witness = min(
        (j for j, v in enumerate(values) if v == best),
        key=lambda j: (sum(np.scaled(j)), np.scaled(j)),
    )
    scaled = np.scaled(witness)
    refined = solve(resurgence_program(Q, scaled, np.denominators[witness]), lexicographic=True)
    logger.info("rho_ic = %s from column %d of %d", best, witness, len(values))
    return IcResurgence(
        value=best,
        evidence=evidence,
        column=witness,
        witness_facet=tuple(scaled) + (-np.denominators[witness],),
        vertex=refined.point,
        per_column=tuple(values),
        note=None if evidence is not StrictnessEvidence.UNVERIFIED else evidence.value,
    )


def ic_resurgence_of_squarefree(I: MonomialIdeal) -> IcResurgence:
    """
    Asymptotic resurgence of a squarefree ideal

    The Rees cone facets give NP(I); the Alexander dual gives the symbolic
    polyhedron. Height-one ideals return 1 without solving.
    """
    if not is_squarefree(I):
        raise DomainError("ic_resurgence_of_squarefree needs a squarefree ideal")
    height = min(sum(gen) for gen in alexander_dual(I).gens)
    if height < 2:
        return IcResurgence(
            value=Fraction(1),
            evidence=StrictnessEvidence.ENTRIES_AT_MOST_ONE,
            note="height one: every Rees facet is axis-type",
        )
    np = covering_from_facets(rees_cone_facets(I))
    return ic_resurgence(symbolic_polyhedron(I), np)


def charnes_cooper_point(vertex: Sequence, num_vars: int) -> Optional[QVector]:
    """
    Map an LP point back to the fractional program in x_1..x_{s+2}

    Divides by y_{s+3} when 0 < y_{s+3} <= 1, keeps y when y_{s+3} > 1, and
    returns None when y_{s+3} = 0.
    """
    y = qvector(vertex)
    t = y[num_vars + 2]
    if t == 0:
        return None
    if t <= 1:
        return tuple(v / t for v in y[: num_vars + 2])
    return tuple(y[: num_vars + 2])


def fractional_feasible(
    Q: CoveringPolyhedron, scaled_beta: Sequence[int], n: int, point: Sequence
) -> bool:
    """Feasibility for the fractional program with objective x_{s+1}/x_{s+2}"""
    s = Q.num_vars
    x = qvector(point)
    a, top, bottom = x[:s], x[s], x[s + 1]
    return (
        all(v >= 0 for v in a)
        and all(dot(a, c) - top >= 0 for c in Q.columns)
        and top >= 1
        and bottom >= 1
        and n * bottom - dot(a, scaled_beta) >= 1
    )
