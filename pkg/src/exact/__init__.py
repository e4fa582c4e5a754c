"""
Exact arithmetic kernels
Rational vectors and matrices over fractions.Fraction, fraction-free
elimination, and the integer lattice helpers used by the Hilbert basis code.
"""

from fractions import Fraction
from functools import reduce
from itertools import product
from math import floor, gcd
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from utils import DimensionError, format_rational, format_vector, parse_rational

Rational = Fraction
QVector = Tuple[Fraction, ...]
QMatrix = Tuple[QVector, ...]
IntVector = Tuple[int, ...]

__all__ = [
    "Rational",
    "QVector",
    "QMatrix",
    "IntVector",
    "qvector",
    "qmatrix",
    "dot",
    "transpose",
    "rank",
    "determinant",
    "solve_unique",
    "inverse",
    "lcm",
    "primitive",
    "is_integral_vector",
    "hermite_lower",
    "lattice_residues",
    "parallelepiped_points",
    "format_rational",
    "format_vector",
    "parse_rational",
]


def qvector(values: Iterable) -> QVector:
    """Coerce ints, Fractions or "p/q" strings into a rational vector"""
    return tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)


def qmatrix(rows: Iterable[Iterable]) -> QMatrix:
    """Row-major rational matrix; all rows must have equal length"""
    matrix = tuple(qvector(row) for row in rows)
    if matrix and len({len(row) for row in matrix}) != 1:
        raise DimensionError("Matrix rows have different lengths")
    return matrix


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"Cannot take inner product of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def transpose(matrix: Sequence[Sequence]) -> Tuple[tuple, ...]:
    return tuple(zip(*matrix))


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def _clear_row(row: Sequence) -> List[int]:
    denominators = lcm(Fraction(v).denominator for v in row)
    return [int(Fraction(v) * denominators) for v in row]


def _bareiss(matrix: List[List[int]]) -> Tuple[int, int]:
    """
    Fraction-free elimination in place

    Returns:
        (rank, signed last pivot); the pivot is the determinant when square and full rank
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    previous = 1
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if matrix[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
            sign = -sign
        pivot = matrix[r][c]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                matrix[i][j] = (matrix[i][j] * pivot - matrix[i][c] * matrix[r][j]) // previous
            matrix[i][c] = 0
        previous = pivot
        r += 1
    return r, sign * previous


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss elimination on the denominator-cleared rows"""
    if not matrix or not matrix[0]:
        return 0
    work = [_clear_row(row) for row in matrix]
    result, _ = _bareiss(work)
    return result


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix"""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DimensionError("Determinant needs a square matrix")
    if size == 0:
        return 1
    work = [list(map(int, row)) for row in matrix]
    found, value = _bareiss(work)
    return value if found == size else 0


def solve_unique(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[QVector]:
    """
    Solve M x = b exactly

    Returns:
        The unique solution, or None when M is singular

    Raises:
        DimensionError: if M is not square or b has the wrong length
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix) or len(rhs) != size:
        raise DimensionError("solve_unique needs a square system")
    work = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(size):
        pivot_row = next((i for i in range(c, size) if work[i][c] != 0), None)
        if pivot_row is None:
            return None
        work[c], work[pivot_row] = work[pivot_row], work[c]
        pivot = work[c][c]
        if pivot != 1:
            work[c] = [v / pivot for v in work[c]]
        for i in range(size):
            factor = work[i][c]
            if i != c and factor != 0:
                pivot_values = work[c]
                work[i] = [a - factor * b for a, b in zip(work[i], pivot_values)]
    return tuple(row[size] for row in work)


def inverse(matrix: Sequence[Sequence]) -> Optional[QMatrix]:
    """Exact inverse by Gauss-Jordan, None when singular"""
    size = len(matrix)
    columns = []
    for k in range(size):
        unit = [Fraction(int(i == k)) for i in range(size)]
        column = solve_unique(matrix, unit)
        if column is None:
            return None
        columns.append(column)
    return tuple(zip(*columns))


def primitive(vector: Sequence) -> IntVector:
    """
    Scale a nonzero rational vector to the primitive integer vector on its ray

    Denominators are cleared by their lcm and the result divided by the gcd
    of its entries; the direction (sign) is preserved.
    """
    cleared = _clear_row(vector)
    common = reduce(gcd, (abs(v) for v in cleared), 0)
    if common == 0:
        raise DimensionError("The zero vector has no primitive multiple")
    return tuple(v // common for v in cleared)


def is_integral_vector(vector: Sequence) -> bool:
    return all(Fraction(v).denominator == 1 for v in vector)


def hermite_lower(columns: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Lower-triangular basis of the lattice spanned by d independent integer columns

    Integer column operations only. The returned matrix H (row-major) has
    H[i][j] = 0 for j > i and H[i][i] > 0, so the box 0 <= a_i < H[i][i]
    is a residue system of Z^d modulo the lattice.
    """
    size = len(columns)
    cols = [list(map(int, column)) for column in columns]
    for i in range(size):
        for j in range(i + 1, size):
            # extended-gcd column step zeroing entry (i, j)
            while cols[j][i] != 0:
                q = cols[i][i] // cols[j][i]
                cols[i] = [a - q * b for a, b in zip(cols[i], cols[j])]
                cols[i], cols[j] = cols[j], cols[i]
        if cols[i][i] == 0:
            raise DimensionError("Columns are linearly dependent")
        if cols[i][i] < 0:
            cols[i] = [-a for a in cols[i]]
    return [[cols[j][i] for j in range(size)] for i in range(size)]


def lattice_residues(hermite: Sequence[Sequence[int]]) -> Iterator[IntVector]:
    """All residues a with 0 <= a_i < H[i][i]"""
    return product(*(range(hermite[i][i]) for i in range(len(hermite))))


def parallelepiped_points(columns: Sequence[Sequence[int]]) -> List[IntVector]:
    """
    Integer points of the half-open fundamental parallelepiped of the columns

    Each residue of Z^d modulo the column lattice is moved into
    {sum lambda_i r_i : 0 <= lambda_i < 1} by subtracting floor(R^-1 x).
    The origin is included.
    """
    size = len(columns)
    rows = transpose(columns)
    inv = inverse(rows)
    if inv is None:
        raise DimensionError("Columns are linearly dependent")
    points = []
    for residue in lattice_residues(hermite_lower(columns)):
        lam = [dot(inv_row, residue) for inv_row in inv]
        shift = [floor(value) for value in lam]
        point = tuple(
            residue[i] - sum(columns[k][i] * shift[k] for k in range(size)) for i in range(size)
        )
        points.append(point)
    return points
