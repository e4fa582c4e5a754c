"""
Utility functions for polycover
Errors, settings, logging, JSON I/O, rational and monomial text formats,
and input validation helpers.
"""

import json
import logging
import os
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 12
DEFAULT_EDGE_BOUND_CAP = 10


class PolycoverError(Exception):
    """Base class for every error raised by polycover"""

    exit_code = 1


class InputError(PolycoverError, ValueError):
    """Malformed input: bad JSON shape, wrong lengths, unparsable rationals"""

    exit_code = 1


class DimensionError(InputError):
    """Operands with inconsistent dimensions"""


class DomainError(PolycoverError, ValueError):
    """Input outside the domain of an operation"""

    exit_code = 2


class SizeGuardError(PolycoverError):
    """Refusal to run an enumeration beyond the configured size guard"""

    exit_code = 3


class ConsistencyError(PolycoverError, AssertionError):
    """Two independent computations disagree, or a golden file differs"""

    exit_code = 4


# ---------------------------------------------------------------------------
# Settings
# ---------------------------------------------------------------------------


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer", name, raw)
        return default
    if value < 1:
        logger.warning("Ignoring %s=%r: must be positive", name, raw)
        return default
    return value


def max_dim() -> int:
    """Size guard for perfectness checks and enumeration-heavy commands"""
    return _env_int("POLYCOVER_MAX_DIM", DEFAULT_MAX_DIM)


def edge_bound_cap(raise_cap: bool = False) -> int:
    """Vertex cap for the induced-subgraph sweep of the edge bound"""
    if raise_cap:
        return max(max_dim(), _env_int("POLYCOVER_EDGE_BOUND_CAP", DEFAULT_EDGE_BOUND_CAP))
    return _env_int("POLYCOVER_EDGE_BOUND_CAP", DEFAULT_EDGE_BOUND_CAP)


def configure_logging(verbose: bool = False) -> None:
    """
    Install a rich handler on the root logger, writing to stderr

    Args:
        verbose: Force DEBUG level regardless of POLYCOVER_LOG_LEVEL
    """
    from rich.console import Console
    from rich.logging import RichHandler

    level_name = "DEBUG" if verbose else os.getenv("POLYCOVER_LOG_LEVEL", "WARNING")
    level = getattr(logging, level_name.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """
    Parse "p/q", "p" or an integer into a Fraction

    Raises:
        InputError: if the value is not an exact rational
    """
    if isinstance(value, bool):
        raise InputError(f"Not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match:
            numerator = int(match.group(1))
            denominator = int(match.group(2)) if match.group(2) else 1
            if denominator == 0:
                raise InputError(f"Zero denominator in {value!r}")
            return Fraction(numerator, denominator)
    raise InputError(f"Not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when q = 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(vector: Sequence[Fraction]) -> List[str]:
    return [format_rational(v) for v in vector]


# ---------------------------------------------------------------------------
# Monomials as text
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^t(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, num_vars: int) -> Tuple[int, ...]:
    """
    Parse a monomial string such as "t1^2*t3" into an exponent vector

    Args:
        text: Product of factors t<i> or t<i>^<e>, separated by "*"; "1" is the unit
        num_vars: Ambient number of variables s

    Returns:
        Exponent tuple of length num_vars
    """
    exponents = [0] * num_vars
    cleaned = text.replace(" ", "")
    if cleaned in ("", "1"):
        return tuple(exponents)
    for factor in cleaned.split("*"):
        match = _FACTOR_RE.match(factor)
        if not match:
            raise InputError(f"Cannot parse monomial factor {factor!r} in {text!r}")
        index = int(match.group(1))
        power = int(match.group(2)) if match.group(2) else 1
        if not 1 <= index <= num_vars:
            raise InputError(f"Variable t{index} outside t1..t{num_vars}")
        exponents[index - 1] += power
    return tuple(exponents)


def format_monomial(exponents: Sequence[int]) -> str:
    """Inverse of parse_monomial, e.g. (2,0,1) -> "t1^2*t3" """
    factors = []
    for index, power in enumerate(exponents, start=1):
        if power == 1:
            factors.append(f"t{index}")
        elif power > 1:
            factors.append(f"t{index}^{power}")
    return "*".join(factors) if factors else "1"


# ---------------------------------------------------------------------------
# JSON files
# ---------------------------------------------------------------------------


def load_json_file(file_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load JSON file with error handling

    Args:
        file_path: Path to JSON file

    Returns:
        Loaded JSON data

    Raises:
        InputError: if the file is missing or not valid JSON
    """
    path = Path(file_path)
    if not path.exists():
        raise InputError(f"File not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"Invalid JSON format in {path}: {e}")


def save_json_file(data: Any, file_path: Union[str, Path]) -> None:
    """Save data to JSON file, creating parent directories"""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_json(data))


def dump_json(data: Any) -> str:
    """Deterministic JSON text used for every report and golden file"""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Validation (error lists, never exceptions)
# ---------------------------------------------------------------------------


def _check_vars(data: Dict[str, Any], key: str) -> Tuple[Optional[int], List[str]]:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        return None, [f"'{key}' must be a positive integer"]
    return value, []


def validate_ideal_input(data: Any) -> List[str]:
    """
    Validate ideal input {"vars": s, "gens": [...]}

    Returns:
        List of validation errors (empty if valid)
    """
    if not isinstance(data, dict):
        return ["Ideal input must be a JSON object"]
    num_vars, errors = _check_vars(data, "vars")
    gens = data.get("gens")
    if not isinstance(gens, list) or not gens:
        errors.append("'gens' must be a non-empty list")
        return errors
    if num_vars is None:
        return errors
    for position, gen in enumerate(gens):
        if isinstance(gen, str):
            try:
                parse_monomial(gen, num_vars)
            except InputError as e:
                errors.append(f"gens[{position}]: {e}")
        elif isinstance(gen, list):
            if len(gen) != num_vars:
                errors.append(f"gens[{position}] has length {len(gen)}, expected {num_vars}")
            elif not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in gen):
                errors.append(f"gens[{position}] must contain non-negative integers")
        else:
            errors.append(f"gens[{position}] must be a list of exponents or a monomial string")
    return errors


def validate_graph_input(data: Any) -> List[str]:
    """Validate graph input {"vertices": s, "edges": [[i, j], ...]} (1-based)"""
    if not isinstance(data, dict):
        return ["Graph input must be a JSON object"]
    num_vertices, errors = _check_vars(data, "vertices")
    edges = data.get("edges")
    if not isinstance(edges, list) or not edges:
        errors.append("'edges' must be a non-empty list")
        return errors
    if num_vertices is None:
        return errors
    for position, edge in enumerate(edges):
        if not isinstance(edge, list) or len(edge) != 2:
            errors.append(f"edges[{position}] must be a pair [i, j]")
            continue
        i, j = edge
        if not all(isinstance(v, int) and 1 <= v <= num_vertices for v in (i, j)):
            errors.append(f"edges[{position}] has a vertex outside 1..{num_vertices}")
        elif i == j:
            errors.append(f"edges[{position}] is a loop")
    return errors


def validate_matrix_input(data: Any) -> List[str]:
    """Validate covering matrix input {"vars": s, "columns": [["p/q", ...], ...]}"""
    if not isinstance(data, dict):
        return ["Matrix input must be a JSON object"]
    num_vars, errors = _check_vars(data, "vars")
    columns = data.get("columns")
    if not isinstance(columns, list) or not columns:
        errors.append("'columns' must be a non-empty list")
        return errors
    if num_vars is None:
        return errors
    for position, column in enumerate(columns):
        if not isinstance(column, list) or len(column) != num_vars:
            errors.append(f"columns[{position}] must have {num_vars} entries")
            continue
        try:
            values = [parse_rational(v) for v in column]
        except InputError as e:
            errors.append(f"columns[{position}]: {e}")
            continue
        if any(v < 0 for v in values):
            errors.append(f"columns[{position}] has a negative entry")
        elif all(v == 0 for v in values):
            errors.append(f"columns[{position}] is zero")
    return errors
