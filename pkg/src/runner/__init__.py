"""
Polycover runner - main orchestrator
Turns a Request into a deterministic Report, replays the bundled appendix
procedures against golden files, and re-validates report certificates.
"""

import logging
import time
from fractions import Fraction
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from pydantic import ValidationError

from exact import dot, format_vector, is_integral_vector, primitive, qvector, rank
from graphs import (
    build_graph,
    clique_number,
    cover_resurgence_bound,
    covering_number,
    edge_resurgence_lower_bound,
    graph_invariants,
    is_bipartite,
    is_perfect,
    minimal_vertex_covers,
)
from ideals import (
    Clutter,
    IrreducibleComponent,
    Monomial,
    MonomialIdeal,
    alexander_dual,
    clutter_of,
    contains_monomial,
    cover_ideal,
    edge_ideal,
    intersect,
    irreducible_decomposition,
    is_squarefree,
    minimalize,
    power,
)
from lp import (
    StrictnessEvidence,
    charnes_cooper_point,
    fractional_feasible,
    ic_resurgence_of_squarefree,
    resurgence_program,
    waldschmidt_solution,
)
from models import AppendixProcedure, Certificate, Command, Report, Request
from polyhedra import (
    CoveringPolyhedron,
    contains_point,
    covering_polyhedron,
    enumerate_vertices,
    irreducible_polyhedron,
    is_integral,
    newton_polyhedron,
    poly_equal,
    rees_cone,
    simis_cone,
    symbolic_polyhedron,
    vertex_certificate,
)
from semigroup import (
    Filtration,
    alpha_sequence,
    closure_equals_filtration,
    hilbert_basis,
    is_normal,
    is_strict,
    np_equals_ip,
    powers_equal_filtration,
    rees_filtration_generators,
    waldschmidt_period,
)
from utils import (
    ConsistencyError,
    InputError,
    dump_json,
    format_monomial,
    format_rational,
    load_json_file,
    save_json_file,
)

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent.parent.parent / "data"

APPENDIX_FIXTURES = {
    AppendixProcedure.A1: ("ideal", "ex71.json"),
    AppendixProcedure.A2: ("matrix", "c73.json"),
    AppendixProcedure.A3: ("graph", "bowtie.json"),
    AppendixProcedure.A4: ("graph", "bowtie.json"),
}


def _ints(vectors) -> List[List[int]]:
    return [list(v) for v in vectors]


def _rationals(vectors) -> List[List[str]]:
    return [format_vector(v) for v in vectors]


def _factorization(gens: Sequence[Monomial], target: Monomial, n: int, start: int = 0):
    """Indices k_1 <= .. <= k_n of generators whose product is target, or None"""
    if n == 0:
        return () if not any(target) else None
    for k in range(start, len(gens)):
        if all(a <= b for a, b in zip(gens[k], target)):
            rest = _factorization(gens, tuple(b - a for a, b in zip(gens[k], target)), n - 1, k)
            if rest is not None:
                return (k,) + rest
    return None


def _lowered(a: Monomial, i: int) -> Monomial:
    return tuple(e - int(k == i) for k, e in enumerate(a))


def _is_clique(graph, vertices) -> bool:
    return all(graph.has_edge(u, v) for u, v in combinations(vertices, 2))


def _is_cover(graph, vertices) -> bool:
    chosen = set(vertices)
    return all(u in chosen or v in chosen for u, v in graph.edges)


class PolycoverRunner:
    """
    Main runner class dispatching requests to the library
    """

    def __init__(self, data_dir: Optional[Union[str, Path]] = None, timing: bool = False):
        """
        Initialize runner

        Args:
            data_dir: Directory holding fixtures/ and golden/
            timing: Attach wall-clock timing to reports
        """
        self.data_dir = Path(data_dir) if data_dir else DATA_DIR
        self.timing = timing
        self._handlers: Dict[Command, Callable[[Request], tuple]] = {
            Command.VERTICES: self._vertices,
            Command.NEWTON: self._newton,
            Command.IRREDUCIBLE_POLYHEDRON: self._irreducible_polyhedron,
            Command.REES_FACETS: self._rees_facets,
            Command.HILBERT_BASIS: self._hilbert_basis,
            Command.REES_GENERATORS: self._rees_generators,
            Command.POWER: self._power,
            Command.SYMBOLIC_POWER: self._symbolic_power,
            Command.CLOSURE_POWER: self._closure_power,
            Command.NORMAL: self._normal,
            Command.MFMC: self._mfmc,
            Command.NP_EQ_IP: self._np_eq_ip,
            Command.WALDSCHMIDT: self._waldschmidt,
            Command.FILTRATION: self._filtration_summary,
            Command.RESURGENCE_IC: self._resurgence_ic,
            Command.GRAPH_INVARIANTS: self._graph_invariants,
            Command.COVER_BOUND: self._cover_bound,
            Command.EDGE_BOUND: self._edge_bound,
            Command.DECOMPOSE: self._decompose,
            Command.ALEXANDER_DUAL: self._alexander_dual,
        }

    # ------------------------------------------------------------------
    # Requests
    # ------------------------------------------------------------------

    def run(self, request: Union[Dict[str, Any], Request]) -> Report:
        """
        Run one request

        Args:
            request: Request object or its JSON dict

        Returns:
            Report with result payload and certificate

        Raises:
            InputError: malformed request
            DomainError, SizeGuardError: raised by the library
        """
        if isinstance(request, dict):
            try:
                request = Request(**request)
            except ValidationError as e:
                raise InputError(str(e))
        logger.info("Running %s", request.command.value)
        started = time.perf_counter()
        result, certificate = self._handlers[request.command](request)
        elapsed = (time.perf_counter() - started) * 1000
        return Report(
            command=request.command.value,
            request=request.model_dump(mode="json", exclude_none=True, exclude_defaults=True),
            result=result,
            certificate=certificate,
            timing_ms=round(elapsed, 3) if self.timing else None,
        )

    def _ideal(self, request: Request) -> MonomialIdeal:
        if request.ideal is not None:
            return minimalize(request.ideal.exponents(), request.ideal.vars)
        if request.graph is not None:
            clutter = self._clutter(request)
            return cover_ideal(clutter) if request.cover_ideal else edge_ideal(clutter)
        raise InputError(f"{request.command.value} needs --ideal or --graph")

    def _clutter(self, request: Request) -> Clutter:
        if request.graph is not None:
            return Clutter.from_edges(request.graph.vertices, request.graph.edges)
        if request.ideal is not None:
            return clutter_of(self._ideal(request))
        raise InputError(f"{request.command.value} needs --graph or a squarefree --ideal")

    def _graph(self, request: Request):
        if request.graph is None:
            raise InputError(f"{request.command.value} needs --graph")
        return build_graph(request.graph.vertices, request.graph.edges)

    def _matrix(self, request: Request) -> CoveringPolyhedron:
        return CoveringPolyhedron.from_columns(request.matrix.columns, request.matrix.vars)

    def _polyhedron(self, request: Request) -> CoveringPolyhedron:
        if request.matrix is not None:
            return self._matrix(request)
        I = self._ideal(request)
        return symbolic_polyhedron(I) if request.symbolic else covering_polyhedron(I)

    def _filtration(self, request: Request) -> Filtration:
        """
        Matrix input gives its own filtration; ideals give the symbolic
        filtration with --symbolic and closure(I^n) otherwise
        """
        if request.matrix is not None:
            return Filtration(self._matrix(request))
        I = self._ideal(request)
        if request.symbolic:
            return self._symbolic_filtration(request, I)
        return Filtration.integral_closure(I)

    def _symbolic_filtration(self, request: Request, I: MonomialIdeal) -> Filtration:
        if is_squarefree(I):
            return Filtration.symbolic(I)
        return Filtration.isolated_components(I, request.acknowledge_normal_components)

    def _index(self, request: Request) -> int:
        if request.n is None:
            raise InputError(f"{request.command.value} needs --n")
        return request.n

    # ------------------------------------------------------------------
    # Handlers: each returns (result, certificate)
    # ------------------------------------------------------------------

    def _vertices(self, request: Request):
        Q = self._polyhedron(request)
        binding = [vertex_certificate(Q, v) for v in Q.vertices]
        return (
            {"vertices": _rationals(Q.vertices), "integral": is_integral(Q)},
            Certificate(
                kind="vertices",
                data={"columns": _rationals(Q.columns), "binding": binding},
            ),
        )

    def _newton(self, request: Request):
        I = self._ideal(request)
        np = newton_polyhedron(I)
        return (
            {"columns": _rationals(np.columns), "denominators": list(np.denominators)},
            Certificate(
                kind="vertices",
                data={"columns": _ints(I.gens), "vertices": _rationals(np.columns)},
            ),
        )

    def _irreducible_polyhedron(self, request: Request):
        Q = irreducible_polyhedron(self._ideal(request))
        return (
            {"columns": _rationals(Q.columns), "vertices": _rationals(Q.vertices)},
            Certificate(
                kind="vertices",
                data={
                    "columns": _rationals(Q.columns),
                    "binding": [vertex_certificate(Q, v) for v in Q.vertices],
                },
            ),
        )

    def _rees_facets(self, request: Request):
        cone = rees_cone(self._ideal(request))
        return (
            {"facets": _ints(cone.facets)},
            Certificate(kind="facets", data={"generators": _ints(cone.generators)}),
        )

    def _hilbert_basis(self, request: Request):
        if request.matrix is not None or request.symbolic:
            cone, name = simis_cone(self._polyhedron(request)), "simis"
        else:
            cone, name = rees_cone(self._ideal(request)), "rees"
        basis = hilbert_basis(cone)
        return (
            {"cone": name, "elements": _ints(basis)},
            Certificate(kind="cone-points", data={"facets": _ints(cone.facets)}),
        )

    def _rees_generators(self, request: Request):
        F = self._filtration(request)
        generators = rees_filtration_generators(F)
        return (
            {
                "generators": [
                    {"monomial": format_monomial(a), "exponents": list(a), "degree": d}
                    for a, d in generators
                ]
            },
            Certificate(kind="cone-points", data={"facets": _ints(simis_cone(F.Q).facets)}),
        )

    def _ideal_result(self, I: MonomialIdeal) -> Dict[str, Any]:
        return {"gens": _ints(I.gens), "monomials": I.to_strings()}

    def _filtration_ideal(self, F: Filtration, n: int):
        return (
            self._ideal_result(F.ideal(n)),
            Certificate(kind="filtration-ideal", data={"columns": _rationals(F.Q.columns), "n": n}),
        )

    def _power(self, request: Request):
        I = self._ideal(request)
        n = self._index(request)
        P = power(I, n)
        factors = [list(_factorization(I.gens, g, n)) for g in P.gens]
        return (
            self._ideal_result(P),
            Certificate(kind="power", data={"gens": _ints(I.gens), "n": n, "factors": factors}),
        )

    def _symbolic_power(self, request: Request):
        I = self._ideal(request)
        return self._filtration_ideal(self._symbolic_filtration(request, I), self._index(request))

    def _closure_power(self, request: Request):
        I = self._ideal(request)
        return self._filtration_ideal(Filtration.integral_closure(I), self._index(request))

    @staticmethod
    def _normality_data(I: MonomialIdeal) -> tuple:
        verdict = is_normal(I)
        data: Dict[str, Any] = {"gens": _ints(I.gens)}
        if not verdict.normal:
            data["witness"] = list(verdict.witness)
            data["degree"] = verdict.degree
        return verdict, data

    def _normal(self, request: Request):
        verdict, data = self._normality_data(self._ideal(request))
        result: Dict[str, Any] = {"normal": verdict.normal}
        if not verdict.normal:
            result["witness"] = format_monomial(verdict.witness)
            result["degree"] = verdict.degree
        return result, Certificate(kind="normality", data=data)

    def _mfmc(self, request: Request):
        I = edge_ideal(self._clutter(request))
        Q = covering_polyhedron(I)
        integral = is_integral(Q)
        verdict, data = self._normality_data(I)
        data["vertices"] = _rationals(Q.vertices)
        return (
            {"mfmc": integral and verdict.normal, "integral": integral, "normal": verdict.normal},
            Certificate(kind="mfmc", data=data),
        )

    def _np_eq_ip(self, request: Request):
        I = self._ideal(request)
        return (
            {
                "equal": np_equals_ip(I),
                "newton_columns": _rationals(newton_polyhedron(I).columns),
                "irreducible_columns": _rationals(irreducible_polyhedron(I).columns),
            },
            Certificate(kind="np-ip", data={"gens": _ints(I.gens)}),
        )

    def _waldschmidt(self, request: Request):
        Q = self._polyhedron(request)
        solution = waldschmidt_solution(Q)
        return (
            {"value": format_rational(solution.value), "vertex": format_vector(solution.point)},
            Certificate(
                kind="waldschmidt",
                data={"columns": _rationals(Q.columns), "vertex": format_vector(solution.point)},
            ),
        )

    @staticmethod
    def _summary(F: Filtration, N: int) -> Dict[str, Any]:
        period, value = waldschmidt_period(F)
        return {
            "alpha": alpha_sequence(F, N),
            "strict": is_strict(F, N),
            "closure_equals_filtration": closure_equals_filtration(F, N),
            "powers_equal_filtration": powers_equal_filtration(F, N),
            "waldschmidt": format_rational(value),
            "period": period,
        }

    def _filtration_summary(self, request: Request):
        """alpha_F(1..N), strictness and the equality verdicts up to max_n"""
        F = self._filtration(request)
        return (
            self._summary(F, request.max_n),
            Certificate(
                kind="filtration",
                data={"columns": _rationals(F.Q.columns), "max_n": request.max_n},
            ),
        )

    def _resurgence_ic(self, request: Request):
        """
        --matrix gives the filtration of Q(C); --ideal and --graph give the
        symbolic filtration, which --symbolic names explicitly
        """
        if request.matrix is not None:
            if request.symbolic:
                raise InputError("resurgence-ic takes either --symbolic or --matrix")
            F = Filtration(self._matrix(request))
            result = F.ic_resurgence(request.assume_strict)
            Q, route = F.Q, "matrix"
        else:
            I = self._ideal(request)
            route = "symbolic"
            if is_squarefree(I):
                result = ic_resurgence_of_squarefree(I)
                Q = symbolic_polyhedron(I)
            else:
                F = self._symbolic_filtration(request, I)
                result = F.ic_resurgence(request.assume_strict)
                Q = F.Q
        payload: Dict[str, Any] = {
            "value": format_rational(result.value),
            "strictness": result.evidence.value,
            "filtration": route,
        }
        if result.note:
            payload["note"] = result.note
        if request.assume_strict and result.evidence is not StrictnessEvidence.USER_OVERRIDE:
            payload["assume_strict"] = f"not needed: strictness holds by {result.evidence.value}"
        if result.vertex is None:
            return payload, Certificate(kind="height-one", data={"gens": _ints(I.gens)})
        payload["vertex"] = format_vector(result.vertex)
        payload["witness_facet"] = list(result.witness_facet)
        payload["per_column"] = [format_rational(v) for v in result.per_column]
        certificate = Certificate(
            kind="resurgence",
            data={
                "columns": _rationals(Q.columns),
                "witness_facet": list(result.witness_facet),
                "vertex": format_vector(result.vertex),
            },
        )
        return payload, certificate

    @staticmethod
    def _graph_data(request: Request) -> Dict[str, Any]:
        return {"vertices": request.graph.vertices, "edges": request.graph.edges}

    def _graph_invariants(self, request: Request):
        graph = self._graph(request)
        invariants = graph_invariants(graph)
        return (
            {
                "omega": invariants.omega,
                "alpha0": invariants.alpha0,
                "perfect": invariants.perfect,
                "bipartite": invariants.bipartite,
                "clique": list(invariants.clique),
                "cover": list(invariants.cover),
                "minimal_covers": _ints(minimal_vertex_covers(graph)),
            },
            Certificate(kind="graph-invariants", data=self._graph_data(request)),
        )

    def _cover_bound(self, request: Request):
        bound = cover_resurgence_bound(self._graph(request))
        return (
            {"value": format_rational(bound.value), "exact": bound.exact, "clique": list(bound.clique)},
            Certificate(kind="cover-bound", data=self._graph_data(request)),
        )

    def _edge_bound(self, request: Request):
        bound = edge_resurgence_lower_bound(self._graph(request), request.raise_cap)
        return (
            {"value": format_rational(bound.value), "subgraph": list(bound.subgraph)},
            Certificate(
                kind="edge-bound",
                data={**self._graph_data(request), "raise_cap": request.raise_cap},
            ),
        )

    def _decompose(self, request: Request):
        I = self._ideal(request)
        components = irreducible_decomposition(I)
        return (
            {"components": [list(q.alpha) for q in components]},
            Certificate(kind="decomposition", data={"gens": _ints(I.gens)}),
        )

    def _alexander_dual(self, request: Request):
        I = self._ideal(request)
        return (
            self._ideal_result(alexander_dual(I)),
            Certificate(kind="alexander-dual", data={"gens": _ints(I.gens)}),
        )

    # ------------------------------------------------------------------
    # Appendix replay
    # ------------------------------------------------------------------

    def load_fixture(self, name: str) -> Dict[str, Any]:
        return load_json_file(self.data_dir / "fixtures" / name)

    def appendix_artifacts(self, which: Union[str, AppendixProcedure]) -> Dict[str, Any]:
        """Compute the artifacts one appendix procedure prints"""
        which = AppendixProcedure(which)
        kind, fixture = APPENDIX_FIXTURES[which]
        inputs = {kind: self.load_fixture(fixture)}

        if which is AppendixProcedure.A1:
            vertices = self.run({"command": "vertices", **inputs}).result
            components = self.run({"command": "decompose", **inputs}).result
            return {"vertices": vertices["vertices"], "components": components["components"]}
        if which is AppendixProcedure.A2:
            basis = self.run({"command": "hilbert-basis", **inputs}).result
            generators = self.run({"command": "rees-generators", **inputs}).result
            value = self.run({"command": "waldschmidt", **inputs}).result
            return {
                "hilbert_basis": basis["elements"],
                "generators": [[g["monomial"], g["degree"]] for g in generators["generators"]],
                "waldschmidt": value["value"],
            }
        if which is AppendixProcedure.A3:
            facets = self.run({"command": "rees-facets", "edge_ideal": True, **inputs}).result
            rho = self.run({"command": "resurgence-ic", "edge_ideal": True, **inputs}).result
            return {
                "facets": facets["facets"],
                "value": rho["value"],
                "vertex": rho["vertex"],
                "witness_facet": rho["witness_facet"],
            }
        edge = self.run({"command": "resurgence-ic", "edge_ideal": True, **inputs}).result
        cover = self.run({"command": "resurgence-ic", "cover_ideal": True, **inputs}).result
        normal = self.run({"command": "normal", "edge_ideal": True, **inputs}).result
        return {
            "edge_ideal": edge["value"],
            "cover_ideal": cover["value"],
            "normal": normal["normal"],
            "witness": normal.get("witness"),
            "degree": normal.get("degree"),
        }

    def replay_appendix(self, which: Union[str, AppendixProcedure]) -> Report:
        """
        Recompute an appendix procedure and diff it against its golden file

        Raises:
            ConsistencyError: listing every key that differs
        """
        which = AppendixProcedure(which)
        artifacts = self.appendix_artifacts(which)
        golden = load_json_file(self.data_dir / "golden" / f"{which.value}.json")
        differing = sorted(key for key in set(golden) | set(artifacts) if golden.get(key) != artifacts.get(key))
        if differing:
            details = "; ".join(
                f"{key}: expected {golden.get(key)!r}, got {artifacts.get(key)!r}" for key in differing
            )
            raise ConsistencyError(f"Replay {which.value} differs from golden file: {details}")
        return Report(command="replay", request={"which": which.value}, result=artifacts)

    def write_golden(self, which: Union[str, AppendixProcedure]) -> Path:
        """Regenerate one golden file from the current implementation"""
        which = AppendixProcedure(which)
        path = self.data_dir / "golden" / f"{which.value}.json"
        save_json_file(self.appendix_artifacts(which), path)
        return path

    # ------------------------------------------------------------------
    # Certificates
    # ------------------------------------------------------------------

    def verify(self, report: Union[Report, Dict[str, Any]]) -> List[str]:
        """
        Re-validate a report's certificate without the solver that produced it

        Returns:
            List of problems (empty if the certificate checks out)
        """
        if isinstance(report, Report):
            report = report.payload()
        certificate = report.get("certificate")
        if not certificate:
            return [f"{report.get('command', 'report')} report carries no certificate"]
        result = report.get("result", {})
        checker = {
            "vertices": self._verify_vertices,
            "facets": self._verify_facets,
            "cone-points": self._verify_cone_points,
            "normality": self._verify_normality,
            "mfmc": self._verify_mfmc,
            "np-ip": self._verify_np_ip,
            "waldschmidt": self._verify_waldschmidt,
            "filtration": self._verify_filtration,
            "resurgence": self._verify_resurgence,
            "height-one": self._verify_height_one,
            "power": self._verify_power,
            "filtration-ideal": self._verify_filtration_ideal,
            "decomposition": self._verify_decomposition,
            "alexander-dual": self._verify_alexander_dual,
            "graph-invariants": self._verify_graph_invariants,
            "cover-bound": self._verify_cover_bound,
            "edge-bound": self._verify_edge_bound,
        }.get(certificate["kind"])
        if checker is None:
            return [f"Unknown certificate kind {certificate['kind']!r}"]
        return checker(certificate["data"], result)

    @staticmethod
    def _verify_vertices(data, result) -> List[str]:
        Q = CoveringPolyhedron.from_columns(data["columns"])
        problems = []
        points = data.get("vertices") or result.get("vertices") or []
        for point in points:
            if vertex_certificate(Q, point) is None:
                problems.append(f"{point} is not a vertex of Q(C)")
        return problems

    @staticmethod
    def _verify_facets(data, result) -> List[str]:
        generators = data["generators"]
        dim = len(generators[0])
        problems = []
        for facet in result.get("facets", []):
            if tuple(primitive(facet)) != tuple(facet):
                problems.append(f"{facet} is not primitive")
            values = [sum(a * b for a, b in zip(facet, g)) for g in generators]
            if any(v < 0 for v in values):
                problems.append(f"{facet} cuts off a generator")
            tight = [g for g, v in zip(generators, values) if v == 0]
            if rank(tight) != dim - 1:
                problems.append(f"{facet} is not a facet")
        return problems

    @staticmethod
    def _verify_cone_points(data, result) -> List[str]:
        facets = data["facets"]
        points = result.get("elements") or [
            g["exponents"] + [g["degree"]] for g in result.get("generators", [])
        ]
        return [
            f"{p} lies outside the cone"
            for p in points
            if any(sum(a * b for a, b in zip(f, p)) < 0 for f in facets)
        ]

    @staticmethod
    def _verify_normality(data, result) -> List[str]:
        """A witness must lie in closure(I^d) but not in I^d; without one, I must be normal"""
        I = minimalize([tuple(g) for g in data["gens"]])
        if "witness" not in data:
            if result.get("normal") is not True:
                return ["certificate claims normality but the result does not"]
            if not is_normal(I).normal:
                return ["ideal is not normal"]
            return []
        witness, degree = tuple(data["witness"]), data["degree"]
        problems = []
        if result.get("normal") is not False:
            problems.append("certificate carries a witness but the result claims normality")
        closure = newton_polyhedron(I).as_polyhedron()
        if not contains_point(closure, [Fraction(a, degree) for a in witness]):
            problems.append(f"witness is not in the closure of I^{degree}")
        if contains_monomial(power(I, degree), witness):
            problems.append(f"witness lies in I^{degree}")
        return problems

    def _verify_mfmc(self, data, result) -> List[str]:
        I = minimalize([tuple(g) for g in data["gens"]])
        Q = covering_polyhedron(I)
        listed = [qvector(v) for v in data["vertices"]]
        problems = [
            f"{format_vector(v)} is not a vertex of Q(I)"
            for v in listed
            if vertex_certificate(Q, v) is None
        ]
        if len(set(listed)) != len(enumerate_vertices(Q)):
            problems.append("vertex list of Q(I) is incomplete")
        integral = all(is_integral_vector(v) for v in listed)
        if result.get("integral") != integral:
            problems.append("integrality differs from the listed vertices")
        problems += self._verify_normality(data, result)
        if result.get("mfmc") != (integral and result.get("normal")):
            problems.append("mfmc is not integral and normal")
        return problems

    @staticmethod
    def _verify_np_ip(data, result) -> List[str]:
        I = minimalize([tuple(g) for g in data["gens"]])
        problems = []
        newton = result.get("newton_columns", [])
        irreducible = result.get("irreducible_columns", [])
        if newton != _rationals(newton_polyhedron(I).columns):
            problems.append("Newton columns differ from the vertices of Q(I)")
        reciprocals = sorted(_rationals(q.reciprocal for q in irreducible_decomposition(I)))
        if sorted(irreducible) != reciprocals:
            problems.append("irreducible columns differ from the component reciprocals")
        if newton and irreducible:
            equal = poly_equal(
                CoveringPolyhedron.from_columns(newton),
                CoveringPolyhedron.from_columns(irreducible),
            )
            if result.get("equal") != equal:
                problems.append("equality verdict differs from the listed columns")
        return problems

    @staticmethod
    def _verify_waldschmidt(data, result) -> List[str]:
        Q = CoveringPolyhedron.from_columns(data["columns"])
        vertex = qvector(data["vertex"])
        value = sum(vertex)
        problems = []
        if vertex_certificate(Q, vertex) is None:
            problems.append("reported point is not a vertex of Q(C)")
        if format_rational(value) != result.get("value"):
            problems.append("value differs from the coordinate sum of the vertex")
        if min(sum(v) for v in enumerate_vertices(Q)) != value:
            problems.append("some vertex has a smaller coordinate sum")
        return problems

    def _verify_filtration(self, data, result) -> List[str]:
        F = Filtration(CoveringPolyhedron.from_columns(data["columns"]))
        expected = self._summary(F, data["max_n"])
        return [
            f"{key}: expected {expected[key]!r}, got {result.get(key)!r}"
            for key in sorted(expected)
            if result.get(key) != expected[key]
        ]

    @staticmethod
    def _verify_resurgence(data, result) -> List[str]:
        Q = CoveringPolyhedron.from_columns(data["columns"])
        facet = data["witness_facet"]
        scaled, n = facet[:-1], -facet[-1]
        vertex = qvector(data["vertex"])
        lp = resurgence_program(Q, scaled, n)
        problems = []
        if not lp.feasible(vertex):
            problems.append("vertex violates the column LP")
        elif rank([lp.constraints[k].coefficients for k in lp.binding(vertex)]) != lp.num_vars:
            problems.append("vertex has no full-rank binding set")
        s = Q.num_vars
        if format_rational(vertex[s]) != result.get("value"):
            problems.append("objective at the vertex differs from the reported value")
        point = charnes_cooper_point(vertex, s)
        if point is not None and not fractional_feasible(Q, scaled, n, point):
            problems.append("rescaled point is infeasible for the fractional program")
        return problems

    @staticmethod
    def _verify_height_one(data, result) -> List[str]:
        """Some variable divides every generator of a squarefree ideal"""
        gens = [tuple(g) for g in data["gens"]]
        problems = []
        if any(e > 1 for g in gens for e in g):
            problems.append("ideal is not squarefree")
        if not any(all(g[i] for g in gens) for i in range(len(gens[0]))):
            problems.append("no variable divides every generator")
        if result.get("value") != "1":
            problems.append("height-one ideals have resurgence 1")
        return problems

    @staticmethod
    def _verify_power(data, result) -> List[str]:
        gens = [tuple(g) for g in data["gens"]]
        n = data["n"]
        listed = [tuple(g) for g in result.get("gens", [])]
        problems = []
        if len(data["factors"]) != len(listed):
            problems.append("one factorization per generator is required")
        for g, factors in zip(listed, data["factors"]):
            valid = len(factors) == n and all(0 <= k < len(gens) for k in factors)
            if not valid or tuple(sum(gens[k][i] for k in factors) for i in range(len(g))) != g:
                problems.append(f"{g} is not a product of {n} generators")
        if listed and minimalize(listed).gens != tuple(sorted(listed)):
            problems.append("generators are not minimal")
        if power(minimalize(gens), n).gens != tuple(sorted(listed)):
            problems.append(f"generators differ from I^{n}")
        return problems

    @staticmethod
    def _verify_filtration_ideal(data, result) -> List[str]:
        """Members satisfy <a, c> >= n for every column; lowering any exponent leaves I_n"""
        Q = CoveringPolyhedron.from_columns(data["columns"])
        n = data["n"]
        listed = [tuple(g) for g in result.get("gens", [])]

        def member(a) -> bool:
            return all(dot(a, c) >= n for c in Q.columns)

        problems = []
        for g in listed:
            if not member(g):
                problems.append(f"{g} is not in I_{n}")
            if any(member(_lowered(g, i)) for i in range(len(g)) if g[i]):
                problems.append(f"{g} is not a minimal generator of I_{n}")
        if Filtration(Q).ideal(n).gens != tuple(sorted(listed)):
            problems.append(f"generators differ from I_{n}")
        return problems

    @staticmethod
    def _verify_decomposition(data, result) -> List[str]:
        I = minimalize([tuple(g) for g in data["gens"]])
        components = [IrreducibleComponent(tuple(a)).ideal for a in result.get("components", [])]
        if not components:
            return ["no components"]
        problems = []
        if reduce(intersect, components) != I:
            problems.append("components do not intersect to I")
        for k, alpha in enumerate(result["components"]):
            others = components[:k] + components[k + 1:]
            if others and reduce(intersect, others) == I:
                problems.append(f"component {alpha} is redundant")
        return problems

    @staticmethod
    def _verify_alexander_dual(data, result) -> List[str]:
        """Every dual generator is a minimal transversal of the generator supports"""
        gens = [tuple(g) for g in data["gens"]]
        listed = [tuple(g) for g in result.get("gens", [])]

        def transversal(h) -> bool:
            return all(any(a and b for a, b in zip(g, h)) for g in gens)

        problems = []
        for h in listed:
            if any(e > 1 for e in h) or not transversal(h):
                problems.append(f"{h} does not meet every generator")
            elif any(transversal(_lowered(h, i)) for i in range(len(h)) if h[i]):
                problems.append(f"{h} is not minimal")
        if alexander_dual(minimalize(gens)).gens != tuple(sorted(listed)):
            problems.append("generators differ from the Alexander dual")
        return problems

    @staticmethod
    def _verify_graph_invariants(data, result) -> List[str]:
        graph = build_graph(data["vertices"], data["edges"])
        problems = []
        clique = result.get("clique", [])
        if len(clique) != result.get("omega") or not _is_clique(graph, clique):
            problems.append(f"{clique} is not a clique of size omega")
        if clique_number(graph) != result.get("omega"):
            problems.append("a larger clique exists")
        cover = result.get("cover", [])
        if len(cover) != result.get("alpha0") or not _is_cover(graph, cover):
            problems.append(f"{cover} is not a vertex cover of size alpha0")
        if covering_number(graph) != result.get("alpha0"):
            problems.append("a smaller vertex cover exists")
        covers = result.get("minimal_covers", [])
        for c in covers:
            removable = any(_is_cover(graph, [v for v in c if v != u]) for u in c)
            if not _is_cover(graph, c) or removable:
                problems.append(f"{c} is not a minimal vertex cover")
        if covers != _ints(minimal_vertex_covers(graph)):
            problems.append("minimal vertex cover list is incomplete")
        if result.get("perfect") != is_perfect(graph):
            problems.append("perfectness differs")
        if result.get("bipartite") != is_bipartite(graph):
            problems.append("bipartiteness differs")
        return problems

    @staticmethod
    def _verify_cover_bound(data, result) -> List[str]:
        graph = build_graph(data["vertices"], data["edges"])
        clique = result.get("clique", [])
        omega = len(clique)
        problems = []
        if not _is_clique(graph, clique) or omega != clique_number(graph):
            problems.append(f"{clique} is not a maximum clique")
        elif result.get("value") != format_rational(Fraction(2 * (omega - 1), omega)):
            problems.append("value is not 2(omega - 1)/omega")
        if result.get("exact") != is_perfect(graph):
            problems.append("exactness differs from perfectness")
        return problems

    @staticmethod
    def _verify_edge_bound(data, result) -> List[str]:
        graph = build_graph(data["vertices"], data["edges"])
        subgraph = result.get("subgraph", [])
        problems = []
        if not subgraph or not set(subgraph) <= set(graph.nodes):
            return [f"{subgraph} is not a vertex set of the graph"]
        value = Fraction(2 * covering_number(graph.subgraph(subgraph)), len(subgraph))
        if format_rational(value) != result.get("value"):
            problems.append("value differs from 2 alpha0(H)/|V(H)| on the reported subgraph")
        if edge_resurgence_lower_bound(graph, data.get("raise_cap", False)).value != value:
            problems.append("another induced subgraph gives a larger bound")
        return problems

    # ------------------------------------------------------------------
    # Export
    # ------------------------------------------------------------------

    def export_report(self, report: Report, file_path: str, format: str = "json") -> None:
        """
        Export a report to file

        Args:
            report: Report from run or replay_appendix
            file_path: Output path
            format: "json" or "markdown"
        """
        if format.lower() == "json":
            path = Path(file_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(dump_json(report.payload()), encoding="utf-8")
        elif format.lower() == "markdown":
            self._export_markdown_report(report, file_path)
        else:
            raise InputError("Format not supported. Only 'json' and 'markdown' are supported")
        logger.info("Exported %s report to %s", report.command, file_path)

    def _export_markdown_report(self, report: Report, file_path: str) -> None:
        """Export report as Markdown"""
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(f"# polycover `{report.command}`\n\n")
            f.write("## Request\n\n")
            for key, value in report.request.items():
                f.write(f"- **{key}:** `{value}`\n")
            f.write("\n## Result\n\n")
            for key, value in report.result.items():
                if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
                    f.write(f"**{key}:**\n\n")
                    for item in value:
                        f.write(f"- `{item}`\n")
                    f.write("\n")
                else:
                    f.write(f"- **{key}:** `{value}`\n")
            if report.certificate:
                f.write(f"\n## Certificate\n\nKind: `{report.certificate.kind}`\n")
