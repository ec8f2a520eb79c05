"""Command-line front end.

Subcommands parse matrices, digraphs and permutations, dispatch the
library computations, and emit deterministic reports: identical inputs
produce byte-identical output (all numbers are decimal strings, key order
is fixed, and timing goes to stderr only).

Exit codes: 0 success, 2 parse error, 3 guard violation, 4 oracle or
validation mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import GuardError, OracleMismatchError, ParseError
from .exact_core import RatMatrix, matrix_from_csv_text, matrix_from_json_obj
from .oriented_matroid import (
    CircuitSet,
    Digraph,
    circuits_from_digraph,
    circuits_from_matrix,
    cocircuits_from_digraph,
    cocircuits_from_matrix,
    signed_sets_orthogonal,
    validate_circuit_axioms,
)
from .polytope_engine import (
    DEFAULT_FACE_DIM_LIMIT,
    VPolytope,
    dimension,
    ehrhart,
    f_vector,
    face_lattice,
    facets,
    fixed_subpolytope,
    lattice_count,
    omc_polytope,
    polar_dual,
)
from .cycle_zonotope_family import (
    build_family_polytope,
    eulerian_polynomial,
    f_polynomial,
    face_lattice_poset,
    family_ehrhart,
    family_labels,
    sep_complete_graph,
    u_vector,
)
from .equivariant import (
    Permutation,
    action_matrix,
    fixed_ehrhart,
    fixed_polytope,
    hstar_series,
    symmetric_group,
)

__all__ = ["main"]


@dataclass
class RunReport:
    """One command's inputs, outputs and oracle results; timing stays out
    of the serialized form so reports are byte-for-byte reproducible."""

    command: str
    inputs: dict
    outputs: dict
    oracle_checks: dict | None
    elapsed: float

    def json_obj(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "oracle_checks": self.oracle_checks,
        }


def _emit(report: RunReport, as_json: bool) -> None:
    obj = report.json_obj()
    if as_json:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(f"command: {report.command}\n")
        for section in ("inputs", "outputs"):
            sys.stdout.write(f"{section}:\n")
            for key, value in obj[section].items():
                sys.stdout.write(f"  {key}: {json.dumps(value)}\n")
        if obj["oracle_checks"] is not None:
            sys.stdout.write("oracle_checks:\n")
            for key, value in obj["oracle_checks"].items():
                sys.stdout.write(f"  {key}: {json.dumps(value)}\n")
    sys.stderr.write(f"# elapsed: {report.elapsed:.3f}s\n")


def _load_input(path_text: str) -> tuple[str, RatMatrix | Digraph, dict]:
    """Read a matrix (.json array or .csv) or digraph (.json object)."""
    path = Path(path_text)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path_text!r}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        matrix = matrix_from_csv_text(text)
        echo = {"file": path.name, "kind": "matrix",
                "matrix": [[str(x) for x in matrix.row(i)] for i in range(matrix.rows)]}
        return "matrix", matrix, echo
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path_text!r}: {exc}") from exc
    if isinstance(obj, list):
        matrix = matrix_from_json_obj(obj)
        echo = {"file": path.name, "kind": "matrix",
                "matrix": [[str(x) for x in matrix.row(i)] for i in range(matrix.rows)]}
        return "matrix", matrix, echo
    digraph = Digraph.from_json_obj(obj)
    echo = {"file": path.name, "kind": "digraph",
            "nodes": digraph.node_count, "edges": [list(e) for e in digraph.edges]}
    return "digraph", digraph, echo


def _circuit_set(kind: str, data, dual: bool) -> CircuitSet:
    if kind == "matrix":
        return cocircuits_from_matrix(data) if dual else circuits_from_matrix(data)
    return cocircuits_from_digraph(data) if dual else circuits_from_digraph(data)


def _strs(values) -> list[str]:
    return [str(v) for v in values]


def cmd_circuits(args) -> RunReport:
    start = time.perf_counter()
    kind, data, echo = _load_input(args.input)
    echo["dual"] = args.dual
    circuits = _circuit_set(kind, data, args.dual)
    report = validate_circuit_axioms(circuits)
    outputs = {
        "ground_size": str(circuits.ground_size),
        "count": str(len(circuits)),
        "sign_vectors": [c.sign_string() for c in circuits],
        "set_notation": [c.set_notation() for c in circuits],
        "axioms": "pass" if report.ok else f"fail {report.axiom}: {report.detail}",
    }
    checks = None
    if args.verify:
        checks = {}
        if kind == "digraph":
            via_matrix = _circuit_set("matrix", data.incidence_matrix(), args.dual)
            agree = via_matrix == circuits
            checks["digraph_vs_matrix"] = "pass" if agree else "fail"
            if not agree:
                raise OracleMismatchError("digraph and matrix routes disagree")
        else:
            other = _circuit_set(kind, data, not args.dual)
            ortho = all(signed_sets_orthogonal(x, y) for x in circuits for y in other)
            checks["circuit_cocircuit_orthogonality"] = "pass" if ortho else "fail"
            if not ortho:
                raise OracleMismatchError("a circuit/cocircuit pair is not orthogonal")
    if not report.ok:
        raise OracleMismatchError(f"circuit axioms failed: {report.axiom} {report.detail}")
    return RunReport("circuits", echo, outputs, checks, time.perf_counter() - start)


def _face_dim_limit() -> int:
    raw = os.environ.get("OMCLAB_MAX_DIM")
    if raw is None:
        return DEFAULT_FACE_DIM_LIMIT
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"OMCLAB_MAX_DIM must be an integer, got {raw!r}") from exc


def _rasterize_count(P: VPolytope, t: int) -> int:
    """Vertex-free scan oracle: test every integer point of the ambient
    bounding box against the halfspace description."""
    hrep = facets(P)
    lows, highs = [], []
    for j in range(P.ambient_dim):
        vals = [v[j] for v in P.vertices]
        lows.append(int(t * min(vals)) - 1)
        highs.append(int(t * max(vals)) + 1)
    from itertools import product as _product
    count = 0
    for point in _product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(sum(a * x for a, x in zip(eq, point)) == t * b for eq, b in hrep.equations) and \
           all(sum(a * x for a, x in zip(iq, point)) <= t * b for iq, b in hrep.inequalities):
            count += 1
    return count


def cmd_polytope(args) -> RunReport:
    start = time.perf_counter()
    kind, data, echo = _load_input(args.input)
    echo["dual"] = args.dual
    echo["what"] = args.what
    circuits = _circuit_set(kind, data, args.dual)
    P = omc_polytope(circuits)
    outputs: dict = {
        "vertex_count": str(len(P.vertices)),
        "polytope": {"dim": str(dimension(P)),
                     "vertices": [_strs(v) for v in P.vertices]},
    }
    checks: dict | None = {} if args.verify else None

    if args.what == "dim":
        dim = dimension(P)
        outputs["dim"] = str(dim)
        if args.verify and kind == "digraph":
            k = len(data.connected_components())
            expected = (data.node_count - k) if args.dual else (
                data.edge_count - data.node_count + k)
            checks["graph_dimension_formula"] = "pass" if dim == expected else "fail"
            if dim != expected:
                raise OracleMismatchError(
                    f"dimension {dim} does not match the graph formula {expected}")
    elif args.what == "facets":
        hrep = facets(P)
        outputs["facet_count"] = str(len(hrep.inequalities))
        outputs["ineqs"] = [[*_strs(a), str(b)] for a, b in hrep.inequalities]
        outputs["eqs"] = [[*_strs(a), str(b)] for a, b in hrep.equations]
        if args.verify:
            inside = all(hrep.contains(v) for v in P.vertices)
            big = all(
                sum(1 for v in P.vertices if sum(x * y for x, y in zip(a, v)) == b)
                >= dimension(P)
                for a, b in hrep.inequalities)
            checks["vertices_satisfy_hrep"] = "pass" if inside else "fail"
            checks["facets_have_enough_tight_vertices"] = "pass" if big else "fail"
            if not (inside and big):
                raise OracleMismatchError("facet description failed verification")
    elif args.what == "faces":
        fv = f_vector(P, _face_dim_limit())
        outputs["f_vector"] = _strs(fv)
        if args.verify:
            euler = sum((-1) ** i * fi for i, fi in enumerate(fv))
            checks["euler_alternating_sum_is_1"] = "pass" if euler == 1 else "fail"
            if euler != 1:
                raise OracleMismatchError("face lattice fails the Euler identity")
    elif args.what in ("ehrhart", "hstar"):
        data_ehr = ehrhart(P)
        if args.what == "ehrhart":
            outputs["counts"] = _strs(data_ehr.counts)
            outputs["polynomial"] = _strs(data_ehr.polynomial)
        outputs["h_star"] = _strs(data_ehr.h_star)
        if args.verify:
            agree = all(data_ehr.evaluate(t) == c for t, c in enumerate(data_ehr.counts))
            checks["polynomial_matches_counts"] = "pass" if agree else "fail"
            if P.ambient_dim <= 6:
                t = 1 if dimension(P) > 3 else 2
                scan = _rasterize_count(P, t)
                direct = lattice_count(P, t)
                checks[f"box_scan_t{t}"] = "pass" if scan == direct else "fail"
                agree = agree and scan == direct
            if not agree:
                raise OracleMismatchError("Ehrhart data failed verification")
    elif args.what == "count":
        t = args.t if args.t is not None else 1
        outputs["t"] = str(t)
        outputs["count"] = str(lattice_count(P, t))
        if args.verify and P.ambient_dim <= 6:
            scan = _rasterize_count(P, t)
            checks["box_scan"] = "pass" if scan == int(outputs["count"]) else "fail"
            if scan != int(outputs["count"]):
                raise OracleMismatchError("lattice count disagrees with box scan")
    return RunReport("polytope", echo, outputs, checks, time.perf_counter() - start)


def cmd_family(args) -> RunReport:
    start = time.perf_counter()
    n = args.n
    if not 2 <= n <= 8:
        raise GuardError("family closed forms are guarded to 2 <= n <= 8")
    if args.verify and n > 5:
        raise GuardError("family oracle cross-checks are guarded to n <= 5")
    echo = {"n": n, "what": args.what}
    outputs: dict = {}
    checks: dict | None = {} if args.verify else None

    if args.what == "vertices":
        labels = family_labels(n)
        P = build_family_polytope(n)
        outputs["labels"] = ["".join(str(a) for a in sorted(lb.members)) for lb in labels]
        outputs["vertices"] = [_strs(u_vector(n, lb.members)) for lb in labels]
        if args.verify:
            ok = len(P.vertices) == 2 ** n - 2
            checks["vertex_count_2^n-2"] = "pass" if ok else "fail"
            if not ok:
                raise OracleMismatchError("vertex count mismatch")
    elif args.what == "fpoly":
        poly = f_polynomial(n)
        outputs["f_poly"] = _strs(poly.coeffs)
        if args.verify:
            fv = f_vector(build_family_polytope(n))
            ok = tuple(poly.coeffs) == fv
            checks["matches_generic_face_lattice"] = "pass" if ok else "fail"
            if not ok:
                raise OracleMismatchError(
                    f"closed-form f-polynomial {poly.coeffs} != generic f-vector {fv}")
    elif args.what == "ehrhart":
        poly = family_ehrhart(n)
        outputs["ehrhart"] = _strs(poly.coeffs)
        outputs["h_star"] = _strs(eulerian_polynomial(n).coeffs)
        if args.verify:
            data_ehr = ehrhart(build_family_polytope(n))
            ok = (tuple(Fraction(c) for c in poly.coeffs) == data_ehr.polynomial
                  and tuple(eulerian_polynomial(n).coeffs) == data_ehr.h_star)
            checks["matches_generic_ehrhart"] = "pass" if ok else "fail"
            if not ok:
                raise OracleMismatchError("closed-form Ehrhart data disagrees with engine")
    elif args.what == "faces":
        poset = face_lattice_poset(n)
        by_dim: dict[int, int] = {}
        for fl in poset:
            by_dim[fl.dim] = by_dim.get(fl.dim, 0) + 1
        outputs["proper_face_count"] = str(len(poset))
        outputs["faces_by_dim"] = _strs(by_dim[i] for i in sorted(by_dim))
        outputs["face_labels"] = [
            {"S": sorted(fl.S), "T": sorted(fl.T)} for fl in poset]
        if args.verify:
            fv = f_vector(build_family_polytope(n))
            ok = all(by_dim.get(i, 0) == fv[i] for i in range(len(fv) - 1))
            checks["matches_generic_face_lattice"] = "pass" if ok else "fail"
            if not ok:
                raise OracleMismatchError("face poset disagrees with generic face lattice")
    elif args.what == "sep-dual-check":
        dual = polar_dual(sep_complete_graph(n))
        family = build_family_polytope(n)
        ok = dual.vertex_set == family.vertex_set
        outputs["sep_dual_equals_family"] = "pass" if ok else "fail"
        if not ok:
            raise OracleMismatchError(
                "polar dual of the symmetric edge polytope does not match")
    return RunReport("family", echo, outputs, checks, time.perf_counter() - start)


def _hstar_row(sigma: Permutation) -> dict:
    series = hstar_series(sigma)
    return {
        "cycle_type": [str(x) for x in sigma.cycle_type()],
        "fixed_ehrhart": _strs(fixed_ehrhart(sigma).coeffs),
        "chi_series_numerator": _strs(series.numerator.coeffs),
        "chi_series_denominator_cycle_lengths": _strs(sigma.cycle_type()),
        "h_star_series": _strs(series.numerator.coeffs),
    }


def cmd_equivariant(args) -> RunReport:
    start = time.perf_counter()
    n = args.n
    if n < 2:
        raise GuardError("need n >= 2")
    echo: dict = {"n": n}
    outputs: dict = {}
    checks: dict | None = {} if args.verify else None

    def verify_sigma(sigma: Permutation) -> bool:
        family = build_family_polytope(n)
        generic = fixed_subpolytope(family, action_matrix(sigma))
        return fixed_polytope(sigma).vertex_set == generic.vertex_set

    if args.all:
        if n > 6:
            raise GuardError("the full-group sweep is guarded to n <= 6")
        if args.verify and n > 4:
            raise GuardError("the full-group fixed-polytope oracle is guarded to n <= 4")
        echo["sigma"] = "--all"
        rows: dict[tuple[int, ...], dict] = {}
        for sigma in symmetric_group(n):
            ctype = sigma.cycle_type()
            if ctype not in rows:
                rows[ctype] = _hstar_row(sigma)
            elif args.verify:
                again = _hstar_row(sigma)
                if again != rows[ctype]:
                    raise OracleMismatchError(
                        f"H*-series is not a class function at {sigma.label()}")
            if args.verify and not verify_sigma(sigma):
                raise OracleMismatchError(
                    f"fixed polytope oracle mismatch at {sigma.label()}")
        ordered = sorted(rows.items(), key=lambda kv: (-len(kv[0]), kv[0]))
        outputs["rows"] = [row for _, row in ordered]
        if args.verify:
            checks["class_function"] = "pass"
            checks["fixed_polytope_oracle"] = "pass"
    else:
        if args.sigma is None:
            raise ParseError("provide a permutation with --sigma or use --all")
        sigma = Permutation.parse(args.sigma, n)
        echo["sigma"] = args.sigma
        outputs.update(_hstar_row(sigma))
        outputs["fixed_vertex_count"] = str(len(fixed_polytope(sigma).vertices))
        if args.verify:
            ok = verify_sigma(sigma)
            checks["fixed_polytope_oracle"] = "pass" if ok else "fail"
            if not ok:
                raise OracleMismatchError("fixed polytope oracle mismatch")
    return RunReport("equivariant", echo, outputs, checks, time.perf_counter() - start)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omclab",
        description="Exact computations with oriented matroid circuit polytopes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--verify", action="store_true",
                       help="run the matching brute-force oracle; exit 4 on mismatch")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")

    p = sub.add_parser("circuits", help="enumerate circuits or cocircuits")
    p.add_argument("input", help="matrix (.json array / .csv) or digraph (.json object)")
    p.add_argument("--dual", action="store_true", help="enumerate cocircuits instead")
    common(p)
    p.set_defaults(func=cmd_circuits)

    p = sub.add_parser("polytope", help="analyze the circuit polytope of an input")
    p.add_argument("input")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--what", default="dim",
                   choices=["dim", "facets", "faces", "ehrhart", "hstar", "count"])
    p.add_argument("--t", type=int, default=None, help="dilation factor for --what count")
    common(p)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("family", help="closed forms for the complete-graph family")
    p.add_argument("n", type=int)
    p.add_argument("--what", default="ehrhart",
                   choices=["vertices", "fpoly", "ehrhart", "faces", "sep-dual-check"])
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("equivariant", help="symmetric-group data for the family")
    p.add_argument("n", type=int)
    p.add_argument("--sigma", default=None,
                   help="permutation, cycle notation '(2 4)' or one-line '1 4 3 2'")
    p.add_argument("--all", action="store_true", help="sweep the whole group by cycle type")
    common(p)
    p.set_defaults(func=cmd_equivariant)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except GuardError as exc:
        sys.stderr.write(f"guard violation: {exc}\n")
        return 3
    except OracleMismatchError as exc:
        sys.stderr.write(f"mismatch: {exc}\n")
        return 4
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 2
    _emit(report, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
