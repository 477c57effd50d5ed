"""Command-line front end: JSON job documents in, canonical JSON reports out.

A job is ``{"command": NAME, "payload": {...}}``; the payload fields may also
sit at the top level next to ``command``.  A batch is ``{"jobs": [job, ...]}``.

Exit status:

==  =========================================================
0   success (for ``--suite``: every criterion passed)
1   the job document could not be read or parsed as JSON
2   bad command-line usage
3   the document violates the job schema
4   a mathematical precondition failed inside the library
5   ``--suite`` ran but at least one criterion failed
==  =========================================================
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

import jsonschema

from . import __version__
from . import io as jio
from .automorphism import (
    DEFAULT_TRUNCATION,
    aut_cone,
    aut_inverse,
    aut_restrict_to_ray,
    aut_support,
    exp_factorize,
    is_poisson_hom,
    rigidity_check,
)
from .cluster import (
    ExchangeMatrix,
    find_compatible_lambda,
    is_compatible,
    mutate_b,
    mutate_lambda,
    toric_lattice,
)
from .errors import PreconditionError
from .laurent import LaurentPoly, poly_bracket
from .lattice import Bicharacter, radical
from .rootsys import (
    CartanData,
    m_coefficients,
    positive_roots_convex,
    tau_involution,
    w0_reduced_word,
)
from .schubert import SchubertTorus, ls_leading_matrix, predicted_center, verify_center
from .suites import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_SCHEMA, EXIT_MATH, EXIT_SUITE = 0, 1, 2, 3, 4, 5
MAX_TRUNCATION = 64

# -- schemas --------------------------------------------------------------------

_RAT = {"type": ["string", "integer"]}
_INT_VEC = {"type": "array", "items": {"type": "integer"}, "minItems": 1}
_RAT_MATRIX = {"type": "array", "items": {"type": "array", "items": _RAT}, "minItems": 1}
_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}, "minItems": 1}
_N = {"type": "integer", "minimum": 1, "maximum": MAX_TRUNCATION}
_TYPE = {"type": "string", "minLength": 2}

_AUT = {
    "L": _RAT_MATRIX,
    "D": _INT_VEC,
    "N": _N,
    "multipliers": {"type": "array", "items": {"type": "string"}},
    "exponentials": {
        "type": "array",
        "items": {
            "type": "object",
            "properties": {"a": _RAT, "alpha": _INT_VEC},
            "required": ["a", "alpha"],
            "additionalProperties": False,
        },
    },
}
_AUT_ONE_OF = [{"required": ["multipliers"]}, {"required": ["exponentials"]}]


def _schema(props: dict, required: list[str], one_of: list | None = None) -> dict:
    out: dict[str, Any] = {
        "type": "object",
        "properties": props,
        "required": required,
        "additionalProperties": False,
    }
    if one_of:
        out["oneOf"] = one_of
    return out


SCHEMAS: dict[str, dict] = {
    "radical": _schema({"L": _RAT_MATRIX}, ["L"]),
    "bracket": _schema({"L": _RAT_MATRIX, "f": {"type": "string"}, "g": {"type": "string"}}, ["L", "f", "g"]),
    "exp-aut": _schema(
        {**_AUT, "apply": {"type": "array", "items": _INT_VEC}}, ["L", "D"], _AUT_ONE_OF
    ),
    "rigidity": _schema(_AUT, ["L", "D"], _AUT_ONE_OF),
    "factorize": _schema({**_AUT, "ray": _INT_VEC}, ["L", "D", "ray"], _AUT_ONE_OF),
    "restrict": _schema({**_AUT, "ray": _INT_VEC}, ["L", "D", "ray"], _AUT_ONE_OF),
    "mutate": _schema(
        {
            "B": _INT_MATRIX,
            "Lambda": _INT_MATRIX,
            "k": {"oneOf": [{"type": "integer", "minimum": 1}, {"type": "array", "items": {"type": "integer", "minimum": 1}}]},
        },
        ["B", "k"],
    ),
    "compat": _schema({"B": _INT_MATRIX, "Lambda": _INT_MATRIX}, ["B"]),
    "toric": _schema({"B": _INT_MATRIX}, ["B"]),
    "schubert": _schema({"type": _TYPE, "word": {"type": "array", "items": {"type": "integer"}}}, ["type"]),
    "rootsys": _schema({"type": _TYPE, "word": {"type": "array", "items": {"type": "integer"}}}, ["type"]),
}

JOB_SCHEMA = {
    "type": "object",
    "properties": {"command": {"enum": sorted(SCHEMAS)}, "payload": {"type": "object"}},
    "required": ["command"],
}


class JobError(Exception):
    def __init__(self, code: int, kind: str, message: str, location: str):
        super().__init__(message)
        self.code, self.kind, self.location = code, kind, location

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self), "location": self.location}


# -- command handlers -------------------------------------------------------------


def _vectors(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def _radical(p, N):
    lat = radical(Bicharacter(jio.parse_rat_matrix(p["L"])))
    return {"dim": lat.dim, "rank": lat.rank, "basis": _vectors(lat.basis)}


def _bracket(p, N):
    omega = Bicharacter(jio.parse_rat_matrix(p["L"]))
    f, g = LaurentPoly.parse(p["f"], omega.dim), LaurentPoly.parse(p["g"], omega.dim)
    return {"result": str(poly_bracket(f, g, omega))}


def _exp_aut(p, N):
    phi = jio.read_automorphism(p, N)
    cone = aut_cone(phi)
    out = {
        "automorphism": jio.automorphism(phi),
        "inverse": jio.automorphism(aut_inverse(phi)),
        "poisson": is_poisson_hom(phi),
        "support": _vectors(aut_support(phi).generators),
        "extremal_rays": _vectors(cone.extremal_rays),
    }
    if "apply" in p:
        out["images"] = [{"alpha": list(a), "image": str(phi(a))} for a in p["apply"]]
    return out


def _rigidity(p, N):
    verdict = rigidity_check(jio.read_automorphism(p, N))
    return {"central": verdict.central, "witness": None if verdict.witness is None else list(verdict.witness)}


def _factorize(p, N):
    coeffs = exp_factorize(jio.read_automorphism(p, N), p["ray"])
    return {"ray": list(p["ray"]), "coefficients": [jio.rat(c) for c in coeffs]}


def _restrict(p, N):
    rho = aut_restrict_to_ray(jio.read_automorphism(p, N), p["ray"])
    return {"ray": list(p["ray"]), "automorphism": jio.automorphism(rho), "poisson": is_poisson_hom(rho)}


def _mutate(p, N):
    B = ExchangeMatrix(p["B"])
    L = p.get("Lambda")
    ks = p["k"] if isinstance(p["k"], list) else [p["k"]]
    for k in ks:
        if L is not None:
            L = mutate_lambda(L, B, k)
        B = mutate_b(B, k)
    out = {"sequence": ks, "B": jio.int_matrix(B.matrix)}
    if L is not None:
        d = is_compatible(L, B)
        out.update(Lambda=jio.int_matrix(L), d=None if d is None else list(d))
    return out


def _compat(p, N):
    B = ExchangeMatrix(p["B"])
    L = p.get("Lambda")
    if L is None:
        L = find_compatible_lambda(B)
        if L is None:
            return {"Lambda": None, "compatible": False, "d": None}
    d = is_compatible(L, B)
    return {"Lambda": jio.int_matrix(L), "compatible": d is not None, "d": None if d is None else list(d)}


def _toric(p, N):
    B = ExchangeMatrix(p["B"])
    lat = toric_lattice(B)
    return {"rank": lat.rank, "basis": _vectors(lat.basis), "m": B.m, "n": B.n}


def _schubert(p, N):
    cartan = CartanData.from_type(p["type"])
    torus = SchubertTorus.build(cartan, p.get("word"))
    word = list(torus.order.word)
    return {
        "type": cartan.name,
        "word": word,
        "omega": jio.rat_matrix(torus.omega.L),
        "radical": _vectors(radical(torus.omega).basis),
        "predicted": _vectors(predicted_center(cartan, word)),
        "verdict": verify_center(cartan, word),
        "degrees": list(torus.degrees),
        "minor_index": {str(i): k for i, k in sorted(torus.minor_index.items())},
        "roots": _vectors(torus.order.roots),
        "ls_leading": jio.rat_matrix(ls_leading_matrix(cartan, word).L),
    }


def _rootsys(p, N):
    cartan = CartanData.from_type(p["type"])
    word = p.get("word") or w0_reduced_word(cartan)
    tau, fixed, reps = tau_involution(cartan)
    return {
        "type": cartan.name,
        "cartan": jio.int_matrix(cartan.C),
        "d": list(cartan.d),
        "num_positive_roots": cartan.num_positive_roots,
        "w0_word": list(positive_roots_convex(cartan, word).word),
        "convex_order": _vectors(positive_roots_convex(cartan, word).roots),
        "tau": list(tau),
        "O1": list(fixed),
        "O2": list(reps),
        "m_coefficients": jio.int_matrix(m_coefficients(cartan)),
    }


HANDLERS: dict[str, Callable[[dict, int], dict]] = {
    "radical": _radical,
    "bracket": _bracket,
    "exp-aut": _exp_aut,
    "rigidity": _rigidity,
    "factorize": _factorize,
    "restrict": _restrict,
    "mutate": _mutate,
    "compat": _compat,
    "toric": _toric,
    "schubert": _schubert,
    "rootsys": _rootsys,
}


# -- driver -----------------------------------------------------------------------


def _split(job: dict) -> tuple[str, dict]:
    payload = job.get("payload")
    if payload is None:
        payload = {k: v for k, v in job.items() if k != "command"}
    return job["command"], payload


def _validate(instance, schema, location: str) -> None:
    try:
        jsonschema.validate(instance, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path)
        raise JobError(EXIT_SCHEMA, "schema", exc.message, f"{location}/{where}".rstrip("/")) from None


def run_job(job: Any, truncation: int | None = None, location: str = "job") -> dict:
    """Validate and execute one job document; raises :class:`JobError`."""
    _validate(job, JOB_SCHEMA, location)
    command, payload = _split(job)
    _validate(payload, SCHEMAS[command], f"{location}/payload")
    N = truncation if truncation is not None else payload.get("N", DEFAULT_TRUNCATION)
    try:
        result = HANDLERS[command](payload, N)
    except PreconditionError as exc:
        raise JobError(EXIT_MATH, type(exc).__name__, str(exc), f"{location}/{command}") from None
    except (ValueError, TypeError) as exc:
        # malformed values that the schema cannot see, such as polynomial text
        raise JobError(EXIT_SCHEMA, "value", str(exc), f"{location}/payload") from None
    return {"command": command, "version": __version__, "truncation": N, "result": result}


def run_document(doc: Any, truncation: int | None = None) -> dict:
    if isinstance(doc, dict) and "jobs" in doc:
        if not isinstance(doc["jobs"], list):
            raise JobError(EXIT_SCHEMA, "schema", "'jobs' must be a list", "jobs")
        reports = [run_job(j, truncation, f"jobs[{t}]") for t, j in enumerate(doc["jobs"])]
        return {"version": __version__, "reports": reports}
    return run_job(doc, truncation)


def suite_report(name: str, seed: int) -> dict:
    results = run_suite(name, seed)
    return {
        "suite": name,
        "seed": seed,
        "version": __version__,
        "truncation": DEFAULT_TRUNCATION,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }


def render_text(report: dict) -> str:
    """A short human-readable rendering of a report."""
    if "criteria" in report:
        lines = [f"suite {report['suite']} (seed {report['seed']}, version {report['version']})"]
        for c in report["criteria"]:
            status = "PASS" if c["passed"] else "FAIL"
            lines.append(f"  {status} {c['criterion']:>2} {c['title']}: {c['violations']}/{c['cases']} violations")
        return "\n".join(lines) + "\n"
    reports = report.get("reports", [report])
    lines = []
    for r in reports:
        lines.append(f"[{r['command']}] truncation={r['truncation']} version={r['version']}")
        for key, value in sorted(r["result"].items()):
            lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _read(path: str | None) -> Any:
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise JobError(EXIT_PARSE, "parse", str(exc), path or "<stdin>") from None


def _truncation(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_TRUNCATION:
        raise argparse.ArgumentTypeError(f"truncation must lie in [1, {MAX_TRUNCATION}]")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qptori", description=__doc__.split("\n")[0])
    ap.add_argument("--job", metavar="FILE", help="job or batch document (default: stdin)")
    ap.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    ap.add_argument("--truncation", metavar="N", type=_truncation, help="override every job's truncation degree")
    ap.add_argument("--seed", metavar="S", type=int, default=0, help="seed for --suite (default 0)")
    ap.add_argument("--suite", metavar="NAME", choices=sorted(SUITES), help="run a named acceptance suite")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        if args.suite:
            report = suite_report(args.suite, args.seed)
            code = EXIT_OK if report["passed"] else EXIT_SUITE
        else:
            report = run_document(_read(args.job), args.truncation)
    except JobError as exc:
        sys.stderr.write(jio.dumps(exc.to_json()))
        return exc.code
    text = jio.dumps(report) if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
