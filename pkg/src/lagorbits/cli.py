"""Command-line front end.

Every command reads one JSON document (``--input FILE`` or ``--input -``),
optionally overridden by flags such as ``--m``, and writes one JSON document
to stdout.  Exact scalars are written as rational strings.  Errors are JSON
objects ``{"error": {"code", "message"}}`` with exit code 2 (schema), 3
(mathematical precondition) or 4 (scale guard).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import jsonschema

from . import acceptance, ff_oracle
from . import gl_orbits as gl
from . import spsp_orbits as sp
from .errors import LagOrbitsError, MathError, SchemaError, TooLarge
from .exactlin import QQ, Subspace, field_from_json
from .sampling import make_rng, random_invertible, random_symplectic

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_MATH, EXIT_TOO_LARGE = 0, 1, 2, 3, 4

# ---------------------------------------------------------------------------
# schemas

_SCALAR = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^[+-]?\d+(/0*[1-9]\d*)?$"}]}
_VECTOR = {"type": "array", "items": _SCALAR}
_MATRIX = {
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "properties": {
        "rows": {"type": "integer", "minimum": 0},
        "cols": {"type": "integer", "minimum": 0},
        "entries": {"type": "array", "items": _SCALAR},
    },
}
_SUBSPACE = {
    "oneOf": [
        {"type": "array", "items": _VECTOR},
        {
            "type": "object",
            "required": ["basis"],
            "properties": {
                "ambient_dim": {"type": "integer", "minimum": 0},
                "basis": {"oneOf": [{"type": "array", "items": _VECTOR}, _MATRIX]},
            },
        },
    ]
}
_FIELD = {
    "oneOf": [
        {"type": "string", "enum": ["Q", "QQ", "Rationals"]},
        {"type": "object", "required": ["kind"], "properties": {"kind": {"const": "Rationals"}}},
        {"type": "object", "required": ["kind", "p"],
         "properties": {"kind": {"const": "PrimeField"}, "p": {"type": "integer", "minimum": 2}}},
    ]
}
_RANK = {"type": "integer", "minimum": 1, "maximum": 64}
_COUNT = {"type": "integer", "minimum": 0, "maximum": 64}


def _schema(required: list[str], **props) -> dict:
    return {"type": "object", "required": required, "properties": props}


SCHEMAS = {
    "classify-spsp": _schema(["m", "n", "U"], m=_RANK, n=_RANK, U=_SUBSPACE, field=_FIELD),
    "canonical-spsp": _schema(["m", "n", "i"], m=_RANK, n=_RANK, i=_COUNT, field=_FIELD),
    "witness-spsp": _schema(["m", "n", "U"], m=_RANK, n=_RANK, U=_SUBSPACE, U_prime=_SUBSPACE, field=_FIELD),
    "stab-dim-spsp": {**_schema(["m", "n"], m=_RANK, n=_RANK, U=_SUBSPACE, i=_COUNT, field=_FIELD),
                      "oneOf": [{"required": ["U"]}, {"required": ["i"]}]},
    "closure-curve": _schema(["m", "n", "i"], m=_RANK, n=_RANK, i=_COUNT, ts={"type": "array", "items": _SCALAR},
                             field=_FIELD),
    "classify-gl": _schema(["n", "U"], n=_COUNT, U=_SUBSPACE),
    "canonical-gl": _schema(["n", "i", "j", "k"], n=_COUNT, i=_COUNT, j=_COUNT, k=_COUNT),
    "witness-gl": _schema(["n", "U"], n=_COUNT, U=_SUBSPACE, U_prime=_SUBSPACE),
    "stab-dim-gl": {**_schema(["n"], n=_COUNT, U=_SUBSPACE, i=_COUNT, j=_COUNT, k=_COUNT),
                    "oneOf": [{"required": ["U"]}, {"required": ["i", "j", "k"]}]},
    "census-gl": _schema(["n"], n={"type": "integer", "minimum": 0, "maximum": 8},
                         samples={"type": "integer", "minimum": 0, "maximum": 100000}),
    "ff-census": _schema(["m", "n", "p"], m=_RANK, n=_RANK, p={"type": "integer", "minimum": 2},
                         action={"enum": ["auto", "group", "generators"]}),
    "selftest": _schema([], criteria={"type": "array", "items": {"type": "integer", "minimum": 1, "maximum": 10}}),
}


def validate(command: str, doc) -> dict:
    try:
        jsonschema.validate(doc, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None
    return doc


# ---------------------------------------------------------------------------
# rendering


def subspace_out(U: Subspace) -> dict:
    return {"ambient_dim": U.ambient_dim, "dim": U.dim,
            "basis": [[str(x) for x in v] for v in U.vectors()]}


def _field(doc):
    return field_from_json(doc.get("field"))


def _sum_space(doc) -> sp.SumSpace:
    return sp.SumSpace.create(doc["m"], doc["n"], _field(doc))


def _user_subspace(S: sp.SumSpace, obj) -> Subspace:
    """Parse a subspace given in the caller's factor order and move it to the
    internal order (smaller factor first)."""
    return S.internal(Subspace.from_json(obj, S.field, S.dim))


def _spsp_class(c: sp.SpSpClass) -> dict:
    return {**c.to_json(), "orbit_dim": c.orbit_dim}


# ---------------------------------------------------------------------------
# commands


def cmd_classify_spsp(doc, rng, opts):
    S = _sum_space(doc)
    U = _user_subspace(S, doc["U"])
    c = sp.classify(S, U)
    U1, U2 = sp.intersect_factors(S, U)
    return {**_spsp_class(c), "checks": {"lagrangian": True, "dimension_ladder": U2.dim - U1.dim == S.n - S.m}}


def cmd_canonical_spsp(doc, rng, opts):
    S = _sum_space(doc)
    U = sp.canonical_rep(S, doc["i"])
    return {"i": doc["i"], "U": subspace_out(S.external(U))}


def cmd_witness_spsp(doc, rng, opts):
    S = _sum_space(doc)
    U = _user_subspace(S, doc["U"])
    if "U_prime" in doc:
        Up = _user_subspace(S, doc["U_prime"])
    else:
        Up = S.act(random_symplectic(S.V1, rng), random_symplectic(S.V2, rng), U)
    g1, g2 = sp.witness(S, U, Up)
    if S.swapped:
        g1, g2 = g2, g1
    return {"g1": g1.to_json(), "g2": g2.to_json(), "U": subspace_out(S.external(U)),
            "U_prime": subspace_out(S.external(Up)), "verified": True}


def cmd_stab_dim_spsp(doc, rng, opts):
    S = _sum_space(doc)
    U = _user_subspace(S, doc["U"]) if "U" in doc else sp.canonical_rep(S, doc["i"])
    i = sp.classify(S, U).i
    s = sp.stab_dim(S, U)
    return {"i": i, "stab_dim": s, "expected_stab_dim": sp.expected_stab_dim(S.m, S.n, i),
            "orbit_dim": S.m * (2 * S.m + 1) + S.n * (2 * S.n + 1) - s,
            "closed_form_orbit_dim": sp.closed_form_orbit_dim(S.m, S.n, i)}


def cmd_closure_curve(doc, rng, opts):
    S = _sum_space(doc)
    curve = sp.closure_curve(S, doc["i"], doc.get("ts"))
    return {
        "i": curve.i,
        "points": [{"t": str(t), "U": subspace_out(S.external(U)), "i": sp.classify(S, U).i}
                   for t, U in curve.points],
        "limit": {"U": subspace_out(S.external(curve.limit)), "i": sp.classify(S, curve.limit).i},
    }


def _polarized(doc) -> gl.PolarizedSpace:
    return gl.PolarizedSpace.create(doc["n"])


def _gl_subspace(P, obj) -> Subspace:
    return Subspace.from_json(obj, QQ, 2 * P.n)


def cmd_classify_gl(doc, rng, opts):
    P = _polarized(doc)
    U = _gl_subspace(P, doc["U"])
    c = gl.classify(P, U)
    beta = gl.signature(gl.beta_form(P, U)) if c.d else (0, 0)
    return {**c.to_json(), "checks": {"beta_form_signature": list(beta), "agree": beta == c.signature}}


def cmd_canonical_gl(doc, rng, opts):
    P = _polarized(doc)
    U = gl.canonical_rep(P, doc["i"], doc["j"], doc["k"])
    return {"i": doc["i"], "j": doc["j"], "k": doc["k"], "U": subspace_out(U)}


def cmd_witness_gl(doc, rng, opts):
    P = _polarized(doc)
    U = _gl_subspace(P, doc["U"])
    Up = _gl_subspace(P, doc["U_prime"]) if "U_prime" in doc else gl.gl_action(P, random_invertible(P.n, rng), U)
    w = gl.witness(P, U, Up)
    return {**w.to_json(), "U": subspace_out(U), "U_prime": subspace_out(Up), "verified": gl.maps_onto(P, w, U, Up)}


def cmd_stab_dim_gl(doc, rng, opts):
    P = _polarized(doc)
    U = _gl_subspace(P, doc["U"]) if "U" in doc else gl.canonical_rep(P, doc["i"], doc["j"], doc["k"])
    c = gl.classify(P, U)
    s = gl.stab_dim(P, U)
    return {**c.to_json(), "stab_dim": s, "expected_stab_dim": gl.expected_stab_dim(P.n, c.i, c.j, c.k),
            "orbit_dim": P.n * P.n - s}


def cmd_census_gl(doc, rng, opts):
    P = _polarized(doc)
    classes = gl.all_classes(P.n)
    found = [gl.classify(P, gl.canonical_rep(P, c.i, c.j, c.k)) for c in classes]
    out = {"n": P.n, "formula": gl.orbit_census_formula(P.n), "classes": [c.to_json() for c in classes],
           "distinct": len(set(found)) == len(classes) and found == classes}
    samples = doc.get("samples", 0)
    if samples:
        known = set(classes)
        outside = sum(gl.classify(P, acceptance._random_gl_point(P, rng)) not in known for _ in range(samples))
        out["samples"] = {"count": samples, "outside_known_classes": outside}
    return out


def cmd_ff_census(doc, rng, opts):
    r = ff_oracle.orbit_census(doc["m"], doc["n"], doc["p"], threads=opts.threads or 1,
                               action=doc.get("action", "auto"))
    return r.to_json()


def cmd_selftest(doc, rng, opts):
    results = acceptance.run_all(opts.seed, doc.get("criteria"))
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                         for r in results],
            "passed": all(r.passed for r in results)}


COMMANDS: dict[str, Callable] = {
    "classify-spsp": cmd_classify_spsp,
    "canonical-spsp": cmd_canonical_spsp,
    "witness-spsp": cmd_witness_spsp,
    "stab-dim-spsp": cmd_stab_dim_spsp,
    "closure-curve": cmd_closure_curve,
    "classify-gl": cmd_classify_gl,
    "canonical-gl": cmd_canonical_gl,
    "witness-gl": cmd_witness_gl,
    "stab-dim-gl": cmd_stab_dim_gl,
    "census-gl": cmd_census_gl,
    "ff-census": cmd_ff_census,
    "selftest": cmd_selftest,
}

# ---------------------------------------------------------------------------
# driver


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit value")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lagorbits", description="Orbit classification on Lagrangian Grassmannians.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", help="JSON input file, or - for stdin")
    parser.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit seed (default 0)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (ff-census only)")
    parser.add_argument("--format", choices=["json"], default="json")
    for name in ("m", "n", "p", "i", "j", "k"):
        parser.add_argument(f"--{name}", type=int, default=None, help=f"override field {name!r} of the input")
    return parser


def _load(path: str | None, stdin) -> dict:
    if path is None:
        return {}
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("input must be a JSON object")
    return doc


def run(argv: list[str], stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        opts = build_parser().parse_args(argv)
        if opts.threads is not None and (opts.command != "ff-census" or opts.threads < 1):
            raise SchemaError("--threads is a positive count accepted by ff-census only")
        doc = _load(opts.input, stdin)
        for name in ("m", "n", "p", "i", "j", "k"):
            if getattr(opts, name) is not None:
                doc[name] = getattr(opts, name)
        validate(opts.command, doc)
        result = COMMANDS[opts.command](doc, make_rng(opts.seed), opts)
        code = EXIT_OK if result.get("passed", True) else EXIT_FAIL
    except LagOrbitsError as exc:
        code = EXIT_TOO_LARGE if isinstance(exc, TooLarge) else EXIT_MATH if isinstance(exc, MathError) else EXIT_SCHEMA
        result = {"error": {"code": exc.code, "message": str(exc)}}
    json.dump(result, stdout, indent=2, sort_keys=True)
    stdout.write("\n")
    return code


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
