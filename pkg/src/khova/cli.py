"""Command-line front end: declarative job files in, deterministic JSON out.

Job files are flat key/section text.  A key line reads ``key: value``;
a section is a ``key:`` line followed by indented lines, one entry per
line.  Polynomials use the core text grammar; matrices and vectors are
whitespace-separated rationals.  ``#`` starts a comment.

Exit codes: 0 success, 1 precondition failure, 2 cap exceeded,
3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .groebner import (CapExceeded, Caps, Ideal, buchberger, ideal_equal)
from .initial import (PreconditionError, initial_form, initial_ideal,
                      lineality_space)
from .orders import (Composite, DEGREVLEX, LEX, OrderNotAdmissible)
from .poly import ParseError, Polynomial, format_rational, parse_polynomial, \
    parse_rational
from .polyhedra import (compactification_body, euclidean_volume,
                        hat_polytope, hilbert_function, newton_okounkov_body,
                        newton_okounkov_cone, normalized_volume,
                        rees_graded_dims)
from .tropical import (contraction, in_tropical_variety,
                       in_tropical_variety_rank_r, verify_prime_cone)
from .valuation import (ValuationContext, evaluate, khovanskii_complete,
                        khovanskii_test, subduction, value_semigroup)

COMMANDS = ("gb", "initial", "trop", "cone-verify", "lineality", "val",
            "subduce", "khovanskii", "complete", "semigroup", "nobody",
            "degree", "hilbert", "compactify", "rees-dims", "contract")


class JobError(ValueError):
    pass


def parse_job(text):
    """Parse a job file into a dict of strings / lists of strings."""
    job = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0] in " \t":
            if current is None:
                raise JobError(f"line {lineno}: indented line outside a section")
            job[current].append(line.strip())
            continue
        if ":" not in line:
            raise JobError(f"line {lineno}: expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if value:
            job[key] = value
            current = None
        else:
            job[key] = []
            current = key
    return job


def _as_lines(job, key):
    value = job.get(key)
    if value is None:
        return []
    if isinstance(value, str):
        return [value]
    return list(value)


def _vector(text):
    return tuple(parse_rational(tok) for tok in text.split())


def _job_vars(job):
    if "vars" not in job:
        raise JobError("job needs a 'vars' line")
    spec = job["vars"]
    if isinstance(spec, list):
        spec = " ".join(spec)
    return tuple(spec.split())


def _job_ideal(job, variables):
    polys = []
    for chunk in _as_lines(job, "ideal"):
        for piece in chunk.split(";"):
            piece = piece.strip()
            if piece:
                polys.append(parse_polynomial(piece, variables))
    return Ideal(variables, polys)


def _job_matrix(job, key="matrix"):
    rows = [_vector(line) for line in _as_lines(job, key)]
    return rows


def _job_order(job, variables):
    name = job.get("order", job.get("tiebreak", "degrevlex"))
    if name == "lex":
        return LEX
    if name == "degrevlex":
        return DEGREVLEX
    raise JobError(f"unknown order '{name}'")


def _job_caps(job, args):
    caps = Caps()
    overrides = {}
    spec = job.get("caps", "")
    if isinstance(spec, list):
        spec = " ".join(spec)
    for piece in spec.split():
        key, _, value = piece.partition("=")
        overrides[key] = int(value)
    if args.cap_pairs is not None:
        overrides["pairs"] = args.cap_pairs
    if args.cap_degree is not None:
        overrides["degree"] = args.cap_degree
    if args.cap_subduction is not None:
        overrides["subduction"] = args.cap_subduction
    return Caps(pairs=overrides.get("pairs", caps.pairs),
                degree=overrides.get("degree", caps.degree),
                subduction=overrides.get("subduction", caps.subduction))


def _job_context(job, caps):
    variables = _job_vars(job)
    mode = job.get("mode", "presentation")
    if mode == "sagbi":
        order = _job_order(job, variables)
        gens = []
        for chunk in _as_lines(job, "sagbi_generators"):
            for piece in chunk.split(";"):
                piece = piece.strip()
                if piece:
                    gens.append(parse_polynomial(piece, variables))
        ambient = job.get("ambient_order", "lex")
        amb = LEX if ambient == "lex" else DEGREVLEX
        return ValuationContext.sagbi(gens, amb, caps)
    ideal = _job_ideal(job, variables)
    matrix = _job_matrix(job)
    if not matrix:
        raise JobError("presentation context needs a 'matrix' section")
    return ValuationContext.presentation(ideal, matrix, _job_order(job, variables),
                                         caps)


def _encode(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Polynomial):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _vector_json(vec):
    return [format_rational(Fraction(x)) for x in vec]


def _matrix_json(mat):
    return [_vector_json(row) for row in mat]


# --- command payloads -------------------------------------------------------

def _cmd_gb(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    matrix = _job_matrix(job)
    order = _job_order(job, variables)
    if matrix:
        order = Composite(matrix, order)
    ctx = buchberger(ideal, order, caps)
    return {"basis": [str(g) for g in ctx.basis]}


def _cmd_initial(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    matrix = _job_matrix(job)
    result = initial_ideal(ideal, matrix, caps)
    payload = {"generators": [str(g) for g in result.generators]}
    if "f" in job:
        f = parse_polynomial(job["f"], variables)
        payload["initial_form"] = str(initial_form(f, matrix))
    return payload


def _cmd_trop(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    if "u" in job:
        u = _vector(job["u"])
        return {"in_tropical_variety": in_tropical_variety(u, ideal, caps)}
    matrix = _job_matrix(job)
    if len(matrix) == 1:
        return {"in_tropical_variety":
                in_tropical_variety(matrix[0], ideal, caps)}
    return {"in_tropical_variety_rank_r":
            in_tropical_variety_rank_r(matrix, ideal, caps)}


def _cmd_cone_verify(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    rays = [_vector(line) for line in _as_lines(job, "rays")]
    lineality = [_vector(line) for line in _as_lines(job, "lineality")]
    samples = int(job.get("samples", 3))
    report = verify_prime_cone(rays, lineality, ideal, samples, seed, caps)
    return {
        "sample_points": [_vector_json(p) for p in report.sample_points],
        "common_initial_ideal":
            None if report.common_initial_ideal is None else
            [str(g) for g in report.common_initial_ideal.generators],
        "monomial_free": report.monomial_free,
        "binomial": report.binomial,
        "primality": report.primality,
        "certificate": _encode(report.certificate),
        "meets_groebner_region": report.meets_groebner_region,
        "notes": report.notes,
    }


def _cmd_lineality(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    basis = lineality_space(ideal, caps)
    return {"basis": [_vector_json(v) for v in basis]}


def _cmd_val(job, caps, seed):
    ctx = _job_context(job, caps)
    payload = {}
    elements = _as_lines(job, "elements")
    if "f" in job:
        elements = [job["f"]] + elements
    variables = (ctx.ideal.variables if ctx.mode == "presentation"
                 else ctx.ambient_variables)
    values = []
    for text in elements:
        f = parse_polynomial(text, variables)
        values.append({"element": text,
                       "value": _vector_json(evaluate(f, ctx))})
    payload["values"] = values
    return payload


def _cmd_subduce(job, caps, seed):
    ctx = _job_context(job, caps)
    variables = (ctx.ideal.variables if ctx.mode == "presentation"
                 else ctx.ambient_variables)
    if "f" not in job:
        raise JobError("subduce needs an 'f' line")
    f = parse_polynomial(job["f"], variables)
    trace = subduction(f, ctx)
    return {
        "outcome": trace.outcome,
        "steps": [{"value": _vector_json(v), "expression": str(e)}
                  for v, e in trace.steps],
        "residual": str(trace.residual),
    }


def _cmd_khovanskii(job, caps, seed):
    ctx = _job_context(job, caps)
    return {"khovanskii_basis": khovanskii_test(ctx)}


def _cmd_complete(job, caps, seed):
    ctx = _job_context(job, caps)
    if ctx.mode != "sagbi":
        raise PreconditionError("complete works on SAGBI jobs")
    round_cap = int(job.get("round_cap", 6))
    result = khovanskii_complete(list(ctx.sagbi_generators), ctx, round_cap)
    return {
        "basis": [str(g) for g in result.basis],
        "completed": result.completed,
        "rounds": result.rounds,
        "value_sets": [[_vector_json(v) for v in stage]
                       for stage in result.value_history],
    }


def _cmd_semigroup(job, caps, seed):
    ctx = _job_context(job, caps)
    sg = value_semigroup(ctx)
    payload = {"generators": [_vector_json(g) for g in sg.generators]}
    queries = []
    for line in _as_lines(job, "queries"):
        vec = _vector(line)
        queries.append({"vector": _vector_json(vec),
                        "member": sg.contains(vec)})
    if queries:
        payload["queries"] = queries
    return payload


def _cmd_nobody(job, caps, seed):
    ctx = _job_context(job, caps)
    body = newton_okounkov_body(ctx)
    q = body.affine_dimension()
    nv = normalized_volume(body, q)
    return {
        "body": {"vertices": [[format_rational(x) for x in v]
                              for v in body.vertices]},
        "dimension": q,
        "volume": format_rational(euclidean_volume(body, q)),
        "degree": format_rational(nv),
    }


def _cmd_degree(job, caps, seed):
    payload = _cmd_nobody(job, caps, seed)
    return {"dimension": payload["dimension"],
            "volume": payload["volume"],
            "degree": payload["degree"]}


def _cmd_hilbert(job, caps, seed):
    ctx = _job_context(job, caps)
    bound = int(job.get("bounds", job.get("degree_bound", 8)))
    return {"hilbert": hilbert_function(ctx, bound)}


def _cmd_compactify(job, caps, seed):
    ctx = _job_context(job, caps)
    delta = _vector(job.get("delta", "-1 -1"))
    body = compactification_body(ctx, delta)
    hat = hat_polytope(ctx, delta)
    return {"delta": _vector_json(delta),
            "body": body.to_json(),
            "hat_polytope": hat.to_json()}


def _cmd_rees_dims(job, caps, seed):
    ctx = _job_context(job, caps)
    sigma = [int(tok) for tok in job.get("sigma", "").split()]
    levels = [_vector(line) for line in _as_lines(job, "levels")]
    bound = int(job.get("bounds", job.get("degree_bound", 8)))
    table = rees_graded_dims(ctx, sigma, levels, bound)
    rows = []
    for level in levels:
        level = tuple(Fraction(x) for x in level)
        rows.append({"level": _vector_json(level),
                     "W": table[level]["W"],
                     "F": table[level]["F"]})
    return {"sigma": sigma, "dims": rows}


def _cmd_contract(job, caps, seed):
    variables = _job_vars(job)
    ideal = _job_ideal(job, variables)
    matrix = _job_matrix(job)
    return {"contraction": _matrix_json(contraction(matrix, ideal, caps))}


_HANDLERS = {
    "gb": _cmd_gb,
    "initial": _cmd_initial,
    "trop": _cmd_trop,
    "cone-verify": _cmd_cone_verify,
    "lineality": _cmd_lineality,
    "val": _cmd_val,
    "subduce": _cmd_subduce,
    "khovanskii": _cmd_khovanskii,
    "complete": _cmd_complete,
    "semigroup": _cmd_semigroup,
    "nobody": _cmd_nobody,
    "degree": _cmd_degree,
    "hilbert": _cmd_hilbert,
    "compactify": _cmd_compactify,
    "rees-dims": _cmd_rees_dims,
    "contract": _cmd_contract,
}


def run(command, job, caps=None, seed=0):
    """Execute one command on a parsed job; returns the report dict."""
    if command not in _HANDLERS:
        raise JobError(f"unknown command '{command}'")
    caps = caps or Caps()
    payload = _HANDLERS[command](job, caps, seed)
    return {
        "command": command,
        "job": {k: v for k, v in sorted(job.items())},
        "seed": seed,
        "result": payload,
    }


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="khova",
        description="exact Groebner / tropical / Khovanskii-basis toolkit")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("jobfile")
    parser.add_argument("--cap-pairs", type=int, default=None)
    parser.add_argument("--cap-degree", type=int, default=None)
    parser.add_argument("--cap-subduction", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("KHOVA_SEED", "0"))

    started = time.monotonic()
    try:
        with open(args.jobfile, "r", encoding="utf-8") as fh:
            job = parse_job(fh.read())
        report = run(args.command, job, _job_caps(job, args), seed)
        code = 0
    except (ParseError, JobError) as exc:
        report = {"error": str(exc), "kind": "parse"}
        code = 3
    except CapExceeded as exc:
        report = {"error": str(exc), "kind": "cap"}
        code = 2
    except (PreconditionError, OrderNotAdmissible, ValueError) as exc:
        report = {"error": str(exc), "kind": "precondition"}
        code = 1
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    # wall time goes to stderr so reports stay byte-identical across runs
    sys.stderr.write(f"elapsed: {time.monotonic() - started:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
