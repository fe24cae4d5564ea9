"""Command-line front end.

Every subcommand prints JSON (or a short table with ``--format table``).
Exit status: 0 when every verdict holds, 2 when some verdict fails,
1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .certificate import Certificate
from .counterexamples import (
    lemma31_ratio,
    lemma32_shift,
    lemma33_build,
    prop31_certificate,
    prop32_assemble,
    prop32_certificate,
    prop41_certificate,
    prop42_certificate,
    theorem31_assemble,
)
from .counterexamples.lemmas import sample_shift_input
from .errors import TorusError
from .maximal import (
    DeltaWitness,
    MaximalQuery,
    delta_witness_check,
    maximal_value,
    superlevel_set,
    weak_type_ratio,
    witness_average,
)
from .rdf import FAMILY_NAMES, build_family, family_profile, levels_str, rdf_cell, rdf_group, rdf_levels, table1_certificate
from .serialize import (
    function_from_json,
    point_from_json,
    point_to_json,
    productset_from_json,
    productset_to_json,
    rational_str,
    region_from_json,
    region_to_json,
)
from .torus import FULL_SET, Point, Region, SimpleFunction, as_rational

EXIT_OK, EXIT_USAGE, EXIT_FALSE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for false verdicts here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument types ---------------------------------------------------------------


def rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def point_arg(text: str) -> Point:
    """``"1=1/4,3=0.5"`` or a JSON object ``{"1": "1/4"}``."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return point_from_json(json.loads(text))
        if not text:
            return Point()
        entries = {}
        for part in text.split(","):
            i, v = part.split("=")
            entries[int(i)] = as_rational(v)
        return Point.of(entries)
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; use 1=1/4,2=1/2") from exc


def rational_list_arg(text: str) -> list[Fraction]:
    try:
        return [as_rational(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}") from exc


# -- output -------------------------------------------------------------------------


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False)


def _table_lines(payload) -> list[str]:
    if isinstance(payload, dict) and "claim" in payload:
        status = "PASS" if payload["verdict"] else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in payload["params"].items() if not isinstance(v, list))
        lines = [f"{status}  {payload['claim']}  {params}".rstrip()]
        for child in payload.get("children", []):
            lines += ["  " + line for line in _table_lines(child)]
        return lines
    if isinstance(payload, dict) and "certificates" in payload:
        lines = []
        for c in payload["certificates"]:
            lines += _table_lines(c)
        lines.append(f"{'PASS' if payload['verdict'] else 'FAIL'}  suite  ({len(payload['certificates'])} certificates)")
        return lines
    if isinstance(payload, dict):
        return [f"{k}: {v if not isinstance(v, (list, dict)) else json.dumps(v)}" for k, v in payload.items()]
    return [str(payload)]


def _emit(payload, args) -> None:
    text = "\n".join(_table_lines(payload)) if args.format == "table" else _dump(payload)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


# -- query inputs -------------------------------------------------------------------


def _load_input(args) -> dict:
    if not args.input:
        return {}
    try:
        raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        data = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--input: cannot read JSON from {args.input!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("--input: expected a JSON object")
    return data


def _function(args, data) -> SimpleFunction:
    if args.f_cell is not None:
        return SimpleFunction.indicator(rdf_cell(args.f_cell))
    if "f" in data:
        return function_from_json(data["f"])
    raise UsageError("need a function: pass --f-cell N or an input file with an 'f' entry")


def _family(args, data):
    name = args.family or data.get("family")
    gen = args.max_generation or data.get("max_generation")
    if name is None or gen is None:
        raise UsageError("need --family and --max-generation (or 'family'/'max_generation' in --input)")
    return build_family(name, int(gen))


def _value(flag_value, data, key, convert=as_rational):
    if flag_value is not None:
        return flag_value
    if key in data:
        return convert(data[key])
    return None


def _query(args, data) -> MaximalQuery:
    cap = _value(args.diameter_cap, data, "diameter_cap")
    return MaximalQuery(_family(args, data), _function(args, data), cap)


def _require(value, flag):
    if value is None:
        raise UsageError(f"missing required {flag}")
    return value


# -- subcommands ------------------------------------------------------------------
# each returns (payload, verdict or None)


def cmd_rdf_levels(args):
    return levels_str(rdf_levels(args.n)), None


def cmd_rdf_cell(args):
    cell = rdf_cell(args.n)
    return {
        "n": args.n,
        "cell": productset_to_json(cell),
        "levels": levels_str(rdf_levels(args.n)),
        "measure": rational_str(cell.measure),
    }, None


def cmd_rdf_group(args):
    if args.n > 16:
        raise UsageError("--n: groups are enumerated only up to n = 16")
    group = rdf_group(args.n)
    return {"n": args.n, "size": len(group), "elements": [point_to_json(h) for h in group]}, None


def cmd_family(args):
    fam = build_family(_require(args.family, "--family"), _require(args.max_generation, "--max-generation"))
    return {
        "family": fam.name,
        "max_generation": fam.max_generation,
        "size": len(fam),
        "candidates": [{"label": lab, "region": region_to_json(c)} for lab, c in zip(fam.labels, fam.candidates)],
    }, None


def cmd_profile(args):
    fam = build_family(_require(args.family, "--family"), _require(args.max_generation, "--max-generation"))
    return {
        "family": fam.name,
        "max_generation": fam.max_generation,
        "profile": [[rational_str(m), rational_str(d)] for m, d in family_profile(fam)],
    }, None


def cmd_maximal(args):
    data = _load_input(args)
    q = _query(args, data)
    g = _value(args.point, data, "point", point_from_json)
    g = _require(g, "--point")
    return {"point": point_to_json(g), "value": rational_str(maximal_value(q, g))}, None


def cmd_superlevel(args):
    data = _load_input(args)
    q = _query(args, data)
    lam = _require(_value(args.lam, data, "lambda"), "--lambda")
    region, m = superlevel_set(q, lam)
    return {"lambda": rational_str(lam), "measure": rational_str(m), "region": region_to_json(region)}, None


def cmd_weak_type(args):
    data = _load_input(args)
    q = _query(args, data)
    lam = _require(_value(args.lam, data, "lambda"), "--lambda")
    return {"lambda": rational_str(lam), "ratio": rational_str(weak_type_ratio(q, lam))}, None


def cmd_witness(args):
    data = _load_input(args)
    f = _function(args, data)
    if args.shape_cell is not None:
        shape = rdf_cell(args.shape_cell)
    elif "shape" in data:
        shape = productset_from_json(data["shape"])
    else:
        raise UsageError("need a shape: pass --shape-cell N or 'shape' in --input")
    h = _value(args.h, data, "h", point_from_json) or Point()
    g = _require(_value(args.point, data, "point", point_from_json), "--point")
    avg, inside = witness_average(f, shape, h, g)
    return {
        "point": point_to_json(g),
        "h": point_to_json(h),
        "average": rational_str(avg),
        "in_closure": inside,
    }, inside


def cmd_delta_check(args):
    data = _load_input(args)
    f = _function(args, data)
    lam = _require(_value(args.lam, data, "lambda"), "--lambda")
    k = _require(args.k if args.k is not None else data.get("k"), "--k")
    E = region_from_json(data["E"]) if "E" in data else Region.of(FULL_SET)
    cap = _value(args.diameter_cap, data, "diameter_cap")
    cert = delta_witness_check(DeltaWitness(f, lam, E, int(k), cap), _family(args, data))
    return cert.to_dict(), cert.verdict


def _cert(cert: Certificate):
    return cert.to_dict(), cert.verdict


def cmd_prop31(args):
    return _cert(prop31_certificate(_require(args.n, "--n"), args.epsilon, samples=args.sample_point, seed=args.seed))


def cmd_prop32(args):
    return _cert(prop32_certificate(_require(args.n, "--n"), args.epsilon, samples=args.sample_point, seed=args.seed))


def cmd_prop32_assemble(args):
    return _cert(prop32_assemble(_require(args.n, "--n")))


def cmd_lemma31(args):
    return _cert(lemma31_ratio(_require(args.n, "--n"), args.alphas))


def cmd_lemma32(args):
    n = _require(args.n, "--n")
    if (args.alphas is None) != (args.x is None):
        raise UsageError("--alphas and --x go together")
    if args.alphas is None:
        alphas, x = sample_shift_input(n, random.Random(args.seed))
    else:
        alphas, x = args.alphas, args.x
    return _cert(lemma32_shift(n, alphas, x))


def cmd_lemma33(args):
    K, L = _require(args.K, "--K"), _require(args.L, "--L")
    _, cert = lemma33_build(K, L, samples=args.sample_point, seed=args.seed)
    return _cert(cert)


def cmd_theorem31(args):
    eps = args.epsilon if args.epsilon is not None else Fraction(1, 2)
    return _cert(theorem31_assemble(eps, args.stages, seed=args.seed))


def cmd_prop41(args):
    return _cert(prop41_certificate(_require(args.n, "--n")))


def cmd_prop42(args):
    return _cert(prop42_certificate(_require(args.k, "--k")))


# the suite's jobs are (name, kwargs) pairs so they can cross process boundaries
_JOBS = {
    "table1": table1_certificate,
    "prop31": prop31_certificate,
    "prop32": prop32_certificate,
    "prop32_assemble": prop32_assemble,
    "lemma31": lemma31_ratio,
    "theorem31": theorem31_assemble,
    "prop41": prop41_certificate,
    "prop42": prop42_certificate,
}


def _run_job(job) -> dict:
    name, kwargs = job
    if name == "lemma32":
        n = kwargs["n"]
        cert = lemma32_shift(n, *sample_shift_input(n, random.Random(kwargs["seed"])))
    elif name == "lemma33":
        cert = lemma33_build(kwargs["K"], kwargs["L"])[1]
    else:
        cert = _JOBS[name](**kwargs)
    return cert.to_dict()


def suite_jobs(max_n: int) -> list[tuple[str, dict]]:
    jobs = [("table1", {})]
    jobs += [("prop31", {"n": n}) for n in range(1, max_n + 1)]
    jobs += [("prop32", {"n": n}) for n in range(2, min(max_n, 5) + 1)]
    jobs += [("prop32_assemble", {"N": min(max_n, 4)})]
    jobs += [("lemma31", {"n": n}) for n in range(2, min(2 * max_n, 12) + 1)]
    jobs += [("lemma32", {"n": n, "seed": s}) for n in (2, 3, 5, 8) if n <= max(2, max_n + 2) for s in range(5)]
    jobs += [("lemma33", {"K": 1, "L": L}) for L in (1, 2)]
    jobs += [("theorem31", {"epsilon": Fraction(1, 2), "stages": 2})]
    jobs += [("prop41", {"n": n}) for n in range(1, min(max_n, 10) + 1)]
    jobs += [("prop42", {"k": k}) for k in range(1, min(max_n, 6) + 1)]
    return jobs


def cmd_suite(args):
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    jobs = suite_jobs(args.max_n)
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            certs = list(pool.map(_run_job, jobs))  # map keeps job order
    else:
        certs = [_run_job(j) for j in jobs]
    verdict = all(c["verdict"] for c in certs)
    return {"suite": {"max_n": args.max_n}, "verdict": verdict, "certificates": certs}, verdict


COMMANDS = {
    "rdf-levels": (cmd_rdf_levels, "level vector of the cell V_n"),
    "rdf-cell": (cmd_rdf_cell, "the cell V_n as a product set"),
    "rdf-group": (cmd_rdf_group, "elements of the subgroup H_n"),
    "family": (cmd_family, "enumerate a basis family"),
    "profile": (cmd_profile, "(measure, diameter) of every candidate of a family"),
    "maximal": (cmd_maximal, "maximal function of f at a point"),
    "superlevel": (cmd_superlevel, "superlevel set {Mf > lambda} and its measure"),
    "weak-type": (cmd_weak_type, "lambda m({Mf > lambda}) / ||f||_1"),
    "witness": (cmd_witness, "average of f over a translated shape"),
    "delta-check": (cmd_delta_check, "certify a lower bound for delta_k"),
    "prop31": (cmd_prop31, "weak (1,1) failure for translates of U_n"),
    "prop32": (cmd_prop32, "grid of bumps with large averages"),
    "prop32-assemble": (cmd_prop32_assemble, "assemble the grid functions into one integrable function"),
    "lemma31": (cmd_lemma31, "binomial ratio |J_n| / |(1+1/n) I_n|"),
    "lemma32": (cmd_lemma32, "shifted box with large overlap"),
    "lemma33": (cmd_lemma33, "periodic grid sets A and E"),
    "theorem31": (cmd_theorem31, "stagewise assembly of the grid sets"),
    "prop41": (cmd_prop41, "weak-type ratio for the d-basis"),
    "prop42": (cmd_prop42, "delta_k lower bound for the g-basis"),
    "suite": (cmd_suite, "run every certificate"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = _Parser(prog="torusdiff", description="Exact certificates for differentiation bases on the infinite torus.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        p.set_defaults(handler=COMMANDS[name][0])
        if name == "suite":
            p.add_argument("--max-n", type=int, default=6)
            p.add_argument("--parallel", action="store_true", help="run certificates in worker processes")
            continue
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--K", type=int)
        p.add_argument("--L", type=int)
        p.add_argument("--stages", type=int, default=2)
        p.add_argument("--epsilon", type=rational_arg)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--sample-point", type=point_arg, action="append", default=[])
        p.add_argument("--family", choices=FAMILY_NAMES)
        p.add_argument("--max-generation", type=int)
        p.add_argument("--diameter-cap", type=rational_arg)
        p.add_argument("--lambda", dest="lam", type=rational_arg)
        p.add_argument("--point", type=point_arg)
        p.add_argument("--h", type=point_arg)
        p.add_argument("--f-cell", type=int, help="use f = indicator of V_N")
        p.add_argument("--shape-cell", type=int, help="use the cell V_N as witness shape")
        p.add_argument("--alphas", type=rational_list_arg)
        p.add_argument("--x", type=rational_list_arg)
        p.add_argument("--input", help="JSON file (or - for stdin) with f, point, h, shape, E, lambda, ...")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand; see --help")
        if args.command in ("rdf-levels", "rdf-cell", "rdf-group") and (args.n is None or args.n < 1):
            raise UsageError("--n: a generation >= 1 is required")
        payload, verdict = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TorusError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args)
    return EXIT_FALSE if verdict is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
