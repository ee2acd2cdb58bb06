"""``locsing`` command-line front end.

Exit status: 0 on success, 1 on a mathematical error (for instance an
infinite Tjurina module for ``determinacy``), 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .coeff import parse_field
from .errors import InputError, LocsingError, MathError
from .fibres import (
    GENERIC,
    FamilySpec,
    default_primes,
    completed_fibre_dimension,
    fibre_field,
    load_family,
    modular_scan,
    parse_point,
    semicontinuity_check,
)
from .invariants import (
    determinacy_bound,
    full_report,
    has_isolated_singularity,
    is_complete_intersection,
    milnor_number,
    singular_locus_ideal,
    tjurina_number,
)
from .mora import DEFAULT_STEP_BUDGET, krull_dimension, leading_module, standard_basis, vector_space_dimension
from .parsing import parse_polynomial, parse_vector, split_top_level
from .poly import INFINITY, make_ring


def _json(v):
    """Value as stored in the JSON document: booleans and integers stay native."""
    if v is None:
        return "n/a"
    if v == INFINITY:
        return "infinite"
    return v


def _show(v):
    if isinstance(v, bool):
        return str(v).lower()
    return str(_json(v))


class _Output:
    """Collects values, flags and warnings; renders text or one JSON document."""

    def __init__(self, args, inputs: dict):
        self.args = args
        self.doc = {
            "command": args.command,
            "inputs": inputs,
            "field": None,
            "values": {},
            "flags": [],
            "warnings": [],
        }
        self.lines = []

    def value(self, key, v, line=None):
        self.doc["values"][key] = _json(v)
        self.lines.append(_show(v) if line is None else line)

    def emit(self, out):
        if self.args.format == "json":
            out.write(json.dumps(self.doc, indent=2, ensure_ascii=False) + "\n")
        else:
            for w in self.doc["warnings"]:
                print(f"warning: {w}", file=sys.stderr)
            if self.lines:
                out.write("\n".join(self.lines) + "\n")


# ---------------------------------------------------------------------------
# input handling


def _ring(args):
    if not args.vars:
        raise InputError("--vars is required for inline or file input")
    return make_ring(args.vars, parse_field(args.field), args.ordering)


def _raw_inputs(args) -> list:
    if args.file and args.exprs:
        raise InputError("give either inline expressions or --file, not both")
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        chunks = [line.split("#", 1)[0] for line in text.splitlines()]
    else:
        chunks = args.exprs
    items = [s for chunk in chunks for s in split_top_level(chunk)]
    if not items:
        raise InputError("no input expressions")
    return items


def _generators(args, ring, allow_vectors=False):
    items = _raw_inputs(args)
    if allow_vectors and items[0].lstrip().startswith("["):
        return items, [parse_vector(s, ring) for s in items]
    return items, [parse_polynomial(s, ring) for s in items]


def _single(args, ring):
    items, gens = _generators(args, ring)
    if len(gens) != 1:
        raise InputError(f"{args.command} takes exactly one polynomial")
    return items, gens[0]


def _family(args) -> FamilySpec:
    if args.family:
        if args.exprs or args.file:
            raise InputError("give either --family or inline expressions, not both")
        fam = load_family(args.family)
        if args.ordering_given:
            fam = fam.with_ordering(args.ordering)
        return fam
    if not args.vars:
        raise InputError("--family or --vars with an expression is required")
    items = _raw_inputs(args)
    if len(items) == 1:
        return FamilySpec.hypersurface(args.base, args.vars, items[0], args.ordering)
    return FamilySpec.ideal(args.base, args.vars, items, args.ordering)


def _family_inputs(args, fam: FamilySpec) -> dict:
    return {
        "family": args.family,
        "base": fam.base,
        "vars": list(fam.ring.variables),
        "kind": fam.kind,
        "ordering": fam.ring.ordering.kind,
        "entries": [str(f) for f in fam.entries],
    }


def _ring_inputs(args, ring, items) -> dict:
    return {
        "vars": list(ring.variables),
        "ordering": ring.ordering.kind,
        "expressions": list(items),
    }


def _points(text: str) -> list:
    return [parse_point(s) for s in text.split(",") if s.strip()]


def _capture(out: _Output, fn, *a):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = fn(*a)
    for w in caught:
        out.doc["warnings"].append(f"{w.category.__name__}: {w.message}")
    return result


# ---------------------------------------------------------------------------
# subcommands


def _ring_command(args):
    ring = _ring(args)
    allow_vectors = args.command in ("std-basis", "dim")
    if args.command in ("milnor", "tjurina"):
        items, f = _single(args, ring)
        gens = [f]
    else:
        items, gens = _generators(args, ring, allow_vectors)
    out = _Output(args, _ring_inputs(args, ring, items))
    out.doc["field"] = ring.field.descriptor
    budget = args.budget
    cmd = args.command
    if cmd == "milnor":
        out.value("mu", _capture(out, milnor_number, gens[0], budget))
    elif cmd == "tjurina":
        out.value("tau", _capture(out, tjurina_number, gens[0], budget))
    elif cmd == "report":
        rep = full_report(gens, budget)
        out.doc["flags"] = list(rep.flags)
        out.doc["warnings"].extend(rep.warnings)
        for k in ("n", "m", "mu", "tau", "dim_T_I", "ord_I", "determinacy_bound", "is_CI", "isolated"):
            v = getattr(rep, k)
            out.value(k, v, f"{k}: {_show(v)}")
        for flag in out.doc["flags"]:
            out.lines.append(f"flag: {flag}")
    elif cmd == "determinacy":
        b = determinacy_bound(gens, budget)
        out.value("determinacy_bound", b)
        if ring.field.characteristic:
            out.doc["flags"].append("determinacy_over_finite_field")
    elif cmd == "ci-check":
        ci = is_complete_intersection(gens, budget)
        out.value("is_CI", ci)
    elif cmd == "sing-locus":
        sing = singular_locus_ideal(gens, budget)
        iso = has_isolated_singularity(gens, budget)
        out.doc["values"]["generators"] = [str(g) for g in sing]
        out.doc["values"]["isolated"] = iso
        out.lines.extend(str(g) for g in sing)
        out.lines.append(f"isolated: {_show(iso)}")
    elif cmd == "std-basis":
        sb = standard_basis(gens, budget)
        lm = leading_module(sb)
        out.doc["values"]["basis"] = [str(g) for g in sb.elements]
        out.doc["values"]["leading"] = [[list(e) for e in lm.components[j]] for j in range(lm.rank)]
        out.lines.extend(str(g) for g in sb.elements)
    elif cmd == "dim":
        sb = standard_basis(gens, budget)
        vs, kd = vector_space_dimension(sb), krull_dimension(sb)
        out.value("vector_space", vs, f"vector-space: {_show(vs)}")
        out.value("krull", kd, f"krull: {kd}")
    return out, 0


def _fibre_dim(args):
    fam = _family(args)
    points = _points(args.point) if args.point else [GENERIC]
    out = _Output(args, _family_inputs(args, fam))
    out.doc["inputs"]["points"] = [str(p) for p in points]
    fields = []
    for pt in points:
        fields.append(fibre_field(fam, pt).descriptor)
        d = completed_fibre_dimension(fam, pt, args.budget)
        out.doc["values"][str(pt)] = _json(d)
        out.lines.append(_show(d) if len(points) == 1 else f"{pt}: {_show(d)}")
    out.doc["field"] = fields[0] if len(set(fields)) == 1 else fields
    return out, 0


def _modular_scan(args):
    if not args.family:
        args.base = "Z"
    fam = _family(args)
    primes = [int(p) for p in args.primes.split(",") if p.strip()] if args.primes else default_primes(fam)
    rep = modular_scan(fam, primes, args.budget, args.workers)
    out = _Output(args, _family_inputs(args, fam))
    out.doc["inputs"]["primes"] = sorted(set(primes))
    out.doc["field"] = "Z"
    d = rep.as_dict()
    out.doc["values"] = d
    width = max(len(f"p={p}") for p in primes)
    width = max(width, len("generic"))
    out.lines.append(f"{'generic':<{width}}  {d['generic']}")
    for p in sorted(set(primes)):
        shown = d["values"].get(str(p), "bad")
        out.lines.append(f"{f'p={p}':<{width}}  {shown}")
    fmt = lambda xs: ", ".join(str(x) for x in xs) or "none"
    out.lines.append(f"lucky: {fmt(rep.lucky)}")
    out.lines.append(f"bad: {fmt(f'{p} ({r})' for p, r in rep.bad)}")
    out.lines.append(f"violations: {fmt(rep.violations)}")
    if rep.violations:
        out.doc["flags"].append("semicontinuity_violation")
    return out, 1 if rep.violations else 0


def _semicont(args):
    fam = _family(args)
    if not args.special:
        raise InputError("--special is required")
    special = parse_point(args.special)
    if args.nearby:
        nearby = _points(args.nearby)
    elif fam.base == "Z":
        nearby = [GENERIC] + [parse_point(f"p={p}") for p in default_primes(fam) if f"p={p}" != str(special)]
    else:
        nearby = [GENERIC] + [parse_point(f"t={c}") for c in range(1, 6) if f"t={c}" != str(special)]
    rep = semicontinuity_check(fam, special, nearby, args.budget)
    out = _Output(args, _family_inputs(args, fam))
    out.doc["inputs"]["special"] = str(special)
    out.doc["inputs"]["nearby"] = [str(p) for p in nearby]
    out.doc["field"] = fam.base
    out.doc["values"] = rep.as_dict()
    out.lines.append(f"special {special}: {_show(rep.special_value)}")
    for c in rep.comparisons:
        tail = f" ({c.detail})" if c.detail else ""
        out.lines.append(f"{c.point}: {_show(c.value)} <= {_show(rep.special_value)}  {c.verdict}{tail}")
    if rep.vacuous:
        out.doc["flags"].append("vacuous")
        out.lines.append("special value is infinite: inequality is vacuous")
    if not rep.ok:
        out.doc["flags"].append("hard_failure")
    return out, 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# argument parsing


RING_COMMANDS = {
    "milnor": "Milnor number mu(f)",
    "tjurina": "Tjurina number tau(f)",
    "report": "all invariants of an ideal",
    "determinacy": "contact-determinacy bound 2 dim T_I - ord(I) + 2",
    "ci-check": "complete-intersection test",
    "sing-locus": "singular-locus ideal of a complete intersection",
    "std-basis": "local standard basis",
    "dim": "vector-space and Krull dimension of the quotient",
}


def _add_common(p, ring_flags=True):
    p.add_argument("exprs", nargs="*", help="polynomials (comma-separated or one per argument)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET, help="reduction-step budget")
    p.add_argument("--file", help="read expressions from a file, one per line")
    p.add_argument("--vars", help="comma-separated variable names, e.g. x,y")
    p.add_argument("--ordering", choices=("ds", "ls"), default=None)
    if ring_flags:
        p.add_argument("--field", default="Q", help="Q, F:<p>, Qt or Ft:<p>")


def _add_family(p, base=True):
    p.add_argument("--family", help="family file")
    if base:
        p.add_argument("--base", default="Z", help="base ring for inline families: Z, Q[t] or F:<p>[t]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locsing", description="Local singularity invariants and fibre scans.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in RING_COMMANDS.items():
        _add_common(sub.add_parser(name, help=help_))
    p = sub.add_parser("fibre-dim", help="completed fibre dimension at points")
    _add_common(p, ring_flags=False)
    _add_family(p)
    p.add_argument("--point", help="comma-separated points: p=5, t=0, generic (default generic)")
    p = sub.add_parser("modular-scan", help="values over Q and over F_p for sampled primes")
    _add_common(p, ring_flags=False)
    _add_family(p, base=False)
    p.add_argument("--primes", help="comma-separated primes (default: first 10 safe primes)")
    p.add_argument("--workers", type=int, default=1, help="processes for the per-prime work (default 1)")
    p = sub.add_parser("semicont-check", help="semicontinuity of d_hat around a special point")
    _add_common(p, ring_flags=False)
    _add_family(p)
    p.add_argument("--special", help="special point, e.g. p=5 or t=0")
    p.add_argument("--nearby", help="comma-separated nearby points")
    return parser


def run_command(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.ordering_given = args.ordering is not None
    args.ordering = args.ordering or "ds"
    try:
        if args.command in RING_COMMANDS:
            out, status = _ring_command(args)
        elif args.command == "fibre-dim":
            out, status = _fibre_dim(args)
        elif args.command == "modular-scan":
            out, status = _modular_scan(args)
        else:
            out, status = _semicont(args)
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LocsingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.emit(stdout)
    return status


def main() -> None:
    sys.exit(run_command())
