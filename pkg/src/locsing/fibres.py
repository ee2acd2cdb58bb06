"""Families over Z and k[t]: completed fibres, modular scans and
semicontinuity checks.

A family is a q x p presentation matrix T with entries in A[x], where A is
Z or k[t] (k = Q or F_p).  The module it presents is coker(A[[x]]^p -> A[[x]]^q);
its completed fibre at a prime P of A is the cokernel of T with every
coefficient pushed into the residue field k(P), read over k(P)[[x]].

Hypersurface and ideal families are stored as 1 x m matrices.  Their
scalar "fibre value" is the Milnor number for a hypersurface (the fibre of
A[[x]]/j(F)) and dim k(P)[[x]]/I(P) for an ideal.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .coeff import QQ, Field, PrimeField, RationalField, RationalFunctionField, is_prime, primes_from, reduce_mod_p
from .errors import (
    FamilyFormatError,
    IncompatiblePoint,
    InputError,
    LocsingError,
    NotPrime,
    ResourceExhausted,
    SpecializationError,
)
from .invariants import InvariantReport, full_report, milnor_number
from .mora import DEFAULT_STEP_BUDGET, standard_basis, vector_space_dimension
from .parsing import parse_polynomial
from .poly import INFINITY, LocalOrdering, ModuleVector, PolyMatrix, Polynomial, Ring, make_ring

KINDS = ("hypersurface", "ideal", "presentation")


# ---------------------------------------------------------------------------
# base rings


def _base_field(base: str) -> Optional[Field]:
    """None for Z, otherwise the coefficient field k of k[t]."""
    if base == "Z":
        return None
    if base == "Q[t]":
        return QQ
    if base.startswith("F:") and base.endswith("[t]"):
        try:
            return PrimeField(int(base[2:-3]))
        except ValueError:
            pass
    raise FamilyFormatError(f"unknown base ring {base!r}; expected Z, Q[t] or F:<p>[t]")


def _entry_ring(base: str, variables, ordering) -> Ring:
    k = _base_field(base)
    field_ = QQ if k is None else RationalFunctionField(k)
    return make_ring(variables, field_, ordering)


def _check_base_coefficients(base: str, f: Polynomial):
    for c, e in f.terms:
        if base == "Z":
            if Fraction(c).denominator != 1:
                raise FamilyFormatError(f"coefficient {c} of {f} is not an integer")
        elif not c.is_polynomial():
            raise FamilyFormatError(f"coefficient {c} of {f} is not a polynomial in t")


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Prime:
    """The prime <p> of Z; residue field F_p."""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or not is_prime(self.p):
            raise NotPrime(f"{self.p!r} is not a prime")

    def __str__(self):
        return f"p={self.p}"


@dataclass(frozen=True)
class Value:
    """The prime <t - c> of k[t]; residue field k."""

    c: Union[int, Fraction]

    def __str__(self):
        return f"t={self.c}"


@dataclass(frozen=True)
class Generic:
    """The generic point <0>; residue field Q or k(t)."""

    def __str__(self):
        return "generic"


GENERIC = Generic()
FibrePoint = Union[Prime, Value, Generic]


def parse_point(text: str) -> FibrePoint:
    """``p=5``, ``t=0``, ``t=-1/2`` or ``generic``."""
    s = text.strip().replace(" ", "")
    if s.lower() == "generic":
        return GENERIC
    key, sep, val = s.partition("=")
    if sep and key in ("p", "t"):
        try:
            c = int(val) if key == "p" else Fraction(val)
        except (ValueError, ZeroDivisionError):
            c = None
        if c is not None:
            if key == "p":
                return Prime(c)
            return Value(int(c) if c.denominator == 1 else c)
    raise InputError(f"bad fibre point {text!r}; expected p=<prime>, t=<value> or generic")


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class FamilySpec:
    """A presentation matrix over A[x] (row-major ``entries``, ``shape`` = (q, p))."""

    base: str
    ring: Ring
    kind: str
    shape: tuple
    entries: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilyFormatError(f"unknown family kind {self.kind!r}")
        q, p = self.shape
        if q < 1 or p < 1 or len(self.entries) != q * p:
            raise FamilyFormatError(f"{len(self.entries)} entries do not fill a {q}x{p} matrix")
        if self.kind == "hypersurface" and self.shape != (1, 1):
            raise FamilyFormatError("a hypersurface family has exactly one entry")
        if self.kind == "ideal" and q != 1:
            raise FamilyFormatError("an ideal family is a single row of generators")
        if self.ring != _entry_ring(self.base, self.ring.variables, self.ring.ordering):
            raise FamilyFormatError(f"entry ring {self.ring} does not match base {self.base}")
        for f in self.entries:
            if f.ring != self.ring:
                raise FamilyFormatError("entries from different rings")
            _check_base_coefficients(self.base, f)

    @classmethod
    def build(cls, base: str, variables, kind: str, entries, shape=None, ordering="ds") -> "FamilySpec":
        """Construct from entry strings or polynomials; ``shape`` defaults to one row."""
        ring = _entry_ring(base, variables, ordering)
        polys = tuple(parse_polynomial(e, ring) if isinstance(e, str) else ring(e) for e in entries)
        return cls(base, ring, kind, tuple(shape) if shape else (1, len(polys)), polys)

    @classmethod
    def hypersurface(cls, base: str, variables, f, ordering="ds") -> "FamilySpec":
        return cls.build(base, variables, "hypersurface", [f], ordering=ordering)

    @classmethod
    def ideal(cls, base: str, variables, gens, ordering="ds") -> "FamilySpec":
        return cls.build(base, variables, "ideal", list(gens), ordering=ordering)

    @classmethod
    def presentation(cls, base: str, variables, rows, ordering="ds") -> "FamilySpec":
        rows = [list(r) for r in rows]
        if not rows or len({len(r) for r in rows}) != 1:
            raise FamilyFormatError("presentation rows must be nonempty and of equal length")
        flat = [e for r in rows for e in r]
        return cls.build(base, variables, "presentation", flat, (len(rows), len(rows[0])), ordering)

    @property
    def base_field(self) -> Optional[Field]:
        return _base_field(self.base)

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def matrix(self) -> PolyMatrix:
        q, p = self.shape
        return PolyMatrix([list(self.entries[i * p:(i + 1) * p]) for i in range(q)])

    def with_ordering(self, ordering) -> "FamilySpec":
        ring = self.ring.with_ordering(ordering)
        return FamilySpec(self.base, ring, self.kind, self.shape, tuple(f.change_ring(ring) for f in self.entries))


# ---------------------------------------------------------------------------
# specialization


def fibre_field(family: FamilySpec, point: FibrePoint) -> Field:
    """k(P): F_p, Q, k or k(t) according to base and point."""
    k = family.base_field
    if isinstance(point, Generic):
        return QQ if k is None else family.ring.field
    if k is None:
        if not isinstance(point, Prime):
            raise IncompatiblePoint(f"{point} is not a point of Spec Z")
        return PrimeField(point.p)
    if not isinstance(point, Value):
        raise IncompatiblePoint(f"{point} is not a point of Spec {family.base}")
    return k


def _residue_map(family: FamilySpec, point: FibrePoint):
    k = family.base_field
    if isinstance(point, Generic):
        return lambda c: c
    if k is None:
        p = point.p
        return lambda c: reduce_mod_p(c, p).value
    c0 = k.convert(point.c)
    return lambda c: c.evaluate(c0)


def specialize_matrix(family: FamilySpec, point: FibrePoint) -> PolyMatrix:
    K = fibre_field(family, point)
    target = family.ring.with_field(K)
    phi = _residue_map(family, point)
    M = family.matrix
    return PolyMatrix([[f.map_coefficients(phi, target) for f in row] for row in M.rows])


def specialize(family: FamilySpec, point: FibrePoint) -> list:
    """Generators over k(P): polynomials when q = 1, column vectors otherwise."""
    M = specialize_matrix(family, point)
    if M.nrows == 1:
        return list(M.rows[0])
    ring = M.rows[0][0].ring
    return [ModuleVector(M.column(j), ring) for j in range(M.ncols)]


def _cokernel_dimension(gens, budget):
    return vector_space_dimension(standard_basis(gens, budget=budget))


def completed_fibre_dimension(family: FamilySpec, point: FibrePoint, budget: int = DEFAULT_STEP_BUDGET):
    """d_hat at P: mu(F(P)) for a hypersurface, otherwise dim of coker T(P)."""
    gens = specialize(family, point)
    if family.kind == "hypersurface":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return milnor_number(gens[0], budget)
    return _cokernel_dimension(gens, budget)


# ---------------------------------------------------------------------------
# modular scans


def _integer_coefficients(family: FamilySpec) -> list:
    out = []
    for f in family.entries:
        if f:
            out.append(int(f.terms[0][0]))
            out.append(int(f.terms[-1][0]))
    return out


def default_primes(family: FamilySpec, count: int = 10) -> list:
    """First ``count`` primes dividing no leading or trailing coefficient."""
    if family.base != "Z":
        raise IncompatiblePoint("prime sampling needs a family over Z")
    coeffs = _integer_coefficients(family)
    out = []
    for p in primes_from(2):
        if all(c % p for c in coeffs):
            out.append(p)
            if len(out) == count:
                return out


@dataclass
class ModularReport:
    generic: object
    values: dict
    lucky: list
    bad: list
    violations: list

    def as_dict(self) -> dict:
        return {
            "generic": _show(self.generic),
            "values": {str(p): _show(v) for p, v in self.values.items()},
            "lucky": list(self.lucky),
            "bad": [[p, reason] for p, reason in self.bad],
            "violations": list(self.violations),
        }


def _show(v):
    return "infinite" if v == INFINITY else v


def _value_task(args):
    family, point, budget = args
    try:
        return completed_fibre_dimension(family, point, budget), None
    except ResourceExhausted as exc:
        return None, f"ResourceExhausted: {exc}"
    except SpecializationError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def modular_scan(
    family: FamilySpec,
    primes: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_STEP_BUDGET,
    workers: int = 1,
) -> ModularReport:
    """Fibre value over Q and over F_p for each sampled prime.

    Primes are deduplicated and processed in increasing order; ``workers`` > 1
    runs them in a process pool with identical output.
    """
    if family.base != "Z":
        raise IncompatiblePoint("modular scans need a family over Z")
    if primes is None:
        primes = default_primes(family)
    primes = list(primes)
    if not primes:
        raise InputError("no primes to scan")
    points = [Prime(p) for p in sorted(set(primes))]
    generic = completed_fibre_dimension(family, GENERIC, budget)
    tasks = [(family, pt, budget) for pt in points]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_value_task, tasks))
    else:
        results = [_value_task(t) for t in tasks]
    values, bad = {}, []
    for pt, (value, err) in zip(points, results):
        if err is None:
            values[pt.p] = value
        else:
            bad.append((pt.p, err))
    lucky = [p for p, v in values.items() if v == generic]
    violations = [p for p, v in values.items() if v != INFINITY and v < generic]
    return ModularReport(generic, values, lucky, bad, violations)


# ---------------------------------------------------------------------------
# semicontinuity


PASS = "PASS"
FAIL = "FAIL"
OUTSIDE_U = "OUTSIDE_U"
VACUOUS = "VACUOUS"
ERROR = "ERROR"


@dataclass
class Comparison:
    point: FibrePoint
    value: object
    verdict: str
    hard: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "point": str(self.point),
            "value": _show(self.value) if self.value is not None else "n/a",
            "verdict": self.verdict,
            "hard": self.hard,
            "detail": self.detail,
        }


@dataclass
class SemicontinuityReport:
    special: FibrePoint
    special_value: object
    comparisons: list = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.special_value == INFINITY

    @property
    def ok(self) -> bool:
        return all(c.verdict != FAIL for c in self.comparisons)

    def as_dict(self) -> dict:
        return {
            "special": str(self.special),
            "special_value": _show(self.special_value),
            "vacuous": self.vacuous,
            "ok": self.ok,
            "comparisons": [c.as_dict() for c in self.comparisons],
        }


def semicontinuity_check(
    family: FamilySpec,
    special: FibrePoint,
    nearby: Sequence[FibrePoint],
    budget: int = DEFAULT_STEP_BUDGET,
) -> SemicontinuityReport:
    """Compare d_hat(q) <= d_hat(special) for each nearby q.

    The generic point lies in every neighbourhood, so a failure there is a
    hard FAIL.  Other failures are OUTSIDE_U: the point may simply lie
    outside the (non-constructive) open set of the semicontinuity theorem.
    """
    s = completed_fibre_dimension(family, special, budget)
    report = SemicontinuityReport(special, s)
    for q in nearby:
        hard = isinstance(q, Generic)
        try:
            v = completed_fibre_dimension(family, q, budget)
        except LocsingError as exc:
            report.comparisons.append(Comparison(q, None, ERROR, hard, f"{type(exc).__name__}: {exc}"))
            continue
        if s == INFINITY:
            verdict = VACUOUS
        elif v <= s:
            verdict = PASS
        else:
            verdict = FAIL if hard else OUTSIDE_U
        report.comparisons.append(Comparison(q, v, verdict, hard))
    return report


# ---------------------------------------------------------------------------
# per-fibre invariants


@dataclass
class FibreReport:
    point: FibrePoint
    fibre_field: str
    d_hat: object
    invariants: Optional[InvariantReport]
    error: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "point": str(self.point),
            "fibre_field": self.fibre_field,
            "d_hat": "n/a" if self.d_hat is None else _show(self.d_hat),
            "invariants": self.invariants.as_dict() if self.invariants else None,
            "error": self.error,
        }


def fibre_invariant_scan(
    family: FamilySpec, points: Sequence[FibrePoint], budget: int = DEFAULT_STEP_BUDGET
) -> list:
    """full_report at each point; d_hat is dim T_I.  Degenerate fibres are
    recorded with their error instead of aborting the scan."""
    if family.kind == "presentation":
        raise InputError("invariant scans need a hypersurface or ideal family")
    out = []
    for pt in points:
        K = fibre_field(family, pt)
        try:
            rep = full_report(specialize(family, pt), budget)
        except LocsingError as exc:
            out.append(FibreReport(pt, K.descriptor, None, None, f"{type(exc).__name__}: {exc}"))
        else:
            out.append(FibreReport(pt, K.descriptor, rep.dim_T_I, rep))
    return out


# ---------------------------------------------------------------------------
# family files


_HEADER_KEYS = ("base", "vars", "kind", "ordering", "shape")


def parse_family(text: str) -> FamilySpec:
    """Read the family file format (see README)."""
    header = {}
    entries = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if entries is not None:
            entries.append(line)
            continue
        key, sep, val = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise FamilyFormatError(f"line {lineno}: expected 'key: value'")
        if key == "entries":
            entries = [val.strip()] if val.strip() else []
            continue
        if key not in _HEADER_KEYS:
            raise FamilyFormatError(f"line {lineno}: unknown header key {key!r}")
        if key in header:
            raise FamilyFormatError(f"line {lineno}: duplicate header key {key!r}")
        header[key] = val.strip()
    for key in ("base", "vars", "kind"):
        if key not in header:
            raise FamilyFormatError(f"missing header key {key!r}")
    if not entries:
        raise FamilyFormatError("no entries")
    ordering = header.get("ordering", "ds")
    if ordering not in ("ds", "ls"):
        raise FamilyFormatError(f"unknown ordering {ordering!r}")
    shape = None
    if "shape" in header:
        q, x, p = header["shape"].lower().partition("x")
        try:
            shape = (int(q), int(p))
        except ValueError:
            raise FamilyFormatError(f"bad shape {header['shape']!r}; expected QxP") from None
    return FamilySpec.build(header["base"], header["vars"], header["kind"], entries, shape, ordering)


def format_family(family: FamilySpec) -> str:
    q, p = family.shape
    lines = [
        f"base: {family.base}",
        f"vars: {', '.join(family.ring.variables)}",
        f"kind: {family.kind}",
        f"ordering: {family.ring.ordering.kind}",
        f"shape: {q}x{p}",
        "entries:",
    ]
    lines.extend(str(f) for f in family.entries)
    return "\n".join(lines) + "\n"


def load_family(path) -> FamilySpec:
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh.read())
