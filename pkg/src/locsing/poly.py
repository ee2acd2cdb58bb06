"""Sparse multivariate polynomials over the coefficient fields, local orderings,
derivatives, Jacobian matrices and their minors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .coeff import QQ, Field
from .errors import (
    DivisionByZero,
    InputError,
    LengthMismatch,
    RingMismatch,
    SizeTooLarge,
    TooManyVariables,
)

INFINITY = math.inf
MAX_VARIABLES = 16

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class LocalOrdering:
    """A local monomial ordering (1 is the largest monomial).

    ``ds``: negative degree reverse lexicographic.  Lower total degree is
    larger; ties are broken reverse-lexicographically.
    ``ls``: negative lexicographic.

    Monomials are mapped to *keys*, tuples whose ascending lexicographic order
    is the descending monomial order.  Keys are additive under monomial
    multiplication, so the standard-basis engine works on keys directly.
    """

    kind: str = "ds"

    def __post_init__(self):
        if self.kind not in ("ds", "ls"):
            raise InputError(f"unknown ordering {self.kind!r}; expected ds or ls")

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "ds"

    def key(self, exps: tuple) -> tuple:
        if self.kind == "ds":
            return (sum(exps),) + exps[::-1]
        return exps

    def exps(self, key: tuple) -> tuple:
        if self.kind == "ds":
            return key[:0:-1]
        return key

    def key_degree(self, key: tuple) -> int:
        if self.kind == "ds":
            return key[0]
        return sum(key)


DS = LocalOrdering("ds")
LS = LocalOrdering("ls")


def compare_monomials(ordering: LocalOrdering, a: Sequence[int], b: Sequence[int]) -> int:
    """Return GREATER (1), EQUAL (0) or LESS (-1) comparing x^a with x^b."""
    if len(a) != len(b):
        raise LengthMismatch(f"exponent vectors of length {len(a)} and {len(b)}")
    ka, kb = ordering.key(tuple(a)), ordering.key(tuple(b))
    if ka == kb:
        return EQUAL
    return GREATER if ka < kb else LESS


@dataclass(frozen=True)
class Ring:
    """k[x_1..x_n] localized at the origin, with a local ordering."""

    field: Field
    variables: tuple
    ordering: LocalOrdering = DS

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if len(vs) > MAX_VARIABLES:
            raise TooManyVariables(f"{len(vs)} variables; at most {MAX_VARIABLES} supported")
        if len(set(vs)) != len(vs):
            raise InputError(f"duplicate variable names in {vs}")
        for v in vs:
            if not v.isidentifier():
                raise InputError(f"invalid variable name {v!r}")
            if v == "t" and self.field.has_parameter:
                raise InputError("'t' is the field parameter and cannot be a variable")

    @property
    def n(self) -> int:
        return len(self.variables)

    def with_field(self, field: Field) -> "Ring":
        return Ring(field, self.variables, self.ordering)

    def with_ordering(self, ordering) -> "Ring":
        if isinstance(ordering, str):
            ordering = LocalOrdering(ordering)
        return Ring(self.field, self.variables, ordering)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.n: c}, _clean=True)

    def monomial(self, exps, c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.n:
            raise LengthMismatch(f"exponent vector {exps} for {self.n} variables")
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c}, _clean=True)

    def var(self, name_or_index) -> "Polynomial":
        i = self.index(name_or_index)
        e = [0] * self.n
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list:
        return [self.var(i) for i in range(self.n)]

    def index(self, name_or_index) -> int:
        if isinstance(name_or_index, int):
            if not 0 <= name_or_index < self.n:
                raise IndexError(f"variable index {name_or_index} out of range")
            return name_or_index
        try:
            return self.variables.index(name_or_index)
        except ValueError:
            raise InputError(f"{name_or_index!r} is not a variable of this ring") from None

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatch("polynomial from another ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]_{self.ordering.kind}"


def make_ring(variables, field: Field = QQ, ordering="ds") -> Ring:
    """Convenience constructor: ``make_ring("x,y")`` or ``make_ring(["x", "y"])``."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    if isinstance(ordering, str):
        ordering = LocalOrdering(ordering)
    return Ring(field, tuple(variables), ordering)


class Polynomial:
    """Immutable sparse polynomial; coefficients are the field's raw elements."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: Ring, terms: dict, _clean: bool = False):
        self.ring = ring
        if not _clean:
            K = ring.field
            terms = {tuple(e): K.convert(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if not K.is_zero(c)}
            for e in terms:
                if len(e) != ring.n or any(a < 0 for a in e):
                    raise LengthMismatch(f"bad exponent vector {e} for {ring.n} variables")
        self._terms = terms
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable) -> "Polynomial":
        """Build from ``(coefficient, exponents)`` pairs; repeated monomials add up."""
        K = ring.field
        acc = {}
        for c, e in terms:
            e = tuple(e)
            c = K.convert(c)
            acc[e] = K.add(acc[e], c) if e in acc else c
        return cls(ring, {e: c for e, c in acc.items() if not K.is_zero(c)}, _clean=True)

    # -- access ------------------------------------------------------------
    @property
    def terms(self) -> list:
        """``(coefficient, exponents)`` pairs, strictly decreasing in the ordering."""
        if self._sorted is None:
            key = self.ring.ordering.key
            self._sorted = [(self._terms[e], e) for e in sorted(self._terms, key=key)]
        return self._sorted

    def coefficients(self) -> dict:
        return dict(self._terms)

    def coefficient(self, exps) -> object:
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def leading_term(self):
        if not self._terms:
            return None
        return self.terms[0]

    @property
    def leading_monomial(self):
        return self.terms[0][1] if self._terms else None

    @property
    def leading_coefficient(self):
        return self.terms[0][0] if self._terms else self.ring.field.zero

    def constant_coefficient(self):
        return self._terms.get((0,) * self.ring.n, self.ring.field.zero)

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.n
        return all(e == zero for e in self._terms)

    def is_unit_local(self) -> bool:
        """True iff f is a unit of k[[x]], i.e. its constant term is nonzero."""
        return not self.ring.field.is_zero(self.constant_coefficient())

    def order(self):
        """Smallest total degree of a term; INFINITY for the zero polynomial."""
        if not self._terms:
            return INFINITY
        return min(sum(e) for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def ecart(self) -> int:
        if not self._terms:
            return 0
        return self.total_degree() - sum(self.leading_monomial)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} and {other.ring}")
            return other
        if isinstance(other, str):
            return NotImplemented
        try:
            return self.ring.constant(other)
        except InputError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.ring.field
        out = dict(self._terms)
        for e, c in o._terms.items():
            if e in out:
                s = K.add(out[e], c)
                if K.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial(self.ring, {e: K.neg(c) for e, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.ring.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = K.mul(c1, c2)
                if e in out:
                    s = K.add(out[e], c)
                    if K.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                elif not K.is_zero(c):
                    out[e] = c
        return Polynomial(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a non-negative integer")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        K = self.ring.field
        c = K.convert(c)
        if K.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: K.mul(v, c) for e, v in self._terms.items()}, _clean=True)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient))

    def derivative(self, var) -> "Polynomial":
        """Formal partial derivative; integer factors reduce in the field."""
        i = self.ring.index(var)
        K = self.ring.field
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k == 0:
                continue
            d = K.mul(c, K.from_int(k))
            if K.is_zero(d):
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1:]
            out[e2] = d
        return Polynomial(self.ring, out, _clean=True)

    def truncate(self, degree: int) -> "Polynomial":
        """Drop all terms of total degree >= degree."""
        return Polynomial(
            self.ring, {e: c for e, c in self._terms.items() if sum(e) < degree}, _clean=True
        )

    def map_coefficients(self, fn, ring: Ring) -> "Polynomial":
        """Apply ``fn`` to every coefficient, landing in ``ring`` (same variables)."""
        if ring.n != self.ring.n:
            raise RingMismatch("coefficient map must keep the variable count")
        return Polynomial(ring, {e: fn(c) for e, c in self._terms.items()})

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Same coefficients, possibly another ordering or a compatible field."""
        if ring.n != self.ring.n:
            raise RingMismatch("target ring has a different number of variables")
        if ring.field == self.ring.field:
            return Polynomial(ring, self._terms, _clean=True)
        return Polynomial(ring, self._terms)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i] (all images in one target ring)."""
        if len(images) != self.ring.n:
            raise LengthMismatch("need one image per variable")
        target = images[0].ring if images else self.ring
        K = target.field
        powers = [[target.one()] for _ in images]
        out = target.zero()
        for e, c in self._terms.items():
            term = target.constant(K.convert(c))
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * images[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if the remainder is nonzero.

        Uses the lexicographic (global) order internally, where division
        terminates; local orderings are not well-orders.
        """
        d = self._coerce(divisor)
        if not d:
            raise DivisionByZero("division by the zero polynomial")
        K = self.ring.field
        d_lead = max(d._terms)
        d_inv = K.inv(d._terms[d_lead])
        rem = dict(self._terms)
        quo = {}
        while rem:
            lead = max(rem)
            if any(a < b for a, b in zip(lead, d_lead)):
                raise ArithmeticError("division is not exact")
            m = tuple(a - b for a, b in zip(lead, d_lead))
            c = K.mul(rem[lead], d_inv)
            quo[m] = c
            for e, v in d._terms.items():
                e2 = tuple(a + b for a, b in zip(e, m))
                s = K.sub(rem.get(e2, K.zero), K.mul(c, v))
                if K.is_zero(s):
                    rem.pop(e2, None)
                else:
                    rem[e2] = s
        return Polynomial(self.ring, quo, _clean=True)

    # -- comparison / printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def _monomial_str(self, e) -> str:
        parts = []
        for v, k in zip(self.ring.variables, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        K = self.ring.field
        pieces = []
        for c, e in self.terms:
            neg, c = K.split_sign(c)
            mono = self._monomial_str(e)
            cs = K.format(c)
            if K.has_parameter and len(c.den) == 1 and sum(
                1 for a in c.num if not K.base.is_zero(a)
            ) > 1:
                cs = f"({cs})"
            if not mono:
                body = cs
            elif K.is_one(c):
                body = mono
            else:
                body = f"{cs}*{mono}"
            pieces.append(("-" if neg else "+", body))
        s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self}, ring={self.ring})"


class ModuleVector:
    """Element of the free module k[x]^q (entries share one ring)."""

    __slots__ = ("ring", "entries")

    def __init__(self, entries: Sequence[Polynomial], ring: Ring | None = None):
        entries = tuple(entries)
        if not entries:
            raise InputError("a module vector needs at least one entry")
        ring = ring or entries[0].ring
        for f in entries:
            if not isinstance(f, Polynomial) or f.ring != ring:
                raise RingMismatch("vector entries must share one ring")
        self.ring = ring
        self.entries = entries

    @classmethod
    def unit(cls, ring: Ring, rank: int, j: int) -> "ModuleVector":
        return cls([ring.one() if i == j else ring.zero() for i in range(rank)], ring)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __bool__(self):
        return not self.is_zero()

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def _check(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch("vectors over different rings")
        if other.rank != self.rank:
            from .errors import RankMismatch

            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return ModuleVector([a + b for a, b in zip(self.entries, o.entries)], self.ring)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return ModuleVector([a - b for a, b in zip(self.entries, o.entries)], self.ring)

    def __neg__(self):
        return ModuleVector([-a for a in self.entries], self.ring)

    def __mul__(self, scalar):
        return ModuleVector([a * scalar for a in self.entries], self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.entries) + "]"

    __repr__ = __str__


FreeModuleVector = ModuleVector


def as_vectors(gens) -> list:
    """Accept polynomials (rank 1) or vectors; return a list of ModuleVectors."""
    out = []
    for g in gens:
        if isinstance(g, Polynomial):
            out.append(ModuleVector([g]))
        elif isinstance(g, ModuleVector):
            out.append(g)
        else:
            raise InputError(f"expected a polynomial or module vector, got {g!r}")
    return out


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise InputError("matrix rows have different lengths")
            ring = rows[0][0].ring if width else None
            for r in rows:
                for f in r:
                    if f.ring != ring:
                        raise RingMismatch("matrix entries must share one ring")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> ModuleVector:
        return ModuleVector([r[j] for r in self.rows])

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.rows)))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def _common_ring(F: Sequence[Polynomial]) -> Ring:
    if not F:
        raise InputError("empty polynomial list")
    ring = F[0].ring
    for f in F:
        if f.ring != ring:
            raise RingMismatch("polynomials from different rings")
    return ring


def jacobian_matrix(F: Sequence[Polynomial]) -> PolyMatrix:
    """n x m matrix with entry (i, j) = dF_j/dx_i."""
    ring = _common_ring(F)
    return PolyMatrix([[f.derivative(i) for f in F] for i in range(ring.n)])


def cofactor_determinant(rows) -> Polynomial:
    """Laplace expansion along the first row; used for small matrices."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * cofactor_determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0].ring.zero()


def bareiss_determinant(rows) -> Polynomial:
    """Fraction-free Gaussian elimination; every division is exact."""
    A = [list(r) for r in rows]
    n = len(A)
    ring = A[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num.exact_div(prev) if not prev.is_constant() else num.scale(
                    ring.field.inv(prev.constant_coefficient())
                )
            A[i][k] = ring.zero()
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(M) -> Polynomial:
    rows = M.rows if isinstance(M, PolyMatrix) else [tuple(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        raise InputError("determinant of an empty matrix needs a ring; use minors(M, 0)")
    if n <= 3:
        return cofactor_determinant(rows)
    return bareiss_determinant(rows)


def minors(M: PolyMatrix, d: int) -> list:
    """All d x d minors, rows then columns chosen in lexicographic order.

    ``d = 0`` gives ``[1]`` (the empty determinant).
    """
    if d < 0:
        raise SizeTooLarge("minor size must be non-negative")
    if d > min(M.nrows, M.ncols):
        raise SizeTooLarge(f"{d}x{d} minors of a {M.nrows}x{M.ncols} matrix")
    if d == 0:
        ring = M.rows[0][0].ring
        return [ring.one()]
    out = []
    for rs in combinations(range(M.nrows), d):
        for cs in combinations(range(M.ncols), d):
            out.append(determinant(M.submatrix(rs, cs)))
    return out


def order_of_ideal(F: Sequence[Polynomial]) -> int:
    """ord(I) = max{k : I in <x>^k} = min order of the generators."""
    from .errors import ZeroIdeal

    if not F:
        raise ZeroIdeal("empty generator list")
    orders = [f.order() for f in F]
    best = min(orders)
    if best == INFINITY:
        raise ZeroIdeal("all generators are zero")
    return best
