"""Singularity invariants of one fibre: Milnor and Tjurina numbers, the
Tjurina module T_I, ord(I), the contact-determinacy bound, complete
intersection and isolated-singularity tests."""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .coeff import PrimeField
from .errors import (
    EmptyGeneratorList,
    ImproperIdeal,
    InputError,
    NotCompleteIntersection,
    NotFinitelyDetermined,
    RingMismatch,
)
from .mora import (
    DEFAULT_STEP_BUDGET,
    ideal_membership_local,
    krull_dimension,
    standard_basis,
    vector_space_dimension,
)
from .poly import INFINITY, ModuleVector, Polynomial, jacobian_matrix, minors, order_of_ideal

MAX_GENERATORS = 16


class NotSingularAtOrigin(UserWarning):
    """The hypersurface does not pass through the origin (f is a unit)."""


def _generators(F) -> list:
    if isinstance(F, Polynomial):
        F = [F]
    F = list(F)
    if not F:
        raise EmptyGeneratorList("no generators given")
    if len(F) > MAX_GENERATORS:
        raise InputError(f"{len(F)} generators; at most {MAX_GENERATORS} supported")
    ring = F[0].ring
    for f in F:
        if not isinstance(f, Polynomial):
            raise InputError(f"expected polynomials, got {f!r}")
        if f.ring != ring:
            raise RingMismatch("generators from different rings")
    return F


def jacobian_ideal(f: Polynomial) -> list:
    return [f.derivative(i) for i in range(f.ring.n)]


def _quotient_dimension(gens, budget):
    return vector_space_dimension(standard_basis(gens, budget=budget))


def _unit_case(f: Polynomial, name: str):
    if f.is_unit_local():
        warnings.warn(
            f"{name}: {f} is a unit, the hypersurface misses the origin; returning 0",
            NotSingularAtOrigin,
            stacklevel=3,
        )
        return True
    return False


def milnor_number(f: Polynomial, budget: int = DEFAULT_STEP_BUDGET):
    """mu(f) = dim k[[x]]/j(f).  mu(0) is INFINITY; a unit gives 0 with a warning."""
    if f.is_zero():
        return INFINITY
    if _unit_case(f, "milnor_number"):
        return 0
    return _quotient_dimension(jacobian_ideal(f), budget)


def tjurina_number(f: Polynomial, budget: int = DEFAULT_STEP_BUDGET):
    """tau(f) = dim k[[x]]/<f, j(f)>."""
    if f.is_zero():
        return INFINITY
    if _unit_case(f, "tjurina_number"):
        return 0
    return _quotient_dimension([f] + jacobian_ideal(f), budget)


def tjurina_module_gens(F: Sequence[Polynomial]) -> list:
    """Generators of I*k[x]^m + <df/dx_1, ..., df/dx_n> inside k[x]^m."""
    F = _generators(F)
    ring = F[0].ring
    m = len(F)
    zero = ring.zero()
    gens = []
    for f in F:
        if f.is_zero():
            continue
        for j in range(m):
            gens.append(ModuleVector([f if k == j else zero for k in range(m)], ring))
    J = jacobian_matrix(F)
    for i in range(ring.n):
        gens.append(ModuleVector(list(J.rows[i]), ring))
    return gens


def tjurina_module_dimension(F: Sequence[Polynomial], budget: int = DEFAULT_STEP_BUDGET):
    """dim_k T_I; for a single generator this is the Tjurina number."""
    return _quotient_dimension(tjurina_module_gens(F), budget)


def determinacy_bound(F: Sequence[Polynomial], budget: int = DEFAULT_STEP_BUDGET) -> int:
    """2 dim T_I - ord(I) + 2; NotFinitelyDetermined when dim T_I is infinite."""
    F = _generators(F)
    ordI = order_of_ideal(F)
    t = tjurina_module_dimension(F, budget)
    if t == INFINITY:
        raise NotFinitelyDetermined("dim T_I is infinite")
    return 2 * t - ordI + 2


def _check_proper(F):
    for f in F:
        if f.is_unit_local():
            raise ImproperIdeal(f"{f} is a unit; the ideal is not proper")


def is_complete_intersection(F: Sequence[Polynomial], budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """dim k[[x]]/I == n - m (the power series ring is Cohen-Macaulay, so this
    is the same as F being a regular sequence)."""
    F = _generators(F)
    _check_proper(F)
    ring = F[0].ring
    return krull_dimension(standard_basis(F, budget=budget)) == ring.n - len(F)


def singular_locus_ideal(F: Sequence[Polynomial], budget: int = DEFAULT_STEP_BUDGET) -> list:
    """Generators of I + (m x m minors of the Jacobian) for a complete intersection.

    m = n - dim is the codimension; these minors cut out the points where the
    fibre fails the Jacobian criterion.
    """
    F = _generators(F)
    if not is_complete_intersection(F, budget):
        raise NotCompleteIntersection("singular locus only defined here for complete intersections")
    return list(F) + minors(jacobian_matrix(F), len(F))


def has_isolated_singularity(F: Sequence[Polynomial], budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """The singular locus is supported at most at the origin."""
    sing = singular_locus_ideal(F, budget)
    return _quotient_dimension(sing, budget) != INFINITY


def mu_equals_tau(f: Polynomial, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """f in j(f), decided by a normal form against a standard basis of j(f)."""
    if f.is_zero():
        return True
    if f.is_unit_local():
        return True
    J = jacobian_ideal(f)
    if not any(J):
        return False
    return ideal_membership_local(f, standard_basis(J, budget=budget))


@dataclass
class InvariantReport:
    field: str
    n: int
    m: int
    mu: object
    tau: object
    dim_T_I: object
    ord_I: int
    determinacy_bound: Optional[int]
    is_CI: bool
    isolated: Optional[bool]
    flags: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {k: _jsonable(v) for k, v in asdict(self).items()}


def _jsonable(v):
    if v is None:
        return "n/a"
    if v == INFINITY:
        return "infinite"
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def full_report(F, budget: int = DEFAULT_STEP_BUDGET) -> InvariantReport:
    """Every invariant of the ideal generated by F; mu and tau only when m = 1."""
    F = _generators(F)
    ring = F[0].ring
    ordI = order_of_ideal(F)
    m = len(F)
    notes = []
    flags = []
    mu = tau = None
    if m == 1:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            mu = milnor_number(F[0], budget)
            tau = tjurina_number(F[0], budget)
        if caught:
            notes.append("NotSingularAtOrigin: generator is a unit")
    dim_T = tjurina_module_dimension(F, budget)
    bound = None
    if dim_T != INFINITY:
        bound = 2 * dim_T - ordI + 2
        if isinstance(ring.field, PrimeField):
            flags.append("determinacy_over_finite_field")
    if any(f.is_unit_local() for f in F):
        notes.append("ImproperIdeal: a generator is a unit")
        is_ci, isolated = False, None
    else:
        is_ci = is_complete_intersection(F, budget)
        if is_ci:
            isolated = has_isolated_singularity(F, budget)
        else:
            isolated = None
            notes.append("NotCompleteIntersection: isolated-singularity test not applicable")
    return InvariantReport(
        field=ring.field.descriptor,
        n=ring.n,
        m=m,
        mu=mu,
        tau=tau,
        dim_T_I=dim_T,
        ord_I=ordI,
        determinacy_bound=bound,
        is_CI=is_ci,
        isolated=isolated,
        flags=flags,
        warnings=notes,
    )
