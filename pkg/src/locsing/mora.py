"""Standard bases of submodules of k[x]_<x>^q with respect to local orderings.

The engine follows Mora's tangent-cone algorithm: weak normal forms with an
écart-driven choice of reductor and a growing set ``T`` of intermediate
results, s-vectors processed smallest-lcm-degree first.

For the degree-compatible ordering ``ds`` one more device keeps the
computation finite-sized.  As soon as the leading module computed so far has
finite colength, every monomial of degree >= D (D = one more than the highest
standard monomial) lies in the leading module, and therefore <x>^D k^q lies
in the submodule itself.  From then on all terms of degree >= D are dropped.

For ``ds`` the default is Lazard's homogenization: generators are
homogenized with an extra variable t, a Groebner basis is computed for the
degree ordering that compares equal-degree monomials by the ``ds`` order of
their x-parts, and t is set to 1.  Every element then has écart 0, so the
T-set never grows.  Mora's snapshots make long reduction chains on
non-isolated singularities, and over Q they also feed huge coefficients back
into later reductions.  The same engine runs both methods; ``ls`` is not a
degree ordering and always uses Mora.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from operator import add, le, sub
from typing import Optional

from .coeff import PrimeField, RationalField
from .errors import InputError, RankMismatch, ResourceExhausted, RingMismatch
from .poly import INFINITY, ModuleVector, Polynomial, Ring, as_vectors

DEFAULT_STEP_BUDGET = 10**6


# ---------------------------------------------------------------------------
# monomial modules


@dataclass(frozen=True)
class MonomialModule:
    """Monomial submodule of k[x]^q given by minimal generators per component.

    ``degree_bound`` D, when set, means every monomial of total degree >= D
    (in every component) belongs to the module as well.
    """

    n: int
    components: tuple
    degree_bound: Optional[int] = None

    @property
    def rank(self) -> int:
        return len(self.components)

    def contains(self, exps, j: int = 0) -> bool:
        if self.degree_bound is not None and sum(exps) >= self.degree_bound:
            return True
        return any(all(map(le, g, exps)) for g in self.components[j])

    def generators(self, j: int = 0) -> list:
        """Minimal generators of component j, degree-bound monomials included."""
        gens = list(self.components[j])
        if self.degree_bound is not None:
            for e in _monomials_of_degree(self.n, self.degree_bound):
                if not any(all(map(le, g, e)) for g in gens):
                    gens.append(e)
        return minimalize(gens)

    def _component_finite(self, j) -> bool:
        if self.degree_bound is not None:
            return True
        gens = self.components[j]
        for i in range(self.n):
            if not any(all(a == 0 for k, a in enumerate(g) if k != i) for g in gens):
                return False
        return True

    def is_finite(self) -> bool:
        return all(self._component_finite(j) for j in range(self.rank))

    def standard_monomials(self) -> list:
        """Monomials ``(exps, j)`` outside the module; requires finite colength."""
        if not self.is_finite():
            raise InputError("infinitely many standard monomials")
        out = []
        for j in range(self.rank):
            zero = (0,) * self.n
            if self.contains(zero, j):
                continue
            seen = {zero}
            frontier = [zero]
            while frontier:
                nxt = []
                for e in frontier:
                    out.append((e, j))
                    for i in range(self.n):
                        e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                        if e2 not in seen and not self.contains(e2, j):
                            seen.add(e2)
                            nxt.append(e2)
                frontier = nxt
        return out

    def dimension(self):
        """k-dimension of k[x]^q / module, INFINITY when not finite."""
        if not self.is_finite():
            return INFINITY
        return len(self.standard_monomials())

    def krull_dimension(self) -> int:
        """Dimension of the quotient; -1 when the quotient is zero."""
        if self.n > 16:
            raise InputError("vertex-cover dimension limited to 16 variables")
        best = -1
        for j in range(self.rank):
            if self.contains((0,) * self.n, j):
                continue
            if self._component_finite(j):
                best = max(best, 0)
                continue
            gens = self.components[j]
            if not gens:
                best = max(best, self.n)
                continue
            best = max(best, self.n - minimum_cover_size(self.n, gens))
        return best


def minimalize(exps_list) -> list:
    """Drop duplicates and monomials divisible by another one in the list."""
    uniq = sorted(set(map(tuple, exps_list)), key=lambda e: (sum(e), e))
    out = []
    for e in uniq:
        if not any(all(map(le, g, e)) for g in out):
            out.append(e)
    return out


def minimum_cover_size(n: int, gens) -> int:
    """Fewest variables meeting the support of every generator (brute force)."""
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if all(sup & s for sup in supports):
                return size
    return n


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


# ---------------------------------------------------------------------------
# the engine


class _Elem:
    __slots__ = ("terms", "lm", "lc", "ecart", "lmdeg", "alive", "cert", "index")

    def __init__(self, terms, lm, lc, ecart, lmdeg):
        self.terms = terms
        self.lm = lm
        self.lc = lc
        self.ecart = ecart
        self.lmdeg = lmdeg
        self.alive = True
        self.cert = None
        self.index = None


class _Engine:
    """Reduction machinery over one ring.

    With ``integral=True`` over Q, elements are kept as primitive integer
    vectors and reductions are fraction-free (h <- a*h - b*x^m*g).  Results
    are then only defined up to a nonzero constant, which is all a standard
    basis or a membership test needs, and rational gcd overhead disappears.
    """

    def __init__(self, ring: Ring, rank: int, budget: int = DEFAULT_STEP_BUDGET,
                 integral: bool = False, homogenize: bool = False):
        self.ring = ring
        self.K = ring.field
        self.ordering = ring.ordering
        self.n = ring.n
        self.rank = rank
        self.budget = budget
        self.steps = 0
        self.D = None
        self.modular = isinstance(self.K, PrimeField)
        self.p = self.K.p if self.modular else None
        self.ds = self.ordering.kind == "ds"
        self.integral = integral and isinstance(self.K, RationalField)
        # homogenized keys are (deg_x, e_n..e_1, t, comp); plain ones lack t
        self.hom = homogenize
        if homogenize and not self.ds:
            raise InputError("homogenization needs the degree ordering ds")
        self.tail = 2 if homogenize else 1

    # -- conversion ------------------------------------------------------
    def to_internal(self, vec: ModuleVector) -> dict:
        key = self.ordering.key
        h = {}
        if self.hom:
            top = max((sum(e) for f in vec.entries for e in f._terms), default=0)
            for j, f in enumerate(vec.entries):
                for e, c in f._terms.items():
                    h[key(e) + (top - sum(e), j)] = c
        else:
            for j, f in enumerate(vec.entries):
                for e, c in f._terms.items():
                    h[key(e) + (j,)] = c
        if self.integral and h:
            den = math.lcm(*(c.denominator for c in h.values()))
            h = {k: int(c * den) for k, c in h.items()}
            self.make_primitive(h)
        return h

    @staticmethod
    def make_primitive(h: dict) -> None:
        g = math.gcd(*h.values())
        if g > 1:
            for k in h:
                h[k] //= g

    def from_internal(self, h: dict) -> ModuleVector:
        exps = self.ordering.exps
        parts = [{} for _ in range(self.rank)]
        conv = Fraction if self.integral else (lambda c: c)
        tail = self.tail
        # dehomogenizing cannot merge terms: t is fixed by the x-degree
        for k, c in h.items():
            parts[k[-1]][exps(k[:-tail])] = conv(c)
        return ModuleVector([Polynomial(self.ring, t, _clean=True) for t in parts], self.ring)

    def lead_exps(self, key) -> tuple:
        return self.ordering.exps(key[:-self.tail])

    def deg(self, key) -> int:
        return key[0] if self.ds else sum(key[:-1])

    def make_elem(self, h: dict) -> _Elem:
        lm = min(h)
        lmdeg = self.deg(lm)
        if self.hom:
            return _Elem(h, lm, h[lm], 0, lmdeg)
        if self.ds:
            top = max(k[0] for k in h)
        else:
            top = max(sum(k[:-1]) for k in h)
        return _Elem(h, lm, h[lm], top - lmdeg, lmdeg)

    def truncate(self, h: dict) -> dict:
        if self.D is None:
            return h
        D = self.D
        return {k: c for k, c in h.items() if k[0] < D}

    # -- kernels ---------------------------------------------------------
    def axpy(self, h: dict, c, m: tuple, g: dict) -> None:
        """h <- h - c * x^m * g, in place; m carries a 0 in the component slot."""
        D = self.D
        if self.modular:
            p = self.p
            for k, v in g.items():
                nk = tuple(map(add, k, m))
                if D is not None and nk[0] >= D:
                    continue
                nv = (h.get(nk, 0) - c * v) % p
                if nv:
                    h[nk] = nv
                else:
                    h.pop(nk, None)
        else:
            zero = 0 if self.integral else self.K.zero
            for k, v in g.items():
                nk = tuple(map(add, k, m))
                if D is not None and nk[0] >= D:
                    continue
                nv = h.get(nk, zero) - c * v
                if nv:
                    h[nk] = nv
                else:
                    h.pop(nk, None)

    def div(self, a, b):
        return self.K.div(a, b)

    def lcm(self, a: tuple, b: tuple) -> tuple:
        if self.hom:
            e = tuple(map(max, a[1:-1], b[1:-1]))
            return (sum(e) - e[-1],) + e + (a[-1],)
        if self.ds:
            e = tuple(map(max, a[1:-1], b[1:-1]))
            return (sum(e),) + e + (a[-1],)
        return tuple(map(max, a, b))

    def spoly(self, f: _Elem, g: _Elem) -> dict:
        L = self.lcm(f.lm, g.lm)
        s = {}
        if self.integral:
            d = math.gcd(f.lc, g.lc)
            self.axpy(s, -(g.lc // d), tuple(map(sub, L, f.lm)), f.terms)
            self.axpy(s, f.lc // d, tuple(map(sub, L, g.lm)), g.terms)
            if s:
                self.make_primitive(s)
            return s
        self.axpy(s, self.div(self.K.from_int(-1), f.lc), tuple(map(sub, L, f.lm)), f.terms)
        self.axpy(s, self.div(self.K.one, g.lc), tuple(map(sub, L, g.lm)), g.terms)
        return s

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceExhausted(f"standard basis exceeded {self.budget} reduction steps")

    def nf(self, h: dict, basis, track=False) -> dict:
        """Mora's weak normal form of h against ``basis`` (list of _Elem)."""
        h = self.truncate(dict(h))
        T = [g for g in basis if g.alive]
        deg = self.deg
        cert = None
        if track:
            cert = ({self._one_key(): self.K.one}, [{} for _ in basis])
        while h:
            lm = min(h)
            best = None
            for g in T:
                glm = g.lm
                if glm[-1] == lm[-1] and all(map(le, glm, lm)):
                    if best is None or g.ecart < best.ecart:
                        best = g
                        if g.ecart == 0:
                            break
            if best is None:
                break
            lmdeg = deg(lm)
            if self.ds:
                hecart = max(k[0] for k in h) - lmdeg
            else:
                hecart = max(sum(k[:-1]) for k in h) - lmdeg
            if best.ecart > hecart:
                snap = _Elem(dict(h), lm, h[lm], hecart, lmdeg)
                if track:
                    snap.cert = (dict(cert[0]), [dict(a) for a in cert[1]])
                T.append(snap)
            m = tuple(map(sub, lm, best.lm))
            if self.integral:
                a, b = best.lc, h[lm]
                d = math.gcd(a, b)
                a, c = a // d, b // d
                if a != 1:
                    for k in h:
                        h[k] *= a
                self.axpy(h, c, m, best.terms)
                if h:
                    self.make_primitive(h)
            else:
                c = self.div(h[lm], best.lc)
                self.axpy(h, c, m, best.terms)
            if track:
                self._update_cert(cert, c, m, best)
            self._tick()
        if track:
            return h, cert
        return h

    def _update_cert(self, cert, c, m, g: _Elem):
        u, a = cert
        if g.cert is None:
            # basis element i: g_i = 0*f - (-1)*g_i
            self.axpy(a[g.index], self.K.neg(c), m, {self._one_key(): self.K.one})
        else:
            gu, ga = g.cert
            self.axpy(u, c, m, gu)
            for ai, gai in zip(a, ga):
                self.axpy(ai, c, m, gai)

    def _one_key(self):
        return self.ordering.key((0,) * self.n) + (0,)

    # -- completion --------------------------------------------------------
    def complete(self, gens: list) -> list:
        S: list = []
        pairs: list = []
        pending: set = set()
        counter = itertools.count()
        rank1 = self.rank == 1

        def push_pairs(new_index):
            f = S[new_index]
            for i in range(new_index):
                g = S[i]
                if not g.alive or g.lm[-1] != f.lm[-1]:
                    continue
                if rank1 and self._coprime(f.lm, g.lm):
                    continue
                L = self.lcm(f.lm, g.lm)
                d = L[0] + L[-2] if self.hom else self.deg(L)
                heapq.heappush(pairs, (d, next(counter), i, new_index))
                pending.add((i, new_index))

        def chain(i, j):
            # Buchberger's second criterion: some lm(g_k) divides lcm(i, j)
            # and both pairs (i, k), (k, j) are already settled
            L = self.lcm(S[i].lm, S[j].lm)
            for k, g in enumerate(S):
                if k == i or k == j or not g.alive or g.lm[-1] != L[-1]:
                    continue
                if all(map(le, g.lm, L)) and (min(i, k), max(i, k)) not in pending \
                        and (min(j, k), max(j, k)) not in pending:
                    return True
            return False

        def insert(h):
            S.append(self.make_elem(h))
            push_pairs(len(S) - 1)
            self._update_truncation(S)

        for g in gens:
            if g:
                insert(dict(g))
                if self._is_whole_module(S):
                    return [s for s in S if s.alive]
        while pairs:
            _, _, i, j = heapq.heappop(pairs)
            pending.discard((i, j))
            if not (S[i].alive and S[j].alive) or chain(i, j):
                continue
            s = self.spoly(S[i], S[j])
            h = self.nf(s, S)
            if h:
                insert(h)
                if self._is_whole_module(S):
                    break
        return [s for s in S if s.alive]

    def _coprime(self, a, b) -> bool:
        if self.ds:
            return not any(x and y for x, y in zip(a[1:-1], b[1:-1]))
        return not any(x and y for x, y in zip(a[:-1], b[:-1]))

    def _is_whole_module(self, S) -> bool:
        units = {s.lm[-1] for s in S if s.alive and s.lmdeg == 0}
        return len(units) == self.rank

    def leading_components(self, S) -> list:
        comps = [[] for _ in range(self.rank)]
        for s in S:
            if s.alive:
                comps[s.lm[-1]].append(self.lead_exps(s.lm))
        return comps

    def _update_truncation(self, S) -> None:
        if not self.ds:
            return
        comps = self.leading_components(S)
        mm = MonomialModule(self.n, tuple(tuple(minimalize(c)) for c in comps), self.D)
        if self.D is None and not mm.is_finite():
            return
        std = mm.standard_monomials()
        if not std:
            return
        D = max((sum(e) for e, _ in std), default=-1) + 1
        if self.D is not None and D >= self.D:
            return
        self.D = D
        for s in S:
            if not s.alive:
                continue
            if s.lmdeg >= D:
                s.alive = False
                continue
            t = {k: c for k, c in s.terms.items() if k[0] < D}
            if len(t) != len(s.terms):
                s.terms = t
                if not self.hom:
                    s.ecart = max(k[0] for k in t) - s.lmdeg


# ---------------------------------------------------------------------------
# public API


@dataclass
class Certificate:
    """``unit * f - sum(coefficients[i] * G[i]) == remainder``."""

    unit: Polynomial
    coefficients: list


@dataclass
class NormalFormResult:
    remainder: ModuleVector
    certificate: Optional[Certificate] = None


@dataclass
class StandardBasis:
    ring: Ring
    rank: int
    elements: list
    leading: MonomialModule
    truncation_degree: Optional[int] = None
    steps: int = 0
    _internal: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _check_gens(gens):
    vecs = as_vectors(gens)
    if not vecs:
        raise InputError("at least one generator is required")
    ring, rank = vecs[0].ring, vecs[0].rank
    for v in vecs:
        if v.ring != ring:
            raise RingMismatch("generators from different rings")
        if v.rank != rank:
            raise RankMismatch(f"generators of rank {rank} and {v.rank}")
    return vecs, ring, rank


METHODS = ("auto", "mora", "lazard")


def _minimal_elements(eng: _Engine, S: list) -> list:
    """Drop elements whose leading monomial is a multiple of another one's."""
    keep = []
    for s in sorted(S, key=lambda s: (s.lmdeg, s.lm)):
        e, j = eng.lead_exps(s.lm), s.lm[-1]
        if not any(k[1] == j and all(map(le, k[0], e)) for k, _ in keep):
            keep.append(((e, j), s))
    return [s for _, s in keep]


def standard_basis(gens, budget: int = DEFAULT_STEP_BUDGET, method: str = "auto") -> StandardBasis:
    """Standard basis of the submodule generated by ``gens`` (polynomials or vectors).

    Output is deterministic for a fixed input order.  ``budget`` caps the
    number of reduction steps (ResourceExhausted when exceeded).  ``method``
    picks Mora's normal form or Lazard's homogenization; ``"auto"`` means
    Lazard for ``ds`` and Mora for ``ls``.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    vecs, ring, rank = _check_gens(gens)
    if method == "auto":
        lazard = ring.ordering.kind == "ds"
    else:
        lazard = method == "lazard"
    eng = _Engine(ring, rank, budget, integral=True, homogenize=lazard)
    S = eng.complete([eng.to_internal(v) for v in vecs])
    comps = eng.leading_components(S)
    D = eng.D
    if eng._is_whole_module(S):
        D = None
    leading = MonomialModule(ring.n, tuple(tuple(minimalize(c)) for c in comps), D)
    if D is not None and all(leading.contains((0,) * ring.n, j) for j in range(rank)):
        leading = MonomialModule(ring.n, leading.components, None)
    elements = [eng.from_internal(s.terms) for s in _minimal_elements(eng, S)]
    if leading.degree_bound is not None:
        # elements killed by truncation are represented by <x>^D k^q
        for j in range(rank):
            for e in leading.generators(j):
                if e not in leading.components[j]:
                    entries = [ring.zero()] * rank
                    entries[j] = ring.monomial(e)
                    elements.append(ModuleVector(entries, ring))
    if rank == 1:
        elements = [v.entries[0] for v in elements]
    return StandardBasis(
        ring=ring,
        rank=rank,
        elements=elements,
        leading=leading,
        truncation_degree=D,
        steps=eng.steps,
        _internal=S,
    )


def leading_module(sb: StandardBasis) -> MonomialModule:
    """Minimal leading monomial module, degree-bound monomials materialized."""
    lm = sb.leading
    if lm.degree_bound is None:
        return lm
    return MonomialModule(lm.n, tuple(tuple(lm.generators(j)) for j in range(lm.rank)), None)


def vector_space_dimension(sb: StandardBasis):
    """dim_k k[[x]]^q / N; INFINITY when some pure power is missing."""
    return sb.leading.dimension()


def krull_dimension(sb: StandardBasis) -> int:
    """Krull dimension of the quotient (-1 for the zero quotient)."""
    return sb.leading.krull_dimension()


def mora_normal_form(f, G, certificate: bool = False, budget: int = DEFAULT_STEP_BUDGET) -> NormalFormResult:
    """Weak normal form of ``f`` with respect to ``G``.

    ``G`` is a list of polynomials/vectors or a :class:`StandardBasis`.  With
    ``certificate=True`` the unit and the combination are tracked; that mode
    ignores degree truncation so the identity holds exactly.
    """
    return _normal_form(f, G, certificate, budget, integral=False)


def _normal_form(f, G, certificate, budget, integral):
    fv = as_vectors([f])[0]
    D = None
    if isinstance(G, StandardBasis):
        vecs = as_vectors(G.elements)
        D = None if certificate else G.truncation_degree
    else:
        vecs = as_vectors(G)
    for g in vecs:
        if g.ring != fv.ring:
            raise RingMismatch("f and G live in different rings")
        if g.rank != fv.rank:
            raise RankMismatch(f"f has rank {fv.rank}, G has rank {g.rank}")
        if g.is_zero():
            raise InputError("G must not contain zero elements")
    eng = _Engine(fv.ring, fv.rank, budget, integral=integral and not certificate)
    eng.D = D
    basis = []
    for i, g in enumerate(vecs):
        h = eng.to_internal(g)
        if D is not None:
            h = eng.truncate(h)
            if not h:
                continue
        e = eng.make_elem(h)
        e.index = i
        basis.append(e)
    h = eng.to_internal(fv)
    scalar_input = isinstance(f, Polynomial)

    def out(d):
        v = eng.from_internal(d)
        return v.entries[0] if scalar_input else v

    if not certificate:
        return NormalFormResult(out(eng.nf(h, basis)))
    if not h:
        zero = fv.ring.zero()
        return NormalFormResult(f if scalar_input else fv, Certificate(fv.ring.one(), [zero] * len(vecs)))
    r, (u, a) = eng.nf(h, basis, track=True)
    scalar = _Engine(fv.ring, 1)

    def to_poly(d):
        return scalar.from_internal(d).entries[0]

    return NormalFormResult(
        out(r), Certificate(to_poly(u), [to_poly(x) for x in a])
    )


def ideal_membership_local(f, sb: StandardBasis, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """f lies in the submodule N generated by ``sb`` in the localization.

    For ``ds`` this compares leading modules: N is contained in N + <f>, and
    nested submodules with equal leading modules coincide.  That avoids
    Mora's normal form, whose reduction chains can be very long.
    """
    fv = as_vectors([f])[0]
    if fv.ring != sb.ring:
        raise RingMismatch("f and the standard basis live in different rings")
    if fv.rank != sb.rank:
        raise RankMismatch(f"f has rank {fv.rank}, the standard basis has rank {sb.rank}")
    if fv.is_zero() or sb.leading.dimension() == 0:
        return True
    if sb.ring.ordering.kind == "ds":
        bigger = standard_basis(as_vectors(sb.elements) + [fv], budget=budget)
        return leading_module(bigger) == leading_module(sb)
    # only zero-ness matters, so the fraction-free path is safe here
    return _normal_form(f, sb, False, budget, integral=True).remainder.is_zero()


def reduce_modulo(f, sb: StandardBasis):
    """Weak normal form of ``f`` against ``sb`` (same type as ``f``)."""
    return mora_normal_form(f, sb).remainder
