"""Independent check of quotient dimensions by linear algebra.

For a truncation degree D the space (k[x]/<x>^D)^q is finite dimensional.
The image of the submodule N in it is spanned by the products m*g with
|m| + ord(g) < D, so dim (k[x]^q / (N + <x>^D k^q)) is a rank computation.
When the count is the same for D-1 and D, Nakayama's lemma gives
<x>^(D-1) k^q in N, and the count equals dim k[[x]]^q / N.

Nothing here touches the standard-basis engine.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .coeff import PrimeField
from .poly import ModuleVector, as_vectors


class _Unstable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSTABLE"

    def __reduce__(self):
        return (_Unstable, ())


UNSTABLE = _Unstable()


def _monomials_below(n: int, D: int) -> list:
    """All exponent vectors of total degree < D, by degree then reverse lex."""
    out = []
    for d in range(D):
        level = []
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            level.append(tuple(e))
        level.sort(key=lambda e: e[::-1])
        out.extend(level)
    return out


def _pivots(rows: list, field) -> set:
    """Row-reduce sparse rows {column: coeff}; return the set of pivot columns."""
    modular = isinstance(field, PrimeField)
    p = field.p if modular else None
    pivot_rows = {}
    for row in rows:
        r = dict(row)
        while r:
            col = min(r)
            if col not in pivot_rows:
                c = r[col]
                if modular:
                    inv = pow(c, -1, p)
                    pivot_rows[col] = {k: v * inv % p for k, v in r.items()}
                else:
                    inv = field.inv(c)
                    pivot_rows[col] = {k: v * inv for k, v in r.items()}
                break
            c = r[col]
            for k, v in pivot_rows[col].items():
                if modular:
                    nv = (r.get(k, 0) - c * v) % p
                else:
                    nv = r.get(k, field.zero) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return set(pivot_rows)


def truncated_count(gens, D: int):
    """Return ``(count, pivot_monomials)`` for dim of F / (N + <x>^D F)."""
    vecs = as_vectors(gens)
    ring = vecs[0].ring
    n, q = ring.n, vecs[0].rank
    monos = _monomials_below(n, D)
    cols = {}
    for j in range(q):
        for e in monos:
            cols[(e, j)] = len(cols)
    rows = []
    for g in vecs:
        order = min((f.order() for f in g.entries), default=float("inf"))
        if order == float("inf") or order >= D:
            continue
        for m in monos:
            if sum(m) + order >= D:
                continue
            row = {}
            for j, f in enumerate(g.entries):
                for e, c in f._terms.items():
                    e2 = tuple(a + b for a, b in zip(e, m))
                    if sum(e2) < D:
                        row[cols[(e2, j)]] = c
            if row:
                rows.append(row)
    piv = _pivots(rows, ring.field)
    inverse = {v: k for k, v in cols.items()}
    return len(cols) - len(piv), {inverse[c] for c in piv}


def _pure_powers_present(pivots, n: int, q: int, D: int) -> bool:
    for j in range(q):
        for i in range(n):
            if not any(
                (tuple(a if k == i else 0 for k in range(n)), j) in pivots for a in range(D)
            ):
                return False
    return True


def truncated_dimension_oracle(gens, D: int):
    """Dimension of the quotient if it is certified at truncation degree D,
    otherwise UNSTABLE."""
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    vecs = as_vectors(gens)
    n, q = vecs[0].ring.n, vecs[0].rank
    count, pivots = truncated_count(vecs, D)
    prev = 0 if D == 1 else truncated_count(vecs, D - 1)[0]
    if prev != count or not _pure_powers_present(pivots, n, q, D):
        return UNSTABLE
    return count


def oracle_dimension(gens, max_degree: int = 30):
    """Certified dimension at the first stabilizing D, UNSTABLE if none up to
    ``max_degree``."""
    vecs = as_vectors(gens)
    n, q = vecs[0].ring.n, vecs[0].rank
    prev = 0
    for D in range(1, max_degree + 1):
        count, pivots = truncated_count(vecs, D)
        if count == prev and _pure_powers_present(pivots, n, q, D):
            return count
        prev = count
    return UNSTABLE


__all__ = [
    "UNSTABLE",
    "ModuleVector",
    "oracle_dimension",
    "truncated_count",
    "truncated_dimension_oracle",
]
