"""Sparse integer matrices, rational rank, and Smith-normal-form invariants.

Only the elementary divisors are computed; no transformation matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod


@dataclass(frozen=True)
class SparseIntMatrix:
    nrows: int
    ncols: int
    entries: tuple  # ((row, col, value), ...) sorted, values nonzero

    @classmethod
    def from_triples(cls, nrows, ncols, triples):
        d = {}
        for i, j, v in triples:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            if (i, j) in d:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            if v:
                d[(i, j)] = v
        return cls(nrows, ncols, tuple(sorted((i, j, v) for (i, j), v in d.items())))

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        triples = [(i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v]
        return cls.from_triples(len(rows), ncols, triples)

    @classmethod
    def from_sparse_rows(cls, rows, ncols):
        """Rows given as ``{col: value}`` dicts."""
        triples = [(i, j, v) for i, r in enumerate(rows) for j, v in r.items() if v]
        return cls.from_triples(len(rows), ncols, triples)

    def row_dicts(self):
        rows = [dict() for _ in range(self.nrows)]
        for i, j, v in self.entries:
            rows[i][j] = v
        return rows

    def dense(self):
        M = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries:
            M[i][j] = v
        return M


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank x Z/d_1 x ... x Z/d_k`` with ``d_i | d_{i+1}`` and all ``d_i >= 2``."""

    free_rank: int
    divisors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a:
                raise ValueError("elementary divisors must form a divisibility chain")
        if any(d < 2 for d in self.divisors):
            raise ValueError("elementary divisors must be >= 2")

    @property
    def torsion_order(self) -> int:
        return prod(self.divisors)


def echelon_rows(rows, ncols):
    """Integer row echelon form (Hermite-style, sparse dict rows); returns nonzero rows."""
    pivots: dict[int, dict] = {}
    for r in rows:
        r = {j: v for j, v in r.items() if v}
        while r:
            c = min(r)
            if c not in pivots:
                if r[c] < 0:
                    r = {j: -v for j, v in r.items()}
                pivots[c] = r
                break
            p = pivots[c]
            a, b = p[c], r[c]
            if b % a == 0:
                f = b // a
                r = _axpy(r, p, -f)
                continue
            # extended gcd combination keeps the lattice unchanged
            g, s, t = _xgcd(a, b)
            new_p = _lincomb(p, s, r, t)
            r = _lincomb(p, -b // g, r, a // g)
            pivots[c] = new_p
            r = {j: v for j, v in r.items() if v}
    return [pivots[c] for c in sorted(pivots)]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _axpy(r, p, f):
    out = dict(r)
    for j, v in p.items():
        nv = out.get(j, 0) + f * v
        if nv:
            out[j] = nv
        else:
            out.pop(j, None)
    return out


def _lincomb(p, s, r, t):
    out = {}
    for j in set(p) | set(r):
        v = s * p.get(j, 0) + t * r.get(j, 0)
        if v:
            out[j] = v
    return out


def int_rank(B: SparseIntMatrix) -> int:
    """Rank over the rationals."""
    return len(echelon_rows(B.row_dicts(), B.ncols))


def _snf_diagonal(M):
    """Diagonal of the Smith normal form of a dense integer matrix (nonzero entries only)."""
    M = [list(r) for r in M]
    nr = len(M)
    nc = len(M[0]) if M else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = M[t][t]
            done = True
            for i in range(t + 1, nr):
                if M[i][t]:
                    q = M[i][t] // piv
                    if q:
                        M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if M[t][j]:
                    q = M[t][j] // piv
                    if q:
                        for row in M:
                            row[j] -= q * row[t]
                    if M[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if M[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                M[t] = [x + y for x, y in zip(M[t], M[bad])]
                continue
            # move the smallest remaining entry of row/col t into the pivot
            best = (abs(piv), t, t)
            for i in range(t + 1, nr):
                if M[i][t] and abs(M[i][t]) < best[0]:
                    best = (abs(M[i][t]), i, t)
            for j in range(t + 1, nc):
                if M[t][j] and abs(M[t][j]) < best[0]:
                    best = (abs(M[t][j]), t, j)
            _, i, j = best
            if i != t:
                M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def elementary_divisors(B: SparseIntMatrix, s: int | None = None) -> AbelianGroupStructure:
    """Structure of ``Z^s / rowspace(B)``.

    The rows are first brought to echelon form sparsely (which also gives the
    rank), then the square-ish remainder is diagonalized densely.
    """
    if s is None:
        s = B.ncols
    if B.ncols != s:
        raise ValueError("ambient rank must equal the column count")
    rows = echelon_rows(B.row_dicts(), s)
    r = len(rows)
    dense = [[row.get(j, 0) for j in range(s)] for row in rows]
    diag = _snf_diagonal(dense) if dense else []
    if len(diag) != r:
        raise ArithmeticError("rank mismatch in Smith normal form")
    divs = tuple(sorted(d for d in diag if d > 1))
    return AbelianGroupStructure(s - r, _normalize_chain(divs))


def _normalize_chain(divs):
    """Turn any list of cyclic orders into the invariant-factor chain."""
    # the SNF loop already yields a chain, this only guards the sort above
    divs = list(divs)
    for i in range(len(divs)):
        for j in range(i + 1, len(divs)):
            a, b = divs[i], divs[j]
            g = gcd(a, b)
            divs[i], divs[j] = g, a * b // g
    return tuple(d for d in divs if d > 1)
