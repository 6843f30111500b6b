"""Dense matrices over finite fields: rank, nullspaces and incremental echelon forms."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FieldMatrix:
    field: object
    nrows: int
    ncols: int
    rows: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field, n):
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def transpose(self):
        return FieldMatrix.from_rows(
            self.field, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]


def _rref_inplace(F, M, ncols_pivot=None):
    """Reduce the list-of-lists ``M`` to reduced row echelon form; return pivot columns."""
    if not M:
        return []
    ncols = len(M[0]) if ncols_pivot is None else ncols_pivot
    pivots = []
    r = 0
    nrows = len(M)
    prime = F.is_prime
    p = F.p
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        if prime:
            M[r] = [x * inv % p for x in M[r]]
        else:
            M[r] = [F.mul(x, inv) for x in M[r]]
        row = M[r]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                if prime:
                    M[i] = [(x - f * y) % p for x, y in zip(M[i], row)]
                else:
                    M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(A: FieldMatrix):
    M = [list(r) for r in A.rows]
    piv = _rref_inplace(A.field, M)
    return FieldMatrix.from_rows(A.field, M, A.ncols), piv


def rank(A: FieldMatrix) -> int:
    if A.nrows == 0 or A.ncols == 0:
        return 0
    # eliminate along the shorter side
    if A.nrows > A.ncols:
        A = A.transpose()
    M = [list(r) for r in A.rows]
    return len(_rref_inplace(A.field, M))


def rank_and_left_nullspace(A: FieldMatrix):
    """Rank of ``A`` and a reduced-echelon basis of ``{b : b A = 0}``.

    The left nullspace is the right nullspace of the transpose, so the basis
    returned here is canonical: the reduced row echelon basis of that space.
    """
    F = A.field
    n = A.nrows
    if A.ncols == 0:
        basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        return 0, basis
    T = [[A.rows[i][j] for i in range(n)] for j in range(A.ncols)]
    pivots = _rref_inplace(F, T)
    r = len(pivots)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(T[i][fcol])
        basis.append(v)
    # put the basis itself into reduced echelon form for determinism
    if basis:
        _rref_inplace(F, basis)
    return r, [tuple(b) for b in basis]


def vec_mat(F, b, A: FieldMatrix):
    out = [0] * A.ncols
    for i, c in enumerate(b):
        if c:
            row = A.rows[i]
            for j in range(A.ncols):
                if row[j]:
                    out[j] = F.add(out[j], F.mul(c, row[j]))
    return out


def solve_square(F, M, rhs):
    """Solve ``M x = rhs`` for an invertible square matrix (lists)."""
    n = len(M)
    aug = [list(M[i]) + [rhs[i]] for i in range(n)]
    piv = _rref_inplace(F, aug, n)
    if len(piv) != n:
        raise ZeroDivisionError("singular matrix")
    return [aug[i][n] for i in range(n)]


def inverse(F, M):
    n = len(M)
    aug = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    piv = _rref_inplace(F, aug, n)
    if len(piv) != n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in aug]


class IncrementalEchelon:
    """Echelon basis of a growing set of vectors (the columns of a matrix).

    ``add`` reduces a vector against the current pivots and keeps it when it
    is independent, so the rank of a column set can be maintained while a
    divisor is built up one place at a time.  ``copy`` snapshots the state.
    """

    __slots__ = ("field", "pivots", "ncols")

    def __init__(self, field, pivots=None, ncols=0):
        self.field = field
        self.pivots = pivots if pivots is not None else []  # (pivot index, normalized vector)
        self.ncols = ncols

    @property
    def rank(self):
        return len(self.pivots)

    def copy(self):
        return IncrementalEchelon(self.field, list(self.pivots), self.ncols)

    def add(self, v) -> bool:
        F = self.field
        self.ncols += 1
        v = list(v)
        if F.is_prime:
            p = F.p
            for k, w in self.pivots:
                c = v[k]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, w)]
        else:
            for k, w in self.pivots:
                c = v[k]
                if c:
                    v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, w)]
        for k, c in enumerate(v):
            if c:
                inv = F.inv(c)
                if F.is_prime:
                    v = [x * inv % F.p for x in v]
                else:
                    v = [F.mul(x, inv) for x in v]
                self.pivots.append((k, v))
                return True
        return False

    def extend(self, vectors) -> int:
        return sum(1 for v in vectors if self.add(v))
