"""Coefficient tables ``a_{x,i,j}`` of basis functions at a place, plus a series oracle.

For a basis ``f_1..f_l`` of ``L(D_0)`` and a place ``x`` the table stores, for every
``i`` and column ``j < m``, a vector in ``F_q^deg(x)`` such that

    f_i g_x = sum_j (sum_l a_{x,i,j,l} u_l) q_x^(j - m')  + O(q_x^(m - m'))

where ``m' = min_i v_x(f_i) + v_x(D_0)``, ``g_x = 1/f_k`` for the lowest ``k``
attaining ``m'``, ``q_x`` is the uniformizer and ``u_l`` lift a residue basis.
Columns below ``m'`` are zero.
"""

from __future__ import annotations

import hashlib
import os
import random
import struct
from pathlib import Path

from .curve import series as S
from .curve.function import FunctionElement
from .curve.places import Place, evaluate_at, local_series, uniformizer_at, valuation_at
from .errors import InternalError, InvalidInputError, PoleError

UNIT = "unit"


class ExpansionTable:
    """Expansion coefficients of one basis at one place; extendable in place."""

    def __init__(self, basis, place: Place):
        self.basis = basis
        self.place = place
        self.degree = place.degree
        self.dv = basis.divisor[place]
        vals = [valuation_at(f, place) for f in basis.functions]
        self.valuations = vals
        self.offset = min(v + self.dv for v in vals)
        if self.offset < 0:
            raise InternalError(f"basis function has a pole beyond D_0 at {place}")
        k = min(i for i, v in enumerate(vals) if v + self.dv == self.offset)
        f = basis.functions[k]
        self.normalizer = UNIT if f.is_constant() and f.constant_value() == 1 else k
        self.precision = 0
        self.rows = [[] for _ in basis.functions]
        self.uniformizer = None
        self.lifts = None
        self._state = None  # current f_i * g_x remainders, or None before column m'
        self._zero = tuple([0] * self.degree)
        self._resumable = True

    @property
    def basis_id(self):
        return self.basis.basis_id

    @property
    def normalizer_function(self) -> FunctionElement:
        model = self.place.model
        if self.normalizer == UNIT:
            return FunctionElement.constant(model, 1)
        return self.basis.functions[self.normalizer].inverse()

    def extend(self, m: int) -> "ExpansionTable":
        """Compute columns up to ``m`` (exclusive), resuming where the last call stopped."""
        if m < 1:
            raise InvalidInputError("precision must be >= 1")
        if not self._resumable and m > self.precision:
            # loaded from disk without iteration state: rebuild from scratch
            self.__dict__.update(ExpansionTable(self.basis, self.place).__dict__)
        while self.precision < m:
            j = self.precision
            if j < self.offset:
                for r in self.rows:
                    r.append(self._zero)
            else:
                self._next_column()
            self.precision += 1
        return self

    def _next_column(self):
        place = self.place
        R = place.residue
        if self._state is None:
            gx = self.normalizer_function
            self._state = [f * gx for f in self.basis.functions]
        else:
            if self.uniformizer is None:
                self.uniformizer = place.uniformizer()
                self.lifts = place.lifts()
                self._qinv = self.uniformizer.inverse()
            prev = [r[-1] for r in self.rows]
            new = []
            for h, a in zip(self._state, prev):
                for coef, u in zip(a, self.lifts):
                    if coef:
                        h = h - u * coef
                new.append(h * self._qinv)
            self._state = new
        for h, r in zip(self._state, self.rows):
            try:
                val = evaluate_at(h, place)
            except PoleError as exc:
                raise InternalError(f"expansion remainder acquired a pole at {place}") from exc
            r.append(R.phi(val))

    def block(self, i: int, m: int) -> list:
        """Row ``i`` flattened over columns ``0..m-1`` (length ``m * deg``)."""
        if m > self.precision:
            self.extend(m)
        out = []
        for vec in self.rows[i][:m]:
            out.extend(vec)
        return out

    def __repr__(self):
        return (
            f"ExpansionTable({self.place!r}, basis={self.basis_id}, m'={self.offset}, "
            f"g_x={self.normalizer}, precision={self.precision})"
        )


def function_expansions(basis, place: Place, m: int) -> ExpansionTable:
    return ExpansionTable(basis, place).extend(m)


def differential_expansions(omega, place: Place, m: int) -> ExpansionTable:
    """Same construction with ``D_0 = K``; the base-point freeness of ``|K|`` forces ``m' = 0``."""
    table = ExpansionTable(omega, place)
    if table.offset != 0:
        raise InternalError(f"no holomorphic differential is a unit at {place}")
    return table.extend(m)


def oracle_expansion(
    f: FunctionElement, place: Place, m: int, lifts: bool = False, start: int | None = None, fresh: bool = False
) -> list:
    """Coefficients of ``f`` in powers of the uniformizer, from branch series alone.

    Returns the coefficients of ``q^start .. q^(start+m-1)`` (``start`` defaults to
    ``min(0, v(f))``).  With ``lifts=False`` they are residue-field constants; with
    ``lifts=True`` each is a coordinate vector with respect to the place's lifted
    residue basis, matching :class:`ExpansionTable` rows.  ``fresh=True`` rebuilds
    the uniformizer instead of using the place's cached one.
    """
    if f.is_zero():
        raise InvalidInputError("the zero function has no expansion")
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    K = place.field
    br = place.new_branch()
    Q = uniformizer_at(place.model, place) if fresh else place.uniformizer()
    Qs = local_series(Q, place, m + 1, br)
    if Qs.v != 1:
        raise InternalError("uniformizer series does not have valuation 1")
    fs = local_series(f, place, 1, br)
    if start is None:
        start = min(0, fs.v)
    if fs.v < start:
        raise PoleError(f"f has valuation {fs.v} < {start} at {place}")
    if fs.v >= start + m:
        zero = tuple([0] * place.degree) if lifts else 0
        return [zero] * m
    fs = local_series(f, place, start + m - fs.v + 1, br)
    if lifts:
        R = place.residue
        U = [local_series(u, place, m + 1, br) for u in place.lifts()]
    Qpow = S.power(K, Qs, start, m + 2)
    out = []
    for j in range(start, start + m):
        c = K.div(fs.coeff(j), Qpow.coeff(j))
        if lifts:
            a = R.phi(c)
            out.append(a)
            sub = S.Laurent(0, [], None)
            for coef, u in zip(a, U):
                if coef:
                    sub = S.add(K, sub, S.scale(K, u, coef))
        else:
            out.append(c)
            sub = S.exact([c]) if c else S.Laurent(0, [], None)
        if not sub.is_exact_zero:
            fs = S.sub(K, fs, S.mul(K, sub, Qpow))
        Qpow = S.mul(K, Qpow, Qs)
    return out


# -- on-disk cache ------------------------------------------------------------
#
# Little-endian layout:
#   magic "CAET", u16 version, u16 reserved
#   u32 len + utf8 key string
#   i32 offset, i32 normalizer (-1 = unit), u32 degree, u32 precision, u32 rows
#   rows * precision * degree  u32 field elements, row-major

CACHE_ENV = "CURVEARITH_CACHE_DIR"
_MAGIC = b"CAET"
_VERSION = 1


def _cache_key(table: ExpansionTable) -> str:
    return f"{table.place.model.hash}|{table.basis_id}|{table.place.label()}"


def _cache_path(directory, key: str, precision: int) -> Path:
    digest = hashlib.sha256(f"{key}|{precision}".encode()).hexdigest()[:32]
    return Path(directory) / f"{digest}.caet"


def cache_dir():
    return os.environ.get(CACHE_ENV) or None


def save_table(table: ExpansionTable, directory) -> Path:
    key = _cache_key(table).encode()
    path = _cache_path(directory, key.decode(), table.precision)
    Path(directory).mkdir(parents=True, exist_ok=True)
    norm = -1 if table.normalizer == UNIT else table.normalizer
    parts = [
        _MAGIC,
        struct.pack("<HH", _VERSION, 0),
        struct.pack("<I", len(key)),
        key,
        struct.pack("<iiIII", table.offset, norm, table.degree, table.precision, len(table.rows)),
    ]
    flat = [x for row in table.rows for vec in row[: table.precision] for x in vec]
    parts.append(struct.pack(f"<{len(flat)}I", *flat))
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(b"".join(parts))
    tmp.replace(path)
    return path


def load_table(basis, place: Place, m: int, directory, rng: random.Random | None = None):
    """Load a cached table of precision ``m``; ``None`` if absent, corrupt or failing the spot check."""
    table = ExpansionTable.__new__(ExpansionTable)
    key = f"{place.model.hash}|{basis.basis_id}|{place.label()}"
    path = _cache_path(directory, key, m)
    try:
        data = path.read_bytes()
        if data[:4] != _MAGIC:
            return None
        (version, _r) = struct.unpack_from("<HH", data, 4)
        if version != _VERSION:
            return None
        (klen,) = struct.unpack_from("<I", data, 8)
        if data[12 : 12 + klen].decode() != key:
            return None
        pos = 12 + klen
        offset, norm, degree, precision, nrows = struct.unpack_from("<iiIII", data, pos)
        pos += 20
        count = nrows * precision * degree
        flat = struct.unpack_from(f"<{count}I", data, pos)
    except (OSError, struct.error, UnicodeDecodeError):
        return None
    if nrows != len(basis.functions) or degree != place.degree or precision != m:
        return None
    table.basis, table.place, table.degree = basis, place, degree
    table.dv = basis.divisor[place]
    table.valuations = None
    table.offset = offset
    table.normalizer = UNIT if norm == -1 else norm
    table.precision = precision
    it = iter(flat)
    table.rows = [[tuple(next(it) for _ in range(degree)) for _ in range(precision)] for _ in range(nrows)]
    table.uniformizer = table.lifts = None
    table._state = None
    table._zero = tuple([0] * degree)
    table._resumable = False
    # spot check one row against the series oracle
    rng = rng or random.Random(0)
    i = rng.randrange(nrows)
    if not verify_row(table, i):
        return None
    return table


def verify_row(table: ExpansionTable, i: int) -> bool:
    """Compare row ``i`` with the oracle expansion of ``f_i * g_x``."""
    m = table.precision
    f = table.basis.functions[i] * table.normalizer_function
    width = m - table.offset
    if width <= 0:
        return all(not any(v) for v in table.rows[i])
    expect = oracle_expansion(f, table.place, width, lifts=True, start=0)
    got = table.rows[i][table.offset : m]
    head_zero = all(not any(v) for v in table.rows[i][: table.offset])
    return head_zero and [tuple(v) for v in expect] == [tuple(v) for v in got]


def cached_table(basis, place: Place, m: int, directory=None) -> ExpansionTable:
    directory = directory or cache_dir()
    if directory:
        t = load_table(basis, place, m, directory)
        if t is not None:
            return t
    t = function_expansions(basis, place, m)
    if directory:
        save_table(t, directory)
    return t
