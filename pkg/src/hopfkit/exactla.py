"""Exact scalars and dense matrices over Q and GF(p).

Rows index the codomain and columns the domain, so ``g o f`` is ``G @ F``.
Tensor products of spaces are flattened row-major: the basis vector
``e_i (x) f_j`` of ``V (x) W`` sits at index ``i * dim(W) + j``, which is the
convention ``kron`` follows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Callable, Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"GF({p}): {p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def parse(self, s: str):
        s = s.strip()
        if self.p:
            if "/" in s or "." in s:
                raise ValueError(f"scalar {s!r} is not an element of GF({self.p})")
            return int(s) % self.p
        return Fraction(s)

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, self.p - 2, self.p)
        return 1 / x

    def elements(self):
        if not self.p:
            raise ValueError("the rationals are not enumerable")
        return range(self.p)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field.rationals()


def GF(p: int) -> Field:
    return Field.prime(p)


class Matrix:
    """Immutable matrix over an exact field.

    Entries are kept as one {column: value} dict per row (zeros omitted);
    the public interface is that of a dense matrix.
    """

    __slots__ = ("field", "nrows", "ncols", "_data", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            d = {}
            for j, x in enumerate(r):
                if not x:
                    continue
                x = field(x)
                if x:
                    d[j] = x
            data.append(d)
        self._init(field, len(rows), ncols, data)

    def _init(self, field, nrows, ncols, data):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._data = data
        self._rows = None
        self._hash = None

    @classmethod
    def _sparse(cls, field, nrows, ncols, data):
        # data: list of dicts with nonzero normalized values
        m = object.__new__(cls)
        m._init(field, nrows, ncols, data)
        return m

    # constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls._sparse(field, nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        return cls._sparse(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: int):
        data = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise DimensionMismatch("column length")
            for i, x in enumerate(c):
                x = field(x)
                if x:
                    data[i][j] = x
        return cls._sparse(field, nrows, len(cols), data)

    @classmethod
    def column(cls, field, vec):
        return cls.from_columns(field, [vec], len(vec))

    @classmethod
    def row(cls, field, vec):
        return cls(field, [list(vec)])

    @classmethod
    def from_function(cls, field, nrows, ncols, fn: Callable[[int, int], object]):
        return cls(field, [[fn(i, j) for j in range(ncols)] for i in range(nrows)], ncols)

    # basic protocol -----------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        if self._rows is None:
            z = self.field.zero
            out = []
            for d in self._data:
                r = [z] * self.ncols
                for j, x in d.items():
                    r[j] = x
                out.append(tuple(r))
            self._rows = tuple(out)
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        return self._data[i].get(j, self.field.zero)

    def row_dict(self, i) -> dict:
        return self._data[i]

    def col(self, j) -> tuple:
        z = self.field.zero
        return tuple(d.get(j, z) for d in self._data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._data == other._data
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nrows, self.ncols,
                               tuple(tuple(sorted(d.items())) for d in self._data)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix<{self.field} {self.nrows}x{self.ncols}>[{body}]"

    def tolist(self):
        return [list(r) for r in self.rows]

    def is_zero(self):
        return not any(self._data)

    def nnz(self) -> int:
        return sum(len(d) for d in self._data)

    # arithmetic ---------------------------------------------------------
    def _check_same(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def _combine(self, other, sign):
        self._check_same(other)
        red = self.field.reduce
        data = []
        for d, e in zip(self._data, other._data):
            r = dict(d)
            for j, x in e.items():
                v = red(r.get(j, 0) + sign * x)
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
            data.append(r)
        return Matrix._sparse(self.field, self.nrows, self.ncols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        red = self.field.reduce
        return Matrix._sparse(self.field, self.nrows, self.ncols,
                              [{j: red(-x) for j, x in d.items()} for d in self._data])

    def scale(self, c):
        c = self.field(c)
        if not c:
            return Matrix.zeros(self.field, self.nrows, self.ncols)
        red = self.field.reduce
        return Matrix._sparse(self.field, self.nrows, self.ncols,
                              [{j: red(c * x) for j, x in d.items()} for d in self._data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot compose {self.shape} @ {other.shape}")
        p = self.field.p
        od = other._data
        data = []
        for d in self._data:
            acc: dict = {}
            for k, a in d.items():
                for j, b in od[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            if p:
                acc = {j: v % p for j, v in acc.items() if v % p}
            else:
                acc = {j: v for j, v in acc.items() if v}
            data.append(acc)
        return Matrix._sparse(self.field, self.nrows, other.ncols, data)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length")
        red = self.field.reduce
        z = self.field.zero
        return tuple(red(sum((x * vec[j] for j, x in d.items()), z)) for d in self._data)

    @property
    def T(self):
        data = [{} for _ in range(self.ncols)]
        for i, d in enumerate(self._data):
            for j, x in d.items():
                data[j][i] = x
        return Matrix._sparse(self.field, self.ncols, self.nrows, data)

    def kron(self, other: "Matrix") -> "Matrix":
        red = self.field.reduce
        n2 = other.ncols
        data = []
        for d in self._data:
            for e in other._data:
                r = {}
                for i, a in d.items():
                    base = i * n2
                    for j, b in e.items():
                        v = red(a * b)
                        if v:
                            r[base + j] = v
                data.append(r)
        return Matrix._sparse(self.field, self.nrows * other.nrows, self.ncols * n2, data)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack")
        off = self.ncols
        data = []
        for d, e in zip(self._data, other._data):
            r = dict(d)
            for j, x in e.items():
                r[off + j] = x
            data.append(r)
        return Matrix._sparse(self.field, self.nrows, self.ncols + other.ncols, data)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack")
        return Matrix._sparse(self.field, self.nrows + other.nrows, self.ncols,
                              [dict(d) for d in self._data + other._data])

    def select_columns(self, idx: Sequence[int]):
        pos = {j: k for k, j in enumerate(idx)}
        data = [{pos[j]: x for j, x in d.items() if j in pos} for d in self._data]
        return Matrix._sparse(self.field, self.nrows, len(idx), data)

    def select_rows(self, idx: Sequence[int]):
        return Matrix._sparse(self.field, len(idx), self.ncols, [dict(self._data[i]) for i in idx])

    def flatten(self) -> tuple:
        """Row-major entries."""
        return tuple(x for r in self.rows for x in r)

    def nonzero_entries(self):
        for i, d in enumerate(self._data):
            for j in sorted(d):
                yield i, j

    def rank(self) -> int:
        return len(_echelon(self)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def hstack_all(field, mats: Sequence[Matrix], nrows: int) -> Matrix:
    if not mats:
        return Matrix.zeros(field, nrows, 0)
    return reduce(Matrix.hstack, mats)


def vstack_all(field, mats: Sequence[Matrix], ncols: int) -> Matrix:
    if not mats:
        return Matrix.zeros(field, 0, ncols)
    return reduce(Matrix.vstack, mats)


def kron_all(field, mats: Sequence[Matrix]) -> Matrix:
    return reduce(Matrix.kron, mats, Matrix.identity(field, 1))


# row reduction ------------------------------------------------------------

def _echelon(M: Matrix) -> tuple[list[dict], list[int]]:
    """Reduced echelon basis of the row space as sparse rows, sorted by pivot."""
    field = M.field
    red = field.reduce
    basis: dict[int, dict] = {}
    for d in M._data:
        if not d:
            continue
        row = dict(d)
        for p in [c for c in row if c in basis]:
            f = row.get(p)
            if not f:
                continue
            for j, x in basis[p].items():
                v = red(row.get(j, 0) - f * x)
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        if not row:
            continue
        piv = min(row)
        inv = field.inv(row[piv])
        if inv != 1:
            row = {j: red(x * inv) for j, x in row.items()}
        for q, brow in basis.items():
            f = brow.get(piv)
            if f:
                for j, x in row.items():
                    v = red(brow.get(j, 0) - f * x)
                    if v:
                        brow[j] = v
                    else:
                        brow.pop(j, None)
        basis[piv] = row
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def rref(M: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows, pivots = _echelon(M)
    z = M.field.zero
    dense = []
    for d in rows:
        r = [z] * M.ncols
        for j, x in d.items():
            r[j] = x
        dense.append(r)
    return dense, pivots


def kernel_basis(M: Matrix) -> list[tuple]:
    """Canonical RREF basis of {x : Mx = 0}, one vector per free column."""
    rows, pivots = rref(M)
    field = M.field
    red = field.reduce
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [field.zero] * M.ncols
        v[f] = field.one
        for row, p in zip(rows, pivots):
            v[p] = red(-row[f])
        basis.append(tuple(v))
    return basis


def kernel_matrix(M: Matrix) -> Matrix:
    """Kernel basis as the columns of a matrix (ncols x nullity)."""
    return Matrix.from_columns(M.field, kernel_basis(M), M.ncols)


def column_space(M: Matrix) -> Matrix:
    """Canonical basis of the column space (columns of RREF of M^T)."""
    rows, _ = rref(M.T)
    return Matrix.from_columns(M.field, rows, M.nrows)


def same_column_space(M: Matrix, N: Matrix) -> bool:
    return rref(M.T)[0] == rref(N.T)[0]


def solve_matrix(M: Matrix, B: Matrix) -> Matrix | None:
    """A solution X of M X = B (free variables set to 0), or None."""
    if M.nrows != B.nrows:
        raise DimensionMismatch("right-hand side has wrong number of rows")
    aug = M.hstack(B)
    rows, pivots = rref(aug)
    field = M.field
    if any(p >= M.ncols for p in pivots):
        return None
    X = [[field.zero] * B.ncols for _ in range(M.ncols)]
    for row, p in zip(rows, pivots):
        X[p] = row[M.ncols:]
    return Matrix(field, X, B.ncols)


def inverse(M: Matrix) -> Matrix | None:
    if M.nrows != M.ncols:
        return None
    X = solve_matrix(M, Matrix.identity(M.field, M.nrows))
    if X is None or M.rank() != M.nrows:
        return None
    return X


def solve_or_invert(M: Matrix, b: Sequence | None = None):
    """Unique solution of Mx = b, or the inverse of M when b is omitted.

    Returns None ("singular") when M lacks full column rank, when b is
    inconsistent, or when M is not invertible.
    """
    if b is None:
        return inverse(M)
    if len(b) != M.nrows:
        raise DimensionMismatch(f"b has length {len(b)}, matrix has {M.nrows} rows")
    if M.rank() != M.ncols:
        return None
    X = solve_matrix(M, Matrix.column(M.field, b))
    return None if X is None else X.col(0)


def left_inverse(J: Matrix) -> Matrix:
    """Some L with L J = I for a full-column-rank J."""
    X = solve_matrix(J.T, Matrix.identity(J.field, J.ncols))
    if X is None:
        raise ValueError("matrix does not have full column rank")
    return X.T


# tensor index bookkeeping ---------------------------------------------------

def tensor_flatten(indices: Sequence[int], shape: Sequence[int]) -> int:
    if len(indices) != len(shape):
        raise IndexOutOfRange("index arity does not match shape")
    flat = 0
    for i, d in zip(indices, shape):
        if not 0 <= i < d:
            raise IndexOutOfRange(f"index {i} out of range for factor of dim {d}")
        flat = flat * d + i
    return flat


def tensor_unflatten(flat: int, shape: Sequence[int]) -> tuple[int, ...]:
    total = reduce(mul, shape, 1)
    if not 0 <= flat < total:
        raise IndexOutOfRange(f"flat index {flat} out of range for shape {tuple(shape)}")
    out = []
    for d in reversed(shape):
        flat, i = divmod(flat, d)
        out.append(i)
    return tuple(reversed(out))


def tensor_indices(shape: Sequence[int]):
    """All multi-indices of a shape, in flattening order."""
    return itertools.product(*(range(d) for d in shape))


def permute_factors(field: Field, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Matrix of V_0 (x) ... (x) V_{n-1} -> V_{perm[0]} (x) ... (x) V_{perm[n-1]}."""
    dims = list(dims)
    new_dims = [dims[p] for p in perm]
    total = reduce(mul, dims, 1)
    data = [None] * total
    for src, idx in enumerate(tensor_indices(dims)):
        dst = tensor_flatten([idx[p] for p in perm], new_dims)
        data[dst] = {src: field.one}
    return Matrix._sparse(field, total, total, data)


def linear_map(field: Field, dom_shape: Sequence[int], cod_dim: int,
               fn: Callable[..., Sequence]) -> Matrix:
    """Matrix of the map sending basis tensor ``e_idx`` to ``fn(*idx)``."""
    cols = []
    for idx in tensor_indices(dom_shape):
        v = fn(*idx)
        if len(v) != cod_dim:
            raise DimensionMismatch(f"image of {idx} has length {len(v)}, expected {cod_dim}")
        cols.append(v)
    return Matrix.from_columns(field, cols, cod_dim)


def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if k == i else field.zero for k in range(n))


def vec_kron(u: Sequence, v: Sequence, field: Field) -> tuple:
    red = field.reduce
    z = field.zero
    return tuple(red(a * b) if a and b else z for a in u for b in v)


def vec_add(u, v, field):
    red = field.reduce
    return tuple(red(a + b) for a, b in zip(u, v))


def vec_scale(c, v, field):
    red = field.reduce
    return tuple(red(c * a) for a in v)
