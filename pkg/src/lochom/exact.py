"""Exact dense linear algebra over F_p (p prime) and Q.

Every strandwise computation in the engine bottoms out here: reduced row
echelon forms, kernels, and induced maps on subquotients W <= U <= k^n
(:class:`StrandSpace`).  Matrices over F_p are stored as numpy integer arrays
with entries reduced into ``[0, p)``; matrices over Q hold
:class:`fractions.Fraction` entries (always in lowest terms with positive
denominator).  All values are immutable after construction, so they are safe
to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import FieldMismatchError, InternalInvariantError, WellDefinednessError

__all__ = [
    "FieldSpec",
    "QQ",
    "DEFAULT_PRIME",
    "ExactMatrix",
    "rref_with_pivots",
    "rank",
    "kernel_basis",
    "column_basis",
    "solve_columns",
    "StrandSpace",
    "induced_map",
]

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """Coefficient field: characteristic 0 means Q, otherwise a prime p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int):
        characteristic = int(characteristic)
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        object.__setattr__(self, "characteristic", characteristic)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def normalize(self, value):
        """Canonical representative of a scalar (Fraction, or int in [0, p))."""
        if self.characteristic == 0:
            return value if isinstance(value, Fraction) else Fraction(value)
        return int(value) % self.characteristic

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        if self.characteristic == 0:
            return a + b
        return (a + b) % self.characteristic

    def mul(self, a, b):
        if self.characteristic == 0:
            return a * b
        return (a * b) % self.characteristic

    def neg(self, a):
        if self.characteristic == 0:
            return -a
        return (-a) % self.characteristic

    def inv(self, a):
        if self.characteristic == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / a
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), self.characteristic - 2, self.characteristic)


QQ = FieldSpec(0)


def _dtype_for(p: int):
    # int32 products stay below 2^31 only for p < 46341
    return np.int32 if p < 46341 else np.int64


def _same_field(a: "ExactMatrix", b: "ExactMatrix") -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatchError(f"mixed fields {a.field} and {b.field}")
    return a.field


class ExactMatrix:
    """Dense row-major matrix with exact entries over a fixed field."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, data: np.ndarray):
        self.field = field
        self.rows, self.cols = data.shape
        data.flags.writeable = False
        self._data = data

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                cols = 0
            return cls.zeros(field, 0, cols)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if cols is not None and cols != ncols:
            raise ValueError("explicit column count disagrees with data")
        if field.characteristic == 0:
            data = np.empty((nrows, ncols), dtype=object)
            for i, r in enumerate(rows):
                for j, v in enumerate(r):
                    data[i, j] = field.normalize(v)
        else:
            p = field.characteristic
            data = np.array(
                [[int(v) % p for v in r] for r in rows], dtype=_dtype_for(p)
            ).reshape(nrows, ncols)
        return cls(field, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        if field.characteristic == 0:
            data = np.empty((rows, cols), dtype=object)
            data[...] = Fraction(0)
        else:
            data = np.zeros((rows, cols), dtype=_dtype_for(field.characteristic))
        return cls(field, data)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        m = cls.zeros(field, n, n)
        data = m._mutable_copy()
        one = field.one()
        for i in range(n):
            data[i, i] = one
        return cls(field, data)

    def _mutable_copy(self) -> np.ndarray:
        out = self._data.copy()
        out.flags.writeable = True
        return out

    # -- inspection --------------------------------------------------------
    @property
    def entries(self):
        """Row-major tuple-of-tuples of canonical scalars."""
        return tuple(tuple(row) for row in self._data.tolist()) if self.field.is_rational \
            else tuple(tuple(int(v) for v in row) for row in self._data.tolist())

    def entry(self, i: int, j: int):
        v = self._data[i, j]
        return v if self.field.is_rational else int(v)

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        if self.field.is_rational:
            return all(v == 0 for v in self._data.flat)
        return not self._data.any()

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        if self.field.is_rational:
            return bool(np.equal(self._data, other._data).all())
        return bool((self._data == other._data).all())

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.rows}x{self.cols})"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        field = _same_field(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        data = self._data + other._data
        if not field.is_rational:
            data = data % field.characteristic
        return ExactMatrix(field, data)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        field = _same_field(self, other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        data = self._data - other._data
        if not field.is_rational:
            data = data % field.characteristic
        return ExactMatrix(field, data)

    def __neg__(self) -> "ExactMatrix":
        data = -self._data
        if not self.field.is_rational:
            data = data % self.field.characteristic
        return ExactMatrix(self.field, data)

    def scale(self, c) -> "ExactMatrix":
        c = self.field.normalize(c)
        data = self._data * c
        if not self.field.is_rational:
            data = data % self.field.characteristic
        return ExactMatrix(self.field, data)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        field = _same_field(self, other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        if field.is_rational:
            data = np.empty((self.rows, other.cols), dtype=object)
            if self.rows and other.cols:
                data[...] = self._data.dot(other._data) if self.cols else Fraction(0)
            if self.cols == 0:
                data[...] = Fraction(0)
            return ExactMatrix(field, data)
        p = field.characteristic
        a = self._data.astype(np.int64)
        b = other._data.astype(np.int64)
        # guard against int64 overflow in the dot accumulation
        if self.cols and (p - 1) ** 2 > (2**62) // max(self.cols, 1):
            out = np.zeros((self.rows, other.cols), dtype=np.int64)
            step = max(1, (2**62) // max((p - 1) ** 2, 1))
            for start in range(0, self.cols, step):
                out = (out + a[:, start : start + step].dot(b[start : start + step])) % p
            data = out
        else:
            data = a.dot(b) % p if self.cols else np.zeros((self.rows, other.cols), dtype=np.int64)
        return ExactMatrix(field, data.astype(_dtype_for(p)))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self._data.T.copy())

    # -- slicing / stacking --------------------------------------------------
    def columns(self, indices) -> "ExactMatrix":
        idx = list(indices)
        data = self._data[:, idx].copy() if idx else self._empty_like(self.rows, 0)
        return ExactMatrix(self.field, data)

    def rows_slice(self, start: int, stop: int) -> "ExactMatrix":
        return ExactMatrix(self.field, self._data[start:stop].copy())

    def _empty_like(self, r: int, c: int) -> np.ndarray:
        if self.field.is_rational:
            out = np.empty((r, c), dtype=object)
            out[...] = Fraction(0)
            return out
        return np.zeros((r, c), dtype=self._data.dtype)

    @staticmethod
    def hstack(mats) -> "ExactMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("hstack of nothing")
        field = mats[0].field
        for m in mats[1:]:
            _same_field(mats[0], m)
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("row mismatch in hstack")
        data = np.hstack([m._data for m in mats]) if mats else None
        return ExactMatrix(field, data.copy())

    @staticmethod
    def vstack(mats) -> "ExactMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        field = mats[0].field
        for m in mats[1:]:
            _same_field(mats[0], m)
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column mismatch in vstack")
        data = np.vstack([m._data for m in mats])
        return ExactMatrix(field, data.copy())

    @staticmethod
    def assemble(field: FieldSpec, grid, row_dims, col_dims) -> "ExactMatrix":
        """Block matrix from grid[i][j] in (ExactMatrix | None); None blocks are zero."""
        nr = sum(row_dims)
        nc = sum(col_dims)
        out = ExactMatrix.zeros(field, nr, nc)._mutable_copy()
        r0 = 0
        for bi, rd in enumerate(row_dims):
            c0 = 0
            for bj, cd in enumerate(col_dims):
                blk = grid[bi][bj]
                if blk is not None:
                    if blk.rows != rd or blk.cols != cd or blk.field != field:
                        raise ValueError("block shape or field mismatch")
                    out[r0 : r0 + rd, c0 : c0 + cd] = blk._data
                c0 += cd
            r0 += rd
        return ExactMatrix(field, out)


# -- elimination kernels ----------------------------------------------------

def _rref_fp(a: np.ndarray, p: int):
    m = a.astype(np.int64, copy=True)
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _rank_fp(a: np.ndarray, p: int) -> int:
    """Forward elimination only; cheaper than full reduction."""
    m = a.astype(np.int64, copy=True)
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        below = m[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            inv = pow(int(m[r, c]), p - 2, p)
            factors = (below[hit] * inv) % p
            m[r + 1 + hit] = (m[r + 1 + hit] - np.outer(factors, m[r])) % p
        r += 1
    return r


def _rref_qq(a: np.ndarray):
    m = a.copy()
    m.flags.writeable = True
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = None
        for k in range(r, nrows):
            if m[k, c] != 0:
                i = k
                break
        if i is None:
            continue
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] / m[r, c]
        for k in range(nrows):
            if k != r and m[k, c] != 0:
                m[k] = m[k] - m[k, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rref_with_pivots(m: ExactMatrix):
    """Reduced row echelon form together with its pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, ()
    if m.field.is_rational:
        data, pivots = _rref_qq(m._data)
    else:
        data, pivots = _rref_fp(m._data, m.field.characteristic)
        data = data.astype(m._data.dtype)
    return ExactMatrix(m.field, data), tuple(pivots)


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.is_rational:
        return len(_rref_qq(m._data)[1])
    return _rank_fp(m._data, m.field.characteristic)


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of the right kernel;  rank + kernel dim = cols."""
    red, pivots = rref_with_pivots(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    out = ExactMatrix.zeros(m.field, m.cols, len(free))._mutable_copy()
    one = m.field.one()
    for j, fc in enumerate(free):
        out[fc, j] = one
        for i, pc in enumerate(pivots):
            val = red.entry(i, fc)
            if val != 0:
                out[pc, j] = m.field.neg(val)
    return ExactMatrix(m.field, out)


def column_basis(m: ExactMatrix) -> ExactMatrix:
    """Deterministic basis of the column space: the pivot columns of m."""
    _, pivots = rref_with_pivots(m)
    return m.columns(pivots)


def span_contains(basis: ExactMatrix, vectors: ExactMatrix) -> bool:
    """True iff every column of ``vectors`` lies in the span of ``basis`` columns."""
    if vectors.cols == 0:
        return True
    if vectors.rows != basis.rows:
        raise ValueError("ambient dimension mismatch")
    if basis.cols == 0:
        return vectors.is_zero()
    return rank(ExactMatrix.hstack([basis, vectors])) == rank(basis)


def solve_columns(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """One solution X of A X = B (free coordinates set to zero).

    Raises InternalInvariantError when some column of B is outside col(A);
    callers are expected to have checked containment already.
    """
    field = _same_field(a, b)
    if a.rows != b.rows:
        raise ValueError("row mismatch in solve")
    red, pivots = rref_with_pivots(ExactMatrix.hstack([a, b])) if a.cols else (None, ())
    if a.cols == 0:
        if not b.is_zero():
            raise InternalInvariantError("inconsistent system with empty matrix")
        return ExactMatrix.zeros(field, 0, b.cols)
    if any(p >= a.cols for p in pivots):
        raise InternalInvariantError("inconsistent linear system")
    out = ExactMatrix.zeros(field, a.cols, b.cols)._mutable_copy()
    for i, pc in enumerate(pivots):
        for j in range(b.cols):
            val = red.entry(i, a.cols + j)
            if val != 0:
                out[pc, j] = val
    return ExactMatrix(field, out)


# -- strand spaces -----------------------------------------------------------

class StrandSpace:
    """A subquotient U/W of a coordinate space k^n with a chosen coset basis.

    ``sub_basis`` columns span W, ``super_basis`` columns span U, and
    ``coset_reps`` columns are representatives of a basis of U/W, picked as the
    greedy (leftmost) super columns independent modulo W.  With
    ``super_basis=None`` the super space is all of k^n.
    """

    __slots__ = (
        "field",
        "ambient_dim",
        "sub_basis",
        "super_basis",
        "coset_reps",
        "_sub_cb",
        "_full_super",
    )

    def __init__(self, sub_basis: ExactMatrix, super_basis: ExactMatrix | None = None):
        self.field = sub_basis.field
        self.ambient_dim = sub_basis.rows
        self.sub_basis = sub_basis
        self._full_super = super_basis is None
        sub_cb = column_basis(sub_basis) if sub_basis.cols else sub_basis
        self._sub_cb = sub_cb
        if super_basis is None:
            super_basis = ExactMatrix.identity(self.field, self.ambient_dim)
        elif super_basis.rows != self.ambient_dim or super_basis.field != self.field:
            raise ValueError("super basis shape or field mismatch")
        self.super_basis = super_basis
        if self._full_super and sub_cb.cols == 0:
            self.coset_reps = ExactMatrix.identity(self.field, self.ambient_dim)
            return
        if not self._full_super and not span_contains(super_basis, sub_cb):
            raise WellDefinednessError("sub space is not contained in super space")
        stacked = ExactMatrix.hstack([sub_cb, super_basis]) if sub_cb.cols else super_basis
        _, pivots = rref_with_pivots(stacked)
        offset = sub_cb.cols
        chosen = [p - offset for p in pivots if p >= offset]
        self.coset_reps = super_basis.columns(chosen)

    @property
    def dim(self) -> int:
        return self.coset_reps.cols

    @property
    def is_full(self) -> bool:
        return self._full_super and self._sub_cb.cols == 0

    def sub_rank(self) -> int:
        return self._sub_cb.cols

    def sub_column_basis(self) -> ExactMatrix:
        return self._sub_cb

    def contains_in_super(self, vectors: ExactMatrix) -> bool:
        if self._full_super:
            return True
        return span_contains(
            ExactMatrix.hstack([self._sub_cb, self.coset_reps])
            if self._sub_cb.cols
            else self.coset_reps,
            vectors,
        )

    def contains_in_sub(self, vectors: ExactMatrix) -> bool:
        return span_contains(self._sub_cb, vectors)

    def express(self, vectors: ExactMatrix) -> ExactMatrix:
        """Coset coordinates of ambient vectors (assumed to lie in U)."""
        if self.is_full:
            return vectors
        basis = (
            ExactMatrix.hstack([self._sub_cb, self.coset_reps])
            if self._sub_cb.cols
            else self.coset_reps
        )
        sol = solve_columns(basis, vectors)
        return sol.rows_slice(self._sub_cb.cols, self._sub_cb.cols + self.dim)

    def __repr__(self):
        return (
            f"StrandSpace(dim={self.dim}, ambient={self.ambient_dim}, "
            f"sub_rank={self._sub_cb.cols})"
        )


def induced_map(src: StrandSpace, dst: StrandSpace, ambient: ExactMatrix) -> ExactMatrix:
    """Matrix of the map induced on coset bases by an ambient matrix.

    Checks that the ambient matrix sends src's super space into dst's super
    space and src's sub space into dst's sub space; failure of either raises
    WellDefinednessError (the signature of a non-homogeneous or wrong-degree
    map upstream).
    """
    if src.field != dst.field or ambient.field != src.field:
        raise FieldMismatchError("induced_map operands over different fields")
    if ambient.cols != src.ambient_dim or ambient.rows != dst.ambient_dim:
        raise ValueError("ambient matrix shape mismatch")
    if src.is_full and dst.is_full:
        return ambient
    if not dst.contains_in_super(ambient @ src.super_basis if not src._full_super else ambient):
        raise WellDefinednessError("image leaves the target super space")
    if src._sub_cb.cols:
        if not dst.contains_in_sub(ambient @ src._sub_cb):
            raise WellDefinednessError("image of sub space leaves the target sub space")
    return dst.express(ambient @ src.coset_reps)
