"""Dense exact linear algebra over a :class:`~veronuc.gf.Field`.

Matrices hold numpy ``int64`` arrays of element encodings.  Subspaces are
always kept as the nonzero rows of a reduced row echelon form, which makes
equality a plain array comparison.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, FieldMismatch
from .gf import Field, FieldElement


def encode_vector(field: Field, v) -> np.ndarray:
    """Encodings of a vector.

    numpy arrays are taken to hold encodings already (as returned by
    :func:`~veronuc.vero.projective_points`); Python integers embed through
    the prime subfield; elements must belong to ``field``.
    """
    if isinstance(v, np.ndarray):
        arr = v.astype(np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"encodings out of range for {field!r}")
        return arr

    def enc(x) -> int:
        if isinstance(x, FieldElement):
            if x.field != field:
                raise FieldMismatch(f"{x!r} is not an element of {field!r}")
            return x.value
        return field(int(x)).value

    return np.array([enc(x) for x in v], dtype=np.int64)


def _encode_entries(field: Field, rows) -> np.ndarray:
    return np.array([encode_vector(field, row) for row in rows], dtype=np.int64)


class MatrixF:
    """An immutable ``rows x cols`` matrix over ``field``.

    ``data`` holds encodings (see :mod:`veronuc.gf`); use
    :meth:`from_rows` to build from elements or integers.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data: np.ndarray):
        data = np.array(data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= field.q):
            raise ValueError("entry encodings out of range")
        data.setflags(write=False)
        self.field = field
        self.data = data

    @classmethod
    def _wrap(cls, field: Field, data: np.ndarray) -> "MatrixF":
        # trusted internal constructor: no validation or copy
        obj = cls.__new__(cls)
        data.setflags(write=False)
        obj.field = field
        obj.data = data
        return obj

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], cols: int | None = None) -> "MatrixF":
        """Matrix from rows of :class:`FieldElement` or integers.

        Integers are embedded through the prime subfield; numpy rows are
        read as encodings (see :func:`encode_vector`).
        """
        rows = [list(r) for r in rows]
        if not rows:
            return cls._wrap(field, np.zeros((0, cols or 0), dtype=np.int64))
        return cls._wrap(field, _encode_entries(field, rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixF":
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixF":
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, int(self.data[i, j]))

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, int(v)) for v in self.data[i])

    def to_lists(self) -> list[list[FieldElement]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "MatrixF":
        return MatrixF._wrap(self.field, self.data.T.copy())

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatrixF) and self.field == other.field
                and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixF({self.field!r}, {self.data.tolist()})"

    def __matmul__(self, other: "MatrixF") -> "MatrixF":
        if not isinstance(other, MatrixF):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return MatrixF._wrap(self.field, matmul(self.field, self.data, other.data))

    def apply(self, v: Sequence) -> tuple[FieldElement, ...]:
        """Matrix times a column vector given as a sequence."""
        col = encode_vector(self.field, v).reshape(-1, 1)
        prod = self @ MatrixF._wrap(self.field, col)
        return tuple(FieldElement(self.field, int(x)) for x in prod.data[:, 0])

    def vstack(self, other: "MatrixF") -> "MatrixF":
        if other.field != self.field:
            raise FieldMismatch("matrices over different fields")
        return MatrixF._wrap(self.field, np.vstack([self.data, other.data]))


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of encoded arrays over ``field``."""
    if field.k == 1:
        # entries < p <= 2^16, so int64 partial sums cannot overflow here
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[1]):
        out = field.vadd(out, field.vmul(a[:, i:i + 1], b[i:i + 1, :]))
    return out


def dot(field: Field, u: np.ndarray, v: np.ndarray) -> int:
    """Bilinear pairing of two encoded vectors (no conjugation)."""
    return int(field.vsum(field.vmul(u, v)))


def _rref_array(field: Field, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(data, dtype=np.int64, copy=True)
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r, c:] = field.vmul(A[r, c:], field._inv(lead))
        # row r is zero left of c, so only columns c.. change
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            factors = A[others, c][:, None]
            A[others, c:] = field.vsub(A[others, c:], field.vmul(factors, A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rref(M: MatrixF) -> tuple[MatrixF, int, list[int]]:
    """Reduced row echelon form of ``M``.

    Pivots are chosen as the first nonzero entry in column order and scaled
    to 1, so the result is canonical.  Returns ``(R, rank, pivot_cols)``
    with ``R`` of the same shape as ``M`` and zero rows at the bottom.
    """
    A, pivots = _rref_array(M.field, M.data)
    return MatrixF._wrap(M.field, A), len(pivots), pivots


def matrix_rank(M: MatrixF) -> int:
    return rref(M)[1]


def _nullspace_array(field: Field, data: np.ndarray) -> np.ndarray:
    ncols = data.shape[1]
    A, pivots = _rref_array(field, data)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            if A[i, f]:
                basis[row, pc] = field._neg(int(A[i, f]))
    return basis


class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its canonical basis.

    The basis is the list of nonzero rows of an RREF matrix, so two
    subspaces are equal exactly when their bases are entrywise equal.
    """

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field: Field, ambient_dim: int, rows: np.ndarray | None = None):
        if rows is None or len(rows) == 0:
            data = np.zeros((0, ambient_dim), dtype=np.int64)
        else:
            A, pivots = _rref_array(field, np.asarray(rows, dtype=np.int64))
            data = A[:len(pivots)]
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = MatrixF._wrap(field, data)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim)

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, np.eye(ambient_dim, dtype=np.int64))

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        M = MatrixF.from_rows(field, vectors, cols=ambient_dim)
        if M.rows and M.cols != ambient_dim:
            raise AmbientMismatch(f"vectors of length {M.cols} in ambient {ambient_dim}")
        return cls(field, ambient_dim, M.data)

    @classmethod
    def span_units(cls, field: Field, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard unit vectors at ``indices``."""
        idx = sorted(set(indices))
        rows = np.zeros((len(idx), ambient_dim), dtype=np.int64)
        rows[np.arange(len(idx)), idx] = 1
        return cls(field, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def projective_dim(self) -> int:
        return self.dim - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and subspace_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.basis.data.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def annihilator(self) -> "Subspace":
        """All vectors ``c`` with ``c . v = 0`` for every ``v`` in the subspace."""
        return Subspace(self.field, self.ambient_dim, _nullspace_array(self.field, self.basis.data))

    def map(self, S: MatrixF) -> "Subspace":
        """Image under the linear map ``v -> S v``."""
        if S.cols != self.ambient_dim:
            raise AmbientMismatch(f"map with {S.cols} columns on ambient {self.ambient_dim}")
        images = matmul(self.field, self.basis.data, S.data.T)
        return Subspace(self.field, S.rows, images)

    def vectors(self) -> list[tuple[FieldElement, ...]]:
        return [self.basis.row(i) for i in range(self.dim)]


def nullspace(M: MatrixF) -> Subspace:
    """``{v : M v = 0}`` as a canonical subspace."""
    return Subspace(M.field, M.cols, _nullspace_array(M.field, M.data))


def rowspace(M: MatrixF) -> Subspace:
    return Subspace(M.field, M.cols, M.data)


def _check_pair(A: Subspace, B: Subspace) -> None:
    if A.field != B.field:
        raise FieldMismatch("subspaces over different fields")
    if A.ambient_dim != B.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim} differ")


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """``A ∩ B``: nullspace of the stacked annihilator constraints of both."""
    _check_pair(A, B)
    constraints = np.vstack([A.annihilator().basis.data, B.annihilator().basis.data])
    if constraints.shape[0] == 0:
        return Subspace.full(A.field, A.ambient_dim)
    return Subspace(A.field, A.ambient_dim, _nullspace_array(A.field, constraints))


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_pair(A, B)
    return Subspace(A.field, A.ambient_dim, np.vstack([A.basis.data, B.basis.data]))


def contains(A: Subspace, v: Sequence) -> bool:
    if len(v) != A.ambient_dim:
        raise AmbientMismatch(f"vector of length {len(v)} in ambient {A.ambient_dim}")
    row = MatrixF.from_rows(A.field, [v]).data
    return subspace_sum(A, Subspace(A.field, A.ambient_dim, row)).dim == A.dim


def contains_subspace(A: Subspace, B: Subspace) -> bool:
    """True iff ``B`` is a subspace of ``A``."""
    return subspace_sum(A, B).dim == A.dim


def subspace_equal(A: Subspace, B: Subspace) -> bool:
    return (A.field == B.field and A.ambient_dim == B.ambient_dim
            and A.basis.data.shape == B.basis.data.shape
            and bool(np.array_equal(A.basis.data, B.basis.data)))
