"""Dense operators on ``(C^d)^{⊗n}`` with exact or float entries.

Basis order is row-major ``|i1 ... in>`` with ``i1`` most significant, so
for ``d = 2`` the two-site basis reads ``|00>, |01>, |10>, |11>``.

Exact matrices hold :class:`~pptkit.scalars.QQi` objects in a numpy object
array; float matrices hold ``complex128``. Every :class:`Matrix` is
read-only after construction.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalars import (
    EPS,
    EXACT,
    FLOAT,
    ONE,
    ZERO,
    BackendMismatchError,
    QQi,
    backend_of,
    magnitude,
    to_backend,
)

#: largest admissible side ``d**n``
MAX_SIDE = 4096


class CapacityError(ValueError):
    """Raised when ``d**n`` would exceed :data:`MAX_SIDE`."""


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


_to_qqi = np.frompyfunc(QQi.coerce, 1, 1)
_conj = np.frompyfunc(lambda z: z.conjugate(), 1, 1)
_to_complex = np.frompyfunc(complex, 1, 1)


def check_capacity(d: int, n: int) -> int:
    if d < 1 or n < 0:
        raise ShapeError(f"invalid dimensions d={d}, n={n}")
    side = d**n
    if side > MAX_SIDE:
        raise CapacityError(f"d**n = {d}**{n} = {side} exceeds capacity {MAX_SIDE}")
    return side


class Matrix:
    """Square operator of side ``d**n`` tagged with its scalar backend."""

    __slots__ = ("d", "n", "backend", "data")

    def __init__(self, data, d: int, n: int, backend: str | None = None):
        side = check_capacity(d, n)
        arr = np.asarray(data)
        if arr.shape != (side, side):
            raise ShapeError(f"expected {side}x{side} entries for d={d}, n={n}, got {arr.shape}")
        if backend is None:
            backend = EXACT if arr.dtype == object or np.issubdtype(arr.dtype, np.integer) else FLOAT
        if backend == EXACT:
            if arr.dtype != object or not all(isinstance(z, QQi) for z in arr.flat):
                if np.issubdtype(arr.dtype, np.floating) or np.issubdtype(arr.dtype, np.complexfloating):
                    raise BackendMismatchError("float array cannot back an exact matrix")
                arr = _to_qqi(arr.astype(object)).astype(object)
        elif backend == FLOAT:
            if arr.dtype == object:
                arr = _to_complex(arr).astype(np.complex128)
            else:
                arr = arr.astype(np.complex128)
        else:
            raise ValueError(f"unknown backend {backend!r}")
        arr = np.array(arr, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction helpers ---------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], d: int, n: int | None = None, backend: str | None = None):
        side = len(rows)
        if n is None:
            n = round(np.log(side) / np.log(d)) if side > 1 else 0
        if backend is None:
            backend = EXACT
            for row in rows:
                for z in row:
                    if backend_of(z) == FLOAT:
                        backend = FLOAT
        if backend == EXACT:
            arr = np.empty((side, side), dtype=object)
            for i, row in enumerate(rows):
                for j, z in enumerate(row):
                    arr[i, j] = QQi.coerce(z)
        else:
            arr = np.array([[complex(z) for z in row] for row in rows], dtype=np.complex128)
        return cls(arr, d, n, backend)

    @classmethod
    def identity(cls, d: int, n: int = 1, backend: str = EXACT):
        side = check_capacity(d, n)
        if backend == EXACT:
            arr = np.full((side, side), ZERO, dtype=object)
            for k in range(side):
                arr[k, k] = ONE
            return cls(arr, d, n, EXACT)
        return cls(np.eye(side, dtype=np.complex128), d, n, FLOAT)

    @classmethod
    def zeros(cls, d: int, n: int = 1, backend: str = EXACT):
        side = check_capacity(d, n)
        if backend == EXACT:
            return cls(np.full((side, side), ZERO, dtype=object), d, n, EXACT)
        return cls(np.zeros((side, side), dtype=np.complex128), d, n, FLOAT)

    @classmethod
    def from_function(cls, fn, d: int, n: int, backend: str = EXACT):
        """Build from ``fn(ket_digits, bra_digits) -> scalar``."""
        side = check_capacity(d, n)
        digits = [tuple(int(c) for c in np.base_repr(k, d).zfill(n)) if d <= 10 else _digits(k, d, n) for k in range(side)]
        rows = [[fn(digits[r], digits[c]) for c in range(side)] for r in range(side)]
        return cls.from_rows(rows, d, n, backend)

    # -- properties --------------------------------------------------------
    @property
    def side(self) -> int:
        return self.data.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

    def __getitem__(self, idx):
        return self.data[idx]

    def __repr__(self):
        return f"Matrix(d={self.d}, n={self.n}, backend={self.backend!r}, side={self.side})"

    def tolist(self):
        return self.data.tolist()

    def to_float(self) -> "Matrix":
        if self.backend == FLOAT:
            return self
        return Matrix(self.data, self.d, self.n, FLOAT)

    def to_numpy(self) -> np.ndarray:
        """complex128 copy of the entries."""
        if self.backend == FLOAT:
            return np.array(self.data)
        return _to_complex(self.data).astype(np.complex128)

    # -- operators ---------------------------------------------------------
    def __matmul__(self, other):
        return mul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, s):
        return scale(s, self)

    __rmul__ = __mul__


def _digits(k: int, d: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        k, r = divmod(k, d)
        out.append(r)
    return tuple(reversed(out))


def _same(A: Matrix, B: Matrix, what: str):
    if A.backend != B.backend:
        raise BackendMismatchError(f"{what}: backends {A.backend} and {B.backend} differ")
    if A.d != B.d:
        raise ShapeError(f"{what}: local dimensions {A.d} and {B.d} differ")


def _conformable(A: Matrix, B: Matrix, what: str):
    _same(A, B, what)
    if A.n != B.n:
        raise ShapeError(f"{what}: strand counts {A.n} and {B.n} differ")


def _scalar_for(s, backend: str):
    if backend == EXACT:
        if backend_of(s) == FLOAT:
            raise BackendMismatchError(f"float scalar {s!r} applied to exact matrix")
        return QQi.coerce(s)
    if isinstance(s, QQi):
        raise BackendMismatchError(f"exact scalar {s!r} applied to float matrix")
    return complex(s)


# ---------------------------------------------------------------------------
# elementary algebra


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    side = a.shape[0]
    brows = []
    for k in range(side):
        row = b[k]
        brows.append([(j, row[j]) for j in range(side) if not row[j].is_zero()])
    out = np.full((side, side), ZERO, dtype=object)
    for i in range(side):
        acc: dict[int, QQi] = {}
        arow = a[i]
        for k in range(side):
            x = arow[k]
            if x.is_zero() or not brows[k]:
                continue
            for j, y in brows[k]:
                p = x * y
                acc[j] = acc[j] + p if j in acc else p
        for j, v in acc.items():
            out[i, j] = v
    return out


def mul(A: Matrix, B: Matrix) -> Matrix:
    _conformable(A, B, "mul")
    if A.backend == EXACT:
        return Matrix(_exact_matmul(A.data, B.data), A.d, A.n, EXACT)
    return Matrix(A.data @ B.data, A.d, A.n, FLOAT)


def product(factors: Iterable[Matrix]) -> Matrix:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out


def add(A: Matrix, B: Matrix) -> Matrix:
    _conformable(A, B, "add")
    return Matrix(A.data + B.data, A.d, A.n, A.backend)


def scale(s, A: Matrix) -> Matrix:
    s = _scalar_for(s, A.backend)
    if A.backend == EXACT:
        if s.is_zero():
            return Matrix.zeros(A.d, A.n, EXACT)
        out = np.empty_like(A.data)
        for idx, z in np.ndenumerate(A.data):
            out[idx] = z * s
        return Matrix(out, A.d, A.n, EXACT)
    return Matrix(A.data * s, A.d, A.n, FLOAT)


def linear_combination(terms: Iterable[tuple[object, Matrix]]) -> Matrix:
    """``sum(c * M for c, M in terms)`` with backend checks."""
    out = None
    for c, M in terms:
        t = scale(c, M)
        out = t if out is None else add(out, t)
    if out is None:
        raise ValueError("empty linear combination")
    return out


def adjoint(A: Matrix) -> Matrix:
    if A.backend == EXACT:
        return Matrix(_conj(A.data.T).astype(object), A.d, A.n, EXACT)
    return Matrix(A.data.conj().T, A.d, A.n, FLOAT)


def transpose(A: Matrix) -> Matrix:
    return Matrix(A.data.T, A.d, A.n, A.backend)


def trace(A: Matrix):
    if A.backend == EXACT:
        total = ZERO
        for k in range(A.side):
            total = total + A.data[k, k]
        return total
    return complex(np.trace(A.data))


def deviation(A: Matrix, B: Matrix):
    """Max entrywise deviation; exact Fraction on the exact backend."""
    _conformable(A, B, "deviation")
    if A.backend == EXACT:
        worst = Fraction(0)
        for x, y in zip(A.data.flat, B.data.flat):
            if x != y:
                worst = max(worst, magnitude(x - y))
        return worst
    if A.side == 0:
        return 0.0
    return float(np.max(np.abs(A.data - B.data)))


def equal(A: Matrix, B: Matrix, eps: float = EPS) -> bool:
    """Literal equality on exact matrices, ``max|A-B| <= eps`` on floats."""
    dev = deviation(A, B)
    if A.backend == EXACT:
        return dev == 0
    return dev <= eps


def is_scalar_multiple_of_identity(A: Matrix, eps: float = EPS):
    """Return the scalar ``c`` with ``A == c*Id`` or ``None``."""
    c = A.data[0, 0]
    target = scale(c, Matrix.identity(A.d, A.n, A.backend))
    return c if equal(A, target, eps) else None


def inverse(A: Matrix) -> Matrix:
    """Exact inverse by fraction-free (Bareiss) Gauss-Jordan elimination, or
    LU with partial pivoting on floats."""
    if A.backend == EXACT:
        return Matrix(_bareiss_inverse(A.data), A.d, A.n, EXACT)
    cond = np.linalg.cond(A.data)
    if not np.isfinite(cond) or cond > 1e13:
        raise SingularMatrixError(f"matrix is singular to working precision (cond={cond:.3g})")
    return Matrix(np.linalg.inv(A.data), A.d, A.n, FLOAT)


def _bareiss_inverse(a: np.ndarray) -> np.ndarray:
    side = a.shape[0]
    m = [list(a[i]) + [ONE if i == j else ZERO for j in range(side)] for i in range(side)]
    width = 2 * side
    prev = ONE
    for k in range(side):
        pivot_row = next((r for r in range(k, side) if not m[r][k].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
        pk = m[k][k]
        for i in range(side):
            if i == k:
                continue
            fi = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(width):
                if j == k:
                    continue
                row_i[j] = (pk * row_i[j] - fi * row_k[j]) / prev
            row_i[k] = ZERO
        prev = pk
    # after elimination the left block is det * Id (up to row swaps handled above)
    out = np.empty((side, side), dtype=object)
    for i in range(side):
        scale_i = m[i][i]
        for j in range(side):
            out[i, j] = m[i][side + j] / scale_i
    return out


def determinant(A: Matrix):
    """Exact Bareiss determinant, or numpy's on floats."""
    if A.backend == FLOAT:
        return complex(np.linalg.det(A.data))
    m = [list(row) for row in A.data]
    side = len(m)
    sign = 1
    prev = ONE
    for k in range(side - 1):
        pivot_row = next((r for r in range(k, side) if not m[r][k].is_zero()), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, side):
            for j in range(k + 1, side):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = m[side - 1][side - 1] if side else ONE
    return det if sign > 0 else -det


def charpoly(A: Matrix) -> list:
    """Coefficients ``[c_0, ..., c_N]`` of ``det(x*Id - A)`` (Faddeev-LeVerrier).

    ``c_N`` is 1. Exact on the exact backend.
    """
    side = A.side
    backend = A.backend
    one = ONE if backend == EXACT else 1.0
    ident = Matrix.identity(A.d, A.n, backend)
    coeffs = [None] * (side + 1)
    coeffs[side] = one
    M = Matrix.zeros(A.d, A.n, backend)
    c = one
    for k in range(1, side + 1):
        M = add(mul(A, M), scale(c, ident))
        AM = mul(A, M)
        c = -trace(AM) / k
        coeffs[side - k] = c
    return coeffs


# ---------------------------------------------------------------------------
# tensor structure


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; row index of ``A`` is the major index."""
    _same(A, B, "kron")
    check_capacity(A.d, A.n + B.n)
    if A.backend == EXACT:
        a, b = A.data, B.data
        sa, sb = a.shape[0], b.shape[0]
        out = np.full((sa * sb, sa * sb), ZERO, dtype=object)
        bnz = [(k, l, b[k, l]) for k in range(sb) for l in range(sb) if not b[k, l].is_zero()]
        for i in range(sa):
            for j in range(sa):
                x = a[i, j]
                if x.is_zero():
                    continue
                for k, l, y in bnz:
                    out[i * sb + k, j * sb + l] = x * y
        return Matrix(out, A.d, A.n + B.n, EXACT)
    return Matrix(np.kron(A.data, B.data), A.d, A.n + B.n, FLOAT)


def kron_all(factors: Sequence[Matrix]) -> Matrix:
    out = factors[0]
    for f in factors[1:]:
        out = kron(out, f)
    return out


def embed(op: Matrix, i: int, N: int) -> Matrix:
    """``Id^{⊗(i-1)} ⊗ op ⊗ Id^{⊗(N-i-1)}`` for a two-site ``op``."""
    if op.n != 2:
        raise ShapeError(f"embed expects a two-site operator, got n={op.n}")
    if not 1 <= i <= N - 1:
        raise IndexError(f"site {i} out of range 1..{N - 1}")
    check_capacity(op.d, N)
    out = op
    if i > 1:
        out = kron(Matrix.identity(op.d, i - 1, op.backend), out)
    if N - i - 1 > 0:
        out = kron(out, Matrix.identity(op.d, N - i - 1, op.backend))
    return out


def embed_site(op: Matrix, i: int, N: int) -> Matrix:
    """Single-site ``op`` placed at site ``i`` of ``N``."""
    if op.n != 1:
        raise ShapeError("embed_site expects a one-site operator")
    if not 1 <= i <= N:
        raise IndexError(f"site {i} out of range 1..{N}")
    factors = [Matrix.identity(op.d, 1, op.backend)] * N
    factors[i - 1] = op
    return kron_all(factors)


def _validate_sites(sites: Iterable[int], n: int) -> tuple[int, ...]:
    sites = tuple(sites)
    if len(set(sites)) != len(sites):
        raise ValueError(f"repeated site in {sites}")
    for k in sites:
        if not isinstance(k, numbers.Integral) or not 1 <= k <= n:
            raise IndexError(f"site {k} out of range 1..{n}")
    return tuple(sorted(sites))


def partial_transpose(A: Matrix, sites: Iterable[int]) -> Matrix:
    """Swap ket and bra indices at each listed site (1-based)."""
    sites = _validate_sites(sites, A.n)
    if not sites:
        return A
    d, n = A.d, A.n
    t = A.data.reshape((d,) * (2 * n))
    axes = list(range(2 * n))
    for k in sites:
        axes[k - 1], axes[n + k - 1] = axes[n + k - 1], axes[k - 1]
    t = np.transpose(t, axes)
    return Matrix(t.reshape(A.side, A.side), d, n, A.backend)


def partial_trace_last(A: Matrix) -> Matrix:
    """Trace out the last site: ``(Tr_2 A)^a_b = sum_c A^{ac}_{bc}``."""
    if A.n < 2:
        raise ShapeError("partial trace needs at least two sites")
    d = A.d
    rest = A.side // d
    t = A.data.reshape(rest, d, rest, d)
    out = t[:, 0, :, 0]
    for c in range(1, d):
        out = out + t[:, c, :, c]
    return Matrix(out, d, A.n - 1, A.backend)


def to_backend_matrix(A: Matrix, backend: str) -> Matrix:
    if A.backend == backend:
        return A
    if backend == FLOAT:
        return A.to_float()
    raise BackendMismatchError("float matrices cannot be converted to the exact backend")


def scalar(x, backend: str):
    """Helper mirroring :func:`pptkit.scalars.to_backend`."""
    return to_backend(x, backend)
