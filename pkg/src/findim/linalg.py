"""Exact dense linear algebra over prime fields F_p and over the integers.

Matrices over F_p are stored as int64 numpy arrays with entries reduced to
[0, p).  Row reduction over F_2 goes through a bit-packed uint64 kernel;
odd primes use a vectorized modular elimination.  Integer ranks (needed for
rank computations in free abelian groups) use exact Fraction elimination.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_PRIME_CACHE: dict[int, bool] = {}


def is_prime(n: int) -> bool:
    if n in _PRIME_CACHE:
        return _PRIME_CACHE[n]
    ok = n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))
    _PRIME_CACHE[n] = ok
    return ok


class LinAlgError(ValueError):
    pass


class FieldMat:
    """Dense matrix over F_p; entries live in [0, p) as int64."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, a):
        if not is_prime(p) or p >= 2**16:
            raise LinAlgError(f"modulus must be a prime < 2^16, got {p}")
        arr = np.array(a, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(arr.shape[0], -1) if arr.size else arr.reshape(0, 0)
        self.p = p
        self.a = np.mod(arr, p)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FieldMat":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FieldMat":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, p: int, rows) -> "FieldMat":
        if len(rows) == 0:
            return cls.zeros(p, 0, 0)
        return cls(p, np.array(rows, dtype=np.int64))

    # -- shape -------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __repr__(self) -> str:
        return f"FieldMat(p={self.p}, {self.rows}x{self.cols})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMat)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.a.shape, self.a.tobytes()))

    def copy(self) -> "FieldMat":
        return FieldMat(self.p, self.a.copy())

    def to_lists(self):
        return self.a.tolist()

    def is_zero(self) -> bool:
        return not self.a.any()

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "FieldMat"):
        if self.p != other.p:
            raise LinAlgError("modulus mismatch")

    def __add__(self, other: "FieldMat") -> "FieldMat":
        self._check(other)
        return FieldMat(self.p, (self.a + other.a) % self.p)

    def __sub__(self, other: "FieldMat") -> "FieldMat":
        self._check(other)
        return FieldMat(self.p, (self.a - other.a) % self.p)

    def __neg__(self) -> "FieldMat":
        return FieldMat(self.p, (-self.a) % self.p)

    def scale(self, c: int) -> "FieldMat":
        return FieldMat(self.p, (self.a * (c % self.p)) % self.p)

    def __matmul__(self, other: "FieldMat") -> "FieldMat":
        self._check(other)
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.a.shape} @ {other.a.shape}")
        return FieldMat(self.p, _matmul_mod(self.a, other.a, self.p))

    @property
    def T(self) -> "FieldMat":
        return FieldMat(self.p, self.a.T.copy())

    def kron(self, other: "FieldMat") -> "FieldMat":
        self._check(other)
        return FieldMat(self.p, np.kron(self.a, other.a) % self.p)

    # -- elimination ---------------------------------------------------------

    def rref(self) -> tuple["FieldMat", list[int], int]:
        r, piv = _rref(self.a, self.p)
        return FieldMat(self.p, r), piv, len(piv)

    def rank(self) -> int:
        return len(_rref(self.a, self.p)[1])

    def kernel_basis(self) -> "FieldMat":
        return FieldMat(self.p, _kernel(self.a, self.p))

    def column_space_basis(self) -> "FieldMat":
        """Columns of self at the pivot positions of its rref."""
        _, piv = _rref(self.a, self.p)
        return FieldMat(self.p, self.a[:, piv].copy())

    def inv(self) -> "FieldMat":
        if self.rows != self.cols:
            raise LinAlgError("inverse of a non-square matrix")
        x = solve(self, FieldMat.identity(self.p, self.rows))
        if x is None:
            raise LinAlgError("matrix is singular")
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def hstack(mats: list[FieldMat]) -> FieldMat:
    p = mats[0].p
    return FieldMat(p, np.hstack([m.a for m in mats]))


def vstack(mats: list[FieldMat]) -> FieldMat:
    p = mats[0].p
    return FieldMat(p, np.vstack([m.a for m in mats]))


def block_diag(mats: list[FieldMat], p: int | None = None) -> FieldMat:
    if not mats:
        if p is None:
            raise LinAlgError("block_diag of empty list needs an explicit modulus")
        return FieldMat.zeros(p, 0, 0)
    p = mats[0].p
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return FieldMat(p, out)


def rref(m: FieldMat) -> tuple[FieldMat, list[int], int]:
    """Reduced row echelon form, pivot columns, rank."""
    return m.rref()


def kernel_basis(m: FieldMat) -> FieldMat:
    """Matrix whose columns are a basis of the right null space."""
    return m.kernel_basis()


def solve(a: FieldMat, b: FieldMat) -> FieldMat | None:
    """Solve a @ x = b; free variables are pinned to 0.  None if inconsistent."""
    if a.p != b.p:
        raise LinAlgError("modulus mismatch")
    if a.rows != b.rows:
        raise LinAlgError(f"row mismatch: {a.rows} vs {b.rows}")
    aug = np.hstack([a.a, b.a])
    r, piv = _rref(aug, a.p)
    if any(c >= a.cols for c in piv):
        return None
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, a.cols :]
    return FieldMat(a.p, x)


# -- numpy kernels ----------------------------------------------------------


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    if x.shape[1] == 0 or x.shape[0] == 0 or y.shape[1] == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    # exact float64 BLAS path when accumulated products stay below 2^53
    if x.shape[1] * (p - 1) * (p - 1) < 2**53:
        z = np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64)
    else:
        z = x @ y
    return np.mod(z, p)


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.copy(), []
    if p == 2:
        return _rref_gf2(a)
    m = a.copy()
    rows, cols = m.shape
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        colvals = m[:, c].copy()
        colvals[r] = 0
        hit = np.nonzero(colvals)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(colvals[hit], m[r])) % p
        piv.append(c)
        r += 1
    return m, piv


def _pack_gf2(a: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows into little-endian uint64 words."""
    rows, cols = a.shape
    nwords = (cols + 63) // 64
    bits = np.packbits(a.astype(np.uint8), axis=1, bitorder="little")
    buf = np.zeros((rows, nwords * 8), dtype=np.uint8)
    buf[:, : bits.shape[1]] = bits
    return buf.view(np.uint64)


def _unpack_gf2(w: np.ndarray, cols: int) -> np.ndarray:
    rows = w.shape[0]
    bytes_ = w.view(np.uint8)
    bits = np.unpackbits(bytes_, axis=1, bitorder="little")[:, :cols]
    return bits.astype(np.int64).reshape(rows, cols)


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    w = _pack_gf2(a % 2)
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = divmod(c, 64)
        colbits = (w[r:, word] >> np.uint64(bit)) & np.uint64(1)
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            w[[r, i]] = w[[i, r]]
        mask = ((w[:, word] >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        mask[r] = False
        if mask.any():
            w[mask] ^= w[r]
        piv.append(c)
        r += 1
    return _unpack_gf2(w, cols), piv


def _kernel(a: np.ndarray, p: int) -> np.ndarray:
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = _rref(a, p)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    k = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, c in enumerate(piv):
            k[c, j] = (-r[i, f]) % p
    return k


# -- integer matrices --------------------------------------------------------


class IntMat:
    """Integer matrix; rank is taken over the rationals."""

    __slots__ = ("a",)

    def __init__(self, a):
        arr = np.array(a, dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(len(arr), 1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise LinAlgError("IntMat needs a 2-d array")
        self.a = arr

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def to_lists(self):
        return [[int(x) for x in row] for row in self.a]


def integer_rank(m: IntMat) -> int:
    """Rank over Q of the column span, by exact Fraction elimination."""
    rows = [[Fraction(int(x)) for x in r] for r in m.a]
    nrows, ncols = m.rows, m.cols
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, nrows):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        pv = rows[row][col]
        for i in range(row + 1, nrows):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank
