"""Dense exact linear algebra over F_q, plus a sparse generalized-permutation
representation.

Matrices are numpy arrays of fully-reduced residues. For moduli below 2**31
the entries live in int64 and all row operations stay within the 63-bit safe
range; larger moduli transparently fall back to object (python int) arrays,
so results are exact for every admissible q. Gaussian elimination uses
first-nonzero pivoting and exact field arithmetic, no tolerances.

Wire format: a `rows cols` header line followed by the row-major entries as
unsigned decimals, whitespace-separated.
"""

import numpy as np

from . import errors
from .ff import inv_mod, validate_modulus

_INT64_Q_LIMIT = 1 << 31


def _dtype_for(q):
    return np.int64 if q < _INT64_Q_LIMIT else object


def _as_reduced_array(entries, q):
    dt = _dtype_for(q)
    a = np.array(entries, dtype=dt)
    if a.ndim != 2:
        raise errors.DimensionMismatch(f"expected 2-d entries, got shape {a.shape}")
    return a % q


def _matmul(a, b, q):
    """Exact (a @ b) % q with overflow-safe dtype selection."""
    inner = a.shape[-1]
    if a.dtype == np.int64 and b.dtype == np.int64 and inner * (q - 1) ** 2 < (1 << 63):
        return (a @ b) % q
    return np.dot(a.astype(object), b.astype(object)) % q


def _rref(a, q):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    r = a.copy()
    rows, cols = r.shape
    pivots = []
    lead = 0
    for c in range(cols):
        if lead >= rows:
            break
        nz = np.nonzero(r[lead:, c])[0]
        if len(nz) == 0:
            continue
        i = lead + int(nz[0])
        if i != lead:
            r[[lead, i]] = r[[i, lead]]
        r[lead] = (r[lead] * inv_mod(int(r[lead, c]), q)) % q
        col = r[:, c].copy()
        col[lead] = 0
        r -= np.outer(col, r[lead])
        r %= q
        pivots.append(c)
        lead += 1
    return r, pivots


class FqMatrix:
    """Dense matrix over F_q with value semantics."""

    __slots__ = ("a", "q")

    def __init__(self, entries, q, *, _reduced=False):
        q = validate_modulus(q)
        if _reduced:
            a = entries
        else:
            a = _as_reduced_array(entries, q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("FqMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def _wrap(cls, a, q):
        m = cls.__new__(cls)
        object.__setattr__(m, "a", a)
        object.__setattr__(m, "q", q)
        return m

    @classmethod
    def identity(cls, n, q):
        q = validate_modulus(q)
        return cls._wrap(np.eye(n, dtype=_dtype_for(q)), q)

    @classmethod
    def zeros(cls, rows, cols, q):
        q = validate_modulus(q)
        return cls._wrap(np.zeros((rows, cols), dtype=_dtype_for(q)), q)

    @classmethod
    def from_flat(cls, rows, cols, flat, q):
        flat = list(flat)
        if len(flat) != rows * cols:
            raise errors.DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(flat)}"
            )
        return cls(np.array(flat).reshape(rows, cols), q)

    @classmethod
    def random(cls, rows, cols, q, stream):
        q = validate_modulus(q)
        return cls(stream.integers(q, (rows, cols)), q)

    @classmethod
    def random_invertible(cls, n, q, stream, max_tries=64):
        for _ in range(max_tries):
            m = cls.random(n, n, q, stream)
            if m.rank() == n:
                return m
        raise errors.RetriesExhausted(f"no invertible {n}x{n} matrix after {max_tries} tries")

    @classmethod
    def row_vector(cls, entries, q):
        return cls(np.array(list(entries)).reshape(1, -1), q)

    # -- basics ------------------------------------------------------------

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __repr__(self):
        return f"FqMatrix({self.rows}x{self.cols}, q={self.q})"

    def __eq__(self, other):
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.q == other.q and self.shape == other.shape and bool(
            (self.a == other.a).all()
        )

    def __hash__(self):
        return hash((self.q, self.shape, tuple(int(x) for x in self.a.flat)))

    def _check_field(self, other):
        if self.q != other.q:
            raise errors.ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")

    def entry(self, i, j):
        return int(self.a[i, j])

    def to_lists(self):
        return [[int(x) for x in row] for row in self.a]

    @property
    def T(self):
        return FqMatrix._wrap(self.a.T.copy(), self.q)

    def is_zero(self):
        return not self.a.any()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise errors.DimensionMismatch(f"{self.shape} + {other.shape}")
        return FqMatrix._wrap((self.a + other.a) % self.q, self.q)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise errors.DimensionMismatch(f"{self.shape} - {other.shape}")
        return FqMatrix._wrap((self.a - other.a) % self.q, self.q)

    def __neg__(self):
        return FqMatrix._wrap((-self.a) % self.q, self.q)

    def scale(self, c):
        return FqMatrix._wrap((self.a * (int(c) % self.q)) % self.q, self.q)

    def __matmul__(self, other):
        if isinstance(other, GenPermMatrix):
            return other.__rmatmul__(self)
        self._check_field(other)
        if self.cols != other.rows:
            raise errors.DimensionMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        return FqMatrix._wrap(_matmul(self.a, other.a, self.q), self.q)

    def __pow__(self, e):
        """Square-and-multiply power; e must be a nonnegative integer."""
        if self.rows != self.cols:
            raise errors.DimensionMismatch("matrix power needs a square matrix")
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = FqMatrix.identity(self.rows, self.q)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    # -- elimination-based operations ---------------------------------------

    def rref(self):
        r, pivots = _rref(self.a, self.q)
        return FqMatrix._wrap(r, self.q), pivots

    def rank(self):
        return len(self.rref()[1])

    def left_nullspace(self):
        """Canonical echelonized basis of {h : h @ self = 0}, stacked as the
        rows of a matrix with self.rows columns (0 rows when full row rank)."""
        r, pivots = _rref(self.a.T, self.q)
        n = self.rows
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((len(free), n), dtype=self.a.dtype)
        for k, fc in enumerate(free):
            basis[k, fc] = 1
            for i, pc in enumerate(pivots):
                basis[k, pc] = (-r[i, fc]) % self.q
        return FqMatrix._wrap(basis, self.q)

    def inverse(self):
        if self.rows != self.cols:
            raise errors.DimensionMismatch("inverse needs a square matrix")
        n = self.rows
        aug = np.concatenate(
            [self.a, np.eye(n, dtype=self.a.dtype)], axis=1
        )
        r, pivots = _rref(aug, self.q)
        if pivots[:n] != list(range(n)):
            raise errors.SingularMatrix(f"{n}x{n} matrix is singular")
        return FqMatrix._wrap(r[:, n:].copy(), self.q)

    # -- serialization -------------------------------------------------------

    def to_text(self):
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.a)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tokens(cls, tokens, q):
        """Parse from an iterator of whitespace-split tokens; consumes exactly
        the matrix's tokens so several can be read back to back."""
        try:
            rows = int(next(tokens))
            cols = int(next(tokens))
        except (StopIteration, ValueError) as exc:
            raise errors.KeyFileError("matrix header missing or malformed") from exc
        if rows < 0 or cols < 0:
            raise errors.KeyFileError("negative matrix dimensions")
        flat = []
        for _ in range(rows * cols):
            try:
                v = int(next(tokens))
            except (StopIteration, ValueError) as exc:
                raise errors.KeyFileError("matrix entries truncated") from exc
            if not 0 <= v < q:
                raise errors.KeyFileError(f"entry {v} out of range [0, {q})")
            flat.append(v)
        return cls.from_flat(rows, cols, flat, q)

    @classmethod
    def from_text(cls, text, q):
        return cls.from_tokens(iter(text.split()), q)


def random_cokernel_vector(m, stream):
    """Uniform nonzero F_q-combination of m's canonical left-nullspace basis,
    as a 1 x m.rows matrix."""
    basis = m.left_nullspace()
    if basis.rows == 0:
        raise errors.DegenerateChoice("matrix has full row rank; cokernel is zero")
    coeffs = stream.choice_nonzero_vector(m.q, basis.rows)
    row = FqMatrix._wrap(coeffs.reshape(1, -1).astype(basis.a.dtype), m.q)
    return row @ basis


class GenPermMatrix:
    """Generalized permutation matrix: exactly one nonzero entry per row and
    column. Row i holds value diag[i] at column perm[i]; products, powers and
    inverses are O(n)."""

    __slots__ = ("perm", "diag", "q")

    def __init__(self, perm, diag, q):
        q = validate_modulus(q)
        perm = np.asarray(perm, dtype=np.int64)
        diag = np.asarray(diag, dtype=np.int64) % q
        if perm.ndim != 1 or diag.shape != perm.shape:
            raise errors.DimensionMismatch("perm and diag must be equal-length vectors")
        if sorted(perm.tolist()) != list(range(len(perm))):
            raise errors.DimensionMismatch("perm is not a permutation")
        if not diag.all():
            raise errors.SingularMatrix("generalized permutation needs nonzero scales")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("GenPermMatrix is immutable")

    @classmethod
    def identity(cls, n, q):
        return cls(np.arange(n), np.ones(n, dtype=np.int64), q)

    @classmethod
    def random(cls, n, q, stream):
        return cls(stream.permutation(n), stream.nonzero_integers(q, (n,)), q)

    @property
    def n(self):
        return len(self.perm)

    @property
    def rows(self):
        return self.n

    @property
    def cols(self):
        return self.n

    def __repr__(self):
        return f"GenPermMatrix(n={self.n}, q={self.q})"

    def __eq__(self, other):
        if not isinstance(other, GenPermMatrix):
            return NotImplemented
        return (
            self.q == other.q
            and bool((self.perm == other.perm).all())
            and bool((self.diag == other.diag).all())
        )

    def mul(self, other):
        """self @ other for two generalized permutations."""
        if self.q != other.q:
            raise errors.ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")
        if self.n != other.n:
            raise errors.DimensionMismatch(f"sizes differ: {self.n} vs {other.n}")
        perm = other.perm[self.perm]
        diag = (self.diag * other.diag[self.perm]) % self.q
        return GenPermMatrix(perm, diag, self.q)

    def __matmul__(self, other):
        if isinstance(other, GenPermMatrix):
            return self.mul(other)
        if isinstance(other, FqMatrix):
            if self.q != other.q:
                raise errors.ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")
            if self.n != other.rows:
                raise errors.DimensionMismatch(
                    f"cannot multiply {self.n}x{self.n} by {other.shape}"
                )
            out = (self.diag.astype(other.a.dtype)[:, None] * other.a[self.perm]) % self.q
            return FqMatrix._wrap(out, self.q)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, FqMatrix):
            if self.q != other.q:
                raise errors.ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")
            if other.cols != self.n:
                raise errors.DimensionMismatch(
                    f"cannot multiply {other.shape} by {self.n}x{self.n}"
                )
            out = np.empty_like(other.a)
            out[:, self.perm] = other.a * self.diag.astype(other.a.dtype)[None, :]
            return FqMatrix._wrap(out % self.q, self.q)
        return NotImplemented

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = GenPermMatrix.identity(self.n, self.q)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            e >>= 1
            if e:
                base = base.mul(base)
        return result

    def inverse(self):
        perm = np.empty_like(self.perm)
        diag = np.empty_like(self.diag)
        for i in range(self.n):
            perm[self.perm[i]] = i
            diag[self.perm[i]] = inv_mod(int(self.diag[i]), self.q)
        return GenPermMatrix(perm, diag, self.q)

    def is_identity(self):
        return bool((self.perm == np.arange(self.n)).all() and (self.diag == 1).all())

    def order(self, cap):
        """Multiplicative order, by direct powering; raises if above cap."""
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc.mul(self)
        raise errors.QsiError(f"order exceeds cap {cap}")

    def to_dense(self):
        a = np.zeros((self.n, self.n), dtype=_dtype_for(self.q))
        a[np.arange(self.n), self.perm] = self.diag.astype(a.dtype)
        return FqMatrix._wrap(a, self.q)

    @classmethod
    def from_dense(cls, m):
        """Validate and convert a dense generalized permutation matrix."""
        if m.rows != m.cols:
            raise errors.DimensionMismatch("generalized permutation must be square")
        perm = np.empty(m.rows, dtype=np.int64)
        diag = np.empty(m.rows, dtype=np.int64)
        for i in range(m.rows):
            nz = np.nonzero(m.a[i])[0]
            if len(nz) != 1:
                raise errors.SingularMatrix("row does not have exactly one nonzero")
            perm[i] = nz[0]
            diag[i] = m.a[i, nz[0]]
        return cls(perm, diag, m.q)


def matrix_order(m, cap):
    """Multiplicative order of a dense square matrix by direct powering."""
    ident = FqMatrix.identity(m.rows, m.q)
    acc = m
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = acc @ m
    raise errors.QsiError(f"order exceeds cap {cap}")
