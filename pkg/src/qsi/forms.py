"""Monomial indexing and (bi)homogeneous form arithmetic.

Conventions, fixed once and validated by the bundled worked example:

* Degree-m monomials in k variables are ordered lexicographically by
  exponent vector, descending, so the pure power of the first variable
  comes first: for k=4, m=1 the order is Z0, Z1, Z2, Z3.

* A bidegree-(d1, d2) form on P^1 x P^1 stores its coefficients in a
  (d1+1) x (d2+1) grid: entry (i, j) multiplies
  X0^(d1-i) X1^i * Y0^(d2-j) Y1^j. Flattened row-major this is the
  lexicographic order, beginning with X0^d1 Y0^d2 and ending with
  X1^d1 Y1^d2 -- the same order the embedding's monomial vector uses.

* The expansion matrix realizes the substitution Z_ab = X_a * Y_b on
  degree-m monomials: it is the matrix of the composition of the standard
  scroll embedding of P^1 x P^1 into P^3 with the standard degree-m
  Veronese embedding of P^3.
"""

from functools import lru_cache
from math import comb

import numpy as np

from . import errors
from .linalg import FqMatrix, _dtype_for
from .ff import FieldElement, validate_modulus


@lru_cache(maxsize=None)
def monomial_exponents(n_vars, degree):
    """All exponent vectors of total degree `degree` in `n_vars` variables,
    in descending lexicographic order. Length C(degree + n_vars - 1, degree)."""

    def gen(prefix, remaining, slots):
        if slots == 1:
            yield prefix + (remaining,)
            return
        for e in range(remaining, -1, -1):
            yield from gen(prefix + (e,), remaining - e, slots - 1)

    exps = tuple(gen((), degree, n_vars))
    assert len(exps) == comb(degree + n_vars - 1, n_vars - 1)
    return exps


@lru_cache(maxsize=None)
def monomial_index(n_vars, degree):
    """Inverse map: exponent vector -> position."""
    return {e: i for i, e in enumerate(monomial_exponents(n_vars, degree))}


def hom_basis_size(n, m):
    """Number of degree-m monomials in n+1 variables."""
    return comb(n + m, m)


@lru_cache(maxsize=None)
def _expansion_rows(m):
    """Row -> flattened (m+1)x(m+1) column for the Z_ab = X_a Y_b substitution."""
    cols = []
    for (a, b, c, d) in monomial_exponents(4, m):
        x1_exp = c + d
        y1_exp = b + d
        cols.append(x1_exp * (m + 1) + y1_exp)
    return tuple(cols)


def expansion_matrix(m, q):
    """C(m+3,3) x (m+1)^2 zero/one matrix over F_q taking the degree-m
    monomial vector on P^3 coordinates to its value on the scroll
    Z_ab = X_a Y_b; each row is one-hot."""
    if m < 1:
        raise errors.InvalidParameters("expansion matrix needs m >= 1")
    q = validate_modulus(q)
    cols = _expansion_rows(m)
    a = np.zeros((len(cols), (m + 1) ** 2), dtype=_dtype_for(q))
    a[np.arange(len(cols)), cols] = 1
    return FqMatrix._wrap(a, q)


def _normalize_point(coords, q, what):
    vals = [int(c) % q for c in coords]
    if not any(vals):
        raise errors.DegenerateChoice(f"{what} must have a nonzero coordinate")
    return vals


def bidegree_monomial_vector(point_x, point_y, m, q):
    """Values of the (m, m) monomials at (point_x, point_y), flattened in the
    grid order; length (m+1)^2."""
    x0, x1 = _normalize_point(point_x, q, "P^1 point")
    y0, y1 = _normalize_point(point_y, q, "P^1 point")
    xs = [pow(x0, m - i, q) * pow(x1, i, q) % q for i in range(m + 1)]
    ys = [pow(y0, m - j, q) * pow(y1, j, q) % q for j in range(m + 1)]
    return [xi * yj % q for xi in xs for yj in ys]


def veronese_vector(coords, m, q):
    """Values of the degree-m monomials on P^n at the given point, lex order."""
    vals = _normalize_point(coords, q, "projective point")
    out = []
    for e in monomial_exponents(len(vals), m):
        v = 1
        for c, k in zip(vals, e):
            if k:
                v = v * pow(c, k, q) % q
        out.append(v)
    return out


class BiForm:
    """Bihomogeneous form of bidegree (d1, d2) on P^1 x P^1 over F_q."""

    __slots__ = ("coeffs", "q")

    def __init__(self, coeffs, q, *, _reduced=False):
        q = validate_modulus(q)
        c = coeffs if _reduced else np.array(coeffs, dtype=_dtype_for(q)) % q
        if c.ndim != 2:
            raise errors.DimensionMismatch("biform coefficients must be a 2-d grid")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("BiForm is immutable")

    @classmethod
    def _wrap(cls, coeffs, q):
        f = cls.__new__(cls)
        object.__setattr__(f, "coeffs", coeffs)
        object.__setattr__(f, "q", q)
        return f

    @classmethod
    def zero(cls, d1, d2, q):
        q = validate_modulus(q)
        return cls._wrap(np.zeros((d1 + 1, d2 + 1), dtype=_dtype_for(q)), q)

    @classmethod
    def monomial(cls, d1, d2, i, j, q, coeff=1):
        f = np.zeros((d1 + 1, d2 + 1), dtype=_dtype_for(validate_modulus(q)))
        f[i, j] = coeff % q
        return cls._wrap(f, q)

    @classmethod
    def from_coeff_vector(cls, vec, m, q):
        vec = np.asarray(vec)
        if vec.size != (m + 1) ** 2:
            raise errors.DimensionMismatch(
                f"(m,m) form needs {(m + 1) ** 2} coefficients, got {vec.size}"
            )
        return cls(vec.reshape(m + 1, m + 1), q)

    @classmethod
    def one(cls, q):
        return cls.monomial(0, 0, 0, 0, q)

    # -- basics ---------------------------------------------------------------

    @property
    def bidegree(self):
        return (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1)

    def __repr__(self):
        return f"BiForm(bidegree={self.bidegree}, q={self.q})"

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return (
            self.q == other.q
            and self.coeffs.shape == other.coeffs.shape
            and bool((self.coeffs == other.coeffs).all())
        )

    def __hash__(self):
        return hash((self.q, self.coeffs.shape, tuple(int(x) for x in self.coeffs.flat)))

    def is_zero(self):
        return not self.coeffs.any()

    def _check_field(self, other):
        if self.q != other.q:
            raise errors.ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        self._check_field(other)
        if self.coeffs.shape != other.coeffs.shape:
            raise errors.DimensionMismatch("bidegrees differ")
        return BiForm._wrap((self.coeffs + other.coeffs) % self.q, self.q)

    def __sub__(self, other):
        self._check_field(other)
        if self.coeffs.shape != other.coeffs.shape:
            raise errors.DimensionMismatch("bidegrees differ")
        return BiForm._wrap((self.coeffs - other.coeffs) % self.q, self.q)

    def scale(self, c):
        return BiForm._wrap((self.coeffs * (int(c) % self.q)) % self.q, self.q)

    def __mul__(self, other):
        """Product; bidegrees add. Accumulates with python ints, so exact for
        every admissible modulus."""
        self._check_field(other)
        d1, d2 = self.bidegree
        e1, e2 = other.bidegree
        out = np.zeros((d1 + e1 + 1, d2 + e2 + 1), dtype=object)
        oc = other.coeffs
        for i in range(d1 + 1):
            row = self.coeffs[i]
            for j in range(d2 + 1):
                c = int(row[j])
                if c:
                    out[i : i + e1 + 1, j : j + e2 + 1] += c * oc
        out %= self.q
        return BiForm._wrap(out.astype(_dtype_for(self.q)), self.q)

    def pow(self, e):
        result = BiForm.one(self.q)
        for _ in range(e):
            result = result * self
        return result

    # -- evaluation and normalization -------------------------------------------

    def eval(self, point_x, point_y):
        """Value at affine representatives; meaningful up to scalar (used for
        zero tests and cross-checks)."""
        d1, d2 = self.bidegree
        x0, x1 = _normalize_point(point_x, self.q, "P^1 point")
        y0, y1 = _normalize_point(point_y, self.q, "P^1 point")
        acc = 0
        for i in range(d1 + 1):
            for j in range(d2 + 1):
                c = int(self.coeffs[i, j])
                if c:
                    acc += (
                        c
                        * pow(x0, d1 - i, self.q)
                        * pow(x1, i, self.q)
                        * pow(y0, d2 - j, self.q)
                        * pow(y1, j, self.q)
                    )
        return FieldElement(acc, self.q, _checked=True)

    def leading_coefficient(self):
        """First nonzero coefficient in grid (lex) order."""
        for v in self.coeffs.flat:
            if v:
                return int(v)
        raise errors.ZeroForm("zero form has no leading coefficient")

    def normalized(self):
        """Projective normalization: first nonzero coefficient becomes 1."""
        from .ff import inv_mod

        lead = self.leading_coefficient()
        return self.scale(inv_mod(lead, self.q))

    def proportional_scalar(self, other):
        """Return c with self = c * other, or None if not proportional."""
        if not isinstance(other, BiForm) or self.q != other.q:
            return None
        if self.coeffs.shape != other.coeffs.shape:
            return None
        if other.is_zero():
            return 1 if self.is_zero() else None
        from .ff import inv_mod

        c = None
        for a, b in zip(self.coeffs.flat, other.coeffs.flat):
            a, b = int(a), int(b)
            if b == 0:
                if a != 0:
                    return None
                continue
            cand = a * inv_mod(b, self.q) % self.q
            if c is None:
                c = cand
            elif c != cand:
                return None
        return c

    def swap_blocks(self):
        """Exchange the X and Y variable blocks."""
        return BiForm._wrap(self.coeffs.T.copy(), self.q)

    def substitute(self, g1, g2):
        """Coefficients of f(g1.(X0,X1); g2.(Y0,Y1)) where each 2x2 block
        matrix acts by X0 -> g[0][0] X0 + g[0][1] X1, X1 -> g[1][0] X0 +
        g[1][1] X1."""
        from .linalg import _matmul

        d1, d2 = self.bidegree
        m1 = _binary_substitution_matrix(g1, d1, self.q)
        m2 = _binary_substitution_matrix(g2, d2, self.q)
        out = _matmul(_matmul(m1.T, self.coeffs, self.q), m2, self.q)
        return BiForm._wrap(out, self.q)

    # -- serialization ------------------------------------------------------------

    def to_text(self):
        d1, d2 = self.bidegree
        lines = [f"{d1} {d2}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.coeffs)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, q):
        tokens = iter(text.split())
        try:
            d1 = int(next(tokens))
            d2 = int(next(tokens))
            flat = [int(next(tokens)) for _ in range((d1 + 1) * (d2 + 1))]
        except (StopIteration, ValueError) as exc:
            raise errors.KeyFileError("malformed biform text") from exc
        return cls(np.array(flat).reshape(d1 + 1, d2 + 1), q)


def _binary_substitution_matrix(g, d, q):
    """Row i holds the coefficients of (aX0+bX1)^(d-i) (cX0+dX1)^i in the
    degree-d binary monomial basis, for g = [[a, b], [c, d]]."""
    (a, b), (c, dd) = ((int(v) % q for v in row) for row in g)

    def powers(u0, u1):
        ps = [[1]]
        for _ in range(d):
            prev = ps[-1]
            nxt = [0] * (len(prev) + 1)
            for k, cv in enumerate(prev):
                nxt[k] = (nxt[k] + cv * u0) % q
                nxt[k + 1] = (nxt[k + 1] + cv * u1) % q
            ps.append(nxt)
        return ps

    pa = powers(a, b)
    pc = powers(c, dd)
    out = np.zeros((d + 1, d + 1), dtype=_dtype_for(q))
    for i in range(d + 1):
        row = [0] * (d + 1)
        for k1, c1 in enumerate(pa[d - i]):
            if c1:
                for k2, c2 in enumerate(pc[i]):
                    row[k1 + k2] = (row[k1 + k2] + c1 * c2) % q
        out[i] = row
    return out


def pullback(h, sigma):
    """Restrict the hyperplane h (1 x (N+1) row vector) along the embedding:
    the (m, m) form whose coefficient vector is h @ sigma.matrix. Returns the
    zero form when h annihilates the matrix."""
    mat = sigma.matrix
    if isinstance(h, FqMatrix):
        hrow = h
    else:
        hrow = FqMatrix.row_vector(h, mat.q)
    if hrow.rows != 1:
        raise errors.DimensionMismatch("hyperplane must be a single row vector")
    if hrow.cols != mat.rows:
        raise errors.DimensionMismatch(
            f"hyperplane length {hrow.cols} != matrix rows {mat.rows}"
        )
    if hrow.q != mat.q:
        raise errors.ModulusMismatch(f"moduli differ: {hrow.q} vs {mat.q}")
    vec = (hrow @ mat).a.reshape(-1)
    return BiForm.from_coeff_vector(vec, sigma.m, mat.q)
