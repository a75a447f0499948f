"""Veronese/scroll embedding matrices, the induced action of GL on monomials,
and high-order variety automorphisms.

The central objects:

* glemb(n, m, A): the matrix of the action X_i -> sum_j A[i,j] X_j on the
  degree-m monomial basis (descending lex). It is a multiplicative group
  homomorphism GL(n+1) -> GL(C(n+m, m)) whose image is exactly the stabilizer
  of the standard degree-m Veronese variety.

* sigma_compose(frame, B): the (N+1) x (m+1)^2 matrix
  frame @ glemb(3, m, B) @ expansion_matrix(m), realizing the embedding of
  P^1 x P^1 that first maps to the scroll in P^3, applies the projectivity B,
  then the frame's degree-m Veronese embedding. Its image is a quadric
  surface inside the frame's Veronese 3-fold.

* Automorphism pairs: companion matrices of primitive degree-4 polynomials
  have multiplicative order exactly q^4 - 1; pushed through glemb and
  conjugated by the frame they become variety automorphisms. The permutation
  variant uses generalized permutation matrices instead (order at most
  4(q-1)) so powering is O(n).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import errors
from .ff import inv_mod, is_prime, validate_modulus
from .forms import (
    bidegree_monomial_vector,
    expansion_matrix,
    hom_basis_size,
    monomial_exponents,
    monomial_index,
    veronese_vector,
)
from .linalg import FqMatrix, GenPermMatrix

# ---------------------------------------------------------------------------
# integer factorization (needed for multiplicative-order certification)
# ---------------------------------------------------------------------------


def _pollard_rho(n, seed_c):
    x, y, c, d = 2, 2, seed_c, 1
    while d == 1:
        x = (x * x + c) % n
        y = (y * y + c) % n
        y = (y * y + c) % n
        d = _gcd(abs(x - y), n)
    return d if d != n else None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def factorize(n):
    """Prime factorization {p: e} by trial division then Pollard rho."""
    if n <= 0:
        raise ValueError("factorize needs a positive integer")
    factors = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 49
    while d * d <= n and d < 100_000:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = None
        c = 1
        while d is None:
            d = _pollard_rho(m, c)
            c += 1
        stack.extend([d, m // d])
    return factors


# ---------------------------------------------------------------------------
# the induced action on degree-m monomials
# ---------------------------------------------------------------------------


def _poly_mul(a, b, q):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % q
    return {e: c for e, c in out.items() if c}


def glemb(n, m, mat):
    """Matrix of the substitution action of `mat` on degree-m monomials in
    n+1 variables; raises SingularMatrix for non-invertible input. Output is
    C(n+m, m) square, and glemb(n, m, A @ B) = glemb(n, m, A) @ glemb(n, m, B)."""
    if isinstance(mat, GenPermMatrix):
        return glemb_genperm(m, mat).to_dense()
    q = mat.q
    if mat.rows != mat.cols or mat.rows != n + 1:
        raise errors.DimensionMismatch(f"glemb({n},{m}) needs a {n + 1}x{n + 1} matrix")
    if mat.rank() != n + 1:
        raise errors.SingularMatrix("glemb input must be invertible")
    exps = monomial_exponents(n + 1, m)
    index = monomial_index(n + 1, m)
    size = len(exps)
    one = tuple([0] * (n + 1))

    # linear forms L_i as sparse polys, then all powers L_i^k for k <= m
    unit = lambda i: tuple(1 if t == i else 0 for t in range(n + 1))
    linears = [
        {unit(j): int(mat.a[i, j]) for j in range(n + 1) if int(mat.a[i, j])}
        for i in range(n + 1)
    ]
    powers = []
    for lin in linears:
        ps = [{one: 1}]
        for _ in range(m):
            ps.append(_poly_mul(ps[-1], lin, q))
        powers.append(ps)

    out = np.zeros((size, size), dtype=mat.a.dtype)
    for r, e in enumerate(exps):
        poly = {one: 1}
        for i, k in enumerate(e):
            if k:
                poly = _poly_mul(poly, powers[i][k], q)
        for mono, c in poly.items():
            out[r, index[mono]] = c
    return FqMatrix._wrap(out, q)


def glemb_genperm(m, gp):
    """glemb(3, m, gp) for a generalized permutation input, kept sparse."""
    if gp.n != 4:
        raise errors.DimensionMismatch("sparse action is defined on GL(4)")
    q = gp.q
    exps = monomial_exponents(4, m)
    index = monomial_index(4, m)
    perm = np.empty(len(exps), dtype=np.int64)
    diag = np.empty(len(exps), dtype=np.int64)
    for r, e in enumerate(exps):
        target = [0, 0, 0, 0]
        scale = 1
        for i, k in enumerate(e):
            if k:
                target[int(gp.perm[i])] += k
                scale = scale * pow(int(gp.diag[i]), k, q) % q
        perm[r] = index[tuple(target)]
        diag[r] = scale
    return GenPermMatrix(perm, diag, q)


# ---------------------------------------------------------------------------
# embeddings and frames
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaEmbedding:
    """(N+1) x (m+1)^2 matrix realizing an embedding of P^1 x P^1 whose image
    is a quadric surface inside a Veronese 3-fold; always full column rank."""

    matrix: FqMatrix
    m: int
    q: int

    def __post_init__(self):
        expected = (hom_basis_size(3, self.m), (self.m + 1) ** 2)
        if self.matrix.shape != expected:
            raise errors.DimensionMismatch(
                f"embedding matrix must be {expected}, got {self.matrix.shape}"
            )
        if self.matrix.rank() != (self.m + 1) ** 2:
            raise errors.SingularMatrix("embedding matrix must have full column rank")

    def evaluate(self, point_x, point_y):
        """Image point of ((x0:x1), (y0:y1)) as a length-(N+1) int list."""
        w = bidegree_monomial_vector(point_x, point_y, self.m, self.q)
        col = FqMatrix(np.array(w).reshape(-1, 1), self.q)
        return [int(v) for v in (self.matrix @ col).a.reshape(-1)]


@dataclass(frozen=True)
class VeroneseFrame:
    """Invertible change of coordinates fixing which copy of the Veronese
    3-fold everything lives in; `matrix` is dense or generalized-permutation."""

    matrix: object
    m: int
    q: int

    def __post_init__(self):
        n = hom_basis_size(3, self.m)
        if self.matrix.rows != n or self.matrix.cols != n:
            raise errors.DimensionMismatch(f"frame must be {n}x{n}")
        if isinstance(self.matrix, FqMatrix) and self.matrix.rank() != n:
            raise errors.SingularMatrix("frame must be invertible")

    @classmethod
    def random(cls, m, q, stream, generalized_permutation=False):
        n = hom_basis_size(3, m)
        if generalized_permutation:
            mat = GenPermMatrix.random(n, q, stream)
        else:
            mat = FqMatrix.random_invertible(n, q, stream)
        return cls(mat, m, q)

    @classmethod
    def standard(cls, m, q):
        return cls(FqMatrix.identity(hom_basis_size(3, m), q), m, q)


def sigma_compose(frame, b):
    """Embedding matrix frame @ glemb(3, m, b) @ expansion_matrix(m)."""
    m, q = frame.m, frame.q
    e = expansion_matrix(m, q)
    if isinstance(frame.matrix, GenPermMatrix) and isinstance(b, GenPermMatrix):
        mat = frame.matrix.mul(glemb_genperm(m, b)) @ e
    else:
        mat = frame.matrix @ glemb(3, m, b) @ e
    return SigmaEmbedding(mat, m, q)


# ---------------------------------------------------------------------------
# membership testing (used by invariants and the analysis harness)
# ---------------------------------------------------------------------------


def veronese_membership(vec, m, q, frame=None):
    """True iff vec is (projectively) a point of the degree-m Veronese 3-fold,
    in the frame's coordinates when one is given."""
    col = FqMatrix(np.array([int(v) % q for v in vec]).reshape(-1, 1), q)
    if frame is not None:
        inv = (
            frame.matrix.inverse()
            if isinstance(frame.matrix, FqMatrix)
            else frame.matrix.inverse().to_dense()
        )
        col = inv @ col
    z = [int(v) for v in col.a.reshape(-1)]
    index = monomial_index(4, m)
    pivot = None
    for i0 in range(4):
        e = tuple(m if t == i0 else 0 for t in range(4))
        if z[index[e]]:
            pivot = i0
            break
    if pivot is None:
        return False
    y = []
    for j in range(4):
        e = tuple(
            (m - 1 if t == pivot else 0) + (1 if t == j else 0) for t in range(4)
        )
        y.append(z[index[e]])
    w = veronese_vector(y, m, q)
    # proportionality check against z
    ratio = None
    for a, b in zip(z, w):
        if b == 0:
            if a != 0:
                return False
            continue
        cand = a * inv_mod(b, q) % q
        if ratio is None:
            ratio = cand
        elif ratio != cand:
            return False
    return ratio is not None and ratio != 0


# ---------------------------------------------------------------------------
# automorphism construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutomorphismKey:
    """Pair of variety automorphisms (dense or sparse) plus the GL(4)
    generators they came from and the order bookkeeping."""

    aut1: object
    aut2: object
    gen1: FqMatrix
    gen2: FqMatrix
    claimed_order: int
    version: int


def _poly_mul_mod(a, b, f, q):
    """Product of coefficient lists (ascending) reduced mod monic f."""
    n = len(f) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % q
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for t in range(n):
                out[k - n + t] = (out[k - n + t] - c * f[t]) % q
    return out[:n] + [0] * (n - len(out[:n]))


def _x_pow_mod(e, f, q):
    """x^e mod monic f, square-and-multiply on coefficient lists."""
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    base = ([0, 1] + [0] * (n - 2))[:n]
    if n == 1:
        base = [(-f[0]) % q]
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, f, q)
        e >>= 1
        if e:
            base = _poly_mul_mod(base, base, f, q)
    return result


def _is_one(poly):
    return poly[0] == 1 and not any(poly[1:])


def _trim(p):
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def _poly_gcd_deg(a, b, q):
    """Degree of gcd of two coefficient lists (ascending); -1 for gcd 0."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        db = len(b) - 1
        inv_lead = inv_mod(b[-1], q)
        r = list(a)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                t = c * inv_lead % q
                for i in range(db + 1):
                    r[k - db + i] = (r[k - db + i] - t * b[i]) % q
        a, b = b, _trim(r[:db])
    return len(a) - 1 if a else -1


def _is_irreducible_deg4(f, q):
    """Monic degree-4 f irreducible over F_q: x^(q^4) = x mod f and
    gcd(x^(q^k) - x, f) trivial for k in {1, 2}."""
    for k in (1, 2):
        t = _x_pow_mod(q**k, f, q)
        t[1] = (t[1] - 1) % q
        if _poly_gcd_deg(t, f, q) > 0:
            return False
    t = _x_pow_mod(q**4, f, q)
    return t[1] == 1 and t[0] == 0 and not any(t[2:])


def _has_full_order(f, q, order_factors):
    n = q**4 - 1
    for p in order_factors:
        if _is_one(_x_pow_mod(n // p, f, q)):
            return False
    return True


def find_primitive_quartic(q, stream, max_tries=4096):
    """Monic degree-4 polynomial over F_q whose companion matrix has
    multiplicative order exactly q^4 - 1 (certified against the prime
    factorization of q^4 - 1)."""
    order_factors = sorted(factorize(q**4 - 1))
    for _ in range(max_tries):
        coeffs = [int(c) for c in stream.integers(q, (4,))]
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if _is_irreducible_deg4(f, q) and _has_full_order(f, q, order_factors):
            return f
    raise errors.RandomnessExhausted(
        f"no primitive quartic over F_{q} after {max_tries} tries"
    )


def companion_matrix(f, q):
    """Companion matrix (acting on coordinates) of monic f, ascending coeffs."""
    n = len(f) - 1
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i + 1, i] = 1
    for i in range(n):
        a[i, n - 1] = (-f[i]) % q
    return FqMatrix(a, q)


def gen_automorphism_pair(frame, stream):
    """Two automorphisms of the frame's Veronese 3-fold of order q^4 - 1,
    built from companion matrices of primitive quartics conjugated through
    the induced monomial action."""
    q, m = frame.q, frame.m
    frame_mat = (
        frame.matrix.to_dense()
        if isinstance(frame.matrix, GenPermMatrix)
        else frame.matrix
    )
    frame_inv = frame_mat.inverse()
    auts, gens = [], []
    for label in ("aut1", "aut2"):
        f = find_primitive_quartic(q, stream.child(label))
        g = companion_matrix(f, q)
        auts.append(frame_mat @ glemb(3, m, g) @ frame_inv)
        gens.append(g)
    return AutomorphismKey(
        aut1=auts[0],
        aut2=auts[1],
        gen1=gens[0],
        gen2=gens[1],
        claimed_order=q**4 - 1,
        version=1,
    )


def gen_permutation_variant(frame, stream):
    """Generalized-permutation automorphisms of the frame's variety; order is
    bounded by 4(q-1) but products and powers cost O(n)."""
    if not isinstance(frame.matrix, GenPermMatrix):
        raise errors.InvalidParameters(
            "permutation variant needs a generalized-permutation frame"
        )
    q, m = frame.q, frame.m
    frame_inv = frame.matrix.inverse()
    auts, gens = [], []
    for label in ("aut1", "aut2"):
        sub = stream.child(label)
        while True:
            g = GenPermMatrix.random(4, q, sub)
            if not g.is_identity():
                break
        auts.append(frame.matrix.mul(glemb_genperm(m, g)).mul(frame_inv))
        gens.append(g.to_dense())
    return AutomorphismKey(
        aut1=auts[0],
        aut2=auts[1],
        gen1=gens[0],
        gen2=gens[1],
        claimed_order=4 * (q - 1),
        version=2,
    )
