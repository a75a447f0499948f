"""Desk-scale cryptanalysis tooling: recover the quadric equations of the
hidden Veronese 3-fold from sampled points, and run the exponent-word
brute-force search at tiny field sizes.

The quadric system is the first step of the decomposition attack: the
3-fold is cut out by independent_quadric_count(m) linearly independent
quadrics, found by plain linear algebra on enough sampled points. The
brute-force search reflects the observation that the quadric surfaces
inside P^3 form a 9-dimensional family, so hitting the hyperplane-certified
image takes on the order of q^9 random exponent words, not q^16.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import errors
from .embeddings import SigmaEmbedding, veronese_vector
from .forms import bidegree_monomial_vector, hom_basis_size
from .linalg import FqMatrix, GenPermMatrix, _matmul, _rref
from .rng import Stream


def degree_report(m):
    """(degree of the Veronese 3-fold, degree of an embedded (2,2) curve)."""
    if m < 1:
        raise errors.InvalidParameters("degree report needs m >= 1")
    return m**3, 4 * m


def quadric_space_dimension(m):
    """Dimension of the space of all quadrics on the ambient P^N."""
    n = hom_basis_size(3, m)
    return comb(n + 1, 2)


def independent_quadric_count(m):
    """Number of linearly independent quadrics through the degree-m Veronese
    3-fold: h0(O(2)) on the ambient space minus h0(O(2m)) on P^3."""
    n = hom_basis_size(3, m)
    return (n + 1) * n // 2 - comb(2 * m + 3, 3)


def surface_quadric_count(m):
    """Same count for the embedded quadric surface alone: quadrics restrict
    onto the full space of (2m, 2m) values on P^1 x P^1."""
    return quadric_space_dimension(m) - (2 * m + 1) ** 2


@dataclass(frozen=True)
class QuadricSystem:
    """Echelonized basis of quadrics (rows of symmetric-monomial coefficient
    vectors) vanishing on the sampled locus, plus what was sampled."""

    basis: FqMatrix
    expected_dimension: int
    sampled: str

    @property
    def dimension(self):
        return self.basis.rows


def _sym2_row(point, q):
    """Values of the degree-2 monomials x_i x_j (i <= j) at a point."""
    v = [int(x) % q for x in point]
    out = []
    for i in range(len(v)):
        for j in range(i, len(v)):
            out.append(v[i] * v[j] % q)
    return out


def _random_p1_pair(stream, q):
    while True:
        vals = stream.integers(q, (4,))
        if vals[:2].any() and vals[2:].any():
            return [int(v) for v in vals[:2]], [int(v) for v in vals[2:]]


def sample_variety_point(sigma, stream, frame=None, automorphisms=None, word_bound=8):
    """One point: on the full 3-fold when a frame or automorphisms are
    available, otherwise on the embedded quadric surface only."""
    q, m = sigma.q, sigma.m
    if frame is not None:
        while True:
            coords = [int(v) for v in stream.integers(q, (4,))]
            if any(coords):
                break
        col = FqMatrix(np.array(veronese_vector(coords, m, q)).reshape(-1, 1), q)
        return [int(v) for v in (frame.matrix @ col).a.reshape(-1)]
    px, py = _random_p1_pair(stream, q)
    point = sigma.evaluate(px, py)
    if automorphisms is not None:
        col = FqMatrix(np.array(point).reshape(-1, 1), q)
        for aut in automorphisms:
            e = stream.integer_below(word_bound)
            col = (aut**e) @ col
        point = [int(v) for v in col.a.reshape(-1)]
    return point


def quadric_system(sigma, seed=0, frame=None, automorphisms=None, margin=24):
    """Basis of the quadrics vanishing on the sampled variety.

    With a frame or automorphisms the sample covers the full 3-fold and the
    expected dimension is independent_quadric_count(m); with the bare
    embedding only the quadric surface is sampled and the expected dimension
    is surface_quadric_count(m). Raises RankDeficient if extra rounds of
    sampling never reach the expected dimension.
    """
    q, m = sigma.q, sigma.m
    stream = seed if isinstance(seed, Stream) else Stream(seed, "quadric-system")
    full_variety = frame is not None or automorphisms is not None
    expected = independent_quadric_count(m) if full_variety else surface_quadric_count(m)
    d = quadric_space_dimension(m)
    n_points = d - expected + margin
    rows = []
    for round_ in range(4):
        for _ in range(n_points):
            pt = sample_variety_point(
                sigma, stream, frame=frame, automorphisms=automorphisms
            )
            rows.append(_sym2_row(pt, q))
        mat = FqMatrix(np.array(rows, dtype=np.int64), q)
        basis = mat.T.left_nullspace()
        if basis.rows == expected:
            return QuadricSystem(
                basis=basis,
                expected_dimension=expected,
                sampled="variety" if full_variety else "surface",
            )
        if basis.rows < expected:
            raise errors.RankDeficient(
                f"found {basis.rows} quadrics, expected at least {expected}"
            )
        n_points = margin  # too few independent points: top up and retry
    raise errors.RankDeficient(
        f"sampling never reached dimension {expected} (stuck at {basis.rows})"
    )


def evaluate_quadric(coeff_row, point, q):
    """Value of a symmetric-monomial coefficient vector at a point."""
    acc = 0
    row = _sym2_row(point, q)
    for c, v in zip(coeff_row, row):
        acc += int(c) * v
    return acc % q


@dataclass(frozen=True)
class BruteForceResult:
    word: tuple
    trials: int
    found: bool


def _power_table(aut, q):
    """All distinct powers of an automorphism as a dense int64 tensor."""
    dense = aut.to_dense() if isinstance(aut, GenPermMatrix) else aut
    n = dense.rows
    ident = FqMatrix.identity(n, q)
    powers = [ident.a.astype(np.int64)]
    acc = dense
    while not (acc == ident):
        powers.append(acc.a.astype(np.int64))
        acc = acc @ dense
        if len(powers) > 4 * q**4:
            raise errors.QsiError("automorphism order out of range")
    return np.stack(powers)


def brute_force_search(target, hyperplane, budget, seed=0):
    """Random exponent-word search for a surface whose image the hyperplane
    certifies: tests hyperplane @ (aut1^a aut2^b aut1^c aut2^d @ base) = 0.

    `target` is a PublicBundle or TTPParams; the last exponent is swept
    exhaustively in vectorized blocks, the first three are drawn from the
    stream, and the trial count reflects every word tested. Returns a
    BruteForceResult; exhausting the budget without a hit is a valid outcome.
    """
    aut1 = getattr(target, "aut1")
    aut2 = getattr(target, "aut2")
    base = getattr(target, "base_embedding", None)
    if base is None:
        base = target.embedding
    q = target.q
    if q > 11:
        raise errors.InvalidParameters(
            "brute-force search is desk-scale tooling; use q <= 11"
        )
    if isinstance(hyperplane, FqMatrix):
        h = hyperplane.a.reshape(-1).astype(np.int64)
    else:
        h = np.asarray(hyperplane, dtype=np.int64) % q
    stream = seed if isinstance(seed, Stream) else Stream(seed, "brute-force")

    t1 = _power_table(aut1, q)
    t2 = _power_table(aut2, q)
    ord1, ord2 = len(t1), len(t2)
    base_a = base.a.astype(np.int64)
    # h @ aut1^a for every a, precomputed once
    left = (np.einsum("j,ajk->ak", h, t1) % q).astype(np.int64)

    trials = 0
    while trials < budget:
        a = stream.integer_below(ord1)
        b = stream.integer_below(ord2)
        c = stream.integer_below(ord1)
        u = left[a] @ t2[b] % q
        v = u @ t1[c] % q
        # sweep the final exponent in one vectorized block
        block = np.einsum("j,djk->dk", v, t2) % q
        tests = block @ base_a % q
        limit = min(ord2, budget - trials)
        hits = np.nonzero(~tests[:limit].any(axis=1))[0]
        if len(hits):
            d = int(hits[0])
            return BruteForceResult(word=(a, b, c, d), trials=trials + d + 1, found=True)
        trials += limit
    return BruteForceResult(word=(), trials=budget, found=False)


def verify_word(target, hyperplane, word):
    """Check that the word's moved surface lies inside the hyperplane."""
    base = getattr(target, "base_embedding", None)
    if base is None:
        base = target.embedding
    a, b, c, d = word
    moved = (
        (target.aut1**a) @ (target.aut2**b) @ (target.aut1**c) @ (target.aut2**d)
    ) @ base
    h = hyperplane if isinstance(hyperplane, FqMatrix) else FqMatrix.row_vector(hyperplane, target.q)
    return (h @ moved).is_zero()


def make_planted_instance(q, m, seed=0):
    """A TTP system plus one registered user: the search target with a known
    planted exponent word."""
    from .protocol import ttp_register, ttp_setup

    params = ttp_setup(q, m, seed=Stream(seed, "planted/setup"))
    user = ttp_register(params, seed=Stream(seed, "planted/user"))
    return params, user
