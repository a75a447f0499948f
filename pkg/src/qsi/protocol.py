"""The key exchange: user key construction, responder/initiator flows, the
generalized-permutation speed variant, and the trusted-third-party flows.

A user's key system lives inside a secretly re-coordinatized Veronese
3-fold. The public bundle carries two high-order automorphisms of that
3-fold, the matrix of a public quadric-surface embedding, and a hyperplane
through the image of the secret quadric-surface embedding. A responder
picks a secret exponent word, moves the public surface by the resulting
automorphism, publishes one hyperplane through the moved surface, and both
parties — each restricting the other's hyperplane to their own surface —
factor out a bidegree-(2,2) curve: the same intersection curve seen from
two parametrizations. Its isomorphism invariant is the shared key.

Version 2 swaps every dense object for generalized permutation matrices so
powering is linear-time; the price is automorphism order at most 4(q-1)
instead of q^4 - 1.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import errors
from .embeddings import (
    AutomorphismKey,
    SigmaEmbedding,
    VeroneseFrame,
    gen_automorphism_pair,
    gen_permutation_variant,
    sigma_compose,
)
from .factor import extract_22
from .ff import FieldElement, validate_modulus
from .forms import hom_basis_size, pullback
from .jinv import j_invariant
from .linalg import FqMatrix, GenPermMatrix, random_cokernel_vector
from .rng import Stream

_MAX_RESPOND_RETRIES = 64
_MAX_KEYGEN_RETRIES = 32


def _validate_parameters(q, m):
    q = validate_modulus(q)
    if m < 3:
        raise errors.InvalidParameters(f"degree m must be at least 3, got {m}")
    if m == 4:
        raise errors.InvalidParameters(
            "m = 4 is rejected: shared and residual components both have "
            "bidegree (2,2), so the key is not well defined"
        )
    return q, m


def _as_stream(seed_or_stream, label):
    if isinstance(seed_or_stream, Stream):
        return seed_or_stream
    return Stream(seed_or_stream, label)


@dataclass(frozen=True)
class PublicBundle:
    """Everything the responder needs; aut1/aut2 are dense for version 1 and
    generalized-permutation for version 2."""

    q: int
    m: int
    version: int
    aut1: object
    aut2: object
    embedding: FqMatrix
    hyperplane: FqMatrix

    def validate(self):
        q, m = _validate_parameters(self.q, self.m)
        n = hom_basis_size(3, m)
        if self.version not in (1, 2):
            raise errors.InvalidParameters(f"unknown version {self.version}")
        for aut in (self.aut1, self.aut2):
            if aut.rows != n or aut.cols != n:
                raise errors.DimensionMismatch(f"automorphism must be {n}x{n}")
            if isinstance(aut, FqMatrix) and aut.rank() != n:
                raise errors.SingularMatrix("automorphism must be invertible")
            if self.version == 2 and not isinstance(aut, GenPermMatrix):
                raise errors.InvalidParameters(
                    "version 2 automorphisms must be generalized permutations"
                )
        if self.embedding.shape != (n, (m + 1) ** 2):
            raise errors.DimensionMismatch(
                f"public embedding must be {n}x{(m + 1) ** 2}"
            )
        if self.embedding.rank() != (m + 1) ** 2:
            raise errors.SingularMatrix("public embedding must have full column rank")
        if self.hyperplane.shape != (1, n):
            raise errors.DimensionMismatch(f"hyperplane must be 1x{n}")
        if self.hyperplane.is_zero():
            raise errors.InvalidParameters("hyperplane must be nonzero")
        return self


@dataclass(frozen=True)
class SecretKey:
    """The secret embedding matrix; the frame is retained for diagnostics
    only and never serialized into public material."""

    q: int
    m: int
    version: int
    embedding: FqMatrix
    frame: VeroneseFrame


@dataclass(frozen=True)
class ResponderMessage:
    hyperplane: FqMatrix


@dataclass(frozen=True)
class SharedKey:
    j: FieldElement


def keygen_user(q, m, version=1, seed=0):
    """Build a user key system: secret frame, two public variety
    automorphisms, public and secret quadric-surface embeddings with
    distinct column spans, and a public hyperplane through the secret
    surface."""
    q, m = _validate_parameters(q, m)
    if version not in (1, 2):
        raise errors.InvalidParameters(f"unknown version {version}")
    stream = _as_stream(seed, "keygen")
    genperm = version == 2
    frame = VeroneseFrame.random(m, q, stream.child("frame"), generalized_permutation=genperm)
    if version == 1:
        autkey = gen_automorphism_pair(frame, stream.child("automorphisms"))
    else:
        autkey = gen_permutation_variant(frame, stream.child("automorphisms"))

    # Surface maps stay dense even in version 2: a generalized-permutation
    # surface map would make both parties' quadrics torus-invariant and their
    # intersection a union of lines, never a genus-1 curve.
    def surface(label):
        return sigma_compose(
            frame, FqMatrix.random_invertible(4, q, stream.child(label))
        )

    secret_sigma = surface("secret-surface")
    for attempt in range(_MAX_KEYGEN_RETRIES):
        public_sigma = surface(f"public-surface-{attempt}")
        stacked = FqMatrix(
            np.concatenate([secret_sigma.matrix.a, public_sigma.matrix.a], axis=1), q
        )
        if stacked.rank() > (m + 1) ** 2:
            break
    else:
        raise errors.RetriesExhausted("public surface always matched the secret one")
    hyperplane = random_cokernel_vector(secret_sigma.matrix, stream.child("hyperplane"))
    if not (hyperplane @ secret_sigma.matrix).is_zero():
        raise errors.QsiError("internal: hyperplane does not contain the secret surface")
    public = PublicBundle(
        q=q,
        m=m,
        version=version,
        aut1=autkey.aut1,
        aut2=autkey.aut2,
        embedding=public_sigma.matrix,
        hyperplane=hyperplane,
    ).validate()
    secret = SecretKey(q=q, m=m, version=version, embedding=secret_sigma.matrix, frame=frame)
    return public, secret


def exponent_bound(q, version):
    """Upper bound (exclusive) for responder exponents."""
    return q**4 if version == 1 else 4 * (q - 1)


def _word_matrix(pub, exps):
    e1, e2, e3, e4 = exps
    word = (pub.aut1**e1) @ (pub.aut2**e2) @ (pub.aut1**e3) @ (pub.aut2**e4)
    return word @ pub.embedding


def respond(pub, seed=0, exponents=None):
    """Responder flow: exponent word, moved surface, one hyperplane through
    it, and the shared invariant. Degenerate draws (zero pullback, missing or
    ambiguous component, singular curve) are resampled with fresh exponents;
    an explicit `exponents` word disables resampling and surfaces errors."""
    pub.validate()
    stream = _as_stream(seed, "respond")
    q, m = pub.q, pub.m
    bound = exponent_bound(q, pub.version)
    attempts = _MAX_RESPOND_RETRIES if exponents is None else 1
    last_error = None
    for attempt in range(attempts):
        if exponents is None:
            exps = tuple(stream.child(f"exponents-{attempt}").integer_below(bound) for _ in range(4))
        else:
            exps = tuple(int(e) for e in exponents)
        moved = _word_matrix(pub, exps)
        try:
            sigma = SigmaEmbedding(moved, m, q)
            form = pullback(pub.hyperplane, sigma)
            if form.is_zero():
                raise errors.DegenerateChoice("hyperplane annihilates the moved surface")
            component = extract_22(form)[0]
            j = j_invariant(component)
            hyperplane = random_cokernel_vector(moved, stream.child(f"hyperplane-{attempt}"))
            return ResponderMessage(hyperplane), SharedKey(j)
        except (
            errors.DegenerateChoice,
            errors.NoComponent,
            errors.AmbiguousComponent,
            errors.SingularCurve,
        ) as exc:
            if exponents is not None:
                raise
            last_error = exc
    raise errors.RetriesExhausted(
        f"no valid key after {_MAX_RESPOND_RETRIES} exponent words"
    ) from last_error


def accept(secret, message):
    """Initiator flow: restrict the responder's hyperplane to the secret
    surface and read off the invariant. All degeneracies surface to the
    caller — the initiator cannot resample the responder's message."""
    hyperplane = message.hyperplane
    if hyperplane.is_zero():
        raise errors.InvalidParameters("responder hyperplane must be nonzero")
    sigma = SigmaEmbedding(secret.embedding, secret.m, secret.q)
    form = pullback(hyperplane, sigma)
    if form.is_zero():
        raise errors.NoComponent("responder hyperplane annihilates the secret surface")
    component = extract_22(form)[0]
    return SharedKey(j_invariant(component))


# ---------------------------------------------------------------------------
# trusted-third-party flows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TTPParams:
    """Trent's public data: one base surface embedding into his (secret)
    Veronese 3-fold plus two order-(q^4 - 1) automorphisms of it."""

    q: int
    m: int
    base_embedding: FqMatrix
    aut1: FqMatrix
    aut2: FqMatrix

    def validate(self):
        q, m = _validate_parameters(self.q, self.m)
        n = hom_basis_size(3, m)
        for aut in (self.aut1, self.aut2):
            if aut.shape != (n, n):
                raise errors.DimensionMismatch(f"automorphism must be {n}x{n}")
            if aut.rank() != n:
                raise errors.SingularMatrix("automorphism must be invertible")
        if self.base_embedding.shape != (n, (m + 1) ** 2):
            raise errors.DimensionMismatch(
                f"base embedding must be {n}x{(m + 1) ** 2}"
            )
        if self.base_embedding.rank() != (m + 1) ** 2:
            raise errors.SingularMatrix("base embedding must have full column rank")
        return self


@dataclass(frozen=True)
class TTPUser:
    """One registered user: secret exponent word, derived surface embedding,
    and the public hyperplane (the user's whole public key)."""

    q: int
    m: int
    exponents: tuple
    embedding: FqMatrix
    hyperplane: FqMatrix


def ttp_setup(q, m, seed=0):
    """Trent's setup; the frame (his Veronese variety) is discarded after
    building the published data, matching what he must keep secret."""
    q, m = _validate_parameters(q, m)
    stream = _as_stream(seed, "ttp-setup")
    frame = VeroneseFrame.random(m, q, stream.child("frame"))
    autkey = gen_automorphism_pair(frame, stream.child("automorphisms"))
    base = sigma_compose(frame, FqMatrix.random_invertible(4, q, stream.child("surface")))
    return TTPParams(
        q=q, m=m, base_embedding=base.matrix, aut1=autkey.aut1, aut2=autkey.aut2
    ).validate()


def ttp_register(params, seed=0):
    """Derive a user surface by a secret exponent word in Trent's
    automorphisms and publish one hyperplane through it."""
    params.validate()
    stream = _as_stream(seed, "ttp-register")
    q = params.q
    bound = q**4 - 1
    exps = tuple(1 + stream.child(f"exponent-{i}").integer_below(bound) for i in range(4))
    moved = (
        (params.aut1 ** exps[0])
        @ (params.aut2 ** exps[1])
        @ (params.aut1 ** exps[2])
        @ (params.aut2 ** exps[3])
    ) @ params.base_embedding
    hyperplane = random_cokernel_vector(moved, stream.child("hyperplane"))
    return TTPUser(
        q=q, m=params.m, exponents=exps, embedding=moved, hyperplane=hyperplane
    )


def ttp_shared(user, peer_hyperplane):
    """Shared invariant between `user` and the peer who published
    `peer_hyperplane`; symmetric in the two users."""
    if isinstance(peer_hyperplane, TTPUser):
        peer_hyperplane = peer_hyperplane.hyperplane
    sigma = SigmaEmbedding(user.embedding, user.m, user.q)
    form = pullback(peer_hyperplane, sigma)
    if form.is_zero():
        raise errors.NoComponent("peer hyperplane annihilates the user surface")
    component = extract_22(form)[0]
    return SharedKey(j_invariant(component))


# ---------------------------------------------------------------------------
# key-size arithmetic
# ---------------------------------------------------------------------------


def hyperplane_key_bits(m, modulus_bits, sparse=True):
    """Public-key size of a TTP user's hyperplane. The sparse encoding pins
    all but (m+1)^2 + 1 coefficients to zero and one coefficient to one."""
    if sparse:
        return modulus_bits * (m + 1) ** 2
    return modulus_bits * comb(m + 3, 3)


def public_matrix_bits(m, modulus_bits):
    """Size of the dominant public-bundle item, the embedding matrix."""
    return modulus_bits * (m + 1) ** 2 * comb(m + 3, 3)
