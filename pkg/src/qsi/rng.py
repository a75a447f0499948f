"""Deterministic, splittable random streams.

All randomness in the package flows through ``Stream``: a Philox4x64
counter-based generator whose 128-bit key is the leading half of
SHA-256("qsi-rng-v1|seed|label").
Identical (seed, label) pairs give identical streams on every platform and
numpy version, because only the raw Philox output is consumed; bounded
integers are produced by plain rejection sampling on 64-bit words, never by
numpy's Generator methods (whose streams are not version-stable).

Streams are split by deriving child labels ("root/keygen", "root/keygen/frame",
...), so concurrent consumers never share state.
"""

import hashlib

import numpy as np

_PREFIX = "qsi-rng-v1"
_WORD_BITS = 64
_WORD_MOD = 1 << _WORD_BITS


def _derive_key(seed, label):
    digest = hashlib.sha256(f"{_PREFIX}|{seed}|{label}".encode()).digest()
    return np.frombuffer(digest[:16], dtype="<u8").copy()


class Stream:
    """One deterministic stream of the family keyed by (seed, label)."""

    def __init__(self, seed, label="root"):
        self.seed = seed
        self.label = label
        self._bitgen = np.random.Philox(key=_derive_key(seed, label))
        self._buffer = np.empty(0, dtype=np.uint64)

    def __repr__(self):
        return f"Stream(seed={self.seed!r}, label={self.label!r})"

    def child(self, label):
        """Independent stream; derivation depends only on labels, not on how
        much of this stream has been consumed."""
        return Stream(self.seed, f"{self.label}/{label}")

    def words(self, n):
        """Next n raw 64-bit words as a uint64 array."""
        out = np.empty(n, dtype=np.uint64)
        have = len(self._buffer)
        if have:
            take = min(have, n)
            out[:take] = self._buffer[:take]
            self._buffer = self._buffer[take:]
        else:
            take = 0
        if take < n:
            out[take:] = self._bitgen.random_raw(n - take)
        return out

    def integers(self, bound, size=None):
        """Uniform integers in [0, bound) by rejection on raw words.

        Returns a python int when size is None, else an int64 ndarray.
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        scalar = size is None
        n = 1 if scalar else int(np.prod(size))
        if bound == 1:
            vals = np.zeros(n, dtype=np.uint64)
        elif bound > _WORD_MOD:
            raise ValueError("bound exceeds 64 bits")
        else:
            limit = (_WORD_MOD // bound) * bound
            vals = np.empty(n, dtype=np.uint64)
            filled = 0
            while filled < n:
                raw = self.words(max(n - filled, 8))
                good = raw[raw < limit]
                take = min(len(good), n - filled)
                vals[filled : filled + take] = good[:take] % bound
                filled += take
        if scalar:
            return int(vals[0])
        return vals.reshape(size).astype(np.int64)

    def integer_below(self, bound):
        """Uniform python int in [0, bound) for bounds of any size."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        bits = (bound - 1).bit_length()
        nwords = (bits + _WORD_BITS - 1) // _WORD_BITS
        mask = (1 << bits) - 1
        while True:
            ws = self.words(max(nwords, 1))
            val = 0
            for w in ws:
                val = (val << _WORD_BITS) | int(w)
            val &= mask
            if val < bound:
                return val

    def nonzero_integers(self, bound, size):
        """Uniform integers in [1, bound)."""
        if bound < 2:
            raise ValueError("bound must exceed 1")
        n = int(np.prod(size))
        vals = self.integers(bound - 1, (n,)) + 1
        return vals.reshape(size)

    def permutation(self, n):
        """Fisher-Yates shuffle of range(n) driven by this stream."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.integers(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return np.array(perm, dtype=np.int64)

    def choice_nonzero_vector(self, bound, length):
        """Vector in [0, bound)^length that is not identically zero."""
        while True:
            v = self.integers(bound, (length,))
            if v.any():
                return v
