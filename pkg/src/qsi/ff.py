"""Arithmetic in the prime field F_q for a runtime-chosen prime q.

The modulus must be prime, at least 5, coprime to 6 and below 2**62; the
coprimality restriction exists because the quartic-invariant formulas divide
by powers of 2 and 3. Elements are fully reduced at all times and two
elements interoperate only when their moduli match.
"""

from . import errors

MAX_MODULUS = 1 << 62

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers 64 bits)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def validate_modulus(q):
    """Check q is a usable field modulus; return it as a python int."""
    q = int(q)
    if q < 5 or q % 2 == 0 or q % 3 == 0:
        raise errors.InvalidModulus(f"modulus {q} must be >= 5 and coprime to 6")
    if q >= MAX_MODULUS:
        raise errors.InvalidModulus(f"modulus {q} must be below 2**62")
    if not is_prime(q):
        raise errors.InvalidModulus(f"modulus {q} is composite")
    return q


def inv_mod(a, q):
    """Inverse of a mod q; raises DivisionByZero when a == 0 mod q."""
    try:
        return pow(a, -1, q)
    except ValueError:
        raise errors.DivisionByZero(f"inverse of 0 mod {q}") from None


def _check_same_field(a, b):
    if not isinstance(b, FieldElement):
        raise TypeError(f"expected FieldElement, got {type(b).__name__}")
    if a.q != b.q:
        raise errors.ModulusMismatch(f"moduli differ: {a.q} vs {b.q}")


class FieldElement:
    """A residue in F_q. Immutable value semantics; arithmetic never leaves
    the field, exponentiation uses binary powering (builtin pow)."""

    __slots__ = ("value", "q")

    def __init__(self, value, q, *, _checked=False):
        if not _checked:
            q = validate_modulus(q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "value", int(value) % q)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _make(self, value):
        return FieldElement(value, self.q, _checked=True)

    def __repr__(self):
        return f"FieldElement({self.value}, q={self.q})"

    def __str__(self):
        return str(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.q == other.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def __bool__(self):
        return self.value != 0

    def __add__(self, other):
        _check_same_field(self, other)
        return self._make(self.value + other.value)

    def __sub__(self, other):
        _check_same_field(self, other)
        return self._make(self.value - other.value)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._make(self.value * (other % self.q))
        _check_same_field(self, other)
        return self._make(self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inverse(self):
        return self._make(inv_mod(self.value, self.q))

    def __truediv__(self, other):
        _check_same_field(self, other)
        return self * other.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        return self._make(pow(self.value, e, self.q))


def element(value, q):
    """Convenience constructor with modulus validation."""
    return FieldElement(value, q)
