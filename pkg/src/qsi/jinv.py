"""The isomorphism invariant of a smooth (2,2) curve on P^1 x P^1.

Writing the curve F = Y0^2 F0(X) + Y0 Y1 F1(X) + Y1^2 F2(X), the branch
points of the first projection are the roots of the binary quartic
G = F1^2 - 4 F0 F2. Its two classical invariants

    S = q0 q4 - q1 q3 / 4 + q2^2 / 12
    T = q0 q2 q4 / 6 + q1 q2 q3 / 48 - q2^3 / 216 - q0 q3^2 / 16 - q1^2 q4 / 16

are unchanged (up to weight scaling) by any invertible change of the X
coordinates, and j = S^3 / (S^3 - 27 T^2) is an absolute invariant of the
four branch points, hence of the genus-1 curve itself. The denominator
vanishes exactly when the quartic has a repeated root, i.e. when the curve
is singular; that case raises SingularCurve rather than returning a sentinel,
because the protocol's answer to a degenerate draw is to resample.

All divisions are by units thanks to the global gcd(q, 6) = 1 restriction.
"""

from dataclasses import dataclass

from . import errors
from .ff import FieldElement, inv_mod


@dataclass(frozen=True)
class BranchQuartic:
    """Binary quartic q0 X0^4 + q1 X0^3 X1 + q2 X0^2 X1^2 + q3 X0 X1^3 +
    q4 X1^4 over F_q; not identically zero unless the curve is degenerate."""

    coefficients: tuple
    q: int

    def invariants(self):
        """The degree-2 and degree-3 invariants (S, T)."""
        q = self.q
        q0, q1, q2, q3, q4 = (c % q for c in self.coefficients)
        s = (q0 * q4 - q1 * q3 * inv_mod(4, q) + q2 * q2 * inv_mod(12, q)) % q
        t = (
            q0 * q2 * q4 * inv_mod(6, q)
            + q1 * q2 * q3 * inv_mod(48, q)
            - q2**3 * inv_mod(216, q)
            - q0 * q3**2 * inv_mod(16, q)
            - q1**2 * q4 * inv_mod(16, q)
        ) % q
        return FieldElement(s, q), FieldElement(t, q)


def _check_22(form):
    if form.is_zero():
        raise errors.ZeroForm("the zero form defines no curve")
    if form.bidegree != (2, 2):
        raise errors.DimensionMismatch(
            f"expected a (2,2) form, got bidegree {form.bidegree}"
        )


def branch_quartic(form):
    """Quartic F1^2 - 4 F0 F2 of the first projection's branch locus.

    F_j is the coefficient of Y0^(2-j) Y1^j, a binary quadratic in X."""
    _check_22(form)
    q = form.q
    f = [[int(form.coeffs[i, j]) for i in range(3)] for j in range(3)]

    def mul3(a, b):
        out = [0] * 5
        for i, x in enumerate(a):
            for k, y in enumerate(b):
                out[i + k] = (out[i + k] + x * y) % q
        return out

    f1sq = mul3(f[1], f[1])
    f0f2 = mul3(f[0], f[2])
    coeffs = tuple((f1sq[k] - 4 * f0f2[k]) % q for k in range(5))
    return BranchQuartic(coeffs, q)


def j_invariant(form):
    """Shared-key invariant of a smooth (2,2) curve; raises SingularCurve
    exactly when S^3 - 27 T^2 = 0."""
    quartic = branch_quartic(form)
    s, t = quartic.invariants()
    q = form.q
    s3 = pow(s.value, 3, q)
    denom = (s3 - 27 * t.value * t.value) % q
    if denom == 0:
        raise errors.SingularCurve("discriminant combination S^3 - 27 T^2 vanishes")
    return FieldElement(s3 * inv_mod(denom, q), q)


def gl2_transport(form, g1, g2):
    """Substitute the X block by g1 and the Y block by g2 (both invertible
    2x2); the invariance oracle for j."""
    _check_22(form)
    q = form.q
    for g in (g1, g2):
        (a, b), (c, d) = g
        if (a * d - b * c) % q == 0:
            raise errors.SingularMatrix("block substitution must be invertible")
    return form.substitute(g1, g2)
