"""Polynomial factorization over F_q: univariate (squarefree decomposition,
distinct-degree, equal-degree splitting) and bihomogeneous forms on
P^1 x P^1.

Bihomogeneous strategy: strip the monomial content supported on the four
coordinates, dehomogenize both blocks (X1 = 1, Y1 = 1), split off repeated
and inseparable parts with derivative gcds, then factor each squarefree
separable piece by specializing y, lifting the univariate factorization
y-adically to full precision, and recombining lifted factors by exhaustive
subset search (fine for the degrees this protocol uses). Every factorization
is certified by trial multiplication before it is returned, so correctness
does not depend on the lifting strategy.

Univariate polynomials are coefficient lists in ascending degree; bivariate
working polynomials are 2-d arrays with entry (i, j) multiplying x^i y^j.
"""

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import errors
from .ff import FieldElement, inv_mod, validate_modulus
from .forms import BiForm
from .linalg import _dtype_for
from .rng import Stream

# ---------------------------------------------------------------------------
# univariate arithmetic on ascending coefficient lists
# ---------------------------------------------------------------------------


def _tr(p):
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def _deg(p):
    return len(p) - 1


def _add(a, b, q):
    n = max(len(a), len(b))
    return _tr([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % q for i in range(n)])


def _sub(a, b, q):
    n = max(len(a), len(b))
    return _tr([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)])


def _mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % q
    return _tr(out)


def _scale(a, c, q):
    c %= q
    return _tr([x * c % q for x in a])


def _divmod(a, b, q):
    if not b:
        raise errors.DivisionByZero("polynomial division by zero")
    a = list(a)
    db = _deg(b)
    inv_lead = inv_mod(b[-1], q)
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            t = c * inv_lead % q
            quot[k - db] = t
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - t * b[i]) % q
    return _tr(quot), _tr(a[:db])


def _divexact(a, b, q):
    quot, rem = _divmod(a, b, q)
    if rem:
        return None
    return quot


def _gcd(a, b, q):
    a, b = _tr(list(a)), _tr(list(b))
    while b:
        a, b = b, _divmod(a, b, q)[1]
    if a:
        a = _scale(a, inv_mod(a[-1], q), q)
    return a


def _monic(a, q):
    if not a:
        raise errors.ZeroPolynomial("cannot normalize the zero polynomial")
    return _scale(a, inv_mod(a[-1], q), q)


def _deriv(a, q):
    return _tr([i * a[i] % q for i in range(1, len(a))])


def _eval(a, s, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * s + c) % q
    return acc


def _pow_mod(a, e, m, q):
    result = [1]
    a = _divmod(a, m, q)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, a, q), m, q)[1]
        e >>= 1
        if e:
            a = _divmod(_mul(a, a, q), m, q)[1]
    return result


def _invmod_poly(a, m, q):
    """Inverse of a mod m via extended Euclid; a and m must be coprime."""
    r0, r1 = _tr(list(m)), _divmod(a, m, q)[1]
    s0, s1 = [], [1]
    while r1:
        qu, re = _divmod(r0, r1, q)
        r0, r1 = r1, re
        s0, s1 = s1, _sub(s0, _mul(qu, s1, q), q)
    if _deg(r0) != 0:
        raise errors.QsiError("polynomials are not coprime")
    return _scale(s0, inv_mod(r0[0], q), q)


def _pth_root_univ(a, q):
    """p-th root of a polynomial of the form g(x^p) over the prime field."""
    return _tr([a[i] for i in range(0, len(a), q)])


# ---------------------------------------------------------------------------
# univariate factorization
# ---------------------------------------------------------------------------


def _sqf_list(f, q):
    """Squarefree decomposition of monic f: [(monic squarefree, multiplicity)]."""
    result = []
    df = _deriv(f, q)
    if not df:
        for h, k in _sqf_list(_pth_root_univ(f, q), q):
            result.append((h, k * q))
        return result
    c = _gcd(f, df, q)
    w = _divexact(f, c, q)
    i = 1
    while _deg(w) > 0:
        y = _gcd(w, c, q)
        z = _divexact(w, y, q)
        if _deg(z) > 0:
            result.append((z, i))
        i += 1
        w = y
        c = _divexact(c, y, q)
    if _deg(c) > 0:
        for h, k in _sqf_list(_pth_root_univ(c, q), q):
            result.append((h, k * q))
    return result


def _ddf(f, q):
    """Distinct-degree split of monic squarefree f: [(product, factor degree)]."""
    out = []
    h = [0, 1]
    d = 0
    while _deg(f) > 2 * (d + 1) - 1 and _deg(f) > 0:
        d += 1
        h = _pow_mod(h, q, f, q)
        g = _gcd(_sub(h, [0, 1], q), f, q)
        if _deg(g) > 0:
            out.append((g, d))
            f = _divexact(f, g, q)
            h = _divmod(h, f, q)[1] if _deg(f) > 0 else h
    if _deg(f) > 0:
        out.append((f, _deg(f)))
    return out


def _edf(f, d, q, stream):
    """Cantor-Zassenhaus equal-degree splitting (odd q)."""
    n = _deg(f)
    if n == d:
        return [f]
    exponent = (q**d - 1) // 2
    while True:
        a = [int(c) for c in stream.integers(q, (n,))]
        a = _tr(a)
        if _deg(a) < 1:
            continue
        t = _sub(_pow_mod(a, exponent, f, q), [1], q)
        g = _gcd(t, f, q)
        if 0 < _deg(g) < n:
            return _edf(g, d, q, stream) + _edf(_divexact(f, g, q), d, q, stream)


def _factor_univ(f, q, stream):
    """Complete factorization of a nonzero coefficient list:
    (leading scalar, [(monic irreducible, multiplicity)] sorted canonically)."""
    f = _tr(list(f))
    if not f:
        raise errors.ZeroPolynomial("cannot factor the zero polynomial")
    lead = f[-1]
    f = _monic(f, q)
    found = []
    if _deg(f) > 0:
        for sqf, mult in _sqf_list(f, q):
            for prod, d in _ddf(sqf, q):
                for irr in _edf(prod, d, q, stream):
                    found.append((irr, mult))
    found.sort(key=lambda fm: (_deg(fm[0]), tuple(fm[0])))
    return lead, found


# ---------------------------------------------------------------------------
# public univariate surface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense univariate polynomial, coefficients ascending, over F_q."""

    coeffs: tuple
    q: int

    def __post_init__(self):
        q = validate_modulus(self.q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", tuple(_tr([int(c) % q for c in self.coeffs])))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __mul__(self, other):
        return UnivariatePoly(_mul(list(self.coeffs), list(other.coeffs), self.q), self.q)

    def evaluate(self, s):
        return FieldElement(_eval(list(self.coeffs), int(s), self.q), self.q)


def univ_factor(poly, stream=None):
    """Monic irreducible factors with multiplicities plus the leading scalar;
    the product reconstructs the input exactly (verified)."""
    if poly.is_zero():
        raise errors.ZeroPolynomial("cannot factor the zero polynomial")
    q = poly.q
    stream = stream or Stream(0, "univ-factor")
    lead, found = _factor_univ(list(poly.coeffs), q, stream)
    check = [lead]
    for irr, mult in found:
        for _ in range(mult):
            check = _mul(check, irr, q)
    if check != list(poly.coeffs):
        raise errors.QsiError("internal: univariate factorization failed verification")
    return (
        FieldElement(lead, q),
        [(UnivariatePoly(irr, q), mult) for irr, mult in found],
    )


# ---------------------------------------------------------------------------
# bivariate working arithmetic: 2-d arrays, entry (i, j) on x^i y^j
# ---------------------------------------------------------------------------


def _bv(arr, q):
    a = np.array(arr, dtype=_dtype_for(q))
    if a.ndim != 2:
        raise errors.DimensionMismatch("bivariate grid must be 2-d")
    return a % q


def _bv_zero():
    return np.zeros((0, 0), dtype=np.int64)


def _bv_is_zero(f):
    return f.size == 0 or not f.any()


def _bv_trim(f):
    if _bv_is_zero(f):
        return _bv_zero()
    rows = np.nonzero(f.any(axis=1))[0]
    cols = np.nonzero(f.any(axis=0))[0]
    return f[: rows[-1] + 1, : cols[-1] + 1]


def _bv_mul(a, b, q, ytrunc=None):
    if _bv_is_zero(a) or _bv_is_zero(b):
        return _bv_zero()
    ra, ca = a.shape
    rb, cb = b.shape
    cols = ca + cb - 1 if ytrunc is None else min(ca + cb - 1, ytrunc)
    nterms = min(ra * ca, rb * cb)
    wide = object if (q - 1) ** 2 * nterms >= (1 << 62) else np.int64
    out = np.zeros((ra + rb - 1, cols), dtype=wide)
    small, big = (a, b) if ra * ca <= rb * cb else (b, a)
    for i in range(small.shape[0]):
        for j in range(small.shape[1]):
            c = int(small[i, j])
            if c:
                blk = big[:, : max(cols - j, 0)]
                out[i : i + big.shape[0], j : j + blk.shape[1]] += c * blk
    out %= q
    return _bv_trim(out.astype(_dtype_for(q)))


def _bv_addsub(a, b, q, sign):
    rows = max(a.shape[0], b.shape[0])
    cols = max(a.shape[1], b.shape[1])
    out = np.zeros((rows, cols), dtype=_dtype_for(q))
    out[: a.shape[0], : a.shape[1]] = a
    out[: b.shape[0], : b.shape[1]] += sign * b
    return _bv_trim(out % q)


def _bv_scale_row(f, row_poly, q, shift_x=0):
    """f * row_poly(y) * x^shift_x."""
    rp = np.asarray(_tr(list(row_poly)), dtype=f.dtype).reshape(1, -1)
    if rp.size == 0:
        return _bv_zero()
    prod = _bv_mul(f, rp, q)
    if shift_x and not _bv_is_zero(prod):
        out = np.zeros((prod.shape[0] + shift_x, prod.shape[1]), dtype=prod.dtype)
        out[shift_x:] = prod
        return out
    return prod


def _bv_deg_x(f):
    return f.shape[0] - 1


def _bv_deg_y(f):
    return f.shape[1] - 1


def _bv_rows(f):
    """Coefficient of x^i as an ascending y-coefficient list."""
    return [_tr([int(v) for v in f[i]]) for i in range(f.shape[0])]


def _bv_from_rows(rows, q):
    if not rows:
        return _bv_zero()
    width = max((len(r) for r in rows), default=0)
    if width == 0:
        return _bv_zero()
    out = np.zeros((len(rows), width), dtype=_dtype_for(q))
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return _bv_trim(out)


def _bv_deriv_x(f, q):
    if f.shape[0] <= 1:
        return _bv_zero()
    mult = np.arange(1, f.shape[0], dtype=f.dtype).reshape(-1, 1)
    return _bv_trim(f[1:] * mult % q)


def _bv_deriv_y(f, q):
    if f.shape[1] <= 1:
        return _bv_zero()
    mult = np.arange(1, f.shape[1], dtype=f.dtype).reshape(1, -1)
    return _bv_trim(f[:, 1:] * mult % q)


def _bv_transpose(f):
    return _bv_trim(f.T.copy())


def _bv_eval_y(f, s, q):
    """Univariate in x after substituting y = s."""
    return _tr([_eval([int(v) for v in f[i]], s, q) for i in range(f.shape[0])])


def _bv_shift_y(f, s, q):
    """Substitute y -> y + s."""
    if _bv_is_zero(f) or s % q == 0:
        return f.copy()
    w = f.shape[1]
    shift = np.zeros((w, w), dtype=f.dtype)
    for j in range(w):
        for k in range(j + 1):
            shift[j, k] = comb(j, k) % q * pow(s, j - k, q) % q
    from .linalg import _matmul

    return _bv_trim(_matmul(f, shift, q))


def _bv_pth_root(f, q):
    return _bv_trim(f[::q, ::q].copy())


def _bv_cont_x(f, q):
    """Content as a polynomial in y: gcd of the x-coefficient polynomials."""
    c = []
    for row in _bv_rows(f):
        c = _gcd(c, row, q)
        if _deg(c) == 0:
            break
    return c


def _bv_divexact_ypoly(f, c, q):
    """Divide every x-coefficient by c(y); must be exact."""
    rows = []
    for row in _bv_rows(f):
        if not row:
            rows.append([])
            continue
        quot = _divexact(row, c, q)
        if quot is None:
            raise errors.QsiError("internal: inexact content division")
        rows.append(quot)
    return _bv_from_rows(rows, q)


def _bv_divexact(f, g, q):
    """Quotient f / g in F_q[x, y], or None when g does not divide f."""
    if _bv_is_zero(g):
        raise errors.DivisionByZero("bivariate division by zero")
    if _bv_is_zero(f):
        return _bv_zero()
    r = f
    lcg = _bv_rows(g)[-1]
    quot_rows = {}
    while not _bv_is_zero(r):
        dr, dg = _bv_deg_x(r), _bv_deg_x(g)
        if dr < dg:
            return None
        lcr = _bv_rows(r)[-1]
        t = _divexact(lcr, lcg, q)
        if t is None:
            return None
        quot_rows[dr - dg] = t
        r = _bv_addsub(r, _bv_scale_row(g, t, q, shift_x=dr - dg), q, -1)
    rows = [quot_rows.get(i, []) for i in range(max(quot_rows) + 1)] if quot_rows else []
    return _bv_from_rows(rows, q)


def _bv_prem(f, g, q):
    """Pseudo-remainder of f by g with respect to x."""
    r = f
    dg = _bv_deg_x(g)
    lcg = _bv_rows(g)[-1]
    while not _bv_is_zero(r) and _bv_deg_x(r) >= dg:
        dr = _bv_deg_x(r)
        lcr = _bv_rows(r)[-1]
        r = _bv_addsub(
            _bv_scale_row(r, lcg, q),
            _bv_scale_row(g, lcr, q, shift_x=dr - dg),
            q,
            -1,
        )
    return r


def _bv_primitive(f, q):
    c = _bv_cont_x(f, q)
    if _deg(c) == 0:
        return f
    return _bv_divexact_ypoly(f, c, q)


def _bv_normalize(f, q):
    """Scale so the lex-leading coefficient (highest x, then highest y) is 1."""
    if _bv_is_zero(f):
        return f
    lead = _tr([int(v) for v in f[-1]])[-1]
    return f * inv_mod(lead, q) % q


def _bv_gcd(f, g, q):
    """Primitive-PRS gcd in F_q[x, y], normalized; treats x as the main
    variable (contents in y handled by univariate gcds)."""
    if _bv_is_zero(f):
        return _bv_normalize(g, q)
    if _bv_is_zero(g):
        return _bv_normalize(f, q)
    cf, cg = _bv_cont_x(f, q), _bv_cont_x(g, q)
    cont = _gcd(cf, cg, q)
    a, b = _bv_primitive(f, q), _bv_primitive(g, q)
    if _bv_deg_x(a) < _bv_deg_x(b):
        a, b = b, a
    while True:
        r = _bv_prem(a, b, q)
        if _bv_is_zero(r):
            break
        a, b = b, _bv_primitive(r, q)
        if _bv_deg_x(b) == 0:
            b = np.ones((1, 1), dtype=a.dtype)
            break
    result = _bv_primitive(b, q)
    if _deg(cont) > 0:
        result = _bv_scale_row(result, cont, q)
    return _bv_normalize(result, q)


# ---------------------------------------------------------------------------
# Hensel lifting and recombination
# ---------------------------------------------------------------------------


class _NoSpecialization(errors.QsiError):
    """No usable evaluation point for y exists over this field."""


def _find_specialization(h, q):
    lc = _bv_rows(h)[-1]
    dh = _bv_deg_x(h)
    for s in range(q):
        if _eval(lc, s, q) == 0:
            continue
        u = _bv_eval_y(h, s, q)
        if _deg(u) != dh:
            continue
        du = _deriv(u, q)
        if du and _deg(_gcd(u, du, q)) == 0:
            return s, u
    raise _NoSpecialization(f"no squarefree specialization in F_{q}")


def _monicize(h, q):
    """Return (fhat, L): fhat = L^(n-1) h(x/L, y) monic in x, L = lc_x(h)."""
    rows = _bv_rows(h)
    n = len(rows) - 1
    lc = rows[-1]
    out = []
    power = {0: [1]}
    for k in range(1, n):
        power[k] = _mul(power[k - 1], lc, q)
    for i in range(n):
        out.append(_mul(rows[i], power[n - 1 - i], q) if rows[i] else [])
    out.append([1])
    return _bv_from_rows(out, q), lc


def _hensel_lift(fhat, units, prec, q):
    """Lift pairwise-coprime monic univariate factors of fhat(x, 0) to monic
    bivariate factors of fhat modulo y^prec."""
    n = _bv_deg_x(fhat)
    total = [1]
    for u in units:
        total = _mul(total, u, q)
    cofactor_inverses = []
    for u in units:
        co = _divexact(total, u, q)
        cofactor_inverses.append(_invmod_poly(co, u, q))
    lifted = []
    for u in units:
        g = np.zeros((len(u), prec), dtype=_dtype_for(q))
        g[:, 0] = u
        lifted.append(g)
    fpad = np.zeros((n + 1, prec), dtype=_dtype_for(q))
    fpad[: fhat.shape[0], : fhat.shape[1]] = fhat
    for k in range(1, prec):
        prod = lifted[0]
        for g in lifted[1:]:
            prod = _bv_mul(prod, g, q, ytrunc=prec)
        diff = _bv_addsub(fpad, prod, q, -1)
        if _bv_is_zero(diff) or diff.shape[1] <= k:
            continue
        e = _tr([int(v) for v in diff[:, k]])
        if not e:
            continue
        for idx, u in enumerate(units):
            delta = _divmod(_mul(e, cofactor_inverses[idx], q), u, q)[1]
            for j, c in enumerate(delta):
                lifted[idx][j, k] = (int(lifted[idx][j, k]) + c) % q
    return [_bv_trim(g) for g in lifted]


def _recombine(fhat, lifted, q):
    """Match subsets of lifted factors to true monic factors of fhat."""
    remaining = fhat
    active = list(range(len(lifted)))
    found = []
    size = 1
    while 2 * size <= len(active):
        hit = False
        for subset in itertools.combinations(active, size):
            cand = lifted[subset[0]]
            for i in subset[1:]:
                cand = _bv_mul(cand, lifted[i], q, ytrunc=_bv_deg_y(fhat) + 1)
            quot = _bv_divexact(remaining, cand, q)
            if quot is not None:
                found.append(cand)
                remaining = quot
                active = [i for i in active if i not in subset]
                hit = True
                break
        if not hit:
            size += 1
    if _bv_deg_x(remaining) > 0:
        found.append(remaining)
    return found


def _hensel_factor_separable(h, q):
    """Irreducible factors of h: squarefree, primitive and separable in x,
    deg_x >= 1, deg_y >= 1."""
    if _bv_deg_x(h) == 1:
        return [h]
    s, u = _find_specialization(h, q)
    hs = _bv_shift_y(h, s, q)
    fhat, lc = _monicize(hs, q)
    _, univ_factors = _factor_univ(_monic(_bv_eval_y(fhat, 0, q), q), q, Stream(0, "hensel-edf"))
    units = [list(f) for f, _ in univ_factors]
    if len(units) == 1:
        return [h]
    prec = _bv_deg_y(fhat) + 1
    lifted = _hensel_lift(fhat, units, prec, q)
    out = []
    for ghat in _recombine(fhat, lifted, q):
        rows = _bv_rows(ghat)
        k = len(rows) - 1
        power = [1]
        scaled = []
        for i, row in enumerate(rows):
            scaled.append(_mul(row, power, q) if row else [])
            if i < k:
                power = _mul(power, lc, q)
        g = _bv_primitive(_bv_from_rows(scaled, q), q)
        out.append(_bv_shift_y(g, (-s) % q, q))
    return out


_MAX_DEPTH = 12


def _factor_squarefree(h, q, depth=0):
    """Distinct irreducible factors of a squarefree nonconstant polynomial."""
    if depth > _MAX_DEPTH:
        raise errors.QsiError("internal: factorization recursion too deep")
    out = []
    cont = _bv_cont_x(h, q)
    if _deg(cont) > 0:
        _, cfs = _factor_univ(cont, q, Stream(0, "content-factor"))
        for cf, mult in cfs:
            assert mult == 1
            out.append(_bv_from_rows([list(cf)], q))
        h = _bv_divexact_ypoly(h, cont, q)
    if _bv_deg_x(h) == 0 and _bv_deg_y(h) == 0:
        return out
    if _bv_deg_y(h) == 0:
        _, xfs = _factor_univ([int(v) for v in h[:, 0]], q, Stream(0, "xonly-factor"))
        for xf, mult in xfs:
            assert mult == 1
            out.append(_bv_from_rows([[c] for c in xf], q))
        return out
    if _bv_deg_x(h) == 0:
        # content handling above already consumed pure-y parts
        return out
    hx = _bv_deriv_x(h, q)
    if _bv_is_zero(hx):
        return out + [
            _bv_transpose(g) for g in _factor_squarefree(_bv_transpose(h), q, depth + 1)
        ]
    w = _bv_gcd(h, hx, q)
    if _bv_deg_x(w) > 0 or _bv_deg_y(w) > 0:
        sep = _bv_divexact(h, w, q)
        return (
            out
            + _factor_squarefree(sep, q, depth + 1)
            + _factor_squarefree(w, q, depth + 1)
        )
    return out + [_bv_normalize(g, q) for g in _hensel_factor_separable(h, q)]


def _distinct_irreducibles(f, q, depth=0):
    """Distinct (normalized) irreducible factors of nonconstant f."""
    if depth > _MAX_DEPTH:
        raise errors.QsiError("internal: factorization recursion too deep")
    if _bv_deg_x(f) == 0 and _bv_deg_y(f) == 0:
        return []
    fx = _bv_deriv_x(f, q)
    fy = _bv_deriv_y(f, q)
    if _bv_is_zero(fx) and _bv_is_zero(fy):
        return _distinct_irreducibles(_bv_pth_root(f, q), q, depth + 1)
    if _bv_is_zero(fx):
        return [
            _bv_normalize(_bv_transpose(g), q)
            for g in _distinct_irreducibles(_bv_transpose(f), q, depth + 1)
        ]
    g = _bv_gcd(f, fx, q)
    h = _bv_divexact(f, g, q)
    factors = [_bv_normalize(x, q) for x in _factor_squarefree(h, q, depth)]
    if _bv_deg_x(g) > 0 or _bv_deg_y(g) > 0:
        factors.extend(_distinct_irreducibles(g, q, depth + 1))
    seen = {}
    for fac in factors:
        seen[(fac.shape, tuple(int(v) for v in fac.flat))] = fac
    return list(seen.values())


# ---------------------------------------------------------------------------
# bihomogeneous forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorList:
    """Complete factorization of a biform: scalar * prod(factor^mult) equals
    the input exactly; every factor is projectively normalized."""

    scalar: FieldElement
    factors: tuple

    def expand(self, q=None):
        q = self.scalar.q if q is None else q
        acc = BiForm.one(q).scale(self.scalar.value)
        for f, mult in self.factors:
            for _ in range(mult):
                acc = acc * f
        return acc


def _strip_coordinate_monomials(form):
    """Split off powers of the four coordinates; returns (core biform,
    [(coordinate biform, multiplicity)])."""
    c = form.coeffs
    d1, d2 = form.bidegree
    rows = np.nonzero(c.any(axis=1))[0]
    cols = np.nonzero(c.any(axis=0))[0]
    x1_mult = int(rows[0])
    x0_mult = d1 - int(rows[-1])
    y1_mult = int(cols[0])
    y0_mult = d2 - int(cols[-1])
    core = BiForm(c[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1], form.q)
    q = form.q
    coords = []
    for mult, (dd1, dd2, i, j) in (
        (x0_mult, (1, 0, 0, 0)),
        (x1_mult, (1, 0, 1, 0)),
        (y0_mult, (0, 1, 0, 0)),
        (y1_mult, (0, 1, 0, 1)),
    ):
        if mult:
            coords.append((BiForm.monomial(dd1, dd2, i, j, q), mult))
    return core, coords


def _biform_to_bv(form):
    return _bv_trim(np.array(form.coeffs[::-1, ::-1], dtype=form.coeffs.dtype))


def _bv_to_biform(f, q):
    return BiForm(np.array(f[::-1, ::-1]), q)


def _assemble_factor_list(form, pieces):
    """Sort normalized pieces canonically, certify by trial multiplication."""
    q = form.q
    pieces_sorted = sorted(
        ((f.normalized(), mult) for f, mult in pieces),
        key=lambda fm: (fm[0].bidegree, tuple(int(v) for v in fm[0].coeffs.flat)),
    )
    trial = BiForm.one(q)
    for f, mult in pieces_sorted:
        for _ in range(mult):
            trial = trial * f
    ratio = form.proportional_scalar(trial)
    if ratio is None:
        raise errors.QsiError("internal: factorization failed trial multiplication")
    result = FactorList(FieldElement(ratio, q), tuple(pieces_sorted))
    if result.expand(q) != form:
        raise errors.QsiError("internal: factorization failed trial multiplication")
    return result


_MAX_GL2_RETRIES = 4


def biform_factor(form, _attempt=0):
    """Complete factorization into F_q-irreducible bihomogeneous factors,
    certified by trial multiplication. When no squarefree specialization
    exists over F_q (only possible for tiny q), retries after a random
    invertible change of the X-block coordinates, which is undone afterward.
    """
    if form.is_zero():
        raise errors.ZeroPolynomial("cannot factor the zero form")
    q = form.q
    try:
        core, coord_factors = _strip_coordinate_monomials(form)
        pieces = list(coord_factors)
        work = _biform_to_bv(core)
        if _bv_deg_x(work) > 0 or _bv_deg_y(work) > 0:
            irreducibles = _distinct_irreducibles(work, q)
            irreducibles.sort(key=lambda g: (g.shape, tuple(int(v) for v in g.flat)))
            for irr in irreducibles:
                mult = 0
                while True:
                    quot = _bv_divexact(work, irr, q)
                    if quot is None:
                        break
                    work = quot
                    mult += 1
                if mult == 0:
                    raise errors.QsiError("internal: claimed factor does not divide")
                pieces.append((_bv_to_biform(irr, q).normalized(), mult))
        if _bv_deg_x(work) > 0 or _bv_deg_y(work) > 0:
            raise errors.QsiError("internal: factorization left a nonconstant core")
        return _assemble_factor_list(form, pieces)
    except _NoSpecialization:
        if _attempt >= _MAX_GL2_RETRIES:
            raise errors.RetriesExhausted(
                f"no usable coordinates after {_MAX_GL2_RETRIES} block changes"
            ) from None
        stream = Stream(_attempt, "biform-factor/gl2-retry")
        g1 = _random_gl2(q, stream.child("x"))
        g2 = _random_gl2(q, stream.child("y"))
        transformed = biform_factor(form.substitute(g1, g2), _attempt + 1)
        h1, h2 = _gl2_inverse(g1, q), _gl2_inverse(g2, q)
        pieces = [
            (f.substitute(h1, h2).normalized(), mult) for f, mult in transformed.factors
        ]
        return _assemble_factor_list(form, pieces)


def _random_gl2(q, stream):
    while True:
        a, b, c, d = (int(v) for v in stream.integers(q, (4,)))
        if (a * d - b * c) % q:
            return [[a, b], [c, d]]


def _gl2_inverse(g, q):
    (a, b), (c, d) = g
    det_inv = inv_mod((a * d - b * c) % q, q)
    return [
        [d * det_inv % q, (-b) * det_inv % q],
        [(-c) * det_inv % q, a * det_inv % q],
    ]


def extract_22(form):
    """Candidate bidegree-(2,2) components of an (m, m) form, m >= 3.

    Exactly one F_q-irreducible (2,2) factor: returned as a one-element list.
    Several irreducible (2,2) factors (always possible when m = 4), or only
    reducible products reaching bidegree (2,2): AmbiguousComponent. No
    candidate at all: NoComponent.
    """
    d1, d2 = form.bidegree
    if d1 != d2 or d1 < 3:
        raise errors.InvalidParameters(
            f"component extraction needs an (m, m) form with m >= 3, got {form.bidegree}"
        )
    fl = biform_factor(form)
    irr22 = [f for f, _ in fl.factors if f.bidegree == (2, 2)]
    if len(irr22) == 1:
        return [irr22[0]]
    if len(irr22) > 1:
        raise errors.AmbiguousComponent(
            f"{len(irr22)} irreducible (2,2) components", candidates=irr22
        )
    products = _products_of_bidegree(fl.factors, (2, 2))
    if not products:
        raise errors.NoComponent("no bidegree-(2,2) component")
    raise errors.AmbiguousComponent(
        "only reducible (2,2) candidates (degenerate run)", candidates=products
    )


def _products_of_bidegree(factors, target):
    """Distinct normalized products of factors (with multiplicity) whose
    bidegrees sum to `target`."""
    found = {}

    def walk(idx, d1, d2, acc):
        if (d1, d2) == target:
            key = (acc.coeffs.shape, tuple(int(v) for v in acc.coeffs.flat))
            found[key] = acc
            return
        if idx == len(factors) or d1 > target[0] or d2 > target[1]:
            return
        f, mult = factors[idx]
        e1, e2 = f.bidegree
        prod = acc
        for k in range(mult + 1):
            if d1 + k * e1 > target[0] or d2 + k * e2 > target[1]:
                break
            walk(idx + 1, d1 + k * e1, d2 + k * e2, prod)
            prod = (prod * f).normalized()

    one = BiForm.one(factors[0][0].q) if factors else None
    if one is not None:
        walk(0, 0, 0, one)
    return list(found.values())
