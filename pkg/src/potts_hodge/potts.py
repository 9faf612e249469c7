"""Evaluation of matroid rank-generating polynomials and their derivatives.

For a matroid M on ground set 1..n with rank function rk, the k-th stratum
is the homogeneous degree-k polynomial

    Z[k](q; w_1..w_n) = sum over k-subsets A of q^(-rk(A)) * prod_{i in A} w_i,

and the full weighted polynomial in n+1 variables w_0..w_n is

    Z_c(q; w) = sum_{m=0..n} c_m * Z[m](q; w_1..w_n) * w_0^(n-m),

homogeneous of degree n, multiaffine in each of w_1..w_n.  The independent
set generating polynomial f[m] keeps only the subsets with rk(A) = |A|.

Every evaluator runs a single pass over the subset lattice, accumulating
all strata (or all Hessian entries) simultaneously.  Exact mode is the
default and produces bit-reproducible rationals.  Float mode rescales
q^(-rk(A)) by q^(rank(M)) inside the pass, so intermediate magnitudes stay
bounded, and undoes the positive rescaling once at the end.
"""
from __future__ import annotations

from .errors import InvalidParametersError
from .matrices import SymMatrix
from .scalars import EXACT, RAT_ONE, RAT_ZERO, coerce_scalar, coerce_vector, ensure_mode, rat


def _zero(mode):
    return RAT_ZERO if mode == EXACT else 0.0


def _one(mode):
    return RAT_ONE if mode == EXACT else 1.0


def _validate_q(q, mode):
    qv = coerce_scalar(q, mode)
    if qv <= 0:
        raise InvalidParametersError(f"q must be positive, got {q!r}")
    return qv


def _validate_point(w, length, mode, name="w"):
    wv = coerce_vector(w, mode)
    if len(wv) != length:
        raise InvalidParametersError(f"{name} must have length {length}, got {len(wv)}")
    return wv


def validate_coeffs(c, n, mode=EXACT):
    """Coefficient sequence c_0..c_n: right length, strictly positive."""
    cv = coerce_vector(c, mode)
    if len(cv) != n + 1:
        raise InvalidParametersError(f"coefficient sequence must have length n+1 = {n + 1}, got {len(cv)}")
    if any(x <= 0 for x in cv):
        raise InvalidParametersError("coefficient sequence must be strictly positive")
    return cv


def validate_alpha(alpha, n):
    """Differentiation multi-index over w_0..w_n: n+1 nonnegative integers."""
    out = []
    for a in alpha:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            raise InvalidParametersError(f"multi-index entries must be nonnegative integers, got {a!r}")
        out.append(a)
    if len(out) != n + 1:
        raise InvalidParametersError(f"multi-index must have length n+1 = {n + 1}, got {len(out)}")
    return tuple(out)


def is_strictly_log_concave(c):
    """True when c is positive with c_m^2 > c_{m-1} c_{m+1} strictly inside."""
    cv = [coerce_scalar(x, EXACT) for x in c]
    if any(x <= 0 for x in cv):
        return False
    return all(cv[m] * cv[m] > cv[m - 1] * cv[m + 1] for m in range(1, len(cv) - 1))


def is_log_concave(c):
    """Non-strict variant: positive with c_m^2 >= c_{m-1} c_{m+1} inside."""
    cv = [coerce_scalar(x, EXACT) for x in c]
    if any(x <= 0 for x in cv):
        return False
    return all(cv[m] * cv[m] >= cv[m - 1] * cv[m + 1] for m in range(1, len(cv) - 1))


def _q_inverse_powers(q, max_rank, mode):
    """powers[r] plays the role of q^(-r); in float mode everything is
    pre-scaled by q^max_rank and the second return value undoes that."""
    if mode == EXACT:
        qinv = RAT_ONE / q
        powers = [RAT_ONE]
        for _ in range(max_rank):
            powers.append(powers[-1] * qinv)
        return powers, RAT_ONE
    qf = float(q)
    powers = [qf ** (max_rank - r) for r in range(max_rank + 1)]
    return powers, qf ** (-max_rank)


def _w_product_tables(values, mode):
    """For every subset mask: product of the nonzero entries, and zero count."""
    n = len(values)
    size = 1 << n
    prod_nz = [_one(mode)] * size
    zcount = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        v = values[low.bit_length() - 1]
        if v == 0:
            prod_nz[mask] = prod_nz[rest]
            zcount[mask] = zcount[rest] + 1
        else:
            prod_nz[mask] = prod_nz[rest] * v
            zcount[mask] = zcount[rest]
    return prod_nz, zcount


def _bits(mask):
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def zk_all(matroid, q, w, mode=EXACT):
    """All strata (Z[0], ..., Z[n]) at the length-n point w, one subset pass."""
    ensure_mode(mode)
    qv = _validate_q(q, mode)
    wv = _validate_point(w, matroid.n, mode)
    powers, scale = _q_inverse_powers(qv, matroid.full_rank, mode)
    prod_nz, zcount = _w_product_tables(wv, mode)
    acc = [_zero(mode)] * (matroid.n + 1)
    ranks = matroid.ranks
    for mask in range(1 << matroid.n):
        if zcount[mask] == 0:
            acc[mask.bit_count()] += powers[ranks[mask]] * prod_nz[mask]
    if scale != 1:
        acc = [x * scale for x in acc]
    return tuple(acc)


def zk_eval(matroid, k, q, w, mode=EXACT):
    """Single stratum Z[k]; k > n gives 0 (there are no such subsets)."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidParametersError(f"stratum index must be a nonnegative integer, got {k!r}")
    if k > matroid.n:
        _validate_q(q, mode)
        _validate_point(w, matroid.n, mode)
        return _zero(mode)
    return zk_all(matroid, q, w, mode)[k]


def z_weighted_eval(matroid, c, q, w, mode=EXACT):
    """Weighted polynomial Z_c at the length-(n+1) point (w_0, ..., w_n)."""
    n = matroid.n
    cv = validate_coeffs(c, n, mode)
    wv = _validate_point(w, n + 1, mode)
    strata = zk_all(matroid, q, wv[1:], mode)
    w0 = wv[0]
    w0pow = _powers(w0, n, mode)
    total = _zero(mode)
    for m in range(n + 1):
        total += cv[m] * strata[m] * w0pow[n - m]
    return total


def _powers(x, top, mode):
    out = [_one(mode)]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def _falling(k, j):
    """Falling factorial k (k-1) ... (k-j+1); equals k!/(k-j)! for k >= j."""
    out = 1
    for t in range(j):
        out *= k - t
    return out


def _alpha_split(alpha, n):
    """(a0, smask) for an admissible alpha, or None when the derivative
    annihilates every monomial (some inner entry >= 2, or order too high)."""
    if any(alpha[i] >= 2 for i in range(1, n + 1)):
        return None
    smask = 0
    for i in range(1, n + 1):
        if alpha[i]:
            smask |= 1 << (i - 1)
    a0 = alpha[0]
    if a0 + smask.bit_count() > n:
        return None
    return a0, smask


def is_identically_zero(matroid, c, q, alpha):
    """Symbolic test: is the alpha-derivative of Z_c the zero polynomial?

    With positive coefficients and q > 0 the derivative vanishes exactly
    when some inner index exceeds 1 (multiaffine variables) or the total
    order a_0 + |support| exceeds n.
    """
    n = matroid.n
    validate_coeffs(c, n, EXACT)
    _validate_q(q, EXACT)
    av = validate_alpha(alpha, n)
    return _alpha_split(av, n) is None


def derivative_degree(matroid, alpha):
    """Degree of the alpha-derivative of Z_c (None when identically zero)."""
    av = validate_alpha(alpha, matroid.n)
    if _alpha_split(av, matroid.n) is None:
        return None
    return matroid.n - sum(av)


def partial_eval(matroid, c, q, alpha, w, mode=EXACT):
    """Partial derivative of Z_c of multi-index alpha, evaluated at w.

    A monomial indexed by the subset A survives exactly when the inner
    support of alpha sits inside A and a_0 is at most the w_0-exponent
    n - |A|; it then carries the falling-factorial factor from w_0^(n-|A|).
    """
    n = matroid.n
    ensure_mode(mode)
    cv = validate_coeffs(c, n, mode)
    qv = _validate_q(q, mode)
    av = validate_alpha(alpha, n)
    wv = _validate_point(w, n + 1, mode)
    split = _alpha_split(av, n)
    if split is None:
        return _zero(mode)
    a0, smask = split
    powers, scale = _q_inverse_powers(qv, matroid.full_rank, mode)
    prod_nz, zcount = _w_product_tables(wv[1:], mode)
    w0pow = _powers(wv[0], n, mode)
    ff = [_falling(k0, a0) for k0 in range(n + 1)]
    ranks = matroid.ranks
    comp = ((1 << n) - 1) & ~smask
    total = _zero(mode)
    sub = comp
    while True:
        a_mask = sub | smask
        k0 = n - a_mask.bit_count()
        if k0 >= a0 and zcount[sub] == 0:
            total += cv[n - k0] * powers[ranks[a_mask]] * ff[k0] * w0pow[k0 - a0] * prod_nz[sub]
        if sub == 0:
            break
        sub = (sub - 1) & comp
    return total * scale


def gradient(matroid, c, q, alpha, w, mode=EXACT):
    """All first partials of the alpha-derivative of Z_c at w, one pass."""
    n = matroid.n
    ensure_mode(mode)
    cv = validate_coeffs(c, n, mode)
    qv = _validate_q(q, mode)
    av = validate_alpha(alpha, n)
    wv = _validate_point(w, n + 1, mode)
    zero = _zero(mode)
    split = _alpha_split(av, n)
    if split is None:
        return tuple([zero] * (n + 1))
    a0, smask = split
    powers, scale = _q_inverse_powers(qv, matroid.full_rank, mode)
    inner = wv[1:]
    prod_nz, zcount = _w_product_tables(inner, mode)
    w0pow = _powers(wv[0], n, mode)
    ff0 = [_falling(k0, a0) for k0 in range(n + 1)]
    ff1 = [_falling(k0, a0 + 1) for k0 in range(n + 1)]
    ranks = matroid.ranks
    comp = ((1 << n) - 1) & ~smask
    grad = [zero] * (n + 1)
    sub = comp
    while True:
        a_mask = sub | smask
        k0 = n - a_mask.bit_count()
        if k0 >= a0:
            base = cv[n - k0] * powers[ranks[a_mask]]
            pz = zcount[sub]
            pnz = prod_nz[sub]
            if k0 >= a0 + 1 and pz == 0:
                grad[0] += base * ff1[k0] * w0pow[k0 - a0 - 1] * pnz
            if pz <= 1:
                t0 = base * ff0[k0] * w0pow[k0 - a0]
                for e in _bits(sub):
                    we = inner[e]
                    if we == 0:
                        if pz == 1:
                            grad[e + 1] += t0 * pnz
                    elif pz == 0:
                        grad[e + 1] += t0 * pnz / we
        if sub == 0:
            break
        sub = (sub - 1) & comp
    if scale != 1:
        grad = [g * scale for g in grad]
    return tuple(grad)


def hessian(matroid, c, q, alpha, w, mode=EXACT):
    """Hessian of the alpha-derivative of Z_c at w, as a SymMatrix.

    Entry (i, j) equals the (alpha + e_i + e_j)-derivative at w.  All
    entries are accumulated in one pass over the subsets containing the
    inner support of alpha.  Inner diagonal entries are identically zero
    (the polynomial is multiaffine in w_1..w_n), and the whole matrix is
    zero when the derivative has degree below two.
    """
    n = matroid.n
    ensure_mode(mode)
    cv = validate_coeffs(c, n, mode)
    qv = _validate_q(q, mode)
    av = validate_alpha(alpha, n)
    wv = _validate_point(w, n + 1, mode)
    d = n + 1
    split = _alpha_split(av, n)
    if split is None:
        return SymMatrix.zero(d, mode)
    a0, smask = split
    powers, scale = _q_inverse_powers(qv, matroid.full_rank, mode)
    inner = wv[1:]
    prod_nz, zcount = _w_product_tables(inner, mode)
    w0pow = _powers(wv[0], n, mode)
    ff0 = [_falling(k0, a0) for k0 in range(n + 1)]
    ff1 = [_falling(k0, a0 + 1) for k0 in range(n + 1)]
    ff2 = [_falling(k0, a0 + 2) for k0 in range(n + 1)]
    ranks = matroid.ranks
    comp = ((1 << n) - 1) & ~smask
    zero = _zero(mode)
    hess = [[zero] * d for _ in range(d)]
    row0 = hess[0]
    sub = comp
    while True:
        a_mask = sub | smask
        k0 = n - a_mask.bit_count()
        if k0 >= a0:
            pz = zcount[sub]
            if pz <= 2:
                base = cv[n - k0] * powers[ranks[a_mask]]
                pnz = prod_nz[sub]
                if k0 >= a0 + 2 and pz == 0:
                    row0[0] += base * ff2[k0] * w0pow[k0 - a0 - 2] * pnz
                elems = _bits(sub)
                if k0 >= a0 + 1 and pz <= 1:
                    t1 = base * ff1[k0] * w0pow[k0 - a0 - 1]
                    for e in elems:
                        we = inner[e]
                        if we == 0:
                            if pz == 1:
                                row0[e + 1] += t1 * pnz
                        elif pz == 0:
                            row0[e + 1] += t1 * pnz / we
                t0 = base * ff0[k0] * w0pow[k0 - a0]
                for x in range(len(elems)):
                    e = elems[x]
                    we = inner[e]
                    ze = 1 if we == 0 else 0
                    zrow = pz - ze
                    if zrow > 1:
                        continue
                    row_base = pnz if ze else pnz / we
                    hrow = hess[e + 1]
                    for y in range(x + 1, len(elems)):
                        f = elems[y]
                        wf = inner[f]
                        if wf == 0:
                            if zrow == 1:
                                hrow[f + 1] += t0 * row_base
                        elif zrow == 0:
                            hrow[f + 1] += t0 * row_base / wf
        if sub == 0:
            break
        sub = (sub - 1) & comp
    for i in range(d):
        for j in range(i):
            hess[i][j] = hess[j][i]
    if scale != 1:
        hess = [[x * scale for x in row] for row in hess]
    return SymMatrix(tuple(tuple(row) for row in hess))


def f_all(matroid, w, mode=EXACT):
    """All strata of the independent-set generating polynomial at w."""
    ensure_mode(mode)
    wv = _validate_point(w, matroid.n, mode)
    prod_nz, zcount = _w_product_tables(wv, mode)
    acc = [_zero(mode)] * (matroid.n + 1)
    ranks = matroid.ranks
    for mask in range(1 << matroid.n):
        size = mask.bit_count()
        if ranks[mask] == size and zcount[mask] == 0:
            acc[size] += prod_nz[mask]
    return tuple(acc)


def f_m_eval(matroid, m, w, mode=EXACT):
    """Stratum f[m]: sum over independent m-subsets of the weight products."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InvalidParametersError(f"stratum index must be a nonnegative integer, got {m!r}")
    if m > matroid.n:
        _validate_point(w, matroid.n, mode)
        return _zero(mode)
    return f_all(matroid, w, mode)[m]


def f_limit_residual(matroid, m, w, q, mode=EXACT):
    """|Z[m](q; q*w) - f[m](w)|: the deviation of the rescaled stratum from
    its independent-set limit.  Each dependent subset contributes with a
    factor q^(|A| - rk(A)), so the residual is O(q) as q -> 0."""
    qv = _validate_q(q, mode)
    wv = _validate_point(w, matroid.n, mode)
    scaled = tuple(qv * x for x in wv)
    diff = zk_eval(matroid, m, qv, scaled, mode) - f_m_eval(matroid, m, wv, mode)
    return diff if diff >= 0 else -diff


def dependent_mass(matroid, m, w, nullity=None, mode=EXACT):
    """Sum of the weight products over dependent m-subsets.

    nullity=k restricts the sum to subsets with |A| - rk(A) == k; the k = 1
    slice is the leading term of Z[m](q; q*w) - f[m](w) as q -> 0.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InvalidParametersError(f"stratum index must be a nonnegative integer, got {m!r}")
    if nullity is not None and (not isinstance(nullity, int) or isinstance(nullity, bool) or nullity < 1):
        raise InvalidParametersError(f"nullity must be a positive integer, got {nullity!r}")
    ensure_mode(mode)
    wv = _validate_point(w, matroid.n, mode)
    if m > matroid.n:
        return _zero(mode)
    prod_nz, zcount = _w_product_tables(wv, mode)
    ranks = matroid.ranks
    total = _zero(mode)
    for mask in range(1 << matroid.n):
        if mask.bit_count() != m or zcount[mask]:
            continue
        gap = m - ranks[mask]
        if gap == 0:
            continue
        if nullity is None or gap == nullity:
            total += prod_nz[mask]
    return total


def elementary_symmetric(indices, k, w, mode=EXACT):
    """Elementary symmetric polynomial e_k over the w-values selected by the
    1-based index set `indices`."""
    ensure_mode(mode)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidParametersError(f"degree must be a nonnegative integer, got {k!r}")
    wv = coerce_vector(w, mode)
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise InvalidParametersError("index set contains repeats")
    for i in idx:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= len(wv):
            raise InvalidParametersError(f"index {i!r} outside 1..{len(wv)}")
    if k > len(idx):
        return _zero(mode)
    acc = [_one(mode)] + [_zero(mode)] * k
    for i in idx:
        v = wv[i - 1]
        for j in range(k, 0, -1):
            acc[j] += acc[j - 1] * v
    return acc[k]
