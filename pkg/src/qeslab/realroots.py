"""Certified real-root isolation for univariate rational polynomials.

Polynomials here are dense coefficient lists of Fractions (or ints) with
index equal to the degree.  Isolation runs on the square-free decomposition
(Yun's algorithm) and counts roots with Sturm sequences; the chain is kept
as primitive integer polynomials (negated remainders rescaled by positive
constants only), which preserves the sign-variation property while keeping
coefficients small.  Intervals are refined by plain sign-change bisection,
so every returned bracket is certified exactly.

Polynomials that are even (only even exponents) are isolated through the
substitution t = x**2, which halves the degree before the Sturm machinery
runs; positive roots are mapped back through certified rational
square-root bounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def trim(coeffs):
    """Drop leading zeros; the zero polynomial becomes []."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(coeffs):
    return len(coeffs) - 1


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        for j, q in enumerate(b):
            out[i + j] += p * q
    return trim(out)


def _to_primitive_int(coeffs):
    """Scale by a positive rational to primitive integer coefficients."""
    coeffs = trim(coeffs)
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def _poly_divmod(num, den):
    num = [Fraction(c) for c in trim(num)]
    den = [Fraction(c) for c in trim(den)]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    r = num
    while r and len(r) >= len(den):
        shift = len(r) - len(den)
        factor = r[-1] / den[-1]
        q[shift] = factor
        r.pop()
        for j in range(len(den) - 1):
            r[shift + j] -= factor * den[j]
        r = trim(r)
    return q, r


def poly_exact_div(num, den):
    q, r = _poly_divmod(num, den)
    if r:
        raise ArithmeticError("division leaves a remainder")
    return q


def _int_pseudo_rem(a, b):
    """Integer pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = degree(a), degree(b)
    lb = b[-1]
    e = da - db + 1
    r = list(a)
    while True:
        r = trim(r)
        dr = degree(r)
        if dr < db:
            break
        lr = r[-1]
        r = [lb * c for c in r]
        for j, bc in enumerate(b):
            r[dr - db + j] -= lr * bc
        e -= 1
    if r and e > 0:
        s = lb ** e
        r = [s * c for c in r]
    return r


def poly_gcd(a, b):
    """Primitive positive-leading gcd over the integers (primitive PRS)."""
    a = _to_primitive_int(a)
    b = _to_primitive_int(b)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = _to_primitive_int(_int_pseudo_rem(a, b))
        a, b = b, r
    if not a:
        return []
    return a if a[-1] > 0 else [-c for c in a]


def square_free_decomposition(coeffs):
    """Yun's algorithm: list of (primitive square-free factor, multiplicity).

    The product of factor**multiplicity reproduces the input up to a
    nonzero constant.
    """
    f = _to_primitive_int(coeffs)
    if not f:
        raise ValueError("zero polynomial")
    if degree(f) == 0:
        return []
    fp = poly_derivative(f)
    a = poly_gcd(f, fp)
    b = poly_exact_div(f, a)
    c = poly_exact_div(fp, a)
    d = poly_sub(c, poly_derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        a = poly_gcd(b, d)
        if degree(a) > 0:
            out.append((a, i))
        b = poly_exact_div(b, a)
        c = poly_exact_div(d, a)
        d = poly_sub(c, poly_derivative(b))
        i += 1
    return out


def square_free_part(coeffs):
    """Primitive integer square-free part (product of the Yun factors)."""
    prod = [Fraction(1)]
    for factor, _ in square_free_decomposition(coeffs):
        prod = poly_mul(prod, factor)
    return _to_primitive_int(prod)


def sturm_chain(coeffs):
    """Sturm chain of a square-free polynomial, as primitive integers.

    Each remainder is negated and rescaled by a positive constant only, so
    sign variations count distinct real roots exactly.
    """
    f = _to_primitive_int(coeffs)
    if not f:
        raise ValueError("zero polynomial")
    chain = [f]
    if degree(f) == 0:
        return chain
    chain.append(_to_primitive_int(poly_derivative(f)))
    while degree(chain[-1]) > 0:
        a, b = chain[-2], chain[-1]
        r = _int_pseudo_rem(a, b)
        if not r:
            break
        # prem = lc(b)^e * (a mod b); store a positive multiple of
        # -(a mod b) so the sign-variation property is preserved.
        e = degree(a) - degree(b) + 1
        flip = -1 if (b[-1] > 0 or e % 2 == 0) else 1
        r = _to_primitive_int(r)
        if flip < 0:
            r = [-c for c in r]
        chain.append(r)
    return chain


def _sign_variations(values):
    count = 0
    prev = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain, x):
    return _sign_variations([poly_eval(c, x) for c in chain])


def _variations_at_inf(chain, positive):
    vals = []
    for c in chain:
        lead = c[-1]
        if not positive and degree(c) % 2 == 1:
            lead = -lead
        vals.append(lead)
    return _sign_variations(vals)


def count_roots_between(chain, a, b):
    """Distinct real roots in (a, b] for the square-free chain head."""
    return _variations_at(chain, a) - _variations_at(chain, b)


def count_real_roots(coeffs, lo=None, hi=None):
    """Number of distinct real roots in the half-open interval (lo, hi].

    ``None`` endpoints mean -inf / +inf.  Multiple roots count once.
    """
    f = square_free_part(coeffs)
    if degree(f) < 1:
        return 0
    chain = sturm_chain(f)
    va = _variations_at(chain, lo) if lo is not None \
        else _variations_at_inf(chain, positive=False)
    vb = _variations_at(chain, hi) if hi is not None \
        else _variations_at_inf(chain, positive=True)
    return va - vb


def root_bound(coeffs):
    """Cauchy bound: all real roots lie strictly inside (-M, M)."""
    coeffs = trim(coeffs)
    if len(coeffs) <= 1:
        return Fraction(1)
    lead = abs(Fraction(coeffs[-1]))
    return Fraction(1) + max(abs(Fraction(c)) / lead for c in coeffs[:-1])


def _log2_abs(value):
    value = Fraction(abs(value))
    return value.numerator.bit_length() - value.denominator.bit_length()


def _certified_root_bound(f, chain):
    """A power-of-two M with all real roots in (-M, M), certified by Sturm.

    Starts from a Fujiwara-style float estimate (the Cauchy bound can be
    astronomically loose for the big-coefficient discriminants showing up
    here) and doubles until the Sturm count over (-M, M) equals the count
    over the whole line.
    """
    n = degree(f)
    lead_bits = _log2_abs(f[-1])
    log_est = 1.0
    for k in range(1, n + 1):
        c = f[n - k]
        if c:
            log_est = max(log_est, (_log2_abs(c) - lead_bits) / k + 2)
    bound = Fraction(2) ** max(1, int(log_est) + 1)
    total = (_variations_at_inf(chain, positive=False)
             - _variations_at_inf(chain, positive=True))
    while count_roots_between(chain, -bound, bound) != total:
        bound *= 2
    return bound


def _isolate_square_free(f):
    """Disjoint isolating intervals (lo, hi) for a square-free int poly.

    Exact rational roots come back as degenerate intervals lo == hi; all
    other brackets satisfy f(lo)*f(hi) < 0.
    """
    if degree(f) < 1:
        return []
    chain = sturm_chain(f)
    bound = _certified_root_bound(f, chain)
    out = []
    stack = [(-bound, bound, count_roots_between(chain, -bound, bound))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if poly_eval(f, mid) == 0:
            out.append((mid, mid))
            eps = (hi - lo) / 4
            while count_roots_between(chain, mid, mid + eps) > 0:
                eps /= 2
            # Pull the left endpoint off the exact root as well, so every
            # interval on the stack has non-root endpoints.
            eps_l = (hi - lo) / 4
            while count_roots_between(chain, mid - eps_l, mid) > 1 \
                    or poly_eval(f, mid - eps_l) == 0:
                eps_l /= 2
            stack.append((lo, mid - eps_l,
                          count_roots_between(chain, lo, mid - eps_l)))
            stack.append((mid + eps, hi,
                          count_roots_between(chain, mid + eps, hi)))
        else:
            left = count_roots_between(chain, lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, count - left))
    # Split counts guarantee one root per interval; every non-degenerate
    # bracket then has a sign change because its endpoints are non-roots.
    return sorted(out)


def _isolate_with_factors(coeffs):
    """Isolation records [lo, hi, multiplicity, square-free factor]."""
    found = []
    for factor, mult in square_free_decomposition(coeffs):
        for lo, hi in _isolate_square_free(factor):
            found.append([lo, hi, mult, factor])
    # Roots of distinct Yun factors are distinct; shrink overlapping (or
    # endpoint-touching-a-root) intervals until pairwise disjoint.
    while True:
        found.sort(key=lambda r: (r[0], r[1]))
        clash = None
        for i in range(len(found) - 1):
            a, b = found[i], found[i + 1]
            if a[3] is b[3]:
                continue  # same factor: split points are never roots
            overlap = a[1] > b[0]
            touch = a[1] == b[0] and (a[0] == a[1] or b[0] == b[1])
            if overlap or touch:
                clash = (a, b)
                break
        if clash is None:
            return found
        candidates = [r for r in clash if r[0] != r[1]]
        target = max(candidates, key=lambda r: r[1] - r[0])
        _halve(target)


def _halve(record):
    lo, hi, _, factor = record
    mid = (lo + hi) / 2
    val = poly_eval(factor, mid)
    if val == 0:
        record[0] = record[1] = mid
    elif poly_eval(factor, lo) * val < 0:
        record[1] = mid
    else:
        record[0] = mid


def isolate_real_roots(coeffs):
    """Isolate all real roots of a rational polynomial.

    Returns a sorted list of ((lo, hi), multiplicity) with pairwise
    disjoint rational intervals, each containing exactly one distinct real
    root.  Exact rational roots appear as degenerate intervals.
    """
    return [((lo, hi), mult)
            for lo, hi, mult, _ in _isolate_with_factors(coeffs)]


def refine_root(coeffs, lo, hi, width):
    """Shrink a sign-change bracket down to the requested width.

    Degenerate brackets (exact roots) are returned unchanged; otherwise the
    input must satisfy f(lo)*f(hi) < 0 and that invariant is maintained.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return lo, hi
    flo = poly_eval(coeffs, lo)
    fhi = poly_eval(coeffs, hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("interval does not bracket a sign change")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = poly_eval(coeffs, mid)
        if fmid == 0:
            return mid, mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return lo, hi


# -- positive roots of even polynomials -------------------------------------


def sqrt_bounds(q, extra_bits=40):
    """Certified rational bounds (lo, hi) with lo <= sqrt(q) <= hi."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << extra_bits
    r = isqrt(q.numerator * q.denominator * scale * scale)
    den = q.denominator * scale
    return Fraction(r, den), Fraction(r + 1, den)


def is_even_polynomial(coeffs):
    return all(c == 0 for c in coeffs[1::2])


def positive_roots_of_even_poly(coeffs, width):
    """Isolate and refine the positive real roots of an even polynomial.

    Substitutes t = x**2 (halving the degree), isolates positive t-roots,
    and maps each back to a certified x-bracket of width <= ``width``.
    Returns a sorted list of ((lo, hi), multiplicity).
    """
    coeffs = trim(coeffs)
    if not is_even_polynomial(coeffs):
        raise ValueError("polynomial is not even")
    t_poly = coeffs[0::2]
    width = Fraction(width)
    roots = []
    for t_lo, t_hi, mult, factor in _isolate_with_factors(t_poly):
        if t_hi <= 0:
            continue
        if t_lo < 0 < t_hi and t_lo != t_hi:
            # Bracket straddles zero: keep it only if the root is positive.
            f0 = poly_eval(factor, 0)
            if f0 == 0 or f0 * poly_eval(factor, t_hi) > 0:
                continue
            t_lo = Fraction(0)
        if t_lo == t_hi:
            if t_lo <= 0:
                continue
            bits = 40
            while True:
                x_lo, x_hi = sqrt_bounds(t_lo, bits)
                if x_lo * x_lo == t_lo:
                    roots.append(((x_lo, x_lo), mult))
                    break
                if x_hi - x_lo <= width:
                    roots.append(((x_lo, x_hi), mult))
                    break
                bits *= 2
            continue
        # Non-degenerate: shrink in t until strictly positive and narrow,
        # then transfer the bracket through the square root.
        f_x = [Fraction(0)] * (2 * len(factor) - 1)
        f_x[0::2] = [Fraction(c) for c in factor]
        t_width = min(width * width, Fraction(1, 4096))
        while True:
            t_lo, t_hi = refine_root(factor, t_lo, t_hi, t_width)
            if t_lo == t_hi:
                break
            if t_lo > 0:
                x_lo = sqrt_bounds(t_lo)[0]
                x_hi = sqrt_bounds(t_hi)[1]
                if poly_eval(f_x, x_lo) * poly_eval(f_x, x_hi) < 0:
                    roots.append((refine_root(f_x, x_lo, x_hi, width), mult))
                    break
            t_width /= 16
        if t_lo == t_hi and t_lo > 0:
            bits = 40
            while True:
                x_lo, x_hi = sqrt_bounds(t_lo, bits)
                if x_lo * x_lo == t_lo:
                    roots.append(((x_lo, x_lo), mult))
                    break
                if x_hi - x_lo <= width:
                    roots.append(((x_lo, x_hi), mult))
                    break
                bits *= 2
    return sorted(roots)
