"""Exact sparse multivariate polynomials over arbitrary-precision rationals.

The coefficient domain is ``fractions.Fraction`` (always reduced, positive
denominator), so every operation in this module is exact.  Polynomials live
in a fixed global variable universe ``(E, zeta, N, g)``; each polynomial
carries the ordered subset of variables it actually uses and operations
auto-align operands by variable name.  Terms are kept in a canonical form
(no zero coefficients, graded-lexicographic ordering for serialization), so
equality is structural.

Beyond ring arithmetic the module provides the univariate view used for
eliminating the energy variable (``UniPolyView``), exact resultants by two
fraction-free methods (Bareiss determinant of the Sylvester matrix and the
subresultant remainder sequence), and primitive-normalized discriminants.

Sign convention: ``resultant(p, q)`` is the determinant of the Sylvester
matrix whose first ``deg q`` rows hold the coefficients of ``p``.  In
particular ``resultant(E - a, E - b) == a - b`` and
``resultant(E**2 - g, 2*E) == -4*g``.
"""

from __future__ import annotations

import json
from fractions import Fraction

#: Global variable ordering; every MultiPoly uses a subsequence of this.
VARIABLES = ("E", "zeta", "N", "g")

_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Rat = Fraction


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _as_rat(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        vars = tuple(vars)
        for name in vars:
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
        if list(vars) != sorted(vars, key=_VAR_INDEX.__getitem__):
            raise ValueError("variables must follow the global order "
                             f"{VARIABLES}")
        if len(set(vars)) != len(vars):
            raise ValueError("duplicate variable")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for vars {vars}")
            coeff = _as_rat(coeff)
            if coeff != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms",
                           {e: c for e, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def _make(cls, vars, terms):
        """Trusted constructor: terms already clean and aligned."""
        self = object.__new__(cls)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def constant(cls, value, vars=()):
        value = _as_rat(value)
        vars = tuple(vars)
        if value == 0:
            return cls._make(vars, {})
        return cls._make(vars, {(0,) * len(vars): value})

    @classmethod
    def variable(cls, name):
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        return cls._make((name,), {(1,): Fraction(1)})

    @classmethod
    def zero(cls, vars=()):
        return cls.constant(0, vars)

    @classmethod
    def one(cls, vars=()):
        return cls.constant(1, vars)

    # -- predicates and views ---------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        """The value of a constant polynomial as a Fraction."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, var):
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(exps[i] for exps in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, var, power):
        """The coefficient of ``var**power`` as a MultiPoly in the rest."""
        if var not in self.vars:
            if power == 0:
                return self
            return MultiPoly.zero(self.vars)
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                key = exps[:i] + exps[i + 1:]
                out[key] = coeff
        return MultiPoly._make(rest, out)

    # -- alignment ---------------------------------------------------------

    def with_vars(self, vars):
        """Re-express this polynomial over a superset of its variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for name in self.vars:
            if name not in vars:
                raise ValueError(f"{name!r} missing from target variables")
            pos.append(vars.index(name))
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(vars)
            for p, e in zip(pos, exps):
                new[p] = e
            out[tuple(new)] = coeff
        return MultiPoly._make(vars, out)

    def _aligned(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(_as_rat(other), self.vars)
        if self.vars == other.vars:
            return self, other
        merged = tuple(sorted(set(self.vars) | set(other.vars),
                              key=_VAR_INDEX.__getitem__))
        return self.with_vars(merged), other.with_vars(merged)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._aligned(other)
        except TypeError:
            return NotImplemented
        out = dict(a.terms)
        for exps, coeff in b.terms.items():
            s = out.get(exps, Fraction(0)) + coeff
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        return MultiPoly._make(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.vars,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly)
                       else -_as_rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                scale = _as_rat(other)
            except TypeError:
                return NotImplemented
            if scale == 0:
                return MultiPoly.zero(self.vars)
            return MultiPoly._make(
                self.vars, {e: c * scale for e, c in self.terms.items()})
        a, b = self._aligned(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return MultiPoly._make(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        # Hash ignores unused variables so it agrees with __eq__.
        used = frozenset(
            (tuple((self.vars[i], e) for i, e in enumerate(exps) if e), coeff)
            for exps, coeff in self.terms.items())
        return hash(used)

    # -- calculus and evaluation --------------------------------------------

    def derivative(self, var):
        if var not in self.vars:
            return MultiPoly.zero(self.vars)
        i = self.vars.index(var)
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return MultiPoly._make(self.vars, {k: v for k, v in out.items()
                                           if v != 0})

    def eval(self, bindings):
        """Exact partial evaluation; bound variables are removed.

        ``bindings`` maps variable names to Fractions (or ints).  Unbound
        variables survive in the result.
        """
        for name in bindings:
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
        values = {name: _as_rat(v) for name, v in bindings.items()
                  if name in self.vars}
        keep = tuple(v for v in self.vars if v not in values)
        out = {}
        for exps, coeff in self.terms.items():
            factor = coeff
            key = []
            for name, e in zip(self.vars, exps):
                if name in values:
                    factor *= values[name] ** e
                else:
                    key.append(e)
            key = tuple(key)
            s = out.get(key, Fraction(0)) + factor
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return MultiPoly._make(keep, out)

    def eval_numeric(self, bindings):
        """Evaluate with float/complex values for every variable."""
        missing = [v for v in self.vars if v not in bindings]
        if missing:
            raise ValueError(f"missing numeric bindings for {missing}")
        total = 0j
        for exps, coeff in self.terms.items():
            term = complex(coeff)
            for name, e in zip(self.vars, exps):
                if e:
                    term *= bindings[name] ** e
            total += term
        if abs(total.imag) == 0.0:
            return total.real
        return total

    # -- content and normalization -------------------------------------------

    def rational_content(self):
        """Positive Fraction c with self/c primitive over the integers."""
        if not self.terms:
            return Fraction(1)
        from math import gcd
        num = 0
        den = 1
        for coeff in self.terms.values():
            num = gcd(num, coeff.numerator)
            den = den * coeff.denominator // gcd(den, coeff.denominator)
        return Fraction(num, den)

    def primitive_normalized(self):
        """Divide by the rational content and force a positive leading
        coefficient in graded-lex order."""
        if not self.terms:
            return self
        content = self.rational_content()
        _, lead = self.leading()
        if lead < 0:
            content = -content
        return MultiPoly._make(
            self.vars, {e: c / content for e, c in self.terms.items()})

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self):
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                       reverse=True)
        return {
            "vars": list(self.vars),
            "terms": [
                {"exps": list(exps),
                 "num": str(coeff.numerator),
                 "den": str(coeff.denominator)}
                for exps, coeff in items
            ],
        }

    @classmethod
    def from_json_obj(cls, obj):
        vars = tuple(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            coeff = Fraction(int(t["num"]), int(t["den"]))
            terms[tuple(t["exps"])] = coeff
        return cls(vars, terms)

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    # -- display -----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                       reverse=True)
        for exps, coeff in items:
            factors = []
            for name, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def exact_div(num, den):
    """Exact polynomial division ``num / den``.

    Raises InexactDivisionError if ``den`` does not divide ``num``.
    """
    if not isinstance(den, MultiPoly):
        den = MultiPoly.constant(_as_rat(den))
    if not isinstance(num, MultiPoly):
        num = MultiPoly.constant(_as_rat(num))
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return MultiPoly.zero(num.vars)
    if den.is_constant():
        return num * (1 / den.constant_value())
    num, den = num._aligned(den)
    d_exps, d_coeff = den.leading()
    quotient = {}
    rest = dict(num.terms)
    while rest:
        r_exps = max(rest, key=_grlex_key)
        r_coeff = rest[r_exps]
        q_exps = tuple(a - b for a, b in zip(r_exps, d_exps))
        if any(e < 0 for e in q_exps):
            raise InexactDivisionError("division leaves a remainder")
        q_coeff = r_coeff / d_coeff
        quotient[q_exps] = q_coeff
        for e2, c2 in den.terms.items():
            key = tuple(a + b for a, b in zip(q_exps, e2))
            s = rest.get(key, Fraction(0)) - q_coeff * c2
            if s == 0:
                rest.pop(key, None)
            else:
                rest[key] = s
    return MultiPoly._make(num.vars, quotient)


def divides(den, num):
    """True iff ``den`` divides ``num`` exactly."""
    try:
        exact_div(num, den)
        return True
    except InexactDivisionError:
        return False


class UniPolyView:
    """A MultiPoly viewed as univariate in one main variable.

    Coefficients are dense (index = degree) MultiPoly values in the
    remaining variables; the leading coefficient is nonzero.
    """

    __slots__ = ("main_var", "coeffs")

    def __init__(self, main_var, coeffs):
        if main_var not in _VAR_INDEX:
            raise ValueError(f"unknown variable {main_var!r}")
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            raise ValueError("zero polynomial has no univariate view")
        for c in coeffs:
            if main_var in c.vars and c.degree(main_var) > 0:
                raise ValueError("coefficients must not involve the main "
                                 "variable")
        object.__setattr__(self, "main_var", main_var)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPolyView is immutable")

    @classmethod
    def from_multipoly(cls, poly, main_var):
        if poly.is_zero():
            raise ValueError("zero polynomial has no univariate view")
        deg = poly.degree(main_var)
        coeffs = [poly.coefficient(main_var, k) for k in range(deg + 1)]
        return cls(main_var, coeffs)

    def to_multipoly(self):
        x = MultiPoly.variable(self.main_var)
        total = MultiPoly.zero((self.main_var,))
        for k, c in enumerate(self.coeffs):
            total = total + c * x ** k
        return total

    def degree(self):
        return len(self.coeffs) - 1

    def leading_coeff(self):
        return self.coeffs[-1]

    def derivative(self):
        if self.degree() == 0:
            raise ValueError("derivative of a constant is zero")
        return UniPolyView(self.main_var,
                           [c * k for k, c in enumerate(self.coeffs)][1:])

    def eval_rational(self, value):
        """Horner evaluation at an exact rational point of the main var."""
        value = _as_rat(value)
        acc = MultiPoly.zero(())
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def rational_coeffs(self):
        """Coefficients as Fractions (requires constant coefficients)."""
        return [c.constant_value() for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, UniPolyView):
            return NotImplemented
        return (self.main_var == other.main_var
                and list(self.coeffs) == list(other.coeffs))

    def __repr__(self):
        return (f"UniPolyView({self.main_var!r}, deg={self.degree()}, "
                f"{self.to_multipoly()})")


# -- resultants ------------------------------------------------------------


def sylvester_matrix(p, q):
    """Sylvester matrix of two univariate views in the same main variable."""
    if p.main_var != q.main_var:
        raise ValueError("main variables differ")
    m, n = p.degree(), q.degree()
    size = m + n
    a = list(reversed(p.coeffs))
    b = list(reversed(q.coeffs))
    zero = MultiPoly.zero(())
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def det_bareiss(matrix):
    """Fraction-free determinant of a square MultiPoly matrix."""
    n = len(matrix)
    if n == 0:
        return MultiPoly.one(())
    a = [list(row) for row in matrix]
    sign = 1
    prev = MultiPoly.one(())
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(())
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j],
                                    prev)
            a[i][k] = MultiPoly.zero(())
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _pseudo_rem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.

    Inputs and output are dense MultiPoly coefficient lists (index=degree).
    """
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    e = da - db + 1
    r = list(a)
    while True:
        while r and r[-1].is_zero():
            r.pop()
        dr = len(r) - 1
        if dr < db:
            break
        lr = r[-1]
        r = [lb * c for c in r]
        for j, bc in enumerate(b):
            r[dr - db + j] = r[dr - db + j] - lr * bc
        e -= 1
    if r and e > 0:
        scale = lb ** e
        r = [scale * c for c in r]
    return r


def _resultant_subresultant(p, q):
    """Exact resultant via the subresultant PRS (Sylvester convention)."""
    a = list(p.coeffs)
    b = list(q.coeffs)
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b = b, a
        if (da * db) % 2 == 1:
            sign = -sign
        da, db = db, da
    if db == 0:
        res = b[0] ** da
        return -res if sign < 0 else res
    g = MultiPoly.one(())
    h = MultiPoly.one(())
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _pseudo_rem(a, b)
        if not r:
            return MultiPoly.zero(())
        denom = g * h ** delta
        a = b
        b = [exact_div(c, denom) for c in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g ** delta, h ** (delta - 1))
        if len(b) - 1 == 0:
            deg_a = len(a) - 1
            res = b[0] ** deg_a
            if deg_a >= 2:
                res = exact_div(res, h ** (deg_a - 1))
            return -res if sign < 0 else res


def resultant(p, q, method="auto"):
    """Exact resultant of two univariate views (same main variable).

    ``method`` is one of ``auto``, ``bareiss``, ``subresultant``; the two
    fraction-free routes agree exactly and ``auto`` picks by problem size.
    """
    if not isinstance(p, UniPolyView) or not isinstance(q, UniPolyView):
        raise TypeError("resultant expects UniPolyView operands")
    if p.main_var != q.main_var:
        raise ValueError("main variables differ")
    m, n = p.degree(), q.degree()
    if m == 0 and n == 0:
        return MultiPoly.one(())
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    if method == "auto":
        method = "bareiss" if m + n <= 8 else "subresultant"
    if method == "bareiss":
        return det_bareiss(sylvester_matrix(p, q))
    if method == "subresultant":
        return _resultant_subresultant(p, q)
    raise ValueError(f"unknown method {method!r}")


def uni_divmod(num, den):
    """Division with remainder in the main variable.

    Both arguments are UniPolyView instances over the same main variable,
    and the divisor's leading coefficient must be an invertible constant
    (true for every polynomial family in this package).  Returns
    (quotient, remainder) as MultiPoly values.
    """
    if num.main_var != den.main_var:
        raise ValueError("main variables differ")
    lead = den.leading_coeff()
    if not lead.is_constant():
        raise ValueError("divisor leading coefficient must be constant")
    inv = 1 / lead.constant_value()
    db = den.degree()
    rest = list(num.coeffs)
    q = [MultiPoly.zero(())] * max(len(rest) - db, 0)
    while len(rest) - 1 >= db:
        if rest[-1].is_zero():
            rest.pop()
            continue
        shift = len(rest) - 1 - db
        factor = rest[-1] * inv
        q[shift] = factor
        rest.pop()
        for j in range(db):
            rest[shift + j] = rest[shift + j] - factor * den.coeffs[j]
    while rest and rest[-1].is_zero():
        rest.pop()
    x = MultiPoly.variable(num.main_var)
    quotient = MultiPoly.zero(())
    for k, c in enumerate(q):
        quotient = quotient + c * x ** k
    remainder = MultiPoly.zero(())
    for k, c in enumerate(rest):
        remainder = remainder + c * x ** k
    return quotient, remainder


def discriminant(p, method="auto"):
    """Primitive-normalized discriminant of a univariate view.

    Computes resultant(p, p') / leading coefficient, then strips the
    rational content and fixes a positive graded-lex leading coefficient,
    which removes the scale and sign freedom of the raw resultant.
    """
    if p.degree() < 2:
        raise ValueError("discriminant requires degree >= 2")
    res = resultant(p, p.derivative(), method=method)
    quotient = exact_div(res, p.leading_coeff())
    return quotient.primitive_normalized()
