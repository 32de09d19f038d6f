"""The moment functional: discrete weights, norms, and moments.

The linear functional L acts on polynomials in the energy variable with
L(1) = 1 and makes the two generated families orthogonal.  At half-integer
N it is realized by a finite discrete measure supported on the roots of
the critical polynomial; everything here is computed along two independent
routes and cross-checked:

* norms: Pochhammer closed forms versus products of the b-sequence
  b_1 = (N - 2N^2) zeta^2, b_n = [n(n-1) + 2N - 4N^2] zeta^2 (n >= 2);
* moments: exact recursion through the polynomial coefficients versus
  weighted node sums at sampled rational couplings.

Norms and moments are exact polynomials in zeta; node positions and
weights are numeric (the nodes are algebraic numbers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .polynomial import MultiPoly
from .recurrence import EVEN, ODD, as_half_integer, critical_polynomial, generate
from .spectra import exceptional_points, rational_energy_coeffs

_ZETA = MultiPoly.variable("zeta")
_N = MultiPoly.variable("N")


class SingularWeightSystemError(RuntimeError):
    """The weight system is singular (the coupling sits on an
    exceptional point)."""


class MomentRouteMismatchError(RuntimeError):
    """Weighted node sums disagree with the exact moment recursion."""


def _check_family(family):
    if family not in (EVEN, ODD):
        raise ValueError(f"family must be {EVEN!r} or {ODD!r}")
    return family


def b_term(n, N=None):
    """The norm-product sequence: b_1 = (N - 2N^2) zeta^2 and
    b_n = [n(n-1) + 2N - 4N^2] zeta^2 for n >= 2.

    Note b_1 is half of minus the recurrence's step coefficient at n = 1,
    while b_n = -(step coefficient) for n >= 2; the worked value
    N_1^P = b_1 = -zeta^2 at N = 1 pins this normalization.
    """
    if n < 1:
        raise ValueError("b-sequence starts at n = 1")
    nn = _N if N is None else MultiPoly.constant(Fraction(N))
    if n == 1:
        return (nn - 2 * nn**2) * _ZETA**2
    return (n * (n - 1) + 2 * nn - 4 * nn**2) * _ZETA**2


def _rising(base, count):
    """Product base (base+1) ... (base+count-1) over MultiPoly values."""
    out = MultiPoly.one()
    for j in range(count):
        out = out * (base + j)
    return out


@dataclass(frozen=True)
class NormSequence:
    """Norms L(X_n^2) for one family; values[i] belongs to index
    first_index + i."""

    family: str
    N: Fraction | None
    first_index: int
    values: tuple

    def norm(self, n):
        i = n - self.first_index
        if not 0 <= i < len(self.values):
            raise IndexError(f"norm index {n} out of range")
        return self.values[i]


def norms_closed_form(family, n_max, N=None):
    """Pochhammer closed forms of the norms.

    Cosine family: N_0 = 1 and N_n = zeta^(2n)/2 (1-2N)_n (2N)_n for
    n >= 1.  Sine family: N_1 = 1 and, cancelling the 2N(1-2N)
    denominator exactly, N_n = zeta^(2n-2) (2-2N)_{n-1} (2N+1)_{n-1} for
    n >= 2; at fixed N in {0, 1/2} the uncancelled denominator vanishes
    and the request is rejected.
    """
    _check_family(family)
    if N is not None:
        N = Fraction(N)
    nn = _N if N is None else MultiPoly.constant(N)
    if family == EVEN:
        values = [MultiPoly.one()]
        for n in range(1, n_max + 1):
            values.append(_ZETA ** (2 * n) * Fraction(1, 2)
                          * _rising(1 - 2 * nn, n) * _rising(2 * nn, n))
        return NormSequence(family=family, N=N, first_index=0,
                            values=tuple(values))
    if N is not None and N in (Fraction(0), Fraction(1, 2)):
        raise ValueError("sine-family norms need N outside {0, 1/2}")
    values = [MultiPoly.one()]
    for n in range(2, n_max + 1):
        values.append(_ZETA ** (2 * n - 2)
                      * _rising(2 - 2 * nn, n - 1)
                      * _rising(2 * nn + 1, n - 1))
    return NormSequence(family=family, N=N, first_index=1,
                        values=tuple(values))


def norms_from_b(family, n_max, N=None):
    """Norms as running products of the b-sequence.

    Cosine: N_n = prod_{k=1..n} b_k; sine: N_n = prod_{k=2..n} b_k.
    Must agree exactly with the closed forms.
    """
    _check_family(family)
    if N is not None:
        N = Fraction(N)
        if family == ODD and N in (Fraction(0), Fraction(1, 2)):
            raise ValueError("sine-family norms need N outside {0, 1/2}")
    start = 1 if family == EVEN else 2
    values = [MultiPoly.one()]
    acc = MultiPoly.one()
    for n in range(start, n_max + 1):
        acc = acc * b_term(n, N)
        values.append(acc)
    return NormSequence(family=family, N=N, first_index=start - 1,
                        values=tuple(values))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite node/weight realization of L at fixed numeric coupling."""

    family: str
    N: Fraction
    zeta: Fraction
    nodes: tuple
    weights: tuple
    residual: float
    complex_regime: bool

    @property
    def size(self):
        return len(self.nodes)


def _reject_exceptional(family, N, zeta):
    """Exact check: the nodes are simple iff the discriminant of the
    critical polynomial does not vanish at the (rational) coupling."""
    from .spectra import discriminant_in_zeta
    problem = critical_polynomial(family, N)
    coeffs = discriminant_in_zeta(problem)
    if coeffs is None:
        return
    value = sum(c * zeta ** k for k, c in enumerate(coeffs))
    if value == 0:
        raise SingularWeightSystemError(
            f"zeta={zeta} is an exceptional point of the (N={N}, "
            f"{family}) sector; the weight system is singular there")


def _eval_mp(poly, bindings):
    """Evaluate a MultiPoly at mpmath numbers, coefficients taken exactly."""
    total = mpmath.mpc(0)
    for exps, coeff in poly.terms.items():
        term = mpmath.mpf(coeff.numerator) / coeff.denominator
        for name, e in zip(poly.vars, exps):
            if e:
                term = term * bindings[name] ** e
        total += term
    return total


def _nodes_and_weights_mp(family, N, zeta, dps):
    """Nodes and weights in extended precision.

    The weight magnitudes span many orders of magnitude for larger
    sectors (they decay roughly factorially with the node index), so the
    defining system is solved well beyond double precision and rounded
    only at the interface.
    """
    problem = critical_polynomial(family, N)
    coeffs = rational_energy_coeffs(problem, zeta)
    size = len(coeffs) - 1
    first = 0 if family == EVEN else 1
    fam = generate(family, first + size - 1 if size > 1 else first + 1, N)
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator
              for c in reversed(coeffs)]
        if size == 1:
            nodes = [-cs[1] / cs[0]]
        else:
            nodes = mpmath.polyroots(cs, maxsteps=200, extraprec=60)
        nodes = sorted((mpmath.mpc(r) for r in nodes),
                       key=lambda z: (mpmath.re(z), mpmath.im(z)))
        zmp = mpmath.mpf(zeta.numerator) / zeta.denominator
        rows = []
        for n in range(first, first + size):
            member = fam.members[n]
            rows.append([_eval_mp(member, {"E": node, "zeta": zmp})
                         for node in nodes])
        matrix = mpmath.matrix(rows)
        rhs = mpmath.matrix([1] + [0] * (size - 1))
        try:
            weights = mpmath.lu_solve(matrix, rhs)
        except ZeroDivisionError as exc:
            raise SingularWeightSystemError(
                f"weight system singular at zeta={zeta} (exceptional "
                "point)") from exc
        residual = 0.0
        for r in range(size):
            acc = -rhs[r]
            scale = mpmath.mpf(1)
            for k in range(size):
                acc += matrix[r, k] * weights[k]
                scale = max(scale, abs(matrix[r, k]))
            residual = max(residual, float(abs(acc) / scale))
        return nodes, [weights[k] for k in range(size)], residual


def solve_weights(family, N, zeta, residual_tol=1e-10, dps=40):
    """Solve the weight system sum_k w_k X_n(E_k) = delta on the lowest
    index.

    Nodes are the roots of the critical polynomial (cosine family: 2N of
    them, rows n = 0..2N-1; sine family: 2N-1 nodes, rows n = 1..2N-1).
    Beyond the first exceptional point nodes and weights turn complex and
    are reported flagged; at an exceptional point the system is singular
    and rejected.  The row-scaled residual is checked against
    ``residual_tol``.
    """
    _check_family(family)
    N = as_half_integer(N)
    zeta = Fraction(zeta)
    _reject_exceptional(family, N, zeta)
    nodes, weights, residual = _nodes_and_weights_mp(family, N, zeta, dps)
    if residual > residual_tol:
        raise SingularWeightSystemError(
            f"weight system residual {residual:.3e} at zeta={zeta}; the "
            "coupling sits on (or numerically at) an exceptional point")
    nodes_c = tuple(complex(z) for z in nodes)
    scale = 1.0 + max(abs(z) for z in nodes_c)
    complex_regime = any(abs(z.imag) > 1e-12 * scale for z in nodes_c)
    return DiscreteMeasure(family=family, N=N, zeta=zeta, nodes=nodes_c,
                           weights=tuple(complex(w) for w in weights),
                           residual=residual,
                           complex_regime=complex_regime)


def verify_orthogonality(measure, n_max=None, extra_pairs=(),
                         norm_tol=1e-9, dps=40):
    """Max residual of sum_k w_k X_n(E_k) X_m(E_k) = N_n delta_nm.

    The default range keeps n + m <= 2L - 2 (the quadrature is only
    guaranteed faithful there); ``extra_pairs`` admits worked-example
    indices beyond it.  Off-diagonal entries are compared to 0, diagonal
    entries to the closed-form norms; the defining system is re-solved in
    extended precision so the result reflects the measure, not float64
    roundoff of the reported fields.
    """
    family, N = measure.family, measure.N
    first = 0 if family == EVEN else 1
    size = measure.size
    if n_max is None:
        n_max = first + size - 1
    pairs = [(n, m)
             for n in range(first, n_max + 1)
             for m in range(first, n_max + 1)
             if n + m <= 2 * size - 2 + 2 * first]
    pairs.extend(extra_pairs)
    top = max(max(n, m) for n, m in pairs)
    fam = generate(family, max(top, first + 1), N)
    norms = norms_closed_form(family, top, N)
    nodes, weights, _ = _nodes_and_weights_mp(family, N, measure.zeta, dps)
    worst = 0.0
    with mpmath.workdps(dps):
        zmp = mpmath.mpf(measure.zeta.numerator) / measure.zeta.denominator
        vals = {}
        for n in range(first, top + 1):
            member = fam.members[n]
            vals[n] = [_eval_mp(member, {"E": node, "zeta": zmp})
                       for node in nodes]
        for n, m in pairs:
            terms = [w * vals[n][k] * vals[m][k]
                     for k, w in enumerate(weights)]
            s = mpmath.fsum(terms)
            scale = max(mpmath.mpf(1), sum(abs(t) for t in terms))
            if n == m:
                expect = norms.norm(n).eval({"zeta": measure.zeta})
                expect = expect.constant_value()
                expect = mpmath.mpf(expect.numerator) / expect.denominator
                scale = max(scale, abs(expect))
                worst = max(worst, float(abs(s - expect) / scale))
            else:
                worst = max(worst, float(abs(s) / scale))
    if worst > norm_tol:
        raise MomentRouteMismatchError(
            f"orthogonality residual {worst:.3e} exceeds {norm_tol:.1e}")
    return worst


@dataclass(frozen=True)
class MomentSequence:
    """Moments mu_n = L(E^n) as exact polynomials in zeta, n = 0..n_max."""

    family: str
    N: Fraction
    values: tuple

    def moment(self, n):
        return self.values[n]


def _moments_exact(family, N, n_max):
    """Moments from L(X_n) = 0 applied to exact coefficients."""
    first = 0 if family == EVEN else 1
    need = n_max + first
    fam = generate(family, max(need, first + 1), N)
    mus = [MultiPoly.one()]
    for m in range(1, n_max + 1):
        member = fam.members[m + first]
        lead = member.coefficient("E", m)
        acc = MultiPoly.zero()
        for k in range(m):
            acc = acc + member.coefficient("E", k) * mus[k]
        mus.append(-acc * (1 / lead.constant_value()))
    return mus


def _default_samples(family, N):
    points = exceptional_points(N, family)
    if not points:
        return [Fraction(1, 2), Fraction(1), Fraction(2)]
    lo = points[0].interval[0]
    return [lo * Fraction(k, 4) for k in (1, 2, 3)]


def moments(family, N, n_max, samples=None, tol=1e-9, dps=40):
    """Exact moment sequence, cross-checked against weighted node sums.

    The exact route expands L(X_n) = 0 in the polynomial coefficients;
    the numeric route sums w_k E_k^n over the solved measure at each
    sampled rational coupling (in extended precision).  A disagreement
    beyond ``tol`` signals a convention bug and raises
    MomentRouteMismatchError.
    """
    _check_family(family)
    N = as_half_integer(N)
    mus = _moments_exact(family, N, n_max)
    if samples is None:
        samples = _default_samples(family, N)
    for zeta in samples:
        zeta = Fraction(zeta)
        nodes, weights, _ = _nodes_and_weights_mp(family, N, zeta, dps)
        with mpmath.workdps(dps):
            for n, mu in enumerate(mus):
                node_sum = sum(w * node ** n
                               for w, node in zip(weights, nodes))
                value = mu.eval({"zeta": zeta}).constant_value()
                exact = mpmath.mpf(value.numerator) / value.denominator
                scale = max(1.0, float(abs(exact)))
                if float(abs(node_sum - exact)) / scale > tol:
                    raise MomentRouteMismatchError(
                        f"mu_{n} mismatch at zeta={zeta}: node sum "
                        f"{complex(node_sum)} vs exact {complex(exact)}")
    return MomentSequence(family=family, N=N, values=tuple(mus))
