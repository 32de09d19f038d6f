"""Double-scaling limit: truncated operators, their spectra, and checks.

In the limit N -> infinity, zeta -> 0 with g = N*zeta fixed, the model's
recurrences become eigenvalue equations for two infinite tridiagonal
matrices: Xi (acting on the sine-sector coefficient vector, indices from 1)
and Theta (cosine sector, indices from 0).  Both have diagonal 4*i**2,
superdiagonal 1/2 and subdiagonal -2*g**2; Theta's extra corner term makes
its (0, 1) entry 1, which is exactly what encodes the seed relation
"first member = E * zeroth member".

Eigenvalue collisions of the truncations are located as positive real
zeros of the discriminant (in E) of the characteristic polynomial; they
converge, as the truncation grows, to the exceptional points of the
complex Mathieu Hamiltonian J^2 + 2ig(u^2 - v^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import realroots
from .polynomial import MultiPoly, UniPolyView, discriminant, exact_div
from .recurrence import generate

XI = "xi"
THETA = "theta"

_E = MultiPoly.variable("E")
_G = MultiPoly.variable("g")


@dataclass(frozen=True)
class TruncatedOperator:
    """A square truncation of Xi or Theta with exact entries in g."""

    kind: str
    size: int
    entries: tuple  # tuple of tuples of MultiPoly

    def entry(self, i, j):
        return self.entries[i][j]


def build(kind, level):
    """Exact ``level`` x ``level`` truncation of Xi or Theta.

    Xi rows use indices 1..level, Theta rows 0..level-1; both are
    tridiagonal with diagonal 4 i^2, superdiagonal 1/2 and subdiagonal
    -2 g^2, and Theta adds 1/2 at (0, 1) on top of the superdiagonal.
    """
    if kind not in (XI, THETA):
        raise ValueError(f"kind must be {XI!r} or {THETA!r}")
    if level < 2:
        raise ValueError("truncation level must be >= 2")
    offset = 1 if kind == XI else 0
    half = MultiPoly.constant(Fraction(1, 2))
    sub = -2 * _G**2
    zero = MultiPoly.zero()
    rows = []
    for r in range(level):
        i = r + offset
        row = []
        for c in range(level):
            if c == r:
                row.append(MultiPoly.constant(4 * i * i))
            elif c == r + 1:
                entry = half
                if kind == THETA and r == 0:
                    entry = entry + half  # corner term: seed row reads 1
                row.append(entry)
            elif c == r - 1:
                row.append(sub)
            else:
                row.append(zero)
        rows.append(tuple(row))
    return TruncatedOperator(kind=kind, size=level, entries=tuple(rows))


def charpoly(op):
    """det(M - E*I) by the tridiagonal three-term determinant recurrence.

    D_0 = 1, D_1 = m_00 - E,
    D_k = (m_kk - E) D_{k-1} - m_{k-1,k} m_{k,k-1} D_{k-2}; the result is
    exact in (E, g) with leading E-coefficient (-1)^size.
    """
    n = op.size
    d_prev = MultiPoly.one()
    d = op.entry(0, 0) - _E
    for k in range(1, n):
        off = op.entry(k - 1, k) * op.entry(k, k - 1)
        d, d_prev = (op.entry(k, k) - _E) * d - off * d_prev, d
    return d


def _rescaled_offdiagonals(op, break_pairing=False):
    """The similarity-transformed variant: super * 2g, sub / (2g).

    With ``break_pairing`` only the superdiagonal is rescaled, destroying
    the invariance of off-diagonal products (a control case).
    """
    two_g = 2 * _G
    rows = [list(r) for r in op.entries]
    for r in range(op.size - 1):
        rows[r][r + 1] = rows[r][r + 1] * two_g
        if not break_pairing:
            rows[r + 1][r] = exact_div(rows[r + 1][r], two_g)
    return TruncatedOperator(kind=op.kind, size=op.size,
                             entries=tuple(tuple(r) for r in rows))


def similarity_invariance_check(level, kind=XI, break_pairing=False):
    """True iff the off-diagonal rescaling leaves charpoly invariant.

    The rescaling multiplies each superdiagonal entry by 2g and divides
    the paired subdiagonal entry by 2g, so products of paired entries are
    unchanged and the characteristic polynomials agree identically in
    (E, g).  Breaking the pairing must (and does) destroy the equality.
    """
    op = build(kind, level)
    variant = _rescaled_offdiagonals(op, break_pairing=break_pairing)
    return charpoly(op) == charpoly(variant)


@dataclass(frozen=True)
class CriticalCoupling:
    """A positive real zero of the truncated charpoly discriminant."""

    kind: str
    level: int
    interval: tuple
    multiplicity: int
    converged: bool | None

    @property
    def g0(self):
        lo, hi = self.interval
        return float((lo + hi) / 2)


def discriminant_in_g(kind, level):
    """Exact discriminant (in E) of the charpoly, univariate in g."""
    poly = charpoly(build(kind, level))
    view = UniPolyView.from_multipoly(poly, "E")
    disc = discriminant(view)
    deg = disc.degree("g")
    return [disc.coefficient("g", k).constant_value()
            for k in range(deg + 1)]


def _positive_zeros(kind, level, width):
    coeffs = discriminant_in_g(kind, level)
    return realroots.positive_roots_of_even_poly(coeffs, width)


def critical_couplings(kind, level, width=Fraction(1, 10**8),
                       check_convergence=True, tolerance=1e-5):
    """Positive critical couplings g0 at one truncation level.

    With ``check_convergence`` each zero is flagged converged when the
    next level has a zero within ``tolerance``.
    """
    zeros = _positive_zeros(kind, level, width)
    next_zeros = None
    if check_convergence:
        next_zeros = [float((lo + hi) / 2)
                      for (lo, hi), _ in _positive_zeros(kind, level + 1,
                                                         width)]
    out = []
    for (lo, hi), mult in zeros:
        converged = None
        if next_zeros is not None:
            g0 = float((lo + hi) / 2)
            converged = any(abs(g0 - other) < tolerance
                            for other in next_zeros)
        out.append(CriticalCoupling(kind=kind, level=level,
                                    interval=(lo, hi), multiplicity=mult,
                                    converged=converged))
    return out


# -- direct limit of the recurrence ------------------------------------------


def limit_family(parity_seed, n_max, g=None):
    """The limit coefficients X^M_n from the limit recurrence.

    ``parity_seed`` is "P" (seeds 1, E) or "Q" (seeds 0, 1); the step is
    X^M_{n+1} = 2(E - 4 n^2) X^M_n + 4 g^2 X^M_{n-1}, i.e. the finite-N
    recurrence with zeta^2 [4N^2 - 2N - n(n-1)] -> 4 g^2.
    """
    if parity_seed == "P":
        members = [MultiPoly.one(), _E]
    elif parity_seed == "Q":
        members = [MultiPoly.zero(), MultiPoly.one()]
    else:
        raise ValueError("parity_seed must be 'P' or 'Q'")
    g_sq = _G**2 if g is None else MultiPoly.constant(Fraction(g) ** 2)
    for n in range(1, n_max):
        members.append(2 * (_E - 4 * n**2) * members[n]
                       + 4 * g_sq * members[n - 1])
    return members


def _pochhammer(a, k):
    """Rising factorial (a)_k for rational a, integer k >= -1."""
    a = Fraction(a)
    if k == -1:
        return 1 / (a - 1)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def rescaled_member(family_tag, n, N, g):
    """The finite-N member scaled onto the limit normalization.

    Returns 2^n N^(n-1) / (1+2N)_{n-1} * X_n(E, zeta=g/N) exactly; as
    N -> infinity this tends to twice the limit member X^M_n.
    """
    from .recurrence import EVEN, ODD
    N = Fraction(N)
    g = Fraction(g)
    parity = EVEN if family_tag == "P" else ODD
    fam = generate(parity, max(n, 1), N)
    member = fam.members[n].eval({"zeta": g / N})
    scale = (Fraction(2) ** n * N ** (n - 1)
             / _pochhammer(1 + 2 * N, n - 1))
    return member * scale


def _max_abs_coeff(poly):
    if poly.is_zero():
        return 0.0
    return max(abs(float(c)) for c in poly.terms.values())


def recurrence_limit_check(n_max, N_values=(100, 1000, 10000), g=1,
                           family="P", literal_mixed_term=False):
    """Residual of the limit relation on rescaled finite-N members.

    For each N the residual of
        -2 g^2 X_{n-1} + 4 n^2 X_n + 1/2 X_{n+1} - E X_n
    is evaluated on the rescaled members at zeta = g/N and the maximum
    absolute coefficient over n = 1..n_max is returned per N; the values
    decay at rate O(1/N).  With ``literal_mixed_term`` the sine-family
    check replaces the X_{n+1} term by the cosine-family member (the
    other reading of the limit relations), which breaks the decay.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    g = Fraction(g)
    deviations = {}
    for N in N_values:
        N = Fraction(N)
        members = {n: rescaled_member(family, n, N, g)
                   for n in range(0, n_max + 2)}
        cross = None
        if literal_mixed_term and family == "Q":
            cross = {n: rescaled_member("P", n, N, g)
                     for n in range(0, n_max + 2)}
        worst = 0.0
        for n in range(1, n_max + 1):
            upper = cross[n + 1] if cross is not None else members[n + 1]
            residual = (-2 * g**2 * members[n - 1]
                        + 4 * n**2 * members[n]
                        + Fraction(1, 2) * upper
                        - _E * members[n])
            worst = max(worst, _max_abs_coeff(residual))
        deviations[int(N)] = worst
    return deviations
