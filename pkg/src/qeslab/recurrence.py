"""Generation of the model's orthogonal polynomial families.

Two families of Bender-Dunne-type polynomials in the energy variable E are
generated by one three-term recurrence,

    X_{n+1} = 2(E - 4 n^2) X_n + zeta^2 [4 N^2 - 2 N - n (n - 1)] X_{n-1},

with cosine-sector seeds P_0 = 1, P_1 = E and sine-sector seeds Q_1 = 1,
Q_2 = 2(E - 4).  Setting Q_0 = 0 makes the seed step a special case of the
same recurrence.  The coefficient of X_{n-1} vanishes identically at
n = 2N, so for half-integer N the families factorize through the critical
member X_{2N}, whose roots carry the quasi-exact part of the spectrum.

Families can be generated with N symbolic (coefficients polynomial in
E, zeta, N) or at a fixed rational N (the fast path for sweeps).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import MultiPoly, UniPolyView, uni_divmod

#: Parity tags: "c" = cosine/even family (P), "s" = sine/odd family (Q).
EVEN = "c"
ODD = "s"

_E = MultiPoly.variable("E")
_ZETA = MultiPoly.variable("zeta")
_N = MultiPoly.variable("N")


def _check_parity(parity):
    if parity not in (EVEN, ODD):
        raise ValueError(f"parity must be {EVEN!r} or {ODD!r}, got {parity!r}")
    return parity


def as_half_integer(N):
    """Validate that N is a positive half-integer and return it exactly."""
    N = Fraction(N)
    two_n = 2 * N
    if two_n.denominator != 1 or two_n <= 0:
        raise ValueError(f"N must be a positive half-integer, got {N}")
    return N


def recurrence_step_coeff(n, N=None):
    """Coefficient of X_{n-1} in the step to X_{n+1}:
    zeta^2 [4N^2 - 2N - n(n-1)]."""
    if N is None:
        bracket = 4 * _N**2 - 2 * _N - n * (n - 1)
    else:
        N = Fraction(N)
        bracket = MultiPoly.constant(4 * N**2 - 2 * N - n * (n - 1))
    return _ZETA**2 * bracket


@dataclass(frozen=True)
class PolyFamily:
    """An indexed family of exact polynomials in E (and zeta, maybe N).

    ``members[n]`` is the n-th polynomial; for the sine family the unused
    index 0 holds the zero polynomial.
    """

    parity: str
    members: tuple
    symbolic_N: bool
    fixed_N: Fraction | None

    @property
    def n_max(self):
        return len(self.members) - 1

    def member(self, n):
        first = 0 if self.parity == EVEN else 1
        if not first <= n <= self.n_max:
            raise IndexError(f"member {n} outside [{first}, {self.n_max}]")
        return self.members[n]

    def check_recurrence(self):
        """Re-verify every generated member against the recurrence."""
        N = None if self.symbolic_N else self.fixed_N
        for n in range(1, self.n_max):
            step = (2 * (_E - 4 * n**2) * self.members[n]
                    + recurrence_step_coeff(n, N) * self.members[n - 1])
            if not (self.members[n + 1] - step).is_zero():
                return False
        return True


def generate(parity, n_max, N=None):
    """Generate a family up to index ``n_max`` by exact iteration.

    ``N=None`` keeps N as an indeterminate; a Fraction fixes it.
    """
    _check_parity(parity)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if N is not None:
        N = Fraction(N)
    if parity == EVEN:
        members = [MultiPoly.one(), _E]
    else:
        members = [MultiPoly.zero(), MultiPoly.one()]
    for n in range(1, n_max):
        nxt = (2 * (_E - 4 * n**2) * members[n]
               + recurrence_step_coeff(n, N) * members[n - 1])
        members.append(nxt)
    return PolyFamily(parity=parity, members=tuple(members),
                      symbolic_N=N is None, fixed_N=N)


@dataclass(frozen=True)
class SpectralProblem:
    """The critical polynomial of one (N, parity) sector, univariate in E."""

    N: Fraction
    parity: str
    poly: UniPolyView

    def degree(self):
        return self.poly.degree()


def critical_polynomial(parity, N):
    """The critical member X_{2N} at fixed half-integer N, viewed in E.

    Its roots are the quasi-exact energy levels; the sine family needs
    2N >= 2 because Q indexing starts at 1.
    """
    _check_parity(parity)
    N = as_half_integer(N)
    index = int(2 * N)
    if parity == ODD and index < 2:
        raise ValueError("sine family requires 2N >= 2")
    family = generate(parity, index, N)
    view = UniPolyView.from_multipoly(family.members[index], "E")
    return SpectralProblem(N=N, parity=parity, poly=view)


def factor_check(parity, N, n):
    """Divide member 2N+n by the critical member 2N.

    Returns (quotient R_n, exact) where ``exact`` is True iff the division
    leaves no remainder.  For this model the factorization X_{2N+n} =
    R_n X_{2N} is exact for every half-integer N.
    """
    _check_parity(parity)
    N = as_half_integer(N)
    index = int(2 * N)
    if n < 1:
        raise ValueError("n must be >= 1")
    family = generate(parity, index + n, N)
    num = UniPolyView.from_multipoly(family.members[index + n], "E")
    den = UniPolyView.from_multipoly(family.members[index], "E")
    quotient, remainder = uni_divmod(num, den)
    return quotient, remainder.is_zero()


def factor_r1():
    """First factorization quotient: R_1 = 2E - 32 N^2."""
    return 2 * _E - 32 * _N**2


def factor_r2():
    """Second factorization quotient:
    R_2 = 4E^2 - 16E(8N^2 + 4N + 1) + 4N[64N(2N+1)^2 - zeta^2]."""
    return (4 * _E**2
            - 16 * _E * (8 * _N**2 + 4 * _N + 1)
            + 4 * _N * (64 * _N * (2 * _N + 1)**2 - _ZETA**2))


def zeta_zero_limit(parity, n):
    """Exact zeta -> 0 member: a product of 2(E - 4 k^2) factors.

    The cosine seed P_1 = E contributes the k = 0 factor without its 2;
    the sine product starts at k = 1.
    """
    _check_parity(parity)
    if parity == EVEN:
        if n == 0:
            return MultiPoly.one()
        prod = _E
    else:
        if n < 1:
            raise ValueError("sine family starts at n = 1")
        prod = MultiPoly.one()
    for k in range(1, n):
        prod = prod * 2 * (_E - 4 * k**2)
    return prod
