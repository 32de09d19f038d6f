"""Quasi-exact energy levels, closed-form checks, and exceptional points.

Energy levels at fixed coupling are the roots of the critical polynomial;
they are computed with a double-precision companion matrix, polished by a
few Newton steps in extended precision, and real roots are additionally
certified by exact Sturm counts on a rational bracket.  Exceptional points
(parameter values where two levels and their eigenvectors coalesce) are the
positive real zeros of the discriminant of the critical polynomial; these
are isolated and refined in exact arithmetic.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import realroots
from .polynomial import discriminant
from .recurrence import EVEN, ODD, SpectralProblem, critical_polynomial

__all__ = [
    "EnergyLevels", "ExceptionalPoint", "BranchCutAmbiguityError",
    "energies", "exceptional_points", "closed_form_values",
    "closed_form_check", "CLOSED_FORM_LEVELS",
]


class BranchCutAmbiguityError(ArithmeticError):
    """The principal-branch closed form disagrees with the root oracle."""


@dataclass(frozen=True)
class EnergyLevels:
    """All roots of one critical polynomial at a fixed coupling."""

    zeta: float
    roots: tuple
    classification: tuple  # "real" | "complex-conjugate-pair"
    residuals: tuple

    def real_roots(self):
        return [r for r, c in zip(self.roots, self.classification)
                if c == "real"]


@dataclass(frozen=True)
class ExceptionalPoint:
    """A positive real zero of the critical-polynomial discriminant."""

    N: Fraction
    parity: str
    interval: tuple  # certified rational bracket (lo, hi)
    multiplicity: int

    @property
    def zeta0(self):
        lo, hi = self.interval
        return float((lo + hi) / 2)

    @property
    def zeta0_times_N(self):
        return float(Fraction(self.N) * (self.interval[0]
                                         + self.interval[1]) / 2)


def rational_energy_coeffs(problem, zeta):
    """Coefficients of the critical polynomial at exact rational zeta."""
    zeta = Fraction(zeta)
    return [c.eval({"zeta": zeta}).constant_value() for c in problem.poly.coeffs]


def _polish_root(coeffs, root, steps=3):
    """Newton-polish one companion root in extended precision."""
    with mpmath.workdps(50):
        cs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
              for c in coeffs]
        dcs = [k * c for k, c in enumerate(cs)][1:]
        z = mpmath.mpc(root)
        for _ in range(steps):
            p = mpmath.polyval(cs[::-1], z)
            dp = mpmath.polyval(dcs[::-1], z)
            if dp == 0:
                break
            z = z - p / dp
        return complex(z)


def _residual(coeffs, root):
    num = abs(sum(float(c) * root ** k for k, c in enumerate(coeffs)))
    scale = sum(abs(float(c)) * max(1.0, abs(root)) ** k
                for k, c in enumerate(coeffs))
    return num / scale


def energies(problem, zeta, precision=1e-10):
    """Energy levels of a SpectralProblem at exact rational coupling.

    Real roots are certified by a Sturm count over a rational bracket;
    near-conjugate pairs of the remaining roots are tagged as such.
    """
    if precision <= 0:
        raise ValueError("precision must be positive")
    coeffs = rational_energy_coeffs(problem, zeta)
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("constant polynomial has no energy levels")
    if deg == 1:
        roots = [complex(-coeffs[0] / coeffs[1])]
    else:
        companion = np.roots([float(c) for c in reversed(coeffs)])
        roots = [_polish_root(coeffs, r) for r in companion]
    roots.sort(key=lambda r: (r.real, r.imag))
    scale = 1.0 + max(abs(r) for r in roots)
    classification = []
    for r in roots:
        tag = "complex-conjugate-pair"
        if abs(r.imag) < precision * scale:
            h = Fraction(max(precision * scale, 1e-9 * scale)
                         ).limit_denominator(10**15)
            center = Fraction(r.real).limit_denominator(10**15)
            if realroots.count_real_roots(coeffs, center - h, center + h) >= 1:
                tag = "real"
        classification.append(tag)
    residuals = tuple(_residual(coeffs, r) for r in roots)
    return EnergyLevels(zeta=float(zeta), roots=tuple(roots),
                        classification=tuple(classification),
                        residuals=residuals)


def discriminant_in_zeta(problem):
    """Exact discriminant of the critical polynomial, univariate in zeta."""
    if problem.degree() < 2:
        return None
    disc = discriminant(problem.poly)
    deg = disc.degree("zeta")
    return [disc.coefficient("zeta", k).constant_value()
            for k in range(deg + 1)]


def exceptional_points(N, parity, width=Fraction(1, 10**8)):
    """Positive real discriminant zeros for one (N, parity) sector.

    Negative mirror zeros are dropped (the discriminant is even in the
    coupling); each returned bracket has width <= ``width``.
    """
    problem = critical_polynomial(parity, N)
    coeffs = discriminant_in_zeta(problem)
    if coeffs is None or len(coeffs) <= 1:
        return []
    if realroots.is_even_polynomial(coeffs):
        found = realroots.positive_roots_of_even_poly(coeffs, width)
    else:
        found = []
        for (lo, hi), mult in realroots.isolate_real_roots(coeffs):
            if hi <= 0:
                continue
            sqf = realroots.square_free_part(coeffs)
            lo, hi = realroots.refine_root(sqf, lo, hi, width)
            if hi > 0:
                found.append(((max(lo, Fraction(0)), hi), mult))
    return [ExceptionalPoint(N=Fraction(N), parity=parity,
                             interval=interval, multiplicity=mult)
            for interval, mult in found]


# -- closed forms -----------------------------------------------------------

CLOSED_FORM_LEVELS = {
    "E1c": (EVEN, Fraction(1, 2)),
    "E2c": (EVEN, Fraction(1)),
    "E3c": (EVEN, Fraction(3, 2)),
    "E2s": (ODD, Fraction(1)),
    "E3s": (ODD, Fraction(3, 2)),
    "E4s": (ODD, Fraction(2)),
}


def _cubic_triple(offset, radicand_poly, omega_shift, linear_coeff, zeta):
    """Shared shape of the two cubic closed forms.

    Values are offset + (2/3) e^{i pi l/3} Omega
    - (2/3) e^{-i pi l/3} (3 zeta^2 - linear_coeff) / Omega for l = 0, +-2,
    with Omega = (omega_shift + 36 zeta^2 + 3^{3/2} sqrt(radicand))^{1/3}.
    """
    z2 = zeta * zeta
    radicand = complex(sum(c * z2 ** k for k, c in enumerate(radicand_poly)))
    inner = omega_shift + 36 * z2 + 3 ** 1.5 * cmath.sqrt(radicand)
    omega = inner ** (1.0 / 3.0)
    out = []
    for ell in (0, 2, -2):
        phase = cmath.exp(1j * cmath.pi * ell / 3)
        out.append(offset + (2.0 / 3.0) * phase * omega
                   - (2.0 / 3.0) * (3 * z2 - linear_coeff) / (phase * omega))
    return out


def closed_form_values(level, zeta):
    """Evaluate one printed closed-form level set at a numeric coupling."""
    zeta = float(zeta)
    z2 = zeta * zeta
    if level == "E1c":
        return [0j]
    if level == "E2c":
        s = cmath.sqrt(4 - z2)
        return [2 - s, 2 + s]
    if level == "E3c":
        # radicand zeta^6 - 4 zeta^4 + 1648 zeta^2 - 2304, Omega shift 280.
        return _cubic_triple(20.0 / 3.0, (-2304, 1648, -4, 1), 280, 52, zeta)
    if level == "E2s":
        return [4 + 0j]
    if level == "E3s":
        s = cmath.sqrt(36 - z2)
        return [10 - s, 10 + s]
    if level == "E4s":
        # radicand zeta^6 - 148 zeta^4 + 15856 zeta^2 - 230400, shift 1144.
        return _cubic_triple(56.0 / 3.0, (-230400, 15856, -148, 1), 1144,
                             196, zeta)
    raise ValueError(f"unknown level {level!r}")


def hausdorff(a, b):
    """Hausdorff distance between two finite point sets in the plane."""
    d1 = max(min(abs(x - y) for y in b) for x in a)
    d2 = max(min(abs(x - y) for y in a) for x in b)
    return max(d1, d2)


def closed_form_check(level, zeta, tolerance=1e-9):
    """Compare a closed-form level set against the companion-root oracle.

    Returns the Hausdorff distance between the two sets; raises
    BranchCutAmbiguityError instead of silently picking another branch if
    the principal-branch evaluation misses the oracle by more than
    ``tolerance``.
    """
    parity, N = CLOSED_FORM_LEVELS[level]
    problem = critical_polynomial(parity, N)
    levels = energies(problem, Fraction(zeta))
    formula = closed_form_values(level, float(Fraction(zeta)))
    deviation = hausdorff(formula, levels.roots)
    if deviation > tolerance:
        raise BranchCutAmbiguityError(
            f"{level} at zeta={zeta}: principal-branch values deviate from "
            f"the root oracle by {deviation:.3e} (> {tolerance:.1e})")
    return deviation
