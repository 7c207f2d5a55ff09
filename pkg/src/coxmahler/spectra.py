"""Numeric spectra of integer polynomials and the measures derived from them.

Every measure first splits off the exact cyclotomic part of the input; its
roots are known in closed form, so the Aberth iteration only ever sees the
non-cyclotomic remainder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceFailure, DomainError
from .polycore import (
    CyclotomicFactorization,
    IntPolynomial,
    cyclotomic_factor,
    is_self_reciprocal,
    length,
)

ROOT_TOL = 1e-12
COMPARISON_SLACK = 1e-7
CIRCLE_TOL = 1e-8
SUP_SAMPLES = 4096
MAX_SWEEPS = 1000
SUP_DISCRETIZATION = 1e-3

# Fixed angular offset for the initial circle; any irrational-looking value
# works, it only has to break the symmetry of self-reciprocal spectra.
_ANGLE_OFFSET = 0.4


def _scaled_residual(desc: np.ndarray, abs_desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    num = np.abs(np.polyval(desc, z))
    den = np.polyval(abs_desc, np.abs(z))
    return num / np.where(den == 0, 1.0, den)


def complex_roots(p: IntPolynomial, tol: float = ROOT_TOL, max_sweeps: int = MAX_SWEEPS) -> list[complex]:
    """All complex roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    The starting points are fixed, so the output is deterministic.  Roots are
    returned sorted by modulus, then by argument.  Raises
    :class:`ConvergenceFailure` if the maximum scaled residual
    ``|p(z)| / sum |a_i| |z|^i`` is still above ``tol`` after ``max_sweeps``.
    """
    n = p.degree
    if n < 1:
        raise DomainError("root finding needs a nonconstant polynomial")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    lead = float(p.leading)
    desc = np.array([c / lead for c in reversed(p.coeffs)], dtype=complex)
    abs_desc = np.abs(desc)
    dcoef = np.polyder(desc)

    radius = (1.0 + float(np.max(abs_desc[1:]))) ** (1.0 / n)
    k = np.arange(n)
    z = radius * np.exp(1j * (2.0 * np.pi * k / n + _ANGLE_OFFSET / n))

    polish = 0
    for _ in range(max_sweeps):
        pv = np.polyval(desc, z)
        dv = np.polyval(dcoef, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            step = ratio / (1.0 - ratio * s)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.max(_scaled_residual(desc, abs_desc, z)) <= tol:
            polish += 1
            if polish >= 3:
                break
    residual = float(np.max(_scaled_residual(desc, abs_desc, z)))
    if residual > tol:
        raise ConvergenceFailure(
            f"Aberth iteration stalled at residual {residual:.3e} after {max_sweeps} sweeps"
        )
    roots = [complex(x) for x in z]
    roots.sort(key=lambda r: (round(abs(r), 12), cmath.phase(r)))
    return roots


def roots_of_unity(m: int) -> list[complex]:
    """Primitive m-th roots of unity, the exact root set of Phi_m."""
    return [cmath.exp(2j * math.pi * k / m) for k in range(1, m + 1) if math.gcd(k, m) == 1]


@dataclass(frozen=True)
class Spectrum:
    """Roots of a polynomial split into the exact cyclotomic part and the numeric rest."""

    polynomial: IntPolynomial
    factorization: CyclotomicFactorization
    cyclotomic_roots: tuple[complex, ...]
    remainder_roots: tuple[complex, ...]
    residual: float

    @property
    def roots(self) -> list[complex]:
        out = list(self.cyclotomic_roots) + list(self.remainder_roots)
        out.sort(key=lambda r: (round(abs(r), 12), cmath.phase(r)))
        return out


def spectrum(p: IntPolynomial, tol: float = ROOT_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    if p.degree < 1:
        raise DomainError("spectrum needs a nonconstant polynomial")
    fac = cyclotomic_factor(p)
    cyc: list[complex] = []
    for m in sorted(fac.factors):
        cyc.extend(roots_of_unity(m) * fac.factors[m])
    rem_roots: list[complex] = []
    residual = 0.0
    if fac.remainder.degree >= 1:
        rem_roots = complex_roots(fac.remainder, tol, max_sweeps)
        residual = max_scaled_residual(fac.remainder, rem_roots)
    return Spectrum(p, fac, tuple(cyc), tuple(rem_roots), residual)


def max_scaled_residual(p: IntPolynomial, roots) -> float:
    desc = np.array([float(c) for c in reversed(p.coeffs)], dtype=complex)
    z = np.asarray(list(roots), dtype=complex)
    if z.size == 0:
        return 0.0
    return float(np.max(_scaled_residual(desc, np.abs(desc), z)))


def _require_monic(p: IntPolynomial) -> None:
    if p.degree < 1 or not p.is_monic():
        raise DomainError("expected a monic nonconstant polynomial")


def mahler_measure(p: IntPolynomial, tol: float = ROOT_TOL) -> float:
    """Standard Mahler measure ``prod max(1, |lambda|)``; exactly 1.0 on cyclotomic type."""
    _require_monic(p)
    return _mahler(spectrum(p, tol))


def _mahler(sp: Spectrum) -> float:
    if sp.factorization.is_cyclotomic:
        return 1.0
    return float(np.prod([max(1.0, abs(r)) for r in sp.remainder_roots]))


def spectral_radius(p: IntPolynomial, tol: float = ROOT_TOL) -> float:
    _require_monic(p)
    return _radius(spectrum(p, tol))


def _radius(sp: Spectrum) -> float:
    r = 1.0 if sp.factorization.factors else 0.0
    if sp.remainder_roots:
        r = max(r, max(abs(x) for x in sp.remainder_roots))
    return r


def energy(p: IntPolynomial, tol: float = ROOT_TOL) -> float:
    """Sum of root moduli."""
    _require_monic(p)
    return _energy(spectrum(p, tol))


def _energy(sp: Spectrum) -> float:
    cyc_degree = sp.factorization.degree - max(sp.factorization.remainder.degree, 0)
    return float(cyc_degree + sum(abs(x) for x in sp.remainder_roots))


def sup_norm_on_circle(p: IntPolynomial, samples: int = SUP_SAMPLES) -> float:
    """Max of ``|p|`` over ``samples`` equally spaced points of the unit circle.

    This is a lower estimate of the true sup norm.
    """
    if samples < 64:
        raise DomainError("need at least 64 samples")
    if p.is_zero():
        return 0.0
    x = np.exp(2j * np.pi * np.arange(samples) / samples)
    desc = np.array([float(c) for c in reversed(p.coeffs)])
    return float(np.max(np.abs(np.polyval(desc, x))))


def spectrum_in_circle_or_positive_reals(p: IntPolynomial, tol: float = CIRCLE_TOL) -> bool:
    _require_monic(p)
    sp = spectrum(p)
    return all(_on_circle_or_positive(r, tol) for r in sp.remainder_roots)


def _on_circle_or_positive(r: complex, tol: float) -> bool:
    return abs(abs(r) - 1.0) <= tol or (abs(r.imag) <= tol and r.real > 0)


def spectrum_on_circle(p: IntPolynomial, tol: float = CIRCLE_TOL) -> bool:
    _require_monic(p)
    return all(abs(abs(r) - 1.0) <= tol for r in spectrum(p).remainder_roots)


@dataclass(frozen=True)
class SpectralReport:
    degree: int
    roots: tuple[complex, ...]
    mahler: float
    spectral_radius: float
    energy: float
    length: int
    sup_norm: float
    residual: float
    factorization: CyclotomicFactorization = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "mahler": self.mahler,
            "spectral_radius": self.spectral_radius,
            "energy": self.energy,
            "length": self.length,
            "sup_norm": self.sup_norm,
            "residual": self.residual,
            "cyclotomic": self.factorization.is_cyclotomic,
            "factorization": self.factorization.describe(),
            "roots": [[r.real, r.imag] for r in self.roots],
        }


def spectral_report(p: IntPolynomial, tol: float = ROOT_TOL, samples: int = SUP_SAMPLES) -> SpectralReport:
    _require_monic(p)
    sp = spectrum(p, tol)
    return SpectralReport(
        degree=p.degree,
        roots=tuple(sp.roots),
        mahler=_mahler(sp),
        spectral_radius=_radius(sp),
        energy=_energy(sp),
        length=length(p),
        sup_norm=sup_norm_on_circle(p, samples),
        residual=sp.residual,
        factorization=sp.factorization,
    )


@dataclass(frozen=True)
class Comparison:
    name: str
    lhs: float
    rhs: float
    holds: bool

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "holds": self.holds}


@dataclass(frozen=True)
class InequalityReport:
    basic_chain: tuple[Comparison, ...]
    coxeter_chain: tuple[Comparison, ...] | None
    geometric_mean_check: Comparison | None

    @property
    def holds(self) -> bool:
        ok = all(c.holds for c in self.basic_chain)
        if self.coxeter_chain is not None:
            ok = ok and all(c.holds for c in self.coxeter_chain)
        return ok

    def failures(self) -> list[str]:
        chain = list(self.basic_chain) + list(self.coxeter_chain or ())
        return [c.name for c in chain if not c.holds]

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "basic_chain": [c.to_dict() for c in self.basic_chain],
            "coxeter_chain": None if self.coxeter_chain is None
            else [c.to_dict() for c in self.coxeter_chain],
            "geometric_mean_check": None if self.geometric_mean_check is None
            else self.geometric_mean_check.to_dict(),
        }


def _le(name: str, lhs: float, rhs: float, slack: float) -> Comparison:
    return Comparison(name, lhs, rhs, lhs <= rhs + slack * max(1.0, abs(rhs)))


def measure_inequality_report(
    p: IntPolynomial,
    tol: float = ROOT_TOL,
    slack: float = COMPARISON_SLACK,
    samples: int = SUP_SAMPLES,
) -> InequalityReport:
    """Evaluate both inequality chains on ``p``.

    The chain ``M <= ||P|| <= L <= 2^n M`` uses the sampled sup norm, so its
    first link is tested as ``M <= ||P|| (1 + 1e-3)``.  The Coxeter chain
    ``1 <= M^(1/n) <= e/n <= sum|lambda|^2/n <= rho^2 <= M^2`` is evaluated only for
    self-reciprocal input.  ``geometric_mean_check`` reports the AM-GM link
    with the plain root product in place of ``M``; it is informational and
    not part of ``holds``.
    """
    _require_monic(p)
    sp = spectrum(p, tol)
    n = p.degree
    M = _mahler(sp)
    sup = sup_norm_on_circle(p, samples)
    L = float(length(p))
    basic = (
        _le("M <= ||P||", M, sup * (1.0 + SUP_DISCRETIZATION), slack),
        _le("||P|| <= L", sup, L, slack),
        _le("L <= 2^n M", L, 2.0 ** n * M, slack),
    )
    coxeter = None
    gm = None
    if is_self_reciprocal(p):
        roots = sp.roots
        e = _energy(sp)
        rho = _radius(sp)
        sq = sum(abs(r) ** 2 for r in roots)
        coxeter = (
            _le("1 <= M^(1/n)", 1.0, M ** (1.0 / n), slack),
            _le("M^(1/n) <= e/n", M ** (1.0 / n), e / n, slack),
            _le("e/n <= sum|l|^2/n", e / n, sq / n, slack),
            _le("sum|l|^2/n <= rho^2", sq / n, rho * rho, slack),
            _le("rho^2 <= M^2", rho * rho, M * M, slack),
        )
        gprod = math.exp(sum(math.log(abs(r)) for r in roots) / n)
        gm = _le("(prod|l|)^(1/n) <= e/n", gprod, e / n, slack)
    return InequalityReport(basic, coxeter, gm)
