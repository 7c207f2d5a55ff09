"""Representing polynomials, interlaced towers and their Mahler-measure bounds.

A monic ``p`` of degree ``n`` is represented by ``q`` when
``p(T^2) = T^n q(T + 1/T)``.  Unit-circle roots of ``p`` then correspond to
roots of ``q`` in ``[-2, 2]``, and towers of Coxeter polynomials obeying the
``(T+1)/-T`` recurrence correspond to Chebyshev-like towers of ``q``'s.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import algebras
from .errors import (
    ConvergenceFailure,
    DomainError,
    InvalidSchedule,
    MissingRepresentation,
    NotRealRooted,
)
from .polycore import ONE, T, ZERO, IntPolynomial, chebyshev_u, divisors, is_cyclotomic_type, length, v_poly
from .spectra import (
    CIRCLE_TOL,
    mahler_measure,
    spectrum_in_circle_or_positive_reals,
)

REAL_ROOT_TOL = 1e-12
MONOTONE_SLACK = 1e-6


# ---------------------------------------------------------------------------
# representability

@dataclass(frozen=True)
class RepresentationResult:
    representable: bool
    q: IntPolynomial | None
    certificate_residual: IntPolynomial


def _star_transform(q: IntPolynomial, n: int) -> IntPolynomial:
    """``T^n q(T + 1/T)`` as a polynomial, for ``deg q <= n``."""
    out = ZERO
    s = T * T + 1
    power = ONE
    for j, c in enumerate(q.coeffs):
        if c:
            out = out + (power * c).shift(n - j)
        power = power * s
    return out


def representing_polynomial(p: IntPolynomial) -> RepresentationResult:
    """Solve ``p(T^2) = T^n q(T + 1/T)`` top-down in the basis ``T^(n-j) (T^2+1)^j``."""
    if p.is_zero() or not p.is_monic():
        raise DomainError("representability is defined for monic polynomials")
    n = p.degree
    target = p.substitute_power(2)
    residual = list(target.coeffs) + [0] * (2 * n + 1 - len(target.coeffs))
    basis = T * T + 1
    coeffs = [0] * (n + 1)
    for j in range(n, -1, -1):
        # basis element j has degree n + j and leading coefficient 1
        c = residual[n + j]
        coeffs[j] = c
        if c:
            b = (basis ** j).shift(n - j)
            for i, bc in enumerate(b.coeffs):
                residual[i] -= c * bc
    q = IntPolynomial(coeffs)
    cert = target - _star_transform(q, n)
    if cert.is_zero():
        return RepresentationResult(True, q, cert)
    return RepresentationResult(False, None, cert)


def w_poly(n: int) -> IntPolynomial:
    """``T (u_{n-1} - u_{n-3})``; represents ``(T+1)(T^(n-1) + 1)``."""
    if n < 3:
        raise DomainError(f"w_n needs n >= 3, got {n}")
    return T * (chebyshev_u(n - 1) - chebyshev_u(n - 3))


_R_SEEDS = (
    IntPolynomial([1]),
    IntPolynomial([0, 1]),
    IntPolynomial([-1, 0, 1]),
    IntPolynomial([0, -2, 0, 1]),
    IntPolynomial([0, 0, -3, 0, 1]),
    IntPolynomial([0, 2, 0, -4, 0, 1]),
    IntPolynomial([-1, 0, 5, 0, -5, 0, 1]),
)


def _r_step(n: int, earlier: IntPolynomial) -> IntPolynomial:
    # The ``-T^6 chi_{n-6}(T^2)`` term of the ladder recurrence equals
    # ``-T^n r_{n-6}(T + 1/T)``, so r_{n-6} enters without a power of T.
    return w_poly(n) - earlier


def r_seed_agreement() -> bool:
    """Whether the recurrence reproduces the seed at n = 6."""
    return _r_step(6, _R_SEEDS[0]) == _R_SEEDS[6]


def r_poly(n: int) -> IntPolynomial:
    """Representing polynomial of the ladder Coxeter polynomial of ``R_n``."""
    if n < 0:
        raise DomainError(f"r_n needs n >= 0, got {n}")
    if n <= 6:
        return _R_SEEDS[n]
    seq = list(_R_SEEDS)
    for k in range(7, n + 1):
        seq.append(_r_step(k, seq[k - 6]))
    return seq[n]


# ---------------------------------------------------------------------------
# exact real roots

def _frac_coeffs(p: IntPolynomial | Sequence) -> list[Fraction]:
    cs = [Fraction(c) for c in (p.coeffs if isinstance(p, IntPolynomial) else p)]
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        a, b = b, _frac_rem(a, b)
    return [c / a[-1] for c in a] if a else a


def _frac_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        f = a[k + len(b) - 1] / b[-1]
        out[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
    return out


def _deriv(a: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(a)][1:]


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    return _sturm_chain(_frac_coeffs(p))


def _sturm_chain(a: list[Fraction]) -> list[list[Fraction]]:
    seq = [a, _deriv(a)]
    while seq[-1]:
        r = _frac_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _eval_frac(a: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign_at_infinity(a: list[Fraction], positive: bool) -> int:
    lead = a[-1]
    deg = len(a) - 1
    s = 1 if lead > 0 else -1
    return s if positive or deg % 2 == 0 else -s


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _count_at(seq: list[list[Fraction]], x: Fraction | None, positive: bool = True) -> int:
    if x is None:
        return _variations([_sign_at_infinity(s, positive) for s in seq])
    return _variations([(v > 0) - (v < 0) for v in (_eval_frac(s, x) for s in seq)])


def count_real_roots(p: IntPolynomial, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (``None`` means infinite)."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    left = _count_at(seq, lo, positive=False) if lo is None else _count_at(seq, Fraction(lo))
    right = _count_at(seq, hi, positive=True) if hi is None else _count_at(seq, Fraction(hi))
    return left - right


def has_distinct_real_roots(p: IntPolynomial) -> bool:
    """All ``deg p`` roots are real and pairwise different (exact)."""
    return p.degree >= 1 and count_real_roots(p) == p.degree


def _cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1]) if p.degree > 0 else Fraction(1)


def real_roots(q: IntPolynomial, tol: float = REAL_ROOT_TOL, max_steps: int = 400) -> list[float]:
    """Distinct real roots, isolated by Sturm counts and refined by bisection."""
    if q.degree < 1:
        raise DomainError("real roots need a nonconstant polynomial")
    a = _frac_coeffs(q)
    g = _frac_gcd(a, _deriv(a))
    sq = _frac_div(a, g) if len(g) > 1 else a
    # integer roots are returned exactly so that open windows such as (2, inf) behave
    found: list[Fraction] = []
    for k in _integer_root_candidates(q):
        if len(sq) > 1 and _eval_frac(sq, Fraction(k)) == 0:
            found.append(Fraction(k))
            sq = _frac_div(sq, [Fraction(-k), Fraction(1)])
    if len(sq) <= 1:
        return sorted(float(x) for x in found)
    seq = _sturm_chain(sq)
    bound = _cauchy_bound(q)
    tol_f = Fraction(tol)
    stack = [(-bound, bound)]
    steps = 0
    while stack:
        lo, hi = stack.pop()
        n = _count_at(seq, lo) - _count_at(seq, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= tol_f:
            found.append((lo + hi) / 2)
            continue
        if n == 1:
            found.append(_bisect_simple(sq, lo, hi, tol_f, max_steps))
            continue
        steps += 1
        if steps > max_steps * max(1, q.degree):
            raise ConvergenceFailure("root isolation did not separate the roots")
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(float(x) for x in found)


def _integer_root_candidates(q: IntPolynomial, limit: int = 10 ** 12) -> list[int]:
    cs = list(q.coeffs)
    out = []
    if cs and cs[0] == 0:
        out.append(0)
    trailing = next((c for c in cs if c), 0)
    if 0 < abs(trailing) <= limit:
        for d in divisors(abs(trailing)):
            out += [d, -d]
    return out


def _bisect_simple(a: list[Fraction], lo: Fraction, hi: Fraction, tol: Fraction, max_steps: int) -> Fraction:
    # one simple root in (lo, hi]; the squarefree part changes sign across it
    flo = _eval_frac(a, lo)
    if _eval_frac(a, hi) == 0:
        return hi
    for _ in range(max_steps):
        if hi - lo <= tol:
            return (lo + hi) / 2
        mid = (lo + hi) / 2
        fm = _eval_frac(a, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceFailure("bisection hit its step cap")


def check_interlacing(
    q_low: IntPolynomial,
    q_high: IntPolynomial,
    window: tuple[float, float] = (-math.inf, math.inf),
    tol: float = 1e-9,
) -> bool:
    """Strict interlacing of the real roots of ``q_low`` between those of ``q_high``.

    Every gap between consecutive roots of ``q_high`` in the window holds
    exactly one root of ``q_low``.  A truncated left end adds one more gap
    that may hold at most one root; no root of ``q_low`` may lie above the
    largest root of ``q_high`` or coincide with a root of ``q_high``.
    """
    lo, hi = window
    full = math.isinf(lo) and math.isinf(hi)
    if full:
        for q in (q_low, q_high):
            if q.degree >= 1 and not has_distinct_real_roots(q):
                raise NotRealRooted(f"{q} is not real-rooted with simple roots")
    def inside(xs):
        return [x for x in xs if lo < x < hi]
    highs = inside(real_roots(q_high)) if q_high.degree >= 1 else []
    lows = inside(real_roots(q_low)) if q_low.degree >= 1 else []
    if not highs:
        return not lows
    for x in lows:
        if any(abs(x - h) <= tol for h in highs):
            return False
    if any(x > highs[-1] for x in lows):
        return False
    for a, b in zip(highs, highs[1:]):
        if sum(1 for x in lows if a < x < b) != 1:
            return False
    below = sum(1 for x in lows if x < highs[0])
    if math.isinf(lo):
        return below == 0
    return below <= 1


# ---------------------------------------------------------------------------
# towers

@dataclass(frozen=True)
class TowerSpec:
    polynomials: tuple[IntPolynomial, ...]
    representing: tuple[IntPolynomial | None, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "polynomials", tuple(self.polynomials))
        object.__setattr__(self, "representing", tuple(self.representing))
        if not self.polynomials:
            raise InvalidSchedule("empty tower")
        if len(self.representing) != len(self.polynomials):
            raise InvalidSchedule("representing list must parallel the polynomials")
        degs = [p.degree for p in self.polynomials]
        if any(b != a + 1 for a, b in zip(degs, degs[1:])):
            raise InvalidSchedule(f"tower degrees must increase by one, got {degs}")

    @property
    def start(self) -> int:
        return self.polynomials[0].degree

    @property
    def stop(self) -> int:
        return self.polynomials[-1].degree

    @classmethod
    def from_polynomials(cls, polys: Sequence[IntPolynomial], label: str = "") -> "TowerSpec":
        reps = [representing_polynomial(p).q for p in polys]
        return cls(tuple(polys), tuple(reps), label)


def verify_recurrence(t: TowerSpec) -> bool:
    """``chi_{s+1} = (T+1) chi_s - T chi_{s-1}`` for every interior index."""
    ps = t.polynomials
    if len(ps) < 3:
        raise DomainError("recurrence check needs at least three polynomials")
    return all(ps[i + 1] == (T + 1) * ps[i] - T * ps[i - 1] for i in range(1, len(ps) - 1))


def recurrence_failures(t: TowerSpec) -> list[int]:
    """Degrees ``s + 1`` at which the χ-level recurrence breaks."""
    ps = t.polynomials
    return [ps[i + 1].degree for i in range(1, len(ps) - 1) if ps[i + 1] != (T + 1) * ps[i] - T * ps[i - 1]]


def verify_chebyshev_recurrence(t: TowerSpec) -> bool:
    """``q_{s+1} = T q_s - q_{s-1}`` on the representing polynomials."""
    if any(q is None for q in t.representing):
        raise MissingRepresentation("some tower member has no representing polynomial")
    qs = t.representing
    if len(qs) < 3:
        raise DomainError("recurrence check needs at least three polynomials")
    return all(qs[i + 1] == T * qs[i] - qs[i - 1] for i in range(1, len(qs) - 1))


def minus_one_invariant(t: TowerSpec) -> tuple[bool, int | None]:
    """Odd-degree members vanish at -1 and even-degree members share one value ``p^2``."""
    p_val: int | None = None
    ok = True
    for chi in t.polynomials:
        val = chi(-1)
        if chi.degree % 2:
            ok = ok and val == 0
            continue
        if val < 0 or math.isqrt(val) ** 2 != val:
            ok = False
            continue
        root = math.isqrt(val)
        if p_val is None:
            p_val = root
        elif p_val != root:
            ok = False
    return ok, p_val


@dataclass
class MahlerCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass
class MonotonicityReport:
    mahler: list[float]
    cyclotomic: list[bool]
    hypothesis_holds: bool
    step_checks: list[MahlerCheck]
    triple_checks: list[MahlerCheck]
    mahler_lower_bound: MahlerCheck | None
    mahler_upper_bound: MahlerCheck | None

    @property
    def steps_hold(self) -> bool:
        return all(c.holds for c in self.step_checks)

    @property
    def triples_hold(self) -> bool:
        return all(c.holds for c in self.triple_checks)

    @property
    def mahler_bounds_hold(self) -> bool:
        return all(c is None or c.holds for c in (self.mahler_lower_bound, self.mahler_upper_bound))

    def to_dict(self) -> dict:
        return {
            "mahler": self.mahler,
            "cyclotomic": self.cyclotomic,
            "hypothesis_holds": self.hypothesis_holds,
            "step_checks": [c.to_dict() for c in self.step_checks],
            "triple_checks": [c.to_dict() for c in self.triple_checks],
            "mahler_lower_bound": self.mahler_lower_bound.to_dict() if self.mahler_lower_bound else None,
            "mahler_upper_bound": self.mahler_upper_bound.to_dict() if self.mahler_upper_bound else None,
        }


def mahler_bounds(
    t: TowerSpec, mahler: Sequence[float], cyclotomic: Sequence[bool], slack: float = MONOTONE_SLACK
) -> tuple[MahlerCheck | None, MahlerCheck | None]:
    """``M(bottom) < M(top) < M(bottom) * prod L(interior)`` unless every member is cyclotomic."""
    if all(cyclotomic):
        return None, None
    lo, top = mahler[0], mahler[-1]
    prod_len = math.prod(length(p) for p in t.polynomials[1:-1])
    upper = lo * prod_len
    lower_check = MahlerCheck(f"M(chi_{t.start}) < M(chi_{t.stop})", lo, top, lo < top)
    upper_check = MahlerCheck(f"M(chi_{t.stop}) < M(chi_{t.start})*prod L", top, upper, top < upper + slack)
    return lower_check, upper_check


def mahler_monotonicity(t: TowerSpec, tol: float = MONOTONE_SLACK) -> MonotonicityReport:
    mahler = [mahler_measure(p) for p in t.polynomials]
    cyc = [is_cyclotomic_type(p) for p in t.polynomials]
    hyp = spectrum_in_circle_or_positive_reals(t.polynomials[-1], CIRCLE_TOL)
    steps = []
    for i in range(1, len(mahler)):
        if cyc[i - 1] and cyc[i]:
            continue
        a, b = t.polynomials[i - 1].degree, t.polynomials[i].degree
        steps.append(MahlerCheck(f"M(chi_{a}) < M(chi_{b})", mahler[i - 1], mahler[i], mahler[i - 1] < mahler[i]))
    triples = []
    for i in range(len(mahler) - 2):
        lhs = mahler[i + 2]
        rhs = mahler[i + 1] * length(t.polynomials[i])
        s = t.polynomials[i].degree
        triples.append(MahlerCheck(f"M(chi_{s + 2}) <= M(chi_{s + 1})*L(chi_{s})", lhs, rhs, lhs <= rhs + tol))
    lower, upper = mahler_bounds(t, mahler, cyc, tol)
    return MonotonicityReport(mahler, cyc, hyp, steps, triples, lower, upper)


def spectrum_inheritance(t: TowerSpec) -> bool:
    """If the top satisfies the spectrum condition, so does every lower member."""
    flags = [spectrum_in_circle_or_positive_reals(p) for p in t.polynomials]
    return not flags[-1] or all(flags)


@dataclass
class TowerVerdict:
    label: str
    recurrence_holds: bool
    chebyshev_holds: bool
    representability_holds: bool
    base_real_rooted: bool
    interlacing_holds: bool
    minus_one_consistent: bool
    p: int | None
    mahler_sequence: list[float]
    spectrum_inheritance: bool
    notes: list[str] = field(default_factory=list)

    CHECK_ORDER = (
        "representability_holds",
        "recurrence_holds",
        "chebyshev_holds",
        "base_real_rooted",
        "minus_one_consistent",
        "interlacing_holds",
        "spectrum_inheritance",
    )

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def first_failure(self) -> str | None:
        for name in self.CHECK_ORDER:
            if not getattr(self, name):
                return name
        if self.p is not None and self.p > 2:
            return "p_bound"
        return None

    def to_dict(self) -> dict:
        out = {name: getattr(self, name) for name in self.CHECK_ORDER}
        out.update(
            label=self.label,
            p=self.p,
            mahler_sequence=self.mahler_sequence,
            notes=list(self.notes),
            passed=self.passed,
            first_failure=self.first_failure,
        )
        return out


def verify_tower(t: TowerSpec, window: tuple[float, float] = (2.0, math.inf)) -> TowerVerdict:
    notes: list[str] = []
    reps_ok = all(q is not None for q in t.representing)
    rec = verify_recurrence(t) if len(t.polynomials) >= 3 else True
    if not rec:
        notes.append(f"chi-level recurrence fails at degrees {recurrence_failures(t)}")
    cheb = verify_chebyshev_recurrence(t) if reps_ok and len(t.polynomials) >= 3 else False
    base_q = t.representing[0]
    base = base_q is not None and has_distinct_real_roots(base_q)
    inter = True
    if reps_ok:
        for a, b in zip(t.representing, t.representing[1:]):
            try:
                if not check_interlacing(a, b, window):
                    inter = False
                    notes.append(f"interlacing fails between degrees {a.degree} and {b.degree}")
                    break
            except NotRealRooted as exc:
                inter = False
                notes.append(str(exc))
                break
    else:
        inter = False
    m1, p = minus_one_invariant(t)
    if p is not None and p > 2:
        notes.append(f"(-1)-invariant p = {p} exceeds 2")
    mahler = [mahler_measure(x) for x in t.polynomials]
    inherit = spectrum_inheritance(t)
    return TowerVerdict(t.label, rec, cheb, reps_ok, base, inter, m1, p, mahler, inherit, notes)


# ---------------------------------------------------------------------------
# tower construction

_ITEM = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$")


def parse_schedule(text: str) -> tuple[str, list[int], list[int]]:
    """Parse ``kind:fixed,...,a..b`` into (kind, fixed prefix, sweep values)."""
    if ":" not in text:
        raise InvalidSchedule(f"schedule {text!r} needs the form kind:args")
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    aliases = {"extendedcanonical": "extended", "extended-canonical": "extended", "r": "rladder"}
    kind = aliases.get(kind, kind)
    if kind not in ("linear", "canonical", "extended", "rladder"):
        raise InvalidSchedule(f"unknown tower kind {kind!r}")
    items = body.split(",")
    fixed: list[int] = []
    for item in items[:-1]:
        m = _ITEM.match(item)
        if not m or m.group(2) is not None:
            raise InvalidSchedule(f"bad fixed weight {item!r}")
        fixed.append(int(m.group(1)))
    m = _ITEM.match(items[-1])
    if not m:
        raise InvalidSchedule(f"bad sweep {items[-1]!r}")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    if b < a:
        raise InvalidSchedule(f"empty range {a}..{b}")
    if kind in ("linear", "rladder") and fixed:
        raise InvalidSchedule(f"{kind} schedules take a single range")
    return kind, fixed, list(range(a, b + 1))


def _check_monotone(weights: list[tuple[int, ...]]) -> None:
    for a, b in zip(weights, weights[1:]):
        if len(a) != len(b) or any(x > y for x, y in zip(a, b)):
            raise InvalidSchedule(f"weights {a} -> {b} are not coordinatewise increasing")


def build_weight_tower(kind: str, weights: Sequence[Sequence[int]], label: str = "") -> TowerSpec:
    ws = [tuple(int(x) for x in w) for w in weights]
    _check_monotone(ws)
    builder = {"canonical": algebras.canonical_coxeter, "extended": algebras.extended_canonical_coxeter}.get(kind)
    if builder is None:
        raise InvalidSchedule(f"weight towers are canonical or extended, not {kind!r}")
    try:
        polys = [builder(w) for w in ws]
    except DomainError as exc:
        raise InvalidSchedule(str(exc)) from None
    return TowerSpec.from_polynomials(polys, label or f"{kind}:{ws[0]}..{ws[-1]}")


def build_tower(kind: str, schedule: str | Sequence) -> TowerSpec:
    """Build a tower from a kind and either a schedule string body or explicit items.

    ``linear`` and ``rladder`` take integer indices; ``canonical`` and
    ``extended`` take weight tuples.
    """
    if isinstance(schedule, str):
        k, fixed, sweep = parse_schedule(f"{kind}:{schedule}")
        kind = k
        items: list = [tuple(fixed + [s]) for s in sweep] if kind in ("canonical", "extended") else sweep
    else:
        items = list(schedule)
    if not items:
        raise InvalidSchedule("empty schedule")
    label = f"{kind}:{items[0]}..{items[-1]}"
    if kind == "linear":
        if any(n < 1 for n in items):
            raise InvalidSchedule("linear towers start at A_1")
        return TowerSpec.from_polynomials([v_poly(n + 1) for n in items], label)
    if kind == "rladder":
        if any(n < 1 for n in items):
            raise InvalidSchedule("ladder towers start at R_1")
        return TowerSpec.from_polynomials([algebras.r_ladder_coxeter(n) for n in items], label)
    if kind in ("canonical", "extended"):
        return build_weight_tower(kind, items, label)
    raise InvalidSchedule(f"unknown tower kind {kind!r}")


def tower_from_schedule(text: str) -> TowerSpec:
    kind, _, body = text.partition(":")
    return build_tower(parse_schedule(text)[0], body)


# ---------------------------------------------------------------------------
# ladder family

@dataclass
class LadderReport:
    max_n: int
    recurrence_a: dict[int, bool]
    formula_0n: dict[int, bool]
    length: dict[int, tuple[int, int]]
    cyclotomic: dict[int, bool]
    representation: dict[int, bool]
    tensor: dict[int, bool]
    seed_agreement: bool

    @property
    def length_holds(self) -> bool:
        return all(a == b for a, b in self.length.values())

    def families(self) -> dict[str, bool]:
        return {
            "recurrence_a": all(self.recurrence_a.values()),
            "formula_0n": all(self.formula_0n.values()),
            "length": self.length_holds,
            "cyclotomic": all(self.cyclotomic.values()),
            "representation": all(self.representation.values()),
            "tensor": all(self.tensor.values()),
            "seed_agreement": self.seed_agreement,
        }

    @property
    def holds(self) -> bool:
        return all(self.families().values())

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "families": self.families(),
            "length": {str(n): {"computed": a, "formula": b} for n, (a, b) in self.length.items()},
            "recurrence_a_failures": [n for n, ok in self.recurrence_a.items() if not ok],
            "formula_0n_failures": [n for n, ok in self.formula_0n.items() if not ok],
            "representation_failures": [n for n, ok in self.representation.items() if not ok],
            "tensor_failures": [n for n, ok in self.tensor.items() if not ok],
        }


def ladder_length_formula(n: int) -> int:
    m, n0 = divmod(n, 6)
    return 4 * m + n0


def verify_r_ladder_recurrences(max_n: int = 24) -> LadderReport:
    if max_n < 12:
        raise DomainError("ladder verification needs max_n >= 12")
    from .polycore import tensor_coxeter

    chi = [algebras.r_ladder_coxeter(n) for n in range(max_n + 1)]
    rec_a, f0n = {}, {}
    for n in range(6, max_n + 1):
        rec_a[n] = chi[n] == T ** n + T ** (n - 1) - T ** 3 * chi[n - 6] + T + 1
        f0n[n] = chi[n] == (
            (1 + T) * chi[n - 1]
            - T * (1 + T) * chi[n - 3]
            + T ** 2 * (1 + T) * chi[n - 5]
            - T ** 3 * chi[n - 6]
        )
    lengths = {n: (length(chi[n]), ladder_length_formula(n)) for n in range(1, max_n + 1)}
    cyc = {n: is_cyclotomic_type(chi[n]) for n in range(1, max_n + 1)}
    rep = {}
    for n in range(0, max_n + 1):
        res = representing_polynomial(chi[n])
        rep[n] = res.representable and res.q == r_poly(n)
    tensor = {}
    for k in range(1, max_n // 2 + 1):
        tensor[k] = chi[2 * k] == tensor_coxeter(v_poly(k + 1), v_poly(3))
    return LadderReport(max_n, rec_a, f0n, lengths, cyc, rep, tensor, r_seed_agreement())
