"""Exact integer polynomials and the cyclotomic machinery built on them.

Polynomials are stored densely in ascending order, ``coeffs[i]`` being the
coefficient of ``T**i``.  Python integers give arbitrary precision for free,
so every operation here is exact.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError, NotDivisible


class IntPolynomial:
    """Immutable univariate polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [operator.index(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "IntPolynomial":
        return cls([0] * k + [a])

    @classmethod
    def constant(cls, a: int) -> "IntPolynomial":
        return cls([a])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative exponent")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float and complex."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by ``T**k``."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        acc = ZERO
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def substitute_power(self, k: int) -> "IntPolynomial":
        """Return ``p(T**k)``."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            out[k * i] = a
        return IntPolynomial(out)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * a for i, a in enumerate(self.coeffs) if i)

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(reversed(self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return pretty(self)


def _coerce(x):
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    return None


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
T = IntPolynomial([0, 1])


def pretty(p: IntPolynomial, var: str = "T") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        a = p.coeffs[i]
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if mag == 1 else f"{mag}{mon}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_poly(p: IntPolynomial) -> str:
    """Comma-separated ascending coefficients, ``"0"`` for the zero polynomial."""
    return ",".join(str(a) for a in p.coeffs) if p.coeffs else "0"


def parse_poly(text: str) -> IntPolynomial:
    """Parse the comma-separated ascending coefficient format."""
    if text is None or not text.strip():
        raise DomainError("empty polynomial string")
    coeffs = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            coeffs.append(int(tok, 10))
        except ValueError:
            raise DomainError(f"non-integer coefficient token {tok!r}") from None
    return IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# basic arithmetic

def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def divmod_monic(p: IntPolynomial, q: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Quotient and remainder of ``p`` by a monic ``q``."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if not q.is_monic():
        raise DomainError("divisor must be monic")
    r = list(p.coeffs)
    dq = q.degree
    if len(r) - 1 < dq:
        return ZERO, p
    quot = [0] * (len(r) - dq)
    qc = q.coeffs
    for k in range(len(r) - 1, dq - 1, -1):
        a = r[k]
        if a:
            quot[k - dq] = a
            base = k - dq
            for j in range(dq):
                r[base + j] -= a * qc[j]
            r[k] = 0
    return IntPolynomial(quot), IntPolynomial(r[:dq])


def div_exact(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisible` otherwise."""
    quot, rem = divmod_monic(p, q)
    if not rem.is_zero():
        raise NotDivisible(f"{q} does not divide {p}")
    return quot


def divides(q: IntPolynomial, p: IntPolynomial) -> bool:
    return divmod_monic(p, q)[1].is_zero()


def exact_quotient(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    # Division over Z by a not necessarily monic divisor.
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p.coeffs)
    dd = d.degree
    lc = d.leading
    if len(r) - 1 < dd:
        if any(r):
            raise NotDivisible(f"{d} does not divide {p}")
        return ZERO
    quot = [0] * (len(r) - dd)
    for k in range(len(r) - 1, dd - 1, -1):
        a = r[k]
        if a:
            c, m = divmod(a, lc)
            if m:
                raise NotDivisible(f"{d} does not divide {p}")
            quot[k - dd] = c
            base = k - dd
            for j in range(dd + 1):
                r[base + j] -= c * d.coeffs[j]
    if any(r):
        raise NotDivisible(f"{d} does not divide {p}")
    return IntPolynomial(quot)


def eval_int(p: IntPolynomial, x: int) -> int:
    return p(operator.index(x))


def length(p: IntPolynomial) -> int:
    """Sum of absolute values of the coefficients."""
    return sum(abs(a) for a in p.coeffs)


def is_self_reciprocal(p: IntPolynomial) -> bool:
    c = p.coeffs
    return c == c[::-1]


# ---------------------------------------------------------------------------
# special families

@lru_cache(maxsize=None)
def v_poly(n: int) -> IntPolynomial:
    """``1 + T + ... + T**(n-1)``."""
    if n < 1:
        raise DomainError(f"v_n needs n >= 1, got {n}")
    return IntPolynomial([1] * n)


def _v(n: int) -> IntPolynomial:
    # v_0 = 0 keeps arm-length-one stars uniform.
    return ZERO if n == 0 else v_poly(n)


@lru_cache(maxsize=None)
def chebyshev_u(n: int) -> IntPolynomial:
    """Normalized Chebyshev polynomial: u_0 = 1, u_1 = T, u_{n+1} = T u_n - u_{n-1}."""
    if n < 0:
        raise DomainError(f"u_n needs n >= 0, got {n}")
    if n == 0:
        return ONE
    if n == 1:
        return T
    return T * chebyshev_u(n - 1) - chebyshev_u(n - 2)


# ---------------------------------------------------------------------------
# number theory

def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors of {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def euler_totient(n: int) -> int:
    if n < 1:
        raise DomainError(f"totient needs n >= 1, got {n}")
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """Phi_n as the Mobius-weighted product of the v_{n/d} over proper divisors."""
    if n < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {n}")
    if n == 1:
        return IntPolynomial([-1, 1])
    num, den = ONE, ONE
    for d in divisors(n):
        if d == n:
            continue
        mu = mobius(d)
        if mu == 1:
            num = num * v_poly(n // d)
        elif mu == -1:
            den = den * v_poly(n // d)
    return div_exact(num, den)


@lru_cache(maxsize=None)
def cyclotomic_candidates(degree: int) -> tuple[int, ...]:
    """Every d with phi(d) <= degree.

    Scanning stops after ``2*degree**2 + 64`` consecutive integers with
    totient above ``degree``; phi(d) >= sqrt(d/2) guarantees nothing is missed.
    """
    window = 2 * degree * degree + 64
    found = []
    run = 0
    d = 1
    while run < window:
        if euler_totient(d) <= degree:
            found.append(d)
            run = 0
        else:
            run += 1
        d += 1
    return tuple(found)


@dataclass(frozen=True)
class CyclotomicFactorization:
    """``original == prod(cyclotomic_poly(m)**e for m, e in factors) * remainder``."""

    factors: dict[int, int]
    remainder: IntPolynomial
    degree: int
    original: IntPolynomial = field(repr=False, compare=False, default=ZERO)

    @property
    def is_cyclotomic(self) -> bool:
        return self.remainder == ONE

    @property
    def cyclotomic_part(self) -> IntPolynomial:
        out = ONE
        for m, e in self.factors.items():
            out = out * cyclotomic_poly(m) ** e
        return out

    def indices(self) -> list[int]:
        return sorted(self.factors)

    def lcm_of_indices(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    def lcm_of_totients(self) -> int:
        return math.lcm(*(euler_totient(m) for m in self.factors)) if self.factors else 1

    def describe(self) -> str:
        parts = []
        for m in sorted(self.factors):
            e = self.factors[m]
            parts.append(f"Phi{m}" if e == 1 else f"Phi{m}^{e}")
        if self.remainder != ONE:
            parts.append(f"({format_poly(self.remainder)})")
        return "*".join(parts) if parts else "1"


def cyclotomic_factor(p: IntPolynomial) -> CyclotomicFactorization:
    """Strip every cyclotomic factor of a monic polynomial, with multiplicity."""
    if p.is_zero() or not p.is_monic():
        raise DomainError("cyclotomic factorization needs a monic polynomial")
    rem = p
    factors: dict[int, int] = {}
    for d in cyclotomic_candidates(max(p.degree, 0)):
        phi_d = euler_totient(d)
        if phi_d > rem.degree:
            continue
        cyc = cyclotomic_poly(d)
        while rem.degree >= phi_d:
            quot, r = divmod_monic(rem, cyc)
            if not r.is_zero():
                break
            rem = quot
            factors[d] = factors.get(d, 0) + 1
    return CyclotomicFactorization(factors, rem, p.degree, p)


def is_cyclotomic_type(p: IntPolynomial) -> bool:
    return cyclotomic_factor(p).is_cyclotomic


def product_of_cyclotomics(factors: dict[int, int]) -> IntPolynomial:
    out = ONE
    for m, e in factors.items():
        out = out * cyclotomic_poly(m) ** e
    return out


# ---------------------------------------------------------------------------
# resultants and the tensor operation

# Bivariate polynomials are lists of IntPolynomial coefficients in the main
# variable x (ascending); each coefficient is a polynomial in the parameter z.

def _bv_trim(a: list[IntPolynomial]) -> list[IntPolynomial]:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _bv_prem(a: list[IntPolynomial], b: list[IntPolynomial]) -> list[IntPolynomial]:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] = r[shift + j] - lr * b[j]
        r = _bv_trim(r)
        e -= 1
    if e > 0:
        f = lb ** e
        r = [c * f for c in r]
    return r


def resultant_in_x(a: list[IntPolynomial], b: list[IntPolynomial]) -> IntPolynomial:
    """Res_x(a, b) over Z[z] by the subresultant pseudo-remainder sequence."""
    a, b = _bv_trim(a), _bv_trim(b)
    if not a or not b:
        return ZERO
    sign = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            sign = -sign
    if len(b) == 1:
        return sign * b[0] ** (len(a) - 1)
    g = ONE
    h = ONE
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _bv_prem(a, b)
        if not r:
            return ZERO
        a = b
        div = g * h ** delta
        b = [exact_quotient(c, div) for c in r]
        g = a[-1]
        h = exact_quotient(g ** delta, h ** (delta - 1)) if delta else h
        if len(b) == 1:
            da = len(a) - 1
            h = exact_quotient(b[0] ** da, h ** (da - 1)) if da else h
            return sign * h


def tensor_coxeter(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Monic polynomial whose roots are ``-lambda*mu`` over root pairs of ``p`` and ``q``."""
    if p.degree < 1 or q.degree < 1:
        raise DomainError("tensor product needs nonconstant inputs")
    if not (p.is_monic() and q.is_monic()):
        raise DomainError("tensor product needs monic inputs")
    m = q.degree
    # G(x, z) = prod_j (z + x*mu_j); coefficient of x**j is (-1)**j b_{m-j} z**(m-j).
    g = [IntPolynomial.monomial(m - j, (-1) ** j * q[m - j]) for j in range(m + 1)]
    pa = [IntPolynomial.constant(c) for c in p.coeffs]
    return resultant_in_x(pa, g)
