import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxmahler.algebras import char_poly_exact
from coxmahler.errors import DomainError, NotDivisible
from coxmahler.polycore import (
    ONE,
    T,
    ZERO,
    IntPolynomial,
    chebyshev_u,
    cyclotomic_factor,
    cyclotomic_poly,
    div_exact,
    divides,
    divisors,
    divmod_monic,
    euler_totient,
    exact_quotient,
    format_poly,
    is_cyclotomic_type,
    is_self_reciprocal,
    length,
    mobius,
    parse_poly,
    product_of_cyclotomics,
    tensor_coxeter,
    v_poly,
)

LEHMER = IntPolynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])

# cyclotomic coefficients computed offline with a computer algebra system
PHI = {
    12: [1, 0, -1, 0, 1],
    24: [1, 0, 0, 0, -1, 0, 0, 0, 1],
    30: [1, 1, 0, -1, -1, -1, 0, 1, 1],
    42: [1, 1, 0, -1, -1, 0, 1, 0, -1, -1, 0, 1, 1],
    105: [1, 1, 1, 0, 0, -1, -1, -2, -1, -1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, -1, 0, -1, 0,
          -1, 0, -1, 0, -1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, -1, -1, -2, -1, -1, 0, 0, 1, 1, 1],
}

small_polys = st.lists(st.integers(-5, 5), min_size=0, max_size=7).map(IntPolynomial)
monic_polys = st.lists(st.integers(-3, 3), min_size=0, max_size=5).map(lambda c: IntPolynomial(c + [1]))


def test_normalization_and_degree():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert ZERO.degree == -1
    assert IntPolynomial([0, 0, 3]).degree == 2
    assert IntPolynomial([5]) == 5


def test_non_integer_coefficients_rejected():
    with pytest.raises(TypeError):
        IntPolynomial([1.5])


def test_immutable():
    with pytest.raises(AttributeError):
        T.coeffs = (1,)


def test_pretty_and_format():
    assert str(T * T + T + 1) == "T^2 + T + 1"
    assert str(-(T ** 3) + 2 * T - 1) == "-T^3 + 2T - 1"
    assert format_poly(ZERO) == "0"
    assert format_poly(LEHMER) == "1,1,0,-1,-1,-1,-1,-1,0,1,1"


def test_parse_poly():
    assert parse_poly(" 1, -2,1 ") == (T - 1) ** 2
    for bad in ("", "1,a", "1.5,2"):
        with pytest.raises(DomainError):
            parse_poly(bad)


@given(small_polys)
def test_parse_format_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@given(small_polys, small_polys, st.integers(-4, 4))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(small_polys, monic_polys)
def test_divmod_monic_reconstructs(p, q):
    quo, rem = divmod_monic(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


@given(small_polys, monic_polys)
def test_div_exact_inverts_multiplication(p, q):
    assert div_exact(p * q, q) == p
    assert divides(q, p * q)


def test_div_exact_raises():
    with pytest.raises(NotDivisible):
        div_exact(T * T + 1, T + 1)
    with pytest.raises(ZeroDivisionError):
        divmod_monic(T, ZERO)
    with pytest.raises(DomainError):
        divmod_monic(T, 2 * T)


@given(small_polys, st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_exact_quotient_non_monic(p, d_coeffs):
    d = IntPolynomial(d_coeffs + [2])
    assert exact_quotient(p * d, d) == p


def test_v_and_u_families():
    assert v_poly(3) == T * T + T + 1
    assert chebyshev_u(3) == T ** 3 - 2 * T
    with pytest.raises(DomainError):
        v_poly(0)
    for n in range(2, 12):
        assert chebyshev_u(n) == T * chebyshev_u(n - 1) - chebyshev_u(n - 2)


def test_length_and_reciprocity():
    assert length(LEHMER) == 9
    assert is_self_reciprocal(LEHMER)
    assert not is_self_reciprocal(T + 2)


def test_number_theory_values():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    assert [euler_totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@given(st.integers(1, 400))
def test_mobius_and_totient_sums(n):
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)
    assert sum(euler_totient(d) for d in divisors(n)) == n


@pytest.mark.parametrize("n", sorted(PHI))
def test_cyclotomic_frozen(n):
    assert list(cyclotomic_poly(n).coeffs) == PHI[n]


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_product_identity(n):
    prod = ONE
    for d in divisors(n):
        prod = prod * cyclotomic_poly(d)
    assert prod == T ** n - 1
    assert cyclotomic_poly(n).degree == euler_totient(n)


def test_cyclotomic_factor_examples():
    assert cyclotomic_factor(IntPolynomial(PHI[30])).describe() == "Phi30"
    f = cyclotomic_factor(LEHMER)
    assert f.factors == {} and f.remainder == LEHMER
    assert not is_cyclotomic_type(LEHMER)
    g = cyclotomic_factor((T + 1) ** 2 * cyclotomic_poly(4) * LEHMER)
    assert g.factors == {2: 2, 4: 1}
    assert g.remainder == LEHMER
    assert g.lcm_of_indices() == 4
    with pytest.raises(DomainError):
        cyclotomic_factor(2 * T + 1)


@given(st.dictionaries(st.integers(1, 40), st.integers(1, 3), max_size=4))
@settings(max_examples=60)
def test_cyclotomic_factor_recovers_products(factors):
    p = product_of_cyclotomics(factors)
    f = cyclotomic_factor(p)
    assert f.factors == factors
    assert f.is_cyclotomic
    assert f.cyclotomic_part * f.remainder == p


def _companion(p: IntPolynomial) -> list[list[int]]:
    n = p.degree
    m = [[0] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = 1
    for i in range(n):
        m[i][n - 1] = -p.coeffs[i]
    return m


def _neg_kron(a, b):
    return [[-x * y for x in ra for y in rb] for ra in a for rb in b]


def test_tensor_examples():
    v3 = v_poly(3)
    assert tensor_coxeter(v3, v3) == T ** 4 + T ** 3 + T + 1
    assert tensor_coxeter(v_poly(4), v3) == T ** 6 + T ** 5 - T ** 3 + T + 1
    # the single root is -(-1)(-1) = -1
    assert tensor_coxeter(T + 1, T + 1) == T + 1


@given(monic_polys.filter(lambda p: p.degree >= 1), monic_polys.filter(lambda p: p.degree >= 1))
@settings(max_examples=60, deadline=None)
def test_tensor_matches_kronecker_oracle(p, q):
    # roots -lambda*mu are the eigenvalues of -(C_p kron C_q)
    oracle = char_poly_exact(_neg_kron(_companion(p), _companion(q)))
    assert tensor_coxeter(p, q) == oracle
