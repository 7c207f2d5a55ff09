import pytest

from coxmahler import algebras, catalog
from coxmahler.errors import DomainError, SizeLimit
from coxmahler.polycore import IntPolynomial, T, cyclotomic_poly, is_cyclotomic_type, v_poly

MU0 = 1.1762808182599175
# spectral radii of the critical stars, computed offline at 30 digits
TABLE1_RHO = {
    (2, 3, 11): 1.10647137659417,
    (2, 4, 9): 1.13295293839656,
    (2, 5, 8): 1.15746643214358,
    (2, 6, 7): 1.16697490450047,
    (3, 3, 8): 1.1498548569799,
    (3, 4, 7): 1.18476429936405,
    (3, 5, 6): 1.19667327239196,
    (4, 4, 6): 1.21754492247224,
    (4, 5, 5): 1.22774956237298,
}


def test_factor_expression_parsing():
    e = catalog.parse_factor_expression("Phi2^2*Phi4*(1,0,1)")
    assert e.cyclotomic == {2: 2, 4: 1}
    assert e.polynomial == T * T + 1
    assert catalog.parse_factor_expression("(T-1)^2*v3").value == (T - 1) ** 2 * v_poly(3)
    assert catalog.parse_factor_expression("").value == 1
    for bad in ("Phi", "Phi2**2", "w3"):
        with pytest.raises(DomainError):
            catalog.parse_factor_expression(bad)


def test_fixture_sizes():
    assert len(catalog.load_table1()) == 9
    assert len(catalog.load_table2()) == 22


def test_rho_truncation_rule():
    assert catalog.rho_matches_printed(1.17628, 1.1762)
    assert catalog.rho_matches_printed(1.17621, 1.1762)
    assert not catalog.rho_matches_printed(1.17619, 1.1762)
    assert not catalog.rho_matches_printed(1.17631, 1.1762)


def test_table1_rows():
    rows = {r.weights: r for r in catalog.reproduce_table1()}
    assert set(rows) == set(TABLE1_RHO)
    for w, rho in TABLE1_RHO.items():
        r = rows[w]
        assert r.rho == pytest.approx(rho, abs=1e-11)
        assert r.mahler == pytest.approx(rho ** 2, abs=1e-9)
        assert r.non_cyclotomic and r.printed_phi_divide
        assert not r.spectrum_condition
    assert [w for w, r in rows.items() if not r.passed] == [(4, 4, 6)]


def test_table2_rows():
    rows = catalog.reproduce_table2()
    assert all(r.factors_match and r.remainder_one and r.energy_is_degree for r in rows)
    assert all(r.matrix_order == r.lcm_of_indices for r in rows)
    bad = [r.weights for r in rows if not r.period_matches]
    assert bad == [(2, 3, 10)]


def test_dynkin_tables():
    rep = catalog.reproduce_dynkin_tables()
    assert rep.passed
    assert len(rep.extended) >= 11
    e8 = next(r for r in rep.dynkin if r.label == "E8")
    assert e8.computed == "Phi30" and e8.period == 30


def test_hypercritical():
    rep = catalog.hypercritical_ordering(12)
    assert rep.c == pytest.approx(1.324717957244746, abs=1e-12)
    assert rep.rho_245 == pytest.approx(1.2806381562677576, abs=1e-11)
    assert rep.rho_23m[10] == pytest.approx(rep.rho_245, abs=1e-11)
    assert rep.failures() == [10, 11, 12]
    assert not rep.decreasing
    with pytest.raises(DomainError):
        catalog.hypercritical_ordering(7)


def test_plastic_number_is_root():
    c = catalog.plastic_number()
    assert abs(c ** 3 - c - 1) < 1e-12


def test_mu0_three_ways_agree():
    vals = catalog.mu0_three_ways()
    assert set(vals) == {"sturm", "star", "matrix"}
    for v in vals.values():
        assert v == pytest.approx(MU0, abs=1e-10)


@pytest.mark.parametrize(
    "arms,size,mahler",
    [([2, 3, 8], 10, MU0), ([2, 4, 6], 9, 1.2806381562677576), ([3, 3, 4], 8, 1.4012683679398549)],
)
def test_minimal_subtrees_of_stars(arms, size, mahler):
    found = catalog.minimal_non_cyclotomic_subtrees(algebras.star_tree(arms))
    assert len(found) == 1
    assert found[0].size == size
    assert found[0].mahler == pytest.approx(mahler, abs=1e-9)


def test_minimal_subtrees_deletion_property():
    tree = algebras.star_tree([2, 3, 9])
    c = algebras.cartan_of_tree(tree)
    for sub in catalog.minimal_non_cyclotomic_subtrees(tree):
        idx = [v - 1 for v in sub.vertices]
        assert not is_cyclotomic_type(algebras.coxeter_polynomial(c.principal(idx)))
        # every connected one-vertex deletion is cyclotomic
        for drop in idx:
            rest = [v for v in idx if v != drop]
            sub_tree_edges = [(a, b) for a, b in tree.undirected_edges() if a in rest and b in rest]
            if len(sub_tree_edges) == len(rest) - 1:
                assert is_cyclotomic_type(algebras.coxeter_polynomial(c.principal(rest)))


def test_minimal_subtrees_cyclotomic_trees():
    assert catalog.minimal_non_cyclotomic_subtrees(algebras.dynkin_tree("E", 8)) == []
    assert catalog.minimal_non_cyclotomic_subtrees(algebras.d_tilde_tree(6)) == []
    with pytest.raises(SizeLimit):
        catalog.minimal_non_cyclotomic_subtrees(algebras.path_tree(17))


def test_negative_example():
    rep = catalog.negative_example()
    assert rep.holds
    assert rep.verdict.first_failure == "recurrence_holds"
    assert rep.wild_mahler == pytest.approx(1.722083805739042, abs=1e-9)
    t = catalog.extension_tower()
    assert t.polynomials[-1] == cyclotomic_poly(42)
    assert t.polynomials[5] == IntPolynomial([1, 1, -2, -4, -2, 1, 1])
