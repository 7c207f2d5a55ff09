"""One test per acceptance criterion; each prints a PASS/FAIL line before asserting."""

import random

import networkx as nx

from coxmahler import algebras, catalog, spectra, towers
from coxmahler.polycore import IntPolynomial, T, is_cyclotomic_type, tensor_coxeter, v_poly

LEHMER_COEFFS = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]


def _tree_from_graph(g: nx.Graph, rng: random.Random) -> algebras.TreeQuiver:
    arrows = [(a + 1, b + 1) if rng.random() < 0.5 else (b + 1, a + 1) for a, b in g.edges()]
    return algebras.TreeQuiver(g.number_of_nodes(), tuple(arrows))


def _random_tree(rng: random.Random, n: int) -> algebras.TreeQuiver:
    arrows = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        arrows.append((u, v) if rng.random() < 0.5 else (v, u))
    return algebras.TreeQuiver(n, tuple(arrows))


def test_criterion_01_lehmer(record_criterion):
    chi = algebras.star_coxeter([2, 3, 7])
    m = spectra.mahler_measure(chi)
    rho = spectra.spectral_radius(chi)
    rng = random.Random(1)
    tree = algebras.star_tree([2, 3, 7])
    oriented = [algebras.tree_coxeter_polynomial(tree.reoriented(rng)) for _ in range(5)]
    oriented_m = [spectra.mahler_measure(p) for p in oriented]
    ok = (
        list(chi.coeffs) == LEHMER_COEFFS
        and abs(m - 1.176280) <= 5e-6
        and abs(m - rho) <= 1e-8
        and all(p == chi for p in oriented)
        and all(abs(x - m) <= 1e-8 for x in oriented_m)
    )
    record_criterion(1, "Lehmer reproduction", ok, f"M={m:.10f}, rho={rho:.10f}")
    assert ok


def test_criterion_02_dynkin(record_criterion):
    rep = catalog.reproduce_dynkin_tables()
    labels = {r.label for r in rep.dynkin}
    wanted = {f"A{n}" for n in range(1, 11)} | {f"D{n}" for n in range(4, 11)} | {"E6", "E7", "E8"}
    periods = {r.label: r.period for r in rep.dynkin if r.label.startswith("E")}
    bad = [r.label for r in rep.dynkin if not r.passed]
    ok = wanted <= labels and not bad and periods == {"E6": 12, "E7": 18, "E8": 30}
    record_criterion(2, "Dynkin golden tests", ok, f"{len(rep.dynkin)} rows, failures {bad}")
    assert ok


def test_criterion_03_extended_dynkin(record_criterion):
    rep = catalog.reproduce_dynkin_tables()
    kinds = {r.label.rstrip("0123456789,") for r in rep.extended}
    bad = [r.label for r in rep.extended if not r.passed]
    ok = {"A~", "D~", "E~"} <= kinds and not bad
    record_criterion(3, "extended Dynkin golden tests", ok, f"{len(rep.extended)} rows, failures {bad}")
    assert ok


def test_criterion_04_star_sum(record_criterion):
    rng = random.Random(4)
    stars = []
    while len(stars) < 30:
        arms = [rng.randint(1, 6) for _ in range(rng.randint(1, 5))]
        if 1 + sum(a - 1 for a in arms) <= 12:
            stars.append(arms)
    bad = [a for a in stars if algebras.star_coefficient_sum(a) != algebras.star_coxeter(a)(1)]
    ok = not bad
    record_criterion(4, "star sum formula", ok, f"30 stars, failures {bad}")
    assert ok


def test_criterion_05_acampo(record_criterion):
    rng = random.Random(5)
    count, bad = 0, []
    for n in range(1, 10):
        graphs = [nx.empty_graph(1)] if n == 1 else nx.nonisomorphic_trees(n)
        for g in graphs:
            tree = _tree_from_graph(g, rng)
            chi = algebras.tree_coxeter_polynomial(tree)
            kappa = algebras.adjacency_char_poly(tree)
            lhs = chi.substitute_power(2)
            rhs = IntPolynomial([0])
            for k, c in enumerate(kappa.coeffs):
                rhs = rhs + c * (T * T + 1) ** k * T ** (n - k)
            res = towers.representing_polynomial(chi)
            count += 1
            if lhs != rhs or res.q != kappa:
                bad.append(sorted(g.edges()))
    ok = not bad and count == 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47
    record_criterion(5, "A'Campo identity", ok, f"{count} trees up to isomorphism, {len(bad)} failures")
    assert ok


def test_criterion_06_table1(record_criterion):
    rows = catalog.reproduce_table1()
    bad = [(r.weights, round(r.rho, 6), r.printed_rho) for r in rows if not r.passed]
    ok = len(rows) == 9 and not bad
    record_criterion(6, "Table 1 critical weights", ok, f"{len(rows)} rows, failures {bad}")
    assert ok


def test_criterion_07_table2(record_criterion):
    rows = catalog.reproduce_table2()
    exact = all(r.factors_match and r.remainder_one for r in rows)
    period_bad = [r.weights for r in rows if not r.period_matches]
    exempt = {r.weights: (r.lcm_of_indices, r.printed_period) for r in rows if r.weights == (2, 3, 10)}
    ok = exact and period_bad == [(2, 3, 10)] and exempt == {(2, 3, 10): (144, 72)}
    record_criterion(
        7, "Table 2 cyclotomic weights", ok,
        f"{len(rows)} rows, exact factors {exact}, documented period discrepancy {exempt}",
    )
    assert ok


def test_criterion_08_tubular(record_criterion):
    cases = [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 2, 2)]
    bad = [
        w for w in cases
        if algebras.extended_canonical_coxeter(w) != algebras.canonical_coxeter(w[:-1] + (w[-1] + 1,))
    ]
    ok = not bad
    record_criterion(8, "tubular identity", ok, f"failures {bad}")
    assert ok


def test_criterion_09_ladder(record_criterion):
    rep = towers.verify_r_ladder_recurrences(24)
    fam = rep.families()
    tensor_ok = all(
        algebras.r_ladder_coxeter(2 * k) == tensor_coxeter(v_poly(k + 1), v_poly(3)) for k in range(1, 13)
    )
    ok = rep.holds and tensor_ok
    wrong_len = {n: a for n, (a, b) in rep.length.items() if a != b}
    record_criterion(9, "R-ladder suite", ok, f"families {fam}, length mismatches at {sorted(wrong_len)}")
    assert ok


def _corpus() -> dict[str, IntPolynomial]:
    out: dict[str, IntPolynomial] = {}
    for e in catalog.load_table1():
        out[f"table1{e.weights}"] = algebras.extended_canonical_coxeter(e.weights)
    for e in catalog.load_table2():
        out[f"table2{e.weights}"] = algebras.extended_canonical_coxeter(e.weights)
    rep = catalog.reproduce_dynkin_tables()
    for kind, ns in (("A", range(1, 11)), ("D", range(4, 11)), ("E", range(6, 9))):
        for n in ns:
            out[f"{kind}{n}"] = algebras.tree_coxeter_polynomial(algebras.dynkin_tree(kind, n))
    for r in rep.extended:
        out[r.label] = r.matrix_poly
    for n in range(1, 25):
        out[f"R{n}"] = algebras.r_ladder_coxeter(n)
    rng = random.Random(10)
    for i in range(50):
        out[f"tree{i}"] = algebras.tree_coxeter_polynomial(_random_tree(rng, rng.randint(2, 14)))
    return out


def test_criterion_10_inequality_chains(record_criterion):
    failures: dict[str, int] = {}
    inputs = _corpus()
    for name, p in inputs.items():
        for link in spectra.measure_inequality_report(p).failures():
            failures[link] = failures.get(link, 0) + 1
    ok = not failures
    record_criterion(10, "inequality chains", ok, f"{len(inputs)} polynomials, failing links {failures}")
    assert ok


def test_criterion_11_hypercritical(record_criterion):
    rep = catalog.hypercritical_ordering(30)
    record_criterion(
        11, "hypercritical ordering", rep.holds,
        f"c={rep.c:.10f}, rho[2,4,5]={rep.rho_245:.10f}, failing m {rep.failures()}",
    )
    assert rep.holds


TOWER_SCHEDULES = ["linear:2..10", "canonical:2,3,5..12", "extended:2,3,5..12", "rladder:1..12"]


def test_criterion_12_towers(record_criterion):
    problems = {}
    for sched in TOWER_SCHEDULES:
        t = towers.tower_from_schedule(sched)
        v = towers.verify_tower(t)
        issues = []
        if not (v.recurrence_holds and v.chebyshev_holds):
            issues.append("recurrences")
        if not v.minus_one_consistent or v.p is None or v.p > 2:
            issues.append(f"(-1)-invariant p={v.p}")
        if not v.spectrum_inheritance:
            issues.append("spectrum inheritance")
        if sched.startswith("extended"):
            for top in range(len(t.polynomials)):
                if is_cyclotomic_type(t.polynomials[top]):
                    continue
                prefix = towers.TowerSpec(t.polynomials[: top + 1], t.representing[: top + 1], t.label)
                if prefix.stop - prefix.start < 1:
                    continue
                if not towers.mahler_monotonicity(prefix).mahler_bounds_hold:
                    issues.append(f"Mahler bounds at degree {prefix.stop}")
        if issues:
            problems[sched] = issues
    ok = not problems
    record_criterion(12, "interlaced towers", ok, f"problems {problems}")
    assert ok


def test_criterion_13_minimal_subtrees(record_criterion):
    mu0 = catalog.mu0_reference()
    found = {}
    ok = True
    for arms, size in (([2, 3, 8], 10), ([2, 4, 6], 9), ([3, 3, 4], 8)):
        subs = catalog.minimal_non_cyclotomic_subtrees(algebras.star_tree(arms))
        found[tuple(arms)] = [(s.size, round(s.mahler, 6)) for s in subs]
        ok &= [s.vertices for s in subs] == [tuple(range(1, size + 1))]
        ok &= all(s.mahler >= mu0 - 1e-6 for s in subs)
    tame = [algebras.dynkin_tree("E", 8)] + [algebras.d_tilde_tree(n) for n in range(4, 9)]
    tame += [algebras.star_tree(a) for a in ([3, 3, 3], [2, 4, 4], [2, 3, 6])]
    nonempty = [t.n for t in tame if catalog.minimal_non_cyclotomic_subtrees(t)]
    ok &= not nonempty
    record_criterion(13, "minimal wild subtrees", ok, f"{found}, non-empty tame trees {nonempty}")
    assert ok


def test_criterion_14_negative_example(record_criterion):
    rep = catalog.negative_example()
    ok = rep.holds and rep.verdict.first_failure is not None
    record_criterion(
        14, "non-interlaced extension tower", ok,
        f"first failure {rep.verdict.first_failure}, top {rep.top_factorization} M={rep.top_mahler:.6f}, "
        f"member {rep.wild_member} M={rep.wild_mahler:.6f}",
    )
    assert ok
