from fractions import Fraction

import hodgeft


def test_psi_values():
    assert hodgeft.psi_intersection(0, [0, 0, 0]) == 1
    assert hodgeft.psi_intersection(1, [1]) == Fraction(1, 24)
    assert hodgeft.psi_intersection(2, [4]) == Fraction(1, 1152)
    assert hodgeft.psi_intersection(0, [2, 0, 0]) == 0


def test_point_algebra_correlators():
    point = hodgeft.point_algebra()
    assert all(c["pass"] for c in point.check_axioms())
    assert hodgeft.correlator(point, 0, [(0, 0), (0, 0), (0, 0)]) == 1
    assert hodgeft.correlator(point, 1, [(1, 0)]) == Fraction(1, 24)


def test_block_algebra_identities():
    alg = hodgeft.block6_algebra()
    assert all(c["pass"] for c in alg.check_axioms())
    eng = hodgeft.CorrelatorEngine(alg)
    for b in range(alg.dim):
        rep = eng.verify_main_lemma(0, [(0, b), (0, 0), (0, 2), (0, 3)])
        assert rep["pass"], rep
    rep = eng.verify_string(0, [(1, 1), (0, 2), (0, 3)])
    assert rep["pass"], rep


def test_frobenius_products():
    frob = hodgeft.frobenius_algebra(3)
    x = ["0", "1", "0"]
    assert frob.multiply(x, x) == ["0", "0", "1"]
    assert frob.integrate(frob.multiply(x, x)) == "1"
    assert frob.scalar_product(x, x) == "1"


def test_search_finds_frozen_fixture():
    res = hodgeft.search_block_algebra("dim6-minimal", 200)
    assert res["found"]
    assert res["algebra"].dim == 6
