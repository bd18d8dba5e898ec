import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import lists
from residuum.constructions import all_partial_magmas, complex_algebra, cyclic_group, pair_groupoid, PartialMagma
from residuum.lattice import boolean_lattice, chain, m3
from residuum.report import ConstructionError, InconsistentAlgebraError
from residuum.residuation import (
    ResAlgebra,
    check_converse_inequality,
    check_left_inequality,
    check_mirror_inequality,
    check_product_join_preservation,
    check_residual_roundtrip,
    check_residuated_lattice,
    derive_product,
    residuals_from_product,
    verify_axioms,
)


@st.composite
def magmas(draw, max_size=3):
    n = draw(st.integers(1, max_size))
    cells = draw(st.lists(st.integers(-1, n - 1), min_size=n * n, max_size=n * n))
    return PartialMagma(np.array(cells).reshape(n, n))


def corrupted_z3(z3):
    lres = z3.lres.copy()
    lres[1, 1] = 0  # {0}\{0} := {}
    return ResAlgebra(z3.lat, lres, z3.rres)


def test_z3_tables_match_set_oracle(z3):
    ref = oracles.SetAlgebra(3, oracles.group_op(3, lambda a, b: (a + b) % 3))
    for A in ref.elems:
        for B in ref.elems:
            a, b = oracles.mask_of(A), oracles.mask_of(B)
            assert z3.prod[a, b] == oracles.mask_of(ref.mul(A, B))
            assert z3.lres[a, b] == oracles.mask_of(ref.lres(A, B))
            assert z3.rres[a, b] == oracles.mask_of(ref.rres(A, B))


class TestVerifyAxioms:
    def test_boolean_classical(self):
        lat = chain(2)
        imp = [[1, 1], [0, 1]]  # a\c = not a or c
        alg = ResAlgebra(lat, imp, np.array(imp).T)
        rep = verify_axioms(alg)
        assert rep.ok and rep.info["distributive"]

    def test_z3(self, z3):
        assert verify_axioms(z3).ok

    def test_corrupted_witness(self, z3):
        bad = corrupted_z3(z3)
        rep = verify_axioms(bad)
        leq, _, _, lres, rres = lists(bad)
        assert not rep.ok
        assert rep.witness == oracles.first_residuation_failure(leq, lres, rres)
        assert rep.witness == (1, 1, 1)

    def test_non_distributive_is_warning(self):
        lat = m3()
        n = lat.size
        # constant-top residuals residuate the constant-bottom product
        top = np.full((n, n), lat.top)
        rep = verify_axioms(ResAlgebra(lat, top, top))
        assert rep.ok
        assert not rep.info["distributive"] and "warning" in rep.info

    def test_shape_mismatch(self):
        with pytest.raises(ConstructionError):
            ResAlgebra(chain(2), [[1, 1]], [[1, 1], [0, 1]])


class TestProduct:
    def test_boolean_is_meet(self, bool2, bool4):
        for alg in (bool2, bool4):
            assert np.array_equal(alg.prod, alg.lat.meet)

    def test_z3_singletons(self, z3):
        assert z3.label(int(z3.prod[z3.index("{1}"), z3.index("{2}")])) == "{0}"
        assert z3.label(int(z3.prod[z3.index("{1,2}"), z3.index("{1,2}")])) == "{0,1,2}"

    def test_matches_oracle(self, z3):
        leq, _, meet, lres, _ = lists(z3)
        assert derive_product(z3).tolist() == oracles.derived_product(leq, meet, lres)

    def test_inconsistent(self, z3):
        bad = corrupted_z3(z3)
        with pytest.raises(InconsistentAlgebraError):
            derive_product(bad)
        with pytest.raises(InconsistentAlgebraError):
            bad.prod
        # unchecked derivation still returns a table
        assert derive_product(bad, check=False).shape == (8, 8)

    def test_roundtrip_and_join_preservation(self, z3, bool4):
        for alg in (z3, bool4, complex_algebra(pair_groupoid(2))):
            assert check_residual_roundtrip(alg).ok
            assert check_product_join_preservation(alg).ok
            lres, rres = residuals_from_product(alg.lat, alg.prod)
            assert np.array_equal(lres, alg.lres) and np.array_equal(rres, alg.rres)

    def test_z3_residuated_lattice(self, z3):
        assert z3.unit == z3.index("{0}")
        assert check_residuated_lattice(z3).ok


class TestInequalities:
    def test_boolean(self, bool2):
        for f in (check_left_inequality, check_converse_inequality, check_mirror_inequality):
            assert f(bool2).ok

    def test_boolean_eight(self):
        from residuum.constructions import heyting_from_dl
        alg = heyting_from_dl(boolean_lattice(3))
        leq, join, _, lres, _ = lists(alg)
        assert oracles.left_inequality(leq, join, lres) is None
        assert check_left_inequality(alg).ok

    def test_z3(self, z3):
        leq, join, _, lres, _ = lists(z3)
        rep = check_left_inequality(z3)
        # {0,1}\{0,1} = {0}, while {0,1}\{0} and {0,1}\{1} are both empty
        assert rep.witness == oracles.left_inequality(leq, join, lres) == (3, 1, 2)
        assert check_converse_inequality(z3).ok
        mirror = check_mirror_inequality(z3)
        assert mirror.ok == rep.ok
        assert mirror.witness == rep.witness

    def test_vee_passes(self, vee):
        leq, join, _, lres, _ = lists(vee)
        assert oracles.left_inequality(leq, join, lres) is None
        assert check_left_inequality(vee).ok

    def test_wedge_fails(self, wedge):
        leq, join, _, lres, _ = lists(wedge)
        rep = check_left_inequality(wedge)
        assert not rep.ok
        assert rep.witness == oracles.left_inequality(leq, join, lres)

    def test_pair_groupoid_mirror(self):
        alg = complex_algebra(pair_groupoid(2))
        leq, join, _, _, rres = lists(alg)
        # mirror scan on (b v c)/a, witness ordered (a, b, c)
        want = None
        n = alg.size
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if want is None and not leq[rres[join[b][c]][a]][join[rres[b][a]][rres[c][a]]]:
                        want = (a, b, c)
        assert check_mirror_inequality(alg).witness == want

    def test_converse_every_small_magma(self):
        for m in all_partial_magmas(2):
            assert check_converse_inequality(complex_algebra(m)).ok


@settings(max_examples=40, deadline=None)
@given(magmas())
def test_complex_algebra_properties(m):
    alg = complex_algebra(m)
    assert verify_axioms(alg).ok
    assert check_converse_inequality(alg).ok
    assert check_residual_roundtrip(alg).ok
    leq, _, meet, lres, rres = lists(alg)
    prod = oracles.derived_product(leq, meet, lres)
    assert alg.prod.tolist() == prod
    assert oracles.first_adjunction_failure(leq, lres, rres, prod) is None


@settings(max_examples=40, deadline=None)
@given(magmas(max_size=3), st.integers(0, 63), st.integers(0, 63), st.integers(0, 7))
def test_mutation_detected(m, a, c, v):
    alg = complex_algebra(m)
    n = alg.size
    a, c, v = a % n, c % n, v % n
    lres = alg.lres.copy()
    if lres[a, c] == v:
        return
    lres[a, c] = v
    bad = ResAlgebra(alg.lat, lres, alg.rres)
    leq, _, _, lr, rr = lists(bad)
    rep = verify_axioms(bad)
    assert not rep.ok
    if rep.detail.startswith("residuation law"):
        assert rep.witness == oracles.first_residuation_failure(leq, lr, rr)
