"""Cartan data, root data, Weyl orbits, dominance order, saturated sets."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qschur.rootdata import (CartanDatum, PRESET_NAMES, RootDatum,
                             SaturatedSet, dominant_weights_up_to_height,
                             preset, simply_connected)


class TestCartanDatum:
    def test_presets_are_valid_and_finite_type(self):
        for name in PRESET_NAMES:
            datum = preset(name)
            assert datum.cartan.validate() == []
            assert datum.cartan.is_finite_type()

    def test_symmetrizers_and_cartan_entries(self):
        b2 = preset("B2")
        assert b2.cartan.d(0) == 2 and b2.cartan.d(1) == 1
        assert b2.cartan.cartan_entry(0, 1) == -1
        assert b2.cartan.cartan_entry(1, 0) == -2
        a2 = preset("A2")
        assert a2.cartan.cartan_entry(0, 1) == -1
        assert a2.cartan.d(0) == 1

    def test_affine_form_is_not_finite_type(self):
        c = CartanDatum(((2, -2), (-2, 2)))
        assert not c.is_finite_type()
        assert any("positive definite" in e for e in c.validate())

    def test_nonsymmetric_form_is_invalid(self):
        c = CartanDatum(((2, -1), (-2, 2)))
        assert c.validate() != []

    def test_odd_diagonal_is_invalid(self):
        c = CartanDatum(((3, -1), (-1, 2)))
        assert c.validate() != []


class TestRootDatum:
    def test_preset_validation(self):
        for name in PRESET_NAMES:
            assert preset(name).validate() == []

    def test_pairing_against_simple_roots(self):
        # <h_i, alpha_j> is the Cartan matrix
        for name in PRESET_NAMES:
            datum = preset(name)
            for i in range(datum.rank):
                for j in range(datum.rank):
                    assert datum.pair_i(i, datum.simple_roots[j]) \
                        == datum.cartan.cartan_entry(i, j)

    def test_a1_orbit_and_antidominant(self):
        a1 = preset("A1")
        assert set(a1.weyl_orbit((3,))) == {(3,), (-3,)}
        assert a1.antidominant((3,)) == (-3,)

    def test_a2_orbit_sizes(self):
        a2 = preset("A2")
        assert len(a2.weyl_orbit((1, 0))) == 3
        assert len(a2.weyl_orbit((1, 1))) == 6
        assert len(a2.weyl_orbit((0, 0))) == 1
        assert len(a2.weyl_orbit((2, 1))) == 6

    def test_b2_orbit_sizes(self):
        b2 = preset("B2")
        assert len(b2.weyl_orbit((1, 0))) == 4
        assert len(b2.weyl_orbit((0, 1))) == 4
        assert len(b2.weyl_orbit((1, 1))) == 8

    def test_dominance_examples(self):
        a2 = preset("A2")
        # (1,1) = (2,2) ... adjoint weight below (2,2)? use alpha sums:
        # (2,2) - (1,1) = (1,1) = alpha1 + alpha2... no: alpha1+alpha2=(1,1)
        assert a2.dominance_leq((1, 1), (2, 2))
        assert not a2.dominance_leq((2, 2), (1, 1))
        assert a2.dominance_leq((0, 0), (1, 1))
        assert not a2.dominance_leq((0, 0), (1, 0))   # not in root lattice
        a1 = preset("A1")
        assert a1.dominance_leq((0,), (2,))
        assert not a1.dominance_leq((1,), (2,))       # parity obstruction

    def test_dominance_is_a_partial_order(self):
        a2 = preset("A2")
        weights = [(a, b) for a in range(4) for b in range(4)]
        for lam in weights:
            assert a2.dominance_leq(lam, lam)
            for mu in weights:
                if lam == mu:
                    continue
                if a2.dominance_leq(lam, mu) and a2.dominance_leq(mu, lam):
                    pytest.fail(f"antisymmetry violated at {lam}, {mu}")
                for nu in weights:
                    if a2.dominance_leq(lam, mu) \
                            and a2.dominance_leq(mu, nu):
                        assert a2.dominance_leq(lam, nu)

    def test_positive_roots(self):
        a2 = preset("A2")
        pos = [root for root, _ in a2.positive_roots()]
        assert len(pos) == 3
        assert (1, 1) in pos                      # alpha1 + alpha2
        b2 = preset("B2")
        assert len(b2.positive_roots()) == 4
        a1xa1 = preset("A1xA1")
        assert len(a1xa1.positive_roots()) == 2

    def test_rho_pairs_to_one_with_simple_coroots(self):
        for name in PRESET_NAMES:
            datum = preset(name)
            rho = datum.rho()
            for i in range(datum.rank):
                assert datum.pair_i(i, rho) == 1

    def test_invariant_form_is_weyl_invariant(self):
        b2 = preset("B2")
        lam, mu = (2, 1), (1, 3)
        base = b2.invariant_form(lam, mu)
        for i in range(2):
            assert b2.invariant_form(b2.reflect(i, lam),
                                     b2.reflect(i, mu)) == base

    def test_height_doubles_along_dominant_sums(self):
        a1 = preset("A1")
        assert a1.height((0,)) == 0
        assert a1.height((1,)) == 1
        assert a1.height((3,)) == 3


class TestSaturatedSets:
    def test_a1_saturations(self):
        a1 = preset("A1")
        assert list(a1.saturate([(2,)])) == [(0,), (2,)]
        assert list(a1.saturate([(1,)])) == [(1,)]
        assert list(a1.saturate([(5,)])) == [(1,), (3,), (5,)]

    def test_a2_saturations(self):
        a2 = preset("A2")
        assert list(a2.saturate([(1, 1)])) == [(0, 0), (1, 1)]
        assert list(a2.saturate([(1, 0)])) == [(1, 0)]
        got = set(a2.saturate([(2, 2)]))
        assert got == {(0, 0), (1, 1), (2, 2), (0, 3), (3, 0)}

    def test_is_saturated_detects_gaps(self):
        a1 = preset("A1")
        full = a1.saturate([(4,)])
        assert full.is_saturated()
        broken = SaturatedSet(a1, [(4,)])
        assert not broken.is_saturated()

    def test_union_and_subset(self):
        a1 = preset("A1")
        small = a1.saturate([(2,)])
        big = small.union(a1.saturate([(3,)]))
        assert small.issubset(big)
        assert big.is_saturated()
        assert set(big) == {(0,), (1,), (2,), (3,)}

    def test_orbit_weights_are_weyl_stable(self):
        b2 = preset("B2")
        pi = b2.saturate([(1, 1)])
        orbit = pi.orbit_weights()
        for nu in orbit:
            for i in range(2):
                assert b2.reflect(i, nu) in orbit

    def test_saturation_is_downward_closed(self):
        for name in PRESET_NAMES:
            datum = preset(name)
            for mu in dominant_weights_up_to_height(datum, 4):
                pi = datum.saturate([mu])
                for lam in pi:
                    assert datum.dominance_leq(lam, mu)
                    assert datum.is_dominant(lam)
                assert pi.is_saturated()


class TestDominantEnumeration:
    def test_a1_window(self):
        a1 = preset("A1")
        got = dominant_weights_up_to_height(a1, 4)
        assert got == [(0,), (1,), (2,), (3,), (4,)]

    def test_windows_are_nested_and_cofinal(self):
        a2 = preset("A2")
        w4 = set(dominant_weights_up_to_height(a2, 4))
        w6 = set(dominant_weights_up_to_height(a2, 6))
        assert w4 <= w6
        assert (1, 1) in w4
        assert all(a2.is_dominant(mu) for mu in w6)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5),
       st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_dominant_sum_dominates_both_orders(a, b, c, d):
    a2 = preset("A2")
    lam, mu = (a, b), (c, d)
    s = (a + c, b + d)
    assert a2.is_dominant(s)
    # the orbit of the sum has height >= each summand's
    assert a2.height(s) >= max(a2.height(lam), a2.height(mu))


def test_simply_connected_from_matrix_matches_preset():
    datum = simply_connected(CartanDatum(((2, -1), (-1, 2))), name="X")
    a2 = preset("A2")
    assert datum.key()[1:] == a2.key()[1:]
