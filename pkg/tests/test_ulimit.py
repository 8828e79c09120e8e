"""Coherent families, the two embeddings, limit-level identity checks and
separation probes."""

import pytest

from qschur.laurent import RatFunc, qint
from qschur.rootdata import dominant_weights_up_to_height, preset
from qschur.schur import build_schur
from qschur.ulimit import (LimitElement, check_Kh_identity, check_u_relations,
                           check_uhat_relations, cofinal_consistency,
                           coherent_basis_check, hat_E, hat_K, hat_divided,
                           hat_one, probe_schedule, separation_probe, theta,
                           theta_dot, verify_coherence)
from qschur.words import WordExpr


def a1_chain():
    a1 = preset("A1")
    pi0 = a1.saturate([(2,)])
    pi1 = pi0.union(a1.saturate([(3,)]))
    pi2 = pi1.union(a1.saturate([(4,)]))
    return a1, [pi0, pi1, pi2]


class TestCoherence:
    def test_hat_generators_are_coherent(self):
        datum, chain = a1_chain()
        for el in (hat_E(datum, 1, 0), hat_E(datum, -1, 0),
                   hat_K(datum, (1,)), hat_one(datum, (2,)),
                   hat_divided(datum, 1, 0, 2)):
            assert verify_coherence(el, chain)["ok"]

    def test_sums_and_products_stay_coherent(self):
        datum, chain = a1_chain()
        e, f = hat_E(datum, 1, 0), hat_E(datum, -1, 0)
        assert verify_coherence(e + f, chain)["ok"]
        assert verify_coherence(e * f - f * e, chain)["ok"]

    def test_corrupted_evaluator_is_caught(self):
        datum, chain = a1_chain()

        def broken(pi):
            S = build_schur(pi)
            if len(list(pi)) > 2:
                return S.one()
            return S.generator(1, 0)

        report = verify_coherence(LimitElement(datum, broken), chain)
        assert not report["ok"]
        assert any(link["witness"] for link in report["links"])

    def test_chain_must_be_nested(self):
        datum, chain = a1_chain()
        with pytest.raises(ValueError):
            verify_coherence(hat_K(datum, (1,)), [chain[2], chain[0]])

    def test_cofinal_consistency_across_two_chains(self):
        datum, chain = a1_chain()
        other = [datum.saturate([(0,)]), chain[1]]
        el = hat_E(datum, 1, 0) * hat_K(datum, (1,))
        report = cofinal_consistency(el, chain, other)
        assert report["ok"]
        assert report["comparisons"]

    def test_memoization_is_transparent(self):
        datum, chain = a1_chain()
        fresh = LimitElement(datum,
                             lambda pi: build_schur(pi).generator(1, 0),
                             use_memo=False)
        memo = hat_E(datum, 1, 0)
        for pi in chain:
            assert memo.at(pi) == fresh.at(pi)
            assert memo.at(pi) == fresh.at(pi)   # second call, same value


class TestEmbeddings:
    def test_theta_is_multiplicative_on_words(self):
        datum, chain = a1_chain()
        x = WordExpr.E(0) * WordExpr.K((1,))
        y = WordExpr.F(0) + WordExpr.divided(0, 2)
        for pi in chain:
            lhs = theta(datum, x * y).at(pi)
            rhs = theta(datum, x).at(pi) * theta(datum, y).at(pi)
            assert lhs == rhs

    def test_theta_is_additive(self):
        datum, chain = a1_chain()
        x, y = WordExpr.E(0), WordExpr.divided(0, 2, -1)
        for pi in chain:
            assert theta(datum, x + y).at(pi) \
                == theta(datum, x).at(pi) + theta(datum, y).at(pi)

    def test_theta_dot_requires_modified_expression(self):
        datum, _ = a1_chain()
        with pytest.raises(ValueError):
            theta_dot(datum, WordExpr.E(0))
        el = theta_dot(datum, WordExpr.E(0) * WordExpr.idem((0,)))
        assert el is not None

    def test_theta_dot_multiplicative(self):
        a2 = preset("A2")
        x = WordExpr.E(0) * WordExpr.idem((1, 1))
        y = WordExpr.idem((1, 1)) * WordExpr.F(1)
        pi = a2.saturate([(1, 1)])
        lhs = theta_dot(a2, x * y).at(pi)
        rhs = theta_dot(a2, x).at(pi) * theta_dot(a2, y).at(pi)
        assert lhs == rhs


class TestLimitIdentities:
    @pytest.mark.parametrize("name", ["A1", "A1adj", "A1xA1", "A2", "B2"])
    def test_k_is_weighted_idempotent_sum(self, name):
        datum = preset(name)
        for mu in dominant_weights_up_to_height(datum, 4):
            report = check_Kh_identity(datum.saturate([mu]))
            assert all(r["ok"] for r in report), (name, mu)

    @pytest.mark.parametrize("name", ["A1", "A2", "B2"])
    def test_unmodified_relations_project_correctly(self, name):
        datum = preset(name)
        for mu in dominant_weights_up_to_height(datum, 3):
            report = check_u_relations(datum.saturate([mu]))
            assert all(r["ok"] for r in report), (name, mu)

    def test_truncated_presentation_alias(self):
        a1 = preset("A1")
        report = check_uhat_relations(a1.saturate([(2,)]))
        assert all(r["ok"] for r in report)


class TestProbes:
    def test_schedule_is_cofinal_over_window(self):
        a1 = preset("A1")
        sched = probe_schedule(a1, 4)
        for mu in dominant_weights_up_to_height(a1, 4):
            assert any(mu in pi for pi in sched)

    def test_separation_finds_idempotents(self):
        a1 = preset("A1")
        pi = separation_probe(a1, WordExpr.idem((4,)), 4)
        assert pi is not None
        assert (4,) in pi
        pi = separation_probe(a1, WordExpr.idem((1,)), 4)
        assert list(pi) == [(1,)]

    def test_separation_family_height_4(self):
        # every element of {1_lam, E^(a)1_lam, F^(b)1_lam} is nonzero in
        # the modified form, and a schedule tall enough to contain the
        # shifted weight must separate it
        for name in ("A1", "A2"):
            datum = preset(name)
            for lam in dominant_weights_up_to_height(datum, 4):
                probes = [(WordExpr.idem(lam), lam)]
                for a in (1, 2):
                    for i in range(datum.rank):
                        alpha = datum.simple_roots[i]
                        for sign in (1, -1):
                            shifted = tuple(
                                x + sign * a * y
                                for x, y in zip(lam, alpha))
                            probes.append(
                                (WordExpr.divided(i, a, sign)
                                 * WordExpr.idem(lam),
                                 datum.dominant_representative(shifted)))
                for expr, needed in probes:
                    bound = max(6, datum.height(needed))
                    found = separation_probe(datum, expr, bound)
                    assert found is not None, (name, lam, expr)

    def test_coherent_family_spans_small_algebra(self):
        a1 = preset("A1")
        pi = a1.saturate([(1,)])
        exprs = [WordExpr.idem((1,)), WordExpr.idem((-1,))]
        exprs += [WordExpr.E(0) * WordExpr.idem((-1,)),
                  WordExpr.F(0) * WordExpr.idem((1,)),
                  WordExpr.E(0) * WordExpr.idem((3,))]
        report = coherent_basis_check(a1, exprs, pi)
        assert report["dimension"] == 4
        assert report["rank"] == 4
        assert report["spanning"]
