"""Submeasures, compatible pseudometrics, modular measures and their
generated congruences."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dlattice import (
    INF,
    NotMV,
    all_pairs,
    boolean_algebra,
    canonical_indicator,
    check_pseudometric,
    check_weakest,
    decompose_measure,
    diagonal,
    enumerate_dfilters,
    induced_congruence,
    is_d_congruence,
    is_dfilter_generator,
    is_k_submeasure,
    k_submeasure,
    kernel_uniformity,
    measure_uniformity,
    mo,
    modular_measure,
    modular_measure_basis,
    modular_measure_check,
    modular_measure_corpus,
    mv_absorption_from_subadditivity,
    mv_chain,
    pseudometric,
    spread_pseudometrics,
    submeasure_corpus,
    submeasure_from_pseudometric,
)
from dlattice.submeasures import (
    _random_monotone_values,
    measure_from_obj,
    measure_to_obj,
    submeasure_from_obj,
    submeasure_to_obj,
)


def test_submeasure_examples(c2, b2):
    assert is_k_submeasure(b2, [0, 0, 0, 0], 1)
    assert is_k_submeasure(b2, [0, 0, 0, 0], 7)
    # indicator of the complement of a generator, k = 1
    assert is_k_submeasure(b2, [0, 0, 1, 1], 1)
    # non-obvious pass case on the three chain
    assert is_k_submeasure(c2, [0, 1, 1], 1)
    # monotonicity failure
    bad = is_k_submeasure(c2, [0, 2, 1], 1)
    assert not bad and bad.reason == "monotone" and bad.witness == (1, 2)
    # subadditivity failure: eta(h+h) > 2*eta(h)
    bad = is_k_submeasure(c2, [0, 1, 3], 1)
    assert not bad and bad.reason == "subadditive" and bad.witness == (1, 1)


def test_kernel_uniformity_examples(b2):
    assert kernel_uniformity(k_submeasure(b2, [0, 0, 0, 0], 1)).rows == all_pairs(b2).rows
    assert kernel_uniformity(k_submeasure(b2, [0, 1, 1, 2], 1)).rows == diagonal(b2).rows
    eta = k_submeasure(b2, [0, 0, 1, 1], 1)
    assert kernel_uniformity(eta).blocks() == ((0, 1), (2, 3))


def test_check_weakest(b2):
    assert check_weakest(b2, k_submeasure(b2, [0, 0, 0, 0], 1)).ok
    assert check_weakest(b2, k_submeasure(b2, [0, 1, 2, 3], 1)).ok
    assert check_weakest(b2, k_submeasure(b2, [0, 0, 1, 1], 2)).ok


def test_infinity_is_isolated(b2):
    eta = k_submeasure(b2, [0, 0, INF, INF], 1)
    report = check_weakest(b2, eta)
    assert report.ok
    # a congruence merging a finite and an infinite value is not
    # class-constant, hence exempt from the weakest condition
    assert kernel_uniformity(eta).blocks() == ((0, 1), (2, 3))


def test_canonical_indicator_round_trip(small_algebras):
    for alg in small_algebras:
        for f in enumerate_dfilters(alg):
            eta = canonical_indicator(f)
            assert eta.k == 1
            assert is_k_submeasure(alg, eta.values, 1)
            assert kernel_uniformity(eta).rows == induced_congruence(f).rows


def test_submeasure_kernel_is_generator(small_algebras):
    for alg in small_algebras:
        for eta in submeasure_corpus(alg, count=30, seed=1):
            assert is_dfilter_generator(alg, eta.kernel_mask())


def test_discrete_metric_is_compatible(b2):
    d = [[0 if a == b else 1 for b in b2.elements] for a in b2.elements]
    assert check_pseudometric(b2, d, 1, 1)
    pm = pseudometric(b2, d, 1, 1)
    red = submeasure_from_pseudometric(pm)
    assert red.uniformities_equal
    assert red.eta.values == (0, 1, 1, 1)
    assert kernel_uniformity(red.eta).rows == diagonal(b2).rows


def test_pseudometric_rejections(b2):
    d = [[0] * 4 for _ in range(4)]
    d[0][3] = d[3][0] = 5
    verdict = check_pseudometric(b2, d, 1, 1)
    assert not verdict and verdict.reason == "triangle"


def test_spread_pseudometric_values(b2):
    mu = modular_measure(b2, [[0], [1], [2], [3]])
    d = spread_pseudometrics(mu)[0]
    assert d(0, 3) == 3
    assert d(1, 2) == 3
    assert d(0, 1) == 1
    assert all(d(a, a) == 0 for a in b2.elements)


def test_spread_pseudometrics_compatible(small_algebras):
    for alg in small_algebras:
        for mu in modular_measure_corpus(alg, count=6, seed=2):
            for pm in spread_pseudometrics(mu):
                assert check_pseudometric(alg, pm.d, 1, 1), alg.describe()
                red = submeasure_from_pseudometric(pm)
                assert red.uniformities_equal


def test_spread_join_translation_bound(small_algebras):
    # d(a v c, b v c) <= d(a, b) for spread pseudometrics
    for alg in small_algebras:
        for mu in modular_measure_corpus(alg, count=4, seed=5):
            for pm in spread_pseudometrics(mu):
                for a in alg.elements:
                    for b in alg.elements:
                        for c in alg.elements:
                            assert pm(alg.join(a, c), alg.join(b, c)) <= pm(a, b)


def test_modular_measure_examples(b2):
    assert modular_measure_check(b2, [[0], [0], [0], [0]])
    assert modular_measure_check(b2, [[0], [1], [2], [3]])
    verdict = modular_measure_check(b2, [[0], [1], [2], [5]])
    assert not verdict and verdict.reason == "additive" and verdict.witness == (1, 2)


def test_measure_uniformity_examples(b2):
    assert measure_uniformity(modular_measure(b2, [[0]] * 4)).rows == all_pairs(b2).rows
    assert measure_uniformity(modular_measure(b2, [[0], [1], [2], [3]])).rows \
        == diagonal(b2).rows
    mu = modular_measure(b2, [[0], [0], [3], [3]])
    assert measure_uniformity(mu).blocks() == ((0, 1), (2, 3))


def test_measure_uniformity_is_congruence_and_matches_submeasure(small_algebras):
    for alg in small_algebras:
        for mu in modular_measure_corpus(alg, count=6, seed=3):
            cong = measure_uniformity(mu)
            assert is_d_congruence(alg, cong)
            if mu.dim == 1 and all(v[0] >= 0 for v in mu.vectors):
                eta = k_submeasure(alg, [v[0] for v in mu.vectors], 1)
                assert kernel_uniformity(eta).rows == cong.rows


def test_decompose_measures(small_algebras):
    for alg in small_algebras:
        for mu in modular_measure_corpus(alg, count=6, seed=4):
            report = decompose_measure(mu)
            assert report.ok, report.render()


def test_decompose_strictly_finer_intersection(b3):
    # coordinates vanish on different atom ideals: the intersection is
    # strictly finer than each factor
    def weights(per_atom):
        return [sum(per_atom[i] for i in range(3) if (s >> i) & 1) for s in range(8)]

    mu = modular_measure(b3, list(zip(weights([0, 1, 1]), weights([1, 0, 1]))))
    report = decompose_measure(mu)
    assert report.ok
    assert report.counts["factors_strictly_coarser"] == 2
    assert measure_uniformity(mu).rows == diagonal(b3).rows


def test_measure_basis(b2, b3, mo2):
    assert len(modular_measure_basis(b2)) == 2
    assert len(modular_measure_basis(b3)) == 3
    assert len(modular_measure_basis(mv_chain(4))) == 1
    assert len(modular_measure_basis(mo2)) == 1
    for alg in (b2, b3, mo2, mv_chain(4)):
        for vec in modular_measure_basis(alg):
            assert modular_measure_check(alg, [[x] for x in vec])


def test_mv_absorption_examples():
    c3 = mv_chain(3)
    assert mv_absorption_from_subadditivity(c3, [0, 1, 2, 3])
    assert mv_absorption_from_subadditivity(mv_chain(2), [0, 1, 1])
    assert mv_absorption_from_subadditivity(c3, [0, 0, 0, 0])
    with pytest.raises(NotMV):
        mv_absorption_from_subadditivity(mo(2), [0] * 6)
    with pytest.raises(ValueError):
        # fails monotonicity, so the assumed conditions do not hold
        mv_absorption_from_subadditivity(c3, [0, 2, 1, 3])


def test_corpus_deterministic(b2):
    first = submeasure_corpus(b2, count=50, seed=9)
    second = submeasure_corpus(b2, count=50, seed=9)
    assert [(e.values, e.k) for e in first] == [(e.values, e.k) for e in second]
    mus1 = modular_measure_corpus(b2, count=15, seed=9)
    mus2 = modular_measure_corpus(b2, count=15, seed=9)
    assert [m.vectors for m in mus1] == [m.vectors for m in mus2]


def test_json_round_trips(b2):
    eta = k_submeasure(b2, [0, Fraction(1, 3), INF, INF], Fraction(3, 2))
    obj = submeasure_to_obj(eta)
    assert obj == {"values": [0, "1/3", "inf", "inf"], "k": "3/2"}
    back = submeasure_from_obj(b2, obj)
    assert back.values == eta.values and back.k == eta.k

    mu = modular_measure(b2, [[0, 0], [1, -1], [2, 1], [3, 0]], norm="sum")
    again = measure_from_obj(b2, measure_to_obj(mu))
    assert again.vectors == mu.vectors and again.norm == "sum"


_ALGS = [mv_chain(2), mv_chain(4), boolean_algebra(2), boolean_algebra(3), mo(2)]


@settings(deadline=None, max_examples=120)
@given(idx=st.integers(0, len(_ALGS) - 1), seed=st.integers(0, 10 ** 6))
def test_random_monotone_filter(idx, seed):
    import random

    alg = _ALGS[idx]
    values = _random_monotone_values(alg, random.Random(seed))
    verdict = is_k_submeasure(alg, values, 2)
    if verdict:
        eta = k_submeasure(alg, values, 2)
        assert is_dfilter_generator(alg, eta.kernel_mask())
        assert check_weakest(alg, eta).ok
