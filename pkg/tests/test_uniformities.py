"""Relations, D-congruences, and the filter/congruence correspondence.

relation_combine is checked against a set-comprehension oracle that builds
the image pairs directly from the displayed definitions; the congruence
enumeration is checked against the partition scan.
"""

import pytest
from hypothesis import given, settings, strategies as st

from dlattice import (
    DFilterGenerator,
    NotACongruence,
    NotEquivalence,
    Relation,
    all_pairs,
    alternative_entourages,
    boolean_algebra,
    congruence_from_partition,
    diagonal,
    enumerate_d_congruences,
    enumerate_dfilters,
    induced_congruence,
    is_d_congruence,
    mo,
    mv_chain,
    relation_combine,
    verify_isomorphism,
    zero_class,
)


def naive_combine(alg, u_pairs, v_pairs, op):
    out = set()
    for a1, a2 in u_pairs:
        for b1, b2 in v_pairs:
            if op == "join":
                out.add((alg.join(a1, b1), alg.join(a2, b2)))
            elif op == "meet":
                out.add((alg.meet(a1, b1), alg.meet(a2, b2)))
            else:
                if alg.leq(b1, a1) and alg.leq(b2, a2):
                    out.add((alg.ominus(a1, b1), alg.ominus(a2, b2)))
    return out


def _pairs_of(rel):
    return set(rel.pairs())


def test_combine_against_oracle(b2, c2, mo2):
    import random

    rng = random.Random(3)
    for alg in (b2, c2, mo2):
        for _ in range(25):
            u = [(rng.randrange(alg.n), rng.randrange(alg.n)) for _ in range(4)]
            v = [(rng.randrange(alg.n), rng.randrange(alg.n)) for _ in range(4)]
            ur = Relation(alg, _rows(alg, u))
            vr = Relation(alg, _rows(alg, v))
            for op in ("join", "meet", "minus"):
                got = _pairs_of(relation_combine(ur, vr, op))
                assert got == naive_combine(alg, _pairs_of(ur), _pairs_of(vr), op)


def _rows(alg, pairs):
    rows = [0] * alg.n
    for a, b in pairs:
        rows[a] |= 1 << b
    return tuple(rows)


def test_combine_examples(b2, c2):
    d = diagonal(b2)
    assert _pairs_of(relation_combine(d, d, "join")) == {(a, a) for a in b2.elements}
    full = all_pairs(c2)
    minus = relation_combine(full, diagonal(c2), "minus")
    assert _pairs_of(minus) == {(a, b) for a in c2.elements for b in c2.elements}
    u = Relation(b2, _rows(b2, [(0, 1)]))
    joined = _pairs_of(relation_combine(u, diagonal(b2), "join"))
    assert (2, 3) in joined  # (0 v b, a v b) = (b, 1)


def test_is_d_congruence_examples(b2):
    assert is_d_congruence(b2, diagonal(b2))
    assert is_d_congruence(b2, all_pairs(b2))
    bad = congruence_from_partition(b2, [[0, 1], [2], [3]])
    verdict = is_d_congruence(b2, bad)
    assert not verdict
    assert verdict.reason == "join_compatible"
    assert verdict.witness == (0, 1, 2)  # (0 v b, a v b) = (b, 1) not related


def test_not_equivalence_raises(b2):
    lopsided = Relation(b2, _rows(b2, [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)]))
    with pytest.raises(NotEquivalence):
        is_d_congruence(b2, lopsided)


def test_enumerate_modes_agree(small_algebras):
    for alg in small_algebras:
        brute = enumerate_d_congruences(alg, "brute")
        via = enumerate_d_congruences(alg, "via_filters")
        assert [c.rows for c in brute] == [c.rows for c in via]


def test_counts(c2, b2, mo2):
    assert len(enumerate_d_congruences(c2, "brute")) == 2
    assert len(enumerate_d_congruences(b2, "brute")) == 4
    assert len(enumerate_d_congruences(mo2, "brute")) == 2


def test_induced_congruence_examples(b2):
    assert induced_congruence(DFilterGenerator(b2, 0b0001)).rows == diagonal(b2).rows
    assert induced_congruence(DFilterGenerator(b2, 0b1111)).rows == all_pairs(b2).rows
    e = induced_congruence(DFilterGenerator(b2, 0b0011))
    assert e.blocks() == ((0, 1), (2, 3))


def test_induced_congruence_postconditions(small_algebras):
    # the image is always a D-congruence and its zero class is the generator
    for alg in small_algebras:
        for f in enumerate_dfilters(alg):
            e = induced_congruence(f)
            assert is_d_congruence(alg, e)
            assert e.rows[alg.zero] == f.mask


def test_zero_class_examples(b2):
    assert zero_class(diagonal(b2)).mask == 0b0001
    assert zero_class(all_pairs(b2)).mask == 0b1111
    e = induced_congruence(DFilterGenerator(b2, 0b0011))
    assert zero_class(e).mask == 0b0011


def test_zero_class_rejects_non_congruence(b2):
    bad = congruence_from_partition(b2, [[0, 1], [2], [3]])
    with pytest.raises(NotACongruence):
        zero_class(bad)


def test_alternative_entourages(b2, mo2):
    for alg in (b2, mo2):
        for f in enumerate_dfilters(alg):
            alt = alternative_entourages(f)
            assert alt.all_equal
            induced = induced_congruence(f)
            assert alt.e_plus.rows == induced.rows
            assert alt.e_minus.rows == induced.rows


def test_alternative_displayed_variant_differs_somewhere(b2):
    # reading the plus form with a difference on the right is asymmetric
    # and diverges already on the coarsest filter of any nontrivial algebra
    full = DFilterGenerator(b2, b2.full_mask)
    assert alternative_entourages(full).displayed_plus_differs


def test_congruences_absorb_diagonal_combines(small_algebras):
    # the four inclusion criteria restated through relation_combine
    for alg in small_algebras:
        d = diagonal(alg)
        for cong in enumerate_d_congruences(alg, "via_filters"):
            e = Relation(alg, cong.rows)
            for op in ("join", "meet", "minus"):
                assert relation_combine(e, d, op).issubset(e)
            assert relation_combine(d, e, "minus").issubset(e)


def test_verify_isomorphism(small_algebras):
    for alg in small_algebras:
        report = verify_isomorphism(alg)
        assert report.ok, f"{alg.describe()}:\n{report.render()}"
        assert report.counts["dfilters"] == report.counts["dcongruences"]


def test_isomorphism_chain_shape():
    report = verify_isomorphism(mv_chain(3))
    assert report.ok
    assert report.counts["dfilters"] == 2


_ALGS = [mv_chain(2), boolean_algebra(2), boolean_algebra(3), mo(2)]


@settings(deadline=None, max_examples=150)
@given(idx=st.integers(0, len(_ALGS) - 1), data=st.data())
def test_random_partitions_round_trip(idx, data):
    alg = _ALGS[idx]
    bid = [data.draw(st.integers(0, alg.n - 1)) for _ in range(alg.n)]
    blocks = {}
    for x, b in enumerate(bid):
        blocks.setdefault(b, []).append(x)
    cong = congruence_from_partition(alg, list(blocks.values()))
    if is_d_congruence(alg, cong):
        assert induced_congruence(zero_class(cong)).rows == cong.rows
    else:
        # non-congruences must not appear in the enumeration
        assert cong.rows not in {c.rows for c in enumerate_d_congruences(alg, "brute")}
