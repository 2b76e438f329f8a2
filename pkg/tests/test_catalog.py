import pytest

from dlattice import (
    SizeCap,
    boolean_algebra,
    classify,
    horizontal_sum,
    mo,
    mv_chain,
    product,
    standard_catalog,
    verify_basic_identities,
)
from dlattice.core import mv_witness


def _iso_as_tables(a, b):
    """Crude isomorphism check for tiny algebras: try all relabelings."""
    import itertools

    if a.n != b.n:
        return False
    for perm in itertools.permutations(range(a.n)):
        if perm[a.zero] != b.zero or perm[a.one] != b.one:
            continue
        ok = True
        for x in range(a.n):
            for y in range(a.n):
                s = a.sum_table[x][y]
                t = b.sum_table[perm[x]][perm[y]]
                if (s is None) != (t is None) or (s is not None and perm[s] != t):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def test_mv_chain_basics():
    assert mv_chain(1).n == 2
    c2 = mv_chain(2)
    assert c2.osum(1, 1) == 2
    assert classify(c2).is_mv
    assert not classify(mv_chain(3)).is_oml


def test_boolean_basics():
    assert boolean_algebra(0).n == 1
    b2 = boolean_algebra(2)
    assert b2.n == 4
    assert b2.complement[1] == 2  # a' = b
    assert classify(b2).is_mv and classify(b2).is_oml


def test_mo_basics():
    assert _iso_as_tables(mo(1), boolean_algebra(2))
    m2 = mo(2)
    assert classify(m2).is_mv is False and classify(m2).is_oml is True
    assert mv_witness(m2) is not None
    assert m2.symm_diff(1, 3) == m2.one


def test_product_of_trivial_chains_is_b2():
    assert _iso_as_tables(product(mv_chain(1), mv_chain(1)), boolean_algebra(2))


def test_product_with_trivial_is_identity_like():
    trivial = boolean_algebra(0)
    b2 = boolean_algebra(2)
    p = product(b2, trivial)
    assert _iso_as_tables(p, b2)


def test_hsum_of_squares_is_mo():
    assert _iso_as_tables(horizontal_sum(boolean_algebra(2), boolean_algebra(2)),
                          mo(2))


def test_hsum_requires_nontrivial():
    with pytest.raises(ValueError):
        horizontal_sum(boolean_algebra(0), boolean_algebra(2))


def test_size_caps():
    with pytest.raises(SizeCap):
        boolean_algebra(7)
    with pytest.raises(SizeCap):
        product(boolean_algebra(4), boolean_algebra(4))
    with pytest.raises(SizeCap):
        horizontal_sum(boolean_algebra(5), boolean_algebra(5), size_cap=32)


def test_every_catalog_algebra_is_valid():
    for alg in standard_catalog(max_n=20):
        report = verify_basic_identities(alg)
        assert report.ok, f"{alg.describe()}:\n{report.render()}"


def test_catalog_respects_cap():
    for alg in standard_catalog(max_n=12):
        assert alg.n <= 12
