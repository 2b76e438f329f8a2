"""Constructors for the standard finite D-lattices used as fixtures.

Every constructor routes its table through :func:`build_algebra`, so the
returned object is fully validated.  All combinators enforce a size cap
(default 64 elements) because downstream verification is polynomial in the
carrier but table storage is quadratic.
"""

from __future__ import annotations

from fractions import Fraction

from .core import EffectAlgebra, SizeCap, build_algebra

DEFAULT_SIZE_CAP = 64

_ATOM_LETTERS = "abcdefgh"


def mv_chain(m: int) -> EffectAlgebra:
    """Chain 0 < 1/m < ... < 1 with i (+) j = i+j when i+j <= m."""
    if m < 1:
        raise ValueError("chain parameter must be >= 1")
    n = m + 1
    table = [[i + j if i + j <= m else None for j in range(n)] for i in range(n)]
    labels = [str(Fraction(i, m)) for i in range(n)]
    return build_algebra(table, 0, m, labels=labels, name=f"mv_chain({m})")


def boolean_algebra(k: int, size_cap: int = DEFAULT_SIZE_CAP) -> EffectAlgebra:
    """Powerset of k atoms; sums are unions of disjoint sets."""
    if k < 0:
        raise ValueError("atom count must be >= 0")
    n = 1 << k
    if n > size_cap:
        raise SizeCap(f"boolean_algebra({k}) has {n} elements, cap is {size_cap}")
    table = [[a | b if a & b == 0 else None for b in range(n)] for a in range(n)]
    labels = []
    for a in range(n):
        if a == 0:
            labels.append("0")
        elif a == n - 1:
            labels.append("1")
        else:
            labels.append("".join(_ATOM_LETTERS[i] for i in range(k) if (a >> i) & 1))
    return build_algebra(table, 0, n - 1, labels=labels, name=f"boolean_algebra({k})")


def mo(blocks: int) -> EffectAlgebra:
    """Horizontal sum of ``blocks`` four-element Boolean algebras.

    Carrier: 0, then the atom pair of each block, then 1.  Sums are defined
    with 0, and between the two atoms of one block (giving 1).
    """
    if blocks < 1:
        raise ValueError("block count must be >= 1")
    n = 2 * blocks + 2
    zero, one = 0, n - 1

    def partner(x):
        return x + 1 if x % 2 == 1 else x - 1

    table = [[None] * n for _ in range(n)]
    for x in range(n):
        table[x][zero] = x
        table[zero][x] = x
    for x in range(1, n - 1):
        table[x][partner(x)] = one
    labels = ["0"]
    for b in range(1, blocks + 1):
        labels += [f"a{b}", f"a{b}'"]
    labels.append("1")
    return build_algebra(table, zero, one, labels=labels, name=f"mo({blocks})")


def product(a: EffectAlgebra, b: EffectAlgebra,
            size_cap: int = DEFAULT_SIZE_CAP) -> EffectAlgebra:
    """Componentwise product: sums defined when both components are."""
    n = a.n * b.n
    if n > size_cap:
        raise SizeCap(f"product would have {n} elements, cap is {size_cap}")

    def pack(x, y):
        return x * b.n + y

    table = [[None] * n for _ in range(n)]
    for x1 in range(a.n):
        for y1 in range(b.n):
            for x2 in range(a.n):
                sx = a.sum_table[x1][x2]
                if sx is None:
                    continue
                for y2 in range(b.n):
                    sy = b.sum_table[y1][y2]
                    if sy is not None:
                        table[pack(x1, y1)][pack(x2, y2)] = pack(sx, sy)
    labels = [f"({a.labels[x]},{b.labels[y]})" for x in range(a.n) for y in range(b.n)]
    return build_algebra(table, pack(a.zero, b.zero), pack(a.one, b.one),
                         labels=labels,
                         name=f"product({a.describe()},{b.describe()})")


def horizontal_sum(a: EffectAlgebra, b: EffectAlgebra,
                   size_cap: int = DEFAULT_SIZE_CAP) -> EffectAlgebra:
    """Glue two nontrivial algebras at 0 and 1; sums stay inside a summand."""
    if a.n < 2 or b.n < 2:
        raise ValueError("horizontal summands must have 0 != 1")
    n = (a.n - 2) + (b.n - 2) + 2
    if n > size_cap:
        raise SizeCap(f"horizontal sum would have {n} elements, cap is {size_cap}")
    zero, one = 0, n - 1

    # new index maps for the interiors of each summand
    def interior(alg):
        return [x for x in range(alg.n) if x not in (alg.zero, alg.one)]

    ia, ib = interior(a), interior(b)
    new_of_a = {a.zero: zero, a.one: one}
    new_of_a.update({x: 1 + i for i, x in enumerate(ia)})
    new_of_b = {b.zero: zero, b.one: one}
    new_of_b.update({x: 1 + len(ia) + i for i, x in enumerate(ib)})

    table = [[None] * n for _ in range(n)]
    for alg, new_of in ((a, new_of_a), (b, new_of_b)):
        for x in range(alg.n):
            for y in range(alg.n):
                s = alg.sum_table[x][y]
                if s is not None:
                    table[new_of[x]][new_of[y]] = new_of[s]
    # gluing makes 0 neutral for both summands; fill any remaining 0-sums
    for x in range(n):
        table[x][zero] = x
        table[zero][x] = x

    labels = ["0"] + [f"{a.labels[x]}@1" for x in ia] + [f"{b.labels[x]}@2" for x in ib] + ["1"]
    return build_algebra(table, zero, one, labels=labels,
                         name=f"hsum({a.describe()},{b.describe()})")


def standard_catalog(max_n: int = 32) -> list[EffectAlgebra]:
    """The fixture family used by the verification suite, capped at
    ``max_n`` elements: chains up to mv_chain(16), Boolean algebras up to 5
    atoms, horizontal sums of squares up to mo(7), and a fixed selection of
    products and horizontal sums."""
    out: list[EffectAlgebra] = []
    for m in range(1, 17):
        if m + 1 <= max_n:
            out.append(mv_chain(m))
    for k in range(0, 6):
        if (1 << k) <= max_n:
            out.append(boolean_algebra(k))
    for blocks in range(1, 8):
        if 2 * blocks + 2 <= max_n:
            out.append(mo(blocks))
    combos = [
        lambda: product(mv_chain(1), mv_chain(1)),
        lambda: product(mv_chain(1), mv_chain(2)),
        lambda: product(mv_chain(2), mv_chain(2)),
        lambda: product(mv_chain(1), boolean_algebra(2)),
        lambda: product(mv_chain(2), boolean_algebra(2)),
        lambda: product(mv_chain(3), mv_chain(3)),
        lambda: product(boolean_algebra(2), boolean_algebra(2)),
        lambda: product(mv_chain(1), mo(2)),
        lambda: horizontal_sum(mv_chain(2), mv_chain(2)),
        lambda: horizontal_sum(mv_chain(2), boolean_algebra(2)),
        lambda: horizontal_sum(mv_chain(3), mv_chain(3)),
        lambda: horizontal_sum(boolean_algebra(2), boolean_algebra(2)),
        lambda: horizontal_sum(boolean_algebra(2), boolean_algebra(3)),
        lambda: horizontal_sum(mo(2), boolean_algebra(2)),
        lambda: horizontal_sum(mv_chain(4), boolean_algebra(2)),
    ]
    for make in combos:
        alg = make()
        if alg.n <= max_n:
            out.append(alg)
    return out
