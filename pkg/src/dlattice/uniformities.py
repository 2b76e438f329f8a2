"""Finite-scale D-uniformities as congruence relations.

A uniformity on a finite set is a principal filter of relations, so it is
determined by its minimal entourage.  The minimal entourage is always an
equivalence relation E (it contains a symmetric member and a composable
member of the filter, both of which contain it).  The uniformity makes the
lattice operations uniformly continuous iff

    E v DIAG <= E   and   E ^ DIAG <= E,

and additionally makes the partial sum and difference uniformly continuous
iff

    E (-) DIAG <= E   and   DIAG (-) E <= E,

where the three relation combinators are the image constructions

    U v V   = {(a1 v b1, a2 v b2)},
    U ^ V   = {(a1 ^ b1, a2 ^ b2)},
    U (-) V = {(a1 (-) b1, a2 (-) b2) : b1 <= a1, b2 <= a2}

over pairs (a1,a2) in U and (b1,b2) in V.  An equivalence relation passing
all four inclusions is called a D-congruence here; these are exactly the
finite-scale D-uniformities, and this module verifies that they correspond
to D-filters via the mutually inverse maps

    induced_congruence(F0) = {(a,b) : delta(a,b) in F0},
    zero_class(E)          = the E-class of 0.

Relations are stored as one bitmask row per element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DLatticeError,
    EffectAlgebra,
    MixedAlgebras,
    SizeCap,
    iter_bits,
    mask_of,
)
from .dfilters import (
    DFilterGenerator,
    dfilter_join,
    dfilter_meet,
    enumerate_dfilters,
    filter_le,
    is_dfilter_generator,
    require_generator,
)
from .report import CheckResult, Report, failed, passed

BRUTE_CAP = 10

JOIN = "join"
MEET = "meet"
MINUS = "minus"


class NotEquivalence(DLatticeError):
    def __init__(self, kind: str, witness: tuple):
        self.kind = kind
        self.witness = witness
        super().__init__(f"relation is not an equivalence: {kind} fails at {witness}")


class NotACongruence(DLatticeError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a D-congruence: {reason} fails at {witness}")


@dataclass(frozen=True)
class Relation:
    """Binary relation on the carrier; rows[a] is the bitmask of partners."""

    algebra: EffectAlgebra
    rows: tuple[int, ...]

    def includes(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def issubset(self, other: "Relation") -> bool:
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def pairs(self):
        for a, row in enumerate(self.rows):
            for b in iter_bits(row):
                yield (a, b)

    @property
    def npairs(self) -> int:
        return sum(bin(row).count("1") for row in self.rows)

    def __repr__(self) -> str:
        return f"Relation(n={self.algebra.n}, pairs={self.npairs})"


@dataclass(frozen=True)
class Congruence(Relation):
    """Equivalence relation that is the minimal entourage of a finite-scale
    D-uniformity (validation happens in the constructors that produce it)."""

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        seen = 0
        out = []
        for a in range(self.algebra.n):
            if (seen >> a) & 1:
                continue
            row = self.rows[a]
            seen |= row
            out.append(tuple(iter_bits(row)))
        return tuple(out)

    def class_mask(self, a: int) -> int:
        return self.rows[a]

    def describe(self) -> str:
        return "/".join(self.algebra.subset_labels(mask_of(b)) for b in self.blocks())

    def __repr__(self) -> str:
        return f"Congruence({self.describe()})"


def diagonal(algebra: EffectAlgebra) -> Congruence:
    return Congruence(algebra, tuple(1 << a for a in range(algebra.n)))


def all_pairs(algebra: EffectAlgebra) -> Congruence:
    return Congruence(algebra, tuple(algebra.full_mask for _ in range(algebra.n)))


def relation_from_pairs(algebra: EffectAlgebra, pairs) -> Relation:
    rows = [0] * algebra.n
    for a, b in pairs:
        rows[a] |= 1 << b
    return Relation(algebra, tuple(rows))


def congruence_from_partition(algebra: EffectAlgebra, blocks) -> Congruence:
    """Build the equivalence relation of a partition (validated)."""
    rows = [None] * algebra.n
    covered = 0
    for block in blocks:
        mask = mask_of(block)
        if mask & covered:
            raise ValueError("blocks overlap")
        covered |= mask
        for a in iter_bits(mask):
            rows[a] = mask
    if covered != algebra.full_mask:
        raise ValueError("blocks do not cover the carrier")
    return Congruence(algebra, tuple(rows))


def relation_combine(u: Relation, v: Relation, op: str) -> Relation:
    """Image of two relations under v, ^ or the guarded difference."""
    if u.algebra is not v.algebra:
        raise MixedAlgebras("relations live over different algebras")
    A = u.algebra
    rows = [0] * A.n
    if op in (JOIN, MEET):
        table = A.join_table if op == JOIN else A.meet_table
        for a1, a2 in u.pairs():
            ta1 = table[a1]
            ta2 = table[a2]
            for b1, b2 in v.pairs():
                rows[ta1[b1]] |= 1 << ta2[b2]
    elif op == MINUS:
        minus, down = A.minus_table, A.down_mask
        for a1, a2 in u.pairs():
            for b1, b2 in v.pairs():
                if (down[a1] >> b1) & 1 and (down[a2] >> b2) & 1:
                    rows[minus[a1][b1]] |= 1 << minus[a2][b2]
    else:
        raise ValueError(f"unknown combinator {op!r}")
    return Relation(A, tuple(rows))


def _equivalence_witness(algebra: EffectAlgebra, rows) -> tuple | None:
    n = algebra.n
    for a in range(n):
        if not (rows[a] >> a) & 1:
            return ("reflexive", (a,))
    for a in range(n):
        for b in iter_bits(rows[a]):
            if not (rows[b] >> a) & 1:
                return ("symmetric", (a, b))
    for a in range(n):
        for b in iter_bits(rows[a]):
            if rows[b] & ~rows[a]:
                c = next(iter_bits(rows[b] & ~rows[a]))
                return ("transitive", (a, b, c))
    return None


def _dcongruence_witness(algebra: EffectAlgebra, rows) -> tuple | None:
    """First violated compatibility inclusion, scanning in the fixed order
    join, meet, minus-by-diagonal, diagonal-minus."""
    n = algebra.n
    jt, mt, minus = algebra.join_table, algebra.meet_table, algebra.minus_table
    down, up = algebra.down_list, algebra.up_list
    for a1 in range(n):
        row = rows[a1]
        for a2 in iter_bits(row):
            if a2 <= a1:
                continue
            for b in range(n):
                if not (rows[jt[a1][b]] >> jt[a2][b]) & 1:
                    return ("join_compatible", (a1, a2, b))
                if not (rows[mt[a1][b]] >> mt[a2][b]) & 1:
                    return ("meet_compatible", (a1, a2, b))
            for b in down[mt[a1][a2]]:
                if not (rows[minus[a1][b]] >> minus[a2][b]) & 1:
                    return ("minus_diagonal", (a1, a2, b))
            for b in up[jt[a1][a2]]:
                if not (rows[minus[b][a1]] >> minus[b][a2]) & 1:
                    return ("diagonal_minus", (a1, a2, b))
    return None


def is_d_congruence(algebra: EffectAlgebra, relation: Relation) -> CheckResult:
    """Check the four entourage inclusions for an equivalence relation.

    Raises :class:`NotEquivalence` when the input is not an equivalence
    relation at all; compatibility failures come back as a result with the
    smallest witness.
    """
    if relation.algebra is not algebra:
        raise MixedAlgebras("relation lives over a different algebra")
    eq = _equivalence_witness(algebra, relation.rows)
    if eq is not None:
        raise NotEquivalence(*eq)
    witness = _dcongruence_witness(algebra, relation.rows)
    if witness is not None:
        return failed(*witness)
    return passed()


def induced_congruence(gen: DFilterGenerator) -> Congruence:
    """The congruence {(a,b) : delta(a,b) in F0} of a D-filter generator."""
    A = gen.algebra
    require_generator(A, gen)
    return Congruence(A, _induced_rows(A, gen.mask))


def _induced_rows(algebra: EffectAlgebra, mask: int) -> tuple[int, ...]:
    dt = algebra.delta_table
    n = algebra.n
    return tuple(
        mask_of(b for b in range(n) if (mask >> dt[a][b]) & 1) for a in range(n)
    )


def zero_class(relation: Relation) -> DFilterGenerator:
    """The class of 0, which generates the matching D-filter."""
    A = relation.algebra
    verdict = is_d_congruence(A, relation)
    if not verdict:
        raise NotACongruence(verdict.reason, verdict.witness)
    gen = DFilterGenerator(A, relation.rows[A.zero])
    check = is_dfilter_generator(A, gen.mask)
    if not check:  # cannot happen for a D-congruence; guards bugs
        raise NotACongruence(f"zero class fails {check.reason}", check.witness)
    return gen


def _partition_block_ids(n: int):
    """All set partitions of range(n) as block-id lists, in restricted
    growth order."""
    bid = [0] * n

    def rec(i: int, nblocks: int):
        if i == n:
            yield bid
            return
        for b in range(nblocks):
            bid[i] = b
            yield from rec(i + 1, nblocks)
        bid[i] = nblocks
        yield from rec(i + 1, nblocks + 1)
        bid[i] = 0

    yield from rec(1, 1) if n > 0 else iter(())


def _block_ids_pass(algebra: EffectAlgebra, bid) -> bool:
    n = algebra.n
    jt, mt, minus = algebra.join_table, algebra.meet_table, algebra.minus_table
    down, up = algebra.down_list, algebra.up_list
    classes: dict[int, list[int]] = {}
    for x, b in enumerate(bid):
        classes.setdefault(b, []).append(x)
    for members in classes.values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                jx, jy = jt[x], jt[y]
                mx, my = mt[x], mt[y]
                for b in range(n):
                    if bid[jx[b]] != bid[jy[b]] or bid[mx[b]] != bid[my[b]]:
                        return False
                for b in down[mt[x][y]]:
                    if bid[minus[x][b]] != bid[minus[y][b]]:
                        return False
                for b in up[jt[x][y]]:
                    if bid[minus[b][x]] != bid[minus[b][y]]:
                        return False
    return True


def enumerate_d_congruences(algebra: EffectAlgebra, mode: str = "brute",
                            brute_cap: int = BRUTE_CAP) -> list[Congruence]:
    """All D-congruences, sorted by their row tuples.

    ``"brute"`` scans every set partition of the carrier (Bell-number many;
    capped), independent of the D-filter machinery.  ``"via_filters"`` maps
    the enumerated D-filters through :func:`induced_congruence`.
    """
    n = algebra.n
    if mode == "brute":
        if n > brute_cap:
            raise SizeCap(f"partition scan needs n <= {brute_cap}, got {n}")
        found = []
        if n == 1:
            found.append(diagonal(algebra))
        else:
            for bid in _partition_block_ids(n):
                if not _block_ids_pass(algebra, bid):
                    continue
                masks: dict[int, int] = {}
                for x, b in enumerate(bid):
                    masks[b] = masks.get(b, 0) | (1 << x)
                found.append(Congruence(algebra, tuple(masks[b] for b in bid)))
    elif mode == "via_filters":
        found = [
            Congruence(algebra, _induced_rows(algebra, f.mask))
            for f in enumerate_dfilters(algebra)
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return sorted(found, key=lambda c: c.rows)


@dataclass(frozen=True)
class AlternativeEntourages:
    """The two witness-style descriptions of a filter's congruence.

    ``e_plus``  relates (a,b) when a (+) h = b (+) k for some h, k in F0;
    ``e_minus`` relates (a,b) when a (-) i = b (-) j for some i, j in F0
    with i <= a, j <= b.  ``all_equal`` states both coincide with
    ``induced_congruence``.  ``displayed_plus_differs`` flags inputs where
    reading the plus form with a difference on the right-hand side
    (a (+) h = b (-) k) would give a different relation; that reading is
    not symmetric and is rejected.
    """

    e_plus: Relation
    e_minus: Relation
    all_equal: bool
    displayed_plus_differs: bool


def alternative_entourages(gen: DFilterGenerator) -> AlternativeEntourages:
    A = gen.algebra
    require_generator(A, gen)
    n = A.n
    s, minus, down = A.sum_table, A.minus_table, A.down_mask
    members = gen.members

    reach_up = [0] * n    # {a (+) h : h in F0, h orthogonal to a}
    reach_down = [0] * n  # {a (-) i : i in F0, i <= a}
    for a in range(n):
        up_mask = 0
        down_mask = 0
        for h in members:
            c = s[a][h]
            if c is not None:
                up_mask |= 1 << c
            if (down[a] >> h) & 1:
                down_mask |= 1 << minus[a][h]
        reach_up[a] = up_mask
        reach_down[a] = down_mask

    plus_rows = tuple(
        mask_of(b for b in range(n) if reach_up[a] & reach_up[b]) for a in range(n)
    )
    minus_rows = tuple(
        mask_of(b for b in range(n) if reach_down[a] & reach_down[b]) for a in range(n)
    )
    displayed_rows = tuple(
        mask_of(b for b in range(n) if reach_up[a] & reach_down[b]) for a in range(n)
    )
    induced = _induced_rows(A, gen.mask)
    return AlternativeEntourages(
        e_plus=Relation(A, plus_rows),
        e_minus=Relation(A, minus_rows),
        all_equal=plus_rows == minus_rows == induced,
        displayed_plus_differs=displayed_rows != plus_rows,
    )


def _congruence_le(e: Congruence, f: Congruence) -> bool:
    """Uniformity inclusion: coarser uniformity = larger minimal entourage."""
    return f.issubset(e)


def verify_isomorphism(algebra: EffectAlgebra, brute_cap: int = BRUTE_CAP) -> Report:
    """Audit the order isomorphism between D-filters and D-congruences.

    Enumerates both sides independently (partition scan against subset
    scan), then checks: equal counts, equal relation sets, both round
    trips, order preservation in both directions, and that the filter
    lattice operations are carried onto the congruence lattice.
    """
    A = algebra
    report = Report(f"isomorphism {A.describe()}")
    filters = enumerate_dfilters(A)
    congruences = enumerate_d_congruences(A, "brute", brute_cap=brute_cap)
    report.counts["dfilters"] = len(filters)
    report.counts["dcongruences"] = len(congruences)

    images = sorted(
        (Congruence(A, _induced_rows(A, f.mask)) for f in filters),
        key=lambda c: c.rows,
    )
    report.add("counts_match", len(filters) == len(congruences),
               witness=None if len(filters) == len(congruences)
               else (len(filters), len(congruences)))
    same = [c.rows for c in images] == [c.rows for c in congruences]
    report.add("images_match_partition_scan", same,
               witness=None if same else ([c.rows for c in images],
                                          [c.rows for c in congruences]))

    w = next(
        (f.mask for f in filters
         if zero_class(induced_congruence(f)).mask != f.mask),
        None,
    )
    report.add("filter_round_trip", w is None, witness=None if w is None else (w,))

    w = next(
        (e.rows for e in congruences
         if _induced_rows(A, zero_class(e).mask) != e.rows),
        None,
    )
    report.add("congruence_round_trip", w is None,
               witness=None if w is None else (w,))

    order_ok, order_w = True, None
    for f in filters:
        ef = Congruence(A, _induced_rows(A, f.mask))
        for g in filters:
            eg = Congruence(A, _induced_rows(A, g.mask))
            if filter_le(f, g) != _congruence_le(ef, eg):
                order_ok, order_w = False, (f.mask, g.mask)
                break
        if not order_ok:
            break
    report.add("order_preserved_both_ways", order_ok, witness=order_w,
               detail=f"{len(filters) ** 2} pairs")

    meet_ok = join_ok = True
    meet_w = join_w = None
    by_rows = {c.rows: c for c in congruences}
    for f in filters:
        ef = by_rows[_induced_rows(A, f.mask)]
        for g in filters:
            eg = by_rows[_induced_rows(A, g.mask)]
            em = _induced_rows(A, dfilter_meet(f, g).mask)
            lower = [c for c in congruences
                     if _congruence_le(c, ef) and _congruence_le(c, eg)]
            brute_meet = [c for c in lower
                          if all(_congruence_le(x, c) for x in lower)]
            if meet_ok and (len(brute_meet) != 1 or brute_meet[0].rows != em):
                meet_ok, meet_w = False, (f.mask, g.mask)
            ev = _induced_rows(A, dfilter_join(f, g).mask)
            intersect = tuple(x & y for x, y in zip(ef.rows, eg.rows))
            if join_ok and ev != intersect:
                join_ok, join_w = False, (f.mask, g.mask)
    report.add("meet_carried", meet_ok, witness=meet_w)
    report.add("join_carried_to_intersection", join_ok, witness=join_w)

    shift_ok, shift_w = True, None
    diag = diagonal(A)
    for f in filters:
        e = Relation(A, _induced_rows(A, f.mask))
        left = relation_combine(e, diag, MINUS)
        right = relation_combine(diag, e, MINUS)
        if left.rows != e.rows or right.rows != e.rows:
            shift_ok, shift_w = False, (f.mask,)
            break
    report.add("minus_diagonal_fixed_point", shift_ok, witness=shift_w,
               detail="E(-)DIAG = E = DIAG(-)E for induced congruences")
    return report
