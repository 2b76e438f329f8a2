"""Finite lattice ordered effect algebras.

An effect algebra is a set with distinguished elements 0 and 1 and a
partially defined sum ``a (+) b`` subject to four axioms:

  * commutativity: if a(+)b is defined then b(+)a is defined and equal;
  * associativity: if b(+)c and a(+)(b(+)c) are defined, then a(+)b and
    (a(+)b)(+)c are defined and a(+)(b(+)c) = (a(+)b)(+)c;
  * unique complement: for every a there is exactly one a' with a(+)a' = 1;
  * top rigidity: a(+)1 defined forces a = 0.

The partial difference is adjoint to the sum (c(-)a = b iff a(+)b = c), and
``a <= c iff a(+)b = c for some b`` is a partial order with bottom 0 and
top 1.  This module only accepts algebras whose order is a lattice; the
symmetric difference

    delta(a, b) = (a v b) (-) (a ^ b)

is then total.  All structure (order, lattice tables, complements, deltas)
is computed eagerly at construction and frozen, because every downstream
module runs exhaustive loops over these tables.

Elements are dense integer indices ``0..n-1``; an undefined sum is stored
as ``None``.  Subsets of the carrier are bitmask ints throughout the
package.  Instances are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .report import Report, canonical_json


class DLatticeError(Exception):
    """Base class for all structured errors raised by this package."""


class AxiomViolation(DLatticeError):
    """An input sum table violates one of the effect algebra axioms."""

    def __init__(self, axiom: str, witness: tuple, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        self.detail = detail
        msg = f"axiom {axiom} violated at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAPartialOrder(DLatticeError):
    """The derived order relation is not a partial order."""

    def __init__(self, kind: str, witness: tuple):
        self.kind = kind
        self.witness = witness
        super().__init__(f"derived order fails {kind} at {witness}")


class NotALattice(DLatticeError):
    """Some pair of elements has no least upper or greatest lower bound."""

    def __init__(self, kind: str, witness: tuple):
        self.kind = kind
        self.witness = witness
        super().__init__(f"no {kind} for pair {witness}")


class SizeCap(DLatticeError):
    """A construction or enumeration exceeded its configured size cap."""


class MixedAlgebras(DLatticeError):
    """An operation combined objects living over different algebras."""


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class Classification:
    is_mv: bool
    is_oml: bool


class EffectAlgebra:
    """A validated finite lattice ordered effect algebra.

    Construction runs the full axiom check (commutativity, associativity,
    unique complements, top rigidity, 0 as neutral element), derives the
    order, verifies it is a bounded lattice, and freezes every table.
    Raises :class:`AxiomViolation`, :class:`NotAPartialOrder` or
    :class:`NotALattice` with the smallest offending tuple otherwise.
    """

    __slots__ = (
        "n", "zero", "one", "labels", "name",
        "sum_table", "minus_table", "join_table", "meet_table",
        "complement", "delta_table",
        "up_mask", "down_mask", "up_list", "down_list",
        "full_mask",
    )

    def __init__(self, sum_table, zero: int, one: int, labels=None,
                 name: str | None = None):
        table = tuple(tuple(row) for row in sum_table)
        n = len(table)
        if n == 0:
            raise ValueError("carrier must be non-empty")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"sum table row {i} has length {len(row)}, expected {n}")
            for j, entry in enumerate(row):
                if entry is not None and not (isinstance(entry, int) and 0 <= entry < n):
                    raise ValueError(f"sum table entry [{i}][{j}] = {entry!r} out of range")
        if not (0 <= zero < n and 0 <= one < n):
            raise ValueError("zero/one indices out of range")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("labels length must match carrier size")

        self.n = n
        self.zero = zero
        self.one = one
        self.labels = labels
        self.name = name
        self.sum_table = table
        self.full_mask = (1 << n) - 1

        self._check_axioms()
        self._derive_order()
        self._derive_minus()
        self._derive_lattice()

        jt, mt = self.join_table, self.meet_table
        minus = self.minus_table
        self.delta_table = tuple(
            tuple(minus[jt[a][b]][mt[a][b]] for b in range(n)) for a in range(n)
        )

    # -- validation ------------------------------------------------------

    def _check_axioms(self):
        n, s, zero, one = self.n, self.sum_table, self.zero, self.one
        for a in range(n):
            if s[a][zero] != a:
                raise AxiomViolation("zero_identity", (a,),
                                     f"{a}(+)0 = {s[a][zero]!r}, expected {a}")
        for a in range(n):
            for b in range(a, n):
                if s[a][b] != s[b][a]:
                    raise AxiomViolation("commutativity", (a, b))
        for a in range(n):
            if a != zero and s[a][one] is not None:
                raise AxiomViolation("sum_with_one", (a,))
        for a in range(n):
            sa = s[a]
            for b in range(n):
                for c in range(n):
                    bc = s[b][c]
                    if bc is None:
                        continue
                    a_bc = sa[bc]
                    if a_bc is None:
                        continue
                    ab = sa[b]
                    if ab is None or s[ab][c] != a_bc:
                        raise AxiomViolation("associativity", (a, b, c))
        comp = []
        for a in range(n):
            partners = [b for b in range(n) if s[a][b] == one]
            if len(partners) == 0:
                raise AxiomViolation("complement_exists", (a,))
            if len(partners) > 1:
                raise AxiomViolation("complement_unique", (a, partners[0], partners[1]))
            comp.append(partners[0])
        self.complement = tuple(comp)

    def _derive_order(self):
        n, s = self.n, self.sum_table
        up = [0] * n
        for a in range(n):
            m = 0
            for b in range(n):
                c = s[a][b]
                if c is not None:
                    m |= 1 << c
            up[a] = m
        for a in range(n):
            for c in iter_bits(up[a]):
                if c != a and (up[c] >> a) & 1:
                    raise NotAPartialOrder("antisymmetry", (a, c))
        for a in range(n):
            for c in iter_bits(up[a]):
                if up[c] & ~up[a]:
                    raise NotAPartialOrder("transitivity", (a, c))
        if up[self.zero] != self.full_mask:
            missing = next(iter_bits(self.full_mask & ~up[self.zero]))
            raise NotAPartialOrder("bottom", (self.zero, missing))
        for a in range(n):
            if not (up[a] >> self.one) & 1:
                raise NotAPartialOrder("top", (a, self.one))
        down = [0] * n
        for a in range(n):
            bit = 1 << a
            for c in iter_bits(up[a]):
                down[c] |= bit
        self.up_mask = tuple(up)
        self.down_mask = tuple(down)
        self.up_list = tuple(tuple(iter_bits(m)) for m in up)
        self.down_list = tuple(tuple(iter_bits(m)) for m in down)

    def _derive_minus(self):
        n, s = self.n, self.sum_table
        minus = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                c = s[a][b]
                if c is None:
                    continue
                prev = minus[c][a]
                if prev is not None and prev != b:
                    raise AxiomViolation("cancellativity", (a, c),
                                         f"both {prev} and {b} solve {a}(+)x = {c}")
                minus[c][a] = b
        self.minus_table = tuple(tuple(row) for row in minus)

    def _derive_lattice(self):
        n, up, down = self.n, self.up_mask, self.down_mask
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                ub = up[a] & up[b]
                j = next((c for c in iter_bits(ub) if up[c] == ub), None)
                if j is None:
                    raise NotALattice("join", (a, b))
                lb = down[a] & down[b]
                m = next((c for c in iter_bits(lb) if down[c] == lb), None)
                if m is None:
                    raise NotALattice("meet", (a, b))
                join[a][b] = join[b][a] = j
                meet[a][b] = meet[b][a] = m
        self.join_table = tuple(tuple(row) for row in join)
        self.meet_table = tuple(tuple(row) for row in meet)

    # -- element operations ----------------------------------------------

    def osum(self, a: int, b: int) -> int | None:
        """a (+) b, or None when undefined."""
        return self.sum_table[a][b]

    def ominus(self, c: int, a: int) -> int | None:
        """c (-) a, defined exactly when a <= c."""
        return self.minus_table[c][a]

    def symm_diff(self, a: int, b: int) -> int:
        return self.delta_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def leq(self, a: int, b: int) -> bool:
        return bool((self.up_mask[a] >> b) & 1)

    def orthogonal(self, a: int, b: int) -> bool:
        """a and b are orthogonal: their sum is defined."""
        return self.sum_table[a][b] is not None

    @property
    def elements(self) -> range:
        return range(self.n)

    def label(self, a: int) -> str:
        return self.labels[a]

    def subset_labels(self, mask: int) -> str:
        return "{" + ",".join(self.labels[i] for i in iter_bits(mask)) + "}"

    def describe(self) -> str:
        return self.name if self.name else f"algebra(n={self.n})"

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"EffectAlgebra({self.describe()}, n={self.n})"


def build_algebra(sum_table, zero: int, one: int, labels=None,
                  name: str | None = None) -> EffectAlgebra:
    """Validate a sum table and return the frozen algebra."""
    return EffectAlgebra(sum_table, zero, one, labels=labels, name=name)


def classify(algebra: EffectAlgebra) -> Classification:
    """Exhaustively test the two standard sharpness characterizations.

    ``is_mv``:  (a v b) (-) b == a (-) (a ^ b)  for all a, b.
    ``is_oml``: a' ^ a == 0                     for all a.
    """
    n = algebra.n
    jt, mt, minus = algebra.join_table, algebra.meet_table, algebra.minus_table
    is_mv = all(
        minus[jt[a][b]][b] == minus[a][mt[a][b]]
        for a in range(n) for b in range(n)
    )
    comp, zero = algebra.complement, algebra.zero
    is_oml = all(mt[comp[a]][a] == zero for a in range(n))
    return Classification(is_mv=is_mv, is_oml=is_oml)


def mv_witness(algebra: EffectAlgebra) -> tuple | None:
    """Smallest pair violating the MV law, or None."""
    n = algebra.n
    jt, mt, minus = algebra.join_table, algebra.meet_table, algebra.minus_table
    for a in range(n):
        for b in range(n):
            if minus[jt[a][b]][b] != minus[a][mt[a][b]]:
                return (a, b)
    return None


# -- identity suite -------------------------------------------------------

def verify_basic_identities(algebra: EffectAlgebra):
    """Exhaustively check the standard arithmetic of a D-lattice.

    Covers the ten classical sum/difference identities, the shift
    invariance of the symmetric difference, and the lattice/complement
    bookkeeping.  Any failure on an algebra that passed construction
    indicates an implementation bug; the report carries the smallest
    counterexample tuple.
    """
    A = algebra
    n = A.n
    s, minus = A.sum_table, A.minus_table
    jt, mt, dt = A.join_table, A.meet_table, A.delta_table
    comp, down, up = A.complement, A.down_list, A.up_list
    dmask = A.down_mask

    def le(x, y):
        return bool((A.up_mask[x] >> y) & 1)

    report = Report(f"identities {A.describe()}")

    def run(name, gen):
        count = 0
        for item in gen:
            count += 1
            if item is not None and item[0] is False:
                report.add(name, False, witness=item[1])
                return
        report.add(name, True, detail=f"{count} instances")

    def minus_within():
        for b in range(n):
            for a in down[b]:
                r = minus[b][a]
                ok = le(r, b) and minus[b][r] == a
                yield (ok, (a, b)) if not ok else None

    def minus_reverses():
        for b in range(n):
            for a in down[b]:
                for c in up[b]:
                    cb, ca = minus[c][b], minus[c][a]
                    ok = le(cb, ca) and minus[ca][cb] == minus[b][a]
                    yield (ok, (a, b, c)) if not ok else None

    def minus_preserves():
        for b in range(n):
            for a in down[b]:
                for c in up[b]:
                    ba, ca = minus[b][a], minus[c][a]
                    ok = le(ba, ca) and minus[ca][ba] == minus[c][b]
                    yield (ok, (a, b, c)) if not ok else None

    def minus_of_sum():
        for a in range(n):
            for b in range(n):
                ab = s[a][b]
                if ab is None:
                    continue
                for c in up[ab]:
                    x = minus[c][ab]
                    ca, cb = minus[c][a], minus[c][b]
                    ok = (ca is not None and cb is not None
                          and minus[ca][b] == x and minus[cb][a] == x)
                    yield (ok, (a, b, c)) if not ok else None

    def sum_cancellation():
        # a <= b <= c' : a(+)c <= b(+)c and (b(+)c) (-) (a(+)c) = b (-) a
        for b in range(n):
            for a in down[b]:
                for c in down[comp[b]]:
                    ac, bc = s[a][c], s[b][c]
                    ok = (ac is not None and bc is not None
                          and le(ac, bc) and minus[bc][ac] == minus[b][a])
                    yield (ok, (a, b, c)) if not ok else None

    def sum_minus_exchange():
        for b in range(n):
            for a in down[b]:
                for c in up[b]:
                    lhs = s[a][minus[c][b]]
                    ok = lhs is not None and lhs == minus[c][minus[b][a]]
                    yield (ok, (a, b, c)) if not ok else None

    def sum_minus_assoc():
        # a <= b', c <= b : a (+) (b(-)c) = (a(+)b) (-) c
        for b in range(n):
            for a in down[comp[b]]:
                ab = s[a][b]
                for c in down[b]:
                    lhs = s[a][minus[b][c]]
                    ok = ab is not None and lhs is not None and lhs == minus[ab][c]
                    yield (ok, (a, b, c)) if not ok else None

    def minus_dual_from_top():
        for c in range(n):
            dl = down[c]
            for a in dl:
                ca = minus[c][a]
                for b in dl:
                    cb = minus[c][b]
                    ok = (minus[c][jt[a][b]] == mt[ca][cb]
                          and minus[c][mt[a][b]] == jt[ca][cb])
                    yield (ok, (a, b, c)) if not ok else None

    def minus_distributes():
        for c in range(n):
            ul = up[c]
            for a in ul:
                ac = minus[a][c]
                for b in ul:
                    bc = minus[b][c]
                    ok = (minus[mt[a][b]][c] == mt[ac][bc]
                          and minus[jt[a][b]][c] == jt[ac][bc])
                    yield (ok, (a, b, c)) if not ok else None

    def sum_distributes():
        for c in range(n):
            dl = down[comp[c]]
            for a in dl:
                ac = s[a][c]
                for b in dl:
                    bc = s[b][c]
                    ok = (ac is not None and bc is not None
                          and s[jt[a][b]][c] == jt[ac][bc]
                          and s[mt[a][b]][c] == mt[ac][bc])
                    yield (ok, (a, b, c)) if not ok else None

    def symmdiff_shift():
        # c <= a^b, d >= avb : (a-c) delta (b-c) = a delta b = (d-a) delta (d-b)
        for a in range(n):
            for b in range(n):
                d0 = dt[a][b]
                for c in down[mt[a][b]]:
                    if dt[minus[a][c]][minus[b][c]] != d0:
                        yield (False, (a, b, c, "lower"))
                for d in up[jt[a][b]]:
                    if dt[minus[d][a]][minus[d][b]] != d0:
                        yield (False, (a, b, d, "upper"))
                yield None

    def complement_involution():
        for a in range(n):
            yield (comp[comp[a]] == a, (a,)) if comp[comp[a]] != a else None

    def sum_via_complement():
        # a (+) b = (a' (-) b)' whenever the sum is defined
        for a in range(n):
            for b in range(n):
                ab = s[a][b]
                if ab is None:
                    continue
                r = minus[comp[a]][b]
                ok = r is not None and comp[r] == ab
                yield (ok, (a, b)) if not ok else None

    def lattice_commutative():
        for a in range(n):
            for b in range(n):
                ok = jt[a][b] == jt[b][a] and mt[a][b] == mt[b][a]
                yield (ok, (a, b)) if not ok else None

    def lattice_associative():
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    ok = (jt[jt[a][b]][c] == jt[a][jt[b][c]]
                          and mt[mt[a][b]][c] == mt[a][mt[b][c]])
                    yield (ok, (a, b, c)) if not ok else None

    def lattice_absorption():
        for a in range(n):
            for b in range(n):
                ok = mt[a][jt[a][b]] == a and jt[a][mt[a][b]] == a
                yield (ok, (a, b)) if not ok else None

    def order_bounded():
        for a in range(n):
            ok = le(A.zero, a) and le(a, A.one)
            yield (ok, (a,)) if not ok else None

    run("minus_within_bound", minus_within())
    run("minus_reverses_order", minus_reverses())
    run("minus_preserves_order", minus_preserves())
    run("minus_of_sum", minus_of_sum())
    run("sum_cancellation", sum_cancellation())
    run("sum_minus_exchange", sum_minus_exchange())
    run("sum_minus_assoc", sum_minus_assoc())
    run("minus_dual_from_top", minus_dual_from_top())
    run("minus_distributes", minus_distributes())
    run("sum_distributes", sum_distributes())
    run("symmdiff_shift_invariance", symmdiff_shift())
    run("complement_involution", complement_involution())
    run("sum_via_complement", sum_via_complement())
    run("lattice_commutative", lattice_commutative())
    run("lattice_associative", lattice_associative())
    run("lattice_absorption", lattice_absorption())
    run("order_bounded", order_bounded())
    report.counts["n"] = n
    return report


# -- JSON interchange -----------------------------------------------------

def algebra_to_obj(algebra: EffectAlgebra) -> dict:
    """Serializable form: {"n", "zero", "one", "labels", "sum"} with null
    marking undefined sums."""
    return {
        "n": algebra.n,
        "zero": algebra.zero,
        "one": algebra.one,
        "labels": list(algebra.labels),
        "sum": [list(row) for row in algebra.sum_table],
    }


def algebra_from_obj(obj: dict, name: str | None = None) -> EffectAlgebra:
    try:
        table = obj["sum"]
        zero = obj["zero"]
        one = obj["one"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"algebra object missing field: {exc}") from exc
    labels = obj.get("labels")
    n = obj.get("n")
    if n is not None and n != len(table):
        raise ValueError(f"declared n={n} but sum table has {len(table)} rows")
    return EffectAlgebra(table, zero, one, labels=labels, name=name)


def load_algebra(path: str) -> EffectAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return algebra_from_obj(obj, name=path)


def save_algebra(algebra: EffectAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(algebra_to_obj(algebra)))
