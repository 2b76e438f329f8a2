"""D-filters on a finite D-lattice, stored by their minimal element.

On a finite carrier every filter of subsets is principal, so a D-filter is
represented by its smallest member ``F0`` (a bitmask subset of the
carrier).  The two defining closure conditions then collapse to conditions
on ``F0`` itself:

  * sum closure:     a, b in F0 and a _|_ b   implies  a (+) b in F0;
  * absorb closure:  a in F0 and c arbitrary  implies  (a v c) (-) c in F0.

(Quantifier bookkeeping: a filter {X : X >= F0} satisfies the filter-level
conditions iff the witnesses can be chosen at the minimal member, and any
witness set contains F0, so both directions are immediate.)  Absorb closure
applied with c = a (-) b shows F0 is downward closed; that consequence is
still verified separately rather than assumed.

Filter inclusion is reverse generator inclusion: the finer filter has the
smaller minimal element.  All lattice code in this module uses that single
ordering convention.
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
from .report import CheckResult, Report, failed, passed

SCAN_CAP = 20


class NotAGenerator(DLatticeError):
    """A subset fails the D-filter generator conditions."""

    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a D-filter generator: {reason} fails at {witness}")


@dataclass(frozen=True)
class DFilterGenerator:
    """Minimal element of a principal D-filter, as a bitmask subset."""

    algebra: EffectAlgebra
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __contains__(self, element: int) -> bool:
        return bool((self.mask >> element) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def describe(self) -> str:
        return self.algebra.subset_labels(self.mask)

    def __repr__(self) -> str:
        return f"DFilterGenerator({self.describe()})"


def _as_mask(algebra: EffectAlgebra, members) -> int:
    if isinstance(members, DFilterGenerator):
        return members.mask
    if isinstance(members, int):
        mask = members
    else:
        mask = mask_of(members)
    if mask & ~algebra.full_mask:
        raise ValueError("subset contains out-of-range elements")
    return mask


def _absorb_masks(algebra: EffectAlgebra) -> list[int]:
    """absorb[a] = bitmask of {(a v c) (-) c : c in carrier}."""
    n = algebra.n
    jt, minus = algebra.join_table, algebra.minus_table
    return [mask_of(minus[jt[a][c]][c] for c in range(n)) for a in range(n)]


def is_dfilter_generator(algebra: EffectAlgebra, members) -> CheckResult:
    """Check the generator conditions, returning the first violation.

    Reasons: ``zero_in``, ``sum_closed``, ``absorb_closed``,
    ``downward_closed`` (the last is implied by absorb closure but checked
    anyway).
    """
    mask = _as_mask(algebra, members)
    if not (mask >> algebra.zero) & 1:
        return failed("zero_in", (algebra.zero,))
    s = algebra.sum_table
    jt, minus = algebra.join_table, algebra.minus_table
    elems = tuple(iter_bits(mask))
    for a in elems:
        for b in elems:
            if b < a:
                continue
            c = s[a][b]
            if c is not None and not (mask >> c) & 1:
                return failed("sum_closed", (a, b, c))
    n = algebra.n
    for a in elems:
        for c in range(n):
            r = minus[jt[a][c]][c]
            if not (mask >> r) & 1:
                return failed("absorb_closed", (a, c, r))
    for a in elems:
        if algebra.down_mask[a] & ~mask:
            b = next(iter_bits(algebra.down_mask[a] & ~mask))
            return failed("downward_closed", (a, b))
    return passed()


def require_generator(algebra: EffectAlgebra, members) -> DFilterGenerator:
    if isinstance(members, DFilterGenerator) and members.algebra is algebra:
        candidate = members
    else:
        candidate = DFilterGenerator(algebra, _as_mask(algebra, members))
    verdict = is_dfilter_generator(algebra, candidate.mask)
    if not verdict:
        raise NotAGenerator(verdict.reason, verdict.witness)
    return candidate


def dfilter_closure(algebra: EffectAlgebra, members) -> DFilterGenerator:
    """Smallest D-filter generator containing the given subset."""
    mask = _as_mask(algebra, members) | (1 << algebra.zero)
    s = algebra.sum_table
    absorb = _absorb_masks(algebra)
    queue = list(iter_bits(mask))
    while queue:
        x = queue.pop()
        new = absorb[x] & ~mask
        for y in iter_bits(mask):
            c = s[x][y]
            if c is not None:
                new |= (1 << c) & ~mask
        if new:
            mask |= new
            queue.extend(iter_bits(new))
            # pairs among freshly added elements are handled when each one
            # is popped, since the mask has already grown by then
    return DFilterGenerator(algebra, mask)


def _scan_dfilters(algebra: EffectAlgebra) -> list[int]:
    n = algebra.n
    if n > SCAN_CAP:
        raise SizeCap(f"subset scan needs n <= {SCAN_CAP}, got {n}")
    s = algebra.sum_table
    down = algebra.down_mask
    absorb = _absorb_masks(algebra)
    zero_bit = 1 << algebra.zero
    found = []
    for mask in range(zero_bit, 1 << n):
        if not mask & zero_bit:
            continue
        elems = tuple(iter_bits(mask))
        ok = True
        for a in elems:
            if (down[a] | absorb[a]) & ~mask:
                ok = False
                break
        if not ok:
            continue
        for a in elems:
            row = s[a]
            for b in elems:
                c = row[b]
                if c is not None and not (mask >> c) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(mask)
    return found


def _closure_search_dfilters(algebra: EffectAlgebra) -> list[int]:
    """Enumerate the closure system by saturating one-element extensions."""
    n = algebra.n
    bottom = dfilter_closure(algebra, 0).mask
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        mask = frontier.pop()
        for x in range(n):
            if (mask >> x) & 1:
                continue
            bigger = dfilter_closure(algebra, mask | (1 << x)).mask
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(seen)


def enumerate_dfilters(algebra: EffectAlgebra, method: str = "auto") -> list[DFilterGenerator]:
    """All D-filters, as generators in canonical (ascending bitmask) order.

    ``method`` selects the algorithm: ``"scan"`` walks every subset
    containing 0 (requires n <= 20), ``"closure"`` searches the closure
    system, ``"auto"`` picks by size.  The two algorithms are checked
    against each other in the verification suite.
    """
    if method == "auto":
        method = "scan" if algebra.n <= SCAN_CAP else "closure"
    if method == "scan":
        masks = _scan_dfilters(algebra)
    elif method == "closure":
        masks = _closure_search_dfilters(algebra)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return [DFilterGenerator(algebra, m) for m in sorted(masks)]


def _same_algebra(f: DFilterGenerator, g: DFilterGenerator) -> EffectAlgebra:
    if f.algebra is not g.algebra:
        raise MixedAlgebras("generators live over different algebras")
    return f.algebra


def dfilter_meet(f: DFilterGenerator, g: DFilterGenerator) -> DFilterGenerator:
    """Meet in the D-filter lattice: generator {x (+) y : x in F0, y in G0}."""
    algebra = _same_algebra(f, g)
    s = algebra.sum_table
    mask = 0
    for a in iter_bits(f.mask):
        row = s[a]
        for b in iter_bits(g.mask):
            c = row[b]
            if c is not None:
                mask |= 1 << c
    return DFilterGenerator(algebra, mask)


def dfilter_join(f: DFilterGenerator, g: DFilterGenerator) -> DFilterGenerator:
    """Join in the D-filter lattice: generator F0 intersect G0."""
    algebra = _same_algebra(f, g)
    return DFilterGenerator(algebra, f.mask & g.mask)


def filter_le(f: DFilterGenerator, g: DFilterGenerator) -> bool:
    """Filter inclusion: F <= G iff every member of F is a member of G,
    i.e. the generator of F contains the generator of G."""
    return g.mask & ~f.mask == 0


def meetwise_base(f: DFilterGenerator, g: DFilterGenerator) -> int:
    """Bitmask of {x ^ y : x in F0, y in G0}."""
    algebra = _same_algebra(f, g)
    mt = algebra.meet_table
    mask = 0
    for a in iter_bits(f.mask):
        row = mt[a]
        for b in iter_bits(g.mask):
            mask |= 1 << row[b]
    return mask


def _poset_meet_join(filters: list[DFilterGenerator], i: int, j: int):
    """Brute-force meet/join of filters[i], filters[j] in the inclusion
    order, independent of the generator arithmetic."""
    lower = [h for h in filters if filter_le(h, filters[i]) and filter_le(h, filters[j])]
    upper = [h for h in filters if filter_le(filters[i], h) and filter_le(filters[j], h)]
    meet = [h for h in lower if all(filter_le(x, h) for x in lower)]
    join = [h for h in upper if all(filter_le(h, x) for x in upper)]
    if len(meet) != 1 or len(join) != 1:
        return None, None
    return meet[0], join[0]


def verify_filter_lattice(algebra: EffectAlgebra, filters=None) -> Report:
    """Exhaustive structural audit of the D-filter lattice.

    Per filter: the generator conditions plus the derived closure facts
    (downward closure, binary joins, symmetric-difference stability under
    v and ^, and the symmetric-difference triangle rule).  Per pair: the
    generator-arithmetic meet and join agree with brute-force poset meet
    and join, the union sits below the meet, and the elementwise-meet base
    equals the intersection.  Per triple: distributivity.
    """
    A = algebra
    report = Report(f"dfilter lattice {A.describe()}")
    if filters is None:
        filters = enumerate_dfilters(A)
    report.counts["dfilters"] = len(filters)

    n = A.n
    jt, mt, dt = A.join_table, A.meet_table, A.delta_table

    if n <= SCAN_CAP:
        scan = [f.mask for f in filters]
        closure = [f.mask for f in enumerate_dfilters(A, method="closure")]
        report.add("scan_matches_closure", scan == closure,
                   witness=None if scan == closure else (scan, closure),
                   detail=f"{len(scan)} filters")

    def first_fail(gen):
        return next((w for w in gen if w is not None), None)

    w = first_fail(
        (f.mask,) if not is_dfilter_generator(A, f.mask) else None for f in filters
    )
    report.add("generator_conditions", w is None, witness=w,
               detail=f"{len(filters)} filters")

    def downward():
        for f in filters:
            for a in iter_bits(f.mask):
                if A.down_mask[a] & ~f.mask:
                    yield (f.mask, a)
                    return
            yield None

    def join_closed():
        for f in filters:
            elems = f.members
            for a in elems:
                for b in elems:
                    if not (f.mask >> jt[a][b]) & 1:
                        yield (f.mask, a, b)
                        return
            yield None

    def stable(table, tag):
        for f in filters:
            for x in range(n):
                for y in range(n):
                    if not (f.mask >> dt[x][y]) & 1:
                        continue
                    for z in range(n):
                        if not (f.mask >> dt[table[x][z]][table[y][z]]) & 1:
                            yield (f.mask, x, y, z, tag)
                            return
            yield None

    def triangle():
        for f in filters:
            for x in range(n):
                for y in range(n):
                    if not (f.mask >> dt[x][y]) & 1:
                        continue
                    for z in range(n):
                        if (f.mask >> dt[y][z]) & 1 and not (f.mask >> dt[x][z]) & 1:
                            yield (f.mask, x, y, z)
                            return
            yield None

    wd = first_fail(downward())
    report.add("downward_closed", wd is None, witness=wd)
    wjc = first_fail(join_closed())
    report.add("join_closed", wjc is None, witness=wjc)
    wj = first_fail(stable(jt, "join"))
    report.add("symmdiff_join_stable", wj is None, witness=wj)
    wm = first_fail(stable(mt, "meet"))
    report.add("symmdiff_meet_stable", wm is None, witness=wm)
    wt = first_fail(triangle())
    report.add("symmdiff_triangle", wt is None, witness=wt)

    meet_ok = join_ok = base_ok = union_ok = closed_ok = True
    witness_meet = witness_join = witness_base = witness_union = witness_closed = None
    for i, f in enumerate(filters):
        for j, g in enumerate(filters):
            m = dfilter_meet(f, g)
            v = dfilter_join(f, g)
            if closed_ok and not (is_dfilter_generator(A, m.mask)
                                  and is_dfilter_generator(A, v.mask)):
                closed_ok, witness_closed = False, (f.mask, g.mask)
            bm, bj = _poset_meet_join(filters, i, j)
            if meet_ok and (bm is None or bm.mask != m.mask):
                meet_ok, witness_meet = False, (f.mask, g.mask, m.mask)
            if join_ok and (bj is None or bj.mask != v.mask):
                join_ok, witness_join = False, (f.mask, g.mask, v.mask)
            if union_ok and (f.mask | g.mask) & ~m.mask:
                union_ok, witness_union = False, (f.mask, g.mask, m.mask)
            if base_ok and meetwise_base(f, g) != v.mask:
                base_ok, witness_base = False, (f.mask, g.mask)
    pairs = len(filters) ** 2
    report.add("meet_join_closed", closed_ok, witness=witness_closed,
               detail=f"{pairs} pairs")
    report.add("meet_matches_poset", meet_ok, witness=witness_meet,
               detail=f"{pairs} pairs")
    report.add("join_matches_poset", join_ok, witness=witness_join,
               detail=f"{pairs} pairs")
    report.add("union_below_meet", union_ok, witness=witness_union,
               detail=f"{pairs} pairs")
    report.add("meetwise_base_is_intersection", base_ok, witness=witness_base,
               detail=f"{pairs} pairs")

    dist_ok, witness_dist = True, None
    for f in filters:
        for g1 in filters:
            for g2 in filters:
                lhs = dfilter_join(f, dfilter_meet(g1, g2))
                rhs = dfilter_meet(dfilter_join(f, g1), dfilter_join(f, g2))
                if lhs.mask != rhs.mask:
                    dist_ok, witness_dist = False, (f.mask, g1.mask, g2.mask)
                    break
            if not dist_ok:
                break
        if not dist_ok:
            break
    report.add("distributive", dist_ok, witness=witness_dist,
               detail=f"{len(filters) ** 3} triples")
    return report


def filter_hasse_dot(algebra: EffectAlgebra, filters=None) -> str:
    """DOT source for the Hasse diagram of the D-filter lattice.

    Nodes are generators; edges point from the coarser filter up to its
    covers in the inclusion order.
    """
    if filters is None:
        filters = enumerate_dfilters(algebra)
    lines = ["digraph dfilters {", "  rankdir=BT;"]
    for idx, f in enumerate(filters):
        lines.append(f'  n{idx} [label="{f.describe()}"];')
    for i, f in enumerate(filters):
        for j, g in enumerate(filters):
            if i == j or not filter_le(f, g):
                continue
            strictly_between = any(
                k != i and k != j and filter_le(f, h) and filter_le(h, g)
                for k, h in enumerate(filters)
            )
            if not strictly_between:
                lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
