"""Submeasures, pseudometrics and modular measures, and the congruences
they generate.

All values are exact rationals (``fractions.Fraction``); submeasures may
additionally take the value ``INF``.  Two extended values are close in the
sense used for uniform continuity iff they are equal: at finite scale the
entourage intersection collapses epsilon-closeness to exact equality, and
infinity is a uniformly isolated value that is close only to itself.
Exactness is the point: the generated congruences depend only on zero
sets, and rationals make those exact.

A k-submeasure (k >= 1) is a function eta: carrier -> [0, INF] with

  * eta(0) = 0,
  * monotone:     a <= b            implies eta(a) <= eta(b),
  * subadditive:  a _|_ b           implies eta(a (+) b) <= k*eta(a) + eta(b),
  * absorption:   eta((a v b) (-) b) <= k*eta(a).

Its kernel {a : eta(a) = 0} is a D-filter generator, and the generated
uniformity is the induced congruence of the kernel; this is the weakest
D-congruence on which eta is class-constant.

A modular measure takes values in a rational vector space (standing in for
a topological Abelian group with coordinate seminorms) and satisfies

  * modular law: mu(a) + mu(b) = mu(a v b) + mu(a ^ b),
  * additivity:  a _|_ b implies mu(a (+) b) = mu(a) + mu(b).

The congruence it generates relates (a, b) when mu vanishes on the whole
lower set of delta(a, b).  ``spread_pseudometrics`` builds, per coordinate,
the pseudometric  d(a, b) = max |mu(r) - mu(s)|  over r, s in the order
interval [a ^ b, a v b]; these satisfy the four compatibility bounds below
with k = m = 1 and decompose the measure's congruence as an intersection
of submeasure kernels.

A compatible pseudometric with parameters k, m >= 1 satisfies

  * meet contraction:   d(a ^ c, b ^ c) <= d(a, b),
  * sum bound:          c _|_ a, c _|_ b implies d(a (+) c, b (+) c) <= k d(a, b),
  * absorption bound:   d((a v c) (-) c, (b v c) (-) c) <= m d(a, b),
  * absorption at zero: d((a v c) (-) c, 0) <= k d(a, 0).

Then a |-> d(a, 0) is a k-submeasure whose generated congruence equals the
zero set of d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DLatticeError,
    EffectAlgebra,
    iter_bits,
    mask_of,
)
from .dfilters import DFilterGenerator, enumerate_dfilters, is_dfilter_generator, require_generator
from .report import CheckResult, Report, failed, passed
from .uniformities import (
    BRUTE_CAP,
    Congruence,
    _induced_rows,
    enumerate_d_congruences,
    is_d_congruence,
)

INF = float("inf")

ZERO = Fraction(0)
ONE = Fraction(1)


class NotASubmeasure(DLatticeError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a k-submeasure: {reason} fails at {witness}")


class NotAPseudometric(DLatticeError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a compatible pseudometric: {reason} fails at {witness}")


class NotModular(DLatticeError):
    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a modular measure: {reason} fails at {witness}")


class NotMV(DLatticeError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def as_value(x):
    """Normalize an extended value: Fraction, int or "p/q" string, or inf."""
    if isinstance(x, float):
        if x == INF:
            return INF
        raise TypeError(f"finite values must be exact rationals, got float {x!r}")
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    value = as_fraction(x)
    if value < 0:
        raise ValueError(f"extended values must be nonnegative, got {value}")
    return value


def value_to_obj(x):
    if x == INF:
        return "inf"
    return int(x) if x.denominator == 1 else str(x)


# -- k-submeasures ---------------------------------------------------------

@dataclass(frozen=True)
class KSubmeasure:
    algebra: EffectAlgebra
    values: tuple
    k: Fraction

    def __call__(self, a: int):
        return self.values[a]

    def kernel_mask(self) -> int:
        return mask_of(a for a, v in enumerate(self.values) if v == 0)

    def __repr__(self) -> str:
        shown = ",".join(str(value_to_obj(v)) for v in self.values)
        return f"KSubmeasure(k={self.k}, values=[{shown}])"


def is_k_submeasure(algebra: EffectAlgebra, values, k) -> CheckResult:
    """Exhaustive check of the four submeasure conditions.

    Reasons: ``zero``, ``monotone``, ``subadditive``, ``absorption``; the
    witness is the smallest offending pair.
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    vals = tuple(as_value(v) for v in values)
    n = algebra.n
    if len(vals) != n:
        raise ValueError(f"expected {n} values, got {len(vals)}")
    if vals[algebra.zero] != 0:
        return failed("zero", (algebra.zero,))
    for a in range(n):
        va = vals[a]
        for b in algebra.up_list[a]:
            if va > vals[b]:
                return failed("monotone", (a, b))
    s = algebra.sum_table
    for a in range(n):
        row = s[a]
        bound_a = k * vals[a]
        for b in range(n):
            c = row[b]
            if c is not None and vals[c] > bound_a + vals[b]:
                return failed("subadditive", (a, b))
    jt, minus = algebra.join_table, algebra.minus_table
    for a in range(n):
        bound = k * vals[a]
        for b in range(n):
            if vals[minus[jt[a][b]][b]] > bound:
                return failed("absorption", (a, b))
    return passed()


def k_submeasure(algebra: EffectAlgebra, values, k) -> KSubmeasure:
    """Validated constructor; raises :class:`NotASubmeasure`."""
    verdict = is_k_submeasure(algebra, values, k)
    if not verdict:
        raise NotASubmeasure(verdict.reason, verdict.witness)
    return KSubmeasure(algebra, tuple(as_value(v) for v in values), as_fraction(k))


def kernel_uniformity(eta: KSubmeasure) -> Congruence:
    """The congruence generated by a k-submeasure.

    At finite scale the entourages {(a,b) : eta(delta(a,b)) < eps} bottom
    out at eps below the least positive value, so the minimal entourage is
    the induced congruence of the kernel {a : eta(a) = 0}.
    """
    verdict = is_k_submeasure(eta.algebra, eta.values, eta.k)
    if not verdict:
        raise NotASubmeasure(verdict.reason, verdict.witness)
    kernel = eta.kernel_mask()
    check = is_dfilter_generator(eta.algebra, kernel)
    if not check:  # impossible for a valid submeasure; guards bugs
        raise NotASubmeasure(f"kernel fails {check.reason}", check.witness)
    return Congruence(eta.algebra, _induced_rows(eta.algebra, kernel))


def _class_constant(values, congruence: Congruence) -> tuple | None:
    for a in range(congruence.algebra.n):
        va = values[a]
        for b in iter_bits(congruence.rows[a]):
            if values[b] != va:
                return (a, b)
    return None


def check_weakest(algebra: EffectAlgebra, eta: KSubmeasure, congruences=None,
                  brute_cap: int = BRUTE_CAP) -> Report:
    """Verify that the kernel congruence is the weakest making eta
    class-constant.

    Three checks: eta is exactly constant on each kernel class (infinity
    only matches infinity); every enumerated D-congruence on which eta is
    class-constant is contained in the kernel congruence; and the
    continuity bound eta(a v b) <= k*eta(delta(a,b)) + eta(a ^ b) holds for
    every pair.
    """
    report = Report(f"weakest uniformity for {eta!r} on {algebra.describe()}")
    generated = kernel_uniformity(eta)
    w = _class_constant(eta.values, generated)
    report.add("class_constant_on_kernel", w is None, witness=w)

    if congruences is None:
        mode = "brute" if algebra.n <= brute_cap else "via_filters"
        congruences = enumerate_d_congruences(algebra, mode, brute_cap=brute_cap)
    finer_w = None
    for cong in congruences:
        if _class_constant(eta.values, cong) is None and not cong.issubset(generated):
            finer_w = (cong.blocks(),)
            break
    report.add("weakest", finer_w is None, witness=finer_w,
               detail=f"{len(congruences)} congruences")

    n = algebra.n
    jt, mt, dt = algebra.join_table, algebra.meet_table, algebra.delta_table
    vals, k = eta.values, eta.k
    bound_w = None
    for a in range(n):
        for b in range(n):
            if vals[jt[a][b]] > k * vals[dt[a][b]] + vals[mt[a][b]]:
                bound_w = (a, b)
                break
        if bound_w:
            break
    report.add("join_continuity_bound", bound_w is None, witness=bound_w)
    report.counts["kernel_size"] = len(DFilterGenerator(algebra, eta.kernel_mask()))
    return report


def canonical_indicator(gen: DFilterGenerator) -> KSubmeasure:
    """The 0/1 indicator of the complement of a generator, with k = 1.

    Its kernel is the generator itself, so the generated congruence is
    exactly the generator's induced congruence: every finite-scale
    D-uniformity arises from a single 1-submeasure this way.
    """
    A = gen.algebra
    require_generator(A, gen)
    values = tuple(ZERO if (gen.mask >> a) & 1 else ONE for a in range(A.n))
    return KSubmeasure(A, values, ONE)


# -- pseudometrics ---------------------------------------------------------

@dataclass(frozen=True)
class Pseudometric:
    algebra: EffectAlgebra
    d: tuple  # n x n Fractions
    k: Fraction
    m: Fraction

    def __call__(self, a: int, b: int) -> Fraction:
        return self.d[a][b]

    def zero_relation_rows(self) -> tuple[int, ...]:
        n = self.algebra.n
        return tuple(
            mask_of(b for b in range(n) if self.d[a][b] == 0) for a in range(n)
        )


def check_pseudometric(algebra: EffectAlgebra, d, k, m) -> CheckResult:
    """Pseudometric axioms plus the four compatibility bounds.

    Reasons: ``nonnegative``, ``self_distance``, ``symmetric``,
    ``triangle``, ``meet_contraction``, ``sum_bound``, ``absorption_bound``,
    ``absorption_zero``.
    """
    k, m = as_fraction(k), as_fraction(m)
    if k < 1 or m < 1:
        raise ValueError(f"parameters must be >= 1, got k={k}, m={m}")
    n = algebra.n
    rows = tuple(tuple(as_fraction(x) for x in row) for row in d)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("distance table must be n x n")
    for a in range(n):
        if rows[a][a] != 0:
            return failed("self_distance", (a,))
        for b in range(n):
            if rows[a][b] < 0:
                return failed("nonnegative", (a, b))
            if rows[a][b] != rows[b][a]:
                return failed("symmetric", (a, b))
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            dab = ra[b]
            for c in range(n):
                if dab > ra[c] + rows[c][b]:
                    return failed("triangle", (a, b, c))
    jt, mt, s, minus = (algebra.join_table, algebra.meet_table,
                        algebra.sum_table, algebra.minus_table)
    for a in range(n):
        for b in range(n):
            dab = rows[a][b]
            for c in range(n):
                if rows[mt[a][c]][mt[b][c]] > dab:
                    return failed("meet_contraction", (a, b, c))
                ac, bc = s[a][c], s[b][c]
                if ac is not None and bc is not None and rows[ac][bc] > k * dab:
                    return failed("sum_bound", (a, b, c))
                if rows[minus[jt[a][c]][c]][minus[jt[b][c]][c]] > m * dab:
                    return failed("absorption_bound", (a, b, c))
    zero = algebra.zero
    for a in range(n):
        bound = k * rows[a][zero]
        for c in range(n):
            if rows[minus[jt[a][c]][c]][zero] > bound:
                return failed("absorption_zero", (a, c))
    return passed()


def pseudometric(algebra: EffectAlgebra, d, k, m) -> Pseudometric:
    verdict = check_pseudometric(algebra, d, k, m)
    if not verdict:
        raise NotAPseudometric(verdict.reason, verdict.witness)
    rows = tuple(tuple(as_fraction(x) for x in row) for row in d)
    return Pseudometric(algebra, rows, as_fraction(k), as_fraction(m))


@dataclass(frozen=True)
class PseudometricReduction:
    eta: KSubmeasure
    uniformities_equal: bool


def submeasure_from_pseudometric(pm: Pseudometric) -> PseudometricReduction:
    """Collapse a compatible pseudometric to the k-submeasure d(., 0).

    ``uniformities_equal`` records that the zero relation of d equals the
    congruence generated by the submeasure, i.e. the pseudometric and its
    collapse generate the same uniformity.
    """
    verdict = check_pseudometric(pm.algebra, pm.d, pm.k, pm.m)
    if not verdict:
        raise NotAPseudometric(verdict.reason, verdict.witness)
    zero = pm.algebra.zero
    eta = k_submeasure(pm.algebra, tuple(pm.d[a][zero] for a in range(pm.algebra.n)), pm.k)
    equal = pm.zero_relation_rows() == kernel_uniformity(eta).rows
    return PseudometricReduction(eta=eta, uniformities_equal=equal)


# -- modular measures ------------------------------------------------------

@dataclass(frozen=True)
class ModularMeasure:
    algebra: EffectAlgebra
    vectors: tuple  # one Fraction tuple per element
    norm: str = "max"

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __call__(self, a: int) -> tuple:
        return self.vectors[a]


def _vec(xs) -> tuple:
    return tuple(as_fraction(x) for x in xs)


def _vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _norm(v, kind: str) -> Fraction:
    if kind == "max":
        return max(abs(x) for x in v)
    if kind == "sum":
        return sum((abs(x) for x in v), ZERO)
    raise ValueError(f"unknown norm kind {kind!r}")


def modular_measure_check(algebra: EffectAlgebra, vectors) -> CheckResult:
    """Exhaustive check of the modular law and additivity."""
    n = algebra.n
    vecs = tuple(_vec(v) for v in vectors)
    if len(vecs) != n:
        raise ValueError(f"expected {n} vectors, got {len(vecs)}")
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError("all vectors must share one dimension")
    if dim == 0:
        raise ValueError("dimension must be at least 1")
    jt, mt, s = algebra.join_table, algebra.meet_table, algebra.sum_table
    for a in range(n):
        row = s[a]
        for b in range(n):
            c = row[b]
            if c is not None and vecs[c] != _vec_add(vecs[a], vecs[b]):
                return failed("additive", (a, b))
    for a in range(n):
        for b in range(n):
            if _vec_add(vecs[a], vecs[b]) != _vec_add(vecs[jt[a][b]], vecs[mt[a][b]]):
                return failed("modular_law", (a, b))
    return passed()


def modular_measure(algebra: EffectAlgebra, vectors, norm: str = "max") -> ModularMeasure:
    if norm not in ("max", "sum"):
        raise ValueError(f"norm must be 'max' or 'sum', got {norm!r}")
    verdict = modular_measure_check(algebra, vectors)
    if not verdict:
        raise NotModular(verdict.reason, verdict.witness)
    return ModularMeasure(algebra, tuple(_vec(v) for v in vectors), norm)


def measure_uniformity(mu: ModularMeasure) -> Congruence:
    """Congruence generated by a modular measure: (a, b) are related when
    mu vanishes on every r <= delta(a, b)."""
    A = mu.algebra
    verdict = modular_measure_check(A, mu.vectors)
    if not verdict:
        raise NotModular(verdict.reason, verdict.witness)
    n = A.n
    zero_vec = tuple(ZERO for _ in range(mu.dim))
    null_mask = mask_of(a for a in range(n) if mu.vectors[a] == zero_vec)
    hereditary = mask_of(a for a in range(n) if A.down_mask[a] & ~null_mask == 0)
    dt = A.delta_table
    rows = tuple(
        mask_of(b for b in range(n) if (hereditary >> dt[a][b]) & 1)
        for a in range(n)
    )
    return Congruence(A, rows)


def spread_pseudometrics(mu: ModularMeasure) -> tuple[Pseudometric, ...]:
    """One pseudometric per coordinate plus one for the chosen norm.

    d(a, b) is the largest seminorm of mu(r) - mu(s) over r, s in the
    order interval [a ^ b, a v b]; each output satisfies the compatibility
    bounds with k = m = 1.
    """
    A = mu.algebra
    verdict = modular_measure_check(A, mu.vectors)
    if not verdict:
        raise NotModular(verdict.reason, verdict.witness)
    n, dim = A.n, mu.dim
    jt, mt = A.join_table, A.meet_table
    up, down = A.up_mask, A.down_mask

    interval_elems: dict[tuple[int, int], tuple[int, ...]] = {}
    coord_span: dict[tuple[int, int], tuple] = {}
    norm_span: dict[tuple[int, int], Fraction] = {}
    for a in range(n):
        for b in range(a, n):
            key = (mt[a][b], jt[a][b])
            if key in coord_span:
                continue
            elems = tuple(iter_bits(up[key[0]] & down[key[1]]))
            interval_elems[key] = elems
            spans = []
            for c in range(dim):
                coords = [mu.vectors[r][c] for r in elems]
                spans.append(max(coords) - min(coords))
            coord_span[key] = tuple(spans)
            best = ZERO
            for i, r in enumerate(elems):
                for s_ in elems[i + 1:]:
                    val = _norm(_vec_sub(mu.vectors[r], mu.vectors[s_]), mu.norm)
                    if val > best:
                        best = val
            norm_span[key] = best

    def table(value_of):
        rows = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                v = value_of((mt[a][b], jt[a][b]))
                rows[a][b] = rows[b][a] = v
        return tuple(tuple(row) for row in rows)

    out = [
        Pseudometric(A, table(lambda key, c=c: coord_span[key][c]), ONE, ONE)
        for c in range(dim)
    ]
    out.append(Pseudometric(A, table(lambda key: norm_span[key]), ONE, ONE))
    return tuple(out)


def decompose_measure(mu: ModularMeasure) -> Report:
    """Split a measure's congruence into coordinate submeasure kernels.

    Builds eta_c = d_c(., 0) from the coordinate spread pseudometrics,
    verifies each is a 1-submeasure, and verifies that the intersection of
    their generated congruences equals the measure's congruence (the
    finite-scale supremum of the factor uniformities).
    """
    A = mu.algebra
    report = Report(f"decomposition of {mu.dim}-dim measure on {A.describe()}")
    metrics = spread_pseudometrics(mu)[:-1]  # coordinates only
    zero = A.zero

    etas = []
    bad = None
    for c, pm in enumerate(metrics):
        values = tuple(pm.d[a][zero] for a in range(A.n))
        verdict = is_k_submeasure(A, values, ONE)
        if verdict:
            etas.append(KSubmeasure(A, values, ONE))
        elif bad is None:
            bad = (c, verdict.reason, verdict.witness)
    report.add("coordinate_submeasures", bad is None, witness=bad,
               detail=f"{len(metrics)} coordinates")

    target = measure_uniformity(mu)
    cong_check = is_d_congruence(A, target)
    report.add_result("generated_congruence_criteria", cong_check)

    factor_rows = [kernel_uniformity(eta).rows for eta in etas]
    intersection = tuple(
        _and_all(rows[a] for rows in factor_rows) if factor_rows else A.full_mask
        for a in range(A.n)
    )
    report.add("kernel_intersection_matches", intersection == target.rows,
               witness=None if intersection == target.rows
               else (intersection, target.rows))
    strictly_finer = sum(
        1 for rows in factor_rows
        if intersection != rows and all(x & ~y == 0 for x, y in zip(intersection, rows))
    )
    report.counts["dim"] = mu.dim
    report.counts["factors_strictly_coarser"] = strictly_finer
    return report


def _and_all(masks) -> int:
    out = None
    for m in masks:
        out = m if out is None else out & m
    return out if out is not None else 0


def mv_absorption_from_subadditivity(algebra: EffectAlgebra, values) -> CheckResult:
    """On an MV algebra, zero + monotone + subadditive (k = 1) already
    forces the absorption bound; confirm it for the given values.

    Raises :class:`NotMV` when the algebra is not MV and ``ValueError``
    when the values fail the three assumed conditions.  A failing result
    would indicate a broken MV law implementation.
    """
    from .core import classify

    if not classify(algebra).is_mv:
        raise NotMV(f"{algebra.describe()} does not satisfy the MV law")
    vals = tuple(as_value(v) for v in values)
    pre = _s123_witness(algebra, vals)
    if pre is not None:
        raise ValueError(f"values fail assumed condition {pre[0]} at {pre[1]}")
    jt, minus = algebra.join_table, algebra.minus_table
    n = algebra.n
    for a in range(n):
        for b in range(n):
            if vals[minus[jt[a][b]][b]] > vals[a]:
                return failed("absorption", (a, b))
    return passed()


def _s123_witness(algebra: EffectAlgebra, vals) -> tuple | None:
    """Zero, monotonicity and 1-subadditivity only (no absorption)."""
    if vals[algebra.zero] != 0:
        return ("zero", (algebra.zero,))
    n = algebra.n
    for a in range(n):
        for b in algebra.up_list[a]:
            if vals[a] > vals[b]:
                return ("monotone", (a, b))
    s = algebra.sum_table
    for a in range(n):
        for b in range(n):
            c = s[a][b]
            if c is not None and vals[c] > vals[a] + vals[b]:
                return ("subadditive", (a, b))
    return None


# -- the linear space of scalar modular measures ---------------------------

def modular_measure_basis(algebra: EffectAlgebra) -> tuple[tuple[Fraction, ...], ...]:
    """Basis of the rational vector space of scalar modular measures.

    The modular law, additivity and mu(0) = 0 are linear constraints on
    the value vector, so the space is the nullspace of a small rational
    matrix; Gaussian elimination finds it exactly.
    """
    n = algebra.n
    jt, mt, s = algebra.join_table, algebra.meet_table, algebra.sum_table
    rows = set()

    def add_row(coeffs):
        if any(coeffs):
            rows.add(tuple(coeffs))

    base = [0] * n
    base[algebra.zero] = 1
    add_row(base)
    for a in range(n):
        for b in range(a, n):
            coeffs = [0] * n
            coeffs[a] += 1
            coeffs[b] += 1
            coeffs[jt[a][b]] -= 1
            coeffs[mt[a][b]] -= 1
            add_row(coeffs)
            c = s[a][b]
            if c is not None:
                coeffs = [0] * n
                coeffs[a] += 1
                coeffs[b] += 1
                coeffs[c] -= 1
                add_row(coeffs)

    matrix = [[Fraction(x) for x in row] for row in sorted(rows)]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = matrix[r][col]
        matrix[r] = [x / inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
        if r == len(matrix):
            break

    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [ZERO] * n
        vec[free] = ONE
        for row_idx, col in enumerate(pivots):
            vec[col] = -matrix[row_idx][free]
        basis.append(tuple(vec))
    return tuple(basis)


# -- deterministic corpora -------------------------------------------------

def _scaled(values, factor: Fraction):
    return tuple(v if v == INF else factor * v for v in values)


def _summed(u, v):
    return tuple(INF if x == INF or y == INF else x + y for x, y in zip(u, v))


def _random_monotone_values(algebra: EffectAlgebra, rng: random.Random):
    order = sorted(range(algebra.n),
                   key=lambda x: (len(algebra.down_list[x]), x))
    pool = (ZERO, ZERO, Fraction(1, 2), ONE, Fraction(2), Fraction(3))
    vals = [ZERO] * algebra.n
    for x in order:
        below = [vals[y] for y in algebra.down_list[x] if y != x]
        floor = max(below) if below else ZERO
        vals[x] = floor + rng.choice(pool)
    vals[algebra.zero] = ZERO
    return tuple(vals)


def submeasure_corpus(algebra: EffectAlgebra, count: int = 100, seed: int = 0,
                      ks=(ONE, Fraction(3, 2), Fraction(2))) -> list[KSubmeasure]:
    """Deterministic family of valid k-submeasures for stress testing.

    Mixes indicator submeasures of every D-filter, their positive rational
    scalings and sums, infinity-valued indicators, nonnegative modular
    measures, and random monotone assignments filtered through
    :func:`is_k_submeasure`.
    """
    rng = random.Random(seed)
    ks = tuple(as_fraction(k) for k in ks)
    out: list[KSubmeasure] = []
    seen: set[tuple] = set()

    def offer(values, k):
        key = (tuple(values), k)
        if key in seen or len(out) >= count:
            return
        if is_k_submeasure(algebra, values, k):
            seen.add(key)
            out.append(KSubmeasure(algebra, tuple(values), k))

    filters = enumerate_dfilters(algebra)
    indicators = [canonical_indicator(f).values for f in filters]
    for ind in indicators:
        for k in ks:
            offer(ind, k)
        offer(tuple(INF if v else ZERO for v in ind), ONE)

    scales = [Fraction(p, q) for p in (1, 2, 3, 5, 7) for q in (1, 2, 3, 4)]
    round_no = 0
    while len(out) < count and round_no < 40 * count:
        round_no += 1
        choice = round_no % 4
        k = ks[round_no % len(ks)]
        if choice == 0 and indicators:
            base = rng.choice(indicators)
            offer(_scaled(base, rng.choice(scales)), k)
        elif choice == 1 and len(out) >= 2:
            u = rng.choice(out).values
            v = rng.choice(out).values
            offer(_summed(u, v), max(k, ONE))
        elif choice == 2 and len(out) >= 2:
            u = rng.choice(out).values
            v = rng.choice(out).values
            merged = tuple(max(x, y) for x, y in zip(u, v))
            offer(merged, k)
        else:
            offer(_random_monotone_values(algebra, rng), k)
    return out


def modular_measure_corpus(algebra: EffectAlgebra, count: int = 20, seed: int = 0,
                           max_dim: int = 2) -> list[ModularMeasure]:
    """Deterministic modular measures spanning the full measure space.

    Random integer combinations of the basis from
    :func:`modular_measure_basis` per coordinate; dimension and norm kind
    alternate.  When the measure space is trivial only the zero measure
    exists and the corpus is a singleton.
    """
    basis = modular_measure_basis(algebra)
    n = algebra.n
    zero_measure = ModularMeasure(algebra, tuple((ZERO,) for _ in range(n)), "max")
    if not basis:
        return [zero_measure]
    rng = random.Random(seed)
    out: list[ModularMeasure] = [zero_measure]
    seen = {zero_measure.vectors}
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        dim = 1 + (attempts % max_dim)
        norm = "max" if attempts % 2 == 0 else "sum"
        columns = []
        for _ in range(dim):
            coeffs = [Fraction(rng.randint(-3, 4)) for _ in basis]
            col = [ZERO] * n
            for coeff, vec in zip(coeffs, basis):
                if coeff:
                    col = [x + coeff * y for x, y in zip(col, vec)]
            columns.append(col)
        vectors = tuple(tuple(col[a] for col in columns) for a in range(n))
        if vectors in seen:
            # fall back to a fresh scaling of the first basis vector
            t = Fraction(len(out) + attempts)
            vectors = tuple((t * basis[0][a],) * dim for a in range(n))
            if vectors in seen:
                continue
        seen.add(vectors)
        out.append(ModularMeasure(algebra, vectors, norm))
    return out


# -- JSON interchange ------------------------------------------------------

def submeasure_to_obj(eta: KSubmeasure) -> dict:
    return {
        "values": [value_to_obj(v) for v in eta.values],
        "k": value_to_obj(eta.k),
    }


def submeasure_from_obj(algebra: EffectAlgebra, obj: dict) -> KSubmeasure:
    try:
        values = obj["values"]
        k = obj["k"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"submeasure object missing field: {exc}") from exc
    return k_submeasure(algebra, [as_value(v) for v in values], as_fraction(k))


def measure_to_obj(mu: ModularMeasure) -> dict:
    return {
        "dim": mu.dim,
        "mu": [[value_to_obj(x) for x in vec] for vec in mu.vectors],
        "norm": mu.norm,
    }


def measure_from_obj(algebra: EffectAlgebra, obj: dict) -> ModularMeasure:
    try:
        vectors = obj["mu"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"measure object missing field: {exc}") from exc
    dim = obj.get("dim")
    if dim is not None and any(len(v) != dim for v in vectors):
        raise ValueError("vector lengths disagree with declared dim")
    return modular_measure(algebra, vectors, norm=obj.get("norm", "max"))
