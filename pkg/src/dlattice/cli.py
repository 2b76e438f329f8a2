"""Command line surface: ``ea <command> ...``.

Exit codes: 0 when every check passed, 1 when a mathematical property
failed (the report carries the witness), 2 on input or format errors.
``--json`` switches to canonical JSON output, which is byte identical
across runs for the same input; timing information only appears in the
human-readable format.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog
from .core import (
    DLatticeError,
    EffectAlgebra,
    algebra_to_obj,
    classify,
    load_algebra,
    verify_basic_identities,
)
from .dfilters import (
    enumerate_dfilters,
    filter_hasse_dot,
    is_dfilter_generator,
    verify_filter_lattice,
)
from .report import PASS, Report, canonical_json
from .submeasures import (
    as_fraction,
    as_value,
    canonical_indicator,
    check_pseudometric,
    check_weakest,
    decompose_measure,
    is_k_submeasure,
    kernel_uniformity,
    measure_from_obj,
    measure_uniformity,
    modular_measure_check,
    modular_measure_corpus,
    mv_absorption_from_subadditivity,
    spread_pseudometrics,
    submeasure_corpus,
    submeasure_from_obj,
    submeasure_from_pseudometric,
)
from .uniformities import (
    alternative_entourages,
    enumerate_d_congruences,
    verify_isomorphism,
    zero_class,
)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(report: Report, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(report.to_json())
    else:
        print(report.render())
    return 0 if report.ok else 1


def _cmd_build(args) -> int:
    kind = args.kind
    if kind == "chain":
        alg = catalog.mv_chain(args.param)
    elif kind == "boolean":
        alg = catalog.boolean_algebra(args.param)
    elif kind == "mo":
        alg = catalog.mo(args.param)
    elif kind in ("product", "hsum"):
        if len(args.inputs or ()) != 2:
            raise ValueError(f"--inputs A.json B.json required for {kind}")
        a = load_algebra(args.inputs[0])
        b = load_algebra(args.inputs[1])
        alg = catalog.product(a, b) if kind == "product" else catalog.horizontal_sum(a, b)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    text = canonical_json(algebra_to_obj(alg))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check(args) -> int:
    alg = load_algebra(args.algebra)
    report = verify_basic_identities(alg)
    cls = classify(alg)
    report.counts["is_mv"] = cls.is_mv
    report.counts["is_oml"] = cls.is_oml
    return _emit(report, args.json)


def _cmd_filters(args) -> int:
    alg = load_algebra(args.algebra)
    filters = enumerate_dfilters(alg)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(filter_hasse_dot(alg, filters))
    if args.json:
        obj = {
            "algebra": alg.describe(),
            "count": len(filters),
            "generators": [sorted(f.members) for f in filters],
        }
        sys.stdout.write(canonical_json(obj))
    else:
        print(f"{len(filters)} D-filters on {alg.describe()}:")
        for f in filters:
            print(f"  {f.describe()}")
    return 0


def _cmd_congruences(args) -> int:
    alg = load_algebra(args.algebra)
    mode = "brute" if args.mode == "brute" else "via_filters"
    congruences = enumerate_d_congruences(alg, mode, brute_cap=args.congruence_cap)
    if args.json:
        obj = {
            "algebra": alg.describe(),
            "mode": mode,
            "count": len(congruences),
            "partitions": [[list(b) for b in c.blocks()] for c in congruences],
        }
        sys.stdout.write(canonical_json(obj))
    else:
        print(f"{len(congruences)} D-congruences on {alg.describe()} ({mode}):")
        for c in congruences:
            print(f"  {c.describe()}")
    return 0


def _cmd_iso(args) -> int:
    alg = load_algebra(args.algebra)
    report = verify_isomorphism(alg, brute_cap=args.congruence_cap)
    return _emit(report, args.json)


def _cmd_lattice(args) -> int:
    alg = load_algebra(args.algebra)
    report = verify_filter_lattice(alg)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(filter_hasse_dot(alg))
    return _emit(report, args.json)


def _cmd_submeasure(args) -> int:
    alg = load_algebra(args.algebra)
    obj = _load_json(args.submeasure)
    values = [as_value(v) for v in obj["values"]]
    k = as_fraction(obj["k"])
    if args.action == "check":
        report = Report(f"submeasure candidate on {alg.describe()}")
        report.add_result("submeasure_conditions",
                          is_k_submeasure(alg, values, k), detail=f"k={k}")
        return _emit(report, args.json)
    eta = submeasure_from_obj(alg, obj)
    report = check_weakest(alg, eta, brute_cap=args.congruence_cap)
    generated = kernel_uniformity(eta)
    if args.json:
        out = report.to_obj()
        out["congruence"] = [list(b) for b in generated.blocks()]
        sys.stdout.write(canonical_json(out))
        return 0 if report.ok else 1
    print(f"generated congruence: {generated.describe()}")
    return _emit(report, False)


def _cmd_measure(args) -> int:
    alg = load_algebra(args.algebra)
    obj = _load_json(args.measure)
    if args.action == "check":
        report = Report(f"measure candidate on {alg.describe()}")
        vectors = [[as_fraction(x) for x in vec] for vec in obj["mu"]]
        report.add_result("measure_conditions",
                          modular_measure_check(alg, vectors),
                          detail=f"dim={len(vectors[0])}")
        return _emit(report, args.json)
    mu = measure_from_obj(alg, obj)
    if args.action == "uniformity":
        generated = measure_uniformity(mu)
        out = {
            "algebra": alg.describe(),
            "partition": [list(b) for b in generated.blocks()],
        }
        if args.json:
            sys.stdout.write(canonical_json(out))
        else:
            print(f"generated congruence: {generated.describe()}")
        return 0
    return _emit(decompose_measure(mu), args.json)


# -- the full suite --------------------------------------------------------

def _suite_algebra_report(alg: EffectAlgebra, congruence_cap: int,
                          submeasure_count: int, measure_count: int,
                          seed: int) -> Report:
    report = Report(alg.describe())
    report.counts["n"] = alg.n

    report.extend(verify_basic_identities(alg))

    filters = enumerate_dfilters(alg)
    lattice = verify_filter_lattice(alg, filters=filters)
    report.extend(lattice)

    if alg.n <= congruence_cap:
        report.extend(verify_isomorphism(alg, brute_cap=congruence_cap))
    else:
        report.skip("isomorphism", f"n={alg.n} above congruence cap {congruence_cap}")

    alt_w = None
    displayed_note = 0
    for f in filters:
        alt = alternative_entourages(f)
        if not alt.all_equal:
            alt_w = (f.mask,)
            break
        if alt.displayed_plus_differs:
            displayed_note += 1
    report.add("alternative_entourages_agree", alt_w is None, witness=alt_w,
               detail=f"{len(filters)} filters; "
                      f"{displayed_note} with asymmetric plus/minus variant")

    congruences = enumerate_d_congruences(alg, "via_filters")

    regen_w = None
    for cong in congruences:
        eta = canonical_indicator(zero_class(cong))
        if kernel_uniformity(eta).rows != cong.rows:
            regen_w = (cong.blocks(),)
            break
    report.add("indicator_regenerates_congruence", regen_w is None,
               witness=regen_w, detail=f"{len(congruences)} congruences")

    etas = submeasure_corpus(alg, count=submeasure_count, seed=seed)
    kernel_w = weakest_w = None
    for eta in etas:
        check = is_dfilter_generator(alg, eta.kernel_mask())
        if not check and kernel_w is None:
            kernel_w = (tuple(eta.values), check.reason, check.witness)
        sub_report = check_weakest(alg, eta, congruences=congruences)
        if not sub_report.ok and weakest_w is None:
            weakest_w = (tuple(eta.values), str(eta.k))
    report.add("submeasure_kernels_generate", kernel_w is None, witness=kernel_w,
               detail=f"{len(etas)} submeasures")
    report.add("submeasure_weakest", weakest_w is None, witness=weakest_w,
               detail=f"{len(etas)} submeasures")

    if classify(alg).is_mv:
        mv_w = None
        for eta in etas:
            if eta.k != 1:
                continue
            verdict = mv_absorption_from_subadditivity(alg, eta.values)
            if not verdict:
                mv_w = (verdict.reason, verdict.witness)
                break
        report.add("mv_absorption_confirmed", mv_w is None, witness=mv_w)

    measures = modular_measure_corpus(alg, count=measure_count, seed=seed)
    metric_w = reduce_w = decomp_w = None
    for mu in measures:
        for pm in spread_pseudometrics(mu):
            verdict = check_pseudometric(alg, pm.d, pm.k, pm.m)
            if not verdict and metric_w is None:
                metric_w = (verdict.reason, verdict.witness)
            reduction = submeasure_from_pseudometric(pm)
            if not reduction.uniformities_equal and reduce_w is None:
                reduce_w = (pm.d[alg.zero],)
        if not decompose_measure(mu).ok and decomp_w is None:
            decomp_w = (mu.vectors,)
    report.add("spread_pseudometrics_compatible", metric_w is None,
               witness=metric_w, detail=f"{len(measures)} measures")
    report.add("pseudometric_reduction_equal", reduce_w is None, witness=reduce_w)
    report.add("measure_decomposition", decomp_w is None, witness=decomp_w)
    return report


def _cmd_suite(args) -> int:
    algebras = catalog.standard_catalog(max_n=args.max_n)
    reports = []
    t0 = time.monotonic()
    for alg in algebras:
        reports.append(
            _suite_algebra_report(alg, args.congruence_cap,
                                  args.submeasures, args.measures, args.seed)
        )
    ok = all(r.ok for r in reports)
    if args.json:
        obj = {
            "parameters": {
                "max_n": args.max_n,
                "congruence_cap": args.congruence_cap,
                "submeasures": args.submeasures,
                "measures": args.measures,
                "seed": args.seed,
            },
            "status": PASS if ok else "FAIL",
            "reports": [r.to_obj() for r in reports],
        }
        sys.stdout.write(canonical_json(obj))
    else:
        for r in reports:
            print(r.render())
            print()
        print(f"suite: {len(reports)} algebras, "
              f"{'all passed' if ok else 'FAILURES PRESENT'} "
              f"({time.monotonic() - t0:.1f}s)")
    return 0 if ok else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ea",
        description="Verification workbench for finite lattice ordered effect algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a catalog algebra as JSON")
    p.add_argument("--kind", required=True,
                   choices=["chain", "boolean", "mo", "product", "hsum"])
    p.add_argument("--param", type=int, help="size parameter for chain/boolean/mo")
    p.add_argument("--inputs", nargs=2, metavar=("A.json", "B.json"),
                   help="operand files for product/hsum")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("check", help="axioms plus the identity suite")
    p.add_argument("algebra")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("filters", help="enumerate D-filters")
    p.add_argument("algebra")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", help="write the Hasse diagram as DOT")
    p.set_defaults(func=_cmd_filters)

    p = sub.add_parser("congruences", help="enumerate D-congruences")
    p.add_argument("algebra")
    p.add_argument("--mode", choices=["brute", "filters"], default="brute")
    p.add_argument("--congruence-cap", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_congruences)

    p = sub.add_parser("iso", help="verify the filter/congruence isomorphism")
    p.add_argument("algebra")
    p.add_argument("--congruence-cap", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("lattice", help="verify the D-filter lattice structure")
    p.add_argument("algebra")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", help="write the Hasse diagram as DOT")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("submeasure", help="submeasure checks")
    p.add_argument("action", choices=["check", "uniformity"])
    p.add_argument("algebra")
    p.add_argument("submeasure")
    p.add_argument("--congruence-cap", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_submeasure)

    p = sub.add_parser("measure", help="modular measure checks")
    p.add_argument("action", choices=["check", "uniformity", "decompose"])
    p.add_argument("algebra")
    p.add_argument("measure")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("suite", help="run everything on the standard catalog")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--congruence-cap", type=int, default=10)
    p.add_argument("--submeasures", type=int, default=100)
    p.add_argument("--measures", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"error: missing field {exc}", file=sys.stderr)
        return 2
    except (DLatticeError, ValueError, TypeError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
