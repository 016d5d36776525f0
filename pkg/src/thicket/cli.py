"""Command-line interface: enumerate, count, classify, render, verify, table.

Exit codes: 0 success, 1 usage error, 2 invalid mathematical input,
3 verification mismatch.
"""

import argparse
import json
import os
import sys
from math import comb, gcd

from . import classifier, derived_engine, ncp_models, render
from .classifier import (
    CategoryType,
    NoClosedForm,
    classification_report,
    count_thick_formula,
    enumerate_thick,
    overview_markdown,
    overview_table,
)
from .derived_engine import (
    InvalidType,
    brute_force_classify,
    build_label_walk,
    cluster_category_check,
    suspension_vertex_map,
    tau_power,
)
from .ncp_models import (
    BadDivisor,
    Crossing,
    DPartition,
    NotInvariant,
    SetPartitionA,
    ar_bijection_f,
    construct_fiber,
    coxeter_conjugation_is_sigma_rho,
    enumerate_nc_a,
    enumerate_nc_b,
    rotate_a,
    rotation_period_a,
)
from .root_coxeter import (
    DynkinType,
    NotARoot,
    NotInInterval,
    WrongSeries,
    build_root_system,
    enumerate_nc,
)

USAGE_ERROR = 1
MATH_ERROR = 2
MISMATCH = 3

_MATH_ERRORS = (
    InvalidType,
    NotARoot,
    NotInInterval,
    WrongSeries,
    Crossing,
    NotInvariant,
    BadDivisor,
    classifier.ExcludedType,
    classifier.NotAsashibaType,
    render.WindowTooLarge,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def max_e_rank():
    raw = os.environ.get("THICKET_MAX_RANK", "6")
    try:
        return int(raw)
    except ValueError:
        return 6


def _category_type(args):
    return CategoryType(DynkinType(args.series, args.rank), args.r, args.t)


def _add_type_flags(p):
    p.add_argument("--series", required=True, choices=["A", "D", "E"])
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--t", required=True, help="torsion order: 1, 2, 3 or inf")


def build_parser():
    top = _Parser(prog="thicket", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count thick subcategories")
    _add_type_flags(p)
    p.add_argument("--proper", action="store_true", help="exclude the two trivial ones")
    p.add_argument("--json", action="store_true")
    p.add_argument("--check", action="store_true",
                   help="cross-check formula, enumeration and brute force")

    p = sub.add_parser("enumerate", help="list circular partitions as JSON lines")
    p.add_argument("--model", required=True, choices=["A", "B", "D"])
    p.add_argument("--n", required=True, type=int)

    p = sub.add_parser("classify", help="emit one descriptor JSON per thick subcategory")
    _add_type_flags(p)
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is JSON lines")

    p = sub.add_parser("render", help="write SVG (and ASCII for strips)")
    rsub = p.add_subparsers(dest="what", required=True)
    c = rsub.add_parser("circle")
    c.add_argument("--model", required=True, choices=["A", "D"])
    c.add_argument("--n", required=True, type=int)
    c.add_argument("--blocks", required=True,
                   help="blocks as comma lists joined by '|', e.g. '1,4|2,3|5'")
    c.add_argument("--out", required=True)
    s = rsub.add_parser("strip")
    _add_type_flags(s)
    s.add_argument("--index", type=int, default=None,
                   help="which thick subcategory (enumeration order); all if omitted")
    s.add_argument("--window", default=None, help="column range lo:hi")
    s.add_argument("--out", required=True, help="output file prefix")

    p = sub.add_parser("table", help="overview of criteria and counts per type")
    p.add_argument("--json", action="store_true")
    p.add_argument("--check", action="store_true",
                   help="evaluate count cells on a grid against enumeration")
    p.add_argument("--max-rank", type=int, default=5)
    p.add_argument("--max-r", type=int, default=None)

    p = sub.add_parser("verify", help="run the cross-check battery")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--json", action="store_true")
    return top


def cmd_count(args):
    ct = _category_type(args)
    try:
        total = count_thick_formula(ct)
    except NoClosedForm:
        if ct.delta.rank > max_e_rank():
            raise InvalidType(
                f"rank {ct.delta.rank} exceeds THICKET_MAX_RANK={max_e_rank()}"
            )
        total = len(enumerate_thick(ct))
    shown = total - 2 if args.proper else total
    if args.check:
        report = classification_report(ct)
        if args.json:
            print(json.dumps(report, sort_keys=True))
        else:
            print(shown)
        if not report["agree"]:
            print(
                f"mismatch for {ct}: formula={report['count_formula']} "
                f"enumerated={report['count_enumerated']} "
                f"brute_force={report['count_brute_force']}",
                file=sys.stderr,
            )
            return MISMATCH
        return 0
    if args.json:
        doc = {"type": ct.to_json(), "count": shown, "proper": args.proper}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(shown)
    return 0


def cmd_enumerate(args):
    if args.n < 1:
        raise ValueError("n must be positive")
    if args.model == "A":
        for p in enumerate_nc_a(args.n):
            print(json.dumps(p.to_json()))
    elif args.model == "B":
        for p in enumerate_nc_b(args.n):
            print(json.dumps(p.to_json()))
    else:
        rs = build_root_system(DynkinType("D", args.n))
        for w in enumerate_nc(rs):
            print(json.dumps(ar_bijection_f(rs, w).to_json()))
    return 0


def cmd_classify(args):
    ct = _category_type(args)
    if ct.delta.series == "E" and ct.delta.rank > max_e_rank():
        raise InvalidType(
            f"rank {ct.delta.rank} exceeds THICKET_MAX_RANK={max_e_rank()}"
        )
    for desc in enumerate_thick(ct):
        print(json.dumps(desc.to_json(ct), sort_keys=True))
    return 0


def _parse_blocks(raw):
    blocks = []
    for part in raw.split("|"):
        blocks.append(tuple(int(x) for x in part.split(",") if x.strip()))
    return tuple(blocks)


def cmd_render(args):
    if args.what == "circle":
        blocks = _parse_blocks(args.blocks)
        if args.model == "A":
            p = SetPartitionA(args.n, blocks)
            svg = render.render_circle(p, kind="A")
        else:
            p = DPartition(args.n, blocks)
            svg = render.render_circle(p, kind="D")
        with open(args.out, "w") as fh:
            fh.write(svg)
        print(args.out)
        return 0
    ct = _category_type(args)
    h = ct.delta.coxeter_number
    window = (0, 2 * h)
    if args.window:
        lo, hi = args.window.split(":")
        window = (int(lo), int(hi))
    descs = enumerate_thick(ct)
    chosen = descs if args.index is None else [descs[args.index]]
    for i, desc in enumerate(chosen):
        idx = args.index if args.index is not None else i
        svg = render.render_ar_strip(desc, window, domain_width=ct.r)
        txt = render.ascii_ar_strip(desc, window)
        with open(f"{args.out}{idx}.svg", "w") as fh:
            fh.write(svg)
        with open(f"{args.out}{idx}.txt", "w") as fh:
            fh.write(txt)
        print(f"{args.out}{idx}.svg")
    return 0


def cmd_table(args):
    rows = overview_table()
    if args.json:
        print(json.dumps(list(rows), indent=2))
    else:
        print(overview_markdown(), end="")
    if not args.check:
        return 0
    max_r = args.max_r or 12
    bad = []
    for n in range(1, args.max_rank + 1):
        cells = classifier.overview_evaluate([n], range(1, max_r + 1))
        bad.extend(c for c in cells if not c["agree"])
    if bad:
        print(f"{len(bad)} cells disagree with enumeration:", file=sys.stderr)
        for c in bad:
            print(f"  {c}", file=sys.stderr)
        return MISMATCH
    print(f"all table cells agree with enumeration up to rank {args.max_rank}")
    return 0


# -- verify battery -----------------------------------------------------


def _catalan(n):
    return comb(2 * n, n) // (n + 1)


def _check_partition_counts(max_rank):
    n = max(4, min(8, max_rank + 3))
    ok = all(len(enumerate_nc_a(k)) == _catalan(k) for k in range(1, n + 1))
    return ok, f"A-model counts match Catalan numbers up to n={n}"


def _check_interval_counts(max_rank):
    details = []
    ok = True
    for series, rank, expected in [
        ("A", 2, 5), ("A", 3, 14), ("A", 4, 42), ("A", 5, 132),
        ("D", 4, 50), ("D", 5, 182), ("D", 6, 672), ("E", 6, 833),
    ]:
        if rank > max_rank and series != "E":
            continue
        if series == "E" and rank > max_e_rank():
            continue
        rs = build_root_system(DynkinType(series, rank))
        got = len(enumerate_nc(rs))
        if got != expected:
            ok = False
            details.append(f"{series}{rank}: {got} != {expected}")
    msg = "interval sizes match the type counts" + (
        f" ({'; '.join(details)})" if details else ""
    )
    return ok, msg


def _check_rotation_counts(max_rank):
    hmax = min(10, max(6, max_rank + 4))
    for h in range(2, hmax + 1):
        periods = [rotation_period_a(p) for p in enumerate_nc_a(h)]
        for r in range(1, h + 1):
            s = gcd(h, r)
            got = sum(1 for d in periods if s % d == 0)
            want = _catalan(h) if s == h else comb(2 * s, s)
            if got != want:
                return False, f"rotation count failed at h={h}, r={r}"
    return True, f"rotation-invariant counts match binomials up to h={hmax}"


def _check_bijections(max_rank):
    for n in range(1, min(4, max_rank) + 1):
        rs = build_root_system(DynkinType("A", n))
        for w in enumerate_nc(rs):
            p = ncp_models.brady_f(rs, w)
            if ncp_models.brady_g(rs, p) != w:
                return False, f"A-side roundtrip failed at rank {n}"
    for n in (4, 5):
        if n > max_rank:
            continue
        rs = build_root_system(DynkinType("D", n))
        for w in enumerate_nc(rs):
            p = ar_bijection_f(rs, w)
            if ncp_models.ar_bijection_g(rs, p) != w:
                return False, f"D-side roundtrip failed at rank {n}"
    return True, "partition bijections invert on both sides"


def _check_commuting_squares(max_rank):
    for n in range(2, min(5, max_rank) + 1):
        rs = build_root_system(DynkinType("A", n))
        cox, coxinv = rs.cox, rs.cox.inverse()
        for w in enumerate_nc(rs):
            lhs = ncp_models.brady_f(rs, cox * w * coxinv)
            if lhs != rotate_a(ncp_models.brady_f(rs, w), 1):
                return False, f"rotation square failed for A{n}"
    for n in (4, 5):
        if n > max_rank:
            continue
        rs = build_root_system(DynkinType("D", n))
        rep = coxeter_conjugation_is_sigma_rho(rs)
        if not rep.passed:
            return False, rep.summary()
        rep = derived_engine.phi_fixes_sigma_on_nc(rs)
        if not rep.passed:
            return False, rep.summary()
    return True, "conjugation and arm-swap squares commute"


def _check_engine_identities(max_rank):
    specs = [("A", n) for n in range(1, max_rank + 1)]
    specs += [("D", n) for n in range(4, max_rank + 1)]
    if max_e_rank() >= 6 and max_rank >= 6:
        specs.append(("E", 6))
    for series, rank in specs:
        d = DynkinType(series, rank)
        lab = build_label_walk(d)
        rs = build_root_system(d)
        for shift in (0, 1):
            if sorted(lab.layer_roots(shift)) != sorted(rs.positives):
                return False, f"label layer failed for {d}"
        s_map = suspension_vertex_map(d)
        if s_map.power(2) != tau_power(rank, -d.coxeter_number):
            return False, f"suspension square failed for {d}"
    return True, "label layers biject and the suspension squares to the translation power"


def _check_classification(max_rank):
    bad = []
    for n in range(1, max_rank + 1):
        for series, rank, t in classifier.admissible_types_for_rank(n):
            if series == "E":
                continue
            d = DynkinType(series, rank)
            for r in range(1, 2 * d.coxeter_number + 1):
                ct = CategoryType(d, r, t)
                enum = {x.nc.matrix for x in enumerate_thick(ct)}
                brute = {x.nc.matrix for x in brute_force_classify(ct)}
                if enum != brute:
                    bad.append(str(ct))
    if bad:
        return False, f"criterion disagrees with brute force: {bad[:5]}"
    return True, f"criterion equals brute force for all admissible types up to rank {max_rank}"


def _check_cluster(max_rank):
    specs = [("A", n) for n in range(1, max_rank + 1)]
    specs += [("D", n) for n in range(4, max_rank + 1)]
    for series, rank in specs:
        for power in (1, 2):
            rep = cluster_category_check(DynkinType(series, rank), power)
            if not rep.passed or rep.total != 2:
                return False, rep.summary()
    return True, "shift-translate orbits admit only the two trivial invariant sets"


def _check_fibers(max_rank):
    for s, x in ((2, 2), (2, 3), (3, 2)):
        for w in enumerate_nc_a(s):
            fib = construct_fiber(w, x)
            if len(fib) != s + 1:
                return False, f"fiber size failed at s={s}, x={x}"
    return True, "rotation fibers have the stated size and project back"


def cmd_verify(args):
    checks = [
        _check_partition_counts,
        _check_interval_counts,
        _check_rotation_counts,
        _check_bijections,
        _check_commuting_squares,
        _check_engine_identities,
        _check_classification,
        _check_cluster,
        _check_fibers,
    ]
    results = []
    failed = False
    for fn in checks:
        ok, msg = fn(args.max_rank)
        results.append({"check": fn.__name__.lstrip("_"), "ok": ok, "detail": msg})
        status = "ok" if ok else "FAIL"
        print(f"[{status}] {msg}")
        failed = failed or not ok
    if args.json:
        print(json.dumps(results, indent=2))
    print("all checks passed" if not failed else "verification failed")
    return MISMATCH if failed else 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    handlers = {
        "count": cmd_count,
        "enumerate": cmd_enumerate,
        "classify": cmd_classify,
        "render": cmd_render,
        "table": cmd_table,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except _MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MATH_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
